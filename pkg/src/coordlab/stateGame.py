# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""
Fully cooperative state games: a joint action of the agents stochastically produces an
outcome state and every agent receives the utility of that state.

Joint actions are tuples of per-agent action indices and are always enumerated in
lexicographic order. A mixed profile is a list holding one probability vector per agent; a
reduced profile for agent i is a mixed profile whose i-th entry is ignored (conventionally
None).
"""

import itertools
import logging
import math
from fractions import Fraction

import numpy as np

logger = logging.getLogger(__name__)

# Transition rows and mixed strategies must sum to one within this tolerance
PROBABILITY_TOLERANCE = 1e-12

# Absolute tolerance for ties between expected utilities
DEFAULT_TIE_TOLERANCE = 1e-9

# Games with more joint actions than this never materialize a dense transition table
MAX_DENSE_JOINT_ACTIONS = 10 ** 5


class InvalidGameException(ValueError):
    def __init__(self, reason):
        super(InvalidGameException, self).__init__("Invalid state game: %s" % reason)


class InvalidActionException(IndexError):
    def __init__(self, jointAction, actionsPerAgent):
        super(InvalidActionException, self).__init__(
            "Joint action %s is not valid for a game with action counts %s" % (tuple(jointAction), tuple(actionsPerAgent)))


class InvalidParameterException(ValueError):
    def __init__(self, name, value, requirement):
        super(InvalidParameterException, self).__init__(
            "Invalid value %r for parameter '%s': %s" % (value, name, requirement))


class GameTooLargeException(Exception):
    def __init__(self, numJointActions, operation):
        super(GameTooLargeException, self).__init__(
            "Cannot %s for a game with %i joint actions (limit is %i)" % (operation, numJointActions, MAX_DENSE_JOINT_ACTIONS))


def sampleIndex(distribution, rng):
    """
    Draws an index from the given probability vector, consuming exactly one uniform variate
    from rng (a numpy Generator) whatever the distribution looks like.
    """
    u = rng.random()
    cdf = np.cumsum(distribution)
    index = int(np.searchsorted(cdf, u * cdf[-1], side='right'))
    # Round-off can push the index past the last positive entry
    positive = np.flatnonzero(np.asarray(distribution) > 0)
    if index > positive[-1]:
        index = int(positive[-1])
    while distribution[index] <= 0:
        index += 1
    return index


def exactFraction(value):
    """
    The rational a decimal probability or utility was written as, e.g. 0.1 -> 1/10.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(repr(float(value)))


class StateGame(object):
    """
    A single-stage cooperative game given by a dense transition table with one row per joint
    action (lexicographic order) and one column per outcome state, plus a utility per
    outcome. Instances are immutable after construction.
    """

    def __init__(self, actionsPerAgent, utilities, transitions=None, rationalUtilities=None,
                 outcomeLabels=None, actionLabels=None, name=None, actionIndexMap=None):
        self.actionsPerAgent = tuple(int(x) for x in actionsPerAgent)
        if len(self.actionsPerAgent) < 1:
            raise InvalidGameException("a game needs at least one agent")
        if min(self.actionsPerAgent) < 1:
            raise InvalidGameException("every agent needs at least one action, got %s" % (self.actionsPerAgent,))
        self.utilities = np.array(utilities, dtype=float)
        if self.utilities.ndim != 1 or len(self.utilities) < 1:
            raise InvalidGameException("utilities must be a non-empty vector")
        if not np.all(np.isfinite(self.utilities)):
            raise InvalidGameException("all utilities must be finite")
        self.utilities.flags.writeable = False
        self.name = name
        if rationalUtilities is not None:
            rationalUtilities = tuple(exactFraction(x) for x in rationalUtilities)
            if len(rationalUtilities) != len(self.utilities):
                raise InvalidGameException("rational utilities must have one entry per outcome")
        self.rationalUtilities = rationalUtilities
        self.outcomeLabels = tuple(outcomeLabels) if outcomeLabels is not None else \
            tuple('s%i' % s for s in range(self.nOutcomes))
        if len(self.outcomeLabels) != self.nOutcomes:
            raise InvalidGameException("expected %i outcome labels" % self.nOutcomes)
        if actionLabels is None:
            actionLabels = [[str(k) for k in range(n)] for n in self.actionsPerAgent]
        self.actionLabels = tuple(tuple(labels) for labels in actionLabels)
        if tuple(len(x) for x in self.actionLabels) != self.actionsPerAgent:
            raise InvalidGameException("action labels do not match the action counts")
        if actionIndexMap is None:
            actionIndexMap = [range(n) for n in self.actionsPerAgent]
        self.actionIndexMap = tuple(tuple(int(k) for k in x) for x in actionIndexMap)
        self._transitions = None
        self._payoffTensor = None
        self._exactPayoffs = None
        if transitions is not None:
            self._transitions = self._checkTransitions(transitions)
        elif type(self) is StateGame:
            raise InvalidGameException("a transition table is required")

    def _checkTransitions(self, transitions):
        table = np.array(transitions, dtype=float)
        if table.shape != (self.numJointActions, self.nOutcomes):
            raise InvalidGameException("transition table has shape %s, expected %s" %
                                       (table.shape, (self.numJointActions, self.nOutcomes)))
        if np.any(table < 0) or np.any(table > 1):
            raise InvalidGameException("transition probabilities must lie in [0, 1]")
        sums = table.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > PROBABILITY_TOLERANCE)
        if len(bad) > 0:
            raise InvalidGameException("the transition row of joint action %s sums to %r" %
                                       (self.jointActionFromIndex(int(bad[0])), sums[bad[0]]))
        table.flags.writeable = False
        return table

    @property
    def nAgents(self):
        return len(self.actionsPerAgent)

    @property
    def nOutcomes(self):
        return len(self.utilities)

    @property
    def numJointActions(self):
        return math.prod(self.actionsPerAgent)

    def jointActions(self):
        """
        Iterates over every joint action in lexicographic order.
        """
        return itertools.product(*[range(n) for n in self.actionsPerAgent])

    def checkJointAction(self, jointAction):
        if len(jointAction) != self.nAgents or \
                any(not 0 <= int(a) < n for a, n in zip(jointAction, self.actionsPerAgent)):
            raise InvalidActionException(jointAction, self.actionsPerAgent)

    def jointActionIndex(self, jointAction):
        self.checkJointAction(jointAction)
        return int(np.ravel_multi_index(tuple(int(a) for a in jointAction), self.actionsPerAgent))

    def jointActionFromIndex(self, index):
        return tuple(int(a) for a in np.unravel_index(index, self.actionsPerAgent))

    @property
    def transitions(self):
        """
        The dense transition table, one row per joint action.
        """
        if self._transitions is None:
            if self.numJointActions > MAX_DENSE_JOINT_ACTIONS:
                raise GameTooLargeException(self.numJointActions, "materialize the transition table")
            table = np.array([self.outcomeDistribution(a) for a in self.jointActions()])
            table.flags.writeable = False
            self._transitions = table
        return self._transitions

    def outcomeDistribution(self, jointAction):
        """
        Pr^a(.) for the joint action a, a read-only probability vector over outcomes.
        """
        return self._transitions[self.jointActionIndex(jointAction)]

    def outcomeColumn(self, outcome):
        """
        Pr^a(outcome) for every joint action, shaped like the joint action space.
        """
        return self.transitions[:, outcome].reshape(self.actionsPerAgent)

    def expectedUtility(self, jointAction):
        return float(np.dot(self.outcomeDistribution(jointAction), self.utilities))

    def payoffTensor(self):
        """
        Expected utility of every joint action as an array shaped like the joint action space.
        """
        if self._payoffTensor is None:
            tensor = np.dot(self.transitions, self.utilities).reshape(self.actionsPerAgent)
            tensor.flags.writeable = False
            self._payoffTensor = tensor
        return self._payoffTensor

    def actionValues(self, agent, reducedProfile):
        """
        Expected utility of each of agent's pure actions when the other agents play the
        reduced profile.
        """
        tensor = self.payoffTensor()
        for j in reversed(range(self.nAgents)):
            if j != agent:
                tensor = np.tensordot(tensor, np.asarray(reducedProfile[j], dtype=float), axes=([j], [0]))
        return np.asarray(tensor, dtype=float)

    def exactPayoffs(self):
        """
        Expected utilities as exact rationals, keyed by joint action. Utilities come from
        rationalUtilities when given and probabilities are read as the decimals they were
        written as.
        """
        if self._exactPayoffs is None:
            if self.numJointActions > MAX_DENSE_JOINT_ACTIONS:
                raise GameTooLargeException(self.numJointActions, "compute exact payoffs")
            utilities = self.rationalUtilities or tuple(exactFraction(u) for u in self.utilities)
            payoffs = {}
            for a in self.jointActions():
                row = self.outcomeDistribution(a)
                payoffs[a] = sum((exactFraction(p) * u for p, u in zip(row, utilities) if p > 0), Fraction(0))
            self._exactPayoffs = payoffs
        return self._exactPayoffs

    def exactActionValues(self, agent, reducedProfile):
        """
        As actionValues, in exact rational arithmetic; reducedProfile holds Fractions.
        """
        values = [Fraction(0)] * self.actionsPerAgent[agent]
        for a, payoff in self.exactPayoffs().items():
            weight = Fraction(1)
            for j, aj in enumerate(a):
                if j != agent:
                    weight *= reducedProfile[j][aj]
                    if weight == 0:
                        break
            if weight != 0:
                values[a[agent]] += weight * payoff
        return values

    def optimalJointActions(self, tol=DEFAULT_TIE_TOLERANCE):
        tensor = self.payoffTensor()
        best = tensor.max()
        return tuple(tuple(int(x) for x in a) for a in np.argwhere(tensor >= best - tol))

    def modalOutcome(self, jointAction):
        """
        The most likely outcome of the joint action (lowest index on ties).
        """
        return int(np.argmax(self.outcomeDistribution(jointAction)))

    def sampleOutcome(self, jointAction, rng):
        return sampleIndex(self.outcomeDistribution(jointAction), rng)

    def hasIndistinguishableOjas(self, tol=DEFAULT_TIE_TOLERANCE):
        """
        True if two optimal joint actions have the same outcome distribution, in which case
        no observation can tell them apart.
        """
        rows = [self.outcomeDistribution(a) for a in self.optimalJointActions(tol)]
        for x, y in itertools.combinations(rows, 2):
            if np.all(np.abs(x - y) <= PROBABILITY_TOLERANCE):
                return True
        return False

    def __repr__(self):
        return "%s(%s, actions=%s, outcomes=%i)" % (self.__class__.__name__, self.name,
                                                    self.actionsPerAgent, self.nOutcomes)


class PureCoordinationGame(StateGame):
    """
    n agents with the same n moves; agents reach the outcome "coordinated on m" (utility c)
    when all choose move m and the single uncoordinated outcome (utility d) otherwise. The
    transition table is never stored, so arbitrarily many agents are supported.
    """

    def __init__(self, n, c=1.0, d=0.0, name=None):
        self.n = int(n)
        self.c = c
        self.d = d
        labels = ['m%i' % m for m in range(self.n)]
        super(PureCoordinationGame, self).__init__(
            [self.n] * self.n, [c] * self.n + [d],
            rationalUtilities=[exactFraction(c)] * self.n + [exactFraction(d)],
            outcomeLabels=['coordinated-%s' % x for x in labels] + ['uncoordinated'],
            actionLabels=[labels] * self.n, name=name)

    def outcomeDistribution(self, jointAction):
        self.checkJointAction(jointAction)
        row = np.zeros(self.nOutcomes)
        first = int(jointAction[0])
        row[first if all(int(a) == first for a in jointAction) else self.n] = 1.0
        row.flags.writeable = False
        return row

    def outcomeColumn(self, outcome):
        if self.numJointActions <= MAX_DENSE_JOINT_ACTIONS:
            return super(PureCoordinationGame, self).outcomeColumn(outcome)
        raise GameTooLargeException(self.numJointActions, "build an outcome column")

    def payoffTensor(self):
        if self.numJointActions > MAX_DENSE_JOINT_ACTIONS:
            raise GameTooLargeException(self.numJointActions, "build the payoff tensor")
        return super(PureCoordinationGame, self).payoffTensor()

    def actionValues(self, agent, reducedProfile):
        others = [np.asarray(reducedProfile[j], dtype=float) for j in range(self.n) if j != agent]
        together = np.prod(others, axis=0) if others else np.ones(self.n)
        return self.d + (self.c - self.d) * together

    def optimalJointActions(self, tol=DEFAULT_TIE_TOLERANCE):
        if self.c - self.d > tol:
            return tuple((m,) * self.n for m in range(self.n))
        return super(PureCoordinationGame, self).optimalJointActions(tol)

    def hasIndistinguishableOjas(self, tol=DEFAULT_TIE_TOLERANCE):
        return False


class PayoffTensor(object):
    """
    The strategic form of a state game: expected utility per joint action.
    """

    def __init__(self, values):
        self.values = values

    @property
    def shape(self):
        return self.values.shape

    def entry(self, jointAction):
        return float(self.values[tuple(jointAction)])


def checkMixedProfile(game, profile, skipAgent=None):
    """
    Raises InvalidParameterException unless each vector (other than skipAgent's) is a
    probability distribution over that agent's actions.
    """
    if len(profile) != game.nAgents:
        raise InvalidParameterException('profile', profile, "needs one entry per agent")
    for i, vector in enumerate(profile):
        if i == skipAgent:
            continue
        vector = np.asarray(vector, dtype=float)
        if vector.shape != (game.actionsPerAgent[i],) or np.any(vector < 0) or \
                abs(vector.sum() - 1.0) > PROBABILITY_TOLERANCE:
            raise InvalidParameterException('profile[%i]' % i, vector, "must be a distribution over %i actions"
                                            % game.actionsPerAgent[i])


def expectedUtility(game, jointAction):
    """
    Sum over outcomes of Pr^a(s) * U(s).
    """
    return game.expectedUtility(jointAction)


def toStrategicForm(game):
    return PayoffTensor(game.payoffTensor())


def optimalJointActions(game, tol=DEFAULT_TIE_TOLERANCE):
    """
    Every joint action whose expected utility is within tol of the maximum, in
    lexicographic order.
    """
    if tol < 0:
        raise InvalidParameterException('tol', tol, "must be >= 0")
    return game.optimalJointActions(tol)


def epsilonBestResponses(values, epsilon, tol=DEFAULT_TIE_TOLERANCE, eligible=None):
    """
    Indices whose value is within epsilon (absolute) of the best, restricted to eligible
    when given.
    """
    values = np.asarray(values, dtype=float)
    if eligible is None:
        eligible = range(len(values))
    eligible = list(eligible)
    best = max(values[k] for k in eligible)
    return tuple(k for k in eligible if values[k] >= best - epsilon - tol)


def bestResponses(game, agent, others, tol=DEFAULT_TIE_TOLERANCE):
    """
    The pure best responses of agent to the reduced profile others.
    """
    checkMixedProfile(game, others, skipAgent=agent)
    return epsilonBestResponses(game.actionValues(agent, others), 0.0, tol)


def profileErrorProbability(game, profile, ojas):
    """
    Probability that the independently sampled joint action is not one of ojas. Works on
    floats and on Fractions alike.
    """
    total = 0
    for a in ojas:
        p = 1
        for i, ai in enumerate(a):
            p = p * profile[i][ai]
            if p == 0:
                break
        total = total + p
    error = 1 - total
    if isinstance(error, Fraction):
        return error
    return min(max(float(error), 0.0), 1.0)
