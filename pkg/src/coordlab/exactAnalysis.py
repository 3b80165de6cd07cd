# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""
Exact convergence curves by forward enumeration of the Markov chain over the agents' joint
belief states, and the closed-form plateau schedule of Bayesian learners in deterministic
2x2 coordination games with an asymmetric miscoordination payoff.

The chain is expanded one round at a time. From every node (all learners' beliefs, the
convention state and whether an optimal joint action has been played yet) we branch over
every joint action in the support of the agents' choices and every outcome it can produce.
Children with the same key are merged. Branches lighter than the prune mass are dropped and
the dropped mass is reported with the curve.
"""

import itertools
import logging
import math
from fractions import Fraction

from coordlab.common import INTEGER_UPDATE_KINDS, makeLearners
from coordlab.conventions import initialConventionState, ojaLikelihoods, prune
from coordlab.lib.ioUtils import writeCsv
from coordlab.stateGame import exactFraction, profileErrorProbability

logger = logging.getLogger(__name__)

# Beyond this many joint actions a single round of branching is already unreasonable
MAX_EXACT_JOINT_ACTIONS = 10 ** 4

# Fractional beliefs are merged when they agree on this grid
QUANTUM = 1e-9

EXACT_HEADER = ('round', 'mean_error', 'stderr', 'frozen_fraction', 'pruned_mass', 'unconverged')


class ResourceLimitException(Exception):
    """
    The frontier outgrew its limit. partial holds the ExactCurve of the rounds completed.
    """

    def __init__(self, frontierSize, maxFrontier, partial):
        self.partial = partial
        super(ResourceLimitException, self).__init__(
            "The belief frontier reached %i nodes in round %i, more than the limit of %i"
            % (frontierSize, partial.horizon + 1, maxFrontier))


class UnsupportedConfigurationException(Exception):
    def __init__(self, reason):
        super(UnsupportedConfigurationException, self).__init__("Exact analysis is not supported: %s" % reason)


class NotCoordinationGameException(ValueError):
    def __init__(self, a, b, c):
        super(NotCoordinationGameException, self).__init__(
            "Coordinating (%s) must pay more than either miscoordination (%s, %s)" % (a, b, c))


class BeliefNode(object):
    """
    One state of the chain together with its probability mass.
    """

    __slots__ = ('learners', 'convention', 'converged', 'mass')

    def __init__(self, learners, convention, converged, mass):
        self.learners = learners
        self.convention = convention
        self.converged = converged
        self.mass = mass

    def key(self, exact):
        if exact:
            beliefs = tuple(learner.key() for learner in self.learners)
        else:
            beliefs = tuple(tuple(None if c is None else tuple(int(round(x / QUANTUM)) for x in c)
                                  for c in learner.belief.counts) for learner in self.learners)
        return beliefs, None if self.convention is None else self.convention.key(), self.converged


class ExactCurve(object):
    """
    Per-round exact error probability, the probability that no optimal joint action has been
    played before the round (unconverged), the frozen mass after the round and the cumulative
    mass dropped by pruning, which bounds the error of every other column.
    """

    def __init__(self, exact):
        self.exact = exact
        self.error = []
        self.unconverged = []
        self.frozenFraction = []
        self.prunedMass = []
        self.frontierSizes = []

    @property
    def horizon(self):
        return len(self.error)

    def rows(self):
        return [(k + 1, float(self.error[k]), 0.0, float(self.frozenFraction[k]), float(self.prunedMass[k]),
                 float(self.unconverged[k])) for k in range(self.horizon)]

    def writeCsv(self, fileHandle):
        writeCsv(fileHandle, EXACT_HEADER, self.rows())


def _product(values, one):
    total = one
    for v in values:
        total = total * v
    return total


def exactFailureCurve(game, learnerConfig, horizon, pruneMass=1e-12, conventions=False,
                      maxFrontier=10 ** 6, exact=None):
    """
    The exact error probability of every round up to horizon.

    :param learnerConfig: a config's "learner" entry
    :param exact: use rational arithmetic; by default whenever the learners only make
                  integer updates
    :raises UnsupportedConfigurationException: if the game is too large to branch over
    :raises ResourceLimitException: if the frontier exceeds maxFrontier nodes
    :rtype: ExactCurve
    """
    if game.numJointActions > MAX_EXACT_JOINT_ACTIONS:
        raise UnsupportedConfigurationException("the game has %i joint actions, the limit is %i"
                                                % (game.numJointActions, MAX_EXACT_JOINT_ACTIONS))
    if exact is None:
        exact = learnerConfig['kind'] in INTEGER_UPDATE_KINDS
    elif exact and learnerConfig['kind'] not in INTEGER_UPDATE_KINDS:
        raise UnsupportedConfigurationException("%s learners make fractional updates, use float mode"
                                                % learnerConfig['kind'])
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
    ojas = game.optimalJointActions()
    convention = initialConventionState(game) if conventions else None
    frontier = [BeliefNode(makeLearners(game, learnerConfig, exact), convention, False, one)]
    curve = ExactCurve(exact)
    prunedMass = zero
    logger.info("Exact analysis of %s with %s learners over %i rounds (%s arithmetic)", game.name,
                learnerConfig['kind'], horizon, 'rational' if exact else 'float')
    for k in range(1, horizon + 1):
        error = zero
        unconverged = zero
        children = {}
        for node in frontier:
            if not node.converged:
                unconverged += node.mass
            distributions = [learner.chooseDistribution(game, node.convention) for learner in node.learners]
            error += node.mass * profileErrorProbability(game, distributions, ojas)
            supports = [[x for x, p in enumerate(d) if p > 0] for d in distributions]
            for a in itertools.product(*supports):
                jointMass = node.mass * _product((d[x] for d, x in zip(distributions, a)), one)
                row = game.outcomeDistribution(a)
                for outcome in range(game.nOutcomes):
                    if row[outcome] <= 0:
                        continue
                    mass = jointMass * (exactFraction(row[outcome]) if exact else float(row[outcome]))
                    if mass < pruneMass:
                        prunedMass += mass
                        continue
                    child = _advance(game, node, a, outcome, ojas, mass)
                    key = child.key(exact)
                    existing = children.get(key)
                    if existing is None:
                        children[key] = child
                    else:
                        existing.mass += mass
            if len(children) > maxFrontier:
                raise ResourceLimitException(len(children), maxFrontier, curve)
        frontier = list(children.values())
        curve.error.append(error)
        curve.unconverged.append(unconverged)
        curve.frozenFraction.append(sum((n.mass for n in frontier if n.convention is not None and n.convention.frozen), zero))
        curve.prunedMass.append(prunedMass)
        curve.frontierSizes.append(len(frontier))
        logger.debug("Round %i: error %g, frontier %i nodes, pruned mass %g", k, float(error), len(frontier),
                     float(prunedMass))
    logger.info("Exact analysis finished, largest frontier %i nodes, pruned mass %g",
                max(curve.frontierSizes), float(prunedMass))
    return curve


def _advance(game, node, jointAction, outcome, ojas, mass):
    convention = node.convention
    learners = [learner.copy() for learner in node.learners]
    if convention is None or not convention.isConvention:
        for learner, ownAction in zip(learners, jointAction):
            learner.update(game, ownAction, jointAction, outcome, convention)
    if convention is not None and not convention.frozen:
        convention = prune(convention, ojaLikelihoods(game, convention.survivingOjas, outcome), game)
    return BeliefNode(learners, convention, node.converged or jointAction in ojas, mass)


def randomizationRounds(curve):
    """
    The rounds at which the exact error probability drops, i.e. the rounds in which the
    agents get a chance to coordinate. Round 1 counts when its error is below 1.
    """
    rounds = []
    previous = 1
    for k, error in enumerate(curve.error):
        if error < previous:
            rounds.append(k + 1)
        previous = error
    return rounds


class PlateauPrediction(object):
    """
    The convergence schedule of two Bayesian learners with uniform <1,1> priors in the
    deterministic 2x2 game paying a for coordinating on either side and b, c for the two
    miscoordinations. The learners only randomize every period rounds, starting at round
    period - 1, and coordinate with probability 1/2 each time.
    """

    def __init__(self, a, b, c):
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if not a > max(b, c):
            raise NotCoordinationGameException(a, b, c)
        self.a, self.b, self.c = a, b, c
        x, y = a - b, a - c
        denominator = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
        x, y = int(x * denominator), int(y * denominator)
        self.period = (x + y) // math.gcd(x, y)

    @property
    def firstRandomizationRound(self):
        return self.period - 1

    def failureProbability(self, k):
        """
        The probability that no coordinated round has happened before round k.
        """
        return Fraction(1, 2 ** (k // self.period))

    def errorProbability(self, k):
        """
        The probability that round k itself is miscoordinated.
        """
        return Fraction(1, 2 ** ((k + 1) // self.period))

    def schedule(self, horizon):
        return [self.failureProbability(k) for k in range(1, horizon + 1)]

    def randomizationRounds(self, horizon):
        return list(range(self.firstRandomizationRound, horizon + 1, self.period))


def plateauPrediction(a, b, c):
    """
    :type a, b, c: rationals (ints, Fractions or decimal strings)
    :raises NotCoordinationGameException: if a does not exceed both b and c
    """
    return PlateauPrediction(a, b, c)
