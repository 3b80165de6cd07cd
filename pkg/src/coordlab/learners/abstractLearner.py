# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

import logging
from fractions import Fraction

import numpy as np

from coordlab.conventions import reduceGame, renormalizeBeliefs
from coordlab.stateGame import InvalidParameterException, epsilonBestResponses, sampleIndex

logger = logging.getLogger(__name__)


class AbstractLearner(object):
    """
    An agent that best-responds to its belief about the other agents and refines that belief
    after every round. Subclasses fix the belief type and the update rule.
    """

    kind = None
    beliefClass = None

    def __init__(self, agent, belief, epsilon=0.0):
        """
        :param int agent: the index of the agent this learner plays for
        :param belief: the initial belief, an instance of beliefClass
        :param epsilon: actions within epsilon of the best expected utility are all eligible
        """
        if not isinstance(belief, self.beliefClass):
            raise InvalidParameterException('belief', belief, "a %s learner needs a %s" %
                                            (self.kind, self.beliefClass.__name__))
        if epsilon < 0:
            raise InvalidParameterException('epsilon', epsilon, "must be >= 0")
        assert belief.agent == agent
        self.agent = agent
        self.belief = belief
        self.epsilon = epsilon
        self.lastAction = None

    @property
    def exact(self):
        return self.belief.exact

    def predict(self):
        """
        The reduced profile this learner expects the other agents to play.
        """
        raise NotImplementedError('Abstract method: predict')

    def _learn(self, game, ownAction, jointAction, outcome, activeActions):
        raise NotImplementedError('Abstract method: _learn')

    def chooseDistribution(self, game, convention=None):
        """
        The mixed strategy over this agent's actions in game: uniform over the epsilon-best
        responses to predict(), computed in the game reduced to the convention's active
        actions. Once the convention has settled on a single OJA, its component is played
        with certainty. In exact mode the result is a list of Fractions.
        """
        n = game.actionsPerAgent[self.agent]
        if convention is not None and convention.isConvention:
            return self._pointMass(n, convention.convention[self.agent])
        if convention is not None:
            reduced = reduceGame(game, convention)
            belief = renormalizeBeliefs(self.belief, convention.activeActions)
        else:
            reduced = game
            belief = self.belief
        eligible = self._eligible(reduced, belief.predict())
        actionMap = reduced.actionIndexMap[self.agent]
        weight = Fraction(1, len(eligible)) if self.exact else 1.0 / len(eligible)
        distribution = [Fraction(0)] * n if self.exact else np.zeros(n)
        for k in eligible:
            distribution[actionMap[k]] = weight
        return distribution

    def _pointMass(self, n, action):
        if self.exact:
            distribution = [Fraction(0)] * n
            distribution[action] = Fraction(1)
            return distribution
        distribution = np.zeros(n)
        distribution[action] = 1.0
        return distribution

    def _eligible(self, game, profile):
        if self.exact:
            values = game.exactActionValues(self.agent, profile)
            best = max(values)
            epsilon = Fraction(repr(self.epsilon)) if not isinstance(self.epsilon, Fraction) else self.epsilon
            return [k for k, v in enumerate(values) if v >= best - epsilon]
        return epsilonBestResponses(game.actionValues(self.agent, profile), self.epsilon)

    def chooseAction(self, game, rng, convention=None):
        """
        Samples an action from chooseDistribution with one uniform draw from rng.
        """
        self.lastAction = sampleIndex(self.chooseDistribution(game, convention), rng)
        return self.lastAction

    def update(self, game, ownAction, jointAction, outcome, convention=None):
        """
        Refines the belief after a round in which this agent played ownAction, the agents
        jointly played jointAction and outcome was observed. Observable learners use
        jointAction, the others only ownAction and outcome.
        """
        self.lastAction = ownAction
        self.belief = self._learn(game, ownAction, jointAction, outcome,
                                  None if convention is None else convention.activeActions)

    def copy(self):
        other = self.__class__(self.agent, self.belief, self.epsilon)
        other.lastAction = self.lastAction
        return other

    def key(self):
        return self.kind, self.belief.key()

    def __repr__(self):
        return "%s(agent=%i, epsilon=%r, %r)" % (self.__class__.__name__, self.agent, self.epsilon, self.belief)
