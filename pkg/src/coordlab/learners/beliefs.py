# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""
One agent's model of the other agents' strategies: pseudo-counts per (other agent, action).

Beliefs are immutable; every update returns a new belief. Counts live in float arrays, or in
object arrays of Fractions when built in exact mode. The entry for the owning agent is None,
own actions are never counted.
"""

import logging
from fractions import Fraction

import numpy as np

from coordlab.stateGame import InvalidParameterException, exactFraction

logger = logging.getLogger(__name__)


class UninitializedBeliefException(Exception):
    def __init__(self, agent, other):
        super(UninitializedBeliefException, self).__init__(
            "Agent %i has no counts for agent %i, cannot predict its strategy" % (agent, other))


def _asCounts(values, exact):
    if exact:
        return np.array([exactFraction(x) for x in values], dtype=object)
    counts = np.array(values, dtype=float)
    counts.flags.writeable = False
    return counts


class CountBelief(object):
    """
    Counts over every other agent's actions, normalized to predict their mixed strategies.
    """

    def __init__(self, agent, counts):
        self.agent = agent
        self.exact = any(c is not None and len(c) > 0 and isinstance(c[0], Fraction) for c in counts)
        self.counts = tuple(None if j == agent else _asCounts(c, self.exact) for j, c in enumerate(counts))
        self._check()

    def _check(self):
        raise NotImplementedError('Abstract method: _check')

    @property
    def others(self):
        return [j for j in range(len(self.counts)) if j != self.agent]

    def predict(self):
        """
        The expected reduced profile: for each other agent j the counts of j normalized.
        """
        profile = [None] * len(self.counts)
        for j in self.others:
            total = self.counts[j].sum()
            if total <= 0:
                raise UninitializedBeliefException(self.agent, j)
            profile[j] = self.counts[j] / total
        return profile

    def add(self, increments):
        """
        Returns a belief whose counts are ours plus increments (a reduced profile shaped list).
        """
        return self.__class__(self.agent, [None if j == self.agent else self.counts[j] + increments[j]
                                           for j in range(len(self.counts))])

    def restrict(self, activeActions):
        """
        The belief over the given active action subsets only, dropping deleted actions' counts.
        """
        return self.__class__(self.agent, [None if j == self.agent else self.counts[j][list(activeActions[j])]
                                           for j in range(len(self.counts))])

    def key(self):
        return tuple(None if c is None else tuple(c) for c in self.counts)

    def __eq__(self, other):
        return type(self) == type(other) and self.agent == other.agent and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self).__name__, self.agent, self.key()))

    def __repr__(self):
        return "%s(agent=%i, %s)" % (self.__class__.__name__, self.agent,
                                     ', '.join('%i:%s' % (j, list(self.counts[j])) for j in self.others))


class FrequencyBelief(CountBelief):
    """
    Fictitious play counts C^j of how often each other agent played each action.
    """

    def _check(self):
        for j in self.others:
            if any(c < 0 for c in self.counts[j]):
                raise InvalidParameterException('counts[%i]' % j, list(self.counts[j]), "counts must be >= 0")


class DirichletBelief(CountBelief):
    """
    Dirichlet parameters N^j over each other agent's actions.
    """

    def _check(self):
        for j in self.others:
            if any(c <= 0 for c in self.counts[j]):
                raise InvalidParameterException('params[%i]' % j, list(self.counts[j]), "Dirichlet parameters must be > 0")


def parsePrior(prior, actionsPerAgent):
    """
    Turns a prior description into initial counts indexed by the modelled agent: either
    "uniform:<w>" (w for every action) or a list holding one count vector per agent.
    """
    if isinstance(prior, str):
        kind, _, weight = prior.partition(':')
        if kind != 'uniform':
            raise InvalidParameterException('prior', prior, "expected 'uniform:<weight>' or per-agent arrays")
        try:
            weight = float(weight) if weight else 1.0
        except ValueError:
            raise InvalidParameterException('prior', prior, "the uniform weight must be a number")
        return [[weight] * n for n in actionsPerAgent]
    if len(prior) != len(actionsPerAgent) or \
            any(len(c) != n for c, n in zip(prior, actionsPerAgent)):
        raise InvalidParameterException('prior', prior, "needs one count per action of every agent %s" %
                                        (tuple(actionsPerAgent),))
    return [list(c) for c in prior]


def initialCounts(agent, priorCounts, exact=False):
    counts = [None if j == agent else list(c) for j, c in enumerate(priorCounts)]
    if exact:
        counts = [None if c is None else [exactFraction(x) for x in c] for c in counts]
    return counts


def _observedIncrements(belief, observed):
    increments = [None] * len(belief.counts)
    for j in belief.others:
        k = observed[j]
        zero, one = (Fraction(0), Fraction(1)) if belief.exact else (0.0, 1.0)
        increments[j] = np.array([one if x == k else zero for x in range(len(belief.counts[j]))],
                                 dtype=object if belief.exact else float)
    return increments


def fpPredict(belief):
    """
    Relative frequency of each other agent's actions.
    """
    return belief.predict()


def fpUpdateObservable(belief, observed):
    """
    Adds one to the count of every other agent's observed action.
    """
    return belief.add(_observedIncrements(belief, observed))


def bayesExpectation(belief):
    """
    Expected mixed strategy of each other agent under the Dirichlet parameters.
    """
    return belief.predict()


def bayesUpdateObservable(belief, observed):
    return belief.add(_observedIncrements(belief, observed))


def bayesUpdateUnobservable(belief, posterior):
    """
    Adds the posterior probability of each action to its Dirichlet parameter.
    """
    return belief.add(posterior)


def sfpUpdate(belief, individualLikelihoods):
    return belief.add(individualLikelihoods)
