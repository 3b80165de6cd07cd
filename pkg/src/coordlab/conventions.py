# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""
Maximum-likelihood conventions. After every round all agents rank the surviving optimal
joint actions by the likelihood of the observed outcome, which needs no private
information, so every agent arrives at the same surviving set. Strictly less likely
OJAs are removed for good, and actions that no survivor uses are deleted from the game.
"""

import logging

import numpy as np

from coordlab.stateGame import StateGame, PROBABILITY_TOLERANCE

logger = logging.getLogger(__name__)

# Likelihoods closer than this are ties and never prune each other
LIKELIHOOD_TOLERANCE = 1e-12


class ConventionStateException(Exception):
    def __init__(self, reason):
        super(ConventionStateException, self).__init__("Inconsistent convention state: %s" % reason)


class ConventionState(object):
    """
    The common-knowledge convention state: per-agent active actions, the surviving OJAs and
    whether likelihood tracking has stopped. Immutable.
    """

    def __init__(self, activeActions, survivingOjas, frozen=False):
        self.survivingOjas = tuple(tuple(int(x) for x in a) for a in survivingOjas)
        self.activeActions = tuple(tuple(sorted(int(x) for x in active)) for active in activeActions)
        self.frozen = frozen
        if len(self.survivingOjas) == 0:
            raise ConventionStateException("no optimal joint action survives")
        for i, active in enumerate(self.activeActions):
            if len(active) == 0:
                raise ConventionStateException("agent %i has no active action" % i)
            used = set(a[i] for a in self.survivingOjas)
            if used != set(active):
                raise ConventionStateException("agent %i has active actions %s but the survivors use %s"
                                               % (i, active, sorted(used)))

    @property
    def isConvention(self):
        """
        True once a single OJA survives: the agents play it and stop learning.
        """
        return len(self.survivingOjas) == 1

    @property
    def convention(self):
        return self.survivingOjas[0] if self.isConvention else None

    def key(self):
        return self.survivingOjas, self.frozen

    def __eq__(self, other):
        return isinstance(other, ConventionState) and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ConventionState(survivors=%s, frozen=%s)" % (list(self.survivingOjas), self.frozen)


def _activeFromOjas(ojas, nAgents):
    return [sorted(set(a[i] for a in ojas)) for i in range(nAgents)]


def initialConventionState(game):
    ojas = game.optimalJointActions()
    return ConventionState(_activeFromOjas(ojas, game.nAgents), ojas,
                           frozen=detectIndistinguishable(game, ojas))


def ojaLikelihoods(game, survivingOjas, outcome):
    """
    LE(a) = Pr^a(outcome) for every surviving OJA, in the order given.
    """
    return np.array([game.outcomeDistribution(a)[outcome] for a in survivingOjas])


def prune(state, likelihoods, game):
    """
    Keeps the OJAs of maximal likelihood (ties survive), deletes actions no survivor uses and
    freezes the state when a single OJA remains or the survivors cannot be told apart
    through the game's outcomes.
    """
    likelihoods = np.asarray(likelihoods, dtype=float)
    assert len(likelihoods) == len(state.survivingOjas)
    best = likelihoods.max()
    survivors = [a for a, le in zip(state.survivingOjas, likelihoods) if le >= best - LIKELIHOOD_TOLERANCE]
    if len(survivors) == len(state.survivingOjas):
        if state.frozen:
            return state
        return ConventionState(state.activeActions, survivors, frozen=detectIndistinguishable(game, survivors))
    logger.debug("Pruned %s, surviving %s", [a for a in state.survivingOjas if a not in survivors], survivors)
    return ConventionState(_activeFromOjas(survivors, game.nAgents), survivors,
                           frozen=detectIndistinguishable(game, survivors))


def reduceGame(game, state):
    """
    The game restricted to the active actions. The result maps its action indices back to
    the original game's through actionIndexMap; the game itself is returned when nothing is
    deleted.
    """
    active = state.activeActions
    if all(len(x) == n for x, n in zip(active, game.actionsPerAgent)):
        return game
    cache = game.__dict__.setdefault('_reducedGames', {})
    if active not in cache:
        shape = game.actionsPerAgent
        table = game.transitions.reshape(shape + (game.nOutcomes,))[np.ix_(*[list(x) for x in active])]
        cache[active] = StateGame([len(x) for x in active], game.utilities, table.reshape(-1, game.nOutcomes),
                                  rationalUtilities=game.rationalUtilities, outcomeLabels=game.outcomeLabels,
                                  actionLabels=[[labels[k] for k in x] for labels, x in zip(game.actionLabels, active)],
                                  name='%s restricted to %s' % (game.name, list(active)),
                                  actionIndexMap=[[game.actionIndexMap[i][k] for k in x] for i, x in enumerate(active)])
    return cache[active]


def renormalizeBeliefs(belief, activeActions):
    """
    Drops the counts of deleted actions, so predictions renormalize over the active ones.
    """
    for j in belief.others:
        if len(activeActions[j]) == 0:
            raise ConventionStateException("agent %i has no active action" % j)
    return belief.restrict(activeActions)


def detectIndistinguishable(game, survivingOjas):
    """
    True iff all surviving OJAs have the same outcome distribution, entrywise. A single
    survivor is trivially indistinguishable from itself.
    """
    rows = [game.outcomeDistribution(a) for a in survivingOjas]
    return all(np.all(np.abs(rows[0] - row) <= PROBABILITY_TOLERANCE) for row in rows[1:])
