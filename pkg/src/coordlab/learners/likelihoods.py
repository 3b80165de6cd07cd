# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""
Inference about what the other agents did, given one's own action and the observed outcome.
"""

import logging

import numpy as np

logger = logging.getLogger(__name__)


class ImpossibleObservationException(Exception):
    def __init__(self, agent, ownAction, outcome):
        super(ImpossibleObservationException, self).__init__(
            "Outcome %i has zero probability for agent %i after playing action %i under its model"
            % (outcome, agent, ownAction))


def _activeMask(shape, activeActions):
    mask = np.ones(shape, dtype=bool)
    if activeActions is not None:
        for j, active in enumerate(activeActions):
            axisMask = np.zeros(shape[j], dtype=bool)
            axisMask[list(active)] = True
            mask &= axisMask.reshape([shape[j] if k == j else 1 for k in range(len(shape))])
    return mask


def restrictedPrediction(prediction, activeActions):
    """
    Zeroes the predicted probability of deleted actions and renormalizes over the rest.
    """
    if activeActions is None:
        return prediction
    restricted = [None] * len(prediction)
    for j, p in enumerate(prediction):
        if p is not None:
            q = np.zeros(len(p))
            active = list(activeActions[j])
            q[active] = p[active]
            restricted[j] = q / q.sum()
    return restricted


def sfpJointLikelihoods(game, agent, ownAction, outcome, activeActions=None):
    """
    Relative likelihood Pr^a(outcome) / sum_b Pr^b(outcome) of every joint action a with
    a[agent] == ownAction, as an array shaped like the joint action space (zero elsewhere).
    With activeActions, joint actions using deleted actions get zero weight.

    :raises ImpossibleObservationException: if no consistent joint action can produce the outcome
    """
    column = np.asarray(game.outcomeColumn(outcome), dtype=float)
    shape = game.actionsPerAgent
    mask = _activeMask(shape, activeActions)
    own = np.zeros(shape[agent], dtype=bool)
    own[ownAction] = True
    mask &= own.reshape([shape[agent] if k == agent else 1 for k in range(len(shape))])
    weights = np.where(mask, column, 0.0)
    total = weights.sum()
    if total <= 0:
        raise ImpossibleObservationException(agent, ownAction, outcome)
    return weights / total


def sfpIndividualLikelihood(jointLikelihoods, other):
    """
    The likelihood that agent other performed each of its actions: the marginal of the joint
    likelihoods along other's axis.
    """
    axes = tuple(k for k in range(jointLikelihoods.ndim) if k != other)
    return jointLikelihoods.sum(axis=axes)


def sfpIndividualLikelihoods(jointLikelihoods, agent):
    """
    sfpIndividualLikelihood for every agent except agent, as a reduced profile.
    """
    return [None if j == agent else sfpIndividualLikelihood(jointLikelihoods, j)
            for j in range(jointLikelihoods.ndim)]


def actionPosterior(game, belief, ownAction, outcome, activeActions=None):
    """
    Bayes-rule posterior over each other agent's action given own action and outcome. The
    prior on the other agents' joint choice is the product of the belief's expected
    strategies, so for agent j

        Pr(a[j] = k | outcome) ~ Pr(a[j] = k) * sum over the remaining agents' actions of
                                 Pr^a(outcome) * prod_{l != i, j} Pr(a[l])

    :rtype: list, None at the belief owner's index
    """
    agent = belief.agent
    prediction = restrictedPrediction(belief.predict(), activeActions)
    others = belief.others
    weights = np.take(np.asarray(game.outcomeColumn(outcome), dtype=float), ownAction, axis=agent)
    for axis, j in enumerate(others):
        weights = weights * np.asarray(prediction[j], dtype=float).reshape(
            [len(prediction[j]) if k == axis else 1 for k in range(len(others))])
    total = weights.sum()
    if total <= 0:
        raise ImpossibleObservationException(agent, ownAction, outcome)
    posterior = [None] * len(prediction)
    for axis, j in enumerate(others):
        posterior[j] = weights.sum(axis=tuple(k for k in range(len(others)) if k != axis)) / total
    return posterior
