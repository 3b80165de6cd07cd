# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

import logging

from coordlab.learners.abstractLearner import AbstractLearner
from coordlab.learners.beliefs import FrequencyBelief, fpPredict, fpUpdateObservable, sfpUpdate
from coordlab.learners.likelihoods import sfpJointLikelihoods, sfpIndividualLikelihoods

logger = logging.getLogger(__name__)


class FictitiousPlayLearner(AbstractLearner):
    """
    Fictitious play with observable actions: counts how often each other agent played each
    action and best-responds to the relative frequencies.
    """

    kind = 'fp'
    beliefClass = FrequencyBelief

    def predict(self):
        return fpPredict(self.belief)

    def _learn(self, game, ownAction, jointAction, outcome, activeActions):
        return fpUpdateObservable(self.belief, jointAction)


class StochasticFictitiousPlayLearner(AbstractLearner):
    """
    Fictitious play when actions are hidden: the counts grow by the likelihood that each other
    agent performed each action, given one's own action and the outcome.
    """

    kind = 'sfp'
    beliefClass = FrequencyBelief

    def predict(self):
        return fpPredict(self.belief)

    def _learn(self, game, ownAction, jointAction, outcome, activeActions):
        joint = sfpJointLikelihoods(game, self.agent, ownAction, outcome, activeActions)
        return sfpUpdate(self.belief, sfpIndividualLikelihoods(joint, self.agent))
