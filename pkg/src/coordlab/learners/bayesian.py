# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

import logging

from coordlab.learners.abstractLearner import AbstractLearner
from coordlab.learners.beliefs import (DirichletBelief, bayesExpectation, bayesUpdateObservable,
                                       bayesUpdateUnobservable)
from coordlab.learners.likelihoods import actionPosterior

logger = logging.getLogger(__name__)


class BayesianLearner(AbstractLearner):
    """
    Best response to the expected strategies under Dirichlet beliefs, incremented by one for
    every observed action.
    """

    kind = 'bayes'
    beliefClass = DirichletBelief

    def predict(self):
        return bayesExpectation(self.belief)

    def _learn(self, game, ownAction, jointAction, outcome, activeActions):
        return bayesUpdateObservable(self.belief, jointAction)


class UnobservableBayesianLearner(AbstractLearner):
    """
    Dirichlet beliefs updated from outcomes alone: each parameter grows by the posterior
    probability that the corresponding action was played.
    """

    kind = 'bayes_unobs'
    beliefClass = DirichletBelief

    def predict(self):
        return bayesExpectation(self.belief)

    def _learn(self, game, ownAction, jointAction, outcome, activeActions):
        posterior = actionPosterior(game, self.belief, ownAction, outcome, activeActions)
        return bayesUpdateUnobservable(self.belief, posterior)
