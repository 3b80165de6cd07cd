import unittest
from fractions import Fraction

import numpy as np

from coordlab.common import loadLearnerClass, makeLearners
from coordlab.conventions import ConventionState, initialConventionState
from coordlab.games import makeDeterministic2x2, makeDuplicatedOjaGame, makeStochastic2x2
from coordlab.harness import playRound
from coordlab.learners.bayesian import BayesianLearner, UnobservableBayesianLearner
from coordlab.learners.beliefs import DirichletBelief, FrequencyBelief
from coordlab.learners.fictitiousPlay import FictitiousPlayLearner, StochasticFictitiousPlayLearner
from coordlab.stateGame import InvalidParameterException, bestResponses
from coordlab.test import CoordLabTest

L, R = 0, 1


def makePair(kind, game, epsilon=0.0, prior='uniform:1'):
    return makeLearners(game, {'kind': kind, 'epsilon': epsilon, 'prior': prior})


class LearnersTest(CoordLabTest):

    def testLearnerKinds(self):
        self.assertIs(FictitiousPlayLearner, loadLearnerClass('fp'))
        self.assertIs(StochasticFictitiousPlayLearner, loadLearnerClass('sfp'))
        self.assertIs(BayesianLearner, loadLearnerClass('bayes'))
        self.assertIs(UnobservableBayesianLearner, loadLearnerClass('bayes_unobs'))
        self.assertRaises(InvalidParameterException, loadLearnerClass, 'qlearning')
        # The belief has to match the kind
        self.assertRaises(InvalidParameterException, BayesianLearner, 0, FrequencyBelief(0, [None, [1, 1]]))
        self.assertRaises(InvalidParameterException, BayesianLearner, 0, DirichletBelief(0, [None, [1, 1]]), -0.1)

    def testChooseDistribution(self):
        game = makeDeterministic2x2()
        learner = FictitiousPlayLearner(0, FrequencyBelief(0, [None, [2, 1]]))
        self.assertEqual([1.0, 0.0], list(learner.chooseDistribution(game)))
        learner = FictitiousPlayLearner(0, FrequencyBelief(0, [None, [1, 1]]))
        self.assertEqual([0.5, 0.5], list(learner.chooseDistribution(game)))

    def testEpsilonBestResponse(self):
        game = makeStochastic2x2(0.05)
        belief = DirichletBelief(0, [None, [1.0, 1.1]])
        self.assertEqual([0.0, 1.0], list(UnobservableBayesianLearner(0, belief).chooseDistribution(game)))
        self.assertEqual([0.5, 0.5], list(UnobservableBayesianLearner(0, belief, 0.15).chooseDistribution(game)))

    def testChoicesAreBestResponses(self):
        game = makeStochastic2x2(0.1)
        rng = np.random.default_rng(3)
        learners = makePair('bayes_unobs', game)
        for k in range(30):
            for learner in learners:
                distribution = learner.chooseDistribution(game)
                support = tuple(x for x, p in enumerate(distribution) if p > 0)
                self.assertEqual(bestResponses(game, learner.agent, learner.predict()), support)
            playRound(game, learners, rng)

    def testChooseActionUsesOneDraw(self):
        game = makeDeterministic2x2()
        learner = BayesianLearner(0, DirichletBelief(0, [None, [2, 1]]))
        rng = np.random.default_rng(1)
        reference = np.random.default_rng(1)
        self.assertEqual(L, learner.chooseAction(game, rng))
        self.assertEqual(L, learner.lastAction)
        reference.random()
        self.assertEqual(reference.random(), rng.random())

    def testObservableUpdates(self):
        game = makeDeterministic2x2()
        a, b = makePair('bayes', game)
        a.update(game, L, (L, R), 1)
        b.update(game, R, (L, R), 1)
        self.assertEqual([1.0, 2.0], list(a.belief.counts[1]))
        self.assertEqual([2.0, 1.0], list(b.belief.counts[0]))
        a.update(game, R, (R, L), 2)
        self.assertEqual([2.0, 2.0], list(a.belief.counts[1]))

    def testWorkedTrace(self):
        game = makeStochastic2x2(0.1)
        learners = makePair('bayes_unobs', game)
        rng = np.random.default_rng(0)
        record, _ = playRound(game, learners, rng, jointAction=(L, R), modalOutcome=True)
        self.assertEqual(1, record.outcome)
        self.assertVectorClose([1.1, 1.9], learners[0].belief.counts[1])
        self.assertVectorClose([1.9, 1.1], learners[1].belief.counts[0])
        record, _ = playRound(game, learners, rng, modalOutcome=True)
        self.assertEqual((R, L), record.jointAction)
        self.assertEqual(1.0, record.error)
        counts = learners[0].belief.counts[1]
        self.assertVectorClose([1.938, 2.061], counts, 2e-3)
        self.assertVectorClose([1.1 + 0.891 / 1.062, 1.9 + 0.171 / 1.062], counts, 1e-9)

    def testDeterministicCycle(self):
        game = makeStochastic2x2(0.1)
        learners = makePair('bayes_unobs', game)
        rng = np.random.default_rng(0)
        record, _ = playRound(game, learners, rng, jointAction=(L, R), modalOutcome=True)
        for k in range(50):
            record, _ = playRound(game, learners, rng, modalOutcome=True)
            self.assertEqual(1.0, record.error)
            self.assertTrue(all(max(d) == 1.0 for d in record.distributions))
            self.assertNotEqual(record.jointAction[0], record.jointAction[1])

    def testAbsorbingCoordination(self):
        game = makeDeterministic2x2()
        for kind in ('fp', 'bayes'):
            learners = makePair(kind, game)
            rng = np.random.default_rng(7)
            playRound(game, learners, rng, jointAction=(R, R))
            for k in range(20):
                record, _ = playRound(game, learners, rng)
                self.assertEqual((R, R), record.jointAction)
                self.assertEqual(0.0, record.error)

    def testExactMode(self):
        game = makeDeterministic2x2()
        learners = makeLearners(game, {'kind': 'bayes', 'epsilon': 0.0, 'prior': 'uniform:1'}, exact=True)
        self.assertTrue(learners[0].exact)
        self.assertEqual([Fraction(1, 2), Fraction(1, 2)], learners[0].chooseDistribution(game))
        learners[0].update(game, L, (L, L), 0)
        self.assertEqual([Fraction(1), Fraction(0)], learners[0].chooseDistribution(game))

    def testCopyIsIndependent(self):
        game = makeDeterministic2x2()
        learner = makePair('fp', game)[0]
        other = learner.copy()
        other.update(game, L, (L, L), 0)
        self.assertEqual([1.0, 1.0], list(learner.belief.counts[1]))
        self.assertNotEqual(learner.key(), other.key())

    def testConventionPointMass(self):
        game = makeDuplicatedOjaGame(0.1)
        learner = makePair('sfp', game)[1]
        convention = ConventionState([[2], [2]], [(2, 2)], frozen=True)
        self.assertEqual([0.0, 0.0, 1.0], list(learner.chooseDistribution(game, convention)))

    def testConventionRestrictsChoices(self):
        game = makeDuplicatedOjaGame(0.1)
        learners = makePair('sfp', game)
        convention = ConventionState([[0, 1], [0, 1]], [(0, 0), (1, 1)], frozen=True)
        learners[0].belief = FrequencyBelief(0, [None, [1.0, 1.0, 5.0]])
        # Move 2 is deleted, so the heavy count on it is ignored
        self.assertEqual([0.5, 0.5, 0.0], list(learners[0].chooseDistribution(game, convention)))
        self.assertEqual([0.0, 0.0, 1.0], list(learners[0].chooseDistribution(game)))

    def testUpdatesRespectActiveActions(self):
        game = makeDuplicatedOjaGame(0.1)
        learners = makePair('bayes_unobs', game)
        convention = ConventionState([[0, 1], [0, 1]], [(0, 0), (1, 1)], frozen=True)
        # s3 after own move 0: the other agent played 1 or 2, and 2 is deleted
        learners[0].update(game, 0, (0, 1), 3, convention)
        self.assertVectorClose([1.0, 2.0, 1.0], learners[0].belief.counts[1])
        learners[1].update(game, 0, (0, 1), 3, initialConventionState(game))
        self.assertVectorClose([1.0, 1.5, 1.5], learners[1].belief.counts[0])


if __name__ == '__main__':
    unittest.main()
