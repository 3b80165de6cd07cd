import unittest
from fractions import Fraction

import numpy as np

from coordlab.games import (makeStochastic2x2, makeDeterministic2x2, makeAsymmetric2x2, makePureCoordination,
                            make3x3ConventionGame, makeDuplicatedOjaGame)
from coordlab.stateGame import (DEFAULT_TIE_TOLERANCE, StateGame, InvalidGameException, InvalidActionException,
                                InvalidParameterException, GameTooLargeException, bestResponses,
                                checkMixedProfile, epsilonBestResponses, expectedUtility,
                                optimalJointActions, profileErrorProbability, sampleIndex, toStrategicForm)
from coordlab.test import CoordLabTest


def smallGames():
    return [makeDeterministic2x2(), makeStochastic2x2(0.1), makeAsymmetric2x2(4), make3x3ConventionGame(),
            makeDuplicatedOjaGame(0.1), makePureCoordination(3)]


def randomProfiles(game, n, seed=7):
    """
    n seeded mixed profiles with full support, then every pure profile of the first agent
    against uniform opponents.
    """
    rng = np.random.default_rng(seed)
    profiles = [[rng.dirichlet(np.ones(k)) for k in game.actionsPerAgent] for i in range(n)]
    for a in range(game.actionsPerAgent[0]):
        pure = np.zeros(game.actionsPerAgent[0])
        pure[a] = 1.0
        profiles.append([pure] + [np.ones(k) / k for k in game.actionsPerAgent[1:]])
    return profiles


def bruteForceError(game, profile, ojas):
    error = 0.0
    for a in game.jointActions():
        if a not in ojas:
            error += np.prod([profile[i][ai] for i, ai in enumerate(a)])
    return error


class StateGameTest(CoordLabTest):

    def setUp(self):
        super(StateGameTest, self).setUp()
        self.figure1 = makeStochastic2x2(0.1)

    def testOutcomeDistribution(self):
        self.assertVectorClose([0.81, 0.09, 0.09, 0.01], self.figure1.outcomeDistribution((0, 0)))
        self.assertVectorClose([0.09, 0.81, 0.01, 0.09], self.figure1.outcomeDistribution((0, 1)))
        deterministic = makeDeterministic2x2()
        for k, a in enumerate(deterministic.jointActions()):
            expected = [0.0] * 4
            expected[k] = 1.0
            self.assertVectorClose(expected, deterministic.outcomeDistribution(a))

    def testOutcomeColumn(self):
        column = self.figure1.outcomeColumn(1)
        self.assertEqual((2, 2), column.shape)
        self.assertCloseTo(0.81, column[0, 1])
        self.assertCloseTo(0.09, column[0, 0])

    def testJointActionsAreLexicographic(self):
        game = StateGame([2, 3], [0, 1], np.tile([1.0, 0.0], (6, 1)))
        self.assertEqual([(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)], list(game.jointActions()))
        for k, a in enumerate(game.jointActions()):
            self.assertEqual(k, game.jointActionIndex(a))
            self.assertEqual(a, game.jointActionFromIndex(k))

    def testInvalidJointAction(self):
        self.assertRaises(InvalidActionException, self.figure1.outcomeDistribution, (0, 2))
        self.assertRaises(InvalidActionException, self.figure1.outcomeDistribution, (0,))
        self.assertRaises(InvalidActionException, self.figure1.outcomeDistribution, (-1, 0))

    def testExpectedUtility(self):
        self.assertCloseTo(0.82, expectedUtility(self.figure1, (0, 0)))
        self.assertCloseTo(0.18, expectedUtility(self.figure1, (1, 0)))
        trivial = StateGame([1], [7], [[1.0]])
        self.assertCloseTo(7.0, expectedUtility(trivial, (0,)))

    def testStrategicForm(self):
        tensor = toStrategicForm(self.figure1)
        self.assertEqual((2, 2), tensor.shape)
        self.assertCloseTo(0.82, tensor.entry((1, 1)))
        self.assertCloseTo(0.18, tensor.entry((0, 1)))
        deterministic = toStrategicForm(makeDeterministic2x2())
        self.assertEqual([1.0, 0.0, 0.0, 1.0], [deterministic.entry(a) for a in [(0, 0), (0, 1), (1, 0), (1, 1)]])
        self.assertEqual(7.0, toStrategicForm(StateGame([1], [7], [[1.0]])).entry((0,)))

    def testInvalidGames(self):
        # Rows must sum to one
        self.assertRaises(InvalidGameException, StateGame, [2], [0, 1], [[0.5, 0.4], [0.0, 1.0]])
        # Negative probability
        self.assertRaises(InvalidGameException, StateGame, [1], [0, 1], [[-0.5, 1.5]])
        # Wrong shape
        self.assertRaises(InvalidGameException, StateGame, [2], [0, 1], [[1.0, 0.0]])
        self.assertRaises(InvalidGameException, StateGame, [2], [0, float('inf')], [[1.0, 0.0], [0.0, 1.0]])
        self.assertRaises(InvalidGameException, StateGame, [0], [1], [])
        self.assertRaises(InvalidGameException, StateGame, [2], [0, 1])

    def testOptimalJointActions(self):
        self.assertEqual(((0, 0), (1, 1)), optimalJointActions(self.figure1))
        constant = StateGame([2, 2], [3.0], np.ones((4, 1)))
        self.assertEqual(tuple(constant.jointActions()), optimalJointActions(constant))
        self.assertRaises(InvalidParameterException, optimalJointActions, self.figure1, -1.0)

    def testPureCoordinationOjas(self):
        game = makePureCoordination(3)
        self.assertEqual(((0, 0, 0), (1, 1, 1), (2, 2, 2)), optimalJointActions(game))
        large = makePureCoordination(10)
        self.assertEqual(10 ** 10, large.numJointActions)
        self.assertEqual(10, len(optimalJointActions(large)))
        self.assertRaises(GameTooLargeException, large.payoffTensor)
        self.assertRaises(GameTooLargeException, lambda: large.transitions)
        row = large.outcomeDistribution((4,) * 10)
        self.assertEqual(1.0, row[4])
        self.assertEqual(1.0, large.outcomeDistribution((4,) * 9 + (5,))[10])

    def testPureCoordinationActionValues(self):
        game = makePureCoordination(3, c=2.0, d=0.5)
        profile = [None, [0.5, 0.25, 0.25], [0.2, 0.3, 0.5]]
        dense = super(type(game), game).actionValues(0, profile)
        self.assertVectorClose(dense, game.actionValues(0, profile))
        self.assertCloseTo(0.5 + 1.5 * 0.1, game.actionValues(0, profile)[0])

    def testBestResponses(self):
        deterministic = makeDeterministic2x2()
        self.assertEqual((0,), bestResponses(deterministic, 0, [None, [1.0, 0.0]]))
        self.assertEqual((0, 1), bestResponses(deterministic, 0, [None, [0.5, 0.5]]))
        asymmetric = makeAsymmetric2x2(4)
        self.assertEqual((0, 1), bestResponses(asymmetric, 0, [None, [3.0 / 7, 4.0 / 7]]))
        self.assertEqual((0,), bestResponses(asymmetric, 0, [None, [0.5, 0.5]]))
        self.assertRaises(InvalidParameterException, bestResponses, deterministic, 0, [None, [0.6, 0.6]])

    def testEpsilonBestResponses(self):
        self.assertEqual((1,), epsilonBestResponses([0.5, 0.6, 0.1], 0.0))
        self.assertEqual((0, 1), epsilonBestResponses([0.5, 0.6, 0.1], 0.1))
        self.assertEqual((0, 2), epsilonBestResponses([0.5, 0.6, 0.45], 0.1, eligible=[0, 2]))

    def testProfileErrorProbability(self):
        deterministic = makeDeterministic2x2()
        ojas = optimalJointActions(deterministic)
        self.assertCloseTo(0.5, profileErrorProbability(deterministic, [[0.5, 0.5], [0.5, 0.5]], ojas))
        self.assertEqual(0.0, profileErrorProbability(deterministic, [[1.0, 0.0], [1.0, 0.0]], ojas))
        game = makePureCoordination(3)
        third = [Fraction(1, 3)] * 3
        self.assertEqual(Fraction(8, 9), profileErrorProbability(game, [third] * 3, optimalJointActions(game)))

    def testCheckMixedProfile(self):
        checkMixedProfile(self.figure1, [[0.5, 0.5], [1.0, 0.0]])
        checkMixedProfile(self.figure1, [None, [1.0, 0.0]], skipAgent=0)
        self.assertRaises(InvalidParameterException, checkMixedProfile, self.figure1, [[0.5, 0.5]])
        self.assertRaises(InvalidParameterException, checkMixedProfile, self.figure1, [[0.5, 0.5], [1.0, 0.5]])

    def testExactActionValues(self):
        game = makeAsymmetric2x2(4)
        profile = [None, [Fraction(3, 7), Fraction(4, 7)]]
        values = game.exactActionValues(0, profile)
        self.assertEqual(values[0], values[1])
        self.assertEqual(Fraction(16, 7), values[0])

    def testSampleIndexConsumesOneDraw(self):
        for distribution in ([1.0, 0.0], [0.0, 0.0, 1.0], [0.25, 0.25, 0.5]):
            rng = np.random.default_rng(5)
            reference = np.random.default_rng(5)
            k = sampleIndex(distribution, rng)
            self.assertTrue(distribution[k] > 0)
            reference.random()
            self.assertEqual(reference.random(), rng.random())

    def testIndistinguishableOjas(self):
        self.assertFalse(self.figure1.hasIndistinguishableOjas())
        table = [[1.0, 0.0], [0.0, 1.0], [0.0, 1.0], [1.0, 0.0]]
        game = StateGame([2, 2], [1, 0], table)
        self.assertTrue(game.hasIndistinguishableOjas())

    def testAffineUtilityChangesKeepBestResponses(self):
        for game in smallGames() + [makeAsymmetric2x2(1.5)]:
            profiles = randomProfiles(game, 20)
            if game.actionsPerAgent == (2, 2):
                profiles.append([None, [3.0 / 7, 4.0 / 7]])
            for alpha, beta in ((0.5, -2.0), (3.0, 5.0), (1.0, 100.0)):
                other = StateGame(game.actionsPerAgent, alpha * game.utilities + beta, game.transitions)
                self.assertEqual(optimalJointActions(game), optimalJointActions(other))
                for profile in profiles:
                    for agent in range(game.nAgents):
                        others = [None if j == agent else p for j, p in enumerate(profile)]
                        self.assertEqual(bestResponses(game, agent, others), bestResponses(other, agent, others),
                                         (game.name, alpha, beta, agent))

    def testOptimalJointActionsAreTheArgmax(self):
        for game in smallGames() + [makePureCoordination(4), makeAsymmetric2x2(1 + 1e-6)]:
            utilities = dict((a, expectedUtility(game, a)) for a in game.jointActions())
            best = max(utilities.values())
            argmax = tuple(a for a in game.jointActions() if utilities[a] >= best - DEFAULT_TIE_TOLERANCE)
            self.assertEqual(argmax, optimalJointActions(game), game.name)

    def testErrorProbabilityMatchesEnumeration(self):
        for game in smallGames() + [makePureCoordination(4), makePureCoordination(5)]:
            self.assertTrue(game.numJointActions <= 10 ** 4)
            ojas = optimalJointActions(game)
            for profile in randomProfiles(game, 5):
                self.assertCloseTo(bruteForceError(game, profile, ojas), profileErrorProbability(game, profile, ojas),
                                   1e-10)


if __name__ == '__main__':
    unittest.main()
