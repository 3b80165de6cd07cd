import os
import shutil
import unittest

from coordlab.games import (BUILTIN_GAMES, makeAsymmetric2x2, make3x3ConventionGame, makeBuiltinGame,
                            makeDuplicatedOjaGame, makePureCoordination, makeStochastic2x2, gameFromDict,
                            gameToDict, readGameFile, writeGameFile)
from coordlab.lib.ioUtils import getTempDirectory
from coordlab.stateGame import InvalidGameException, InvalidParameterException, optimalJointActions
from coordlab.test import CoordLabTest


class GamesTest(CoordLabTest):

    def testPureCoordination(self):
        game = makePureCoordination(2)
        self.assertEqual((2, 2), game.actionsPerAgent)
        self.assertEqual([1.0, 0.0, 0.0, 1.0], [game.expectedUtility(a) for a in game.jointActions()])
        self.assertRaises(InvalidParameterException, makePureCoordination, 2, 1.0, 1.0)
        self.assertRaises(InvalidParameterException, makePureCoordination, 1)
        nearlyTied = makePureCoordination(2, c=1e-6, d=0.0)
        self.assertEqual(2, len(optimalJointActions(nearlyTied, tol=0.0)))

    def testStochastic2x2(self):
        game = makeStochastic2x2(0.05)
        self.assertVectorClose([0.9025, 0.0475, 0.0475, 0.0025], game.outcomeDistribution((0, 0)))
        self.assertRaises(InvalidParameterException, makeStochastic2x2, 0.5)
        self.assertRaises(InvalidParameterException, makeStochastic2x2, -0.1)

    def testAsymmetric2x2(self):
        game = makeAsymmetric2x2(4)
        self.assertEqual([4.0, 1.0, 0.0, 4.0], [game.expectedUtility(a) for a in game.jointActions()])
        self.assertEqual(((0, 0), (1, 1)), optimalJointActions(makeAsymmetric2x2(1 + 1e-6), tol=0.0))
        self.assertRaises(InvalidParameterException, makeAsymmetric2x2, 1)

    def test3x3ConventionGame(self):
        game = make3x3ConventionGame()
        self.assertEqual((3, 3, 3), game.actionsPerAgent)
        self.assertEqual(((0, 0, 0), (1, 1, 1), (2, 2, 2)), optimalJointActions(game))
        # Every outcome singles out one OJA
        for s in range(game.nOutcomes):
            likelihoods = [game.outcomeDistribution(a)[s] for a in optimalJointActions(game)]
            self.assertEqual(1, sum(1 for x in likelihoods if x == max(likelihoods)))
        majority = game.outcomeDistribution((1, 1, 2))
        self.assertTrue(0 < majority[1] < 0.5)
        self.assertVectorClose([0.0, 0.15, 0.0, 0.85 / 3, 0.85 / 3, 0.85 / 3], majority)
        self.assertCloseTo(1.0 / 3, game.outcomeDistribution((0, 1, 2))[3])
        self.assertFalse(game.hasIndistinguishableOjas())

    def test3x3Majorities(self):
        def pluralityMoves(game, outcome):
            return set(max(set(a), key=a.count) for a in game.jointActions()
                       if len(set(a)) < 3 and game.outcomeDistribution(a)[outcome] > 0)

        matching = make3x3ConventionGame(majority='matching')
        self.assertVectorClose([0.0, 0.15, 0.0, 0.0, 0.85, 0.0], matching.outcomeDistribution((1, 2, 1)))
        spread = makeBuiltinGame('convention3x3')
        for s in range(6):
            # With matching majorities every outcome names the move the majority chose
            self.assertEqual({s % 3}, pluralityMoves(matching, s))
            self.assertEqual({s % 3} if s < 3 else {0, 1, 2}, pluralityMoves(spread, s))
        self.assertRaises(InvalidParameterException, make3x3ConventionGame, majority='sideways')

    def test3x3UniformSlipDegenerate(self):
        game = make3x3ConventionGame(q=1.0, slip='uniform')
        ojas = optimalJointActions(game)
        self.assertEqual(3, len(ojas))
        for outcome in range(game.nOutcomes):
            self.assertEqual(1, len(set(game.outcomeDistribution(a)[outcome] for a in ojas)))
        self.assertTrue(game.hasIndistinguishableOjas())
        self.assertRaises(InvalidParameterException, make3x3ConventionGame, 0.1, 0.15, 'sideways')
        self.assertRaises(InvalidParameterException, make3x3ConventionGame, 0.1, 0.95)

    def testDuplicatedOjaGame(self):
        game = makeDuplicatedOjaGame(0.1)
        self.assertEqual(((0, 0), (1, 1), (2, 2)), optimalJointActions(game))
        self.assertTrue(game.hasIndistinguishableOjas())
        self.assertVectorClose([0.0, 0.0, 0.0, 1.0], game.outcomeDistribution((0, 2)))

    def testBuiltinRegistry(self):
        for name, builtin in BUILTIN_GAMES.items():
            game = makeBuiltinGame(name)
            self.assertTrue(game.nAgents >= 2, name)
            self.assertTrue(len(optimalJointActions(game)) >= 2, name)
        self.assertEqual((3, 3, 3), makeBuiltinGame('pure_coordination', {'n': 3}).actionsPerAgent)
        self.assertRaises(InvalidParameterException, makeBuiltinGame, 'no_such_game')
        self.assertRaises(InvalidParameterException, makeBuiltinGame, 'stochastic2x2', {'q': 0.1})

    def testGameFile(self):
        tempDir = getTempDirectory()
        try:
            original = make3x3ConventionGame()
            fileName = os.path.join(tempDir, 'game.json')
            writeGameFile(original, fileName)
            game = readGameFile(fileName)
            self.assertEqual(original.actionsPerAgent, game.actionsPerAgent)
            self.assertEqual(original.rationalUtilities, game.rationalUtilities)
            self.assertEqual(original.outcomeLabels, game.outcomeLabels)
            self.assertEqual(original.transitions.tolist(), game.transitions.tolist())
            # Writing the read game again gives the same bytes
            otherName = os.path.join(tempDir, 'again.json')
            writeGameFile(game, otherName)
            with open(fileName) as first, open(otherName) as second:
                self.assertEqual(first.read(), second.read())
        finally:
            shutil.rmtree(tempDir)

    def testGameFileValidation(self):
        doc = gameToDict(makeStochastic2x2(0.1))
        del doc['transitions']
        self.assertRaises(InvalidGameException, gameFromDict, doc)
        doc = gameToDict(makeStochastic2x2(0.1))
        doc['actions'] = [2, 2, 2]
        self.assertRaises(InvalidGameException, gameFromDict, doc)
        doc = gameToDict(makeStochastic2x2(0.1))
        doc['rational_utilities'] = ['1', '0', '0', '2']
        self.assertRaises(InvalidGameException, gameFromDict, doc)
        doc = gameToDict(makeStochastic2x2(0.1))
        doc['transitions'][0] = [0.5, 0.5, 0.5, 0.0]
        self.assertRaises(InvalidGameException, gameFromDict, doc)


if __name__ == '__main__':
    unittest.main()
