# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""
Constructors for every game family we experiment with, the registry of builtin games and
the JSON game file format.
"""

import itertools
import json
import logging
from fractions import Fraction

import numpy as np

from coordlab.lib.ioUtils import canonicalJson
from coordlab.stateGame import (StateGame, PureCoordinationGame, InvalidGameException,
                                InvalidParameterException, exactFraction)

logger = logging.getLogger(__name__)

LOCATION_OUTCOMES = ('ll', 'lr', 'rl', 'rr')
LEFT_RIGHT = ('l', 'r')


def _warnIfIndistinguishable(game):
    if game.hasIndistinguishableOjas():
        logger.warning("Game %s has optimal joint actions with identical outcome distributions; "
                       "no convention can separate them", game.name)
    return game


def makePureCoordination(n, c=1.0, d=0.0):
    """
    The n-agent, n-move pure coordination game: all agents choosing move m is rewarded with
    c, anything else with d.
    """
    if int(n) != n or n < 2:
        raise InvalidParameterException('n', n, "must be an integer >= 2")
    if not c > d:
        raise InvalidParameterException('c', c, "must exceed d=%r" % d)
    return PureCoordinationGame(int(n), c, d, name='pure_coordination(n=%i)' % n)


def makeStochastic2x2(failP):
    """
    Two agents each try to move left or right and end up on the other side with probability
    failP, independently. The outcome is the pair of locations reached and the agents are
    rewarded when they end up in the same place.
    """
    if not 0 <= failP < 0.5:
        raise InvalidParameterException('fail_p', failP, "must lie in [0, 0.5)")
    reach = [[1.0 - failP, failP], [failP, 1.0 - failP]]  # reach[intended][location]
    transitions = []
    for a in range(2):
        for b in range(2):
            transitions.append([reach[a][x] * reach[b][y] for x in range(2) for y in range(2)])
    return StateGame([2, 2], [1, 0, 0, 1], transitions, rationalUtilities=[1, 0, 0, 1],
                     outcomeLabels=LOCATION_OUTCOMES, actionLabels=[LEFT_RIGHT, LEFT_RIGHT],
                     name='stochastic2x2(fail_p=%r)' % failP)


def makeDeterministic2x2():
    """
    The noise-free two-location game; every outcome reveals the joint action.
    """
    game = makeStochastic2x2(0.0)
    game.name = 'deterministic2x2'
    return game


def makeAsymmetric2x2(vCoord):
    """
    A deterministic 2x2 game paying vCoord for coordinating on either side, 1 when only the
    second agent moves right (<l,r>) and 0 for the opposite miscoordination (<r,l>).
    """
    if not vCoord > 1:
        raise InvalidParameterException('v_coord', vCoord, "must exceed 1 for coordination to be optimal")
    transitions = np.eye(4)
    return StateGame([2, 2], [vCoord, 1, 0, vCoord], transitions,
                     rationalUtilities=[exactFraction(vCoord), 1, 0, exactFraction(vCoord)],
                     outcomeLabels=LOCATION_OUTCOMES, actionLabels=[LEFT_RIGHT, LEFT_RIGHT],
                     name='asymmetric2x2(v_coord=%r)' % vCoord)


def make3x3ConventionGame(q=0.1, r=0.15, slip='matching', majority='spread'):
    """
    Three agents with three moves and six outcomes, good_m and bad_m for each move m.

    All three agents on move m reach good_m with probability 1-q. With slip 'matching' the
    remaining q goes to bad_m, with slip 'uniform' it is spread evenly over all six outcomes.
    A two-against-one majority on m reaches good_m with probability r. With majority 'spread'
    the remaining 1-r is shared evenly by the three bad states, with majority 'matching' it
    all goes to bad_m. Three different moves land in a uniformly chosen bad state.

    Matching majorities make every outcome name a single move, so learners without
    conventions already agree after one round; spread majorities leave them guessing.
    """
    if slip not in ('matching', 'uniform'):
        raise InvalidParameterException('slip', slip, "must be 'matching' or 'uniform'")
    if majority not in ('spread', 'matching'):
        raise InvalidParameterException('majority', majority, "must be 'spread' or 'matching'")
    if not 0 <= q <= 1:
        raise InvalidParameterException('q', q, "must lie in [0, 1]")
    unanimousValue = 1 - q if slip == 'matching' else 1 - q + q / 2.0
    if not 0 <= r < unanimousValue:
        raise InvalidParameterException('r', r, "must lie in [0, %r) so that unanimous moves stay optimal" % unanimousValue)
    transitions = []
    for a in itertools.product(range(3), repeat=3):
        row = [0.0] * 6
        moves = set(a)
        if len(moves) == 1:
            m = a[0]
            if slip == 'matching':
                row[m] += 1 - q
                row[3 + m] += q
            else:
                row = [q / 6.0] * 6
                row[m] += 1 - q
        elif len(moves) == 2:
            m = max(moves, key=a.count)
            row[m] += r
            if majority == 'matching':
                row[3 + m] += 1 - r
            else:
                row[3:] = [(1 - r) / 3.0] * 3
        else:
            row[3:] = [1 / 3.0] * 3
        transitions.append(row)
    labels = ['0', '1', '2']
    game = StateGame([3, 3, 3], [1, 1, 1, 0, 0, 0], transitions, rationalUtilities=[1, 1, 1, 0, 0, 0],
                     outcomeLabels=['good%i' % m for m in range(3)] + ['bad%i' % m for m in range(3)],
                     actionLabels=[labels] * 3,
                     name='convention3x3(q=%r,r=%r,slip=%s,majority=%s)' % (q, r, slip, majority))
    return _warnIfIndistinguishable(game)


def makeDuplicatedOjaGame(failP=0.1):
    """
    Two agents with three moves. <0,0> and <1,1> both reach s0 (slipping to s2 with
    probability failP) so nothing observable separates them; <2,2> reaches s1 (slipping to s2
    likewise). Miscoordination always leads to s3. s0 and s1 pay 1, the rest 0.
    """
    if not 0 <= failP < 1:
        raise InvalidParameterException('fail_p', failP, "must lie in [0, 1)")
    transitions = []
    for a in range(3):
        for b in range(3):
            if a != b:
                transitions.append([0.0, 0.0, 0.0, 1.0])
            elif a < 2:
                transitions.append([1.0 - failP, 0.0, failP, 0.0])
            else:
                transitions.append([0.0, 1.0 - failP, failP, 0.0])
    game = StateGame([3, 3], [1, 1, 0, 0], transitions, rationalUtilities=[1, 1, 0, 0],
                     outcomeLabels=['s0', 's1', 's2', 's3'], actionLabels=[['0', '1', '2']] * 2,
                     name='duplicated_oja(fail_p=%r)' % failP)
    return _warnIfIndistinguishable(game)


class BuiltinGame(object):
    """
    A named game constructor with its default parameters.
    """

    def __init__(self, name, description, defaults, build):
        self.name = name
        self.description = description
        self.defaults = defaults
        self._build = build

    def make(self, params=None):
        params = dict(params or {})
        unknown = sorted(set(params) - set(self.defaults))
        if unknown:
            raise InvalidParameterException(unknown[0], params[unknown[0]],
                                            "not a parameter of %s (expected one of %s)" %
                                            (self.name, ', '.join(sorted(self.defaults)) or 'none'))
        resolved = dict(self.defaults)
        resolved.update(params)
        return self._build(resolved)


BUILTIN_GAMES = dict((g.name, g) for g in [
    BuiltinGame('pure_coordination', "n agents, n moves, c for all choosing the same move, d otherwise",
                {'n': 2, 'c': 1.0, 'd': 0.0},
                lambda p: makePureCoordination(p['n'], p['c'], p['d'])),
    BuiltinGame('asymmetric2x2', "deterministic 2x2 paying v_coord, 1 for <l,r> and 0 for <r,l>",
                {'v_coord': 4},
                lambda p: makeAsymmetric2x2(p['v_coord'])),
    BuiltinGame('stochastic2x2', "two-location game where each move fails independently with fail_p",
                {'fail_p': 0.1},
                lambda p: makeStochastic2x2(p['fail_p'])),
    BuiltinGame('deterministic2x2', "the noise-free two-location game",
                {},
                lambda p: makeDeterministic2x2()),
    BuiltinGame('convention3x3', "three agents, three moves, six outcomes of which three are good",
                {'q': 0.1, 'r': 0.15, 'slip': 'matching', 'majority': 'spread'},
                lambda p: make3x3ConventionGame(p['q'], p['r'], p['slip'], p['majority'])),
    BuiltinGame('duplicated_oja', "two outcome-identical optimal joint actions plus a distinct one",
                {'fail_p': 0.1},
                lambda p: makeDuplicatedOjaGame(p['fail_p'])),
])


def makeBuiltinGame(name, params=None):
    try:
        builtin = BUILTIN_GAMES[name]
    except KeyError:
        raise InvalidParameterException('builtin', name, "unknown game, expected one of %s" %
                                        ', '.join(sorted(BUILTIN_GAMES)))
    return builtin.make(params)


def gameToDict(game):
    doc = {'agents': game.nAgents,
           'actions': list(game.actionsPerAgent),
           'outcomes': game.nOutcomes,
           'transitions': game.transitions.tolist(),
           'utilities': game.utilities.tolist(),
           'outcome_labels': list(game.outcomeLabels),
           'action_labels': [list(x) for x in game.actionLabels]}
    if game.rationalUtilities is not None:
        doc['rational_utilities'] = [str(x) for x in game.rationalUtilities]
    if game.name is not None:
        doc['name'] = game.name
    return doc


def gameFromDict(doc):
    for key in ('agents', 'actions', 'outcomes', 'transitions', 'utilities'):
        if key not in doc:
            raise InvalidGameException("missing field '%s'" % key)
    if len(doc['actions']) != doc['agents']:
        raise InvalidGameException("'actions' has %i entries for %i agents" % (len(doc['actions']), doc['agents']))
    if len(doc['utilities']) != doc['outcomes']:
        raise InvalidGameException("'utilities' has %i entries for %i outcomes" % (len(doc['utilities']), doc['outcomes']))
    rational = doc.get('rational_utilities')
    if rational is not None:
        try:
            rational = [Fraction(x) for x in rational]
        except (ValueError, ZeroDivisionError):
            raise InvalidGameException("'rational_utilities' must hold strings of the form p/q")
        if any(abs(float(x) - u) > 1e-12 for x, u in zip(rational, doc['utilities'])):
            raise InvalidGameException("'rational_utilities' disagree with 'utilities'")
    return StateGame(doc['actions'], doc['utilities'], doc['transitions'], rationalUtilities=rational,
                     outcomeLabels=doc.get('outcome_labels'), actionLabels=doc.get('action_labels'),
                     name=doc.get('name'))


def writeGameFile(game, fileName):
    with open(fileName, 'w') as fileHandle:
        fileHandle.write(canonicalJson(gameToDict(game)))
        fileHandle.write('\n')
    logger.info("Wrote %s to %s", game.name, fileName)


def readGameFile(fileName):
    with open(fileName) as fileHandle:
        try:
            doc = json.load(fileHandle)
        except ValueError as e:
            raise InvalidGameException("%s is not valid JSON: %s" % (fileName, e))
    return gameFromDict(doc)
