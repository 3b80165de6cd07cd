# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""List the builtin games, show one's strategic form and OJAs, or export it as a game file.
"""
import logging

from coordlab.common import ConfigException, parseOverride
from coordlab.games import BUILTIN_GAMES, makeBuiltinGame, writeGameFile
from coordlab.lib.ioUtils import formatFloat
from coordlab.stateGame import toStrategicForm, optimalJointActions

logger = logging.getLogger(__name__)


def addOptions(parser):
    parser.add_argument("action", choices=("list", "show", "export"))
    parser.add_argument("name", nargs="?", help="The builtin game (show, export)")
    parser.add_argument("path", nargs="?", help="The game file to write (export)")
    parser.add_argument("--param", dest="params", action="append", default=[], metavar="KEY=VALUE",
                        help="A constructor parameter; --KEY VALUE works too. May be repeated.")


OWN_FLAGS = ('--param', '--log', '--help')


def rewriteShortcuts(args):
    """
    Turns --KEY VALUE and --KEY=VALUE parameter shortcuts into --param KEY=VALUE.
    """
    args = list(args)
    rewritten = []
    while args:
        arg = args.pop(0)
        if not arg.startswith('--') or arg.startswith(OWN_FLAGS):
            rewritten.append(arg)
        elif '=' in arg:
            rewritten += ['--param', arg[2:]]
        elif args:
            rewritten += ['--param', arg[2:] + '=' + args.pop(0)]
        else:
            raise ConfigException('games', ["%s needs a value" % arg])
    return rewritten


def jointActionLabel(game, jointAction):
    return '<%s>' % ','.join(game.actionLabels[i][a] for i, a in enumerate(jointAction))


def listGames():
    for name in sorted(BUILTIN_GAMES):
        builtin = BUILTIN_GAMES[name]
        params = ', '.join('%s=%r' % (k, builtin.defaults[k]) for k in sorted(builtin.defaults))
        print("%-18s %s (%s)" % (name, builtin.description, params or 'no parameters'))


def showGame(game):
    print(game.name)
    tensor = toStrategicForm(game)
    print("Strategic form:")
    for a in game.jointActions():
        print("  %s %s" % (jointActionLabel(game, a), formatFloat(tensor.entry(a))))
    print("OJAs: %s" % ', '.join(jointActionLabel(game, a) for a in optimalJointActions(game)))
    if game.hasIndistinguishableOjas():
        print("Warning: some OJAs have identical outcome distributions")


def run(options):
    if options.action == 'list':
        if options.name is not None or options.params:
            raise ConfigException('games', ["list takes no further arguments"])
        listGames()
        return 0
    if options.name is None:
        raise ConfigException('games', ["%s needs a game name" % options.action])
    game = makeBuiltinGame(options.name, dict(parseOverride(p) for p in options.params))
    if options.action == 'show':
        showGame(game)
    else:
        if options.path is None:
            raise ConfigException('games', ["export needs a file name"])
        writeGameFile(game, options.path)
    return 0
