# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""The coordlab command: simulate, oracle and games.
"""
import argparse
import logging
import sys

from coordlab.common import ConfigException
from coordlab.exactAnalysis import ResourceLimitException, UnsupportedConfigurationException
from coordlab.lib.ioUtils import addLoggingOptions, setLoggingFromOptions
from coordlab.runners.abstractTrialRunner import TrialFailedException
from coordlab.stateGame import GameTooLargeException, InvalidGameException, InvalidParameterException
from coordlab.utils import coordGames, coordOracle, coordSimulate
from coordlab.version import version

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_UNSUPPORTED = 4

commands = {'simulate': coordSimulate, 'oracle': coordOracle, 'games': coordGames}


def getParser():
    loggingParser = argparse.ArgumentParser(add_help=False)
    addLoggingOptions(loggingParser)
    parser = argparse.ArgumentParser(prog='coordlab', description=__doc__)
    parser.add_argument('--version', action='version', version='%(prog)s ' + version)
    subparsers = parser.add_subparsers(dest='command')
    for name in sorted(commands):
        module = commands[name]
        subparser = subparsers.add_parser(name, parents=[loggingParser], help=module.__doc__.strip(),
                                          description=module.__doc__.strip())
        module.addOptions(subparser)
    return parser


def main(argv=None):
    parser = getParser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == 'games':
            argv = argv[:1] + coordGames.rewriteShortcuts(argv[1:])
        options = parser.parse_args(argv)
        if options.command is None:
            parser.print_help()
            return EXIT_CONFIG
        setLoggingFromOptions(options)
        return commands[options.command].run(options)
    except (ConfigException, InvalidParameterException, InvalidGameException) as e:
        sys.stderr.write("%s\n" % e)
        return EXIT_CONFIG
    except ResourceLimitException as e:
        sys.stderr.write("%s\n" % e)
        return EXIT_RESOURCE
    except GameTooLargeException as e:
        sys.stderr.write("%s\n" % e)
        return EXIT_RESOURCE
    except UnsupportedConfigurationException as e:
        sys.stderr.write("%s\n" % e)
        return EXIT_UNSUPPORTED
    except TrialFailedException as e:
        logger.error("%s", e)
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
