#!/usr/bin/env python

# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

import csv
import json
import logging
import os
import tempfile

defaultLogLevel = logging.INFO

logger = logging.getLogger(__name__)
rootLogger = logging.getLogger()

__loggingFiles = []


LOG_LEVEL_ALIASES = {"OFF": "CRITICAL", "WARN": "WARNING"}


def setLogLevel(level):
    level = level.upper()
    level = LOG_LEVEL_ALIASES.get(level, level)
    # getLevelName works in both directions, numeric to textual and textual to numeric
    numericLevel = logging.getLevelName(level)
    if not isinstance(numericLevel, int):
        raise ValueError("Unrecognised log level: %s" % level)
    rootLogger.setLevel(numericLevel)


def addLoggingOptions(parser):
    """
    Adds the logging options to an argparse parser (or argument group).
    """
    group = parser.add_argument_group("Logging Options", "Options that control logging")
    defaultLogLevelName = logging.getLevelName(defaultLogLevel)
    group.add_argument("--logLevel", dest="logLevel", default=defaultLogLevelName,
                       help=("Log at given level (may be either OFF (or CRITICAL), ERROR, WARN (or WARNING), INFO or DEBUG). "
                             "(default is %s)" % defaultLogLevelName))
    group.add_argument("--logFile", dest="logFile", help="File to log in")


def setLoggingFromOptions(options):
    """
    Sets the logging from the options added by addLoggingOptions.
    """
    logging.basicConfig(format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    setLogLevel(options.logLevel)
    logger.debug("Logging set at level: %s", logging.getLevelName(rootLogger.getEffectiveLevel()))
    if options.logFile is not None and options.logFile not in __loggingFiles:
        __loggingFiles.append(options.logFile)
        rootLogger.addHandler(logging.FileHandler(options.logFile))
        logger.info("Logging to file: %s", options.logFile)


def canonicalJson(obj):
    """
    Returns the canonical JSON text of obj: sorted keys, compact separators, so that equal
    documents are byte-identical.
    """
    return json.dumps(obj, sort_keys=True, separators=(',', ':'))


def writeCanonicalJson(obj, fileName):
    with open(fileName, 'w') as fileHandle:
        fileHandle.write(canonicalJson(obj))
        fileHandle.write('\n')


def formatFloat(value):
    """
    Nine significant digits, the precision of every CSV we emit.
    """
    return '%.9g' % value


def writeCsv(fileHandle, header, rows):
    writer = csv.writer(fileHandle, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([x if isinstance(x, (str, int)) else formatFloat(x) for x in row])


def makeSubDir(dirName):
    """Makes a given subdirectory if it doesn't already exist.
    """
    if not os.path.exists(dirName):
        os.makedirs(dirName)
    return dirName


def getTempDirectory(rootDir=None):
    """
    Returns a temporary directory that must be manually deleted. rootDir will be
    created if it does not exist.
    """
    if rootDir is not None:
        makeSubDir(rootDir)
    return tempfile.mkdtemp(dir=rootDir)
