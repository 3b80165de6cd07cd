# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""Compute the exact error curve of an experiment config by enumerating its belief chain.
"""
import logging
import os

from coordlab.common import RunManifest, loadExperimentConfig
from coordlab.exactAnalysis import ResourceLimitException, exactFailureCurve
from coordlab.lib.ioUtils import makeSubDir

logger = logging.getLogger(__name__)


def addOptions(parser):
    parser.add_argument("config", help="The experiment config (JSON)")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="Override a config field by dotted path. May be repeated.")
    parser.add_argument("--outputDir", dest="outputDir", default=".",
                        help="Directory to write the CSV files and manifest in. default=%(default)s")


def run(options):
    config = loadExperimentConfig(options.config, options.overrides)
    makeSubDir(options.outputDir)
    manifest = RunManifest(config, 'oracle')
    try:
        for label, variantConfig in config.expandVariants():
            fileName = os.path.join(options.outputDir, variantConfig.name + '.oracle.csv')
            try:
                curve = exactFailureCurve(variantConfig.makeGame(), variantConfig.learner, variantConfig.horizon,
                                          variantConfig.prune_mass, variantConfig.conventions,
                                          variantConfig.max_frontier)
            except ResourceLimitException as e:
                with open(fileName, 'w') as fileHandle:
                    e.partial.writeCsv(fileHandle)
                manifest.addOutput(fileName)
                logger.warning("Wrote the %i rounds completed to %s", e.partial.horizon, fileName)
                raise
            with open(fileName, 'w') as fileHandle:
                curve.writeCsv(fileHandle)
            manifest.addOutput(fileName)
            print(fileName)
    finally:
        manifest.write(os.path.join(options.outputDir, config.name + '.manifest.json'))
    return 0
