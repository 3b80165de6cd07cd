# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""Run the Monte Carlo trials of an experiment config and write its curves as CSV.
"""
import logging
import multiprocessing
import os

from coordlab.common import RunManifest, loadExperimentConfig
from coordlab.harness import runExperiment
from coordlab.lib.ioUtils import makeSubDir

logger = logging.getLogger(__name__)


def addOptions(parser):
    parser.add_argument("config", help="The experiment config (JSON)")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="Override a config field by dotted path; a bare key names a game parameter or "
                             "learner field. May be repeated.")
    parser.add_argument("--workers", dest="workers", type=int, default=multiprocessing.cpu_count(),
                        help="The maximum number of trials to run at once. default=%(default)s")
    parser.add_argument("--outputDir", dest="outputDir", default=".",
                        help="Directory to write the CSV files and manifest in. default=%(default)s")
    parser.add_argument("--dump-trials", dest="dumpTrials", action="store_true", default=False,
                        help="Also write every trial record as JSON lines")


def run(options):
    config = loadExperimentConfig(options.config, options.overrides)
    makeSubDir(options.outputDir)
    manifest = RunManifest(config, 'simulate')
    dumpFile = None
    if options.dumpTrials:
        dumpFileName = os.path.join(options.outputDir, config.name + '.trials.jsonl')
        dumpFile = open(dumpFileName, 'w')
        manifest.addOutput(dumpFileName)
    try:
        for label, variantConfig in config.expandVariants():
            curve = runExperiment(variantConfig, options.workers, dumpFile, label)
            fileName = os.path.join(options.outputDir, variantConfig.name + '.csv')
            with open(fileName, 'w') as fileHandle:
                curve.writeCsv(fileHandle)
            manifest.addOutput(fileName)
            print(fileName)
    finally:
        if dumpFile is not None:
            dumpFile.close()
    manifest.write(os.path.join(options.outputDir, config.name + '.manifest.json'))
    return 0
