#!/usr/bin/env python

# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

import logging
import multiprocessing
import traceback

from coordlab import Process, Queue
from coordlab.common import ExperimentConfig
from coordlab.harness import runTrial
from coordlab.runners.abstractTrialRunner import AbstractTrialRunner, TrialFailedException

logger = logging.getLogger(__name__)


def worker(configDoc, source, baseDir, inputQueue, outputQueue):
    """
    Runs trials taken from inputQueue until it receives the None sentinel. The config is
    passed as a plain document and the game is built once per worker.
    """
    config = ExperimentConfig(configDoc, source, baseDir)
    game = config.makeGame()
    while True:
        trialIndex = inputQueue.get()
        if trialIndex is None:
            logger.debug('Received queue sentinel.')
            break
        try:
            outputQueue.put((trialIndex, runTrial(config, trialIndex, game), None))
        except Exception:
            outputQueue.put((trialIndex, None, traceback.format_exc()))
    logger.debug('Exiting worker normally.')


class SingleMachineTrialRunner(AbstractTrialRunner):
    """
    Runs the trials you give it on a pool of local workers, in parallel.
    """

    numCores = multiprocessing.cpu_count()

    def __init__(self, config, maxWorkers):
        assert type(maxWorkers) == int
        if maxWorkers > self.numCores:
            logger.warning('Limiting workers to CPU count of system (%i).', self.numCores)
            maxWorkers = self.numCores
        AbstractTrialRunner.__init__(self, config, maxWorkers)
        assert self.maxWorkers >= 1
        # Trial indices waiting to be run, consumed by the workers
        self.inputQueue = Queue()
        # (trialIndex, record, error) triples produced by the workers
        self.outputQueue = Queue()
        self.issued = set()
        self.workers = []
        logger.info('Setting up the worker pool with %i workers.', self.maxWorkers)
        for i in range(self.maxWorkers):
            process = Process(target=worker, args=(config.toDict(), config.source, config.baseDir,
                                                   self.inputQueue, self.outputQueue))
            process.daemon = True
            self.workers.append(process)
            process.start()

    def issueTrial(self, trialIndex):
        logger.debug("Issuing trial %i", trialIndex)
        self.issued.add(trialIndex)
        self.inputQueue.put(trialIndex)
        return trialIndex

    def getIssuedTrialIDs(self):
        return list(self.issued)

    def getUpdatedTrial(self, maxWait):
        update = self.getFromQueueSafely(self.outputQueue, maxWait)
        if update is None:
            if self.issued and not all(process.is_alive() for process in self.workers):
                logger.error("A worker died with %i trials outstanding.", len(self.issued))
                raise TrialFailedException(min(self.issued), "a worker process exited without reporting")
            return None
        trialIndex, record, error = update
        self.issued.discard(trialIndex)
        if error is not None:
            raise TrialFailedException(trialIndex, error)
        logger.debug("Ran trial %i", trialIndex)
        return trialIndex, record

    def shutdown(self):
        """
        Cleanly terminate the workers: drop trials not yet started, add one sentinel per
        worker and join them all, discarding results nobody collected.
        """
        while self.getFromQueueSafely(self.inputQueue, 0) is not None:
            pass
        for i in range(len(self.workers)):
            self.inputQueue.put(None)
        # Remove reference to inputQueue (raises exception if inputQueue is used after method call)
        self.inputQueue = None
        for process in self.workers:
            while process.is_alive():
                # A worker cannot exit while its results are stuck in the output pipe
                self.getFromQueueSafely(self.outputQueue, 0.1)
                process.join(0.1)
        self.issued.clear()
