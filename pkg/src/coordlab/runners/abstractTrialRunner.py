# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

from queue import Empty


class TrialFailedException(Exception):
    def __init__(self, trialIndex, reason):
        self.trialIndex = trialIndex
        super(TrialFailedException, self).__init__("Trial %i failed: %s" % (trialIndex, reason))


class AbstractTrialRunner(object):
    """
    An abstract base class for the ways trials of an experiment can be executed. Trials are
    identified by their index, which also selects their random stream.
    """

    def __init__(self, config, maxWorkers):
        """
        :param config: the ExperimentConfig whose trials are run
        :param int maxWorkers: the maximum number of trials to run at once
        """
        self.config = config
        self.maxWorkers = maxWorkers

    def issueTrial(self, trialIndex):
        """
        Queues the trial for execution and returns its index.
        """
        raise NotImplementedError('Abstract method: issueTrial')

    def getIssuedTrialIDs(self):
        """
        The indices of trials issued but not yet returned by getUpdatedTrial, in no
        particular order.
        """
        raise NotImplementedError('Abstract method: getIssuedTrialIDs')

    def getUpdatedTrial(self, maxWait):
        """
        Waits up to maxWait seconds for a finished trial and returns (trialIndex, TrialRecord),
        or None if nothing finished in time.

        :raises TrialFailedException: if the trial raised an error, or if a worker died while
                                      trials were outstanding
        """
        raise NotImplementedError('Abstract method: getUpdatedTrial')

    def shutdown(self):
        """
        Cleanly terminates all workers.
        """
        raise NotImplementedError('Abstract method: shutdown')

    def getFromQueueSafely(self, queue, maxWait):
        """
        Returns an object from the given queue, or None if none arrives within maxWait seconds.
        """
        if maxWait <= 0:
            try:
                return queue.get(block=False)
            except Empty:
                return None
        try:
            return queue.get(timeout=maxWait)
        except Empty:
            return None
