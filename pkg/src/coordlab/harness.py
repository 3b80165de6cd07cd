# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""
Repeated play of a state game by a team of learners, and the Monte Carlo curves of the error
probability averaged over seeded trials.
"""

import json
import logging
import math

import numpy as np

from coordlab.conventions import initialConventionState, ojaLikelihoods, prune
from coordlab.lib.ioUtils import writeCsv
from coordlab.stateGame import checkMixedProfile, profileErrorProbability, sampleIndex

logger = logging.getLogger(__name__)

CURVE_HEADER = ('round', 'mean_error', 'stderr', 'frozen_fraction')


def makeTrialRng(seed, trialIndex):
    """
    The random stream of one trial: a counter-based generator keyed by (base seed, trial
    index), so a trial draws the same numbers whichever worker runs it.
    """
    return np.random.Generator(np.random.Philox(key=np.array([seed, trialIndex], dtype=np.uint64)))


class RoundRecord(object):
    def __init__(self, jointAction, outcome, distributions, error, survivingOjas=None, frozen=False):
        self.jointAction = jointAction
        self.outcome = outcome
        self.distributions = distributions
        self.error = error
        self.survivingOjas = survivingOjas
        self.frozen = frozen

    def toDict(self):
        return {'joint_action': list(self.jointAction),
                'outcome': self.outcome,
                'distributions': [[float(p) for p in d] for d in self.distributions],
                'error': self.error,
                'surviving_ojas': None if self.survivingOjas is None else [list(a) for a in self.survivingOjas],
                'frozen': self.frozen}


class TrialRecord(object):
    """
    Everything that happened in one trial. frozenRound is the (1-based) round after which the
    convention state froze, -1 if it never did.
    """

    def __init__(self, trialIndex, rounds, frozenRound=-1):
        self.trialIndex = trialIndex
        self.rounds = rounds
        self.frozenRound = frozenRound

    @property
    def errors(self):
        return [r.error for r in self.rounds]

    def toDict(self):
        return {'trial': self.trialIndex, 'frozen_round': self.frozenRound,
                'rounds': [r.toDict() for r in self.rounds]}


class CurveResult(object):
    """
    Per-round mean error probability over trials with its standard error, and the fraction of
    trials whose convention state is frozen after each round.
    """

    def __init__(self, meanError, stderr, frozenFraction, trials, seed, configHash=None, label=None):
        self.meanError = meanError
        self.stderr = stderr
        self.frozenFraction = frozenFraction
        self.trials = trials
        self.seed = seed
        self.configHash = configHash
        self.label = label

    @classmethod
    def fromTrials(cls, records, seed, configHash=None, label=None):
        """
        Reduces trial records, which must be in trial-index order.
        """
        assert all(r.trialIndex == i for i, r in enumerate(records))
        errors = np.array([r.errors for r in records], dtype=float)
        frozen = np.array([[float(x.frozen) for x in r.rounds] for r in records])
        n = len(records)
        meanError = errors.mean(axis=0)
        if n > 1:
            stderr = errors.std(axis=0, ddof=1) / math.sqrt(n)
        else:
            stderr = np.zeros(errors.shape[1])
        return cls(meanError, stderr, frozen.mean(axis=0), n, seed, configHash, label)

    @property
    def horizon(self):
        return len(self.meanError)

    def rows(self):
        return [(k + 1, float(self.meanError[k]), float(self.stderr[k]), float(self.frozenFraction[k]))
                for k in range(self.horizon)]

    def writeCsv(self, fileHandle):
        writeCsv(fileHandle, CURVE_HEADER, self.rows())


def playRound(game, learners, rng, convention=None, ojas=None, validate=True,
              jointAction=None, modalOutcome=False):
    """
    One round of play. Each learner's mixed choice is computed (in the game reduced to the
    convention's active actions), the error probability of those choices is recorded, the
    joint action is drawn one agent at a time in agent order, then the outcome is drawn.
    Learners update unless the convention has settled on a single OJA, and the convention
    is pruned unless frozen.

    :param jointAction: play this joint action instead of sampling one
    :param modalOutcome: take the most likely outcome instead of sampling one
    :return: the RoundRecord and the new convention state
    """
    if ojas is None:
        ojas = game.optimalJointActions()
    distributions = [learner.chooseDistribution(game, convention) for learner in learners]
    error = profileErrorProbability(game, distributions, ojas)
    if jointAction is None:
        jointAction = tuple(sampleIndex(d, rng) for d in distributions)
    else:
        jointAction = tuple(jointAction)
    if validate:
        checkMixedProfile(game, distributions)
        assert 0.0 <= error <= 1.0
        assert all(d[a] > 0 for d, a in zip(distributions, jointAction)), \
            "joint action %s is outside the support of the choices" % (jointAction,)
    outcome = game.modalOutcome(jointAction) if modalOutcome else game.sampleOutcome(jointAction, rng)
    if convention is None or not convention.isConvention:
        for learner, ownAction in zip(learners, jointAction):
            learner.update(game, ownAction, jointAction, outcome, convention)
    if convention is not None and not convention.frozen:
        convention = prune(convention, ojaLikelihoods(game, convention.survivingOjas, outcome), game)
    return RoundRecord(jointAction, outcome, distributions, error,
                       None if convention is None else convention.survivingOjas,
                       convention is not None and convention.frozen), convention


def runTrial(config, trialIndex, game=None, validate=False):
    """
    Plays config.horizon rounds from fresh learners with the trial's own random stream.
    """
    if game is None:
        game = config.makeGame()
    rng = makeTrialRng(config.seed, trialIndex)
    learners = config.makeLearners(game)
    convention = initialConventionState(game) if config.conventions else None
    ojas = game.optimalJointActions()
    rounds = []
    frozenRound = 0 if convention is not None and convention.frozen else -1
    for k in range(config.horizon):
        record, convention = playRound(game, learners, rng, convention, ojas, validate)
        rounds.append(record)
        if frozenRound == -1 and record.frozen:
            frozenRound = k + 1
    return TrialRecord(trialIndex, rounds, frozenRound)


def runTrials(config, workers=1, game=None):
    """
    Every trial of the config, in trial-index order. With more than one worker the trials
    are spread over a SingleMachineTrialRunner.
    """
    if workers <= 1:
        if game is None:
            game = config.makeGame()
        records = []
        for i in range(config.trials):
            records.append(runTrial(config, i, game))
            logger.debug("Finished trial %i", i)
        return records
    from coordlab.runners.singleMachine import SingleMachineTrialRunner
    runner = SingleMachineTrialRunner(config, workers)
    try:
        for i in range(config.trials):
            runner.issueTrial(i)
        records = {}
        while len(records) < config.trials:
            update = runner.getUpdatedTrial(maxWait=10)
            if update is not None:
                trialIndex, record = update
                records[trialIndex] = record
    finally:
        runner.shutdown()
    return [records[i] for i in range(config.trials)]


def runExperiment(config, workers=1, dumpFile=None, label=None):
    """
    Runs every trial of config and reduces them to a CurveResult.

    :param dumpFile: if given, a file handle receiving every TrialRecord as a JSON line
    """
    logger.info("Running %s: %i trials of %i rounds with %s learners%s", config.name, config.trials,
                config.horizon, config.learner['kind'], ' and conventions' if config.conventions else '')
    records = runTrials(config, workers)
    if dumpFile is not None:
        for record in records:
            doc = record.toDict()
            if label is not None:
                doc['variant'] = label
            dumpFile.write(json.dumps(doc, sort_keys=True))
            dumpFile.write('\n')
    curve = CurveResult.fromTrials(records, config.seed, config.configHash(), label)
    logger.info("Finished %s, final mean error %g", config.name, curve.meanError[-1])
    return curve


def runVariants(config, workers=1, dumpFile=None):
    """
    One CurveResult per variant of config (a single unlabelled one without variants).
    """
    return [runExperiment(variantConfig, workers, dumpFile, label)
            for label, variantConfig in config.expandVariants()]
