# Copyright (C) 2015 by the coordlab authors
#
# Released under the MIT license, see LICENSE.txt

"""
Experiment configuration: loading, validation, overrides, hashing and the run manifest, plus
resolution of games and learner kinds by name.
"""

import copy
import hashlib
import json
import logging
import os

from coordlab.games import BUILTIN_GAMES, makeBuiltinGame, readGameFile
from coordlab.learners.beliefs import parsePrior, initialCounts
from coordlab.lib.ioUtils import canonicalJson, writeCanonicalJson
from coordlab.stateGame import InvalidGameException, InvalidParameterException
from coordlab.version import version

logger = logging.getLogger(__name__)

SEED_ENVIRONMENT_VARIABLE = 'COORDLAB_SEED'

LEARNER_KINDS = ('fp', 'bayes', 'bayes_unobs', 'sfp')

# Learner kinds whose belief updates add whole observations, so exact rationals stay exact
INTEGER_UPDATE_KINDS = ('fp', 'bayes')

DEFAULT_CONFIG = {
    'name': 'experiment',
    'learner': {'kind': 'bayes', 'epsilon': 0.0, 'prior': 'uniform:1'},
    'conventions': False,
    'horizon': 50,
    'trials': 1000,
    'seed': 0,
    'prune_mass': 1e-12,
    'max_frontier': 10 ** 6,
    'variants': [],
}

TOP_LEVEL_KEYS = ('name', 'game', 'learner', 'conventions', 'horizon', 'trials', 'seed',
                  'prune_mass', 'max_frontier', 'variants')


class ConfigException(Exception):
    """
    A configuration that cannot be run. Carries every field-level problem found.
    """

    def __init__(self, source, diagnostics):
        self.source = source
        self.diagnostics = list(diagnostics)
        super(ConfigException, self).__init__(
            "Invalid configuration %s:\n%s" % (source, '\n'.join('  ' + d for d in self.diagnostics)))


def _isInt(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _isNumber(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def loadGame(gameSpec, baseDir=None):
    """
    Builds the game a config's "game" entry describes: a builtin constructor with parameters,
    or a game file (relative paths are taken relative to baseDir).
    """
    if 'builtin' in gameSpec:
        game = makeBuiltinGame(gameSpec['builtin'], gameSpec.get('params'))
        logger.debug('Built game %s', game.name)
    elif 'file' in gameSpec:
        fileName = gameSpec['file']
        if baseDir is not None and not os.path.isabs(fileName):
            fileName = os.path.join(baseDir, fileName)
        game = readGameFile(fileName)
        logger.debug('Loaded game %s from %s', game.name, fileName)
    else:
        raise InvalidParameterException('game', gameSpec, "needs either 'builtin' or 'file'")
    return game


def loadLearnerClass(kind):
    """
    Returns the learner class for a kind name.
    """
    if kind == 'fp':
        from coordlab.learners.fictitiousPlay import FictitiousPlayLearner
        learnerClass = FictitiousPlayLearner
    elif kind == 'sfp':
        from coordlab.learners.fictitiousPlay import StochasticFictitiousPlayLearner
        learnerClass = StochasticFictitiousPlayLearner
    elif kind == 'bayes':
        from coordlab.learners.bayesian import BayesianLearner
        learnerClass = BayesianLearner
    elif kind == 'bayes_unobs':
        from coordlab.learners.bayesian import UnobservableBayesianLearner
        learnerClass = UnobservableBayesianLearner
    else:
        raise InvalidParameterException('learner.kind', kind, "expected one of %s" % ', '.join(LEARNER_KINDS))
    return learnerClass


def makeLearners(game, learnerConfig, exact=False):
    """
    One fresh learner per agent of game, configured by a config's "learner" entry.
    """
    learnerClass = loadLearnerClass(learnerConfig['kind'])
    prior = parsePrior(learnerConfig.get('prior', 'uniform:1'), game.actionsPerAgent)
    epsilon = learnerConfig.get('epsilon', 0.0)
    return [learnerClass(agent, learnerClass.beliefClass(agent, initialCounts(agent, prior, exact)), epsilon)
            for agent in range(game.nAgents)]


class ExperimentConfig(object):
    """
    A validated, fully resolved experiment. The attributes mirror the JSON keys.
    """

    def __init__(self, doc, source='<config>', baseDir=None):
        self.source = source
        self.baseDir = baseDir
        if not isinstance(doc.get('learner', {}), dict):
            raise ConfigException(source, ["learner: must be an object"])
        resolved = copy.deepcopy(DEFAULT_CONFIG)
        learner = dict(resolved['learner'])
        learner.update(doc.get('learner', {}))
        resolved.update(doc)
        resolved['learner'] = learner
        self._doc = resolved
        self._validate()

    def __getattr__(self, name):
        doc = self.__dict__.get('_doc')
        if doc is not None and name in doc:
            return doc[name]
        raise AttributeError(name)

    def _validate(self):
        doc = self._doc
        diagnostics = []
        for key in sorted(doc):
            if key not in TOP_LEVEL_KEYS:
                diagnostics.append("%s: unknown field" % key)
        if not isinstance(doc['name'], str):
            diagnostics.append("name: must be a string")
        for key in ('horizon', 'trials', 'max_frontier'):
            if not _isInt(doc[key]) or doc[key] < 1:
                diagnostics.append("%s: must be an integer >= 1, got %r" % (key, doc[key]))
        if not _isInt(doc['seed']) or doc['seed'] < 0:
            diagnostics.append("seed: must be an integer >= 0, got %r" % (doc['seed'],))
        if not _isNumber(doc['prune_mass']) or doc['prune_mass'] < 0:
            diagnostics.append("prune_mass: must be a number >= 0, got %r" % (doc['prune_mass'],))
        if not isinstance(doc['conventions'], bool):
            diagnostics.append("conventions: must be true or false")
        learner = doc['learner']
        for key in sorted(learner):
            if key not in ('kind', 'epsilon', 'prior'):
                diagnostics.append("learner.%s: unknown field" % key)
        if learner['kind'] not in LEARNER_KINDS:
            diagnostics.append("learner.kind: expected one of %s, got %r" % (', '.join(LEARNER_KINDS), learner['kind']))
        if not _isNumber(learner['epsilon']) or learner['epsilon'] < 0:
            diagnostics.append("learner.epsilon: must be a number >= 0, got %r" % (learner['epsilon'],))
        if not isinstance(doc['variants'], list) or \
                any(not isinstance(v, dict) or 'label' not in v for v in doc['variants']):
            diagnostics.append("variants: must be a list of {\"label\": ..., \"set\": {...}} objects")
        game = None
        if 'game' not in doc:
            diagnostics.append("game: missing")
        elif not isinstance(doc['game'], dict) or ('builtin' in doc['game']) == ('file' in doc['game']):
            diagnostics.append("game: needs exactly one of 'builtin' or 'file'")
        else:
            try:
                game = loadGame(doc['game'], self.baseDir)
            except (InvalidParameterException, InvalidGameException) as e:
                diagnostics.append("game: %s" % e)
            except (IOError, OSError) as e:
                diagnostics.append("game.file: %s" % e)
        if game is not None and learner['kind'] in LEARNER_KINDS:
            try:
                parsePrior(learner['prior'], game.actionsPerAgent)
            except InvalidParameterException as e:
                diagnostics.append("learner.prior: %s" % e)
        if diagnostics:
            raise ConfigException(self.source, diagnostics)

    def toDict(self):
        return copy.deepcopy(self._doc)

    def configHash(self):
        return hashlib.sha256(canonicalJson(self._doc).encode('utf-8')).hexdigest()

    def makeGame(self):
        return loadGame(self.game, self.baseDir)

    def makeLearners(self, game, exact=False):
        return makeLearners(game, self.learner, exact)

    def withUpdates(self, settings, label=None):
        """
        A copy of this config with dotted-path settings applied. Variants are dropped from
        the copy.
        """
        doc = self.toDict()
        doc['variants'] = []
        for key, value in settings.items():
            setPath(doc, resolveKey(doc, key), value)
        if label is not None:
            doc['name'] = '%s-%s' % (self.name, label)
        return ExperimentConfig(doc, self.source, self.baseDir)

    def expandVariants(self):
        """
        (label, config) for every variant, or just (None, self) when there are none.
        """
        if not self.variants:
            return [(None, self)]
        return [(v['label'], self.withUpdates(v.get('set', {}), str(v['label']))) for v in self.variants]


def resolveKey(doc, key):
    """
    Maps a key to a dotted path. Bare keys that are not top-level fields refer to a game
    parameter if the game has (or defaults) one by that name, and to a learner field
    otherwise.
    """
    if '.' in key or key in TOP_LEVEL_KEYS:
        return key
    game = doc.get('game', {})
    if 'builtin' in game:
        builtin = BUILTIN_GAMES.get(game['builtin'])
        if (builtin is not None and key in builtin.defaults) or key in game.get('params', {}):
            return 'game.params.' + key
    if key in ('kind', 'epsilon', 'prior'):
        return 'learner.' + key
    raise ConfigException('--set', ["%s: not a field, game parameter or learner field" % key])


def setPath(doc, path, value):
    parts = path.split('.')
    for part in parts[:-1]:
        child = doc.get(part)
        if child is None:
            child = doc[part] = {}
        elif not isinstance(child, dict):
            raise ConfigException('--set', ["%s: %s is not an object" % (path, part)])
        doc = child
    doc[parts[-1]] = value


def parseOverride(override):
    """
    Splits "key=value"; the value is parsed as JSON, or taken as a string if it is not JSON.
    """
    if '=' not in override:
        raise ConfigException('--set', ["%s: expected key=value" % override])
    key, value = override.split('=', 1)
    try:
        value = json.loads(value)
    except ValueError:
        pass
    return key.strip(), value


def applyOverrides(doc, overrides):
    """
    Applies --set overrides to a raw config document in place. An override of a path that
    the variants also set pins that axis and discards the variants.
    """
    for override in overrides:
        key, value = parseOverride(override)
        path = resolveKey(doc, key)
        variants = doc.get('variants') or []
        if any(resolveKey(doc, k) == path for v in variants for k in v.get('set', {})):
            logger.info("Override of %s replaces the %i variants", path, len(variants))
            doc['variants'] = []
        setPath(doc, path, value)
    return doc


def loadExperimentConfig(fileName, overrides=()):
    """
    Reads a JSON experiment file, applies overrides and the seed environment variable and
    validates the result.

    :raises ConfigException: listing every problem found
    """
    try:
        with open(fileName) as fileHandle:
            doc = json.load(fileHandle)
    except (IOError, OSError) as e:
        raise ConfigException(fileName, ["cannot read config: %s" % e])
    except ValueError as e:
        raise ConfigException(fileName, ["not valid JSON: %s" % e])
    if not isinstance(doc, dict):
        raise ConfigException(fileName, ["the config must be a JSON object"])
    applyOverrides(doc, overrides)
    seed = os.environ.get(SEED_ENVIRONMENT_VARIABLE)
    if seed is not None:
        try:
            doc['seed'] = int(seed)
        except ValueError:
            raise ConfigException(fileName, ["%s: must be an integer, got %r" % (SEED_ENVIRONMENT_VARIABLE, seed)])
        logger.info("Base seed %i taken from %s", doc['seed'], SEED_ENVIRONMENT_VARIABLE)
    return ExperimentConfig(doc, fileName, os.path.dirname(os.path.abspath(fileName)))


class RunManifest(object):
    """
    What was run and where the results went.
    """

    def __init__(self, config, command):
        self.config = config
        self.command = command
        self.outputs = []

    def addOutput(self, fileName):
        self.outputs.append(fileName)

    def toDict(self):
        return {'command': self.command,
                'config': self.config.toDict(),
                'config_hash': self.config.configHash(),
                'version': version,
                'seed': self.config.seed,
                'outputs': list(self.outputs)}

    def write(self, fileName):
        writeCanonicalJson(self.toDict(), fileName)
        logger.info("Wrote manifest %s", fileName)
