import argparse
import logging
import os
import shlex
import sys
import unittest

from coordlab.lib.ioUtils import addLoggingOptions, setLoggingFromOptions

log = logging.getLogger(__name__)


class TestStatus:
    """
    Global test length, used to scale trial counts and horizons.
    """
    TEST_SHORT = 0
    TEST_MEDIUM = 1
    TEST_LONG = 2

    TEST_STATUS = TEST_SHORT

    @staticmethod
    def getTestStatus():
        return TestStatus.TEST_STATUS

    @staticmethod
    def setTestStatus(status):
        assert status in (TestStatus.TEST_SHORT, TestStatus.TEST_MEDIUM, TestStatus.TEST_LONG)
        TestStatus.TEST_STATUS = status

    @staticmethod
    def getTestSetup(shortTestNo=1, mediumTestNo=5, longTestNo=100):
        if TestStatus.TEST_STATUS == TestStatus.TEST_SHORT:
            return shortTestNo
        elif TestStatus.TEST_STATUS == TestStatus.TEST_MEDIUM:
            return mediumTestNo
        else:
            return longTestNo


def parseSuiteTestOptions(args):
    parser = argparse.ArgumentParser()
    addLoggingOptions(parser)
    parser.add_argument("--testLength", dest="testLength", default="SHORT",
                        choices=("SHORT", "MEDIUM", "LONG"),
                        help="Control the length of the tests. default=%(default)s")
    options, rest = parser.parse_known_args(args)
    setLoggingFromOptions(options)
    TestStatus.setTestStatus(getattr(TestStatus, 'TEST_' + options.testLength))
    return options, rest


class CoordLabTest(unittest.TestCase):
    """
    A common base class for our tests. Please have every test case directly or indirectly inherit this one.
    """

    orig_sys_argv = None

    @classmethod
    def setUpClass(cls):
        super(CoordLabTest, cls).setUpClass()
        cls.orig_sys_argv = sys.argv[1:]
        options, args = parseSuiteTestOptions(shlex.split(os.environ.get('COORDLAB_TEST_ARGS', "")))
        sys.argv[1:] = args

    @classmethod
    def tearDownClass(cls):
        sys.argv[1:] = cls.orig_sys_argv
        super(CoordLabTest, cls).tearDownClass()

    def setUp(self):
        log.info("Setting up %s", self.id())
        super(CoordLabTest, self).setUp()

    def tearDown(self):
        super(CoordLabTest, self).tearDown()
        log.info("Tearing down %s", self.id())

    def assertCloseTo(self, expected, actual, tol=1e-12):
        self.assertTrue(abs(expected - actual) <= tol, "%r is not within %g of %r" % (actual, tol, expected))

    def assertVectorClose(self, expected, actual, tol=1e-12):
        self.assertEqual(len(expected), len(actual))
        for x, y in zip(expected, actual):
            self.assertCloseTo(x, y, tol)
