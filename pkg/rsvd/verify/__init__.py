"""Invariant suites backing the ``rsvd verify`` command."""

from rsvd.verify.suites import SUITES, SuiteContext, SuiteResult, run_suite, run_suites, suite_tolerance

__all__ = ["SUITES", "SuiteContext", "SuiteResult", "run_suite", "run_suites", "suite_tolerance"]
