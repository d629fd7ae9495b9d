from runner.suites import CheckSpec, REGISTRY, DEFAULT_GROUPS, resolve_suites, family_checks, algebra_checks
from runner.suite_manager import SuiteManager, ThreadPoolSuiteManager
