# =============================================================================
# runner/suite_manager.py
# =============================================================================
# 🎯 Purpose:
# Runs selected checks and turns their residuals into CheckReports.
#
# ✅ Includes:
# - A base abstract class `SuiteManager` that outlines the required method
# - `ThreadPoolSuiteManager`: checks run in a worker pool, results are kept in
#   memory behind a lock and assembled in check-id order
#
# ❌ Does not include:
# - The checks themselves (see runner/suites.py)
# - Writing reports to disk (the CLI does that)
# =============================================================================


# -----------------------------------------------------------------------------
# 📚 Standard Python Imports
# -----------------------------------------------------------------------------

import logging
import math
import threading                                  # Lock around the shared results dict
import time
from abc import ABC, abstractmethod               # Interface for suite managers
from concurrent.futures import ThreadPoolExecutor # Checks run side by side
from typing import Sequence


# -----------------------------------------------------------------------------
# 📦 Project Imports
# -----------------------------------------------------------------------------

from exterior.scalar import ScalarMode
from identities.sampling import trial_rng
from models.config import RunConfig
from models.errors import PreconditionRefused, error_detail_from
from models.report import CheckReport, CheckStatus
from runner.suites import CheckSpec, REGISTRY, check_index

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# 🧩 SuiteManager (Abstract Base Class)
# -----------------------------------------------------------------------------

class SuiteManager(ABC):
    """
    🔧 Base interface: every suite manager turns a list of checks into
    reports, ordered by check id.
    """

    @abstractmethod
    def run(self, checks: Sequence[CheckSpec]) -> list[CheckReport]:
        """📥 Run the checks and return one report per check."""
        pass


# -----------------------------------------------------------------------------
# 🧠 ThreadPoolSuiteManager
# -----------------------------------------------------------------------------

class ThreadPoolSuiteManager(SuiteManager):
    """
    🧠 Runs checks in a thread pool of ``cfg.threads`` workers.

    Every trial draws from its own generator keyed by (seed, check, trial), so
    the reports do not depend on scheduling.
    """

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.results: dict[str, CheckReport] = {}   # 🗃️ check id → report
        self.lock = threading.Lock()                 # 🔐 workers finish in any order

    # -------------------------------------------------------------------------
    # 💾 record: store one finished report
    # -------------------------------------------------------------------------
    def record(self, report: CheckReport):
        with self.lock:
            self.results[report.check_id] = report

    # -------------------------------------------------------------------------
    # ▶️ run_check: all trials of one check
    # -------------------------------------------------------------------------
    def run_check(self, spec: CheckSpec, index: int) -> CheckReport:
        cfg = self.cfg
        mode = ScalarMode.EXACT if spec.exact_only else cfg.mode
        trials = (cfg.trials or spec.trials) if spec.randomized else spec.trials
        tolerance = cfg.tolerance_for(spec.check_id, spec.float_tolerance, spec.numeric)
        reported_mode = "float" if spec.numeric else mode.value

        logger.info(f"running {spec.check_id} ({trials} trial(s), {reported_mode})")
        started = time.perf_counter()
        worst, details, error = 0.0, None, None
        status = CheckStatus.PASS
        try:
            for trial in range(trials):
                outcome = spec.body(trial_rng(cfg.seed, index, trial), mode)
                residual, extra = outcome if isinstance(outcome, tuple) else (outcome, None)
                residual = float(residual)
                if not math.isfinite(residual):
                    raise ArithmeticError(f"non-finite residual {residual} in trial {trial}")
                if trial == 0 or residual > worst:
                    worst, details = residual, extra
                logger.debug(f"{spec.check_id} trial {trial}: residual {residual!r}")
        except PreconditionRefused as exc:
            logger.warning(f"{spec.check_id} refused: {exc}")
            status, error = CheckStatus.SKIP, error_detail_from(exc)
        except Exception as exc:
            logger.exception(f"{spec.check_id} aborted")
            status, error = CheckStatus.FAIL, error_detail_from(exc)
        elapsed_ms = (time.perf_counter() - started) * 1000.0

        if status == CheckStatus.PASS and worst > tolerance:
            status = CheckStatus.FAIL
            logger.warning(f"{spec.check_id} failed: residual {worst!r} > tolerance {tolerance!r}")

        return CheckReport(
            check_id=spec.check_id,
            paper_anchor=spec.paper_anchor,
            status=status,
            max_residual=worst,
            tolerance=tolerance,
            trials=trials,
            mode=reported_mode,
            elapsed_ms=round(elapsed_ms, 3) if cfg.timings else None,
            details=details,
            error=error,
        )

    # -------------------------------------------------------------------------
    # 🚀 run: the whole selection
    # -------------------------------------------------------------------------
    def run(self, checks: Sequence[CheckSpec]) -> list[CheckReport]:
        # checks outside the registry (per-family variations) get indices after it
        jobs = []
        for position, spec in enumerate(checks):
            index = check_index(spec.check_id)
            jobs.append((spec, index if index is not None else len(REGISTRY) + position))

        with ThreadPoolExecutor(max_workers=self.cfg.threads) as pool:
            for report in pool.map(lambda job: self.run_check(*job), jobs):
                self.record(report)

        with self.lock:
            reports = [self.results[k] for k in sorted(self.results)]
        failed = sum(r.status == CheckStatus.FAIL for r in reports)
        logger.info(f"{len(reports)} check(s) run, {failed} failed")
        return reports
