import json

import pytest

from exterior.scalar import ScalarMode
from liegeom.algebra import LieAlgebraData
from liegeom.closed import validate_closed_g2
from models.config import RunConfig, parse_tolerance_overrides
from models.errors import PreconditionRefused, UnknownSuiteError
from models.report import CheckStatus, RunReport
from runner import (
    DEFAULT_GROUPS, REGISTRY, CheckSpec, ThreadPoolSuiteManager, algebra_checks, family_checks, resolve_suites,
)
from runner.suites import coassociative_ideal
from variations.families import AffineFiberFamily, TangentialFamily
from variations.geometry import QuadratureSpec


# -----------------------------------------------------------------------------
# Registry
# -----------------------------------------------------------------------------

def test_check_ids_are_unique():
    ids = [spec.check_id for spec in REGISTRY]
    assert len(ids) == len(set(ids))


def test_default_selection_skips_variations():
    selected = resolve_suites([])
    assert {spec.group for spec in selected} == set(DEFAULT_GROUPS)
    assert all(spec.group != "variations" for spec in selected)


def test_resolve_by_id_and_group():
    selected = resolve_suites(["hl-identity", "exterior"])
    ids = [spec.check_id for spec in selected]
    assert "hl-identity" in ids
    assert "hodge-isometry" in ids
    assert len(ids) == 5


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError) as info:
        resolve_suites(["hodge"])
    assert "hodge-isometry" in info.value.known


# -----------------------------------------------------------------------------
# Configuration
# -----------------------------------------------------------------------------

def test_tolerance_overrides():
    assert parse_tolerance_overrides(["hl-identity=1e-30", " graph-density = 0.5"]) == {
        "hl-identity": 1e-30,
        "graph-density": 0.5,
    }


@pytest.mark.parametrize("item", ["hl-identity", "=1", "hl-identity=abc", "hl-identity=-1"])
def test_bad_tolerance_overrides(item):
    with pytest.raises(ValueError):
        parse_tolerance_overrides([item])


def test_exact_mode_compares_against_zero():
    cfg = RunConfig()
    assert cfg.tolerance_for("hl-identity") == 0.0
    assert cfg.tolerance_for("graph-density", 1e-4, numeric=True) == 1e-4
    assert RunConfig(mode=ScalarMode.FLOAT).tolerance_for("hl-identity") == 1e-10


# -----------------------------------------------------------------------------
# Suite manager
# -----------------------------------------------------------------------------

def run(cfg: RunConfig, names):
    return ThreadPoolSuiteManager(cfg).run(resolve_suites(names))


def test_exact_suites_pass():
    reports = run(RunConfig(trials=3), ["exterior", "hl-identity", "b-antisymmetric"])
    assert [r.check_id for r in reports] == sorted(r.check_id for r in reports)
    assert all(r.status == CheckStatus.PASS for r in reports)
    assert all(r.max_residual == 0 for r in reports)
    assert all(r.elapsed_ms is None for r in reports)


def test_float_mode_with_tiny_tolerance_fails():
    cfg = RunConfig(mode=ScalarMode.FLOAT, trials=20, tolerances={"hl-identity": 1e-30})
    (report,) = run(cfg, ["hl-identity"])
    assert report.status == CheckStatus.FAIL
    assert report.mode == "float"
    assert report.tolerance == 1e-30


def test_reports_are_deterministic():
    cfg = RunConfig(seed=11, trials=4, threads=3)
    first = RunReport(command="verify", seed=11, mode="exact", passed=True, checks=run(cfg, ["g2"]))
    second = RunReport(command="verify", seed=11, mode="exact", passed=True, checks=run(cfg, ["g2"]))
    assert first.to_json() == second.to_json()
    assert json.loads(first.to_json())["schema"] == 1


def test_each_check_carries_its_paper_anchor():
    (report,) = run(RunConfig(trials=1), ["hl-identity"])
    (entry,) = json.loads(RunReport(command="verify", seed=0, mode="exact", passed=True, checks=[report]).to_json())["checks"]
    (spec,) = resolve_suites(["hl-identity"])
    assert entry["paper_anchor"] == spec.paper_anchor
    assert "reference" not in entry


def test_timings_are_opt_in():
    (report,) = run(RunConfig(trials=1, timings=True), ["wedge-anticommutativity"])
    assert report.elapsed_ms is not None


def test_refusal_is_a_skip_and_errors_are_failures():
    def refuse(rng, mode):
        raise PreconditionRefused("hypotheses fail", 0.5)

    def explode(rng, mode):
        raise ZeroDivisionError("boom")

    def not_a_number(rng, mode):
        return float("nan")

    checks = [
        CheckSpec("refuse", "test", "-", refuse, trials=1),
        CheckSpec("explode", "test", "-", explode, trials=1),
        CheckSpec("nan", "test", "-", not_a_number, trials=1),
    ]
    reports = {r.check_id: r for r in ThreadPoolSuiteManager(RunConfig()).run(checks)}
    assert reports["refuse"].status == CheckStatus.SKIP
    assert reports["refuse"].error.data == {"measured": 0.5}
    assert reports["explode"].status == CheckStatus.FAIL
    assert reports["explode"].error.code == -32603
    assert reports["nan"].status == CheckStatus.FAIL


def test_family_checks_for_affine_fibre():
    checks = family_checks(AffineFiberFamily(), QuadratureSpec(grid=8))
    assert [c.check_id for c in checks] == [
        "affine-fiber-first-variation", "affine-fiber-second-variation", "affine-fiber-density",
    ]
    reports = ThreadPoolSuiteManager(RunConfig(mode=ScalarMode.FLOAT)).run(checks)
    assert all(r.status == CheckStatus.PASS for r in reports)


def test_tangential_family_skips_second_variation():
    checks = family_checks(TangentialFamily(), QuadratureSpec(grid=8))
    reports = {r.check_id: r for r in ThreadPoolSuiteManager(RunConfig(mode=ScalarMode.FLOAT)).run(checks)}
    assert reports["tangential-second-variation"].status == CheckStatus.SKIP
    assert reports["tangential-density"].status == CheckStatus.SKIP


def test_algebra_checks_with_split(worked):
    alg, labels = worked
    checks = algebra_checks(validate_closed_g2(alg), labels, prefix="ex-")
    reports = {r.check_id: r for r in ThreadPoolSuiteManager(RunConfig()).run(checks)}
    assert set(reports) == {"ex-bryant-identities", "ex-levi-civita", "ex-oneill-identities", "ex-coassociative-fibration"}
    assert all(r.status == CheckStatus.PASS for r in reports.values())
    assert reports["ex-coassociative-fibration"].details["premises_hold"] is False


def test_non_coassociative_split_is_skipped():
    g2alg = validate_closed_g2(LieAlgebraData.abelian())
    checks = algebra_checks(g2alg, "1234")
    reports = {r.check_id: r for r in ThreadPoolSuiteManager(RunConfig()).run(checks)}
    assert reports["coassociative-fibration"].status == CheckStatus.SKIP


def test_coassociative_ideal_needs_a_disjoint_phi_triple():
    assert coassociative_ideal(LieAlgebraData.abelian()) == "4567"
    # derived algebra span(e1, e2, e3) meets every φ triple
    along_a_triple = LieAlgebraData.from_constants({(1, 4, 5): 1, (2, 4, 6): 1, (3, 4, 7): 1})
    assert coassociative_ideal(along_a_triple) is None
