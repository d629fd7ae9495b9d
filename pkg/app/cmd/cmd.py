# =============================================================================
# cmd.py
# =============================================================================
# Purpose:
# The g2lab command-line interface. Every verb runs a set of checks and writes
# one JSON RunReport (schema 1) to --out or stdout; logs go to stderr.
#
# Verbs:
# - verify      seeded property suites over the exterior/G2/identity/Lie checks
# - liealg      certify a structure-constants file and run its identities
# - search      enumerate closed-φ 2-step nilpotent algebras, write them to files
# - variations  volume curve and variation checks for one immersion family
#
# Exit codes: 0 all checks pass, 1 a check failed or the input was rejected,
# 2 usage or configuration error.
# =============================================================================

import dataclasses
import logging                    # Logs go to stderr, reports to stdout
from fractions import Fraction
from pathlib import Path

import click                      # Command groups, options and usage errors
import numpy as np
from pydantic import ValidationError

from exterior.scalar import ScalarMode
from liegeom.algebra import format_structure_constants, load_structure_constants
from liegeom.closed import validate_closed_g2
from liegeom.search import search_closed_g2
from models.config import DEFAULT_SEED, LOG_LEVEL, THREADS, RunConfig, parse_tolerance_overrides
from models.errors import G2LabError, UnknownFamilyError, UnknownSuiteError, error_detail_from
from models.report import CheckReport, CheckStatus, RunReport
from runner.suite_manager import ThreadPoolSuiteManager
from runner.suites import algebra_checks, family_checks, resolve_suites
from variations.checks import volume_curve, write_curve_csv
from variations.families import get_family
from variations.geometry import QuadratureSpec

logger = logging.getLogger(__name__)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


# -----------------------------------------------------------------------------
# 🔧 Shared helpers
# -----------------------------------------------------------------------------

def _config(**fields) -> RunConfig:
    """RunConfig from flag values; bad values are usage errors (exit 2)."""
    tolerance = fields.pop("tolerance", ())
    try:
        fields["tolerances"] = parse_tolerance_overrides(tolerance)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--tolerance")
    try:
        return RunConfig(**{k: v for k, v in fields.items() if v is not None})
    except ValidationError as exc:
        raise click.UsageError(f"invalid configuration: {exc}")


def _passed(checks: list[CheckReport]) -> bool:
    return all(c.status != CheckStatus.FAIL for c in checks)


def _finish(ctx: click.Context, report: RunReport, out: Path | None):
    """Write the report and exit with 0 (passed) or 1."""
    text = report.to_json()
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        logger.info(f"report written to {out}")
    else:
        click.echo(text, nl=False)
    if not report.passed:
        logger.warning(f"{report.command}: not all checks passed")
    ctx.exit(0 if report.passed else 1)


def _rejected(ctx: click.Context, command: str, cfg: RunConfig, exc: Exception, summary: dict | None = None):
    logger.error(f"{command}: input rejected: {exc}")
    report = RunReport(
        command=command, seed=cfg.seed, mode="exact", passed=False, summary=summary, error=error_detail_from(exc)
    )
    _finish(ctx, report, cfg.out)


def run_options(fn):
    """Options shared by every verb."""
    fn = click.option("--timings/--no-timings", default=False, help="Include elapsed_ms per check")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
                      help="Write the JSON report here instead of stdout")(fn)
    fn = click.option("--threads", type=click.IntRange(min=1), default=max(1, THREADS), show_default=True,
                      help="Worker threads (G2LAB_THREADS)")(fn)
    fn = click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True,
                      help="Seed for every randomized input")(fn)
    return fn


# -----------------------------------------------------------------------------
# 🚀 Command group
# -----------------------------------------------------------------------------

@click.group()
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=LOG_LEVEL.upper(),
              show_default=True, help="Log level (G2LAB_LOG_LEVEL)")
def main(log_level: str):
    """Exterior calculus of G2-structures and its verification suites."""
    logging.basicConfig(level=log_level.upper(), format="%(levelname)s %(name)s: %(message)s")


# -----------------------------------------------------------------------------
# ✅ verify
# -----------------------------------------------------------------------------

@main.command()
@click.option("--suite", "suites", multiple=True, help="Check id or group (exterior, g2, identities, liegeom, variations)")
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Trials per randomized check")
@click.option("--mode", type=click.Choice(["exact", "float"]), default="exact", show_default=True)
@click.option("--tolerance", multiple=True, help="Per-check override, <check>=<value>")
@run_options
@click.pass_context
def verify(ctx, suites, trials, mode, tolerance, seed, threads, out, timings):
    """Run the seeded property suites."""
    cfg = _config(seed=seed, trials=trials, mode=ScalarMode(mode), tolerance=tolerance, out=out,
                  suites=list(suites), threads=threads, timings=timings)
    try:
        checks = resolve_suites(cfg.suites)
    except UnknownSuiteError as exc:
        raise click.UsageError(str(exc))

    reports = ThreadPoolSuiteManager(cfg).run(checks)
    failed = [r.check_id for r in reports if r.status == CheckStatus.FAIL]
    report = RunReport(
        command="verify",
        seed=cfg.seed,
        mode=cfg.mode.value,
        passed=_passed(reports),
        checks=reports,
        summary={"checks": len(reports), "failed": failed},
    )
    _finish(ctx, report, cfg.out)


# -----------------------------------------------------------------------------
# 🧬 liealg
# -----------------------------------------------------------------------------

@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--split", default=None, help="Vertical basis labels of a submersion, e.g. 4567")
@click.option("--tolerance", multiple=True, help="Per-check override, <check>=<value>")
@run_options
@click.pass_context
def liealg(ctx, path, split, tolerance, seed, threads, out, timings):
    """Certify dφ = 0 for the algebra in PATH and check its identities.

    PATH holds one `c k i j = p/q` line per nonzero structure constant
    [e_i, e_j] = Σ_k c^k_ij e_k (1-based, i != j), an optional leading
    `dim n` line (default 7) and `#` comments.
    """
    cfg = _config(seed=seed, mode=ScalarMode.EXACT, tolerance=tolerance, out=out, threads=threads, timings=timings)
    try:
        alg = load_structure_constants(path)
    except G2LabError as exc:
        return _rejected(ctx, "liealg", cfg, exc, {"path": str(path)})
    if split is not None and not (split.isdigit() and all(1 <= int(ch) <= alg.dim for ch in split)):
        raise click.BadParameter(f"expected basis labels 1..{alg.dim}, got '{split}'", param_hint="--split")
    try:
        g2alg = validate_closed_g2(alg)
    except G2LabError as exc:
        return _rejected(ctx, "liealg", cfg, exc, {"path": str(path)})

    logger.info(f"τ₂ = {g2alg.tau2}, |τ₂|² = {g2alg.tau2_norm2}, tr Ric = {g2alg.ricci.trace()}")
    try:
        checks = algebra_checks(g2alg, split)
        reports = ThreadPoolSuiteManager(cfg).run(checks)
    except G2LabError as exc:
        return _rejected(ctx, "liealg", cfg, exc, {"path": str(path)})
    report = RunReport(
        command="liealg",
        seed=cfg.seed,
        mode="exact",
        passed=_passed(reports),
        checks=reports,
        summary={
            "path": str(path),
            "dim": alg.dim,
            "derived_dim": alg.derived_dimension(),
            "tau2": str(g2alg.tau2),
            "tau2_norm2": str(g2alg.tau2_norm2),
            "ricci_trace": str(g2alg.ricci.trace()),
            "split": split,
        },
    )
    _finish(ctx, report, cfg.out)


# -----------------------------------------------------------------------------
# 🔍 search
# -----------------------------------------------------------------------------

def _coefficients(text: str) -> list[Fraction]:
    try:
        return [Fraction(item.strip()) for item in text.split(",") if item.strip()]
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"expected comma-separated rationals, got '{text}'", param_hint="--coefficients")


@main.command()
@click.option("--step-bound", type=click.IntRange(1, 2), default=2, show_default=True)
@click.option("--coefficients", default="0,1,-1", show_default=True, help="Allowed structure-constant values")
@click.option("--max-central", type=click.IntRange(1, 6), default=3, show_default=True,
              help="Largest central index set scanned")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Write each certified algebra as a structure-constants file")
@run_options
@click.pass_context
def search(ctx, step_bound, coefficients, max_central, out_dir, seed, threads, out, timings):
    """Enumerate closed-φ nilpotent Lie algebras."""
    cfg = _config(seed=seed, mode=ScalarMode.EXACT, out=out, threads=threads, timings=timings)
    hits = search_closed_g2(step_bound, _coefficients(coefficients), max_central, threads=cfg.threads)

    table, checks = [], []
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    for n, hit in enumerate(hits, start=1):
        name = f"closed_g2_{n:02d}.txt"
        if out_dir is not None:
            header = f"closed G2 algebra {n}: derived dim {hit.derived_dim}, |tau2|^2 = {hit.tau2_norm2}"
            (out_dir / name).write_text(format_structure_constants(hit.alg, header), encoding="utf-8")
        table.append({
            "index": n,
            "central": list(hit.central),
            "derived_dim": hit.derived_dim,
            "tau2_norm2": str(hit.tau2_norm2),
            "file": name if out_dir is not None else None,
        })
        checks += algebra_checks(validate_closed_g2(hit.alg), prefix=f"hit-{n:02d}-")
    logger.info(f"search found {len(hits)} algebra(s)")

    reports = ThreadPoolSuiteManager(cfg).run(checks)
    report = RunReport(
        command="search",
        seed=cfg.seed,
        mode="exact",
        passed=_passed(reports),
        checks=reports,
        summary={"hits": table},
    )
    _finish(ctx, report, cfg.out)


# -----------------------------------------------------------------------------
# 🌊 variations
# -----------------------------------------------------------------------------

@main.command()
@click.option("--family", required=True, help="Immersion family, see the registry in the error message")
@click.option("--grid", type=click.IntRange(min=8), default=16, show_default=True, help="Nodes per parameter axis")
@click.option("--richardson/--no-richardson", default=False, help="Extrapolate t-derivatives from h and h/2")
@click.option("--derivatives", type=click.Choice(["exact", "central"]), default="exact", show_default=True,
              help="Parameter derivatives: symbolic or central differences")
@click.option("--h-t", type=float, default=1e-3, show_default=True, help="Finite-difference step in t")
@click.option("--t-max", type=float, default=0.1, show_default=True, help="Volume curve on [-t_max, t_max]")
@click.option("--points", type=click.IntRange(min=1), default=5, show_default=True, help="Volume curve samples")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the (t, vol, dvol, d2vol) curve here")
@click.option("--tolerance", multiple=True, help="Per-check override, <check>=<value>")
@run_options
@click.pass_context
def variations(ctx, family, grid, richardson, derivatives, h_t, t_max, points, csv_path, tolerance,
               seed, threads, out, timings):
    """Volume curve and variation checks for one immersion family."""
    cfg = _config(seed=seed, mode=ScalarMode.FLOAT, tolerance=tolerance, out=out, threads=threads, timings=timings)
    try:
        fam = get_family(family)
    except UnknownFamilyError as exc:
        raise click.UsageError(str(exc))
    try:
        q = QuadratureSpec(grid=grid, h_t=h_t, derivatives=derivatives, richardson=richardson, threads=cfg.threads)
    except ValidationError as exc:
        raise click.UsageError(f"invalid quadrature settings: {exc}")

    ts = np.linspace(-t_max, t_max, points) if points > 1 else [0.0]
    try:
        rows = volume_curve(fam, ts, q)
    except G2LabError as exc:
        return _rejected(ctx, "variations", cfg, exc, {"family": fam.name})
    if csv_path is not None:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        with csv_path.open("w", encoding="utf-8", newline="") as stream:
            write_curve_csv(rows, stream)
        logger.info(f"volume curve written to {csv_path}")

    reports = ThreadPoolSuiteManager(cfg).run(family_checks(fam, q))
    report = RunReport(
        command="variations",
        seed=cfg.seed,
        mode="float",
        passed=_passed(reports),
        checks=reports,
        summary={
            "family": fam.name,
            "parameters": fam.parameters(),
            "grid": q.grid,
            "richardson": q.richardson,
            "curve": [dataclasses.asdict(row) for row in rows],
        },
    )
    _finish(ctx, report, cfg.out)


# -----------------------------------------------------------------------------
# Entrypoint: `python -m app.cmd` or the `g2lab` script
# -----------------------------------------------------------------------------

if __name__ == "__main__":
    main()
