"""Command line for predictions, attraction ladders, self-checks and sweeps.

Exit codes: 0 on success, 1 on validation or parse errors (including
usage errors), 2 when a verification suite runs but misses its target.
"""
from __future__ import annotations

import datetime as _dt
from fractions import Fraction
from pathlib import Path

import click
import numpy as np

from .attraction import quantized_attraction_set
from .decision import PredictionReport, regularity_violation_check
from .errors import QChoiceError, VerificationFailure
from .experiments import (
    ExperimentFile,
    RunRecord,
    bundled_experiment_text,
    input_digest,
    list_bundled_experiments,
    parse_experiment,
    run_prediction,
)
from .quantum import (
    DEFAULT_DIM_CAP,
    Prospect,
    decohere,
    normalize_prospect_set,
    prospect_probability,
    random_density_operator,
    sample_inconclusive,
)
from .verify import SUITE_NAMES, run_suite

_FORMATS = ("table", "record", "csv")


def _fmt_number(value) -> str:
    """Decimal rendering, with the exact rational alongside when available."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{float(value):.6g} ({value})"
    return f"{float(value):.6g}"


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _emit(record: RunRecord, table_text: str, fmt: str, out: str | None) -> None:
    if fmt == "table":
        click.echo(table_text)
    elif fmt == "record":
        click.echo(record.to_json(), nl=False)
    else:
        click.echo(record.to_csv(), nl=False)
    if out:
        Path(out).write_text(record.to_json(), encoding="utf-8")


_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(_FORMATS),
    default="table",
    show_default=True,
    help="stdout format; 'csv' is available for predict only",
)
_out_option = click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="also write the machine-readable run record (JSON) to this path",
)


@click.group()
def cli() -> None:
    """Choice probabilities split into utility and attraction factors."""


def _prediction_table(exp: ExperimentFile, report: PredictionReport, digest: str, created: str) -> str:
    lines = [f"experiment: {exp.name}   [{digest[:19]}]"]
    has_emp = report.empirical is not None
    header = f"{'prospect':<14} {'f':>16} {'q':>16} {'p':>16}"
    if has_emp:
        header += f" {'observed':>12} {'|err|':>12}"
    lines.append(header)
    for k, pid in enumerate(report.prospect_ids):
        row = (
            f"{pid:<14} {_fmt_number(report.utility_factors[k]):>16} "
            f"{_fmt_number(report.attraction_factors[k]):>16} "
            f"{_fmt_number(report.probabilities[k]):>16}"
        )
        if has_emp:
            row += (
                f" {_fmt_number(report.empirical[k]):>12}"
                f" {_fmt_number(report.abs_errors[k]):>12}"
            )
        lines.append(row)
    if has_emp:
        lines.append(
            f"max |error| {_fmt_number(report.max_abs_error)}   "
            f"mean |error| {_fmt_number(report.mean_abs_error)}"
        )
    check = regularity_violation_check(report.utility_factors, report.probabilities)
    if check.tie:
        lines.append("regularity: tied maximum, no reversal claimed")
    elif check.reversal:
        winner = report.prospect_ids[check.favored_overall]
        runner = report.prospect_ids[check.favored_by_utility]
        lines.append(
            f"regularity violated: {winner} overtakes the utility leader {runner}"
        )
    else:
        lines.append("regularity: utility leader keeps the lead")
    if report.clamping_applied:
        lines.append("note: attraction values were clamped to stay within bounds")
    lines.append(f"run at {created}")
    return "\n".join(lines)


@cli.command()
@click.argument("experiment_file")
@_format_option
@_out_option
def predict(experiment_file: str, fmt: str, out: str | None) -> None:
    """Predict choice probabilities for an experiment description.

    EXPERIMENT_FILE is a path to a .exp file, or the name of a bundled
    experiment (see data files shipped with the package).
    """
    path = Path(experiment_file)
    if path.exists():
        text = path.read_text(encoding="utf-8")
        source = str(path)
    else:
        stem = experiment_file.removesuffix(".exp")
        bundled = {name.removesuffix(".exp") for name in list_bundled_experiments()}
        if stem in bundled:
            text = bundled_experiment_text(stem)
            source = f"bundled:{stem}"
        else:
            raise click.ClickException(
                f"{experiment_file!r} is neither a file nor a bundled experiment "
                f"(bundled: {', '.join(sorted(bundled))})"
            )
    exp = parse_experiment(text, source=source)
    report = run_prediction(exp)
    digest = input_digest(text)
    record = RunRecord(
        command=f"predict {experiment_file}",
        input_digest=digest,
        seeds=(),
        report=report,
        created_at=_now(),
    )
    _emit(record, _prediction_table(exp, report, digest, record.created_at), fmt, out)


@cli.command("attraction-set")
@click.argument("n_prospects", type=int)
@_format_option
@_out_option
def attraction_set(n_prospects: int, fmt: str, out: str | None) -> None:
    """Print the quantized attraction ladder for N_PROSPECTS prospects."""
    if fmt == "csv":
        raise click.UsageError("csv output is only available for predict")
    ladder = quantized_attraction_set(n_prospects)
    lines = [f"quantized attraction ladder for {ladder.n_prospects} prospects"]
    lines.append(f"{'rank':<6} {'value':>24}")
    for k, value in enumerate(ladder.values, start=1):
        lines.append(f"{k:<6} {_fmt_number(value):>24}")
    lines.append(
        f"gap {_fmt_number(ladder.delta)}   top {_fmt_number(ladder.q_max)}   "
        f"mean magnitude 1/4"
    )
    stats = {
        "n_prospects": ladder.n_prospects,
        "values": [float(v) for v in ladder.values],
        "values_exact": [str(v) for v in ladder.values],
        "delta": float(ladder.delta),
        "delta_exact": str(ladder.delta),
        "q_max": float(ladder.q_max),
        "q_max_exact": str(ladder.q_max),
    }
    record = RunRecord(
        command=f"attraction-set {ladder.n_prospects}",
        input_digest=None,
        seeds=(),
        statistics=stats,
        created_at=_now(),
    )
    _emit(record, "\n".join(lines), fmt, out)


@cli.command()
@click.argument("suite", type=click.Choice(SUITE_NAMES))
@click.option("--samples", type=int, default=None, help="sampling effort of the suite")
@click.option("--seed", type=int, default=0, show_default=True)
@_format_option
@_out_option
def verify(suite: str, samples: int | None, seed: int, fmt: str, out: str | None) -> None:
    """Run a self-check suite; exits 2 if it misses its target."""
    if fmt == "csv":
        raise click.UsageError("csv output is only available for predict")
    result = run_suite(suite, samples=samples, seed=seed)
    verdict = "PASS" if result.passed else "FAIL"
    table = f"suite {result.suite}: {result.summary} -> {verdict}"
    stats = dict(result.statistics)
    stats["passed"] = result.passed
    record = RunRecord(
        command=f"verify {suite}",
        input_digest=None,
        seeds=(seed,),
        statistics=stats,
        created_at=_now(),
    )
    _emit(record, table, fmt, out)
    if not result.passed:
        raise VerificationFailure(f"suite {result.suite}: {result.summary}")


def _parse_dims(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise click.UsageError(f"--dims expects 'A,B', got {text!r}")
    try:
        n_dim, b_dim = (int(p) for p in parts)
    except ValueError:
        raise click.UsageError(f"--dims expects two integers, got {text!r}")
    if n_dim < 1 or b_dim < 1:
        raise click.UsageError(f"--dims components must be >= 1, got {text!r}")
    if n_dim * b_dim > DEFAULT_DIM_CAP:
        raise click.UsageError(
            f"--dims {text} gives composite dimension {n_dim * b_dim}, "
            f"above the cap of {DEFAULT_DIM_CAP}"
        )
    return n_dim, b_dim


@cli.command()
@click.option("--dims", default="4,3", show_default=True, help="choice,inconclusive dimensions")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--sweep-steps",
    type=int,
    default=5,
    show_default=True,
    help="number of damping levels from 0 to 1",
)
@_format_option
@_out_option
def simulate(dims: str, seed: int, sweep_steps: int, fmt: str, out: str | None) -> None:
    """Random strategic state: probability split under a decoherence sweep."""
    if fmt == "csv":
        raise click.UsageError("csv output is only available for predict")
    if sweep_steps < 2:
        raise click.UsageError(f"--sweep-steps must be >= 2, got {sweep_steps}")
    n_dim, b_dim = _parse_dims(dims)
    rng = np.random.default_rng(seed)
    rho = random_density_operator(n_dim * b_dim, rng)
    b = sample_inconclusive(b_dim, rng)
    prospects = [Prospect(n, b) for n in range(n_dim)]

    sweep = []
    lines = [
        f"decoherence sweep   dims=({n_dim},{b_dim}) seed={seed}",
        f"{'damping':<10} {'p (normalized)':<{9 * n_dim + 2}} {'max |q|':>12}",
    ]
    for level in np.linspace(0.0, 1.0, sweep_steps):
        damped = decohere(rho, float(level), block_dims=(n_dim, b_dim))
        family = normalize_prospect_set(
            [prospect_probability(damped, pr, (n_dim, b_dim)) for pr in prospects]
        )
        p_row = [float(t.p) for t in family]
        f_row = [float(t.f) for t in family]
        q_row = [float(t.q) for t in family]
        max_q = max(abs(x) for x in q_row)
        sweep.append(
            {
                "damping": float(level),
                "p": p_row,
                "f": f_row,
                "q": q_row,
                "max_abs_q": max_q,
            }
        )
        p_text = " ".join(f"{x:8.5f}" for x in p_row)
        lines.append(f"{level:<10.3f} {p_text:<{9 * n_dim + 2}} {max_q:12.3e}")
    lines.append("interference dies off linearly; at damping 1 only f survives")
    stats = {
        "dims": [n_dim, b_dim],
        "seed": int(seed),
        "sweep_steps": int(sweep_steps),
        "sweep": sweep,
    }
    record = RunRecord(
        command=f"simulate --dims {n_dim},{b_dim} --sweep-steps {sweep_steps}",
        input_digest=None,
        seeds=(seed,),
        statistics=stats,
        created_at=_now(),
    )
    _emit(record, "\n".join(lines), fmt, out)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        return 1
    except VerificationFailure as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return 2
    except QChoiceError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
