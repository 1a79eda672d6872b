"""Experiment descriptions on disk, and deterministic run records.

An experiment file (``.exp``) is a small YAML document describing one
choice experiment::

    name: my-study
    prospects:            # either 'utility' on every entry, or 'f' on every
      - id: target        # entry -- never a mixture
        f: 0.4
      - id: competitor
        f: 0.6
    attractiveness_rank: [target, competitor]   # most attractive first
    empirical:            # optional observed frequencies, one per prospect
      - id: target
        frequency: 0.61
      - id: competitor
        frequency: 0.39
    config:               # optional; shown with the defaults
      alpha: 1
      gamma: 1
      utility_kind: linear      # or: power  (+ utility_exponent)

Numeric literals are parsed exactly — ``0.4`` becomes the rational 2/5,
not the nearest binary double — so downstream predictions on file input
are exact rational arithmetic end to end.

``RunRecord`` captures one command invocation.  Its machine-readable
forms (JSON, CSV) are byte-deterministic: the same file, flags and seed
always serialize identically, so records can be diffed; the wall-clock
timestamp lives only on the in-memory object and in human-readable
output.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import yaml

from .decision import (
    ChoiceSet,
    PredictionReport,
    compose_probabilities,
    score_against_empirical,
)
from .errors import ExperimentFormatError, SignDomainError
from .utility import (
    LINEAR_UTILITY,
    UtilityFunction,
    utility_factors_gains,
    utility_factors_losses,
)

_EMPIRICAL_SUM_TOL = 2e-2
_F_SUM_TOL = 1e-9

_TOP_LEVEL_FIELDS = {"name", "prospects", "attractiveness_rank", "empirical", "config"}
_CONFIG_FIELDS = {"alpha", "gamma", "utility_kind", "utility_exponent"}
_CSV_HEADER = "id,f,q,p,p_exp,abs_error"


class _ExactNumberLoader(yaml.SafeLoader):
    """SafeLoader that turns YAML float literals into exact Fractions."""


def _construct_exact(loader: yaml.Loader, node: yaml.Node) -> Fraction:
    text = node.value.strip().replace("_", "")
    try:
        return Fraction(Decimal(text))
    except (InvalidOperation, ValueError) as exc:
        raise ExperimentFormatError(
            f"unsupported numeric literal {node.value!r} at line "
            f"{node.start_mark.line + 1}"
        ) from exc


_ExactNumberLoader.add_constructor("tag:yaml.org,2002:float", _construct_exact)


@dataclass(frozen=True)
class ExperimentFile:
    """One parsed experiment description.

    Exactly one of ``utilities`` / ``utility_factors`` is set, matching
    which key the prospects carried.  ``empirical`` is aligned with
    ``prospect_ids`` or ``None``.
    """

    name: str
    prospect_ids: tuple[str, ...]
    utilities: tuple | None
    utility_factors: tuple | None
    attractiveness_rank: tuple[str, ...]
    empirical: tuple | None = None
    alpha: Fraction = Fraction(1)
    gamma: Fraction = Fraction(1)
    utility: UtilityFunction = LINEAR_UTILITY

    def __post_init__(self) -> None:
        if (self.utilities is None) == (self.utility_factors is None):
            raise ExperimentFormatError(
                "exactly one of utilities/utility_factors must be present"
            )


def _require_number(value, *, field: str):
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise ExperimentFormatError(f"{field} must be a number, got {value!r}")
    return Fraction(value)


def _sum_deviation(total) -> Fraction | float:
    # Exact when the inputs were exact, so values sitting right on a
    # tolerance boundary are not pushed over it by float rounding.
    if isinstance(total, Fraction):
        return abs(total - 1)
    return abs(float(total) - 1.0)


def parse_experiment(text: str, *, source: str = "<string>") -> ExperimentFile:
    """Parse experiment YAML; errors name the offending field and line."""
    try:
        doc = yaml.load(text, Loader=_ExactNumberLoader)
    except ExperimentFormatError:
        raise
    except yaml.YAMLError as exc:
        detail = str(exc)
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            detail = f"line {mark.line + 1}: {getattr(exc, 'problem', detail)}"
        raise ExperimentFormatError(f"{source}: invalid YAML ({detail})") from exc

    if not isinstance(doc, dict):
        raise ExperimentFormatError(f"{source}: top level must be a mapping")
    unknown = sorted(set(doc) - _TOP_LEVEL_FIELDS)
    if unknown:
        raise ExperimentFormatError(f"{source}: unknown field(s) {unknown}")

    name = doc.get("name")
    if not isinstance(name, str) or not name.strip():
        raise ExperimentFormatError(f"{source}: field 'name' must be a non-empty string")

    prospects = doc.get("prospects")
    if not isinstance(prospects, list) or len(prospects) == 0:
        raise ExperimentFormatError(
            f"{source}: field 'prospects' must be a non-empty list"
        )
    ids: list[str] = []
    utilities: list[Fraction] = []
    factors: list[Fraction] = []
    kind: str | None = None
    for k, entry in enumerate(prospects):
        where = f"{source}: prospects[{k}]"
        if not isinstance(entry, dict):
            raise ExperimentFormatError(f"{where} must be a mapping")
        extra = sorted(set(entry) - {"id", "utility", "f"})
        if extra:
            raise ExperimentFormatError(f"{where} has unknown field(s) {extra}")
        pid = entry.get("id")
        if not isinstance(pid, str) or not pid.strip():
            raise ExperimentFormatError(f"{where}.id must be a non-empty string")
        if pid in ids:
            raise ExperimentFormatError(f"{source}: duplicate prospect id {pid!r}")
        ids.append(pid)
        has_u = "utility" in entry
        has_f = "f" in entry
        if has_u == has_f:
            raise ExperimentFormatError(
                f"{where} must carry exactly one of 'utility' or 'f'"
            )
        this_kind = "utility" if has_u else "f"
        if kind is None:
            kind = this_kind
        elif kind != this_kind:
            raise ExperimentFormatError(
                f"{source}: prospects mix 'utility' and 'f' entries; use one kind"
            )
        if has_u:
            utilities.append(_require_number(entry["utility"], field=f"{where}.utility"))
        else:
            value = _require_number(entry["f"], field=f"{where}.f")
            if not 0 <= value <= 1:
                raise ExperimentFormatError(
                    f"{where}.f must lie in [0, 1], got {value}"
                )
            factors.append(value)
    if kind == "f":
        total = sum(factors)
        if _sum_deviation(total) > _F_SUM_TOL:
            raise ExperimentFormatError(
                f"{source}: prospect 'f' values must sum to 1, got {float(total)!r}"
            )

    rank = doc.get("attractiveness_rank")
    if not isinstance(rank, list) or sorted(str(r) for r in rank) != sorted(ids):
        raise ExperimentFormatError(
            f"{source}: field 'attractiveness_rank' must list every prospect id "
            f"exactly once, got {rank!r}"
        )
    rank = [str(r) for r in rank]

    empirical_doc = doc.get("empirical")
    empirical: tuple | None = None
    if empirical_doc is not None:
        if not isinstance(empirical_doc, list):
            raise ExperimentFormatError(f"{source}: field 'empirical' must be a list")
        freq_by_id: dict[str, Fraction] = {}
        for k, entry in enumerate(empirical_doc):
            where = f"{source}: empirical[{k}]"
            if not isinstance(entry, dict) or set(entry) != {"id", "frequency"}:
                raise ExperimentFormatError(
                    f"{where} must be a mapping with fields 'id' and 'frequency'"
                )
            pid = entry["id"]
            if pid not in ids:
                raise ExperimentFormatError(
                    f"{where}.id {pid!r} does not match any prospect"
                )
            if pid in freq_by_id:
                raise ExperimentFormatError(f"{source}: duplicate empirical id {pid!r}")
            value = _require_number(entry["frequency"], field=f"{where}.frequency")
            if value < 0:
                raise ExperimentFormatError(f"{where}.frequency must be >= 0")
            freq_by_id[pid] = value
        missing = [pid for pid in ids if pid not in freq_by_id]
        if missing:
            raise ExperimentFormatError(
                f"{source}: empirical frequencies missing for {missing}"
            )
        total = sum(freq_by_id.values())
        if _sum_deviation(total) > _EMPIRICAL_SUM_TOL:
            raise ExperimentFormatError(
                f"{source}: empirical frequencies must sum to 1 within "
                f"{_EMPIRICAL_SUM_TOL}, got {float(total)!r}"
            )
        empirical = tuple(freq_by_id[pid] for pid in ids)

    alpha = Fraction(1)
    gamma = Fraction(1)
    utility = LINEAR_UTILITY
    config = doc.get("config")
    if config is not None:
        if not isinstance(config, dict):
            raise ExperimentFormatError(f"{source}: field 'config' must be a mapping")
        extra = sorted(set(config) - _CONFIG_FIELDS)
        if extra:
            raise ExperimentFormatError(f"{source}: config has unknown field(s) {extra}")
        if "alpha" in config:
            alpha = _require_number(config["alpha"], field=f"{source}: config.alpha")
            if alpha <= 0:
                raise ExperimentFormatError(f"{source}: config.alpha must be positive")
        if "gamma" in config:
            gamma = _require_number(config["gamma"], field=f"{source}: config.gamma")
            if gamma <= 0:
                raise ExperimentFormatError(f"{source}: config.gamma must be positive")
        util_kind = config.get("utility_kind", "linear")
        if util_kind not in ("linear", "power"):
            raise ExperimentFormatError(
                f"{source}: config.utility_kind must be 'linear' or 'power', "
                f"got {util_kind!r}"
            )
        if util_kind == "power":
            exponent = _require_number(
                config.get("utility_exponent", 1), field=f"{source}: config.utility_exponent"
            )
            if exponent <= 0:
                raise ExperimentFormatError(
                    f"{source}: config.utility_exponent must be positive"
                )
            utility = UtilityFunction.power(exponent)
        elif "utility_exponent" in config:
            raise ExperimentFormatError(
                f"{source}: config.utility_exponent requires utility_kind: power"
            )

    return ExperimentFile(
        name=name.strip(),
        prospect_ids=tuple(ids),
        utilities=tuple(utilities) if kind == "utility" else None,
        utility_factors=tuple(factors) if kind == "f" else None,
        attractiveness_rank=tuple(rank),
        empirical=empirical,
        alpha=alpha,
        gamma=gamma,
        utility=utility,
    )


def load_experiment(path: str | Path) -> ExperimentFile:
    """Load and parse one ``.exp`` file from disk."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ExperimentFormatError(f"cannot read experiment file {p}: {exc}") from exc
    return parse_experiment(text, source=str(p))


def list_bundled_experiments() -> list[str]:
    """Names of the experiment files shipped with the package."""
    data = resources.files(__package__).joinpath("data")
    return sorted(
        entry.name for entry in data.iterdir() if entry.name.endswith(".exp")
    )


def bundled_experiment_text(name: str) -> str:
    """Raw text of a bundled experiment (``'frogs'`` or ``'frogs.exp'``)."""
    filename = name if name.endswith(".exp") else f"{name}.exp"
    data = resources.files(__package__).joinpath("data", filename)
    try:
        return data.read_text(encoding="utf-8")
    except (FileNotFoundError, OSError) as exc:
        raise ExperimentFormatError(
            f"no bundled experiment named {name!r}; available: "
            f"{', '.join(list_bundled_experiments())}"
        ) from exc


def bundled_experiment(name: str) -> ExperimentFile:
    return parse_experiment(bundled_experiment_text(name), source=f"bundled:{name}")


def derive_utility_factors(experiment: ExperimentFile) -> list:
    """Utility factors of an experiment: as given, or derived from utilities.

    Derivation applies the configured utility function to each raw value
    and dispatches on sign — the gains rule when all transformed
    utilities are non-negative, the losses rule when all are strictly
    negative.  Mixed signs fit neither rule and raise.
    """
    if experiment.utility_factors is not None:
        return list(experiment.utility_factors)
    transformed = [experiment.utility(u) for u in experiment.utilities]
    if all(u >= 0 for u in transformed):
        return utility_factors_gains(transformed, experiment.alpha)
    if all(u < 0 for u in transformed):
        return utility_factors_losses(transformed, experiment.gamma)
    raise SignDomainError(
        f"experiment {experiment.name!r} mixes gain and loss utilities; "
        "split it into sign-homogeneous prospect sets"
    )


def run_prediction(experiment: ExperimentFile) -> PredictionReport:
    """Full pipeline for one experiment file: factors, attraction, scoring."""
    factors = derive_utility_factors(experiment)
    choice_set = ChoiceSet(
        prospect_ids=experiment.prospect_ids,
        utility_factors=tuple(factors),
        attractiveness_rank=experiment.attractiveness_rank,
    )
    report = compose_probabilities(choice_set)
    if experiment.empirical is not None:
        report = score_against_empirical(report, experiment.empirical)
    return report


def input_digest(data: bytes | str) -> str:
    """Stable content digest used to tie run records to their input."""
    raw = data.encode("utf-8") if isinstance(data, str) else data
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def _number_fields(prefix: str, value) -> list[tuple[str, object]]:
    fields: list[tuple[str, object]] = [(prefix, float(value))]
    if isinstance(value, Fraction):
        fields.append((f"{prefix}_exact", str(value)))
    return fields


def _report_payload(report: PredictionReport) -> dict:
    rows = []
    for k, pid in enumerate(report.prospect_ids):
        row: dict[str, object] = {"id": pid}
        row.update(_number_fields("f", report.utility_factors[k]))
        row.update(_number_fields("q", report.attraction_factors[k]))
        row.update(_number_fields("p", report.probabilities[k]))
        if report.empirical is not None:
            row.update(_number_fields("p_exp", report.empirical[k]))
            row.update(_number_fields("abs_error", report.abs_errors[k]))
        rows.append(row)
    payload: dict[str, object] = {
        "prospects": rows,
        "clamping_applied": report.clamping_applied,
    }
    if report.max_abs_error is not None:
        payload["max_abs_error"] = float(report.max_abs_error)
        payload["mean_abs_error"] = float(report.mean_abs_error)
    return payload


def _plain(value):
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass(frozen=True)
class RunRecord:
    """One command invocation with its deterministic payload.

    ``created_at`` is for human consumption only; the machine-readable
    serializations depend on nothing but input and flags, so identical
    invocations produce byte-identical JSON and CSV.
    """

    command: str
    input_digest: str | None
    seeds: tuple[int, ...]
    report: PredictionReport | None = None
    statistics: Mapping | None = None
    created_at: str | None = None

    def to_json(self) -> str:
        payload: dict[str, object] = {
            "command": self.command,
            "input_digest": self.input_digest,
            "seeds": list(self.seeds),
        }
        if self.report is not None:
            payload["report"] = _report_payload(self.report)
        if self.statistics is not None:
            payload["statistics"] = _plain(self.statistics)
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        if self.report is None:
            raise ExperimentFormatError(
                f"command {self.command!r} produced no per-prospect table; "
                "csv output needs one (use the record format)"
            )
        lines = [_CSV_HEADER]
        rep = self.report
        for k, pid in enumerate(rep.prospect_ids):
            cells = [
                pid,
                repr(float(rep.utility_factors[k])),
                repr(float(rep.attraction_factors[k])),
                repr(float(rep.probabilities[k])),
            ]
            if rep.empirical is not None:
                cells.append(repr(float(rep.empirical[k])))
                cells.append(repr(float(rep.abs_errors[k])))
            else:
                cells.extend(["", ""])
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"
