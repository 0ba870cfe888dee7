"""Parameter sweeps over test functions, with JSON/CSV reports and plot data."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import platform
import statistics
import sys
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from itertools import product
from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from gaconvex.constants import InequalityParams
from gaconvex.convexity import DEFAULT_GRID, ConvexityVerdict
from gaconvex.errors import DomainError
from gaconvex.functions import DEFAULT_FUNCTIONS, FunctionSpec, get_function
from gaconvex.ineq import (
    USED_PARAMS,
    Statement,
    VerdictTolerance,
    Verdict,
    VerificationRecord,
    param_hull,
    screen,
    verify,
)
from gaconvex.quad import QuadratureConfig

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

__version__ = "0.1.0"

CSV_COLUMNS = (
    "function", "statement", "a", "b", "x", "theta", "lambda",
    "alpha", "m", "q", "p", "lhs", "rhs", "slack", "verdict",
)
PARAM_COLUMNS = ("a", "b", "x", "theta", "lambda", "alpha", "m", "q", "p")
PLOT_AXES = PARAM_COLUMNS

HULL_NOTE = (
    "convexity of |f'|^q is screened on the hull of a, b, a^m, b^m; "
    "the integrability interval [a^m, b^m] and the hypothesis interval "
    "[a^m, b] are both contained in it"
)

# {{{ config


@dataclass(frozen=True)
class SweepConfig:
    """What to sweep. Function references are catalog names, expression
    strings in ``u`` or tables ``{"expr", "lo", "hi", "name"}``."""

    functions: tuple = DEFAULT_FUNCTIONS
    a_values: tuple[float, ...] = (0.5, 1.0, 2.0)
    b_ratios: tuple[float, ...] = (1.5, 2.0, 4.0)
    x_quantiles: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 1.0)
    theta_values: tuple[float, ...] = (0.5, 1.0, 2.5)
    lambda_values: tuple[float, ...] = (0.0, 1 / 3, 0.5, 1.0)
    alpha_values: tuple[float, ...] = (0.25, 0.5, 1.0)
    m_values: tuple[float, ...] = (0.5, 0.9, 1.0)
    q_values: tuple[float, ...] = (1.0, 2.0, 3.0)
    statements: tuple[Statement, ...] = tuple(Statement)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    convexity_grid_n: int = DEFAULT_GRID
    verdict_tol: float = 1.0e-7
    output: Optional[str] = None
    format: str = "csv"

    def __post_init__(self) -> None:
        lists = {
            "functions": self.functions, "a_values": self.a_values,
            "b_ratios": self.b_ratios, "x_quantiles": self.x_quantiles,
            "theta_values": self.theta_values, "lambda_values": self.lambda_values,
            "alpha_values": self.alpha_values, "m_values": self.m_values,
            "q_values": self.q_values, "statements": self.statements,
        }
        for name, values in lists.items():
            if len(values) == 0:
                raise ValueError(f"{name} must not be empty")
        if any(not r > 1 for r in self.b_ratios):
            raise ValueError("b_ratios must exceed 1")
        if any(not 0 <= s <= 1 for s in self.x_quantiles):
            raise ValueError("x_quantiles must lie in [0, 1]")
        if self.format not in ("json", "csv"):
            raise ValueError(f"format must be 'json' or 'csv', got {self.format!r}")
        object.__setattr__(self, "statements", tuple(Statement(s) for s in self.statements))

    def replace(self, **changes) -> "SweepConfig":
        fields = {k: getattr(self, k) for k in self.__dataclass_fields__}
        fields.update(changes)
        return SweepConfig(**fields)


_GRID_KEYS = {
    "a": "a_values", "b_ratio": "b_ratios", "x_quantile": "x_quantiles",
    "theta": "theta_values", "lambda": "lambda_values", "alpha": "alpha_values",
    "m": "m_values", "q": "q_values",
}
_TOP_KEYS = {"functions", "statements", "grid", "quadrature", "convexity", "verdict", "output"}


def _expand_statements(names: Iterable[str]) -> tuple[Statement, ...]:
    result = []
    for name in names:
        if name == "all":
            result.extend(Statement)
            continue
        matches = [s for s in Statement if s.value == name or s.family == name]
        if not matches:
            raise ValueError(f"unknown statement {name!r}")
        result.extend(matches)
    return tuple(dict.fromkeys(result))


def config_from_mapping(data: Mapping[str, Any], base: Optional[Path] = None) -> SweepConfig:
    """Build a :class:`SweepConfig` from a parsed TOML/JSON document."""
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs: dict[str, Any] = {}
    if "functions" in data:
        kwargs["functions"] = tuple(
            dict(ref) if isinstance(ref, Mapping) else str(ref) for ref in data["functions"]
        )
    if "statements" in data:
        kwargs["statements"] = _expand_statements(data["statements"])

    grid = dict(data.get("grid", {}))
    for key in set(grid) - set(_GRID_KEYS):
        raise ValueError(f"unknown grid key {key!r}")
    for key, attr in _GRID_KEYS.items():
        if key in grid:
            kwargs[attr] = tuple(float(v) for v in grid[key])

    if "quadrature" in data:
        kwargs["quadrature"] = QuadratureConfig(**data["quadrature"])
    if "convexity" in data:
        kwargs["convexity_grid_n"] = int(data["convexity"].get("grid_n", DEFAULT_GRID))
    if "verdict" in data:
        kwargs["verdict_tol"] = float(data["verdict"].get("tol", 1.0e-7))
    if "output" in data:
        out = data["output"]
        if "path" in out:
            path = Path(out["path"])
            if base is not None and not path.is_absolute():
                path = base / path
            kwargs["output"] = str(path)
        if "format" in out:
            kwargs["format"] = out["format"]
    return SweepConfig(**kwargs)


def load_config(path: str | Path) -> SweepConfig:
    """Read a sweep configuration from a ``.toml`` or ``.json`` file.

    Relative output paths are taken relative to the config file.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    if path.suffix.lower() == ".json":
        data = json.loads(raw)
    else:
        data = tomllib.loads(raw.decode())
    return config_from_mapping(data, base=path.parent)


# }}}

# {{{ report


@dataclass
class Report:
    records: list[VerificationRecord]
    summary: dict[str, dict[str, int]]
    min_slack: dict[str, float]
    metadata: dict[str, Any]
    skipped: list[str] = field(default_factory=list)

    def count(self, verdict: Verdict | str) -> int:
        verdict = Verdict(verdict)
        return sum(v.get(verdict.value, 0) for v in self.summary.values())

    @property
    def exit_code(self) -> int:
        if self.count(Verdict.numeric_fail):
            return 2
        if self.count(Verdict.violated):
            return 1
        return 0


def param_row(record: VerificationRecord) -> dict[str, Optional[float]]:
    """Parameters of *record*; the ones its statement ignores are ``None``."""
    p = record.params
    values = {
        "a": p.a, "b": p.b, "x": p.x, "theta": p.theta, "lambda": p.lam,
        "alpha": p.alpha, "m": p.m, "q": p.q, "p": p.p,
    }
    used = USED_PARAMS[record.statement.family]
    return {k: (v if k in used else None) for k, v in values.items()}


def _sort_key(record: VerificationRecord):
    row = param_row(record)
    nums = tuple(-math.inf if row[k] is None else row[k] for k in PARAM_COLUMNS)
    return (record.function_name, record.statement.value) + nums


def summarize(records: Sequence[VerificationRecord]) -> tuple[dict, dict]:
    counts: dict[str, Counter] = defaultdict(Counter)
    slack: dict[str, float] = {}
    for r in records:
        key = r.statement.value
        counts[key][r.verdict.value] += 1
        if math.isfinite(r.slack):
            slack[key] = min(slack.get(key, math.inf), r.slack)
    summary = {k: dict(sorted(v.items())) for k, v in sorted(counts.items())}
    return summary, dict(sorted(slack.items()))


def make_report(records: Iterable[VerificationRecord], metadata: Mapping[str, Any],
                skipped: Iterable[str] = ()) -> Report:
    records = sorted(records, key=_sort_key)
    summary, min_slack = summarize(records)
    return Report(records, summary, min_slack, dict(metadata), list(skipped))


def _fmt(value: Optional[float]) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return repr(float(value))


def csv_rows(report: Report) -> Iterator[list[str]]:
    for r in report.records:
        row = param_row(r)
        yield [r.function_name, r.statement.value,
               *(_fmt(row[k]) for k in PARAM_COLUMNS),
               _fmt(r.lhs), _fmt(r.rhs), _fmt(r.slack), r.verdict.value]


def _json_float(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


def record_to_dict(record: VerificationRecord) -> dict[str, Any]:
    conv = None
    if record.convexity is not None:
        conv = asdict(record.convexity)
        conv["worst_violation"] = _json_float(conv["worst_violation"])
    return {
        "function": record.function_name,
        "statement": record.statement.value,
        "params": {k: _json_float(v) for k, v in param_row(record).items()},
        "lhs": _json_float(record.lhs),
        "rhs": _json_float(record.rhs),
        "slack": _json_float(record.slack),
        "verdict": record.verdict.value,
        "tol_verdict": _json_float(record.tol_verdict),
        "convexity": conv,
        "notes": list(record.notes),
        "extras": {k: _json_float(v) for k, v in sorted(record.extras.items())},
    }


def emit_report(report: Report, path: str | Path, format: str = "csv") -> Path:
    """Write *report* as CSV (one row per record) or JSON (everything)."""
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            if format == "csv":
                fh.write(report_csv_text(report))
            elif format == "json":
                doc = {
                    "metadata": report.metadata,
                    "summary": report.summary,
                    "min_slack": report.min_slack,
                    "skipped": report.skipped,
                    "records": [record_to_dict(r) for r in report.records],
                }
                json.dump(doc, fh, indent=1, allow_nan=False)
                fh.write("\n")
            else:
                raise ValueError(f"unknown report format {format!r}")
    except OSError as exc:
        raise OSError(f"cannot write report {path}: {exc}") from exc
    return path


def plotdata_rows(report: Report, axis: str) -> list[tuple[float, str, float, float]]:
    if axis not in PLOT_AXES:
        raise ValueError(f"unknown axis {axis!r}, expected one of {PLOT_AXES}")
    groups: dict[tuple[float, str], list[float]] = defaultdict(list)
    for r in report.records:
        value = param_row(r)[axis]
        if value is None or not math.isfinite(r.slack):
            continue
        groups[(value, r.statement.value)].append(r.slack)
    return [
        (value, statement, min(slacks), statistics.median(slacks))
        for (value, statement), slacks in sorted(groups.items())
    ]


def emit_plotdata(report: Report, axis: str, path: str | Path) -> Path:
    """CSV of ``(axis value, statement, min slack, median slack)``."""
    rows = plotdata_rows(report, axis)
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow((axis, "statement", "min_slack", "median_slack"))
            for value, statement, lo, med in rows:
                writer.writerow((repr(value), statement, repr(lo), repr(med)))
    except OSError as exc:
        raise OSError(f"cannot write plot data {path}: {exc}") from exc
    return path


# }}}

# {{{ sweep


def _x_values(a: float, b: float, quantiles: Sequence[float]) -> list[float]:
    # geometric interpolation, endpoints exact
    out = []
    for s in quantiles:
        if s == 0:
            out.append(a)
        elif s == 1:
            out.append(b)
        else:
            out.append(min(b, max(a, a * (b / a) ** s)))
    return out


def _q_values(statement: Statement, qs: Sequence[float]) -> list[float]:
    if statement.min_q_exclusive:
        return [q for q in qs if q > 1]
    return list(qs)


def generate_params(statement: Statement, cfg: SweepConfig) -> list[InequalityParams]:
    """Distinct parameter tuples of *statement* over the grid of *cfg*."""
    family = statement.family
    seen: dict[tuple, InequalityParams] = {}

    def add(**kw):
        p = InequalityParams(**kw)
        key = (p.a, p.b, p.x, p.theta, p.lam, p.alpha, p.m, p.q)
        seen.setdefault(key, p)

    qs = _q_values(statement, cfg.q_values)
    for a, ratio in product(cfg.a_values, cfg.b_ratios):
        b = a * ratio
        mid = math.sqrt(a * b)
        xs = _x_values(a, b, cfg.x_quantiles)
        if family == "lemma2":
            for x, th, lam, m in product(xs, cfg.theta_values, cfg.lambda_values, cfg.m_values):
                add(a=a, b=b, x=x, theta=th, lam=lam, m=m)
        elif family == "thm4":
            for th in cfg.theta_values:
                add(a=a, b=b, x=mid, theta=th, lam=0.0)
        elif family == "theorem":
            for x, th, lam, al, m, q in product(xs, cfg.theta_values, cfg.lambda_values,
                                                cfg.alpha_values, cfg.m_values, qs):
                add(a=a, b=b, x=x, theta=th, lam=lam, alpha=al, m=m, q=q)
        elif family in ("simpson", "midpoint", "trapezoid"):
            lam = {"simpson": 1 / 3, "midpoint": 0.0, "trapezoid": 1.0}[family]
            for th, al, m, q in product(cfg.theta_values, cfg.alpha_values, cfg.m_values, qs):
                add(a=a, b=b, x=mid, theta=th, lam=lam, alpha=al, m=m, q=q)
        elif family == "ostrowski":
            for x, th, al, m, q in product(xs, cfg.theta_values, cfg.alpha_values,
                                           cfg.m_values, qs):
                add(a=a, b=b, x=x, theta=th, lam=0.0, alpha=al, m=m, q=q)
        elif family == "remark":
            for al, q in product(cfg.alpha_values, qs):
                add(a=a, b=b, x=mid, theta=1.0, lam=0.0, alpha=al, q=q)
        else:
            raise ValueError(f"no generator for {statement.value}")
    return list(seen.values())


class ConvexityCache:
    """Screening verdicts keyed by (function, kind, alpha, m, q, interval)."""

    def __init__(self, grid_n: int = DEFAULT_GRID):
        self.grid_n = grid_n
        self._store: dict[tuple, ConvexityVerdict] = {}
        self.hits = 0
        self.misses = 0

    def key(self, f: FunctionSpec, statement: Statement, params: InequalityParams) -> tuple:
        if statement is Statement.thm4:
            return (f.name, "f", 1.0, 1.0, 1.0, params.a, params.b)
        lo, hi = param_hull(params)
        return (f.name, "df", params.alpha, params.m, params.q, lo, hi)

    def get(self, f: FunctionSpec, statement: Statement,
            params: InequalityParams) -> ConvexityVerdict:
        key = self.key(f, statement, params)
        verdict = self._store.get(key)
        if verdict is None:
            self.misses += 1
            verdict = screen(f, statement, params, n=self.grid_n)
            self._store[key] = verdict
        else:
            self.hits += 1
        return verdict


def sweep_function(f: FunctionSpec, cfg: SweepConfig,
                   cache: Optional[ConvexityCache] = None) -> tuple[list[VerificationRecord], list[str]]:
    """All records of one function, plus human-readable skip reasons."""
    cache = cache or ConvexityCache(cfg.convexity_grid_n)
    tol = VerdictTolerance(rel=cfg.verdict_tol)
    records: list[VerificationRecord] = []
    skipped: list[str] = []

    for statement in cfg.statements:
        for params in generate_params(statement, cfg):
            lo, hi = param_hull(params)
            if statement is Statement.thm4:
                lo, hi = params.a, params.b
            if not f.covers(lo, hi):
                skipped.append(
                    f"{f.name} {statement.value} a={params.a!r} b={params.b!r} "
                    f"m={params.m!r}: [{lo!r}, {hi!r}] outside the domain"
                )
                continue
            conv = None
            try:
                if statement is not Statement.lemma2:
                    conv = cache.get(f, statement, params)
                record = verify(statement, f, params, cfg.quadrature, convexity=conv,
                                screening=False, tol=tol, grid_n=cfg.convexity_grid_n)
            except (DomainError, ValueError, ArithmeticError) as exc:
                record = VerificationRecord(
                    f.name, statement, params, math.nan, math.nan, math.nan,
                    Verdict.numeric_fail, math.nan, conv,
                    notes=(f"{type(exc).__name__}: {exc}",),
                )
            records.append(record)
    return records, skipped


def _sweep_one(cfg: SweepConfig, index: int):
    return sweep_function(get_function(cfg.functions[index]), cfg)


def metadata(cfg: SweepConfig) -> dict[str, Any]:
    return {
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "tolerances": {
            "verdict_rel": cfg.verdict_tol,
            "verdict_abs_floor": VerdictTolerance().abs_floor,
            "quadrature_rel": cfg.quadrature.rel_tol,
            "quadrature_abs": cfg.quadrature.abs_tol,
            "convexity_grid_n": cfg.convexity_grid_n,
        },
        "notes": [HULL_NOTE],
    }


def run_sweep(cfg: SweepConfig = SweepConfig(), jobs: int = 1) -> Report:
    """Verify every configured statement over the grid.

    With ``jobs > 1`` functions are distributed over worker processes; the
    merged report is sorted, so it does not depend on *jobs*.
    """
    records: list[VerificationRecord] = []
    skipped: list[str] = []
    if jobs > 1 and len(cfg.functions) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_sweep_one, cfg, i) for i in range(len(cfg.functions))]
            for fut in futures:
                recs, skips = fut.result()
                records.extend(recs)
                skipped.extend(skips)
    else:
        for i in range(len(cfg.functions)):
            recs, skips = _sweep_one(cfg, i)
            records.extend(recs)
            skipped.extend(skips)

    for line in skipped:
        logger.info("skipped: %s", line)
    return make_report(records, metadata(cfg), skipped)


def report_csv_text(report: Report) -> str:
    """The CSV serialization of *report* as a string."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(csv_rows(report))
    return buf.getvalue()


# }}}
