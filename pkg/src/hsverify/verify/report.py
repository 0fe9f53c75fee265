"""Run the family verifiers and aggregate their certificates into a report."""

from __future__ import annotations

import datetime
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from .. import __version__
from ..enclosure import DEFAULT_PRECISION
from ..families import AlternatingCatalog, Tables, default_catalog, load_tables, validate_tables
from .certificate import FAILED, INCONCLUSIVE, SKIPPED, VERIFIED, Certificate, precision, record_timings, timed

TARGETS = ("sporadic", "alternating", "classical", "exceptional", "e8", "tables", "general")
ALL = "all"

VERDICT_VERIFIED = "verified"
VERDICT_WITH_SKIPS = "verified-with-skips"
VERDICT_FAILED = "failed"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RunOptions:
    n_max: int = 10**4
    q_max: int = 10**4
    precision_bits: int = DEFAULT_PRECISION
    catalog: AlternatingCatalog | None = None
    tables: Tables | None = None
    timings: bool = False
    jobs: int = 1


def _run_target(target: str, opts: RunOptions) -> list[Certificate]:
    from . import alternating, classical, exceptional, general, sporadic

    tables = opts.tables or load_tables()
    bits = opts.precision_bits
    if target == "sporadic":
        return sporadic.verify_sporadic(tables)
    if target == "alternating":
        catalog = opts.catalog if opts.catalog is not None else default_catalog()
        return alternating.verify_alternating(opts.n_max, catalog, tables, bits)
    if target == "classical":
        return classical.verify_classical(opts.q_max, tables, bits)
    if target == "exceptional":
        return [c for c in exceptional.verify_exceptional(opts.q_max, tables, bits) if not c.id.startswith("e8/")]
    if target == "e8":
        return [exceptional.verify_e8_count(tables.e8)]
    if target == "tables":
        return validate_tables(tables)
    if target == "general":
        return general.verify_general()
    raise ValueError(f"unknown target {target!r}")


def _run_isolated(target: str, opts: RunOptions) -> list[Certificate]:
    token = record_timings.set(opts.timings)
    try:
        with precision(opts.precision_bits):
            return timed(lambda: _run_target(target, opts))
    finally:
        record_timings.reset(token)


def expand(target: str) -> tuple[str, ...]:
    """"all", one target, or a comma-separated list of targets."""
    if target == ALL:
        return TARGETS
    names = tuple(t.strip() for t in target.split(","))
    for t in names:
        if t not in TARGETS:
            raise ValueError(f"unknown target {t!r}")
    return names


def run(target: str, opts: RunOptions | None = None) -> list[Certificate]:
    """All certificates for a target, sorted by id so output never depends on scheduling."""
    opts = opts or RunOptions()
    targets = expand(target)
    if opts.jobs > 1 and len(targets) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            chunks = list(pool.map(_run_isolated, targets, [opts] * len(targets)))
    else:
        chunks = [_run_isolated(t, opts) for t in targets]
    return sorted((c for chunk in chunks for c in chunk), key=lambda c: c.id)


def summarize(certificates: list[Certificate]) -> dict[str, int]:
    counts = {"verified": 0, "failed": 0, "inconclusive": 0, "skipped": 0}
    key = {VERIFIED: "verified", FAILED: "failed", INCONCLUSIVE: "inconclusive", SKIPPED: "skipped"}
    for c in certificates:
        counts[key[c.verdict]] += 1
    return counts


def overall_verdict(summary: dict[str, int]) -> str:
    if summary["failed"]:
        return VERDICT_FAILED
    if summary["inconclusive"]:
        return VERDICT_INCONCLUSIVE
    return VERDICT_WITH_SKIPS if summary["skipped"] else VERDICT_VERIFIED


def family_of(cert_id: str) -> str:
    return cert_id.split("/", 1)[0]


def asymptotic_trend(bits: int = DEFAULT_PRECISION) -> list[dict]:
    """Upper bounds on J(S) - 1 for PSL(2,q) and 2B2(q) at growing q.

    The values shrink toward 0, which illustrates J(S) -> 1. Nothing here is certified.
    """
    from .classical import LogCache, psl2_bound
    from .exceptional import exceptional_bound
    from ..families import EXCEPTIONAL, classical_order

    logs = LogCache(bits)
    rows = []
    for q in (17, 101, 1009, 10007, 100003):
        rows.append({"group": f"PSL(2,{q})", "order_digits": len(str(classical_order("PSL", 2, q))),
                     "bound": f"{float(psl2_bound(q, 1, logs).hi):.6g}"})
    suzuki = next(r for r in EXCEPTIONAL if r.name == "2B2")
    for k in (3, 7, 11, 15, 19):
        q = 2**k
        rows.append({"group": f"2B2({q})", "order_digits": len(str(suzuki.order(q))),
                     "bound": f"{float(exceptional_bound(suzuki, q, bits).hi):.6g}"})
    return rows


@dataclass
class VerificationReport:
    version: str
    precision_bits: int
    timestamp: str | None
    certificates: list[Certificate]
    summary: dict[str, int] = field(default_factory=dict)
    trend: list[dict] = field(default_factory=list)

    def __post_init__(self):
        if not self.summary:
            self.summary = summarize(self.certificates)

    @property
    def verdict(self) -> str:
        return overall_verdict(self.summary)

    @property
    def skipped_ids(self) -> list[str]:
        return [c.id for c in self.certificates if c.verdict == SKIPPED]

    @property
    def failing_ids(self) -> list[str]:
        return [c.id for c in self.certificates if c.verdict in (FAILED, INCONCLUSIVE)]

    def by_family(self) -> dict[str, dict[str, int]]:
        groups: dict[str, list[Certificate]] = {}
        for c in self.certificates:
            groups.setdefault(family_of(c.id), []).append(c)
        return {k: summarize(v) for k, v in sorted(groups.items())}

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "precision_bits": self.precision_bits,
            "timestamp": self.timestamp,
            "verdict": self.verdict,
            "certificates": [c.to_json() for c in self.certificates],
            "summary": dict(self.summary),
            "by_family": self.by_family(),
            "skipped": self.skipped_ids,
            "trend": self.trend,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> "VerificationReport":
        return cls(d["version"], d["precision_bits"], d.get("timestamp"),
                   [Certificate.from_json(c) for c in d["certificates"]], dict(d["summary"]), list(d.get("trend", [])))


def report(certificates: list[Certificate], opts: RunOptions | None = None, trend: bool = True) -> VerificationReport:
    opts = opts or RunOptions()
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds") if opts.timings else None
    certs = sorted(certificates, key=lambda c: c.id)
    return VerificationReport(__version__, opts.precision_bits, stamp, certs, summarize(certs),
                              asymptotic_trend(opts.precision_bits) if trend else [])


def load_schema() -> dict:
    return json.loads(resources.files("hsverify").joinpath("data/report_schema.json").read_text())
