"""Certificates: one checked inequality each, with its evidence and verdict."""

from __future__ import annotations

import contextvars
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from ..enclosure import DEFAULT_PRECISION, RETRY_PRECISION, Enclosure
from ..exact import format_rational, parse_rational

VERIFIED = "verified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"
SKIPPED = "skipped-missing-data"
VERDICTS = (VERIFIED, FAILED, INCONCLUSIVE, SKIPPED)

# timings make reports non-reproducible, so they are opt-in
record_timings: contextvars.ContextVar[bool] = contextvars.ContextVar("record_timings", default=False)
working_precision: contextvars.ContextVar[int] = contextvars.ContextVar("working_precision", default=DEFAULT_PRECISION)


@contextmanager
def precision(bits: int) -> Iterator[None]:
    token = working_precision.set(bits)
    try:
        yield
    finally:
        working_precision.reset(token)


@dataclass(frozen=True)
class Certificate:
    id: str
    anchor: str
    statement: str
    lhs: Enclosure | None
    rhs: Fraction | None
    verdict: str
    provenance: tuple[str, ...] = ()
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == VERIFIED and self.lhs is not None and not self.lhs.hi < self.rhs:
            raise ValueError(f"{self.id}: verified verdict without lhs.hi < rhs")

    @property
    def ok(self) -> bool:
        return self.verdict == VERIFIED

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "statement": self.statement,
            "lhs": None if self.lhs is None else {"lo": format_rational(self.lhs.lo), "hi": format_rational(self.lhs.hi)},
            "rhs": None if self.rhs is None else format_rational(self.rhs),
            "verdict": self.verdict,
            "provenance": list(self.provenance),
            "elapsed_ms": self.elapsed_ms,
            "details": {k: _jsonable(v) for k, v in sorted(self.details.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        lhs = d.get("lhs")
        return cls(
            id=d["id"],
            anchor=d["anchor"],
            statement=d["statement"],
            lhs=None if lhs is None else Enclosure(parse_rational(lhs["lo"]), parse_rational(lhs["hi"])),
            rhs=None if d.get("rhs") is None else parse_rational(d["rhs"]),
            verdict=d["verdict"],
            provenance=tuple(d.get("provenance", ())),
            elapsed_ms=d.get("elapsed_ms", 0),
            details=dict(d.get("details", {})),
        )


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, Enclosure):
        return {"lo": format_rational(v.lo), "hi": format_rational(v.hi)}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def judge(lhs: Enclosure, rhs) -> str:
    """verified iff lhs.hi < rhs; failed iff lhs.lo >= rhs; otherwise inconclusive."""
    rhs = Fraction(rhs)
    if lhs.hi < rhs:
        return VERIFIED
    if lhs.lo >= rhs:
        return FAILED
    return INCONCLUSIVE


def certify(
    id: str,
    anchor: str,
    statement: str,
    lhs: Enclosure | Fraction | int,
    rhs,
    provenance: Iterable[str] = (),
    details: dict | None = None,
) -> Certificate:
    """Certificate for the strict inequality lhs < rhs."""
    if not isinstance(lhs, Enclosure):
        lhs = Enclosure.exact(lhs)
    rhs = Fraction(rhs)
    return Certificate(id, anchor, statement, lhs, rhs, judge(lhs, rhs), tuple(provenance), 0, dict(details or {}))


def certify_with_retry(
    evaluate: Callable[[int], Enclosure],
    rhs,
    id: str,
    anchor: str,
    statement: str,
    provenance: Iterable[str] = (),
    details: dict | None = None,
) -> Certificate:
    """Evaluate at the working precision, and once more at the retry precision if undecided."""
    bits = working_precision.get()
    cert = certify(id, anchor, statement, evaluate(bits), rhs, provenance, details)
    if cert.verdict == INCONCLUSIVE and bits < RETRY_PRECISION:
        cert = certify(id, anchor, statement, evaluate(RETRY_PRECISION), rhs, provenance, details)
        cert.details["retried_at_bits"] = RETRY_PRECISION
    return cert


def predicate(id: str, anchor: str, statement: str, holds: bool, provenance: Iterable[str] = (), details: dict | None = None) -> Certificate:
    """Certificate for an exact yes/no check, encoded as 0 < 1 (holds) or 1 < 1 (fails)."""
    return certify(id, anchor, statement, 0 if holds else 1, 1, provenance, details)


def skipped(id: str, anchor: str, statement: str, reason: str, provenance: Iterable[str] = ()) -> Certificate:
    return Certificate(id, anchor, statement, None, None, SKIPPED, tuple(provenance), 0, {"reason": reason})


def failed_with(id: str, anchor: str, statement: str, reason: str, provenance: Iterable[str] = ()) -> Certificate:
    return Certificate(id, anchor, statement, None, None, FAILED, tuple(provenance), 0, {"reason": reason})


def timed(fn: Callable[[], list[Certificate]]) -> list[Certificate]:
    """Run a verifier; stamp average per-certificate wall time only when timings are enabled."""
    if not record_timings.get():
        return fn()
    start = time.perf_counter()
    certs = fn()
    ms = int((time.perf_counter() - start) * 1000 / max(len(certs), 1))
    return [replace(c, elapsed_ms=ms) for c in certs]
