"""Parameter bundles, hypothesis reports and verification reports."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, fields, replace
from typing import Any, Callable, Iterable, Sequence

from mpmath import mpc, mpf

from ..errors import DomainError
from ..numeric import (PrecisionContext, SeriesResult, complex_from_json, complex_to_json, format_number,
                       to_mp)


class DecayClass(str, enum.Enum):
    """How fast the slowest series of an identity decays; sets the default tolerance."""

    EXPONENTIAL = "exponential"
    ALTERNATING_POLY = "alternating_poly"
    MONOTONE_POLY = "monotone_poly"


_CLASS_FLOOR = {DecayClass.ALTERNATING_POLY: 20, DecayClass.MONOTONE_POLY: 12}


def class_tolerance(decay: DecayClass, ctx: PrecisionContext) -> mpf:
    """exponential: 10^(5 - target); polynomial classes: the larger of their fixed cap and that."""
    base = mpf(10) ** (5 - ctx.target_digits)
    floor = _CLASS_FLOOR.get(DecayClass(decay))
    return base if floor is None else max(base, mpf(10) ** (-floor))


def classify(stats: Iterable[SeriesResult]) -> DecayClass:
    """Derive the decay class from the strategies the series actually needed."""
    strategies = "+".join(s.strategy for s in stats)
    if "euler_maclaurin" in strategies:
        return DecayClass.MONOTONE_POLY
    if "alternating_cvz" in strategies or "euler_phase" in strategies:
        return DecayClass.ALTERNATING_POLY
    return DecayClass.EXPONENTIAL


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

_LIST_FIELDS = ("thetas", "betas", "xs", "ys", "as_", "bs")
_SCALAR_FIELDS = ("t", "w", "alpha")
_INT_FIELDS = ("M", "N", "m")

ALIASES = {
    "theta": "thetas", "thetas": "thetas", "beta": "betas", "betas": "betas",
    "x": "xs", "xs": "xs", "y": "ys", "ys": "ys", "a": "as_", "as": "as_", "as_": "as_",
    "b": "bs", "bs": "bs", "t": "t", "w": "w", "alpha": "alpha", "M": "M", "N": "N", "m": "m",
}


def _complex_tuple(values) -> tuple:
    if isinstance(values, (str, int, float, dict)) or not isinstance(values, Sequence):
        values = [values]
    return tuple(complex_from_json(v) if isinstance(v, (str, dict, list)) else to_mp(v) for v in values)


def _scalar(value):
    if value is None:
        return None
    return complex_from_json(value) if isinstance(value, (str, dict, list)) else to_mp(value)


def _integer(value, name: str) -> int:
    if isinstance(value, bool):
        raise DomainError(f"{name} must be an integer")
    if isinstance(value, str):
        value = value.strip()
        if not value.lstrip("-").isdigit():
            raise DomainError(f"{name} must be an integer, got {value!r}")
        return int(value)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class IdentityParams:
    """The parameter families of one identity instance.

    ``M``/``N`` are the family sizes for the multi-index identities and the
    exponents for the generalized Lambert identity; ``alpha`` and ``m`` carry
    the extra scalar/integer parameter some single-formula entries need.
    """

    thetas: tuple = ()
    betas: tuple = ()
    xs: tuple = ()
    ys: tuple = ()
    as_: tuple = ()
    bs: tuple = ()
    t: Any = mpc(0)
    w: Any = mpc(0)
    M: int = 0
    N: int = 0
    alpha: Any = None
    m: int | None = None

    def __post_init__(self) -> None:
        for name in _LIST_FIELDS:
            object.__setattr__(self, name, _complex_tuple(getattr(self, name)))
        for name in _SCALAR_FIELDS:
            object.__setattr__(self, name, _scalar(getattr(self, name)))
        object.__setattr__(self, "M", _integer(self.M, "M"))
        object.__setattr__(self, "N", _integer(self.N, "N"))
        if self.m is not None:
            object.__setattr__(self, "m", _integer(self.m, "m"))

    def merged(self, overrides: dict | None, family_sizes: bool = True) -> "IdentityParams":
        """Apply overrides (aliases such as ``x``/``a``/``theta`` accepted).

        With ``family_sizes`` the sizes ``M``/``N`` follow ``xs``/``ys`` and an
        explicit ``M``/``N`` that disagrees with them is rejected.
        """
        if not overrides:
            return self
        changes: dict = {}
        for key, value in overrides.items():
            name = ALIASES.get(key)
            if name is None:
                raise DomainError(f"unknown parameter {key!r}")
            if name in _LIST_FIELDS:
                changes[name] = _complex_tuple(value)
            elif name in _INT_FIELDS:
                changes[name] = _integer(value, name)
            else:
                changes[name] = _scalar(value)
        merged = replace(self, **changes)
        if family_sizes:
            size_m, size_n = len(merged.xs), len(merged.ys)
            if "M" in changes and changes["M"] != size_m:
                raise DomainError(f"M={changes['M']} does not match len(x)={size_m}")
            if "N" in changes and changes["N"] != size_n:
                raise DomainError(f"N={changes['N']} does not match len(y)={size_n}")
            merged = replace(merged, M=size_m, N=size_n)
        return merged

    def check_lengths(self, need_theta: bool = True, need_y: bool = False) -> None:
        """|thetas| = |xs| = |as_| = M and, when used, |betas| = |ys| = |bs| = N."""
        if len(self.xs) != self.M or len(self.as_) != self.M or (need_theta and len(self.thetas) != self.M):
            raise DomainError(f"family sizes disagree: M={self.M}, |x|={len(self.xs)}, |a|={len(self.as_)}, "
                              f"|theta|={len(self.thetas)}")
        if need_y and (len(self.ys) != self.N or len(self.bs) != self.N or len(self.betas) != self.N):
            raise DomainError(f"family sizes disagree: N={self.N}, |y|={len(self.ys)}, |b|={len(self.bs)}, "
                              f"|beta|={len(self.betas)}")
        for name in ("xs", "ys"):
            if any(v == 0 for v in getattr(self, name)):
                raise DomainError(f"{name} entries must be non-zero")

    def to_json(self, digits: int, used: Sequence[str] | None = None) -> dict:
        out: dict = {}
        for f in fields(self):
            name = f.name
            if used is not None and name not in used:
                continue
            value = getattr(self, name)
            if name in _LIST_FIELDS:
                if value or used is not None:
                    out[name] = [complex_to_json(v, digits) for v in value]
            elif name in _SCALAR_FIELDS:
                if value is not None:
                    out[name] = complex_to_json(value, digits)
            elif value is not None:
                out[name] = value
        return out


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    condition: str
    n: int | None = None
    k: int | None = None
    i: int | None = None
    j: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"condition": self.condition, "n": self.n, "k": self.k, "i": self.i, "j": self.j,
                "detail": self.detail}


@dataclass(frozen=True)
class HypothesisReport:
    violations: tuple = ()
    checked_up_to: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations],
                "checked_up_to": self.checked_up_to}


@dataclass(frozen=True)
class VerificationReport:
    identity_id: str
    params: dict
    lhs: mpc | None
    rhs: mpc | None
    abs_residual: mpf | None
    rel_residual: mpf | None
    tolerance: mpf
    passed: bool
    hypothesis: HypothesisReport
    series_stats: tuple = ()
    working_digits: int = 0
    elapsed_ms: float | None = None
    decay_class: str = DecayClass.EXPONENTIAL.value
    target_digits: int = 30
    notes: tuple = ()

    @property
    def pass_(self) -> bool:
        return self.passed

    def to_json(self, timing: bool = False) -> dict:
        d = self.target_digits
        num = lambda x: None if x is None else format_number(x, 6)
        return {
            "identity_id": self.identity_id,
            "params": self.params,
            "lhs": None if self.lhs is None else complex_to_json(self.lhs, d),
            "rhs": None if self.rhs is None else complex_to_json(self.rhs, d),
            "abs_residual": num(self.abs_residual),
            "rel_residual": num(self.rel_residual),
            "tolerance": format_number(self.tolerance, 3),
            "pass": self.passed,
            "hypothesis": self.hypothesis.to_json(),
            "series_stats": [s.summary(d) for s in self.series_stats],
            "working_digits": self.working_digits,
            "elapsed_ms": (round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None),
            "decay_class": self.decay_class,
            "notes": list(self.notes),
        }

    def to_json_text(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)


def finish_report(identity_id: str, params: dict, lhs, rhs, stats: Sequence[SeriesResult],
                  ctx: PrecisionContext, hypothesis: HypothesisReport, decay: DecayClass | None = None,
                  notes: Sequence[str] = (), elapsed_ms: float | None = None) -> VerificationReport:
    """Residuals, tolerance and pass flag: pass = hypothesis ok and rel_residual < tolerance."""
    decay = DecayClass(decay) if decay is not None else classify(stats)
    tol = class_tolerance(decay, ctx)
    with ctx.workdps():
        lhs, rhs = mpc(lhs), mpc(rhs)
        abs_res = abs(lhs - rhs)
        rel_res = abs_res / max(mpf(1), abs(rhs))
    passed = bool(hypothesis.ok and rel_res < tol)
    return VerificationReport(identity_id, params, lhs, rhs, abs_res, rel_res, tol, passed, hypothesis,
                              tuple(stats), ctx.working_digits, elapsed_ms, decay.value, ctx.target_digits,
                              tuple(notes))


def rejected_report(identity_id: str, params: dict, ctx: PrecisionContext, hypothesis: HypothesisReport,
                    decay: DecayClass = DecayClass.EXPONENTIAL, notes: Sequence[str] = ()) -> VerificationReport:
    """Report for an instance whose hypotheses failed; nothing was evaluated."""
    return VerificationReport(identity_id, params, None, None, None, None, class_tolerance(decay, ctx), False,
                              hypothesis, (), ctx.working_digits, None, DecayClass(decay).value,
                              ctx.target_digits, tuple(notes))


@dataclass(frozen=True)
class FunctionExpansion:
    """A meromorphic function given by poles ``c(n)`` and residues ``R(n)``:  f(z) = sum_n R(n)/(c(n) - z).

    ``residue_pieces`` writes ``R(n) = sum_r phase_r^n amp_r(n)`` with smooth
    ``amp_r`` (default: one phase-1 piece equal to ``residue``) so the outer sums
    can be accelerated; ``pole`` must accept real ``n`` as well.
    """

    residue: Callable[[int], object]
    pole: Callable[[object], object]
    closed_form: Callable[[object], object]
    decay_class: DecayClass = DecayClass.MONOTONE_POLY
    start: int = 1
    residue_pieces: tuple = ()
    name: str = ""

    def pieces(self) -> list[tuple]:
        return list(self.residue_pieces) or [(mpc(1), self.residue)]
