"""Registry of the built-in identity instances.

Every entry carries string defaults (parsed at working precision, so values
such as ``"1/3"`` or ``"sqrt(pi/2)"`` are exact to the requested digits), a
hypothesis checker and an evaluator.  :func:`registry_verify` validates the
hypotheses first and runs the evaluator only on an admissible instance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable

from mpmath import mp

from ..errors import DomainError, UnknownIdentity, UsageError
from ..numeric import DEFAULT_CONTEXT, PrecisionContext
from ..special import EtaParams, gen_eta_hypotheses, gen_eta_residual
from . import hypotheses as H
from .corollaries import ENTRIES as COR4_ENTRIES
from .corollaries import cor4_family_eval
from .general import (inverse_fourth_expansion, inverse_square_expansion, sin_expansion, theorem5_eval,
                      theorem5_hypotheses, theorem6_eval, theorem6_hypotheses)
from .lambert import prop8_eval, prop8_hypotheses
from .params import HypothesisReport, IdentityParams, VerificationReport
from .propositions import (cos_family_hypotheses, mixed_hypotheses, prop1_eval, prop2_eval, prop3_eval,
                           sin_family_hypotheses)
from .section3 import (cor310_eval, cor310_hypotheses, eq311_eval, eq311_hypotheses, prop7_eval,
                       prop7_hypotheses)

Checker = Callable[[IdentityParams, int], list]
Evaluator = Callable[[IdentityParams, PrecisionContext, HypothesisReport], VerificationReport]


@dataclass(frozen=True)
class RegistryEntry:
    identity_id: str
    title: str
    defaults: dict
    hypotheses: Checker
    evaluate: Evaluator
    family_sizes: bool = True
    fixed: bool = False
    note: str = ""

    def params(self, overrides: dict | None, ctx: PrecisionContext) -> IdentityParams:
        """Defaults merged with overrides, parsed at the context's working precision."""
        if overrides and self.fixed:
            raise UsageError(f"{self.identity_id} is a fixed numerical instance; its parameters cannot be overridden")
        try:
            with ctx.workdps():
                base = IdentityParams().merged(self.defaults, self.family_sizes)
                return base.merged(overrides, self.family_sizes)
        except (DomainError, ValueError, SyntaxError, TypeError) as exc:
            raise UsageError(f"{self.identity_id}: invalid parameters: {exc}") from exc

    def descriptor(self) -> dict:
        return {"id": self.identity_id, "title": self.title, "defaults": dict(self.defaults),
                "fixed": self.fixed, "note": self.note}


# ---------------------------------------------------------------------------
# adapters for evaluators that do not take an IdentityParams bundle
# ---------------------------------------------------------------------------

def _thm5_functions():
    return [inverse_square_expansion(), inverse_fourth_expansion()]


def _thm6_functions(p: IdentityParams):
    return [sin_expansion(mp.pi / 2) for _ in p.xs], [sin_expansion(mp.pi / 2) for _ in p.ys]


def _thm5_hypotheses(p: IdentityParams, n_max: int) -> list:
    return theorem5_hypotheses(_thm5_functions(), p.xs, p.as_, p.t, n_max)


def _thm5_eval(p, ctx, hypothesis):
    return theorem5_eval(_thm5_functions(), p.xs, p.as_, p.t, ctx, hypothesis, identity_id="thm5.demo")


def _thm6_hypotheses(p: IdentityParams, n_max: int) -> list:
    fs, gs = _thm6_functions(p)
    return theorem6_hypotheses(fs, gs, p.xs, p.as_, p.ys, p.bs, p.t, n_max)


def _thm6_eval(p, ctx, hypothesis):
    fs, gs = _thm6_functions(p)
    return theorem6_eval(fs, gs, p.xs, p.as_, p.ys, p.bs, p.t, ctx, hypothesis, identity_id="thm6.demo")


def _eta_params(p: IdentityParams) -> EtaParams:
    if len(p.xs) != 2:
        raise DomainError(f"two scales x1, x2 are required, got {len(p.xs)}")
    return EtaParams(p.w, p.xs[0], p.xs[1])


def _prop4_hypotheses(p: IdentityParams, n_max: int) -> list:
    return gen_eta_hypotheses(_eta_params(p), n_max)


def _prop4_eval(p, ctx, hypothesis):
    return gen_eta_residual(_eta_params(p), ctx, hypothesis, identity_id="prop4")


def _cor4(identity_id: str) -> tuple[Checker, Evaluator]:
    checker = COR4_ENTRIES[identity_id].hypotheses
    return checker, lambda p, ctx, hypothesis: cor4_family_eval(identity_id, p, ctx, hypothesis)


def _entry(identity_id, title, defaults, hypotheses=None, evaluate=None, **kw) -> RegistryEntry:
    if hypotheses is None:
        hypotheses, evaluate = _cor4(identity_id)
    return RegistryEntry(identity_id, title, defaults, hypotheses, evaluate, **kw)


_SCALES = ["1", "i"]
_SHIFTS = ["1/2", "1/3"]

_ENTRIES = [
    _entry("prop1", "cos-kernel product: M outer series against the product of closed kernels",
           {"theta": ["pi/2", "1"], "x": _SCALES, "a": _SHIFTS, "t": "1/3"},
           cos_family_hypotheses, prop1_eval),
    _entry("prop2", "sin-kernel product over odd lattices",
           {"theta": ["pi/2", "pi/2"], "x": _SCALES, "a": ["0", "0"], "t": "1/3"},
           sin_family_hypotheses, prop2_eval),
    _entry("prop3", "bilateral sin/sinh identity with an x family and a y family",
           {"theta": ["1", "1/2"], "beta": ["1/3"], "x": _SCALES, "y": ["2"], "a": ["0", "1/3"], "b": ["1"],
            "t": "1/2"},
           mixed_hypotheses, prop3_eval),
    _entry("thm5.demo", "general partial-fraction combinator with f = 1/z^2-type and 1/z^4-type expansions",
           {"x": _SCALES, "a": ["0", "1/3"], "t": "1/5"}, _thm5_hypotheses, _thm5_eval),
    _entry("thm6.demo", "two-family combinator with sine expansions in both families",
           {"x": ["1"], "a": ["0"], "y": ["1"], "b": ["1"], "t": "1/4"}, _thm6_hypotheses, _thm6_eval),
    _entry("prop4", "generalized Dedekind eta transformation (product ratio against closed form)",
           {"w": "1/2", "x": ["1", "2"]}, _prop4_hypotheses, _prop4_eval),
    _entry("prop7", "two-angle hyperbolic Lambert-series transformation",
           {"theta": ["1", "2"], "x": ["1", "2"], "w": "1/2"}, prop7_hypotheses, prop7_eval),
    _entry("cor3.10", "alpha-beta reciprocity with cosh weights (alpha beta = pi)",
           {"theta": ["1", "1/2"], "alpha": "sqrt(pi/2)"}, cor310_hypotheses, cor310_eval),
    _entry("eq3.11", "theta -> 0 form: Lambert series, coth terms and the paired difference series",
           {"x": ["1", "2"], "w": "1/2"}, eq311_hypotheses, eq311_eval),
    _entry("cor4.1", "cot-product series over a shifted family",
           {"x": _SCALES, "a": ["1/3", "1/2"], "t": "1/5"}),
    _entry("cor4.3", "two-term cot-product series", {"x": _SCALES, "a": _SHIFTS, "t": "1/5"}),
    _entry("cor4.4", "cot-product series in the shifts a1, a2", {"a": _SHIFTS}),
    _entry("eq4.5", "cot-product series at a = (1, 1/sqrt 2)", {"a": ["1", "1/sqrt(2)"]}, fixed=True),
    _entry("eq4.6", "cot-product series at a = (1/sqrt 2, 1/sqrt 3)", {"a": ["1/sqrt(2)", "1/sqrt(3)"]},
           fixed=True),
    _entry("cor4.7", "coth-cot series in the shifts a1, a2", {"a": _SHIFTS}),
    _entry("eq4.8", "coth-cot series at a = (1/sqrt 2, 1/sqrt 3)", {"a": ["1/sqrt(2)", "1/sqrt(3)"]}, fixed=True),
    _entry("cor4.10", "cot-cot series in two scales", {"x": ["1/2", "1/3"]}),
    _entry("eq4.12", "alpha-w cot-coth series", {"alpha": "1", "w": "1/2"}),
    _entry("eq4.15", "Ramanujan's formula for odd zeta values with two scales", {"x": ["1", "2"], "m": 2}),
    _entry("cor4.16", "cos-kernel family at theta = (pi/2, 1)",
           {"theta": ["pi/2", "1"], "x": _SCALES, "a": _SHIFTS, "t": "1/5"}),
    _entry("cor4.18", "two-angle hyperbolic series", {"theta": ["1", "1/2"], "x": ["1", "1"], "t": "1/3"}),
    _entry("cor4.19", "sech-product series (pi/4 normalization)", {"a": _SHIFTS}),
    _entry("eq4.20", "sech-product series at a = (1/sqrt 2, 1/sqrt 3)", {"a": ["1/sqrt(2)", "1/sqrt(3)"]},
           fixed=True),
    _entry("cor4.21", "sech family with shifts", {"x": _SCALES, "a": _SHIFTS, "t": "1/5"}),
    _entry("cor4.22", "sech family at cube-root-of-unity scales",
           {"x": ["1", "expjpi(1/3)", "expjpi(2/3)"], "t": "1/5"}),
    _entry("cor4.23", "sech family with zero shifts", {"x": _SCALES}, note="formula for π/4"),
    _entry("prop8", "generalized Lambert series with exponents M >= N >= 1",
           {"x": ["1", "6/5*expjpi(1/8)"], "t": "1/3", "M": 2, "N": 1}, prop8_hypotheses, prop8_eval,
           family_sizes=False),
]

REGISTRY: dict[str, RegistryEntry] = {e.identity_id: e for e in _ENTRIES}


def get_entry(identity_id: str) -> RegistryEntry:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(f"unknown identity id {identity_id!r}") from None


def registry_ids() -> list[str]:
    return list(REGISTRY)


def list_entries() -> list[dict]:
    """Descriptors of every built-in entry, in registry order."""
    return [e.descriptor() for e in _ENTRIES]


def entry_params(identity_id: str, overrides: dict | None = None,
                 ctx: PrecisionContext = DEFAULT_CONTEXT) -> IdentityParams:
    return get_entry(identity_id).params(overrides, ctx)


def validate_hypotheses(identity_id: str, p: IdentityParams, n_max: int = H.DEFAULT_N_MAX,
                        ctx: PrecisionContext = DEFAULT_CONTEXT) -> HypothesisReport:
    """Check every hypothesis of the entry; violations carry a witness (n, k, i, j) where applicable."""
    entry = get_entry(identity_id)
    with ctx.workdps():
        return HypothesisReport(tuple(entry.hypotheses(p, n_max)), n_max)


def registry_verify(identity_id: str, overrides: dict | None = None, ctx: PrecisionContext = DEFAULT_CONTEXT,
                    n_max: int = H.DEFAULT_N_MAX) -> VerificationReport:
    """Hypotheses first; the evaluator runs only when they hold (otherwise a rejected report)."""
    entry = get_entry(identity_id)
    started = time.perf_counter()
    p = entry.params(overrides, ctx)
    hypothesis = validate_hypotheses(identity_id, p, n_max, ctx)
    with ctx.workdps():
        report = entry.evaluate(p, ctx, hypothesis)
    return replace(report, elapsed_ms=(time.perf_counter() - started) * 1000)
