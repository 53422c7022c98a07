"""Acceptance suite: one test per acceptance criterion, each printing a pass/fail line.

Tolerances are pinned here; the summary lines appear in the "acceptance criteria"
section at the end of the pytest run.
"""

from __future__ import annotations

import json
import random
import time
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from conftest import ACCEPTANCE_LINES
from ramanujan_verify.cli import main
from ramanujan_verify.identities import propositions
from ramanujan_verify.identities.corollaries import ENTRIES as COR4_ENTRIES
from ramanujan_verify.identities.registry import registry_verify
from ramanujan_verify.kernels import (KernelArgs, cos_kernel_closed, cos_kernel_series, sin_kernel_closed,
                                      sin_kernel_series)
from ramanujan_verify.numeric import PrecisionContext, bernoulli
from ramanujan_verify.partialfrac import (SkeletonFamily, check_bilateral_pf, check_general_skeleton,
                                          check_reciprocal_pf, check_simple_pf, check_symmetric_pf, random_point,
                                          random_residue_map, sweep)
from ramanujan_verify.special import (EtaParams, eta, eta_transform_residual, gen_eta_residual, gen_eta_rhs,
                                      log_eta_anchor, zeta_even, zeta_odd)

# pinned tolerances
KERNEL_TOL = {"alternating_or_exponential": mpf("1e-30"), "monotone": mpf("1e-12")}
ANCHOR_TOL = mpf("1e-30")
ZETA_DIGITS = 40
ZETA_SECONDS = 1.0
ZETA_FORMULA_TOL = mpf("1e-30")
ETA_TRANSFORM_TOL = mpf("1e-27")
PROP4_TOL = mpf("1e-25")
COR310_TOL = PROP7_TOL = mpf("1e-25")
EQ311_TOL = mpf("1e-20")
EXPONENTIAL_ENTRY_TOL = mpf("1e-25")
PI_OVER_4_TOL = mpf("1e-25")
PROP8_TOL = mpf("1e-20")


class Criterion:
    """Records a FAIL line up front; ``ok`` replaces it with the outcome."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        ACCEPTANCE_LINES[number] = f"FAIL  {number:>2}. {title}: did not complete"

    def ok(self, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES[self.number] = f"{'PASS' if passed else 'FAIL'}  {self.number:>2}. {self.title}: {detail}"
        assert passed, detail


def rel(a, b):
    return abs(a - b) / max(abs(b), mpf(10) ** -300)


# ---------------------------------------------------------------------------
# 1. exact algebra
# ---------------------------------------------------------------------------

def _skeleton(bilateral: bool):
    def check(rng):
        m = rng.randint(1, 3)
        n = rng.randint(1, 3) if bilateral else 0
        point = random_point(rng, m, n, bound=20)
        g = None
        if bilateral:
            g = SkeletonFamily(tuple(random_residue_map(rng, 20) for _ in range(n)),
                               tuple(random_residue_map(rng, 20) for _ in range(n)),
                               tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(n)),
                               tuple(rng.randint(1, 9) for _ in range(n)))
        return check_general_skeleton([random_residue_map(rng, 20) for _ in range(m)],
                                      [random_residue_map(rng, 20) for _ in range(m)], point,
                                      shifts=[Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(m)],
                                      indices=[rng.randint(1, 9) for _ in range(m)], bilateral=bilateral,
                                      g_family=g)
    return check


EXACT_SCHEMAS = {
    "simple": lambda rng: check_simple_pf(random_point(rng, rng.randint(1, 6))),
    "reciprocal": lambda rng: check_reciprocal_pf(random_point(rng, rng.randint(1, 6))),
    "symmetric": lambda rng: check_symmetric_pf(random_point(rng, rng.randint(1, 4), rng.randint(1, 4))),
    "bilateral": lambda rng: check_bilateral_pf(random_point(rng, rng.randint(1, 4), rng.randint(1, 4))),
    "skeleton": _skeleton(False),
    "bilateral skeleton": _skeleton(True),
}


def test_criterion_01_exact_algebra():
    c = Criterion(1, "exact partial-fraction schemas")
    started = time.perf_counter()
    outcomes = {name: sweep(check, 1000, seed=1) for name, check in EXACT_SCHEMAS.items()}
    elapsed = time.perf_counter() - started
    nonzero = sum(len(o.nonzero) for o in outcomes.values())
    checked = sum(o.checked for o in outcomes.values())
    passed = nonzero == 0 and all(o.checked == 1000 for o in outcomes.values()) and elapsed < 30
    c.ok(passed, f"{checked} instances over {len(outcomes)} schemas, {nonzero} non-zero residuals, "
                 f"{elapsed:.1f} s (limit 30 s)")


# ---------------------------------------------------------------------------
# 2. kernel equivalence
# ---------------------------------------------------------------------------

def test_criterion_02_kernel_equivalence(ctx):
    c = Criterion(2, "kernel closed form vs series")
    rng = random.Random(2)
    worst = {}
    bad = []
    for kind, closed, series, half_turns in (("cos", cos_kernel_closed, cos_kernel_series, 1),
                                             ("sin", sin_kernel_closed, sin_kernel_series, mpf(1) / 2)):
        for i in range(100):
            with ctx.workdps():
                bound = half_turns * mp.pi
                x = mpc(rng.uniform(-3, 3), rng.uniform(-2, 2))
                y = mpc(rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5))
                # every tenth sample sits on the range endpoint, where the series has a fixed sign
                theta = bound * (rng.choice((-1, 1)) if i % 10 == 0 else mpf(rng.uniform(-1, 1)))
                args = KernelArgs(x, y, theta)
            value = closed(args, ctx)
            result = series(args, ctx)
            cls = "monotone" if "euler_maclaurin" in result.strategy else "alternating_or_exponential"
            with ctx.workdps():
                r = rel(result.value, value)
            worst[cls] = max(worst.get(cls, mpf(0)), r)
            if r >= KERNEL_TOL[cls]:
                bad.append((kind, i, r))
    with ctx.workdps():
        anchors = [rel(cos_kernel_closed(KernelArgs(mpf(1) / 2, 1, mp.pi), ctx), mpf(-2)),
                   rel(cos_kernel_series(KernelArgs(mpf(1) / 2, 1, mp.pi), ctx).value, mpf(-2)),
                   rel(sin_kernel_closed(KernelArgs(1, 2, mp.pi / 2), ctx), mp.pi / 8),
                   rel(sin_kernel_series(KernelArgs(1, 2, mp.pi / 2), ctx).value, mp.pi / 8)]
    anchor_ok = all(a < ANCHOR_TOL for a in anchors)
    detail = ", ".join(f"worst {k} {mp.nstr(v, 3)}" for k, v in sorted(worst.items()))
    c.ok(not bad and anchor_ok, f"200 random points ({detail}); anchors -2 and pi/8 worst {mp.nstr(max(anchors), 3)}")


# ---------------------------------------------------------------------------
# 3. zeta values
# ---------------------------------------------------------------------------

def test_criterion_03_zeta_values():
    c = Criterion(3, "odd and even zeta values")
    ctx = PrecisionContext(target_digits=ZETA_DIGITS, guard_digits=10)
    tol = mpf(10) ** -ZETA_DIGITS
    errors, slowest = [], 0.0
    for s in (3, 5, 7, 9, 11, 13):
        started = time.perf_counter()
        with ctx.workdps():
            value = zeta_odd(s, ctx)
        slowest = max(slowest, time.perf_counter() - started)
        with mp.workdps(70):
            # Dirichlet series sum n^-s, accelerated by nsum's Richardson extrapolation
            oracle = mp.nsum(lambda n: n ** -s, [1, mp.inf])
            errors.append(rel(value, oracle))
    even_errors = []
    for n in range(1, 11):
        with ctx.workdps():
            value = zeta_even(2 * n, ctx)
        with mp.workdps(70):
            even_errors.append(rel(value, mp.nsum(lambda k: k ** (-2 * n), [1, mp.inf])))
    passed = max(errors) < tol and max(even_errors) < tol and slowest < ZETA_SECONDS
    c.ok(passed, f"odd s=3..13 worst rel {mp.nstr(max(errors), 3)}, slowest {slowest:.2f} s at "
                 f"{ctx.working_digits} working digits; even 2..20 worst rel {mp.nstr(max(even_errors), 3)}")


# ---------------------------------------------------------------------------
# 4. odd zeta formula with two scales
# ---------------------------------------------------------------------------

def test_criterion_04_zeta_formula(ctx):
    c = Criterion(4, "two-scale odd zeta formula")
    worst, degenerate, failures, checked = mpf(0), [], [], 0
    for m in range(1, 7):
        for x in (["1", "1"], ["1", "2"], ["1", "3/2"]):
            report = registry_verify("eq4.15", {"x": x, "m": m}, ctx)
            if any(v.condition == "degenerate" for v in report.hypothesis.violations):
                degenerate.append((m, tuple(x)))
                if report.passed:
                    failures.append(("degenerate passed", m, x))
                continue
            checked += 1
            worst = max(worst, report.rel_residual)
            if not report.passed or report.rel_residual >= ZETA_FORMULA_TOL:
                failures.append((m, x, report.rel_residual))
    expected_degenerate = [(m, ("1", "1")) for m in (2, 4, 6)]
    passed = not failures and degenerate == expected_degenerate
    c.ok(passed, f"{checked} instances, worst rel {mp.nstr(worst, 3)}; degenerate reported for "
                 f"x=(1,1), m in {[m for m, _ in degenerate]}")


# ---------------------------------------------------------------------------
# 5. eta
# ---------------------------------------------------------------------------

def test_criterion_05_eta(ctx):
    c = Criterion(5, "Dedekind eta and its generalized transformation")
    rng = random.Random(5)
    transform = [eta_transform_residual(mpc(rng.uniform(-2, 2), rng.uniform(0.2, 3)), ctx) for _ in range(20)]
    prop4 = {}
    for label, (w, x1, x2) in {"w=0+": (0, 1, 2), "(1/2,1,2)": ("1/2", 1, 2), "(1/2,1,sqrt2)": ("1/2", 1, "sqrt2"),
                               "(1/4,3/2,2)": ("1/4", "3/2", 2)}.items():
        with ctx.workdps():
            value = lambda v: {"1/2": mpf(1) / 2, "1/4": mpf(1) / 4, "3/2": mpf(3) / 2,
                               "sqrt2": mp.sqrt(2)}.get(v, v) if isinstance(v, str) else v
            p = EtaParams(value(w), value(x1), value(x2))
        report = gen_eta_residual(p, ctx)
        prop4[label] = report.rel_residual if report.passed else mpf(1)
    # w = 0: the closed form against the classical eta quotient at tau = i x1/x2
    with ctx.workdps():
        x1, x2 = mpf(1), mpf(2)
        tau = mpc(0, x1 / x2)
        classical = eta(tau, ctx) / eta(-1 / tau, ctx) * mp.exp(mp.pi / 12 * (x1 / x2 - x2 / x1))
        limit = rel(gen_eta_rhs(EtaParams(0, x1, x2), ctx), classical)
    passed = (max(transform) < ETA_TRANSFORM_TOL and all(v < PROP4_TOL for v in prop4.values())
              and limit < ETA_TRANSFORM_TOL)
    c.ok(passed, f"transform worst {mp.nstr(max(transform), 3)} over 20 tau; generalized worst "
                 f"{mp.nstr(max(prop4.values()), 3)} at 4 points; w=0 vs classical {mp.nstr(limit, 3)}")


# ---------------------------------------------------------------------------
# 6. hyperbolic chain
# ---------------------------------------------------------------------------

def test_criterion_06_hyperbolic_chain(ctx):
    c = Criterion(6, "hyperbolic transformation chain")
    anchors = []
    for alpha in (lambda: mpf(1), lambda: mpf(2), lambda: +mp.pi):
        with ctx.workdps():
            lhs, rhs = log_eta_anchor(alpha(), ctx)
            anchors.append(abs(lhs - rhs))
    cor310 = [registry_verify("cor3.10", p, ctx) for p in ({"theta": ["1", "1/2"], "alpha": "sqrt(pi/2)"},
                                                            {"theta": ["1", "1/3"], "alpha": "1"},
                                                            {"theta": ["1/2", "2"], "alpha": "3/2"})]
    prop7 = [registry_verify("prop7", p, ctx) for p in ({"theta": ["pi", "pi"], "x": ["1", "2"], "w": "1/2"},
                                                         {"theta": ["1", "2"], "x": ["1+i/3", "2-i/4"],
                                                          "w": "1/2+i/5"})]
    eq311 = [registry_verify("eq3.11", p, ctx) for p in ({"x": ["1", "2"], "w": "1/2"}, {"x": ["1", "2"], "w": "10"})]
    groups = {"cor3.10": (cor310, COR310_TOL), "prop7": (prop7, PROP7_TOL), "eq3.11": (eq311, EQ311_TOL)}
    worst = {k: max(r.rel_residual if r.passed else mpf(1) for r in rs) for k, (rs, _) in groups.items()}
    passed = max(anchors) < ANCHOR_TOL and all(worst[k] < tol for k, (_, tol) in groups.items())
    c.ok(passed, f"log-eta anchor worst {mp.nstr(max(anchors), 3)}; "
                 + "; ".join(f"{k} worst {mp.nstr(v, 3)}" for k, v in worst.items()))


# ---------------------------------------------------------------------------
# 7. corollary sweep and the formula for pi/4
# ---------------------------------------------------------------------------

def test_criterion_07_corollary_sweep(ctx):
    c = Criterion(7, "specialization sweep and pi/4")
    failures, count = [], 0
    for identity_id in sorted(COR4_ENTRIES):
        report = registry_verify(identity_id, None, ctx)
        count += 1
        limit = EXPONENTIAL_ENTRY_TOL if report.decay_class == "exponential" else report.tolerance
        if not report.passed or report.rel_residual >= limit:
            failures.append((identity_id, report.rel_residual))
    pi4 = [registry_verify("cor4.23", {"x": x}, ctx) for x in (["1", "i"], ["1", "1+i"], ["1", "1+i", "2*i"])]
    pi4_worst = max(r.rel_residual if r.passed else mpf(1) for r in pi4)
    passed = not failures and pi4_worst < PI_OVER_4_TOL
    c.ok(passed, f"{count - len(failures)}/{count} entries pass at class tolerance; pi/4 for M=2,3 worst "
                 f"{mp.nstr(pi4_worst, 3)}")


# ---------------------------------------------------------------------------
# 8. generalized Lambert series
# ---------------------------------------------------------------------------

def test_criterion_08_lambert(ctx):
    c = Criterion(8, "generalized Lambert series")
    residuals = {}
    for M, N in ((1, 1), (2, 1), (2, 2)):
        report = registry_verify("prop8", {"M": M, "N": N}, ctx)
        residuals[(M, N)] = report.rel_residual if report.passed else mpf(1)
    exact = all(isinstance(bernoulli(k), Fraction) for k in (2, 4, 6)) and bernoulli(4) == Fraction(-1, 30)
    passed = max(residuals.values()) < PROP8_TOL and exact
    c.ok(passed, ", ".join(f"(M,N)={k}: {mp.nstr(v, 3)}" for k, v in residuals.items())
         + f"; exact Bernoulli numbers {exact}")


# ---------------------------------------------------------------------------
# 9. hypothesis gating
# ---------------------------------------------------------------------------

def test_criterion_09_gating(ctx, monkeypatch):
    c = Criterion(9, "hypothesis gating")
    evaluated = []
    monkeypatch.setattr(propositions, "cos_family_sides", lambda *a, **k: evaluated.append(a))
    report = registry_verify("prop1", {"x": ["1", "1"], "a": ["0", "0"]}, ctx)
    witness = [(v.n, v.k) for v in report.hypothesis.violations if v.condition.endswith("resonance")]
    passed = not report.passed and report.lhs is None and witness == [(1, 1)] and not evaluated
    c.ok(passed, f"rejected with witness {witness}, evaluator calls: {len(evaluated)}")


# ---------------------------------------------------------------------------
# 10. determinism
# ---------------------------------------------------------------------------

def test_criterion_10_determinism(capsys):
    c = Criterion(10, "deterministic JSON sweep")
    outputs, codes = [], []
    for _ in range(2):
        codes.append(main(["sweep", "*", "--output", "json"]))
        outputs.append(capsys.readouterr().out)
    reports = json.loads(outputs[0])
    passed = outputs[0] == outputs[1] and codes == [0, 0] and len(reports) == 27
    c.ok(passed, f"two full sweeps, {len(outputs[0])} bytes each, identical={outputs[0] == outputs[1]}, "
                 f"exit codes {codes}")
