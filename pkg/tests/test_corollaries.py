"""Specializations of the propositions: each default instance is compared with an
independent oracle that sums the printed formula directly with mpmath."""

from __future__ import annotations

import pytest
from mpmath import mp, mpc, mpf

from ramanujan_verify.identities.corollaries import ENTRIES, cor4_family_eval
from ramanujan_verify.identities.params import IdentityParams
from ramanujan_verify.identities.registry import entry_params

ORACLE_DPS = 50


def params(ctx, **kw) -> IdentityParams:
    with ctx.workdps():
        return IdentityParams().merged(kw)


def direct(term, start=1, limit=200000):
    """Direct summation of an exponentially decaying series."""
    total, small, n = mpc(0), 0, start
    eps = mpf(10) ** (-mp.dps - 5)
    while n < limit:
        v = term(n)
        total += v
        small = small + 1 if abs(v) <= eps * max(abs(total), 1) else 0
        if small >= 8:
            return total
        n += 1
    raise AssertionError("oracle series did not settle")


def oscillating(term, start=0):
    """Two-phase oscillating series (e.g. (-1)^n sin(2n+1) times a smooth amplitude): Shanks transformation.

    A single Levin transformation mixes the two phases and stalls near 1e-10; Shanks
    agrees with a phase-split Levin sum to the full oracle precision.
    """
    return mp.nsum(term, [start, mp.inf], method="shanks")


def slow(term, start=1):
    """Polynomially decaying series with a smooth asymptotic expansion: Richardson/Levin via nsum."""
    return mp.nsum(term, [start, mp.inf])


# ---------------------------------------------------------------------------
# printed formulas (sides evaluated at ORACLE_DPS, parameters as mpmath numbers)
# ---------------------------------------------------------------------------

def brace(q, x):
    """1/(2 q) - pi cot(pi sqrt(q)/x)/(2 x sqrt(q))."""
    s = mp.sqrt(q)
    return 1 / (2 * q) - mp.pi * mp.cot(mp.pi * s / x) / (2 * x * s)


def oracle_cor41(x, a, t):
    x1, x2 = x
    a1, a2 = a
    lhs = slow(lambda n: brace(x1 ** 2 * n ** 2 + a1 ** 2 - a2 ** 2, x2) / (x1 ** 2 * n ** 2 + a1 ** 2 - t ** 2))
    lhs += slow(lambda n: brace(x2 ** 2 * n ** 2 + a2 ** 2 - a1 ** 2, x1) / (x2 ** 2 * n ** 2 + a2 ** 2 - t ** 2))
    return lhs, brace(t * t - a1 ** 2, x1) * brace(t * t - a2 ** 2, x2)


def oracle_cor43(x, a, t):
    x1, x2 = x
    a1, a2 = a
    d12, d21 = mp.sqrt(a1 ** 2 - a2 ** 2), mp.sqrt(a2 ** 2 - a1 ** 2)

    def term(n):
        q1, q2 = mp.sqrt(x1 ** 2 * n ** 2 + a1 ** 2 - a2 ** 2), mp.sqrt(x2 ** 2 * n ** 2 + a2 ** 2 - a1 ** 2)
        return (mp.cot(mp.pi * q1 / x2) / (x2 * (x1 ** 2 * n ** 2 + a1 ** 2 - t ** 2) * q1)
                + mp.cot(mp.pi * q2 / x1) / (x1 * (x2 ** 2 * n ** 2 + a2 ** 2 - t ** 2) * q2))

    lhs = (mp.cot(mp.pi * d12 / x2) / ((t ** 2 - a1 ** 2) * x2 * d12)
           + mp.cot(mp.pi * d21 / x1) / ((t ** 2 - a2 ** 2) * x1 * d21) - 2 * slow(term))
    r1, r2 = mp.sqrt(t ** 2 - a1 ** 2), mp.sqrt(t ** 2 - a2 ** 2)
    rhs = mp.pi * mp.cot(mp.pi * r1 / x1) * mp.cot(mp.pi * r2 / x2) / (x1 * x2 * r1 * r2)
    return lhs, rhs


def oracle_cor44(a):
    a1, a2 = a
    d12, d21 = mp.sqrt(a1 ** 2 - a2 ** 2), mp.sqrt(a2 ** 2 - a1 ** 2)

    def term(n):
        q1, q2 = mp.sqrt(n ** 2 + a1 ** 2 - a2 ** 2), mp.sqrt(n ** 2 + a2 ** 2 - a1 ** 2)
        return mp.cot(mp.pi * q1) / ((n ** 2 + a1 ** 2) * q1) + mp.cot(mp.pi * q2) / ((n ** 2 + a2 ** 2) * q2)

    lhs = (mp.cot(mp.pi * d12) / (a1 ** 2 * d12) + mp.cot(mp.pi * d21) / (a2 ** 2 * d21) + 2 * slow(term))
    return lhs, -mp.pi * mp.coth(mp.pi * a1) * mp.coth(mp.pi * a2) / (a1 * a2)


def _printed_cot_pair(c1, c2, d):
    """sum {cot(pi sqrt(n^2 + d))/((n^2 + c1) sqrt(n^2 + d)) + cot(pi sqrt(n^2 - d))/((n^2 + c2) sqrt(n^2 - d))}."""
    return slow(lambda n: mp.cot(mp.pi * mp.sqrt(n * n + d)) / ((n * n + c1) * mp.sqrt(n * n + d))
                + mp.cot(mp.pi * mp.sqrt(n * n - d)) / ((n * n + c2) * mp.sqrt(n * n - d)))


def oracle_eq45():
    r2, pi = mp.sqrt(2), mp.pi
    lhs = _printed_cot_pair(1, mpf(1) / 2, mpf(1) / 2)
    rhs = r2 * mp.coth(r2 * pi / 2) - r2 / 2 * mp.cot(r2 * pi / 2) - pi * r2 / 2 * mp.coth(pi) * mp.coth(r2 * pi / 2)
    return lhs, rhs


def oracle_eq46():
    r2, r3, r6, pi = mp.sqrt(2), mp.sqrt(3), mp.sqrt(6), mp.pi
    lhs = _printed_cot_pair(mpf(1) / 2, mpf(1) / 3, mpf(1) / 6)
    rhs = (3 * r6 / 2 * mp.coth(r6 * pi / 6) - r6 * pi / 2 * mp.coth(r2 * pi / 2) * mp.coth(r3 * pi / 3)
           - r6 * mp.cot(r6 * pi / 6))
    return lhs, rhs


def oracle_cor47(a):
    a1, a2 = a
    d = a1 ** 2 - a2 ** 2
    lhs = slow(lambda n: (2 * n * n + d) * mp.coth(mp.pi * mp.sqrt(n * n + d))
               / ((n * n + a1 ** 2) * (n * n - a2 ** 2) * mp.sqrt(n * n + d)))
    rhs = (mp.sqrt(d) / (2 * a1 ** 2 * a2 ** 2) * mp.coth(mp.pi * mp.sqrt(d))
           - mp.pi / (2 * a1 * a2) * mp.coth(mp.pi * a1) * mp.cot(mp.pi * a2))
    return lhs, rhs


def oracle_eq48():
    r2, r3, r6, pi = mp.sqrt(2), mp.sqrt(3), mp.sqrt(6), mp.pi
    lhs = slow(lambda n: (2 * n * n + mpf(1) / 6) * mp.coth(pi * mp.sqrt(n * n + mpf(1) / 6))
               / ((n * n + mpf(1) / 2) * (n * n - mpf(1) / 3) * mp.sqrt(n * n + mpf(1) / 6)))
    rhs = r6 / 2 * mp.coth(pi * r6 / 6) - pi * r6 / 2 * mp.coth(pi * r2 / 2) * mp.cot(pi * r3 / 3)
    return lhs, rhs


def oracle_cor410(x):
    x1, x2 = x
    pi = mp.pi
    lhs = pi ** 2 * x1 * x2 * mp.coth(pi * x1) * mp.cot(pi * x2)
    s1 = slow(lambda n: mp.coth(n * pi * x2 / x1) / (n * (n * n + x1 * x1)))
    s2 = slow(lambda n: mp.coth(n * pi * x1 / x2) / (n * (n * n - x2 * x2)))
    rhs = 1 + pi ** 2 / 3 * (x1 ** 2 - x2 ** 2) - 2 * pi * x1 * x2 * (x1 ** 2 * s1 + x2 ** 2 * s2)
    return lhs, rhs


def oracle_eq412(alpha, w):
    beta = mp.pi ** 2 / alpha
    lhs = mp.pi / 2 * mp.cot(mp.sqrt(w * alpha)) * mp.coth(mp.sqrt(w * beta))
    rhs = 1 / (2 * w) + mp.log(beta / alpha) / 2 + slow(
        lambda n: n * alpha * mp.coth(n * alpha) / (w + n * n * alpha) + n * beta * mp.coth(n * beta) / (w - n * n * beta))
    return lhs, rhs


def oracle_eq415(x, m):
    x1, x2 = x
    pi = mp.pi
    lhs = (2 * pi) ** (2 * m + 1) * mp.fsum(
        (-1) ** k * mp.bernoulli(2 * k) * mp.bernoulli(2 * m + 2 - 2 * k) * x2 ** (2 * k) * x1 ** (2 * m + 2 - 2 * k)
        / (mp.factorial(2 * k) * mp.factorial(2 * m + 2 - 2 * k)) for k in range(m + 2))
    rhs = ((-1) ** m * x2 * x1 ** (2 * m + 1) * slow(lambda n: mp.coth(n * pi * x2 / x1) / mpf(n) ** (2 * m + 1))
           - x1 * x2 ** (2 * m + 1) * slow(lambda n: mp.coth(n * pi * x1 / x2) / mpf(n) ** (2 * m + 1)))
    return lhs, rhs


def oracle_cor416(theta, x, a, t):
    th1, th2 = theta
    x1, x2 = x
    a1, a2 = a

    def one(thi, thj, xi, xj, ai, aj):
        def term(n):
            m = 2 * n + 1
            q = mp.sqrt(xi ** 2 * m ** 2 + ai ** 2 - aj ** 2)
            return ((-1) ** n * mp.sin(m * thi) * mp.sin(thj * q / xj)
                    / ((xi ** 2 * m ** 2 + ai ** 2 - t ** 2) * q * mp.cos(mp.pi * q / (2 * xj))))
        return xi * oscillating(term)

    lhs = one(th1, th2, x1, x2, a1, a2) + one(th2, th1, x2, x1, a2, a1)
    r1, r2 = mp.sqrt(t * t - a1 ** 2), mp.sqrt(t * t - a2 ** 2)
    rhs = (mp.pi * mp.sin(th1 * r1 / x1) * mp.sin(th2 * r2 / x2)
           / (4 * r1 * r2 * mp.cos(mp.pi * r1 / (2 * x1)) * mp.cos(mp.pi * r2 / (2 * x2))))
    return lhs, rhs


def oracle_cor418(theta, x, t):
    th1, th2 = theta
    x1, x2 = x
    pi = mp.pi
    lhs = pi * mp.sin(th1 * x1 * t) * mp.sinh(th2 * x2 * t) / (4 * t * t * mp.cos(pi * x1 * t / 2)
                                                                 * mp.cosh(pi * x2 * t / 2))
    s1 = direct(lambda n: (-1) ** n * mp.sin((2 * n + 1) * th2) * mp.sinh((2 * n + 1) * th1 * x1 / x2)
                / ((2 * n + 1) * ((2 * n + 1) ** 2 + t * t * x2 * x2) * mp.cosh((2 * n + 1) * pi * x1 / (2 * x2))), 0)
    s2 = direct(lambda n: (-1) ** n * mp.sin((2 * n + 1) * th1) * mp.sinh((2 * n + 1) * th2 * x2 / x1)
                / ((2 * n + 1) * ((2 * n + 1) ** 2 - t * t * x1 * x1) * mp.cosh((2 * n + 1) * pi * x2 / (2 * x1))), 0)
    return lhs, x2 * x2 * s1 + x1 * x1 * s2


def oracle_cor419(a):
    a1, a2 = a
    d = a1 ** 2 - a2 ** 2
    lhs = direct(lambda n: (-1) ** n * (2 * n + 1) * (2 * (2 * n + 1) ** 2 + d)
                 / (((2 * n + 1) ** 2 + a1 ** 2) * ((2 * n + 1) ** 2 - a2 ** 2)
                    * mp.cosh(mp.pi / 2 * mp.sqrt((2 * n + 1) ** 2 + d))), 0)
    return lhs, mp.pi / (4 * mp.cosh(mp.pi * a1 / 2) * mp.cos(mp.pi * a2 / 2))


def oracle_eq420():
    pi, c = mp.pi, mpf(1) / 6

    def term(n):
        m = 2 * n + 1
        v = pi * mp.sqrt(m * m + c)
        return ((-1) ** n * m * (2 * m * m + c) * mp.exp(v / 2)
                / ((m * m + mpf(1) / 2) * (m * m - mpf(1) / 3) * (mp.exp(v) + 1)))

    return direct(term, 0), pi / (8 * mp.cosh(pi * mp.sqrt(2) / 4) * mp.cos(pi * mp.sqrt(3) / 6))


def oracle_cor421(x, a, t):
    """Printed sech-family sum; sides multiplied by prod x_i (the form the evaluator reports)."""
    lhs = mpc(0)
    for i, (xi, ai) in enumerate(zip(x, a)):
        def term(n, xi=xi, ai=ai, i=i):
            m = 2 * n + 1
            v = (-1) ** n * m / (xi ** 2 * m * m + ai ** 2 - t * t)
            for j, (xj, aj) in enumerate(zip(x, a)):
                if j != i:
                    v /= mp.cos(mp.pi * mp.sqrt(xi ** 2 * m * m + ai ** 2 - aj ** 2) / (2 * xj))
            return v
        lhs += xi * xi * direct(term, 0)
    rhs = mp.pi / 4
    for xi, ai in zip(x, a):
        rhs /= mp.cos(mp.pi * mp.sqrt(t * t - ai ** 2) / (2 * xi))
    return lhs, rhs


def oracle_cor423(x):
    lhs = mpc(0)
    for i, xi in enumerate(x):
        def term(n, xi=xi, i=i):
            v = mpf(-1) ** n / (2 * n + 1)
            for j, xj in enumerate(x):
                if j != i:
                    v /= mp.cos((2 * n + 1) * mp.pi * xi / (2 * xj))
            return v
        lhs += direct(term, 0)
    return lhs, mp.pi / 4


def _default_oracle(identity_id, p):
    xs, as_, t = list(p.xs), list(p.as_), p.t
    return {
        "cor4.1": lambda: oracle_cor41(xs, as_, t),
        "cor4.3": lambda: oracle_cor43(xs, as_, t),
        "cor4.4": lambda: oracle_cor44(as_),
        "eq4.5": oracle_eq45,
        "eq4.6": oracle_eq46,
        "cor4.7": lambda: oracle_cor47(as_),
        "eq4.8": oracle_eq48,
        "cor4.10": lambda: oracle_cor410(xs),
        "eq4.12": lambda: oracle_eq412(p.alpha, p.w),
        "eq4.15": lambda: oracle_eq415(xs, p.m),
        "cor4.16": lambda: oracle_cor416(list(p.thetas), xs, as_, t),
        "cor4.18": lambda: oracle_cor418(list(p.thetas), xs, t),
        "cor4.19": lambda: oracle_cor419(as_),
        "eq4.20": oracle_eq420,
        "cor4.21": lambda: oracle_cor421(xs, as_, t),
        "cor4.22": lambda: oracle_cor421(xs, [mpc(0)] * len(xs), t),
        "cor4.23": lambda: oracle_cor423(xs),
    }[identity_id]()


def _close(value, oracle, tol):
    return abs(value - oracle) <= tol * max(abs(oracle), 1)


# ---------------------------------------------------------------------------
# every default instance against its oracle
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("identity_id", sorted(ENTRIES))
def test_default_instance_matches_printed_formula(ctx, identity_id):
    p = entry_params(identity_id, None, ctx)
    report = cor4_family_eval(identity_id, p, ctx)
    assert report.hypothesis.ok, report.hypothesis.violations
    assert report.passed, (report.rel_residual, report.tolerance)
    with mp.workdps(ORACLE_DPS):
        o_lhs, o_rhs = _default_oracle(identity_id, entry_params(identity_id, None, ctx))
        # the oracle satisfies the identity on its own ...
        assert _close(o_lhs, o_rhs, mpf("1e-20")), (o_lhs, o_rhs)
        # ... and both reported sides agree with it
        assert _close(report.lhs, o_lhs, mpf("1e-20")), (report.lhs, o_lhs)
        assert _close(report.rhs, o_rhs, mpf("1e-20")), (report.rhs, o_rhs)


# ---------------------------------------------------------------------------
# the formula for pi/4
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("xs", [["1", "i"], ["1", "1+i"], ["1", "1+i", "2*i"], ["1", "expjpi(1/3)", "expjpi(2/3)"]])
def test_pi_over_4(ctx, xs):
    p = params(ctx, x=xs)
    report = cor4_family_eval("cor4.23", p, ctx)
    assert report.passed and report.rel_residual < mpf("1e-25"), report.rel_residual
    with ctx.workdps():
        assert abs(report.rhs - mp.pi / 4) < mpf("1e-40")


def test_pi_over_4_two_scales_closed_oracle(ctx):
    """x = (1, i): both outer sums coincide, 2 sum (-1)^n/((2n+1) cosh((2n+1) pi/2)) = pi/4."""
    p = params(ctx, x=["1", "i"])
    report = cor4_family_eval("cor4.23", p, ctx)
    with mp.workdps(ORACLE_DPS):
        oracle = 2 * direct(lambda n: mpf(-1) ** n / ((2 * n + 1) * mp.cosh((2 * n + 1) * mp.pi / 2)), 0)
        assert abs(oracle - mp.pi / 4) < mpf("1e-45")
        assert abs(report.lhs - oracle) < mpf("1e-30")


def test_pi_over_4_rejects_real_ratio(ctx):
    report = cor4_family_eval("cor4.23", params(ctx, x=["1", "1"]), ctx)
    assert not report.hypothesis.ok and not report.passed
    assert report.lhs is None


# ---------------------------------------------------------------------------
# fixed instances and their parent families
# ---------------------------------------------------------------------------

def test_sech_instance_is_half_the_family_value(ctx):
    """The exponential form of the sech series equals half the family value at a = (1/sqrt 2, 1/sqrt 3)."""
    family = cor4_family_eval("cor4.19", params(ctx, a=["1/sqrt(2)", "1/sqrt(3)"]), ctx)
    instance = cor4_family_eval("eq4.20", entry_params("eq4.20", None, ctx), ctx)
    with ctx.workdps():
        assert abs(instance.lhs - family.lhs / 2) < mpf("1e-40")
        assert abs(instance.rhs - mp.pi / (8 * mp.cosh(mp.pi * mp.sqrt(2) / 4) * mp.cos(mp.pi * mp.sqrt(3) / 6))) \
            < mpf("1e-40")


@pytest.mark.parametrize("fixed, family", [("eq4.5", "cor4.4"), ("eq4.6", "cor4.4"), ("eq4.8", "cor4.7")])
def test_fixed_instances_follow_from_their_family(ctx, fixed, family):
    p = entry_params(fixed, None, ctx)
    assert cor4_family_eval(fixed, p, ctx).passed
    assert cor4_family_eval(family, p, ctx).passed


# ---------------------------------------------------------------------------
# odd zeta formula with two scales
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3])
def test_zeta_formula_scaling_invariance(ctx, m):
    """Scaling (x1, x2) by c multiplies both sides by c^(2m+2)."""
    base = cor4_family_eval("eq4.15", params(ctx, x=["1", "2"], m=m), ctx)
    scaled = cor4_family_eval("eq4.15", params(ctx, x=["3/2", "3"], m=m), ctx)
    assert base.passed and scaled.passed
    with ctx.workdps():
        factor = (mpf(3) / 2) ** (2 * m + 2)
        assert abs(scaled.lhs - factor * base.lhs) < mpf("1e-35") * abs(scaled.lhs)


@pytest.mark.parametrize("m, expect_degenerate", [(1, False), (2, True), (3, False), (4, True)])
def test_zeta_formula_degenerate_at_equal_scales(ctx, m, expect_degenerate):
    report = cor4_family_eval("eq4.15", params(ctx, x=["1", "1"], m=m), ctx)
    degenerate = any(v.condition == "degenerate" for v in report.hypothesis.violations)
    assert degenerate == expect_degenerate
    if not expect_degenerate:
        assert report.passed


# ---------------------------------------------------------------------------
# rejections
# ---------------------------------------------------------------------------

def test_cot_pair_resonance_is_rejected(ctx):
    """x = (1, 2), a = (0, 0): x1^2 n^2 - x2^2 k^2 = 0 at n = 2, k = 1."""
    report = cor4_family_eval("cor4.3", params(ctx, x=["1", "2"], a=["0", "0"], t="1/5"), ctx)
    assert not report.hypothesis.ok
    assert report.lhs is None and not report.passed
    assert any(v.n is not None and v.k is not None for v in report.hypothesis.violations)


def test_sech_family_sum_of_odd_squares_is_rejected(ctx):
    """a2^2 - a1^2 = 2 = 1^2 + 1^2."""
    report = cor4_family_eval("cor4.19", params(ctx, a=["0", "sqrt(2)"]), ctx)
    assert [v.condition for v in report.hypothesis.violations] == ["sum_of_odd_squares"]
