"""The hyperbolic transformation chain: the two-angle Lambert-type transformation,
its alpha-beta corollary, and the theta -> 0 form with the paired difference series.

Square roots ``S_k(n) = sqrt(x_k^2 n^2 + w^2)`` are taken on the branch
``x_k n sqrt(1 + (w/(x_k n))^2)``: continuous in ``n`` (so Euler--Maclaurin may
integrate it) and asymptotic to ``x_k n`` (so the exponential series decay
whenever ``x_1/x_2`` has positive real part).  Every identity of this module
combines, for each ``n``, an expression even in ``S_k(n)``; any consistent branch
therefore gives the same value.
"""

from __future__ import annotations

from mpmath import mp, mpc

from ..errors import DomainError
from ..numeric import DEFAULT_CONTEXT, PrecisionContext, complex_sqrt, sum_series
from . import hypotheses as H
from .params import (DecayClass, HypothesisReport, IdentityParams, VerificationReport, Violation,
                     finish_report, rejected_report)

PROP7_FIELDS = ("thetas", "xs", "w")
COR310_FIELDS = ("thetas", "alpha")
EQ311_FIELDS = ("xs", "w")


def smooth_root(x, w):
    """n -> x n sqrt(1 + (w/(x n))^2), a branch of sqrt(x^2 n^2 + w^2) smooth in n."""
    x, w = mpc(x), mpc(w)
    return lambda n: x * n * complex_sqrt(1 + (w / (x * n)) ** 2)


# ---------------------------------------------------------------------------
# Hypotheses
# ---------------------------------------------------------------------------

def _pair(p: IdentityParams) -> tuple[mpc, mpc]:
    if len(p.xs) != 2:
        raise DomainError(f"two scales x1, x2 are required, got {len(p.xs)}")
    x1, x2 = p.xs
    if x1 == 0 or x2 == 0:
        raise DomainError("x1 and x2 must be non-zero")
    return mpc(x1), mpc(x2)


def _hyperbolic_hypotheses(x1, x2, w, n_max: int) -> list[Violation]:
    """x1/x2 not purely imaginary, x2^2 n^2 + x1^2 k^2 != -w^2, w != 0 and sinh(pi w/x_i) != 0."""
    out = H.not_purely_imaginary(x1, x2)
    hit = H.quadratic_witness(x2 * x2, x1 * x1, -mpc(w) ** 2, False, n_max)
    if hit is not None:
        out.append(Violation("resonance", hit[0], hit[1], 0, 1, "x2^2 n^2 + x1^2 k^2 = -w^2"))
    out += H.nonzero(w, "w_nonzero", "w = 0 is the limit handled by the theta-free entries")
    if abs(mpc(w)) > 0:
        for i, x in enumerate((x1, x2)):
            out += H.lattice_pole(-(mpc(w) / x) ** 2, False, "rhs_pole", i, detail="w = i k x_i: sinh(pi w/x_i) = 0")
    return out


def prop7_hypotheses(p: IdentityParams, n_max: int) -> list[Violation]:
    x1, x2 = _pair(p)
    out = H.open_range(p.thetas, 0, 2 * mp.pi, "theta")
    if len(p.thetas) != 2:
        out.append(Violation("theta_count", None, None, None, None, "two angles theta1, theta2 are required"))
    return out + _hyperbolic_hypotheses(x1, x2, p.w, n_max)


def cor310_hypotheses(p: IdentityParams, n_max: int) -> list[Violation]:
    out = []
    alpha = mpc(p.alpha)
    if abs(alpha.imag) > H._tol(alpha) or alpha.real <= 0:
        return [Violation("alpha_range", None, None, None, None, "alpha must be real and positive")]
    if len(p.thetas) != 2:
        return [Violation("theta_count", None, None, None, None, "two angles theta1, theta2 are required")]
    beta = mp.pi / alpha.real
    # the substitution theta1 -> alpha theta1, theta2 -> beta theta2 carries the (0, 2 pi) range
    out += H.open_range([mpc(p.thetas[0]) * alpha.real], 0, 2 * mp.pi, "alpha_theta1")
    out += H.open_range([mpc(p.thetas[1]) * beta], 0, 2 * mp.pi, "beta_theta2")
    return out


def eq311_hypotheses(p: IdentityParams, n_max: int) -> list[Violation]:
    x1, x2 = _pair(p)
    out = []
    for i, x in enumerate((x1, x2)):
        if x.real <= 0:
            out.append(Violation("x_range", None, None, i, None, f"Re x{i + 1} must be positive"))
    return out + _hyperbolic_hypotheses(x1, x2, p.w, n_max)


def _prepare(identity_id, p, ctx, hypothesis, check, fields):
    params = p.to_json(ctx.target_digits, fields)
    if hypothesis is None:
        with ctx.workdps():
            hypothesis = HypothesisReport(tuple(check(p, H.DEFAULT_N_MAX)), H.DEFAULT_N_MAX)
    return params, hypothesis


# ---------------------------------------------------------------------------
# Two-angle transformation
# ---------------------------------------------------------------------------

def prop7_sides(p: IdentityParams, ctx: PrecisionContext):
    x1, x2 = _pair(p)
    th1, th2 = (mpc(v) for v in p.thetas)
    w = mpc(p.w)
    S1, S2 = smooth_root(x1, w), smooth_root(x2, w)
    two_pi = 2 * mp.pi

    def lambert(th_other, S, x_other, th_self):
        # cos(n th_self) cosh(th_other S/x_other) / (S (e^{2 pi S/x_other} - 1))
        def term(n):
            s = S(n)
            r = s / x_other
            num = (mp.exp((th_other - two_pi) * r) + mp.exp(-(th_other + two_pi) * r)) / 2
            return mp.cos(n * th_self) * num / (s * (1 - mp.exp(-two_pi * r)))
        return term

    def one_sided(th_other, S, x_other, th_self):
        return lambda n: mp.cos(n * th_self) * mp.exp(-th_other * S(n) / x_other) / S(n)

    l1 = sum_series(lambert(th2, S1, x2, th1), 1, "none", ctx, "lambert[x1]")
    l2 = sum_series(lambert(th1, S2, x1, th2), 1, "none", ctx, "lambert[x2]")
    e2 = sum_series(one_sided(th1, S2, x1, th2), 1, "none", ctx, "one_sided[x2]")
    e1 = sum_series(one_sided(th2, S1, x2, th1), 1, "none", ctx, "one_sided[x1]")
    lhs = l1.value / x2 - l2.value / x1

    def closed(th, x):
        z = mp.pi * w / x
        return (mp.cosh(th * w / x) * mp.cosh(z) / mp.sinh(z) - mp.sinh(th * w / x)) / (4 * w * x)

    rhs = closed(th1, x1) - closed(th2, x2) + e2.value / (2 * x1) - e1.value / (2 * x2)
    return lhs, rhs, [l1, l2, e2, e1]


def prop7_eval(p: IdentityParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
               hypothesis: HypothesisReport | None = None) -> VerificationReport:
    """Two-angle hyperbolic Lambert transformation (all series exponentially decaying)."""
    params, hypothesis = _prepare("prop7", p, ctx, hypothesis, prop7_hypotheses, PROP7_FIELDS)
    if not hypothesis.ok:
        return rejected_report("prop7", params, ctx, hypothesis)
    with ctx.workdps():
        lhs, rhs, stats = prop7_sides(p, ctx)
        return finish_report("prop7", params, lhs, rhs, stats, ctx, hypothesis)


# ---------------------------------------------------------------------------
# alpha-beta corollary
# ---------------------------------------------------------------------------

def cor310_sides(alpha, theta1, theta2, ctx: PrecisionContext):
    alpha = mpc(alpha).real
    beta = mp.pi / alpha
    th1, th2 = mpc(theta1), mpc(theta2)

    def term(c_angle, h_angle, scale):
        # cos(n c) cosh(n h) / (n (e^{2 n scale^2} - 1))
        q = 2 * scale * scale
        return lambda n: (mp.cos(n * c_angle) * (mp.exp(n * (h_angle - q)) + mp.exp(-n * (h_angle + q))) / 2
                          / (n * (1 - mp.exp(-n * q))))

    s1 = sum_series(term(th1 * alpha, th2 * alpha, alpha), 1, "none", ctx, "alpha")
    s2 = sum_series(term(th2 * beta, th1 * beta, beta), 1, "none", ctx, "beta")
    lhs = s1.value - s2.value
    rhs = ((th1 ** 2 - th2 ** 2) / 8 + (beta ** 2 - alpha ** 2) / 12
           + mp.log((mp.cosh(th2 * alpha) - mp.cos(th1 * alpha)) / (mp.cosh(th1 * beta) - mp.cos(th2 * beta))) / 4)
    return lhs, rhs, [s1, s2]


def cor310_eval(p: IdentityParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
                hypothesis: HypothesisReport | None = None) -> VerificationReport:
    """Lambert-type alpha/beta reciprocity with cosh weights (alpha beta = pi)."""
    params, hypothesis = _prepare("cor3.10", p, ctx, hypothesis, cor310_hypotheses, COR310_FIELDS)
    if not hypothesis.ok:
        return rejected_report("cor3.10", params, ctx, hypothesis)
    with ctx.workdps():
        lhs, rhs, stats = cor310_sides(p.alpha, p.thetas[0], p.thetas[1], ctx)
        return finish_report("cor3.10", params, lhs, rhs, stats, ctx, hypothesis)


# ---------------------------------------------------------------------------
# theta -> 0 form
# ---------------------------------------------------------------------------

def eq311_sides(p: IdentityParams, ctx: PrecisionContext):
    x1, x2 = _pair(p)
    w = mpc(p.w)
    S1, S2 = smooth_root(x1, w), smooth_root(x2, w)
    two_pi = 2 * mp.pi

    def lambert(S, x_other):
        def term(n):
            s = S(n)
            e = mp.exp(-two_pi * s / x_other)
            return e / (s * (1 - e))
        return term

    l1 = sum_series(lambert(S1, x2), 1, "none", ctx, "lambert[x1]")
    l2 = sum_series(lambert(S2, x1), 1, "none", ctx, "lambert[x2]")
    lhs = l1.value / x2 - l2.value / x1

    # 1/(x1 S2) - 1/(x2 S1), paired into one O(n^-3) summand
    def paired(n):
        s1, s2 = S1(n), S2(n)
        return w * w * (x2 * x2 - x1 * x1) / (x1 * x2 * s1 * s2 * (x2 * s1 + x1 * s2))

    diff = sum_series(paired, 1, "euler_maclaurin_tail", ctx, "paired_difference")
    coth = lambda z: mp.cosh(z) / mp.sinh(z)
    rhs = (coth(mp.pi * w / x1) / (4 * w * x1) - coth(mp.pi * w / x2) / (4 * w * x2) + diff.value / 2
           + mp.log(x1 / x2) / (2 * x1 * x2))
    return lhs, rhs, [l1, l2, diff]


def eq311_eval(p: IdentityParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
               hypothesis: HypothesisReport | None = None) -> VerificationReport:
    """theta -> 0 form: Lambert series vs. coth terms, paired difference series and a log."""
    params, hypothesis = _prepare("eq3.11", p, ctx, hypothesis, eq311_hypotheses, EQ311_FIELDS)
    if not hypothesis.ok:
        return rejected_report("eq3.11", params, ctx, hypothesis, decay=DecayClass.MONOTONE_POLY)
    with ctx.workdps():
        lhs, rhs, stats = eq311_sides(p, ctx)
        return finish_report("eq3.11", params, lhs, rhs, stats, ctx, hypothesis)
