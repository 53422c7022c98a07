"""Evaluators for the specializations of the cos/sin product identities.

Each entry supplies a hypothesis check and a ``sides`` function returning
``(lhs, rhs, series stats, notes)``; :func:`cor4_family_eval` dispatches on the
registry id.  The fixed numerical instances (cot and coth series at
``a = (1, 1/sqrt 2)`` and ``a = (1/sqrt 2, 1/sqrt 3)``, and the exponential form
of the sech series) are evaluated in their printed form with hard-wired constants.

Series whose summand tends smoothly to a power of ``n`` (cot/coth series) use
Euler--Maclaurin; alternating series with sech/sinh weights decay exponentially
and are summed directly through the phase machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from mpmath import mp, mpc, mpf

from ..errors import DomainError, UnknownIdentity
from ..numeric import DEFAULT_CONTEXT, Piece, PrecisionContext, complex_sqrt, cot, coth, sum_phased, sum_series
from ..special import zeta_formula_lhs, zeta_formula_weight
from . import hypotheses as H
from .lattice import Lattice, cos_factor, cot_factor, hyperbolic_value, scale_pieces, sec_factor
from .params import (DecayClass, HypothesisReport, IdentityParams, VerificationReport, Violation,
                     finish_report, rejected_report)
from .propositions import family_sum, sin_family_hypotheses, sin_family_sides

Sides = Callable[[IdentityParams, PrecisionContext], tuple]


# ---------------------------------------------------------------------------
# Small helpers
# ---------------------------------------------------------------------------

def _need(values, count: int, name: str) -> tuple:
    if len(values) != count:
        raise DomainError(f"{name} needs exactly {count} entries, got {len(values)}")
    return tuple(mpc(v) for v in values)


def _nonzero_scales(xs) -> None:
    if any(x == 0 for x in xs):
        raise DomainError("scales x_i must be non-zero")


def _cot_ratio(d, x) -> mpc:
    """cot(pi sqrt(d)/x) / (x sqrt(d)), even in sqrt(d); ``d = 0`` is a pole."""
    r = complex_sqrt(d)
    return cot(mp.pi * r / x) / (x * r)


def _sech(v) -> mpc:
    """1/cosh(v) without overflow (cosh is even, so evaluate at Re v >= 0)."""
    v = mpc(v)
    if v.real < 0:
        v = -v
    e = mp.exp(-v)
    return 2 * e / (1 + e * e)


def _size_violation(p: IdentityParams, count: int) -> list[Violation]:
    if p.M != count:
        return [Violation("family_size", None, None, None, None, f"this entry needs M = {count}, got M = {p.M}")]
    return []


# ---------------------------------------------------------------------------
# theta = pi cos family
# ---------------------------------------------------------------------------

def _brace(s2, x) -> mpc:
    """1/(2 s^2) - pi cot(pi s/x)/(2 x s) at s^2 = ``s2``; the s -> 0 limit is pi^2/(6 x^2)."""
    s2, x = mpc(s2), mpc(x)
    if abs(s2) <= mpf(10) ** (-(mp.dps - 5)):
        return mp.pi ** 2 / (6 * x * x)
    s = complex_sqrt(s2)
    return 1 / (2 * s2) - mp.pi * cot(mp.pi * s / x) / (2 * x * s)


def cor41_hypotheses(p: IdentityParams, n_max: int) -> list:
    p.check_lengths(need_theta=False)
    out = H.resonance(p.xs, p.as_, False, n_max)
    out += H.ratio_condition(p.xs)
    out += H.kernel_poles(p.xs, p.as_, p.t, odd=False)
    out += H.zero_lattice_points(p.xs, p.as_, odd=False)
    return out


def cor41_sides(p: IdentityParams, ctx: PrecisionContext):
    xs, as_, t = p.xs, p.as_, mpc(p.t)
    pi = +mp.pi
    stats = []
    lhs = mpc(0)
    for i in range(p.M):
        xi, ai = mpc(xs[i]), mpc(as_[i])
        # {1/(2q) - pi cot(pi sqrt(q)/x_j)/(2 x_j sqrt(q))} is minus the cos kernel at theta = pi
        inner = [scale_pieces(cos_factor(Lattice.between(xi, ai, xs[j], as_[j], odd=False), xs[j], pi), -1)
                 for j in range(p.M) if j != i]
        outer = [Piece(mpc(1), lambda n, _x=xi, _a=ai: 1 / (_x * _x * n * n + _a * _a - t * t))]
        res = family_sum(outer, inner, 1, ctx, f"outer[{i}]")
        stats.append(res)
        lhs += res.value
    rhs = mpc(1)
    for x, a in zip(xs, as_):
        rhs *= _brace(t * t - mpc(a) ** 2, x)
    return lhs, rhs, stats, ()


# ---------------------------------------------------------------------------
# cot-pair family (M = 2, theta -> pi with the cot kernel)
# ---------------------------------------------------------------------------

def _cot_series(x1, a1, x2, a2, t, ctx: PrecisionContext):
    """sum_n {cot-factor_12/(x1^2 n^2 + a1^2 - t^2) + cot-factor_21/(x2^2 n^2 + a2^2 - t^2)}."""
    stats = []
    total = mpc(0)
    for i, (xi, ai, xj, aj) in enumerate(((x1, a1, x2, a2), (x2, a2, x1, a1))):
        inner = [cot_factor(Lattice.between(xi, ai, xj, aj, odd=False), xj)]
        outer = [Piece(mpc(1), lambda n, _x=xi, _a=ai: 1 / (_x * _x * n * n + _a * _a - t * t))]
        res = family_sum(outer, inner, 1, ctx, f"cot_series[{i}]")
        stats.append(res)
        total += res.value
    return total, stats


def _cot_constants(x1, a1, x2, a2, t) -> mpc:
    """cot(pi sqrt(d)/x2)/((t^2 - a1^2) x2 sqrt(d)) + swap, d = a1^2 - a2^2 (pole pair combined at d = 0)."""
    d = a1 * a1 - a2 * a2
    if abs(d) <= mpf(10) ** (-(mp.dps - 5)) * max(1, abs(a1 * a1)):
        return -(mp.pi / 3) * (1 / x1 ** 2 + 1 / x2 ** 2) / (t * t - a1 * a1)
    return _cot_ratio(d, x2) / (t * t - a1 * a1) + _cot_ratio(-d, x1) / (t * t - a2 * a2)


def _cot_pair_hypotheses(xs, as_, t, n_max: int) -> list:
    out = H.resonance(xs, as_, False, n_max)
    out += H.ratio_condition(xs)
    out += H.zero_lattice_points(xs, as_, odd=False)
    d = as_[0] ** 2 - as_[1] ** 2
    out += H.lattice_pole(d / xs[1] ** 2, False, "constant_pole", 1, detail="a1^2 - a2^2 = x2^2 m^2")
    out += H.lattice_pole(-d / xs[0] ** 2, False, "constant_pole", 0, detail="a2^2 - a1^2 = x1^2 m^2")
    for i, (x, a) in enumerate(zip(xs, as_)):
        out += H.lattice_pole((t * t - a * a) / x ** 2, False, "rhs_pole", i, allow_zero=False,
                              detail="t^2 - a_i^2 = x_i^2 m^2 (m >= 0)")
    return out


def cor43_hypotheses(p: IdentityParams, n_max: int) -> list:
    xs, as_ = _need(p.xs, 2, "x"), _need(p.as_, 2, "a")
    _nonzero_scales(xs)
    return _cot_pair_hypotheses(xs, as_, mpc(p.t), n_max)


def cor43_sides(p: IdentityParams, ctx: PrecisionContext):
    (x1, x2), (a1, a2), t = p.xs, p.as_, mpc(p.t)
    series, stats = _cot_series(x1, a1, x2, a2, t, ctx)
    lhs = _cot_constants(x1, a1, x2, a2, t) - 2 * series
    s1, s2 = complex_sqrt(t * t - a1 * a1), complex_sqrt(t * t - a2 * a2)
    rhs = mp.pi * cot(mp.pi * s1 / x1) * cot(mp.pi * s2 / x2) / (x1 * x2 * s1 * s2)
    return lhs, rhs, stats, ()


def cor44_hypotheses(p: IdentityParams, n_max: int) -> list:
    as_ = _need(p.as_, 2, "a")
    return _cot_pair_hypotheses((mpc(1), mpc(1)), as_, mpc(0), n_max)


def cor44_sides(p: IdentityParams, ctx: PrecisionContext):
    a1, a2 = p.as_
    one = mpc(1)
    series, stats = _cot_series(one, a1, one, a2, mpc(0), ctx)
    d = a1 * a1 - a2 * a2
    lhs = _cot_ratio(d, one) / (a1 * a1) + _cot_ratio(-d, one) / (a2 * a2) + 2 * series
    rhs = -mp.pi * coth(mp.pi * a1) * coth(mp.pi * a2) / (a1 * a2)
    return lhs, rhs, stats, ()


def _printed_cot_series(a1_sq, a2_sq, ctx: PrecisionContext):
    """sum_n {cot(pi sqrt(n^2 + d))/((n^2 + a1^2) sqrt(n^2 + d)) + cot(pi sqrt(n^2 - d))/((n^2 + a2^2) sqrt(n^2 - d))}."""
    d = a1_sq - a2_sq
    one = mpc(1)
    stats = []
    total = mpc(0)
    for i, (shift, own) in enumerate(((d, a1_sq), (-d, a2_sq))):
        lat = Lattice(one, mpc(shift), False, True)
        outer = [Piece(one, lambda n, _o=own: 1 / (n * n + _o))]
        res = family_sum(outer, [cot_factor(lat, one)], 1, ctx, f"cot_series[{i}]")
        stats.append(res)
        total += res.value
    return total, stats


def eq45_sides(p: IdentityParams, ctx: PrecisionContext):
    lhs, stats = _printed_cot_series(mpf(1), mpf(1) / 2, ctx)
    r2, pi = mp.sqrt(2), mp.pi
    rhs = r2 * coth(r2 * pi / 2) - r2 / 2 * cot(r2 * pi / 2) - pi * r2 / 2 * coth(pi) * coth(r2 * pi / 2)
    return lhs, rhs, stats, ()


def eq46_sides(p: IdentityParams, ctx: PrecisionContext):
    lhs, stats = _printed_cot_series(mpf(1) / 2, mpf(1) / 3, ctx)
    r2, r3, r6, pi = mp.sqrt(2), mp.sqrt(3), mp.sqrt(6), mp.pi
    rhs = (3 * r6 / 2 * coth(r6 * pi / 6) - r6 * pi / 2 * coth(r2 * pi / 2) * coth(r3 * pi / 3)
           - r6 * cot(r6 * pi / 6))
    return lhs, rhs, stats, ()


# ---------------------------------------------------------------------------
# coth series from the (1, i) scales
# ---------------------------------------------------------------------------

def _coth_series(a1_sq, a2_sq, ctx: PrecisionContext):
    d = a1_sq - a2_sq

    def term(n):
        r = complex_sqrt(n * n + d)
        return (2 * n * n + d) * coth(mp.pi * r) / ((n * n + a1_sq) * (n * n - a2_sq) * r)

    return sum_series(term, 1, "euler_maclaurin_tail", ctx, "coth_series")


def cor47_hypotheses(p: IdentityParams, n_max: int) -> list:
    a1, a2 = _need(p.as_, 2, "a")
    out = []
    hit = H.quadratic_witness(1, 1, a2 * a2 - a1 * a1, False, n_max)
    if hit is not None:
        out.append(Violation("sum_of_squares", hit[0], hit[1], None, None, "a2^2 - a1^2 = n^2 + k^2"))
    out += H.lattice_pole(a2 * a2, False, "a2_pole", 1, allow_zero=False, detail="a2 = m: cot(pi a2)/a2 is singular")
    out += H.lattice_pole(-a1 * a1, False, "a1_pole", 0, allow_zero=False,
                          detail="a1 = i m: coth(pi a1)/a1 is singular")
    out += H.lattice_pole(a2 * a2 - a1 * a1, False, "zero_argument", None,
                          detail="n^2 + a1^2 - a2^2 = 0")
    return out


def cor47_sides(p: IdentityParams, ctx: PrecisionContext):
    a1, a2 = p.as_
    res = _coth_series(a1 * a1, a2 * a2, ctx)
    d = a1 * a1 - a2 * a2
    if abs(d) <= mpf(10) ** (-(mp.dps - 5)):
        lead = 1 / (mp.pi * 2 * a1 ** 2 * a2 ** 2)
    else:
        r = complex_sqrt(d)
        lead = r * coth(mp.pi * r) / (2 * a1 ** 2 * a2 ** 2)
    rhs = lead - mp.pi * coth(mp.pi * a1) * cot(mp.pi * a2) / (2 * a1 * a2)
    return res.value, rhs, [res], ()


def eq48_sides(p: IdentityParams, ctx: PrecisionContext):
    res = _coth_series(mpf(1) / 2, mpf(1) / 3, ctx)
    r2, r3, r6, pi = mp.sqrt(2), mp.sqrt(3), mp.sqrt(6), mp.pi
    rhs = r6 / 2 * coth(pi * r6 / 6) - pi * r6 / 2 * coth(pi * r2 / 2) * cot(pi * r3 / 3)
    return res.value, rhs, [res], ()


# ---------------------------------------------------------------------------
# coth-cot reciprocity and Ramanujan's zeta(2m+1) formula
# ---------------------------------------------------------------------------

def _coth_cot_hypotheses(x1, x2, n_max: int) -> list:
    out = []
    hit = H.quadratic_witness(x1 * x1, x2 * x2, 0, False, n_max)
    if hit is not None:
        out.append(Violation("x_resonance", hit[0], hit[1], 0, 1, "x1^2 n^2 + x2^2 k^2 = 0"))
    return out


def cor410_hypotheses(p: IdentityParams, n_max: int) -> list:
    x1, x2 = _need(p.xs, 2, "x")
    _nonzero_scales((x1, x2))
    out = _coth_cot_hypotheses(x1, x2, n_max)
    out += H.lattice_pole(x2 * x2, False, "cot_pole", 1, detail="x2 = m: cot(pi x2) is singular")
    out += H.lattice_pole(-x1 * x1, False, "coth_pole", 0, detail="x1 = i m: coth(pi x1) is singular")
    return out


def cor410_sides(p: IdentityParams, ctx: PrecisionContext):
    x1, x2 = p.xs
    pi = mp.pi
    s1 = sum_series(lambda n: coth(n * pi * x2 / x1) / (n * (n * n + x1 * x1)), 1, "euler_maclaurin_tail", ctx,
                    "coth_series[x2/x1]")
    s2 = sum_series(lambda n: coth(n * pi * x1 / x2) / (n * (n * n - x2 * x2)), 1, "euler_maclaurin_tail", ctx,
                    "coth_series[x1/x2]")
    lhs = pi ** 2 * x1 * x2 * coth(pi * x1) * cot(pi * x2)
    rhs = 1 + pi ** 2 / 3 * (x1 * x1 - x2 * x2) - 2 * pi * x1 * x2 * (x1 * x1 * s1.value + x2 * x2 * s2.value)
    return lhs, rhs, [s1, s2], ()


def eq412_hypotheses(p: IdentityParams, n_max: int) -> list:
    alpha = mpc(p.alpha if p.alpha is not None else 0)
    if abs(alpha.imag) > H._tol(alpha) or alpha.real <= 0:
        return [Violation("alpha_range", None, None, None, None, "alpha must be real and positive")]
    beta = mp.pi ** 2 / alpha.real
    w = mpc(p.w)
    out = H.nonzero(w, "w_nonzero", "w = 0 is a pole of both sides")
    if not out:
        out += H.lattice_pole(w / beta, False, "cot_pole", detail="w = m^2 beta: cot(sqrt(w alpha)) is singular")
        out += H.lattice_pole(-w / alpha.real, False, "coth_pole",
                              detail="w = -m^2 alpha: coth(sqrt(w beta)) is singular")
    return out


def eq412_sides(p: IdentityParams, ctx: PrecisionContext):
    alpha = mpc(p.alpha).real
    beta = mp.pi ** 2 / alpha
    w = mpc(p.w)
    # n alpha coth(n alpha)/(w + n^2 alpha) + n beta coth(n beta)/(w - n^2 beta), split into an O(n^-3)
    # rational part and two exponentially small parts (coth y = 1 + 2/(e^{2y} - 1))
    rational = sum_series(lambda n: n * w * (alpha + beta) / ((w + n * n * alpha) * (w - n * n * beta)), 1,
                          "euler_maclaurin_tail", ctx, "rational_part")

    def lambert(scale, sign):
        return lambda n: 2 * n * scale * mp.exp(-2 * n * scale) / (
            (w + sign * n * n * scale) * (1 - mp.exp(-2 * n * scale)))

    e_alpha = sum_series(lambert(alpha, 1), 1, "none", ctx, "exponential_part[alpha]")
    e_beta = sum_series(lambert(beta, -1), 1, "none", ctx, "exponential_part[beta]")
    r = complex_sqrt(w)
    lhs = mp.pi / 2 * cot(r * mp.sqrt(alpha)) * coth(r * mp.sqrt(beta))
    rhs = 1 / (2 * w) + mp.log(beta / alpha) / 2 + rational.value + e_alpha.value + e_beta.value
    return lhs, rhs, [rational, e_alpha, e_beta], ()


def eq415_hypotheses(p: IdentityParams, n_max: int) -> list:
    x1, x2 = _need(p.xs, 2, "x")
    _nonzero_scales((x1, x2))
    m = p.m
    if m is None or m < 1:
        return [Violation("m_range", None, None, None, None, "m must be an integer >= 1")]
    out = _coth_cot_hypotheses(x1, x2, n_max)
    weight = zeta_formula_weight(m, x1, x2)
    if abs(weight) <= H._tol(abs(x1 * x2) ** (m + 1)):
        out.append(Violation("degenerate", None, None, None, None,
                             "(-1)^m x2 x1^(2m+1) = x1 x2^(2m+1): both sides reduce to 0 = 0"))
    return out


def eq415_sides(p: IdentityParams, ctx: PrecisionContext):
    x1, x2 = p.xs
    m = p.m
    s = 2 * m + 1
    pi = mp.pi
    s1 = sum_series(lambda n: coth(n * pi * x2 / x1) / n ** s, 1, "euler_maclaurin_tail", ctx, "coth_series[x2/x1]")
    s2 = sum_series(lambda n: coth(n * pi * x1 / x2) / n ** s, 1, "euler_maclaurin_tail", ctx, "coth_series[x1/x2]")
    lhs = zeta_formula_lhs(m, x1, x2)
    rhs = (-1) ** m * x2 * x1 ** s * s1.value - x1 * x2 ** s * s2.value
    return lhs, rhs, [s1, s2], ()


# ---------------------------------------------------------------------------
# sin family with M = 2 and its hyperbolic form
# ---------------------------------------------------------------------------

def cor416_hypotheses(p: IdentityParams, n_max: int) -> list:
    return _size_violation(p, 2) or sin_family_hypotheses(p, n_max)


def cor416_sides(p: IdentityParams, ctx: PrecisionContext):
    lhs, rhs, stats = sin_family_sides(p, ctx)
    return lhs, rhs, stats, ()


def cor418_hypotheses(p: IdentityParams, n_max: int) -> list:
    x1, x2 = _need(p.xs, 2, "x")
    _need(p.thetas, 2, "theta")
    _nonzero_scales((x1, x2))
    t = mpc(p.t)
    out = H.theta_range(p.thetas, mp.pi / 2)
    hit = H.quadratic_witness(x1 * x1, x2 * x2, 0, True, n_max)
    if hit is not None:
        out.append(Violation("x_resonance", hit[0], hit[1], 0, 1, "x1^2 n^2 + x2^2 k^2 = 0 (odd n, k)"))
    out += H.lattice_pole((x1 * t) ** 2, True, "rhs_pole", 0, detail="x1 t = odd m: cos(pi x1 t/2) = 0")
    out += H.lattice_pole(-(x2 * t) ** 2, True, "rhs_pole", 1, detail="x2 t = i odd m: cosh(pi x2 t/2) = 0")
    return out


def _odd_hyperbolic_series(sin_angle, sinh_angle, ratio, den_sign, scale, t, ctx, label):
    """sum_n (-1)^n sin(m sin_angle) sinh(m sinh_angle ratio) / (m (m^2 + den_sign t^2 scale^2) cosh(m pi ratio/2))."""
    pi = +mp.pi
    up, down = mp.expj(sin_angle), mp.expj(-sin_angle)

    def weight(n):
        m = 2 * n + 1
        v = m * ratio
        # sinh(beta v)/cosh(pi v/2) = v * [sinh(beta v)/(v cosh(pi v/2))], the bracket even in v
        return v * hyperbolic_value(v * v, 1, sinh_angle, pi) / (m * (m * m + den_sign * t * t * scale * scale))

    pieces = [Piece(-up * up, lambda n: up * weight(n) / 2j), Piece(-down * down, lambda n: -down * weight(n) / 2j)]
    return sum_phased(pieces, 0, ctx, label)


def cor418_sides(p: IdentityParams, ctx: PrecisionContext):
    x1, x2 = p.xs
    th1, th2 = (mpc(v) for v in p.thetas)
    t = mpc(p.t)
    pi = mp.pi
    if abs(t) <= mpf(10) ** (-(mp.dps - 5)):
        lhs = pi * th1 * th2 * x1 * x2 / 4
    else:
        lhs = (pi * mp.sin(th1 * x1 * t) * mp.sinh(th2 * x2 * t)
               / (4 * t * t * mp.cos(pi * x1 * t / 2) * mp.cosh(pi * x2 * t / 2)))
    r1 = _odd_hyperbolic_series(th2, th1, x1 / x2, 1, x2, t, ctx, "series[x2]")
    r2 = _odd_hyperbolic_series(th1, th2, x2 / x1, -1, x1, t, ctx, "series[x1]")
    rhs = x2 * x2 * r1.value + x1 * x1 * r2.value
    return lhs, rhs, [r1, r2], ()


# ---------------------------------------------------------------------------
# theta-divided sin family: sech series
# ---------------------------------------------------------------------------

def cor419_hypotheses(p: IdentityParams, n_max: int) -> list:
    a1, a2 = _need(p.as_, 2, "a")
    out = []
    hit = H.quadratic_witness(1, 1, a2 * a2 - a1 * a1, True, n_max)
    if hit is not None:
        out.append(Violation("sum_of_odd_squares", hit[0], hit[1], None, None, "a2^2 - a1^2 = n^2 + k^2, n, k odd"))
    out += H.lattice_pole(a2 * a2, True, "rhs_pole", 1, detail="a2 = odd m: cos(pi a2/2) = 0")
    out += H.lattice_pole(-a1 * a1, True, "rhs_pole", 0, detail="a1 = i odd m: cosh(pi a1/2) = 0")
    return out


def _sech_series(a1_sq, a2_sq, ctx: PrecisionContext, label: str):
    d = a1_sq - a2_sq

    def amp(n):
        m = 2 * n + 1
        return m * (2 * m * m + d) * _sech(mp.pi / 2 * complex_sqrt(m * m + d)) / ((m * m + a1_sq) * (m * m - a2_sq))

    return sum_phased([Piece(mpc(-1), amp)], 0, ctx, label)


def cor419_sides(p: IdentityParams, ctx: PrecisionContext):
    a1, a2 = p.as_
    res = _sech_series(a1 * a1, a2 * a2, ctx, "sech_series")
    rhs = mp.pi / (4 * mp.cosh(mp.pi * a1 / 2) * mp.cos(mp.pi * a2 / 2))
    return res.value, rhs, [res], ()


def eq420_sides(p: IdentityParams, ctx: PrecisionContext):
    d = mpf(1) / 6

    def amp(n):
        m = 2 * n + 1
        v = mp.pi / 2 * mp.sqrt(m * m + d)
        # e^v / (e^{2v} + 1), written with decaying exponentials
        weight = mp.exp(-v) / (1 + mp.exp(-2 * v))
        return m * (2 * m * m + d) * weight / ((m * m + mpf(1) / 2) * (m * m - mpf(1) / 3))

    res = sum_phased([Piece(mpc(-1), amp)], 0, ctx, "exponential_series")
    rhs = mp.pi / (8 * mp.cosh(mp.pi * mp.sqrt(2) / 4) * mp.cos(mp.pi * mp.sqrt(3) / 6))
    return res.value, rhs, [res], ()


def cor421_hypotheses(p: IdentityParams, n_max: int) -> list:
    return sin_family_hypotheses(p, n_max, strict_ratio=True, check_theta=False)


def cor421_sides(p: IdentityParams, ctx: PrecisionContext):
    # the theta-divided sin family multiplied through by prod x_i
    lhs, rhs, stats = sin_family_sides(p, ctx, limit=True)
    scale = mpc(1)
    for x in p.xs:
        scale *= x
    return lhs * scale, rhs * scale, stats, ()


def _zero_shifts(p: IdentityParams) -> IdentityParams:
    return replace(p, as_=tuple(mpc(0) for _ in p.xs))


def cor422_hypotheses(p: IdentityParams, n_max: int) -> list:
    return _size_violation(p, 3) or cor421_hypotheses(_zero_shifts(p), n_max)


def cor422_sides(p: IdentityParams, ctx: PrecisionContext):
    return cor421_sides(_zero_shifts(p), ctx)


def cor423_hypotheses(p: IdentityParams, n_max: int) -> list:
    _nonzero_scales(p.xs)
    if len(p.xs) < 2:
        return [Violation("family_size", None, None, None, None, "at least two scales are required")]
    return H.ratio_condition(p.xs, strict=True)


def cor423_sides(p: IdentityParams, ctx: PrecisionContext):
    xs = [mpc(x) for x in p.xs]
    zero = mpc(0)
    stats = []
    lhs = mpc(0)
    for i, xi in enumerate(xs):
        # x_j sec_factor = 1/cos((2n+1) pi x_i/(2 x_j))
        inner = [scale_pieces(sec_factor(Lattice.between(xi, zero, xj, zero, odd=True), xj), xj)
                 for j, xj in enumerate(xs) if j != i]
        res = family_sum([Piece(mpc(-1), lambda n: 1 / mpc(2 * n + 1))], inner, 0, ctx, f"outer[{i}]")
        stats.append(res)
        lhs += res.value
    return lhs, mp.pi / 4, stats, ()


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorollaryEntry:
    hypotheses: Callable[[IdentityParams, int], list]
    sides: Sides
    fields: tuple
    nominal_decay: DecayClass


def _no_hypotheses(p: IdentityParams, n_max: int) -> list:
    return []


_MONO, _EXP = DecayClass.MONOTONE_POLY, DecayClass.EXPONENTIAL
_FAMILY = ("xs", "as_", "t", "M")

ENTRIES: dict[str, CorollaryEntry] = {
    "cor4.1": CorollaryEntry(cor41_hypotheses, cor41_sides, _FAMILY, _MONO),
    "cor4.3": CorollaryEntry(cor43_hypotheses, cor43_sides, ("xs", "as_", "t"), _MONO),
    "cor4.4": CorollaryEntry(cor44_hypotheses, cor44_sides, ("as_",), _MONO),
    "eq4.5": CorollaryEntry(_no_hypotheses, eq45_sides, ("as_",), _MONO),
    "eq4.6": CorollaryEntry(_no_hypotheses, eq46_sides, ("as_",), _MONO),
    "cor4.7": CorollaryEntry(cor47_hypotheses, cor47_sides, ("as_",), _MONO),
    "eq4.8": CorollaryEntry(_no_hypotheses, eq48_sides, ("as_",), _MONO),
    "cor4.10": CorollaryEntry(cor410_hypotheses, cor410_sides, ("xs",), _MONO),
    "eq4.12": CorollaryEntry(eq412_hypotheses, eq412_sides, ("alpha", "w"), _MONO),
    "eq4.15": CorollaryEntry(eq415_hypotheses, eq415_sides, ("xs", "m"), _MONO),
    "cor4.16": CorollaryEntry(cor416_hypotheses, cor416_sides, ("thetas",) + _FAMILY, _EXP),
    "cor4.18": CorollaryEntry(cor418_hypotheses, cor418_sides, ("thetas", "xs", "t"), _EXP),
    "cor4.19": CorollaryEntry(cor419_hypotheses, cor419_sides, ("as_",), _EXP),
    "eq4.20": CorollaryEntry(_no_hypotheses, eq420_sides, ("as_",), _EXP),
    "cor4.21": CorollaryEntry(cor421_hypotheses, cor421_sides, _FAMILY, _EXP),
    "cor4.22": CorollaryEntry(cor422_hypotheses, cor422_sides, ("xs", "t", "M"), _EXP),
    "cor4.23": CorollaryEntry(cor423_hypotheses, cor423_sides, ("xs", "M"), _EXP),
}


def cor4_hypotheses(identity_id: str, p: IdentityParams, n_max: int = H.DEFAULT_N_MAX) -> HypothesisReport:
    entry = _entry(identity_id)
    return HypothesisReport(tuple(entry.hypotheses(p, n_max)), n_max)


def _entry(identity_id: str) -> CorollaryEntry:
    try:
        return ENTRIES[identity_id]
    except KeyError:
        raise UnknownIdentity(f"no corollary evaluator for {identity_id!r}") from None


def cor4_family_eval(identity_id: str, p: IdentityParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
                     hypothesis: HypothesisReport | None = None) -> VerificationReport:
    """Evaluate one specialization: hypotheses first, then both sides independently."""
    entry = _entry(identity_id)
    params = p.to_json(ctx.target_digits, entry.fields)
    if hypothesis is None:
        with ctx.workdps():
            hypothesis = cor4_hypotheses(identity_id, p)
    if not hypothesis.ok:
        return rejected_report(identity_id, params, ctx, hypothesis, decay=entry.nominal_decay)
    with ctx.workdps():
        lhs, rhs, stats, notes = entry.sides(p, ctx)
        return finish_report(identity_id, params, lhs, rhs, stats, ctx, hypothesis, notes=notes)
