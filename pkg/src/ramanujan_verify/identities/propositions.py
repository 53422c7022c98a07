"""Evaluators for the multi-index product identities built on the cos and sin kernels.

* cos family:  sum_i sum_{n>=1} (-1)^(n-1) cos(n theta_i)/(x_i^2 n^2 + a_i^2 - t^2) prod_{j!=i} K_j
               = prod_i (cos kernel at sqrt(t^2 - a_i^2), scale x_i)
* sin family:  sum_i x_i sum_{n>=0} (-1)^n sin((2n+1) theta_i)/(x_i^2 (2n+1)^2 + a_i^2 - t^2) prod_{j!=i} S_j
               = (pi/4) prod_i sin(theta_i s_i/x_i) / (s_i cos(pi s_i/(2 x_i)))
* mixed family: the sin family in ``x`` plus a second family in ``y`` whose kernels are
  evaluated at ``1/t^2`` -- the bilateral partial-fraction schema with sin kernels.

Every outer summand is split into unit phases times smooth amplitudes (see
:mod:`.lattice`) and summed with :func:`~ramanujan_verify.numeric.sum_phased`.
"""

from __future__ import annotations

from typing import Sequence

from mpmath import mp, mpc, mpf

from ..errors import DomainError
from ..kernels import cos_kernel_value, sin_kernel_value
from ..numeric import (DEFAULT_CONTEXT, Piece, PrecisionContext, SeriesResult, complex_sqrt,
                       multiply_pieces, sum_phased)
from . import hypotheses as H
from .lattice import (Lattice, cos_factor, cos_outer, hyperbolic_value, sec_factor, sin_factor,
                      sin_outer)
from .params import (HypothesisReport, IdentityParams, VerificationReport, finish_report,
                     rejected_report)

COS_FIELDS = ("thetas", "xs", "as_", "t", "M")
SIN_FIELDS = COS_FIELDS
MIXED_FIELDS = ("thetas", "betas", "xs", "ys", "as_", "bs", "t", "M", "N")


# ---------------------------------------------------------------------------
# Hypotheses
# ---------------------------------------------------------------------------

def cos_family_hypotheses(p: IdentityParams, n_max: int, theta_bound=None) -> list:
    p.check_lengths()
    out = H.resonance(p.xs, p.as_, False, n_max)
    out += H.ratio_condition(p.xs)
    out += H.theta_range(p.thetas, mp.pi if theta_bound is None else theta_bound)
    out += H.kernel_poles(p.xs, p.as_, p.t, odd=False)
    out += H.zero_lattice_points(p.xs, p.as_, odd=False)
    return out


def sin_family_hypotheses(p: IdentityParams, n_max: int, strict_ratio: bool = False,
                          check_theta: bool = True) -> list:
    p.check_lengths(need_theta=check_theta)
    out = H.resonance(p.xs, p.as_, True, n_max)
    out += H.ratio_condition(p.xs, strict=strict_ratio)
    if check_theta:
        out += H.theta_range(p.thetas, mp.pi / 2)
    out += H.kernel_poles(p.xs, p.as_, p.t, odd=True)
    out += H.zero_lattice_points(p.xs, p.as_, odd=True)
    return out


def _cross_points(xs, as_, ys, bs, n_max: int) -> list:
    """X_i(n) Y_j(k) = 1 with X = x^2 (2n+1)^2 + a^2, Y = y^2 (2k+1)^2 + b^2: a hyperbolic factor pole."""
    out = []
    bound = min(n_max, 200)
    for i, (x, a) in enumerate(zip(xs, as_)):
        for j, (y, b) in enumerate(zip(ys, bs)):
            xs_vals = [mpc(x) ** 2 * (2 * n + 1) ** 2 + mpc(a) ** 2 for n in range(bound)]
            ys_vals = [mpc(y) ** 2 * (2 * k + 1) ** 2 + mpc(b) ** 2 for k in range(bound)]
            for n, X in enumerate(xs_vals):
                for k, Y in enumerate(ys_vals):
                    if abs(X * Y - 1) <= mpf(10) ** (-(mp.dps - 10)):
                        out.append(H.Violation("cross_resonance", 2 * n + 1, 2 * k + 1, i, j,
                                               "(x_i^2 n^2 + a_i^2)(y_j^2 k^2 + b_j^2) = 1"))
    return out


def mixed_hypotheses(p: IdentityParams, n_max: int) -> list:
    p.check_lengths(need_y=True)
    out = sin_family_hypotheses(p, n_max)
    out += H.resonance(p.ys, p.bs, True, n_max, family="y")
    out += H.ratio_condition(p.ys, family="y")
    out += H.theta_range(p.betas, mp.pi / 2, name="beta")
    out += H.zero_lattice_points(p.ys, p.bs, odd=True)
    out += H.nonzero(p.t, "t_nonzero", "the y family is evaluated at 1/t^2")
    if abs(mpc(p.t)) > 0:
        inv = 1 / mpc(p.t) ** 2
        for i, (y, b) in enumerate(zip(p.ys, p.bs)):
            out += H.lattice_pole((inv - mpc(b) ** 2) / mpc(y) ** 2, True, "rhs_pole", i,
                                  detail="1/t^2 - b_i^2 = y_i^2 m^2")
    out += _cross_points(p.xs, p.as_, p.ys, p.bs, n_max)
    return out


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _prepare(identity_id: str, p: IdentityParams, ctx: PrecisionContext, hypothesis, check, fields):
    params = p.to_json(ctx.target_digits, fields)
    if hypothesis is None:
        with ctx.workdps():
            hypothesis = HypothesisReport(tuple(check(p, H.DEFAULT_N_MAX)), H.DEFAULT_N_MAX)
    return params, hypothesis


def family_sum(outer: list[Piece], inner: Sequence[list[Piece]], start: int, ctx: PrecisionContext,
               label: str) -> SeriesResult:
    pieces = outer
    for factor in inner:
        pieces = multiply_pieces(pieces, factor)
    return sum_phased(pieces, start, ctx, label)


# ---------------------------------------------------------------------------
# cos family
# ---------------------------------------------------------------------------

def cos_family_sides(p: IdentityParams, ctx: PrecisionContext) -> tuple[mpc, mpc, list[SeriesResult]]:
    """(sum side, product side, series stats) of the cos-kernel product identity."""
    xs, as_, th, t = p.xs, p.as_, p.thetas, mpc(p.t)
    stats = []
    total = mpc(0)
    for i in range(p.M):
        inner = [cos_factor(Lattice.between(xs[i], as_[i], xs[j], as_[j], odd=False), xs[j], th[j])
                 for j in range(p.M) if j != i]
        res = family_sum(cos_outer(xs[i], as_[i], t, th[i]), inner, 1, ctx, f"outer[{i}]")
        stats.append(res)
        total += res.value
    product = mpc(1)
    for i in range(p.M):
        product *= cos_kernel_value(complex_sqrt(t * t - as_[i] ** 2), xs[i], th[i])
    return total, product, stats


def prop1_eval(p: IdentityParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
               hypothesis: HypothesisReport | None = None) -> VerificationReport:
    """Cos-kernel product identity: LHS the M outer series, RHS the product of closed kernels."""
    params, hypothesis = _prepare("prop1", p, ctx, hypothesis, cos_family_hypotheses, COS_FIELDS)
    if not hypothesis.ok:
        return rejected_report("prop1", params, ctx, hypothesis)
    with ctx.workdps():
        lhs, rhs, stats = cos_family_sides(p, ctx)
        return finish_report("prop1", params, lhs, rhs, stats, ctx, hypothesis)


# ---------------------------------------------------------------------------
# sin family
# ---------------------------------------------------------------------------

def sin_product_factor(s, x, theta) -> mpc:
    """sin(theta s/x) / (s cos(pi s/(2x))), with the s -> 0 limit theta/x."""
    return 4 * mpc(x) / mp.pi * sin_kernel_value(s, x, theta)


def sec_product_factor(s, x) -> mpc:
    """1 / (x cos(pi s/(2x))): the theta -> 0 limit of sin_product_factor / theta."""
    return 1 / (mpc(x) * mp.cos(mp.pi * mpc(s) / (2 * mpc(x))))


def sec_outer(xi, ai, t) -> list[Piece]:
    """x_i (-1)^n (2n+1) / (x_i^2 (2n+1)^2 + a_i^2 - t^2)."""
    xi, ai, t = mpc(xi), mpc(ai), mpc(t)
    return [Piece(mpc(-1), lambda n: xi * (2 * n + 1) / (xi * xi * (2 * n + 1) ** 2 + ai * ai - t * t))]


def sin_family_sides(p: IdentityParams, ctx: PrecisionContext, limit: bool = False):
    """(sum side, product side, stats) of the sin-kernel product identity.

    ``limit`` selects the variant divided by prod theta_i with theta_i -> 0, taken
    analytically: sin((2n+1) theta)/theta -> 2n+1 and sin(theta u)/theta -> u.
    """
    xs, as_, t = p.xs, p.as_, mpc(p.t)
    th = p.thetas
    stats = []
    total = mpc(0)
    for i in range(p.M):
        inner = []
        for j in range(p.M):
            if j == i:
                continue
            lat = Lattice.between(xs[i], as_[i], xs[j], as_[j], odd=True)
            inner.append(sec_factor(lat, xs[j]) if limit else sin_factor(lat, xs[j], th[j]))
        outer = sec_outer(xs[i], as_[i], t) if limit else sin_outer(xs[i], as_[i], t, th[i])
        res = family_sum(outer, inner, 0, ctx, f"outer[{i}]")
        stats.append(res)
        total += res.value
    product = mp.pi / 4
    for i in range(p.M):
        s = complex_sqrt(t * t - as_[i] ** 2)
        product *= sec_product_factor(s, xs[i]) if limit else sin_product_factor(s, xs[i], th[i])
    return total, product, stats


def prop2_eval(p: IdentityParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
               hypothesis: HypothesisReport | None = None, limit: bool = False) -> VerificationReport:
    """Sin-kernel product identity over odd lattices; ``limit`` gives the theta-divided form."""
    check = (lambda q, n: sin_family_hypotheses(q, n, check_theta=False)) if limit else sin_family_hypotheses
    fields = tuple(f for f in SIN_FIELDS if not (limit and f == "thetas"))
    params, hypothesis = _prepare("prop2", p, ctx, hypothesis, check, fields)
    if not hypothesis.ok:
        return rejected_report("prop2", params, ctx, hypothesis)
    with ctx.workdps():
        lhs, rhs, stats = sin_family_sides(p, ctx, limit)
        notes = ("theta_i -> 0 limit of the identity divided by prod theta_i",) if limit else ()
        return finish_report("prop2", params, lhs, rhs, stats, ctx, hypothesis, notes=notes)


# ---------------------------------------------------------------------------
# mixed (x and y) family
# ---------------------------------------------------------------------------

def _hyper_pieces(values_u2, scale, beta) -> list[Piece]:
    return [Piece(mpc(1), lambda n: hyperbolic_value(values_u2(n), scale, beta))]


def mixed_sides(p: IdentityParams, ctx: PrecisionContext):
    xs, as_, th = p.xs, p.as_, p.thetas
    ys, bs, be = p.ys, p.bs, p.betas
    t = mpc(p.t)
    if t == 0:
        raise DomainError("the mixed family needs t != 0")
    stats = []
    total = mpc(0)
    # x family: kernels of the y family at b_j^2 - 1/X_i(n)
    for i in range(p.M):
        X = lambda n, _x=xs[i], _a=as_[i]: _x * _x * (2 * n + 1) ** 2 + _a * _a
        inner = [sin_factor(Lattice.between(xs[i], as_[i], xs[j], as_[j], odd=True), xs[j], th[j])
                 for j in range(p.M) if j != i]
        for j in range(p.N):
            u2 = lambda n, _X=X, _y=ys[j], _b=bs[j]: (_b * _b - 1 / _X(n)) / (_y * _y)
            inner.append(_hyper_pieces(u2, ys[j], be[j]))
        res = family_sum(sin_outer(xs[i], as_[i], t, th[i]), inner, 0, ctx, f"x_outer[{i}]")
        stats.append(res)
        total += res.value
    # y family: kernels of the x family at a_j^2 - 1/Y_i(n)
    for i in range(p.N):
        Y = lambda n, _y=ys[i], _b=bs[i]: _y * _y * (2 * n + 1) ** 2 + _b * _b
        yi = mpc(ys[i])
        up, down = mp.expj(be[i]), mp.expj(-be[i])

        def den(n, _Y=Y):
            v = _Y(n)
            return v * (v * t * t - 1)
        outer = [Piece(-up * up, lambda n, _d=den, _c=yi * up: _c / (2j * _d(n))),
                 Piece(-down * down, lambda n, _d=den, _c=yi * down: -_c / (2j * _d(n)))]
        inner = [sin_factor(Lattice.between(ys[i], bs[i], ys[j], bs[j], odd=True), ys[j], be[j])
                 for j in range(p.N) if j != i]
        for j in range(p.M):
            u2 = lambda n, _Y=Y, _x=xs[j], _a=as_[j]: (_a * _a - 1 / _Y(n)) / (_x * _x)
            inner.append(_hyper_pieces(u2, xs[j], th[j]))
        res = family_sum(outer, inner, 0, ctx, f"y_outer[{i}]")
        stats.append(res)
        total += res.value
    product = mp.pi / 4
    for i in range(p.M):
        product *= sin_product_factor(complex_sqrt(t * t - as_[i] ** 2), xs[i], th[i])
    for i in range(p.N):
        product *= hyperbolic_value((bs[i] ** 2 - 1 / (t * t)) / ys[i] ** 2, ys[i], be[i])
    return total, product, stats


def prop3_eval(p: IdentityParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
               hypothesis: HypothesisReport | None = None) -> VerificationReport:
    """Bilateral sin/sinh identity: x-family and y-family series against the two-product RHS."""
    params, hypothesis = _prepare("prop3", p, ctx, hypothesis, mixed_hypotheses, MIXED_FIELDS)
    if not hypothesis.ok:
        return rejected_report("prop3", params, ctx, hypothesis)
    with ctx.workdps():
        lhs, rhs, stats = mixed_sides(p, ctx)
        return finish_report("prop3", params, lhs, rhs, stats, ctx, hypothesis)
