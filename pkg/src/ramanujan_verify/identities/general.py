"""The general product combinators over arbitrary pole/residue expansions.

Given functions ``f_i(z) = sum_n R_i(n)/(c_i(n) - z)`` (each a
:class:`~.params.FunctionExpansion`):

* one family:
  ``prod_i f_i((t - a_i)/x_i) = sum_i x_i sum_n R_i(n)/(x_i c_i(n) + a_i - t)
  prod_{j != i} f_j((x_i c_i(n) + a_i - a_j)/x_j)``;
* two families ``f_i`` (scales ``x``, shifts ``a``) and ``g_i`` (``y``, ``b``), the
  second evaluated at ``1/t``; the first sum gains the factors
  ``g_j(1/(y_j X_i(n)) - b_j/y_j)`` and a second sum over the ``g`` poles
  ``Y_i(n) = y_i l_i(n) + b_i`` appears:
  ``y_i sum_n P_i(n)/(Y_i(n) (Y_i(n) t - 1)) prod_j f_j(1/(x_j Y_i(n)) - a_j/x_j)
  prod_{j != i} g_j((Y_i(n) - b_j)/y_j)``.

Inner factors are evaluated through the closed forms; they are smooth in ``n``
unless the inner argument runs along the poles of the inner function (e.g. a
positive real scale ratio with positive real poles).  Then the factor
oscillates with ``n``, no acceleration applies, and the outer series is summed
directly under a bounded term budget.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from mpmath import mp, mpc, mpf

from ..errors import DomainError
from ..numeric import (DEFAULT_CONTEXT, Acceleration, Piece, PrecisionContext, SeriesResult, complex_sqrt,
                       sum_phased)
from . import hypotheses as H
from .lattice import _upper, cos_over_sin, sin_over_cos_half
from .params import (DecayClass, FunctionExpansion, HypothesisReport, Violation, VerificationReport,
                     finish_report, rejected_report)

#: term budget for outer series whose inner factors oscillate (real scale ratios)
DIRECT_BUDGET = 10 ** 5


# ---------------------------------------------------------------------------
# Expansion factories
# ---------------------------------------------------------------------------

def cos_expansion(theta) -> FunctionExpansion:
    """z -> sum_{n>=1} (-1)^(n-1) cos(n theta)/(n^2 - z): the cos kernel at sqrt(z) with unit scale."""
    theta = mpc(theta)
    pi = +mp.pi

    def closed(z):
        z = mpc(z)
        if z == 0:
            return (theta * theta / 4 - pi * pi / 12)
        u = _upper(complex_sqrt(z))
        return pi * cos_over_sin(theta, u, pi) / (2 * u) - 1 / (2 * z)

    up, down = mp.expj(theta), mp.expj(-theta)
    return FunctionExpansion(
        residue=lambda n: -((-up) ** n + (-down) ** n) / 2,
        pole=lambda n: n * n,
        closed_form=closed,
        decay_class=DecayClass.ALTERNATING_POLY,
        start=1,
        residue_pieces=((-up, lambda n: mpc(-0.5)), (-down, lambda n: mpc(-0.5))),
        name=f"cos_kernel(theta={mp.nstr(theta, 8)})",
    )


def sin_expansion(theta) -> FunctionExpansion:
    """z -> sum_{n>=0} (-1)^n sin((2n+1) theta)/((2n+1)^2 - z): the sin kernel at sqrt(z), unit scale."""
    theta = mpc(theta)
    pi = +mp.pi

    def closed(z):
        z = mpc(z)
        if z == 0:
            return pi * theta / 4
        u = _upper(complex_sqrt(z))
        return pi * sin_over_cos_half(theta, u, pi) / (4 * u)

    up, down = mp.expj(theta), mp.expj(-theta)
    return FunctionExpansion(
        residue=lambda n: (-1) ** n * mp.sin((2 * n + 1) * theta),
        pole=lambda n: (2 * n + 1) ** 2,
        closed_form=closed,
        decay_class=DecayClass.ALTERNATING_POLY,
        start=0,
        residue_pieces=((-up * up, lambda n: up / 2j), (-down * down, lambda n: -down / 2j)),
        name=f"sin_kernel(theta={mp.nstr(theta, 8)})",
    )


def _inverse_square_closed(pi):
    zeta2 = pi * pi / 6

    def closed(z):
        z = mpc(z)
        if z == 0:
            return mpc(zeta2)
        u = _upper(complex_sqrt(z))
        return 1 / (2 * z) - pi * cos_over_sin(pi, u, pi) / (2 * u)
    return closed


def inverse_square_expansion() -> FunctionExpansion:
    """z -> sum_{n>=1} 1/(n^2 - z) = 1/(2z) - pi cot(pi sqrt z)/(2 sqrt z)."""
    return FunctionExpansion(residue=lambda n: mpc(1), pole=lambda n: n * n,
                             closed_form=_inverse_square_closed(+mp.pi),
                             decay_class=DecayClass.MONOTONE_POLY, start=1, name="sum 1/(n^2 - z)")


def inverse_fourth_expansion() -> FunctionExpansion:
    """z -> sum_{n>=1} 1/(n^4 - z) = (F(sqrt z) - F(-sqrt z))/(2 sqrt z) with F the inverse-square function."""
    pi = +mp.pi
    square = _inverse_square_closed(pi)
    zeta4 = pi ** 4 / 90

    def closed(z):
        z = mpc(z)
        if z == 0:
            return mpc(zeta4)
        r = complex_sqrt(z)
        return (square(r) - square(-r)) / (2 * r)

    return FunctionExpansion(residue=lambda n: mpc(1), pole=lambda n: n ** 4, closed_form=closed,
                             decay_class=DecayClass.MONOTONE_POLY, start=1, name="sum 1/(n^4 - z)")


def expansion_self_check(f: FunctionExpansion, points: Sequence, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Largest relative gap between ``closed_form`` and the pole/residue series on ``points``."""
    worst = mpf(0)
    with ctx.workdps():
        for z in points:
            z = mpc(z)
            pieces = [Piece(mpc(ph), lambda n, _a=amp: _a(n) / (f.pole(n) - z)) for ph, amp in f.pieces()]
            series = sum_phased(pieces, f.start, ctx, f"self_check[{f.name}]").value
            closed = f.closed_form(z)
            worst = max(worst, abs(series - closed) / max(1, abs(closed)))
    return worst


# ---------------------------------------------------------------------------
# Hypotheses
# ---------------------------------------------------------------------------

def _pole_hits(f: FunctionExpansion, z, n_max: int, condition: str, i: int, detail: str) -> list[Violation]:
    """z = c(n) for some n < n_max: the closed form is evaluated on a pole."""
    z = complex(mpc(z))
    for n in range(f.start, f.start + n_max):
        c = complex(f.pole(n))
        if abs(c - z) <= 1e-9 * max(1.0, abs(c)):
            if abs(mpc(f.pole(n)) - mpc(z)) <= H._tol(abs(c)):
                return [Violation(condition, n, None, i, None, detail)]
        if abs(c) > 4 * abs(z) + 4 and abs(c) > abs(complex(f.pole(n - 1 if n > f.start else n))):
            break
    return []


def theorem5_hypotheses(fs: Sequence[FunctionExpansion], xs, as_, t, n_max: int) -> list[Violation]:
    out = H.generic_resonance([f.pole for f in fs], [f.start for f in fs], xs, as_, min(n_max, 2000))
    for i, f in enumerate(fs):
        out += _pole_hits(f, (mpc(t) - mpc(as_[i])) / mpc(xs[i]), n_max, "lhs_pole", i,
                          "(t - a_i)/x_i is a pole of f_i")
    return out


def theorem6_hypotheses(fs, gs, xs, as_, ys, bs, t, n_max: int) -> list[Violation]:
    out = theorem5_hypotheses(fs, xs, as_, t, n_max)
    out += H.generic_resonance([g.pole for g in gs], [g.start for g in gs], ys, bs, min(n_max, 2000), family="y")
    out += H.nonzero(t, "t_nonzero", "the g family is evaluated at 1/t")
    if abs(mpc(t)) > 0:
        for i, g in enumerate(gs):
            out += _pole_hits(g, (1 / mpc(t) - mpc(bs[i])) / mpc(ys[i]), n_max, "lhs_pole", i,
                              "(1/t - b_i)/y_i is a pole of g_i")
    return out


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _along_poles(scale_ratio, outer: FunctionExpansion, inner: FunctionExpansion) -> bool:
    """True when the inner argument ``~ scale_ratio * c_outer(n)`` runs along the poles of ``inner``.

    Then the inner closed form passes close to a pole again and again and is
    not smooth in ``n``; otherwise it tends smoothly to its asymptotic form.
    """
    far = 10 ** 6
    d1 = mpc(scale_ratio) * outer.pole(far + outer.start)
    d2 = mpc(inner.pole(far + inner.start))
    if d1 == 0 or d2 == 0:
        return False
    return abs(d1 / abs(d1) - d2 / abs(d2)) < mpf(10) ** -6


def _outer_sum(pieces: list[Piece], start: int, oscillating: bool, ctx: PrecisionContext, label: str,
               notes: list) -> SeriesResult:
    if oscillating:
        notes.append(f"{label}: real scale ratio, inner factors oscillate; direct summation "
                     f"(budget {DIRECT_BUDGET} terms)")
        ctx = replace(ctx, acceleration=Acceleration.NONE,
                      max_terms_direct=max(ctx.max_terms_accelerated, min(ctx.max_terms_direct, DIRECT_BUDGET)))
    return sum_phased(pieces, start, ctx, label)


def theorem5_sides(fs: Sequence[FunctionExpansion], xs, as_, t, ctx: PrecisionContext):
    """(product side, sum side, stats, notes) of the one-family combinator."""
    xs, as_, t = [mpc(v) for v in xs], [mpc(v) for v in as_], mpc(t)
    M = len(fs)
    stats, notes = [], []
    total = mpc(0)
    for i, f in enumerate(fs):
        xi, ai = xs[i], as_[i]
        X = lambda n, _f=f, _x=xi, _a=ai: _x * _f.pole(n) + _a

        def factor(n, _i=i, _X=X):
            value = mpc(1)
            Xn = _X(n)
            for j in range(M):
                if j != _i:
                    value *= fs[j].closed_form((Xn - as_[j]) / xs[j])
            return value

        pieces = [Piece(mpc(ph), lambda n, _amp=amp, _X=X, _fac=factor, _x=xi: _x * _amp(n) / (_X(n) - t) * _fac(n))
                  for ph, amp in f.pieces()]
        oscillating = any(_along_poles(xi / xs[j], f, fs[j]) for j in range(M) if j != i)
        res = _outer_sum(pieces, f.start, oscillating, ctx, f"f[{i}]", notes)
        stats.append(res)
        total += res.value
    product = mpc(1)
    for i, f in enumerate(fs):
        product *= f.closed_form((t - as_[i]) / xs[i])
    return product, total, stats, notes


def theorem6_sides(fs, gs, xs, as_, ys, bs, t, ctx: PrecisionContext):
    """(product side, sum side, stats, notes) of the two-family combinator."""
    xs, as_, ys, bs, t = ([mpc(v) for v in xs], [mpc(v) for v in as_], [mpc(v) for v in ys],
                          [mpc(v) for v in bs], mpc(t))
    M, N = len(fs), len(gs)
    stats, notes = [], []
    total = mpc(0)
    for i, f in enumerate(fs):
        xi, ai = xs[i], as_[i]
        X = lambda n, _f=f, _x=xi, _a=ai: _x * _f.pole(n) + _a

        def factor(n, _i=i, _X=X):
            Xn = _X(n)
            value = mpc(1)
            for j in range(N):
                value *= gs[j].closed_form(1 / (ys[j] * Xn) - bs[j] / ys[j])
            for j in range(M):
                if j != _i:
                    value *= fs[j].closed_form((Xn - as_[j]) / xs[j])
            return value

        pieces = [Piece(mpc(ph), lambda n, _amp=amp, _X=X, _fac=factor, _x=xi: _x * _amp(n) / (_X(n) - t) * _fac(n))
                  for ph, amp in f.pieces()]
        oscillating = any(_along_poles(xi / xs[j], f, fs[j]) for j in range(M) if j != i)
        res = _outer_sum(pieces, f.start, oscillating, ctx, f"f[{i}]", notes)
        stats.append(res)
        total += res.value
    for i, g in enumerate(gs):
        yi, bi = ys[i], bs[i]
        Y = lambda n, _g=g, _y=yi, _b=bi: _y * _g.pole(n) + _b

        def factor(n, _i=i, _Y=Y):
            Yn = _Y(n)
            value = mpc(1)
            for j in range(M):
                value *= fs[j].closed_form(1 / (xs[j] * Yn) - as_[j] / xs[j])
            for j in range(N):
                if j != _i:
                    value *= gs[j].closed_form((Yn - bs[j]) / ys[j])
            return value

        pieces = [Piece(mpc(ph), lambda n, _amp=amp, _Y=Y, _fac=factor, _y=yi:
                        _y * _amp(n) / (_Y(n) * (_Y(n) * t - 1)) * _fac(n))
                  for ph, amp in g.pieces()]
        oscillating = any(_along_poles(yi / ys[j], g, gs[j]) for j in range(N) if j != i)
        res = _outer_sum(pieces, g.start, oscillating, ctx, f"g[{i}]", notes)
        stats.append(res)
        total += res.value
    product = mpc(1)
    for i, f in enumerate(fs):
        product *= f.closed_form((t - as_[i]) / xs[i])
    for i, g in enumerate(gs):
        product *= g.closed_form((1 / t - bs[i]) / ys[i])
    return product, total, stats, notes


def _params_json(names: Sequence[str], values: dict, digits: int) -> dict:
    from ..numeric import complex_to_json
    out = {}
    for key in names:
        v = values[key]
        if isinstance(v, (list, tuple)):
            out[key] = [complex_to_json(mpc(z), digits) for z in v]
        else:
            out[key] = complex_to_json(mpc(v), digits)
    return out


def _check_sizes(fs, xs, as_, family: str) -> None:
    if len(xs) != len(fs) or len(as_) != len(fs):
        raise DomainError(f"{family} family: {len(fs)} functions but {len(xs)} scales and {len(as_)} shifts")
    if any(mpc(x) == 0 for x in xs):
        raise DomainError(f"{family} family scales must be non-zero")


def theorem5_eval(fs: Sequence[FunctionExpansion], xs, as_, t, ctx: PrecisionContext = DEFAULT_CONTEXT,
                  hypothesis: HypothesisReport | None = None, identity_id: str = "thm5",
                  params: dict | None = None) -> VerificationReport:
    """lhs = product of the closed forms, rhs = the outer series (see the module docstring)."""
    _check_sizes(fs, xs, as_, "f")
    with ctx.workdps():
        if params is None:
            params = _params_json(("xs", "as_", "t"), {"xs": xs, "as_": as_, "t": t}, ctx.target_digits)
            params["functions"] = [f.name for f in fs]
        if hypothesis is None:
            hypothesis = HypothesisReport(tuple(theorem5_hypotheses(fs, xs, as_, t, H.DEFAULT_N_MAX)),
                                          H.DEFAULT_N_MAX)
        if not hypothesis.ok:
            return rejected_report(identity_id, params, ctx, hypothesis)
        lhs, rhs, stats, notes = theorem5_sides(fs, xs, as_, t, ctx)
        return finish_report(identity_id, params, lhs, rhs, stats, ctx, hypothesis, notes=notes)


def theorem6_eval(fs, gs, xs, as_, ys, bs, t, ctx: PrecisionContext = DEFAULT_CONTEXT,
                  hypothesis: HypothesisReport | None = None, identity_id: str = "thm6",
                  params: dict | None = None) -> VerificationReport:
    """Two-family combinator; an empty ``gs`` reduces to :func:`theorem5_eval`'s identity."""
    _check_sizes(fs, xs, as_, "f")
    _check_sizes(gs, ys, bs, "g")
    if mpc(t) == 0:
        raise DomainError("t must be non-zero: the g family is evaluated at 1/t")
    with ctx.workdps():
        if params is None:
            params = _params_json(("xs", "as_", "ys", "bs", "t"),
                                  {"xs": xs, "as_": as_, "ys": ys, "bs": bs, "t": t}, ctx.target_digits)
            params["functions"] = [f.name for f in fs] + [g.name for g in gs]
        if hypothesis is None:
            hypothesis = HypothesisReport(tuple(theorem6_hypotheses(fs, gs, xs, as_, ys, bs, t, H.DEFAULT_N_MAX)),
                                          H.DEFAULT_N_MAX)
        if not hypothesis.ok:
            return rejected_report(identity_id, params, ctx, hypothesis)
        lhs, rhs, stats, notes = theorem6_sides(fs, gs, xs, as_, ys, bs, t, ctx)
        return finish_report(identity_id, params, lhs, rhs, stats, ctx, hypothesis, notes=notes)
