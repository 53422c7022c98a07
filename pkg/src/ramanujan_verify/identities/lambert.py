"""Generalized Lambert series identity with exponents ``M >= N >= 1``.

The left side carries two pure power series

    sum_n 1 / (n^(2N - N/M) (n^(2N) - c2)),   sum_n 1 / (n^(2M - M/N) (n^(2M) - c1))

(``c2 = t^(2MN)/x2^(2MN)``, ``c1 = -(-1)^(M-1) t^(2MN)/x1^(2MN)``) and, for every
root-of-unity phase, a Lambert-type series with weights ``1/(e^(E_r(n)) - 1)``.
The right side is a rational term, two Bernoulli terms (exact ``B_2M``, ``B_2N``)
and the product of a coth phase sum and a cot phase sum.

A Lambert factor whose exponent has negative real part is rewritten with
``1/(e^E - 1) = -1 - 1/(e^(-E) - 1)``, which turns it into minus the power
series plus an exponentially convergent remainder; an exponent on the imaginary
axis gives an oscillating, non-absolutely convergent series and is reported as
not converged.
"""

from __future__ import annotations

from mpmath import mp, mpc, mpf

from ..errors import DomainError, NotConverged
from ..numeric import DEFAULT_CONTEXT, PrecisionContext, SeriesResult, bernoulli, cot, coth, sum_series
from . import hypotheses as H
from .params import (DecayClass, HypothesisReport, IdentityParams, VerificationReport, Violation,
                     finish_report, rejected_report)

PROP8_FIELDS = ("xs", "t", "M", "N")


def _exponents(p: IdentityParams) -> tuple[int, int, mpc, mpc, mpc]:
    M, N = p.M, p.N
    if len(p.xs) != 2:
        raise DomainError(f"two scales x1, x2 are required, got {len(p.xs)}")
    x1, x2 = (mpc(v) for v in p.xs)
    return M, N, x1, x2, mpc(p.t)


def _perfect_power_root(value, power: int) -> int | None:
    """Natural ``n`` with ``n^power = value``, else None."""
    value = mpc(value)
    if abs(value.imag) > H._tol(value) or value.real < 1 - H._tol():
        return None
    n = int(mp.nint(value.real ** (mpf(1) / power)))
    if n >= 1 and abs(mpf(n) ** power - value.real) <= H._tol(value):
        return n
    return None


def prop8_hypotheses(p: IdentityParams, n_max: int) -> list[Violation]:
    M, N, x1, x2, t = _exponents(p)
    if N < 1 or M < N:
        return [Violation("exponent_range", None, None, None, None, f"need M >= N >= 1, got M={M}, N={N}")]
    if x1 == 0 or x2 == 0:
        raise DomainError("x1 and x2 must be non-zero")
    out = H.nonzero(t, "t_nonzero", "t = 0 is a pole of the right-hand side")
    # x1^(2MN) n^(2M) + (-1)^(M-1) x2^(2MN) k^(2N) = 0  <=>  n^(2M) = rho k^(2N)
    rho = -(-1) ** (M - 1) * x2 ** (2 * M * N) / x1 ** (2 * M * N)
    if abs(rho.imag) <= H._tol(rho) and rho.real > 0:
        for k in range(1, n_max + 1):
            n = _perfect_power_root(rho.real * mpf(k) ** (2 * N), 2 * M)
            if n is not None and n <= n_max:
                out.append(Violation("resonance", n, k, 0, 1,
                                     "x1^(2MN) n^(2M) + (-1)^(M-1) x2^(2MN) k^(2N) = 0"))
                break
    if not out:
        T = t ** (2 * M * N)
        c2 = T / x2 ** (2 * M * N)
        c1 = -(-1) ** (M - 1) * T / x1 ** (2 * M * N)
        for name, c, power in (("lhs_pole", c2, 2 * N), ("lhs_pole", c1, 2 * M)):
            n = _perfect_power_root(c, power)
            if n is not None:
                out.append(Violation(name, n, None, None, None, "a power-series denominator vanishes"))
        for r in range(M):
            z = t ** N * mp.expjpi(mpf(r) / M) / x1 ** N
            if H._near_integer(z / 1j) is not None:
                out.append(Violation("rhs_pole", None, None, r, None, "coth phase sum is singular"))
        for r in range(N):
            z = t ** M * mp.expjpi(mpf(r) / N) / x2 ** M
            if H._near_integer(z) is not None:
                out.append(Violation("rhs_pole", None, None, r, None, "cot phase sum is singular"))
    return out


def _lambert_sum(power_term, exponent, ctx: PrecisionContext, power_sum: SeriesResult,
                 label: str) -> tuple[mpc, list[SeriesResult]]:
    """sum_n power_term(n) / (e^(exponent(n)) - 1) with the exponent's real part made positive."""
    lead = mpc(exponent(1))
    if abs(lead.real) <= H._tol(lead):
        raise NotConverged(f"{label}: Lambert exponent on the imaginary axis, the series is not absolutely convergent")
    if lead.real > 0:
        res = sum_series(lambda n: power_term(n) * _inv_expm1(exponent(n)), 1, "none", ctx, label)
        return res.value, [res]
    res = sum_series(lambda n: power_term(n) * _inv_expm1(-exponent(n)), 1, "none", ctx, label)
    return -power_sum.value - res.value, [res]


def _inv_expm1(E) -> mpc:
    """1/(e^E - 1) for Re E > 0, written with the decaying exponential."""
    q = mp.exp(-E)
    return q / (1 - q)


def prop8_sides(p: IdentityParams, ctx: PrecisionContext):
    M, N, x1, x2, t = _exponents(p)
    pi = +mp.pi
    MN = M * N
    T = t ** (2 * MN)
    c2 = T / x2 ** (2 * MN)
    c1 = -(-1) ** (M - 1) * T / x1 ** (2 * MN)
    p1 = 2 * N - mpf(N) / M
    p2 = 2 * M - mpf(M) / N
    # root-of-unity phases, computed once
    phase_m = [mp.expjpi(mpf(r) / M) for r in range(M)]
    phase_n = [mp.expjpi(mpf(r) / N) for r in range(N)]

    A = pi * x2 ** (N - 2 * MN) / (M * x1 ** (N - 2 * MN))
    B = mp.expjpi(mpf(M - N) / (2 * N)) * pi * x1 ** (M - 2 * MN) / (N * x2 ** (M - 2 * MN))
    term1 = lambda n: 1 / (n ** p1 * (n ** (2 * N) - c2))
    term2 = lambda n: 1 / (n ** p2 * (n ** (2 * M) - c1))
    s1 = sum_series(term1, 1, "euler_maclaurin_tail", ctx, "power_series[N]")
    s2 = sum_series(term2, 1, "euler_maclaurin_tail", ctx, "power_series[M]")
    stats = [s1, s2]
    lhs = A / (1 - phase_m[1] if M > 1 else 2) * s1.value
    lhs += B / (1 - phase_n[1] if N > 1 else 2) * s2.value
    ratio_n = (x2 / x1) ** N
    for r in range(M):
        E = lambda n, _z=phase_m[r]: 2 * mpf(n) ** (mpf(N) / M) * pi * _z * ratio_n
        value, res = _lambert_sum(term1, E, ctx, s1, f"lambert[M, r={r}]")
        stats += res
        lhs += A * phase_m[r] * value
    ratio_m = (x1 / x2) ** M
    for r in range(N):
        z = mp.expjpi((r + mpf(M) / 2 - mpf(N) / 2) / N)
        F = lambda n, _z=z: 2 * mpf(n) ** (mpf(M) / N) * pi * _z * ratio_m
        value, res = _lambert_sum(term2, F, ctx, s2, f"lambert[N, r={r}]")
        stats += res
        lhs += B * phase_n[r] * value

    def b(k):
        q = bernoulli(k)
        return mpf(q.numerator) / q.denominator

    rhs = x1 ** (2 * MN) * x2 ** (2 * MN) / (4 * t ** (4 * MN))
    rhs += x2 ** (2 * MN) * (2 * pi) ** (2 * M) * b(2 * M) / (4 * T * mp.factorial(2 * M))
    rhs += x1 ** (2 * MN) * (-1) ** N * (2 * pi) ** (2 * N) * b(2 * N) / (4 * T * mp.factorial(2 * N))
    coth_sum = mp.fsum(z * coth(pi * t ** N * z / x1 ** N) for z in phase_m)
    cot_sum = mp.fsum(z * cot(pi * t ** M * z / x2 ** M) for z in phase_n)
    rhs -= (pi ** 2 * x1 ** (2 * MN - N) * x2 ** (2 * MN - M) / (4 * MN * t ** (4 * MN - N - M))
            * coth_sum * cot_sum)
    return lhs, rhs, stats


def prop8_eval(p: IdentityParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
               hypothesis: HypothesisReport | None = None) -> VerificationReport:
    """Generalized Lambert series identity (power, Lambert-type, Bernoulli and phase-sum terms)."""
    params = p.to_json(ctx.target_digits, PROP8_FIELDS)
    if hypothesis is None:
        with ctx.workdps():
            hypothesis = HypothesisReport(tuple(prop8_hypotheses(p, H.DEFAULT_N_MAX)), H.DEFAULT_N_MAX)
    if not hypothesis.ok:
        return rejected_report("prop8", params, ctx, hypothesis, decay=DecayClass.MONOTONE_POLY)
    with ctx.workdps():
        lhs, rhs, stats = prop8_sides(p, ctx)
        return finish_report("prop8", params, lhs, rhs, stats, ctx, hypothesis)
