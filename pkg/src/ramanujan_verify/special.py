"""Closed values: even and odd zeta values, the Dedekind eta function and the
generalized (``w``-deformed) eta transformation.

* ``zeta_even`` -- Euler's formula with exact Bernoulli numbers.
* ``zeta_odd``  -- Ramanujan's formula for zeta(2m+1) solved for the zeta value;
  only exponentially convergent Lambert series remain to be summed.
* ``eta``       -- the q-product ``e^(pi i tau/12) prod (1 - q^n)``.
* ``gen_eta_*`` -- the ratio of the two infinite products with square-root
  shifted exponents, against its closed form with a paired O(n^-3) correction
  sum in the exponent.

Square roots ``sqrt(x^2 n^2 + w^2)`` use the branch continuous in ``n`` and
asymptotic to ``x n`` (see :func:`ramanujan_verify.identities.section3.smooth_root`).
"""

from __future__ import annotations

import cmath
import time
from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .errors import DegenerateInput, DomainError, NotConverged, PoleError
from .numeric import (DEFAULT_CONTEXT, PrecisionContext, SeriesResult, bernoulli, complex_to_json, sum_series,
                      to_mp)
from .identities import hypotheses as H
from .identities.params import (DecayClass, HypothesisReport, VerificationReport, Violation, finish_report,
                                rejected_report)
from .identities.section3 import smooth_root


def _rational(q) -> mpf:
    return mpf(q.numerator) / q.denominator


# ---------------------------------------------------------------------------
# zeta values
# ---------------------------------------------------------------------------

def zeta_even(two_n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """zeta(2n) = (-1)^(n-1) (2 pi)^(2n) B_2n / (2 (2n)!)."""
    if isinstance(two_n, bool) or not isinstance(two_n, int) or two_n < 2 or two_n % 2:
        raise DomainError(f"zeta_even needs an even integer >= 2, got {two_n!r}")
    n = two_n // 2
    with ctx.workdps():
        return (-1) ** (n - 1) * (2 * mp.pi) ** two_n * _rational(bernoulli(two_n)) / (2 * mp.factorial(two_n))


def zeta_formula_lhs(m: int, x1, x2) -> mpc:
    """(2 pi)^(2m+1) sum_{k=0}^{m+1} (-1)^k B_2k B_(2m+2-2k) x2^2k x1^(2m+2-2k) / ((2k)! (2m+2-2k)!)."""
    total = mpc(0)
    for k in range(m + 2):
        coeff = (_rational(bernoulli(2 * k)) * _rational(bernoulli(2 * m + 2 - 2 * k))
                 / (mp.factorial(2 * k) * mp.factorial(2 * m + 2 - 2 * k)))
        total += (-1) ** k * coeff * x2 ** (2 * k) * x1 ** (2 * m + 2 - 2 * k)
    return (2 * mp.pi) ** (2 * m + 1) * total


def zeta_formula_weight(m: int, x1, x2) -> mpc:
    """Coefficient of zeta(2m+1) on the series side: (-1)^m x2 x1^(2m+1) - x1 x2^(2m+1)."""
    return (-1) ** m * x2 * x1 ** (2 * m + 1) - x1 * x2 ** (2 * m + 1)


def _lambert_tail(s: int, a, ctx: PrecisionContext, label: str) -> SeriesResult:
    """sum_n 1/(n^s (e^(2 pi n a) - 1)), Re a > 0."""
    two_pi_a = 2 * mp.pi * a

    def term(n):
        q = mp.exp(-two_pi_a * n)
        return q / (n ** s * (1 - q))

    return sum_series(term, 1, "none", ctx, label)


def zeta_odd_route(s: int, x1, x2, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """zeta(s), s = 2m+1, from Ramanujan's formula instantiated at (x1, x2).

    With coth(y) = 1 + 2/(e^(2y) - 1) the series side is
    W zeta(s) + 2[(-1)^m x2 x1^s L(x2/x1) - x1 x2^s L(x1/x2)], L the Lambert tail.
    """
    m = _odd_index(s)
    with ctx.workdps():
        x1, x2 = to_mp(x1), to_mp(x2)
        weight = zeta_formula_weight(m, x1, x2)
        if abs(weight) <= H._tol(abs(x1 * x2) ** (m + 1)):
            raise DegenerateInput(f"(x1, x2) = ({x1}, {x2}) gives 0 = 0 for s = {s}")
        l12 = _lambert_tail(s, x2 / x1, ctx, "lambert[x2/x1]").value
        l21 = _lambert_tail(s, x1 / x2, ctx, "lambert[x1/x2]").value
        value = (zeta_formula_lhs(m, x1, x2) - 2 * ((-1) ** m * x2 * x1 ** s * l12 - x1 * x2 ** s * l21)) / weight
        return value.real if abs(value.imag) <= ctx.eps * abs(value) else value


def _odd_index(s) -> int:
    if isinstance(s, bool) or not isinstance(s, int) or s < 3 or s % 2 == 0:
        raise DomainError(f"zeta_odd needs an odd integer >= 3, got {s!r}")
    return (s - 1) // 2


def zeta_odd(s: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """zeta(2m+1): the route (x1, x2) = (1, 1) for odd m, (1, 2) for even m (where (1, 1) gives 0 = 0)."""
    m = _odd_index(s)
    return zeta_odd_route(s, 1, 1, ctx) if m % 2 else zeta_odd_route(s, 1, 2, ctx)


# ---------------------------------------------------------------------------
# Dedekind eta
# ---------------------------------------------------------------------------

def _tau(tau) -> mpc:
    tau = to_mp(tau)
    if tau.imag <= 0:
        raise DomainError(f"tau must lie in the upper half plane, got {tau}")
    return tau


def eta(tau, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """eta(tau) = e^(pi i tau/12) prod_{n>=1} (1 - q^n), q = e^(2 pi i tau)."""
    with ctx.workdps():
        tau = _tau(tau)
        q = mp.expjpi(2 * tau)
        bound = ctx.eps
        product = mpc(1)
        qn = q
        n = 1
        while abs(qn) >= bound:
            product *= 1 - qn
            qn *= q
            n += 1
            if n > ctx.max_terms_direct:
                raise NotConverged(f"Im tau too small: the q-product needs more than {ctx.max_terms_direct} factors")
        return mp.expjpi(tau / 12) * product


@dataclass(frozen=True)
class EtaTransformCheck:
    """Both readings of the inversion law: exponent +1/2 (standard) and -1/2 (as printed)."""

    standard_residual: mpf
    printed_residual: mpf

    @property
    def vanishing(self) -> str:
        return "+1/2" if self.standard_residual <= self.printed_residual else "-1/2"


def eta_transform_check(tau, ctx: PrecisionContext = DEFAULT_CONTEXT) -> EtaTransformCheck:
    with ctx.workdps():
        tau = _tau(tau)
        left = eta(-1 / tau, ctx)
        right = eta(tau, ctx)
        root = mp.sqrt(-1j * tau)
        return EtaTransformCheck(abs(left - root * right), abs(left - right / root))


def eta_transform_residual(tau, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """|eta(-1/tau) - (-i tau)^(1/2) eta(tau)| (the exponent that numerically vanishes)."""
    return eta_transform_check(tau, ctx).standard_residual


# ---------------------------------------------------------------------------
# generalized eta transformation
# ---------------------------------------------------------------------------

MIN_FACTORS = 8


@dataclass(frozen=True)
class EtaParams:
    """Deformation ``w`` and scales ``x1, x2`` with positive real parts."""

    w: mpc
    x1: mpc
    x2: mpc

    def __post_init__(self) -> None:
        for name in ("w", "x1", "x2"):
            object.__setattr__(self, name, to_mp(getattr(self, name)))
        if self.x1.real <= 0 or self.x2.real <= 0:
            raise DomainError("x1 and x2 need positive real parts")

    def swapped(self) -> "EtaParams":
        return EtaParams(self.w, self.x2, self.x1)


def gen_eta_hypotheses(p: EtaParams, n_max: int = H.DEFAULT_N_MAX) -> list[Violation]:
    out = []
    hit = H.quadratic_witness(p.x2 * p.x2, p.x1 * p.x1, -p.w * p.w, False, n_max)
    if hit is not None:
        out.append(Violation("resonance", hit[0], hit[1], 0, 1, "x2^2 n^2 + x1^2 k^2 = -w^2"))
    if abs(p.w) > H._tol():
        for i, x in enumerate((p.x1, p.x2)):
            out += H.lattice_pole(-(p.w / x) ** 2, False, "sinh_zero", i,
                                  detail="w = i m x_i: sinh(pi w/x_i) = 0 and a product factor vanishes")
    return out


def _product(scale, other, w, ctx: PrecisionContext, label: str) -> SeriesResult:
    """prod_{n>=1} (1 - e^(-(2 pi/other) sqrt(scale^2 n^2 + w^2))), at least MIN_FACTORS factors."""
    S = smooth_root(scale, w)
    c = 2 * mp.pi / other
    product = mpc(1)
    n = 1
    while True:
        q = mp.exp(-c * S(n))
        factor = 1 - q
        if factor == 0:
            raise DegenerateInput(f"{label}: factor {n} vanishes")
        product *= factor
        if n >= MIN_FACTORS and abs(q) < ctx.eps:
            return SeriesResult(product, n, abs(q), True, "none", label)
        n += 1
        if n > ctx.max_terms_direct:
            raise NotConverged(f"{label}: product did not settle within {ctx.max_terms_direct} factors",
                               SeriesResult(product, n - 1, abs(q), False, "none", label))


def gen_eta_lhs_result(p: EtaParams, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[mpc, list[SeriesResult]]:
    with ctx.workdps():
        top = _product(p.x1, p.x2, p.w, ctx, "product[x1 over x2]")
        bottom = _product(p.x2, p.x1, p.w, ctx, "product[x2 over x1]")
        return top.value / bottom.value, [top, bottom]


def gen_eta_lhs(p: EtaParams, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """Ratio of the two shifted q-products."""
    return gen_eta_lhs_result(p, ctx)[0]


def _sinh_ratio_root(w, x1, x2) -> mpc:
    """sqrt(sinh(pi w/x1)/sinh(pi w/x2)) on the branch fixed by the product expansion

        sinh(pi w/x) = (pi w/x) prod_n (S(n)/(x n))^2,  S the branch of sqrt(x^2 n^2 + w^2) of the products,

    i.e. the root sqrt(x2/x1) prod_n S1(n) x2/(S2(n) x1).  Only the sign is taken
    from the (slowly converging) product, evaluated in double precision with a
    first-order tail correction.
    """
    root = mp.sqrt(mp.sinh(mp.pi * w / x1) / mp.sinh(mp.pi * w / x2))
    w_c, a, b = complex(w), complex(x1), complex(x2)
    count = 64 + int(20 * (abs(w_c) / min(abs(a), abs(b))) ** 2)
    log_sum = cmath.log(cmath.sqrt(b / a))
    for n in range(1, count + 1):
        s1 = a * n * cmath.sqrt(1 + (w_c / (a * n)) ** 2)
        s2 = b * n * cmath.sqrt(1 + (w_c / (b * n)) ** 2)
        log_sum += cmath.log(s1 * b / (s2 * a))
    log_sum += w_c * w_c * (1 / (a * a) - 1 / (b * b)) / (2 * count)
    estimate = cmath.exp(log_sum)
    return root if abs(complex(root) - estimate) <= abs(complex(root) + estimate) else -root


def gen_eta_rhs_result(p: EtaParams, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[mpc, list[SeriesResult]]:
    with ctx.workdps():
        x1, x2, w = p.x1, p.x2, p.w
        pi = mp.pi
        base = pi / 12 * (x1 / x2 - x2 / x1)
        if abs(w) <= H._tol():
            # w -> 0: the power tends to 1 and the sinh ratio to x2/x1
            return mp.sqrt(x2 / x1) * mp.exp(base), []
        denominator = mp.sinh(pi * w / x2)
        if abs(denominator) <= H._tol():
            raise PoleError("sinh(pi w/x2) = 0")
        S1, S2 = smooth_root(x1, w), smooth_root(x2, w)

        # sqrt(x2^2 n^2 + w^2)/x1 - sqrt(x1^2 n^2 + w^2)/x2 - x2 n/x1 + x1 n/x2, paired into one O(n^-3) term
        def correction(n):
            s1, s2 = S1(n), S2(n)
            return w ** 4 * (x2 * x2 - x1 * x1) / (x1 * x2 * (s2 + x2 * n) * (s1 + x1 * n) * (x2 * s1 + x1 * s2))

        res = sum_series(correction, 1, "euler_maclaurin_tail", ctx, "correction_sum")
        power = mp.power(x1 / x2, pi * w * w / (2 * x1 * x2))
        value = power * _sinh_ratio_root(w, x1, x2) * mp.exp(base + pi * res.value)
        return value, [res]


def gen_eta_rhs(p: EtaParams, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """Closed side: power, sinh ratio and exponential with the correction sum."""
    return gen_eta_rhs_result(p, ctx)[0]


def gen_eta_residual(p: EtaParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
                     hypothesis: HypothesisReport | None = None, identity_id: str = "prop4",
                     timing: bool = False) -> VerificationReport:
    """Report comparing the product ratio with its closed form."""
    started = time.perf_counter()
    with ctx.workdps():
        params = {name: complex_to_json(v, ctx.target_digits) for name, v in (("w", p.w), ("x1", p.x1), ("x2", p.x2))}
        if hypothesis is None:
            hypothesis = HypothesisReport(tuple(gen_eta_hypotheses(p)), H.DEFAULT_N_MAX)
        if not hypothesis.ok:
            return rejected_report(identity_id, params, ctx, hypothesis, decay=DecayClass.MONOTONE_POLY)
        lhs, s_left = gen_eta_lhs_result(p, ctx)
        rhs, s_right = gen_eta_rhs_result(p, ctx)
        notes = ("w = 0 evaluated as the analytic limit",) if abs(p.w) <= H._tol() else ()
        elapsed = (time.perf_counter() - started) * 1000 if timing else None
        return finish_report(identity_id, params, lhs, rhs, s_left + s_right, ctx, hypothesis, notes=notes,
                             elapsed_ms=elapsed)


# ---------------------------------------------------------------------------
# classical Lambert-series transformations used as trust anchors
# ---------------------------------------------------------------------------

def log_eta_anchor(alpha, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[mpc, mpc]:
    """sum 1/(n(e^(2n alpha)-1)) - sum 1/(n(e^(2n beta)-1)) vs (beta-alpha)/12 + ln(alpha/beta)/4, alpha beta = pi^2."""
    with ctx.workdps():
        alpha = to_mp(alpha).real
        if alpha <= 0:
            raise DomainError("alpha must be positive")
        beta = mp.pi ** 2 / alpha
        lam = lambda s: sum_series(lambda n: 1 / (n * mp.expm1(2 * n * s)), 1, "none", ctx).value
        return mpc(lam(alpha) - lam(beta)), mpc((beta - alpha) / 12 + mp.log(alpha / beta) / 4)


def cos_cosh_anchor(alpha, eta_angle, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[mpc, mpc]:
    """2 sum cos(2n eta alpha)/(n(e^(2n alpha^2)-1)) - 2 sum cosh(2n eta beta)/(n(e^(2n beta^2)-1))
    vs eta^2 + (beta^2 - alpha^2)/6 + ln(sin(alpha eta)/sinh(beta eta)), alpha beta = pi, 0 < alpha eta < pi."""
    with ctx.workdps():
        alpha, e = to_mp(alpha).real, to_mp(eta_angle).real
        if alpha <= 0 or not 0 < alpha * e < mp.pi:
            raise DomainError("need alpha > 0 and 0 < alpha eta < pi")
        beta = mp.pi / alpha
        a = sum_series(lambda n: mp.cos(2 * n * e * alpha) / (n * mp.expm1(2 * n * alpha ** 2)), 1, "none", ctx)
        b = sum_series(lambda n: (mp.exp(2 * n * beta * (e - beta)) + mp.exp(-2 * n * beta * (e + beta))) / 2
                       / (n * -mp.expm1(-2 * n * beta ** 2)), 1, "none", ctx)
        lhs = 2 * a.value - 2 * b.value
        rhs = e ** 2 + (beta ** 2 - alpha ** 2) / 6 + mp.log(mp.sin(alpha * e) / mp.sinh(beta * e))
        return mpc(lhs), mpc(rhs)
