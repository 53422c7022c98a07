"""Arbitrary-precision scalars, series summation strategies and Bernoulli numbers.

Scalars are :mod:`mpmath` numbers (``mpf``/``mpc``) evaluated at the working
precision of a :class:`PrecisionContext`; exact rationals are
:class:`fractions.Fraction`.  Every evaluation in the package runs inside
``with ctx.workdps():`` so results are deterministic for a fixed context.

Summation strategies
--------------------
``none``                  direct partial sums with a three-small-terms stopping rule.
``alternating_cvz``       Cohen--Villegas--Zagier acceleration for ``sum (-1)^n a(n)``.
``euler_maclaurin_tail``  direct head, then integral + Bernoulli corrections for the tail;
                          needs a smooth continuation of the term to real ``n``.

On top of these, :func:`sum_phased` sums series written as ``sum_r z_r^n G_r(n)``
with smooth amplitudes ``G_r``.  Each piece is routed to the strategy that suits
its phase: ``|z| != 1`` direct, ``z = 1`` Euler--Maclaurin, ``z = -1``
Cohen--Villegas--Zagier, and any other unit phase to an Euler transform of the
tail (:func:`_euler_phase`).  Phases so close to 1 that the Euler transform
would need more than ``max_terms_accelerated`` head terms go to
Euler--Maclaurin on the smooth continuation ``e^{n log z} G(n)``
(:func:`_em_phase`, strategy ``euler_maclaurin_phase``).
"""

from __future__ import annotations

import enum
import math
import re
import threading
from contextlib import contextmanager
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from mpmath import mp, mpc, mpf

from .errors import DomainError, NotConverged

Term = Callable[[object], object]


class Acceleration(str, enum.Enum):
    NONE = "none"
    ALTERNATING_CVZ = "alternating_cvz"
    EULER_MACLAURIN_TAIL = "euler_maclaurin_tail"


@dataclass(frozen=True)
class PrecisionContext:
    """Precision and term budget governing one evaluation.

    ``working_digits`` is ``target_digits + guard_digits`` plus
    ``ceil(log10(max_terms_accelerated))`` extra digits that absorb the rounding
    accumulated over the summed terms.
    """

    target_digits: int = 30
    guard_digits: int = 15
    max_terms_direct: int = 10**7
    max_terms_accelerated: int = 10**4
    acceleration: Acceleration | None = None

    def __post_init__(self) -> None:
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be at least 10")
        if not (self.max_terms_direct >= self.max_terms_accelerated >= 8):
            raise ValueError("need max_terms_direct >= max_terms_accelerated >= 8")
        if self.acceleration is not None:
            object.__setattr__(self, "acceleration", Acceleration(self.acceleration))

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits + math.ceil(math.log10(self.max_terms_accelerated))

    @property
    def eps(self) -> mpf:
        """Relative size below which a term is negligible at working precision."""
        return mpf(10) ** (-self.working_digits)

    @property
    def target_eps(self) -> mpf:
        return mpf(10) ** (-self.target_digits)

    def workdps(self, extra: int = 0):
        return mp.workdps(self.working_digits + extra)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return replace(self, target_digits=digits)


DEFAULT_CONTEXT = PrecisionContext()


@dataclass(frozen=True)
class SeriesResult:
    value: mpc
    terms_used: int
    tail_estimate: mpf
    converged: bool
    strategy: str = Acceleration.NONE.value
    label: str = ""

    def summary(self, digits: int) -> dict:
        return {
            "label": self.label,
            "strategy": self.strategy,
            "value": complex_to_json(self.value, digits),
            "terms_used": self.terms_used,
            "tail_estimate": format_number(self.tail_estimate, 3),
            "converged": self.converged,
        }


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def to_mp(value) -> mpc:
    """Convert ints, Fractions, floats, strings, complex and mpmath numbers to ``mpc``."""
    if isinstance(value, Fraction):
        return mpc(mpf(value.numerator) / value.denominator)
    if isinstance(value, str):
        return mpc(parse_number(value))
    return mpc(value)


def complex_sqrt(z) -> mpc:
    """Principal square root: non-negative real part, and non-negative imaginary part on the cut."""
    z = mpc(z)
    root = mp.sqrt(z)
    if root.real < 0 or (root.real == 0 and root.imag < 0):
        root = -root
    return mpc(root)


def cot(z) -> mpc:
    """cot as cos/sin (accurate near the zeros of cot)."""
    z = mpc(z)
    return mp.cos(z) / mp.sin(z)


def coth(z) -> mpc:
    """coth as cosh/sinh (accurate near the zeros of coth on the imaginary axis)."""
    z = mpc(z)
    return mp.cosh(z) / mp.sinh(z)


def is_zero(z, scale=1) -> bool:
    """True when ``|z|`` is below the current working precision relative to ``scale``."""
    return abs(z) <= mpf(10) ** (-(mp.dps - 5)) * max(mpf(1), abs(scale))


def nearest_integer(z) -> int | None:
    """The integer ``k`` with ``z == k`` to working precision, or ``None``."""
    z = mpc(z)
    k = int(mp.nint(z.real))
    return k if is_zero(z - k, k) else None


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact)
# ---------------------------------------------------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def _bernoulli_all(m: int) -> list[Fraction]:
    """B_0..B_m from sum_{j=0}^{m} C(m+1, j) B_j = 0 (so B_1 = -1/2)."""
    table = _BERNOULLI
    if len(table) > m:
        return table
    with _BERNOULLI_LOCK:
        table = list(_BERNOULLI)
        for n in range(len(table), m + 1):
            acc = sum((math.comb(n + 1, j) * table[j] for j in range(n)), Fraction(0))
            table.append(-acc / (n + 1))
        _BERNOULLI[len(_BERNOULLI):] = table[len(_BERNOULLI):]
    return _BERNOULLI


def bernoulli(two_k: int) -> Fraction:
    """Exact B_{2k} as a reduced Fraction."""
    if isinstance(two_k, bool) or not isinstance(two_k, int) or two_k < 0 or two_k % 2:
        raise DomainError(f"bernoulli() needs an even non-negative integer, got {two_k!r}")
    return _bernoulli_all(two_k)[two_k]


def coth_taylor_coefficients(count: int) -> list[Fraction]:
    """c_k with x coth x = sum_k c_k x^{2k}, i.e. c_k = 2^{2k} B_{2k} / (2k)!."""
    return [Fraction(2 ** (2 * k)) * bernoulli(2 * k) / math.factorial(2 * k) for k in range(count)]


def cot_taylor_coefficients(count: int) -> list[Fraction]:
    """c_k with x cot x = sum_k c_k x^{2k}, i.e. c_k = (-1)^k 2^{2k} B_{2k} / (2k)!."""
    return [(-1) ** k * c for k, c in enumerate(coth_taylor_coefficients(count))]


# ---------------------------------------------------------------------------
# Number serialisation
# ---------------------------------------------------------------------------

_NUMBER_RE = re.compile(r"^\s*([-+]?\d+(?:\.\d*)?)e([-+]?\d+)@(\d+)\s*$")


def format_number(x, digits: int) -> str:
    """Precision-tagged decimal string, e.g. ``"1.20205690315959428539973816151e0@30"``."""
    with mp.workdps(max(mp.dps, digits + 5)):  # convert without rounding to the ambient precision
        x = mpf(x)
        if x == 0:
            return f"0.0e0@{digits}"
        if not mp.isfinite(x):
            raise DomainError(f"cannot serialise non-finite number {x}")
        text = mp.nstr(x, digits, min_fixed=1, max_fixed=0, strip_zeros=False)
    mantissa, _, exponent = text.partition("e")
    if "." not in mantissa:
        mantissa += ".0"
    return f"{mantissa}e{int(exponent or 0)}@{digits}"


def parse_number(text: str) -> mpf:
    """Inverse of :func:`format_number`; plain decimal strings are accepted too."""
    match = _NUMBER_RE.match(text)
    if match:
        return mpf(f"{match.group(1)}e{match.group(2)}")
    return mpf(text)


def complex_to_json(z, digits: int) -> dict:
    with mp.workdps(max(mp.dps, digits + 5)):
        z = mpc(z)
    return {"re": format_number(z.real, digits), "im": format_number(z.imag, digits)}


def complex_from_json(obj) -> mpc:
    """Accept ``{"re","im"}`` objects, numbers, strings such as ``"1+2j"``/``"i"``, or [re, im]."""
    if isinstance(obj, dict):
        return mpc(parse_number(str(obj.get("re", "0"))), parse_number(str(obj.get("im", "0"))))
    if isinstance(obj, (list, tuple)) and len(obj) == 2 and all(isinstance(v, (int, float)) for v in obj):
        return mpc(obj[0], obj[1])
    if isinstance(obj, str):
        return parse_scalar_expression(obj)
    if isinstance(obj, bool):
        raise DomainError("booleans are not numbers")
    return to_mp(obj)


_SCALAR_CONSTANTS = {
    "pi": lambda: mpc(+mp.pi), "e": lambda: mpc(+mp.e), "i": lambda: mpc(0, 1),
}
_SCALAR_FUNCTIONS = {
    "sqrt": complex_sqrt, "exp": mp.exp, "log": mp.log, "sin": mp.sin, "cos": mp.cos,
    "expjpi": mp.expjpi,
}


def parse_scalar_expression(text: str) -> mpc:
    """Parse a small arithmetic expression such as ``"1/sqrt(2)"``, ``"pi/2"`` or ``"1+2i"``.

    Only numbers, the names in ``_SCALAR_CONSTANTS``/``_SCALAR_FUNCTIONS`` and ``+ - * / ** ( )`` are allowed;
    numeric literals are read at the current working precision.
    """
    import ast

    tagged = _NUMBER_RE.match(text)
    if tagged:
        return mpc(parse_number(text))
    src = re.sub(r"(?<![A-Za-z_])(\d[\d.]*(?:e[-+]?\d+)?)?[ij]\b",
                 lambda m: f"({m.group(1) or '1'}*i)", text.strip())
    tree = ast.parse(src, mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            raw = ast.get_source_segment(src, node) or repr(node.value)
            return mpc(mpf(raw))
        if isinstance(node, ast.Name) and node.id in _SCALAR_CONSTANTS:
            return _SCALAR_CONSTANTS[node.id]()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = ev(node.operand)
            return v if isinstance(node.op, ast.UAdd) else -v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            ops = {ast.Add: lambda: a + b, ast.Sub: lambda: a - b, ast.Mult: lambda: a * b,
                   ast.Div: lambda: a / b, ast.Pow: lambda: a ** b}
            for op_type, fn in ops.items():
                if isinstance(node.op, op_type):
                    return fn()
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _SCALAR_FUNCTIONS:
            fn = _SCALAR_FUNCTIONS[node.func.id]
            return fn(*[ev(arg) for arg in node.args])
        raise DomainError(f"unsupported expression: {text!r}")

    return mpc(ev(tree))


# ---------------------------------------------------------------------------
# Summation
# ---------------------------------------------------------------------------

def _check_finite(value, n) -> None:
    if not (mp.isfinite(value.real) and mp.isfinite(value.imag)):
        raise NotConverged(f"non-finite term at n={n}")


def _direct(term: Term, n0: int, ctx: PrecisionContext, cap: int, label: str = "") -> SeriesResult:
    eps = ctx.eps
    total = mpc(0)
    small = 0
    growth = 0
    previous = None
    n = n0
    while n < n0 + cap:
        a = mpc(term(n))
        _check_finite(a, n)
        total += a
        mag = abs(a)
        if mag <= eps * max(1, abs(total)):
            small += 1
            if small >= 3:
                return SeriesResult(total, n - n0 + 1, mag, True, Acceleration.NONE.value, label)
        else:
            small = 0
        if previous is not None and mag > previous and mag > 1:
            growth += 1
            if growth >= 64:
                raise NotConverged(f"terms grow without bound near n={n}",
                                   SeriesResult(total, n - n0 + 1, mag, False, Acceleration.NONE.value, label))
        else:
            growth = 0
        previous = mag
        n += 1
    raise NotConverged(f"direct summation reached its cap of {cap} terms",
                       SeriesResult(total, cap, abs(a), False, Acceleration.NONE.value, label))


def _cvz(term: Term, n0: int, ctx: PrecisionContext, label: str = "") -> SeriesResult:
    """Cohen--Villegas--Zagier (Algorithm 1) for sum_{n>=n0} term(n), term(n) = (-1)^n a(n)."""
    digits = ctx.working_digits
    count = min(ctx.max_terms_accelerated, math.ceil(1.31 * digits) + 4)
    d = (3 + mp.sqrt(8)) ** count
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    total = mpc(0)
    biggest = mpf(0)
    for k in range(count):
        a = mpc(term(n0 + k))
        _check_finite(a, n0 + k)
        if k % 2:
            a = -a
        biggest = max(biggest, abs(a))
        c = b - c
        total += c * a
        b = mpf((k + count) * (k - count)) * b / ((k + mpf(1) / 2) * (k + 1))
    value = total / d
    bound = 2 * biggest / d
    converged = bound <= ctx.target_eps * max(1, abs(value))
    result = SeriesResult(value, count, bound, converged, Acceleration.ALTERNATING_CVZ.value, label)
    if not converged:
        raise NotConverged("Cohen-Villegas-Zagier bound above tolerance", result)
    return result


def _em_tail(f: Term, start: int, ctx: PrecisionContext) -> tuple[mpc, mpf]:
    """sum_{n>=start} f(n) via integral + f/2 + Bernoulli derivative corrections."""
    integral, quad_err = mp.quad(f, [start, 2 * start, 8 * start, mp.inf], error=True)
    tail = integral + f(mpf(start)) / 2
    orders = 2 * min(40, ctx.working_digits // 2 + 4)
    coeffs = mp.taylor(f, mpf(start), orders)
    last = None
    for p in range(1, orders // 2 + 1):
        k = 2 * p - 1
        # B_{2p}/(2p)! * f^{(2p-1)}(N) with f^{(k)}/k! = coeffs[k]
        corr = mpf(bernoulli(2 * p).numerator) / bernoulli(2 * p).denominator / (2 * p) * coeffs[k]
        if last is not None and abs(corr) > abs(last):
            break
        tail -= corr
        last = corr
        if abs(corr) <= ctx.eps * max(1, abs(tail)):
            break
    estimate = abs(last) if last is not None else mpf(0)
    return tail, estimate + abs(quad_err)


def _euler_maclaurin(f: Term, n0: int, ctx: PrecisionContext, label: str = "") -> SeriesResult:
    head_end = n0 + max(32, ctx.working_digits)
    head = mp.fsum(mpc(f(n)) for n in range(n0, head_end))
    tail, estimate = _em_tail(f, head_end, ctx)
    value = head + tail
    # scale by the reliably summed head: a garbage tail must not inflate its own tolerance
    converged = estimate <= ctx.target_eps * max(1, abs(head))
    result = SeriesResult(value, head_end - n0 + 2 * max(1, ctx.working_digits // 2),
                          estimate, converged, Acceleration.EULER_MACLAURIN_TAIL.value, label)
    if not converged:
        raise NotConverged("Euler-Maclaurin tail estimate above tolerance", result)
    return result


def sum_series(term: Term, n0: int = 1, strategy: Acceleration | str = Acceleration.NONE,
               ctx: PrecisionContext = DEFAULT_CONTEXT, label: str = "") -> SeriesResult:
    """Sum ``term(n)`` for ``n >= n0`` with the requested strategy at ``ctx`` precision.

    Raises :class:`NotConverged` (carrying the partial :class:`SeriesResult`) when
    the stopping rule cannot be met within the term caps.
    """
    strategy = Acceleration(strategy)
    with ctx.workdps():
        if strategy is Acceleration.NONE:
            return _direct(term, n0, ctx, ctx.max_terms_direct, label)
        if strategy is Acceleration.ALTERNATING_CVZ:
            return _cvz(term, n0, ctx, label)
        return _euler_maclaurin(term, n0, ctx, label)


# ---------------------------------------------------------------------------
# Phase-decomposed series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """One component ``z^n * amplitude(n)`` of a phase-decomposed summand."""

    phase: mpc
    amplitude: Callable[[object], object]


def _snap_phase(z) -> mpc:
    z = mpc(z)
    tiny = mpf(10) ** (-(mp.dps - 8))
    if abs(z - 1) < tiny:
        return mpc(1)
    if abs(z + 1) < tiny:
        return mpc(-1)
    return z


def merge_pieces(pieces: Sequence[Piece]) -> list[Piece]:
    """Combine pieces whose phases coincide to working precision (amplitudes add)."""
    groups: list[tuple[mpc, list]] = []
    for piece in pieces:
        z = _snap_phase(piece.phase)
        for phase, amps in groups:
            if abs(phase - z) <= mpf(10) ** (-(mp.dps - 8)):
                amps.append(piece.amplitude)
                break
        else:
            groups.append((z, [piece.amplitude]))
    merged = []
    for phase, amps in groups:
        if len(amps) == 1:
            merged.append(Piece(phase, amps[0]))
        else:
            merged.append(Piece(phase, lambda n, _amps=tuple(amps): mp.fsum(g(n) for g in _amps)))
    return merged


def multiply_pieces(left: Sequence[Piece], right: Sequence[Piece]) -> list[Piece]:
    """Distribute a product of two phase decompositions."""
    out = []
    for a in left:
        for b in right:
            out.append(Piece(a.phase * b.phase,
                             lambda n, _f=a.amplitude, _g=b.amplitude: _f(n) * _g(n)))
    return merge_pieces(out)


def _integer_power(z: mpc, n: int) -> mpc:
    if z == 1:
        return mpc(1)
    if z == -1:
        return mpc(-1 if n % 2 else 1)
    return z ** n


def _euler_phase_head_len(gap: float, ctx: PrecisionContext) -> int:
    return max(32, math.ceil(2 * ctx.working_digits * math.log(10) / gap))


def _oscillatory_tail_integral(L: mpc, G: Callable[[object], object], start: int,
                               ctx: PrecisionContext) -> tuple[mpc, mpf]:
    """int_start^inf e^(L t) G(t) dt for L = i phi with small phi != 0, on the real axis.

    Quadrature on geometric pieces up to R ~ 1/|phi|, then period-by-period
    integration with extrapolation (``mp.quadosc``).  The error estimate is the
    quadrature error plus the disagreement between the oscillatory tails started
    at R and at 2R.
    """
    phi = abs(L.imag)
    f = lambda t: mp.exp(L * t) * G(t)
    points = [mpf(start)]
    while points[-1] < 1 / phi:
        points.append(points[-1] * 2)
    R = points[-1]
    head, err = mp.quad(f, points + [2 * R], error=True)
    near = mp.quad(f, [R, 2 * R])
    far = mp.quadosc(f, [2 * R, mp.inf], omega=phi)
    check = mp.quadosc(f, [R, mp.inf], omega=phi)
    return head + far, mpf(err) + abs(near + far - check)


def _em_phase(piece: Piece, n0: int, ctx: PrecisionContext, label: str) -> SeriesResult:
    """sum_{n>=n0} z^n G(n) for a unit phase z near 1: Euler--Maclaurin on e^(n log z) G(n)."""
    L = mpc(0, mp.arg(piece.phase))
    G = piece.amplitude
    f = lambda t: mp.exp(L * t) * G(t)
    start = n0 + max(32, ctx.working_digits)
    head = mp.fsum(_integer_power(piece.phase, n) * G(n) for n in range(n0, start))
    integral, estimate = _oscillatory_tail_integral(L, G, start, ctx)
    tail = integral + f(mpf(start)) / 2
    orders = 2 * min(40, ctx.working_digits // 2 + 4)
    coeffs = mp.taylor(f, mpf(start), orders)
    last = None
    for p in range(1, orders // 2 + 1):
        corr = mpf(bernoulli(2 * p).numerator) / bernoulli(2 * p).denominator / (2 * p) * coeffs[2 * p - 1]
        if last is not None and abs(corr) > abs(last):
            break
        tail -= corr
        last = corr
        if abs(corr) <= ctx.eps * max(1, abs(tail)):
            break
    estimate += abs(last) if last is not None else mpf(0)
    value = mpc(head + tail)
    converged = estimate <= ctx.target_eps * max(1, abs(head))
    return SeriesResult(value, start - n0 + 2 * orders, estimate, converged, "euler_maclaurin_phase", label)


def _euler_phase(piece: Piece, n0: int, ctx: PrecisionContext, label: str) -> SeriesResult:
    """sum_{n>=n0} z^n G(n) for |z| = 1, z != 1, via an Euler transform of the tail.

    With w = z/(1-z) the tail obeys
    sum_{n>=N} z^n G(n) = z^N/(1-z) * sum_j w^j (Delta^j G)(N),
    whose terms shrink like j!/(N|1-z|)^j; N is chosen so that N|1-z| is large
    and the forward differences are formed at raised precision to absorb their
    cancellation.
    """
    z, G = piece.phase, piece.amplitude
    gap = abs(1 - z)
    digits = ctx.working_digits
    head_len = _euler_phase_head_len(float(gap), ctx)
    capped = head_len > ctx.max_terms_accelerated
    head_len = min(head_len, ctx.max_terms_accelerated)
    N = n0 + head_len
    head = mp.fsum(_integer_power(z, n) * G(n) for n in range(n0, N))
    max_j = 160
    extra = math.ceil(max_j * math.log10(2 / float(gap))) + 10
    with mp.workdps(digits + extra):
        samples = [mpc(G(N + k)) for k in range(max_j + 1)]
        row = samples
        w = z / (1 - z)
        prefactor = (z ** N) / (1 - z)
        tail = mpc(0)
        best = None
        small = 0
        rising = 0
        used = 0
        for j in range(max_j + 1):
            t = prefactor * row[0]
            tail += t
            used = j + 1
            mag = abs(t)
            if best is not None and mag > best:
                rising += 1
                if rising >= 3:
                    break
            else:
                rising = 0
            best = mag if best is None else min(best, mag)
            if mag <= ctx.eps * max(1, abs(head + tail)):
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
            row = [row[k + 1] - row[k] for k in range(len(row) - 1)]
            prefactor *= w
            if not row:
                break
    value = mpc(head + tail)
    estimate = mpf(best)
    # scale by the head: a diverging tail must not inflate its own tolerance
    converged = estimate <= ctx.target_eps * max(1, abs(head))
    strategy = "euler_phase_capped" if capped else "euler_phase"
    return SeriesResult(value, head_len + used, estimate, converged, strategy, label)


def _sum_piece(piece: Piece, n0: int, ctx: PrecisionContext, label: str) -> SeriesResult:
    z, G = piece.phase, piece.amplitude
    forced = ctx.acceleration
    unit = abs(abs(z) - 1) < mpf(10) ** (-(mp.dps - 8))
    if forced is Acceleration.NONE or not unit:
        return _direct(lambda n: _integer_power(z, n) * G(n), n0, ctx, ctx.max_terms_direct, label)
    # Exponentially decaying amplitudes finish quickly under plain summation.
    probe = min(96, ctx.max_terms_accelerated)
    try:
        return _direct(lambda n: _integer_power(z, n) * G(n), n0, ctx, probe, label)
    except NotConverged:
        pass
    if z == 1 or forced is Acceleration.EULER_MACLAURIN_TAIL:
        if z != 1:
            return _euler_phase(piece, n0, ctx, label)
        return _euler_maclaurin(G, n0, ctx, label)
    if z == -1:
        return _cvz(lambda n: _integer_power(z, n) * G(n), n0, ctx, label)
    if _euler_phase_head_len(float(abs(1 - z)), ctx) > ctx.max_terms_accelerated:
        return _em_phase(piece, n0, ctx, label)
    return _euler_phase(piece, n0, ctx, label)


def sum_phased(pieces: Sequence[Piece], n0: int = 1, ctx: PrecisionContext = DEFAULT_CONTEXT,
               label: str = "") -> SeriesResult:
    """Sum ``sum_n sum_r z_r^n G_r(n)`` piece by piece (see the module docstring)."""
    with ctx.workdps():
        results = [_sum_piece(p, n0, ctx, label) for p in merge_pieces(pieces)]
        value = mp.fsum(r.value for r in results)
        estimate = mp.fsum(r.tail_estimate for r in results)
        converged = all(r.converged for r in results)
        strategies = "+".join(sorted({r.strategy for r in results})) or Acceleration.NONE.value
        terms = max((r.terms_used for r in results), default=0)
        result = SeriesResult(mpc(value), terms, estimate, converged, strategies, label)
    if not converged:
        raise NotConverged(f"series {label!r} did not reach the target precision", result)
    return result


@contextmanager
def working_precision(ctx: PrecisionContext, extra: int = 0) -> Iterator[None]:
    with ctx.workdps(extra):
        yield
