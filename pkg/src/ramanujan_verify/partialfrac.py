"""Exact-rational checks of the partial-fraction schemas behind every identity.

Each ``check_*`` function evaluates ``LHS - RHS`` of one decomposition in
:class:`fractions.Fraction` arithmetic and returns the exact difference, which
is ``Fraction(0)`` on every valid input.  Inputs that would make a denominator
vanish raise :class:`~ramanujan_verify.errors.DegenerateInput` before any
division happens.

Schemas (``prod'`` omits ``j = i``):

simple       1/prod(x_i - t) = sum_i 1/((x_i - t) prod'(x_j - x_i))
reciprocal   1/prod(1 - x_i t) = sum_i 1/((1 - x_i t) prod'(1 - x_j/x_i))
symmetric    sum_i 1/(prod_j(1 - x_j y_i) prod'(1 - y_j/y_i))
                 = sum_i 1/(prod_j(1 - x_i y_j) prod'(1 - x_j/x_i))
mixed        1/(prod(1 - x_i t) prod(1 - y_i/t)) = two sums (the t -> y_{N+1} case of symmetric)
bilateral    1/(prod(x_i - t) prod(y_i - 1/t)) = two sums (mixed after x -> 1/x, y -> 1/y)
skeleton     the simple/bilateral schemas with x_i -> x_i c_i(n_i) + a_i, y_i -> y_i l_i(n_i) + b_i,
             multiplied through by the residues R_i(n_i), P_i(n_i)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DegenerateInput

Rational = Fraction
ResidueMap = Callable[[int], Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"exact checks need int/Fraction/str inputs, got {type(value).__name__}")


@dataclass(frozen=True)
class RationalPoint:
    """Exact evaluation point: the x-family, the (possibly empty) y-family and ``t``."""

    xs: tuple
    ys: tuple = ()
    t: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "xs", tuple(_as_fraction(v) for v in self.xs))
        object.__setattr__(self, "ys", tuple(_as_fraction(v) for v in self.ys))
        object.__setattr__(self, "t", _as_fraction(self.t))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DegenerateInput(message)


def _distinct(values: Sequence[Fraction], name: str) -> None:
    seen = set()
    for i, v in enumerate(values):
        _require(v not in seen, f"{name} values must be pairwise distinct (repeat at index {i})")
        seen.add(v)


def _nonzero(values: Sequence[Fraction], name: str) -> None:
    for i, v in enumerate(values):
        _require(v != 0, f"{name}[{i}] must be non-zero")


def _prod(values) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out


def _simple(xs: Sequence[Fraction], t: Fraction) -> Fraction:
    lhs = 1 / _prod(x - t for x in xs)
    rhs = sum((1 / ((xi - t) * _prod(xj - xi for j, xj in enumerate(xs) if j != i))
               for i, xi in enumerate(xs)), Fraction(0))
    return lhs - rhs


def _bilateral(xs: Sequence[Fraction], ys: Sequence[Fraction], t: Fraction) -> Fraction:
    lhs = 1 / (_prod(x - t for x in xs) * _prod(y - 1 / t for y in ys))
    first = sum((1 / ((xi - t) * _prod(y - 1 / xi for y in ys)
                      * _prod(xj - xi for j, xj in enumerate(xs) if j != i))
                 for i, xi in enumerate(xs)), Fraction(0))
    second = sum((1 / (yi * (yi * t - 1) * _prod(x - 1 / yi for x in xs)
                       * _prod(yj - yi for j, yj in enumerate(ys) if j != i))
                  for i, yi in enumerate(ys)), Fraction(0))
    return lhs - first - second


def _bilateral_guards(xs: Sequence[Fraction], ys: Sequence[Fraction], t: Fraction) -> None:
    _distinct(xs, "x")
    _distinct(ys, "y")
    _require(t != 0, "t must be non-zero")
    _require(all(x != t for x in xs), "some x_i equals t")
    _require(all(y * t != 1 for y in ys), "some y_i t equals 1")
    _nonzero(ys, "y")
    if ys:
        _nonzero(xs, "x")
    _require(all(x * y != 1 for x in xs for y in ys), "some x_i y_j equals 1")


def check_simple_pf(p: RationalPoint) -> Fraction:
    """LHS - RHS of 1/prod(x_i - t) = sum_i 1/((x_i - t) prod_{j!=i}(x_j - x_i))."""
    _require(not p.ys, "the simple schema takes no y-family")
    _require(len(p.xs) >= 1, "need at least one x")
    _distinct(p.xs, "x")
    _require(all(x != p.t for x in p.xs), "some x_i equals t")
    return _simple(p.xs, p.t)


def check_reciprocal_pf(p: RationalPoint) -> Fraction:
    """LHS - RHS of 1/prod(1 - x_i t) = sum_i 1/((1 - x_i t) prod_{j!=i}(1 - x_j/x_i))."""
    xs, t = p.xs, p.t
    _require(not p.ys, "the reciprocal schema takes no y-family")
    _require(len(xs) >= 1, "need at least one x")
    _distinct(xs, "x")
    _nonzero(xs, "x")
    _require(all(x * t != 1 for x in xs), "some x_i t equals 1")
    lhs = 1 / _prod(1 - x * t for x in xs)
    rhs = sum((1 / ((1 - xi * t) * _prod(1 - xj / xi for j, xj in enumerate(xs) if j != i))
               for i, xi in enumerate(xs)), Fraction(0))
    return lhs - rhs


def check_symmetric_pf(p: RationalPoint) -> Fraction:
    """LHS - RHS of the x/y-symmetric schema (``t`` is unused)."""
    xs, ys = p.xs, p.ys
    _require(len(xs) >= 1 and len(ys) >= 1, "need non-empty x- and y-families")
    _distinct(xs, "x")
    _distinct(ys, "y")
    _nonzero(xs, "x")
    _nonzero(ys, "y")
    _require(all(x * y != 1 for x in xs for y in ys), "some x_i y_j equals 1")
    lhs = sum((1 / (_prod(1 - x * yi for x in xs) * _prod(1 - yj / yi for j, yj in enumerate(ys) if j != i))
               for i, yi in enumerate(ys)), Fraction(0))
    rhs = sum((1 / (_prod(1 - xi * y for y in ys) * _prod(1 - xj / xi for j, xj in enumerate(xs) if j != i))
               for i, xi in enumerate(xs)), Fraction(0))
    return lhs - rhs


def check_mixed_pf(p: RationalPoint) -> Fraction:
    """LHS - RHS of 1/(prod(1 - x_i t) prod(1 - y_i/t)) = first sum - second sum."""
    xs, ys, t = p.xs, p.ys, p.t
    _require(len(xs) >= 1, "need at least one x")
    _distinct(xs, "x")
    _distinct(ys, "y")
    _nonzero(xs, "x")
    _nonzero(ys, "y")
    _require(t != 0, "t must be non-zero")
    _require(all(x * t != 1 for x in xs), "some x_i t equals 1")
    _require(all(y != t for y in ys), "some y_i equals t")
    _require(all(x * y != 1 for x in xs for y in ys), "some x_i y_j equals 1")
    lhs = 1 / (_prod(1 - x * t for x in xs) * _prod(1 - y / t for y in ys))
    first = sum((1 / ((1 - xi * t) * _prod(1 - xi * y for y in ys)
                      * _prod(1 - xj / xi for j, xj in enumerate(xs) if j != i))
                 for i, xi in enumerate(xs)), Fraction(0))
    second = sum((1 / ((1 - t / yi) * _prod(1 - x * yi for x in xs)
                       * _prod(1 - yj / yi for j, yj in enumerate(ys) if j != i))
                  for i, yi in enumerate(ys)), Fraction(0))
    return lhs - (first - second)


def check_bilateral_pf(p: RationalPoint) -> Fraction:
    """LHS - RHS of 1/(prod(x_i - t) prod(y_i - 1/t)) = x-sum + y-sum."""
    _require(len(p.xs) + len(p.ys) >= 1, "need at least one variable")
    _bilateral_guards(p.xs, p.ys, p.t)
    return _bilateral(p.xs, p.ys, p.t)


@dataclass(frozen=True)
class SkeletonFamily:
    """Finite residue/pole data for one family: maps ``n -> R(n)`` and ``n -> c(n)``.

    ``shifts`` are the additive parameters (``a_i`` or ``b_i``) and ``indices``
    the summation indices ``n_i`` at which the single-term identity is checked.
    """

    residues: tuple
    poles: tuple
    shifts: tuple
    indices: tuple

    def __post_init__(self) -> None:
        lengths = {len(self.residues), len(self.poles), len(self.shifts), len(self.indices)}
        if len(lengths) != 1:
            raise ValueError("residues, poles, shifts and indices need equal lengths")
        object.__setattr__(self, "shifts", tuple(_as_fraction(v) for v in self.shifts))

    def __len__(self) -> int:
        return len(self.residues)

    def values(self, scales: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
        """(R_i(n_i), scale_i c_i(n_i) + shift_i) for each member."""
        if len(scales) != len(self):
            raise ValueError("scale list length does not match the family size")
        rs = [_as_fraction(r(n)) for r, n in zip(self.residues, self.indices)]
        poles = [s * _as_fraction(c(n)) + shift
                 for s, c, n, shift in zip(scales, self.poles, self.indices, self.shifts)]
        return rs, poles


def check_general_skeleton(residues: Sequence[ResidueMap], poles: Sequence[ResidueMap], point: RationalPoint,
                           shifts: Sequence, indices: Sequence[int], bilateral: bool = False,
                           g_family: SkeletonFamily | None = None) -> Fraction:
    """Exact LHS - RHS of the single-term skeleton at one index tuple.

    Non-bilateral: with X_i = x_i c_i(n_i) + a_i,
        prod R_i/(X_i - t) = sum_i R_i/(X_i - t) prod_{j!=i} R_j/(x_j c_j(n_j) - (X_i - a_j)).
    Bilateral: additionally Y_i = y_i l_i(n_i) + b_i from ``g_family`` (scales ``point.ys``);
    the identity is the bilateral schema at (X, Y, t) multiplied by prod R prod P.
    """
    f_family = SkeletonFamily(tuple(residues), tuple(poles), tuple(shifts), tuple(indices))
    rs, xs = f_family.values(point.xs)
    t = point.t
    if not bilateral:
        _require(g_family is None or len(g_family) == 0, "g-family given to a non-bilateral skeleton")
        _require(len(xs) >= 1, "need at least one family member")
        _distinct(xs, "shifted pole")
        _require(all(x != t for x in xs), "a shifted pole equals t")
        lhs = _prod(r / (x - t) for r, x in zip(rs, xs))
        rhs = sum((rs[i] / (xs[i] - t) * _prod(rs[j] / (xs[j] - xs[i]) for j in range(len(xs)) if j != i)
                   for i in range(len(xs))), Fraction(0))
        return lhs - rhs
    g_family = g_family or SkeletonFamily((), (), (), ())
    ps, ys = g_family.values(point.ys)
    _bilateral_guards(xs, ys, t)
    lhs = _prod(r / (x - t) for r, x in zip(rs, xs)) * _prod(p / (y - 1 / t) for p, y in zip(ps, ys))
    first = sum((rs[i] / (xs[i] - t)
                 * _prod(p / (y - 1 / xs[i]) for p, y in zip(ps, ys))
                 * _prod(rs[j] / (xs[j] - xs[i]) for j in range(len(xs)) if j != i)
                 for i in range(len(xs))), Fraction(0))
    second = sum((ps[i] / (ys[i] * (ys[i] * t - 1))
                  * _prod(r / (x - 1 / ys[i]) for r, x in zip(rs, xs))
                  * _prod(ps[j] / (ys[j] - ys[i]) for j in range(len(ys)) if j != i)
                  for i in range(len(ys))), Fraction(0))
    return lhs - first - second


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def random_rational(rng: random.Random, bound: int = 99, allow_zero: bool = False) -> Fraction:
    """Uniform-ish rational with |numerator|, denominator <= ``bound``."""
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if allow_zero or value != 0:
            return value


def random_point(rng: random.Random, m: int, n: int = 0, bound: int = 99) -> RationalPoint:
    """Random point with pairwise-distinct families (validity per schema is checked by the caller)."""
    xs: list[Fraction] = []
    while len(xs) < m:
        v = random_rational(rng, bound)
        if v not in xs:
            xs.append(v)
    ys: list[Fraction] = []
    while len(ys) < n:
        v = random_rational(rng, bound)
        if v not in ys:
            ys.append(v)
    return RationalPoint(tuple(xs), tuple(ys), random_rational(rng, bound))


def random_residue_map(rng: random.Random, bound: int = 99) -> ResidueMap:
    """A polynomial ``n -> q0 + q1 n + q2 n^2`` with small random rational coefficients."""
    q = [random_rational(rng, bound, allow_zero=True) for _ in range(3)]
    return lambda n, _q=tuple(q): _q[0] + _q[1] * n + _q[2] * n * n


@dataclass
class SweepOutcome:
    """Tally of a randomized exact sweep: every residual must be exactly zero."""

    checked: int = 0
    skipped_degenerate: int = 0
    nonzero: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.nonzero and self.checked > 0


def sweep(check: Callable[[random.Random], Fraction], count: int, seed: int = 0) -> SweepOutcome:
    """Run ``check(rng)`` until ``count`` non-degenerate instances have been evaluated."""
    rng = random.Random(seed)
    outcome = SweepOutcome()
    attempts = 0
    while outcome.checked < count:
        attempts += 1
        if attempts > 20 * count:
            raise RuntimeError("too many degenerate random instances")
        try:
            residual = check(rng)
        except DegenerateInput:
            outcome.skipped_degenerate += 1
            continue
        outcome.checked += 1
        if residual != 0:
            outcome.nonzero.append(residual)
    return outcome
