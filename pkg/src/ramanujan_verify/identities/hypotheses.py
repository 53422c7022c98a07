"""Hypothesis checks shared by the registry entries.

The resonance conditions have the shape ``A p^2 + B q^2 = C`` over natural
(or odd natural) ``p, q``.  They are decided analytically wherever possible:

* ``A/B`` off the real axis: the real 2x2 system fixes ``p^2`` and ``q^2`` outright;
* ``A/B = -1`` (equal scales): ``(q - p)(q + p) = C/B`` has finitely many
  factorizations, or infinitely many solutions ``p = q`` when ``C = 0``;
* ``A/B > 0``: ``p^2`` is bounded by ``(C/B)/(A/B)``, so enumeration is finite.

Only the remaining real-ratio case (a Pell-type equation) is searched up to
``n_max``; every report records that bound in ``checked_up_to``.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

from mpmath import mp, mpc, mpf

from .params import Violation

DEFAULT_N_MAX = 10_000
_FACTOR_LIMIT = 10 ** 12


def _tol(scale=1) -> mpf:
    """Relative slack for exact-coincidence tests: ten guard digits, at most a third of the precision."""
    return mpf(10) ** (-(mp.dps - min(10, mp.dps // 3))) * max(mpf(1), abs(scale))


def _near_integer(v) -> int | None:
    """Nearest integer to a (real) mp value, or None if not within tolerance."""
    v = mpc(v)
    if abs(v.imag) > _tol(v):
        return None
    r = int(mp.nint(v.real))
    return r if abs(v.real - r) <= _tol(v) else None


def admissible_root(square, odd: bool) -> int | None:
    """``m >= 1`` (odd when ``odd``) with ``m^2 = square``, else None."""
    square = mpc(square)
    if abs(square.imag) > _tol(square) or square.real < 1 - _tol():
        return None
    m = _near_integer(mp.sqrt(square.real))
    if m is None or m < 1 or m * m != _near_integer(square.real):
        return None
    if odd and m % 2 == 0:
        return None
    return m


def _lattice(odd: bool, limit: int) -> Iterable[int]:
    return range(1, limit + 1, 2) if odd else range(1, limit + 1)


def quadratic_witness(A, B, C, odd: bool, n_max: int) -> tuple[int, int] | None:
    """A witness ``(p, q)`` of ``A p^2 + B q^2 = C`` over the (odd) naturals, or None."""
    A, B, C = mpc(A), mpc(B), mpc(C)
    if A == 0 or B == 0:
        raise ValueError("quadratic_witness needs non-zero coefficients")
    ratio = A / B
    if abs(ratio.imag) > _tol(ratio):
        det = A.real * B.imag - B.real * A.imag
        P = (C.real * B.imag - B.real * C.imag) / det
        Q = (A.real * C.imag - C.real * A.imag) / det
        p, q = admissible_root(P, odd), admissible_root(Q, odd)
        return (p, q) if p is not None and q is not None else None
    gamma = C / B
    if abs(gamma.imag) > _tol(gamma):
        return None
    rho, g = ratio.real, gamma.real
    if abs(rho + 1) <= _tol():
        # q^2 - p^2 = g
        if abs(g) <= _tol():
            return (1, 1)
        G = _near_integer(g)
        if G is None or abs(G) > _FACTOR_LIMIT:
            return _search(rho, g, odd, n_max)
        best = None
        for d in range(1, math.isqrt(abs(G)) + 1):
            if abs(G) % d:
                continue
            e = abs(G) // d
            if (d + e) % 2:
                continue
            big, small = (e + d) // 2, (e - d) // 2
            if small < 1 or (odd and (big % 2 == 0 or small % 2 == 0)):
                continue
            cand = (small, big) if G > 0 else (big, small)
            if best is None or cand < best:
                best = cand
        return best
    if rho > 0:
        if g <= 0:
            return None
        limit = min(n_max, int(mp.sqrt(g / rho)) + 1)
        return _search(rho, g, odd, limit)
    return _search(rho, g, odd, n_max)


def _search(rho, g, odd: bool, limit: int) -> tuple[int, int] | None:
    """Scan p <= limit for q^2 = g - rho p^2 (float prefilter, mp confirmation)."""
    rf, gf = float(rho), float(g)
    for p in _lattice(odd, limit):
        Qf = gf - rf * p * p
        if Qf < 0.5:
            if rf > 0:
                break
            continue
        qf = round(math.sqrt(Qf))
        if abs(qf * qf - Qf) > 1e-6 * max(1.0, Qf):
            continue
        q = admissible_root(g - rho * p * p, odd)
        if q is not None:
            return (p, q)
    return None


# ---------------------------------------------------------------------------
# Condition builders (each returns a list of Violations)
# ---------------------------------------------------------------------------

def resonance(xs: Sequence, as_: Sequence, odd: bool, n_max: int, family: str = "x") -> list[Violation]:
    """x_i^2 n^2 - x_j^2 k^2 != a_j^2 - a_i^2 for i != j and all (odd) naturals n, k."""
    out = []
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            A, B = mpc(xs[i]) ** 2, -mpc(xs[j]) ** 2
            C = mpc(as_[j]) ** 2 - mpc(as_[i]) ** 2
            hit = quadratic_witness(A, B, C, odd, n_max)
            if hit is not None:
                out.append(Violation(f"{family}_resonance", hit[0], hit[1], i, j,
                                     f"{family}_i^2 n^2 - {family}_j^2 k^2 = "
                                     f"{'b' if family == 'y' else 'a'}_j^2 - {'b' if family == 'y' else 'a'}_i^2"))
    return out


def ratio_condition(xs: Sequence, strict: bool = False, family: str = "x") -> list[Violation]:
    """Im(x_i/x_j) != 0, or (unless ``strict``) x_i = +-x_j (only x_i^2 enters the identities)."""
    out = []
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            r = mpc(xs[i]) / mpc(xs[j])
            if abs(r.imag) > _tol(r):
                continue
            if not strict and abs(r * r - 1) <= _tol():
                continue
            need = "Im(ratio) != 0" if strict else "Im(ratio) != 0 or equal"
            out.append(Violation(f"{family}_ratio", None, None, i, j,
                                 f"{family}_{i + 1}/{family}_{j + 1} = {mp.nstr(r, 8)} violates {need}"))
    return out


def not_purely_imaginary(x1, x2) -> list[Violation]:
    r = mpc(x1) / mpc(x2)
    if abs(r.real) <= _tol(r):
        return [Violation("x_ratio", None, None, 0, 1, "x1/x2 must not be purely imaginary")]
    return []


def theta_range(thetas: Sequence, bound, name: str = "theta") -> list[Violation]:
    """|Re theta_i| <= bound."""
    out = []
    for i, th in enumerate(thetas):
        if abs(mpc(th).real) > bound * (1 + _tol()):
            out.append(Violation(f"{name}_range", None, None, i, None,
                                 f"|Re {name}_{i + 1}| = {mp.nstr(abs(mpc(th).real), 8)} exceeds "
                                 f"{mp.nstr(bound, 8)}"))
    return out


def open_range(values: Sequence, low, high, name: str) -> list[Violation]:
    """low < value < high for real values."""
    out = []
    for i, v in enumerate(values):
        v = mpc(v)
        if abs(v.imag) > _tol(v) or not (low < v.real < high):
            out.append(Violation(f"{name}_range", None, None, i, None,
                                 f"{name}_{i + 1} = {mp.nstr(v, 8)} outside ({mp.nstr(low, 6)}, {mp.nstr(high, 6)})"))
    return out


def lattice_pole(value, odd: bool, condition: str, i: int | None = None, allow_zero: bool = True,
                 detail: str = "") -> list[Violation]:
    """value = m^2 for a natural (odd) m, i.e. a kernel argument sits on a pole."""
    value = mpc(value)
    if not allow_zero and abs(value) <= _tol():
        return [Violation(condition, 0, None, i, None, detail or "zero argument")]
    m = admissible_root(value, odd)
    if m is not None:
        return [Violation(condition, m, None, i, None, detail)]
    return []


def kernel_poles(xs: Sequence, as_: Sequence, t, odd: bool) -> list[Violation]:
    """(t^2 - a_i^2)/x_i^2 = m^2: the closed product side (and an outer denominator) is singular."""
    out = []
    for i, (x, a) in enumerate(zip(xs, as_)):
        out += lattice_pole((mpc(t) ** 2 - mpc(a) ** 2) / mpc(x) ** 2, odd, "rhs_pole", i,
                            detail="t^2 - a_i^2 = x_i^2 m^2")
    return out


def zero_lattice_points(xs: Sequence, as_: Sequence, odd: bool) -> list[Violation]:
    """x_i^2 m^2 + a_i^2 - a_j^2 = 0 puts an inner kernel at its removable point; on an aligned
    pair this breaks the smooth lattice continuation, so it is reported."""
    out = []
    for i in range(len(xs)):
        for j in range(len(xs)):
            if i == j:
                continue
            val = (mpc(as_[j]) ** 2 - mpc(as_[i]) ** 2) / mpc(xs[i]) ** 2
            m = admissible_root(val, odd)
            if m is not None:
                out.append(Violation("zero_argument", m, None, i, j, "x_i^2 n^2 + a_i^2 - a_j^2 = 0"))
    return out


def generic_resonance(poles: Sequence[Callable[[int], object]], starts: Sequence[int], xs: Sequence,
                      as_: Sequence, n_max: int, family: str = "x") -> list[Violation]:
    """x_i c_i(n) - x_j c_j(k) != a_j - a_i by direct search over n, k < n_max (float prefilter)."""
    out = []
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            xi, xj, ai, aj = (complex(mpc(v)) for v in (xs[i], xs[j], as_[i], as_[j]))
            left = [(n, xi * complex(poles[i](n)) + ai) for n in range(starts[i], starts[i] + n_max)]
            right = {}
            for k in range(starts[j], starts[j] + n_max):
                v = xj * complex(poles[j](k)) + aj
                right.setdefault((round(v.real, 6), round(v.imag, 6)), []).append(k)
            for n, v in left:
                key = (round(v.real, 6), round(v.imag, 6))
                for k in right.get(key, ()):
                    exact = (mpc(xs[i]) * poles[i](n) + mpc(as_[i])) - (mpc(xs[j]) * poles[j](k) + mpc(as_[j]))
                    if abs(exact) <= _tol(abs(mpc(xs[i]) * poles[i](n))):
                        out.append(Violation(f"{family}_resonance", n, k, i, j,
                                             f"{family}_i c_i(n) - {family}_j c_j(k) = a_j - a_i"))
                        break
                else:
                    continue
                break
    return out


def nonzero(value, condition: str, detail: str) -> list[Violation]:
    return [Violation(condition, None, None, None, None, detail)] if abs(mpc(value)) <= _tol() else []
