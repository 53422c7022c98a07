"""Phase-decomposed lattice factors shared by the multi-index evaluators.

Every inner factor of the product identities is a kernel evaluated at
``u(n)^2 = (x_i^2 m(n)^2 + a_i^2 - a_j^2) / x_j^2`` with ``m(n) = n`` (cos family)
or ``m(n) = 2n + 1`` (sin family).  Two regimes occur:

* ``x_i^2 = x_j^2`` ("aligned"): ``u = m + eps`` with the small, smooth offset
  ``eps = d / (sqrt(m^2 + d) + m)``.  Rewriting ``sin(pi u)``, ``cos(pi u / 2)``,
  ``cos(theta u)`` ... through ``eps`` splits the factor into unit phases times
  amplitudes that are smooth in ``n`` -- which is what Euler--Maclaurin and the
  Euler phase transform need.  Evaluating ``cot(pi u)`` at a non-integer ``n``
  instead would oscillate and ruin the tail integral.
* ``x_i / x_j`` off the real axis: ``u`` leaves the real axis linearly in ``n``, so
  the closed kernel is itself a smooth (usually exponentially small) function.

Kernels enter only through ``u^2`` (they are even in ``u``), so the branch of the
square root never matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from mpmath import mp, mpc, mpf

from ..numeric import Piece, complex_sqrt

Amplitude = Callable[[object], object]


def aligned(xi, xj) -> bool:
    """True when ``x_i^2 = x_j^2`` to working precision."""
    xi, xj = mpc(xi), mpc(xj)
    return abs(xi * xi - xj * xj) <= mpf(10) ** (-(mp.dps - 8)) * max(1, abs(xj * xj))


@dataclass(frozen=True)
class Lattice:
    """``u(n)^2 = ratio2 * m(n)^2 + shift`` with ``m(n) = n`` or ``2n + 1``."""

    ratio2: mpc
    shift: mpc
    odd: bool
    is_aligned: bool

    @classmethod
    def between(cls, xi, ai, xj, aj, odd: bool) -> "Lattice":
        xi, ai, xj, aj = (mpc(v) for v in (xi, ai, xj, aj))
        is_aligned = aligned(xi, xj)
        ratio2 = mpc(1) if is_aligned else (xi / xj) ** 2
        return cls(ratio2, (ai * ai - aj * aj) / (xj * xj), odd, is_aligned)

    def m(self, n):
        return 2 * n + 1 if self.odd else n

    def u2(self, n):
        m = self.m(n)
        return self.ratio2 * m * m + self.shift

    def u(self, n):
        """A square root of ``u2``; on the aligned lattice the root close to ``m``."""
        if self.is_aligned:
            return self.m(n) + self.eps(n)
        return complex_sqrt(self.u2(n))

    def eps(self, n):
        """``u - m`` on the aligned lattice, computed without cancellation."""
        m = self.m(n)
        return self.shift / (complex_sqrt(m * m + self.shift) + m)


def _upper(u):
    """``u`` or ``-u``, whichever lies in the closed upper half plane (the factors are even in ``u``)."""
    u = mpc(u)
    return -u if u.imag < 0 or (u.imag == 0 and u.real < 0) else u


# The helpers below take ``pi`` frozen at the precision the parameters were parsed
# at: quadrature raises the precision internally, and at large imaginary ``u`` a
# boundary angle theta = pi must cancel against pi exactly.

def cos_over_sin(theta, u, pi=None) -> mpc:
    """cos(theta u) / sin(pi u) for ``Im u >= 0`` without forming huge exponentials."""
    pi = mp.pi if pi is None else pi
    q = mp.expj(2 * pi * u)
    return -1j * (mp.expj((theta + pi) * u) + mp.expj((pi - theta) * u)) / (1 - q)


def sin_over_cos_half(theta, u, pi=None) -> mpc:
    """sin(theta u) / cos(pi u / 2) for ``Im u >= 0`` without forming huge exponentials."""
    pi = mp.pi if pi is None else pi
    half = pi / 2
    return -1j * (mp.expj((theta + half) * u) - mp.expj((half - theta) * u)) / (1 + mp.expj(pi * u))


def sec_half(u, pi=None) -> mpc:
    """1 / cos(pi u / 2) for ``Im u >= 0``."""
    pi = mp.pi if pi is None else pi
    return 2 * mp.expj(pi * u / 2) / (1 + mp.expj(pi * u))


def cos_factor(lat: Lattice, xj, theta) -> list[Piece]:
    """(1/x_j^2) [pi cos(theta u) / (2 u sin(pi u)) - 1/(2 u^2)]  (the cos kernel at ``x_j u``)."""
    xj2 = mpc(xj) ** 2
    theta = mpc(theta)
    if not lat.is_aligned:
        pi = +mp.pi

        def amp(n):
            u = _upper(lat.u(n))
            return (pi * cos_over_sin(theta, u, pi) / (2 * u) - 1 / (2 * u * u)) / xj2
        return [Piece(mpc(1), amp)]
    # sin(pi u) = (-1)^n sin(pi eps);  cos(theta u) = (e^{i theta (n+eps)} + e^{-i theta (n+eps)}) / 2
    def up(n):
        e = lat.eps(n)
        return mp.pi * mp.expj(theta * e) / (4 * xj2 * (n + e) * mp.sin(mp.pi * e))

    def down(n):
        e = lat.eps(n)
        return mp.pi * mp.expj(-theta * e) / (4 * xj2 * (n + e) * mp.sin(mp.pi * e))

    def rational(n):
        u = n + lat.eps(n)
        return -1 / (2 * xj2 * u * u)

    return [Piece(-mp.expj(theta), up), Piece(-mp.expj(-theta), down), Piece(mpc(1), rational)]


def cot_factor(lat: Lattice, xj) -> list[Piece]:
    """cot(pi u) / (x_j^2 u)."""
    xj2 = mpc(xj) ** 2
    if not lat.is_aligned:
        pi = +mp.pi

        def amp(n):
            u = _upper(lat.u(n))
            return cos_over_sin(pi, u, pi) / (xj2 * u)
        return [Piece(mpc(1), amp)]

    def smooth(n):
        e = lat.eps(n)
        return mp.cos(mp.pi * e) / (mp.sin(mp.pi * e) * xj2 * (lat.m(n) + e))
    return [Piece(mpc(1), smooth)]


def sin_factor(lat: Lattice, xj, theta) -> list[Piece]:
    """sin(theta u) / (x_j u cos(pi u / 2)) on the odd lattice."""
    xj = mpc(xj)
    theta = mpc(theta)
    if not lat.is_aligned:
        pi = +mp.pi

        def amp(n):
            u = _upper(lat.u(n))
            return sin_over_cos_half(theta, u, pi) / (xj * u)
        return [Piece(mpc(1), amp)]
    # cos(pi u/2) = -(-1)^n sin(pi eps/2);  sin(theta u) = (e^{i theta (m+eps)} - e^{-i theta (m+eps)}) / 2i

    def up(n):
        e = lat.eps(n)
        return -mp.expj(theta * (1 + e)) / (2j * xj * (2 * n + 1 + e) * mp.sin(mp.pi * e / 2))

    def down(n):
        e = lat.eps(n)
        return mp.expj(-theta * (1 + e)) / (2j * xj * (2 * n + 1 + e) * mp.sin(mp.pi * e / 2))

    return [Piece(-mp.expj(2 * theta), up), Piece(-mp.expj(-2 * theta), down)]


def sec_factor(lat: Lattice, xj) -> list[Piece]:
    """1 / (x_j cos(pi u / 2)) on the odd lattice (the theta -> 0 limit of sin_factor / theta)."""
    xj = mpc(xj)
    if not lat.is_aligned:
        pi = +mp.pi
        return [Piece(mpc(1), lambda n: sec_half(_upper(lat.u(n)), pi) / xj)]
    return [Piece(mpc(-1), lambda n: -1 / (xj * mp.sin(mp.pi * lat.eps(n) / 2)))]


def hyperbolic_value(u2, scale, beta, pi=None) -> mpc:
    """sinh(beta v) / (scale v cosh(pi v / 2)) with ``v^2 = u2``; the v -> 0 limit is beta/scale."""
    v = complex_sqrt(u2)
    if v == 0:
        return mpc(beta) / scale
    # sinh(beta v) = -i sin(i beta v), cosh(pi v/2) = cos(i pi v/2); Re v >= 0 puts i v in the upper half plane
    return -1j * sin_over_cos_half(mpc(beta), 1j * v, pi) / (scale * v)


def cos_outer(xi, ai, t, theta) -> list[Piece]:
    """(-1)^(n-1) cos(n theta) / (x_i^2 n^2 + a_i^2 - t^2)."""
    xi, ai, t, theta = (mpc(v) for v in (xi, ai, t, theta))
    amp = lambda n: -1 / (2 * (xi * xi * n * n + ai * ai - t * t))
    return [Piece(-mp.expj(theta), amp), Piece(-mp.expj(-theta), amp)]


def sin_outer(xi, ai, t, theta) -> list[Piece]:
    """x_i (-1)^n sin((2n+1) theta) / (x_i^2 (2n+1)^2 + a_i^2 - t^2)."""
    xi, ai, t, theta = (mpc(v) for v in (xi, ai, t, theta))
    den = lambda n: xi * xi * (2 * n + 1) ** 2 + ai * ai - t * t
    up, down = mp.expj(theta), mp.expj(-theta)
    return [Piece(-up * up, lambda n: xi * up / (2j * den(n))),
            Piece(-down * down, lambda n: -xi * down / (2j * den(n)))]


def scale_pieces(pieces: list[Piece], factor) -> list[Piece]:
    return [Piece(p.phase, lambda n, _g=p.amplitude: factor * _g(n)) for p in pieces]


def smooth_piece(fn: Amplitude) -> list[Piece]:
    return [Piece(mpc(1), fn)]
