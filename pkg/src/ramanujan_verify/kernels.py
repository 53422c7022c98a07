"""The two Mittag-Leffler kernels, in closed form and as series.

cos kernel:  pi cos(theta x/y) / (2 x y sin(pi x/y)) - 1/(2 x^2)
             = sum_{k>=1} (-1)^(k-1) cos(k theta) / (k^2 y^2 - x^2),      |theta| <= pi
sin kernel:  pi sin(theta x/y) / (4 x y cos(pi x/(2y)))
             = sum_{k>=0} (-1)^k sin((2k+1) theta) / ((2k+1)^2 y^2 - x^2), |theta| <= pi/2

Both closed forms are even in ``x``, which is why the principal square root can be
used wherever ``x`` is itself a square root.

Series strategy: the summands are split into phase pieces ``z^k G(k)`` with
``z = -e^{+-i theta}`` (cos) or ``z = -e^{+-2 i theta}`` (sin) and smooth ``G``;
:func:`~ramanujan_verify.numeric.sum_phased` then picks Euler--Maclaurin for a
fixed sign, Cohen--Villegas--Zagier for strict alternation and an Euler
transform of the tail for every other real ``theta``.  At the range endpoints
the terms are still O(k^-2), so the series converge absolutely there.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError
from .numeric import (DEFAULT_CONTEXT, Piece, PrecisionContext, SeriesResult, nearest_integer,
                      sum_phased, to_mp)


@dataclass(frozen=True)
class KernelArgs:
    """Pole-scale argument ``x``, lattice scale ``y`` (non-zero) and phase ``theta``."""

    x: object
    y: object
    theta: object

    def __post_init__(self) -> None:
        for name in ("x", "y", "theta"):
            object.__setattr__(self, name, to_mp(getattr(self, name)))
        if self.y == 0:
            raise DomainError("kernel lattice scale y must be non-zero")


def _ratio(args: KernelArgs) -> mpc:
    return args.x / args.y


def cos_kernel_value(x, y, theta) -> mpc:
    """Closed cos kernel at the current precision; ``x = 0`` gives the analytic limit."""
    x, y, theta = mpc(x), mpc(y), mpc(theta)
    if x == 0:
        return cos_kernel_limit_at_zero(y, theta)
    r = x / y
    k = nearest_integer(r)
    if k is not None and k != 0:
        raise PoleError(f"cos kernel pole: x/y = {k}")
    return mp.pi * mp.cos(theta * r) / (2 * x * y * mp.sin(mp.pi * r)) - 1 / (2 * x * x)


def cos_kernel_limit_at_zero(y, theta) -> mpc:
    """lim_{x->0} of the closed cos kernel, (pi^2 - 3 theta^2) / (12 y^2)."""
    y, theta = mpc(y), mpc(theta)
    return (mp.pi ** 2 - 3 * theta * theta) / (12 * y * y)


def sin_kernel_value(x, y, theta) -> mpc:
    """Closed sin kernel at the current precision; ``x = 0`` gives pi theta / (4 y^2)."""
    x, y, theta = mpc(x), mpc(y), mpc(theta)
    if x == 0:
        return mp.pi * theta / (4 * y * y)
    r = x / y
    k = nearest_integer(r)
    if k is not None and k % 2:
        raise PoleError(f"sin kernel pole: x/y = {k}")
    return mp.pi * mp.sin(theta * r) / (4 * x * y * mp.cos(mp.pi * r / 2))


def cos_kernel_closed(args: KernelArgs, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """pi cos(theta x/y) / (2xy sin(pi x/y)) - 1/(2x^2).

    Raises :class:`DomainError` at ``x = 0`` (use :func:`cos_kernel_limit_at_zero`
    or the series there) and :class:`PoleError` when ``x/y`` is a non-zero integer.
    """
    if args.x == 0:
        raise DomainError("cos kernel closed form has a double pole at x = 0")
    with ctx.workdps():
        return +cos_kernel_value(args.x, args.y, args.theta)


def sin_kernel_closed(args: KernelArgs, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpc:
    """pi sin(theta x/y) / (4xy cos(pi x/(2y))), with the removable point x = 0 filled."""
    with ctx.workdps():
        return +sin_kernel_value(args.x, args.y, args.theta)


def _check_theta(theta: mpc, bound, name: str) -> None:
    if abs(theta.real) > bound * (1 + mpf(10) ** (-(mp.dps - 5))):
        raise DomainError(f"{name} series needs |Re theta| <= {mp.nstr(bound, 6)}, got {mp.nstr(theta, 8)}")


def cos_kernel_pieces(args: KernelArgs) -> list[Piece]:
    """Phase pieces of (-1)^(k-1) cos(k theta) / (k^2 y^2 - x^2)."""
    x, y, theta = args.x, args.y, args.theta
    amp = lambda k: -1 / (2 * (k * k * y * y - x * x))
    return [Piece(-mp.expj(theta), amp), Piece(-mp.expj(-theta), amp)]


def sin_kernel_pieces(args: KernelArgs) -> list[Piece]:
    """Phase pieces of (-1)^k sin((2k+1) theta) / ((2k+1)^2 y^2 - x^2)."""
    x, y, theta = args.x, args.y, args.theta
    up, down = mp.expj(theta), mp.expj(-theta)
    den = lambda k: (2 * k + 1) ** 2 * y * y - x * x
    return [Piece(-up * up, lambda k: up / (2j * den(k))),
            Piece(-down * down, lambda k: -down / (2j * den(k)))]


def cos_kernel_series(args: KernelArgs, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SeriesResult:
    """sum_{k>=1} (-1)^(k-1) cos(k theta) / (k^2 y^2 - x^2)."""
    with ctx.workdps():
        k = nearest_integer(_ratio(args))
        if k is not None and k != 0:
            raise PoleError(f"cos kernel series hits k^2 y^2 = x^2 at k = {abs(k)}")
        _check_theta(args.theta, mp.pi, "cos kernel")
        return sum_phased(cos_kernel_pieces(args), 1, ctx, label="cos_kernel")


def sin_kernel_series(args: KernelArgs, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SeriesResult:
    """sum_{k>=0} (-1)^k sin((2k+1) theta) / ((2k+1)^2 y^2 - x^2)."""
    with ctx.workdps():
        k = nearest_integer(_ratio(args))
        if k is not None and k % 2:
            raise PoleError(f"sin kernel series hits (2k+1)^2 y^2 = x^2 at 2k+1 = {abs(k)}")
        _check_theta(args.theta, mp.pi / 2, "sin kernel")
        return sum_phased(sin_kernel_pieces(args), 0, ctx, label="sin_kernel")
