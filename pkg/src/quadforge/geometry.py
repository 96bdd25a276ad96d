"""Sector areas and generalised angles for central conics in the plane.

Three pairwise independent points ``a, b, c`` fix exactly one conic
``p M p^t = 1`` centred at the origin. With ``c = x a + y b`` the sector
coefficient is ``delta = (1/(x y) - x/y - y/x) / 2``; the area of the sector
between ``a`` and ``b`` is the triangle area ``|det(a, b)|/2`` times
``f(delta)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateError, DomainError

DEPENDENCE_RTOL = 1e-12
KERNEL_TAYLOR_RADIUS = 1e-6
CONIC_ZERO_RTOL = 1e-12


class Vec2(NamedTuple):
    x: float
    y: float

    @classmethod
    def parse(cls, text: str) -> "Vec2":
        parts = text.strip().strip("()").split(",")
        if len(parts) != 2:
            raise DomainError(f"cannot parse point {text!r}; expected x,y")
        return cls(float(parts[0]), float(parts[1]))


def _det(p, q) -> float:
    return p[0] * q[1] - p[1] * q[0]


def _independent(p, q) -> bool:
    scale = math.hypot(*p) * math.hypot(*q)
    return abs(_det(p, q)) > DEPENDENCE_RTOL * scale


def _minors(a, b, c):
    if not _independent(a, b):
        raise DegenerateError("a and b are linearly dependent")
    alpha, beta, gamma = _det(b, c), _det(c, a), _det(a, b)
    # c = x a + y b with x = -alpha/gamma, y = -beta/gamma
    scale = math.hypot(*c) * max(math.hypot(*a), math.hypot(*b))
    if abs(alpha) <= DEPENDENCE_RTOL * scale or abs(beta) <= DEPENDENCE_RTOL * scale:
        raise DegenerateError("c has a zero coordinate in the basis (a, b)")
    return alpha, beta, gamma


def coordinates(a, b, c) -> tuple[float, float]:
    """``(x, y)`` with ``c = x a + y b``."""
    alpha, beta, gamma = _minors(a, b, c)
    return -alpha / gamma, -beta / gamma


def sector_coefficient(a, b, c) -> float:
    alpha, beta, gamma = _minors(a, b, c)
    return (gamma * gamma - alpha * alpha - beta * beta) / (2.0 * alpha * beta)


def f_kernel(x: float) -> float:
    """``arccos(x)/sqrt(1-x^2)`` below 1, ``1`` at 1, ``arcosh(x)/sqrt(x^2-1)`` above."""
    if x <= -1:
        raise DomainError(f"f is undefined for x = {x} <= -1 (unbounded sector)")
    t = x - 1.0
    if abs(t) < KERNEL_TAYLOR_RADIUS:
        return 1.0 - t / 3.0 + 2.0 * t * t / 15.0
    # (1 - x)(1 + x) rather than 1 - x^2: 1 - x is exact near 1, x^2 is not
    if x < 1:
        return math.acos(x) / math.sqrt((1.0 - x) * (1.0 + x))
    return math.acosh(x) / math.sqrt((x - 1.0) * (x + 1.0))


def triangle_area(a, b) -> float:
    return abs(_det(a, b)) / 2.0


def sector_area(a, b, c) -> float:
    delta = sector_coefficient(a, b, c)
    if delta <= -1:
        raise DomainError(f"sector coefficient {delta} <= -1: the sector is unbounded")
    return triangle_area(a, b) * f_kernel(delta)


def angle(a, b, c) -> float:
    """Generalised angle between ``a`` and ``b`` with respect to ``c``.

    ``arccos(delta)`` for ``|delta| < 1`` and ``arcosh(delta)`` for ``delta >= 1``.
    """
    delta = sector_coefficient(a, b, c)
    if delta <= -1:
        raise DomainError(f"sector coefficient {delta} <= -1")
    if delta < 1:
        return math.acos(delta)
    return math.acosh(delta)


def lies_between(p, a, b) -> bool:
    """True if ``p = x a + y b`` with ``x, y > 0``; a zero coordinate is degenerate."""
    x, y = coordinates(a, b, p)
    return x > 0 and y > 0


class ConicKind(str, enum.Enum):
    ELLIPSE = "ellipse"
    PARALLEL_LINES = "parallel_lines"
    HYPERBOLA_BRANCHES = "hyperbola_branches"


@dataclass(frozen=True)
class Conic:
    """Central conic ``p M p^t = 1``; ``M`` symmetric 2x2."""

    M: np.ndarray

    def __post_init__(self):
        M = np.array(self.M, dtype=float)
        if M.shape != (2, 2) or not np.all(np.isfinite(M)):
            raise DomainError("conic matrix must be a finite 2x2 array")
        if abs(M[0, 1] - M[1, 0]) > 1e-12 * max(np.max(np.abs(M)), 1e-300):
            raise DomainError("conic matrix must be symmetric")
        if not np.any(M):
            raise DomainError("conic matrix must not be zero")
        object.__setattr__(self, "M", (M + M.T) / 2)

    def value(self, p) -> float:
        p = np.asarray(p, dtype=float)
        return float(p @ self.M @ p)

    @property
    def coefficients(self) -> tuple[float, float, float]:
        """``(alpha, beta, gamma)`` of ``alpha x^2 + beta x y + gamma y^2 = 1``."""
        return float(self.M[0, 0]), float(2 * self.M[0, 1]), float(self.M[1, 1])


def conic_through(a, b, c) -> Conic:
    """The unique central conic through three pairwise independent points.

    In the coordinates of the basis ``(a, b)`` it reads
    ``X^2 + 2 delta X Y + Y^2 = 1``; transforming back gives
    ``M = Phi^{-t} [[1, delta], [delta, 1]] Phi^{-1}`` with ``Phi = [a b]``.
    """
    for p, q, name in ((a, b, "a, b"), (b, c, "b, c"), (a, c, "a, c")):
        if not _independent(p, q):
            raise DegenerateError(f"points {name} are linearly dependent")
    delta = sector_coefficient(a, b, c)
    Phi = np.column_stack([np.asarray(a, float), np.asarray(b, float)])
    Pinv = np.linalg.inv(Phi)
    C = np.array([[1.0, delta], [delta, 1.0]])
    return Conic(Pinv.T @ C @ Pinv)


def conic_classify(conic) -> tuple[float, ConicKind]:
    M = conic.M if isinstance(conic, Conic) else Conic(conic).M
    det = float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    thr = CONIC_ZERO_RTOL * float(np.max(np.sum(np.abs(M), axis=1))) ** 2
    if abs(det) <= thr:
        return det, ConicKind.PARALLEL_LINES
    return det, (ConicKind.ELLIPSE if det > 0 else ConicKind.HYPERBOLA_BRANCHES)
