"""Integral binary quadratic forms ``[a, b, c] = a x^2 + b x y + c y^2``.

Forms are stored as coefficient triples. Matrices act on the right by
substitution: ``act(q, M)(x, y) = q(r x + s y, t x + u y)`` for
``M = [[r, s], [t, u]]``, so ``act(act(q, M), N) == act(q, M @ N)``.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

from .errors import DomainError, FormatError


class BinaryForm(NamedTuple):
    a: int
    b: int
    c: int

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"

    @classmethod
    def parse(cls, text: str) -> "BinaryForm":
        """Parse ``"[a,b,c]"`` (whitespace allowed, brackets optional)."""
        m = _FORM_RE.fullmatch(text)
        if not m:
            raise FormatError(f"cannot parse form {text!r}; expected [a,b,c]")
        return cls(*(int(g) for g in m.groups()))

    @property
    def discriminant(self) -> int:
        return discriminant(self)

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)


class IntMat2(NamedTuple):
    """2x2 integer matrix ``[[r, s], [t, u]]``."""

    r: int
    s: int
    t: int
    u: int

    @classmethod
    def identity(cls) -> "IntMat2":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.r * self.u - self.s * self.t

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        r, s, t, u = self
        R, S, T, U = other
        return IntMat2(r * R + s * T, r * S + s * U, t * R + u * T, t * S + u * U)

    def tolist(self) -> list[list[int]]:
        return [[self.r, self.s], [self.t, self.u]]

    def __str__(self):
        return f"[[{self.r},{self.s}],[{self.t},{self.u}]]"


_INT = r"\s*([+-]?\d+)\s*"
_FORM_RE = re.compile(r"\s*\[?" + _INT + "," + _INT + "," + _INT + r"\]?\s*")


class Definiteness(str, enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    NEGATIVE_DEFINITE = "negative_definite"
    INDEFINITE = "indefinite"
    DEGENERATE = "degenerate"


def _as_form(q) -> BinaryForm:
    q = q if isinstance(q, BinaryForm) else BinaryForm(*q)
    if q.a == 0 and q.b == 0 and q.c == 0:
        raise DomainError("the zero form is excluded")
    return q


def discriminant(q) -> int:
    a, b, c = _as_form(q)
    return b * b - 4 * a * c


def content(q) -> tuple[int, bool]:
    """``(gcd(a, b, c), is_primitive)``."""
    a, b, c = _as_form(q)
    g = gcd(gcd(a, b), c)
    return g, g == 1


def evaluate(q, x: int, y: int) -> int:
    a, b, c = q
    return a * x * x + b * x * y + c * y * y


def act(q, M) -> BinaryForm:
    """Substitute ``(x, y) -> (r x + s y, t x + u y)`` into ``q``.

    Only unimodular ``M`` (determinant +1 or -1) are accepted.
    """
    a, b, c = q
    M = M if isinstance(M, IntMat2) else IntMat2(*M)
    if abs(M.det) != 1:
        raise DomainError(f"matrix {M} has determinant {M.det}, expected +-1")
    r, s, t, u = M
    return BinaryForm(
        a * r * r + b * r * t + c * t * t,
        2 * a * r * s + b * (r * u + s * t) + 2 * c * t * u,
        a * s * s + b * s * u + c * u * u,
    )


def translation(n: int) -> IntMat2:
    return IntMat2(1, n, 0, 1)


# [c, -b, a] = q . SWAP
SWAP = IntMat2(0, -1, 1, 0)


def normalize(q) -> tuple[BinaryForm, IntMat2]:
    """Translate ``q`` so that ``-a < b <= a``; return the form and the matrix used."""
    a, b, c = q
    if a <= 0:
        raise DomainError(f"normalisation needs a > 0, got {BinaryForm(*q)}")
    n = (a - b) // (2 * a)
    M = translation(n)
    return act(q, M), M


def _check_positive_definite(q, *, primitive=True) -> BinaryForm:
    q = _as_form(q)
    if discriminant(q) >= 0 or q.a <= 0:
        raise DomainError(f"{q} is not positive definite")
    if primitive and not content(q)[1]:
        raise DomainError(f"{q} is not primitive")
    return q


def is_reduced(q) -> bool:
    a, b, c = _check_positive_definite(q, primitive=False)
    return (-a < b <= a < c) or (0 <= b <= a == c)


def reduce(q) -> tuple[BinaryForm, IntMat2]:
    """Reduced form properly equivalent to ``q`` and an SL2 matrix ``M`` with
    ``act(q, M) == reduced``.

    Repeatedly replaces ``[a, b, c]`` by the normalisation of ``[c, -b, a]``.
    """
    q = _check_positive_definite(q)
    q, M = normalize(q)
    while not is_reduced(q):
        q, N = normalize(act(q, SWAP))
        M = M @ SWAP @ N
    return q, M


def enumerate_reduced(delta: int) -> list[BinaryForm]:
    """All primitive reduced forms of discriminant ``delta < 0``, sorted by ``(a, b, c)``."""
    if delta >= 0 or delta % 4 not in (0, 1):
        raise DomainError(f"need negative discriminant = 0, 1 mod 4, got {delta}")
    out = []
    a = 1
    # |b| <= a <= c forces 3 a^2 <= |delta|
    while 3 * a * a <= -delta:
        for b in range(-a + 1, a + 1):
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append(BinaryForm(a, b, c))
        a += 1
    out.sort()
    return out


def classify_definiteness(q) -> Definiteness:
    q = _as_form(q)
    d = discriminant(q)
    if d > 0:
        return Definiteness.INDEFINITE
    if d == 0:
        return Definiteness.DEGENERATE
    return Definiteness.POSITIVE_DEFINITE if q.a > 0 else Definiteness.NEGATIVE_DEFINITE


def represents_primitively(q, m: int, bound: int) -> tuple[int, int] | None:
    """Search coprime ``(x, y)`` with ``|x|, |y| <= bound`` and ``q(x, y) == m``.

    Since ``q(-x, -y) = q(x, y)`` only ``y > 0`` or ``(y == 0, x > 0)`` is
    visited, ordered by ``y``, then ``|x|``, then ``x``. ``None`` only means
    nothing was found within the bound.
    """
    if bound < 1:
        raise DomainError("bound must be >= 1")
    if m == evaluate(q, 1, 0):
        return (1, 0)
    for y in range(1, bound + 1):
        for ax in range(0, bound + 1):
            for x in ((ax,) if ax == 0 else (-ax, ax)):
                if gcd(x, y) == 1 and evaluate(q, x, y) == m:
                    return (x, y)
    return None


def gram_matrix(q) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Exact symmetric matrix ``[[a, b/2], [b/2, c]]`` of ``q``."""
    a, b, c = q
    h = Fraction(b, 2)
    return ((Fraction(a), h), (h, Fraction(c)))


def _rat_sym2(P: Sequence[Sequence]) -> tuple[Fraction, Fraction, Fraction]:
    (p11, p12), (p21, p22) = P
    p11, p12, p21, p22 = (Fraction(v) for v in (p11, p12, p21, p22))
    if p12 != p21:
        raise DomainError("matrix is not symmetric")
    if p11 == p12 == p22 == 0:
        raise DomainError("zero matrix")
    return p11, p12, p22


def geometric_equivalent_2x2(P, Q) -> bool:
    """Equivalence of two non-zero rational symmetric 2x2 matrices up to
    determinant-normalised congruence; decided by equal determinants."""
    p11, p12, p22 = _rat_sym2(P)
    q11, q12, q22 = _rat_sym2(Q)
    return p11 * p22 - p12 * p12 == q11 * q22 - q12 * q12
