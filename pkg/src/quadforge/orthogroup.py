"""Automorphs of integral binary forms and units of norm +-1.

A solution ``(x, y)`` of ``n_delta(x, y) = +-1`` corresponds to
``(t, u) = (2x + delta*y, y)`` with ``t^2 - delta*u^2 = +-4``; solutions of
norm +1 parametrise the proper automorphs of any primitive form of
discriminant ``delta``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classgroup import ClassElement, compose, identity
from .errors import DomainError
from .forms import BinaryForm, IntMat2, act, content, discriminant
from .intarith import is_square

DEFAULT_NORM_BOUND = 10**6


@dataclass(frozen=True)
class NormSolution:
    x: int
    y: int
    value: int
    t: int
    u: int

    @classmethod
    def from_tu(cls, t: int, u: int, delta: int) -> "NormSolution":
        num = t * t - delta * u * u
        if (t - delta * u) % 2 or num % 4 or num // 4 not in (1, -1):
            raise DomainError(f"(t, u) = ({t}, {u}) does not solve t^2 - {delta} u^2 = +-4")
        return cls((t - delta * u) // 2, u, num // 4, t, u)


def norm_form(delta: int) -> BinaryForm:
    if delta % 4 not in (0, 1):
        raise DomainError(f"discriminant {delta} is not 0 or 1 mod 4")
    return BinaryForm(1, delta, (delta * delta - delta) // 4)


def solve_norm_pm1(delta: int, bound: int = DEFAULT_NORM_BOUND, include_trivial: bool = True) -> list[NormSolution]:
    """All solutions of ``t^2 - delta u^2 = +-4`` with ``|u| <= bound``.

    Brute force over ``u``; sorted by ``(|u|, u, t)``.
    """
    if delta % 4 not in (0, 1):
        raise DomainError(f"discriminant {delta} is not 0 or 1 mod 4")
    if is_square(delta)[0]:
        raise DomainError(f"discriminant {delta} is a square")
    if bound < 1:
        raise DomainError("bound must be >= 1")
    out = []
    for au in range(bound + 1):
        for rhs in (4, -4):
            ok, t = is_square(delta * au * au + rhs)
            if not ok:
                continue
            for u in ((0,) if au == 0 else (-au, au)):
                for tt in ((0,) if t == 0 else (-t, t)):
                    out.append(NormSolution.from_tu(tt, u, delta))
    if not include_trivial:
        out = [s for s in out if s.u != 0]
    out.sort(key=lambda s: (abs(s.u), s.u, s.t))
    return out


def compose_units(s1: NormSolution, s2: NormSolution, delta: int) -> NormSolution:
    """Product of ``(t1 + u1 sqrt(delta))/2`` and ``(t2 + u2 sqrt(delta))/2``."""
    t = (s1.t * s2.t + delta * s1.u * s2.u) // 2
    u = (s1.t * s2.u + s2.t * s1.u) // 2
    return NormSolution.from_tu(t, u, delta)


def automorph_from_solution(q, s: NormSolution) -> IntMat2:
    """Proper automorph of ``q`` attached to a norm +1 solution."""
    q = BinaryForm(*q)
    a, b, c = q
    delta = discriminant(q)
    if s.value != 1:
        raise DomainError("only norm +1 solutions give proper automorphs")
    if not content(q)[1]:
        raise DomainError(f"{q} is not primitive")
    if is_square(delta)[0]:
        raise DomainError(f"discriminant {delta} is a square")
    if s.t * s.t - delta * s.u * s.u != 4:
        raise DomainError(f"solution does not belong to discriminant {delta}")
    x, y = s.x, s.y
    M = IntMat2(x + y * (delta - b) // 2, -c * y, a * y, x + y * (delta + b) // 2)
    if M.det != 1 or not is_automorph(q, M):
        raise DomainError(f"{M} is not a proper automorph of {q}")
    return M


def is_automorph(q, M) -> bool:
    return act(q, M) == BinaryForm(*q)


def is_automorph_gram(q, M) -> bool:
    """Integer check ``M^t (2P) M == 2P`` with ``2P = [[2a, b], [b, 2c]]``."""
    a, b, c = q
    M = IntMat2(*M)
    if abs(M.det) != 1:
        raise DomainError(f"matrix {M} has determinant {M.det}, expected +-1")
    P = [[2 * a, b], [b, 2 * c]]
    A = M.tolist()
    At = [[A[0][0], A[1][0]], [A[0][1], A[1][1]]]
    prod = [[sum(At[i][k] * P[k][l] * A[l][j] for k in range(2) for l in range(2)) for j in range(2)]
            for i in range(2)]
    return prod == P


def has_improper_automorph(F: ClassElement) -> bool:
    """True iff forms in ``F`` admit an automorph of determinant -1 (``F^2 = 1``)."""
    return compose(F, F) == identity(F.delta)
