"""Exact integer utilities used by the form and class-group modules.

Python integers are arbitrary precision, so nothing here can overflow.
"""

from __future__ import annotations

from math import gcd, isqrt
from typing import Sequence

from .errors import DomainError

#: Largest trial divisor tried by :func:`factor_trial`.
TRIAL_DIVISION_LIMIT = 10**7


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(d, x, y)`` with ``d = gcd(a, b) >= 0`` and ``a*x + b*y = d``.

    ``ext_gcd(0, 0)`` is ``(0, 0, 0)``.
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_x, old_y


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` (``m >= 1``), in ``[0, m)``."""
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    d, x, _ = ext_gcd(a % m, m)
    if d != 1:
        raise DomainError(f"{a} is not invertible modulo {m}")
    return x % m


def _symbol_at_two(delta: int) -> int:
    # agrees with the residue-class definition for delta = 0, 1 mod 4;
    # odd delta = 3 mod 4 follows the Kronecker extension
    if delta % 2 == 0:
        return 0
    return 1 if delta % 8 in (1, 7) else -1


def _symbol_at_odd_prime(delta: int, p: int) -> int:
    r = delta % p
    if r == 0:
        return 0
    # Euler criterion
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def jacobi(delta: int, n: int) -> int:
    """Symbol ``(delta/n)`` for ``n >= 1``, extended multiplicatively in ``n``.

    Prime parts are evaluated directly: ``(delta/2)`` from ``delta mod 8`` and
    ``(delta/p)`` for odd ``p`` by Euler's criterion.
    """
    if n < 1:
        raise DomainError(f"jacobi symbol needs n >= 1, got {n}")
    result = 1
    for p, e in factor_trial(n):
        s = _symbol_at_two(delta) if p == 2 else _symbol_at_odd_prime(delta, p)
        if s == 0:
            return 0
        if s == -1 and e % 2:
            result = -result
    return result


def crt_pair(a: int, p: int, b: int, q: int) -> int:
    """Smallest ``c >= 0`` with ``c = a (mod p)`` and ``c = b (mod q)``."""
    if p < 1 or q < 1:
        raise DomainError("moduli must be positive")
    if gcd(p, q) != 1:
        raise DomainError(f"moduli {p} and {q} are not coprime")
    c = a + p * (((b - a) * mod_inverse(p, q)) % q)
    return c % (p * q)


def is_square(n: int) -> tuple[bool, int]:
    """Return ``(flag, root)``; ``root`` is ``isqrt(n)`` (0 for negative ``n``)."""
    if n < 0:
        return False, 0
    r = isqrt(n)
    return r * r == n, r


def factor_trial(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of ``|n|`` by trial division.

    Returns ``[(prime, exponent), ...]`` with increasing primes; the sign of
    ``n`` is not part of the list. Raises :class:`DomainError` for ``n = 0``
    or when a cofactor would need trial divisors beyond
    :data:`TRIAL_DIVISION_LIMIT`.
    """
    if n == 0:
        raise DomainError("cannot factor zero")
    m = abs(n)
    out = []
    d = 2
    while d * d <= m:
        if d > TRIAL_DIVISION_LIMIT:
            raise DomainError(f"trial division limit exceeded factoring {n}")
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factor_trial(n))


def is_fundamental(delta: int) -> bool:
    """True when ``delta`` or ``delta/4`` is squarefree.

    This is the looser convention: it also accepts ``4k`` with ``k = 1 mod 4``
    squarefree (e.g. 20 or -12), which the usual definition of a fundamental
    discriminant excludes. Use :func:`is_fundamental_strict` for the latter.
    """
    if delta % 4 not in (0, 1):
        raise DomainError(f"discriminant {delta} is not 0 or 1 mod 4")
    if is_square(delta)[0]:
        raise DomainError(f"discriminant {delta} is a square")
    if is_squarefree(delta):
        return True
    return delta % 4 == 0 and is_squarefree(delta // 4)


def is_fundamental_strict(delta: int) -> bool:
    """Usual fundamental-discriminant test (``delta/4 = 2, 3 mod 4`` in the even case)."""
    if delta % 4 == 1:
        return is_fundamental(delta)
    if delta % 4 != 0:
        raise DomainError(f"discriminant {delta} is not 0 or 1 mod 4")
    if is_square(delta)[0]:
        raise DomainError(f"discriminant {delta} is a square")
    k = delta // 4
    return k % 4 in (2, 3) and is_squarefree(k)


def _det(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * _det(minor)
    return total


def int_det_adj(A: Sequence[Sequence[int]]) -> tuple[int, list[list[int]]]:
    """Exact determinant and adjugate of a square integer matrix.

    Cofactors come from Laplace expansion, which is fine up to about 6x6.
    The adjugate satisfies ``adj(A) A = A adj(A) = det(A) E``.
    """
    rows = [[int(v) for v in r] for r in A]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("matrix must be square")
    det = _det(rows)
    if n == 1:
        return det, [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            # adjugate is the transposed cofactor matrix
            adj[j][i] = (-1) ** (i + j) * _det(minor)
    return det, adj


def int_matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
