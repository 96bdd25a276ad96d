"""The form class group Cl(delta) of negative discriminant.

A class is stored as its unique reduced positive definite representative.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from . import forms
from .errors import DomainError, FormatError
from .forms import BinaryForm, IntMat2, act, discriminant, reduce
from .intarith import ext_gcd, factor_trial, is_fundamental, is_square, jacobi, mod_inverse


@dataclass(frozen=True, order=True)
class ClassElement:
    form: BinaryForm
    delta: int

    def __post_init__(self):
        f = BinaryForm(*self.form)
        object.__setattr__(self, "form", f)
        if discriminant(f) != self.delta or self.delta >= 0:
            raise DomainError(f"{f} does not have negative discriminant {self.delta}")
        if not forms.is_reduced(f) or not forms.content(f)[1]:
            raise DomainError(f"{f} is not a reduced primitive form")

    def __str__(self):
        return f"({self.form.a},{self.form.b})"

    def __mul__(self, other: "ClassElement") -> "ClassElement":
        return compose(self, other)

    def __pow__(self, n: int) -> "ClassElement":
        return pow_(self, n)


class GenusReport(NamedTuple):
    g_plus: int
    g_geom: int
    m: int


def class_of(q) -> ClassElement:
    r, _ = reduce(q)
    return ClassElement(r, discriminant(r))


def _check_delta(delta: int) -> None:
    if delta >= 0 or delta % 4 not in (0, 1):
        raise DomainError(f"need negative discriminant = 0, 1 mod 4, got {delta}")


def identity(delta: int) -> ClassElement:
    _check_delta(delta)
    k = delta % 2
    return class_of(BinaryForm(1, k, (k - delta) // 4))


def inverse(F: ClassElement) -> ClassElement:
    a, b, c = F.form
    return class_of(BinaryForm(a, -b, c))


def _complete_to_sl2(x: int, y: int) -> IntMat2:
    # [[x, z], [y, w]] with x w - y z = 1
    d, p, q = ext_gcd(x, y)
    if d != 1:
        raise DomainError(f"({x}, {y}) is not a primitive vector")
    return IntMat2(x, -q, y, p)


def _small_vectors():
    h = 1
    while True:
        for k in range(-h, h + 1):
            yield h, k
        for k in range(-h + 1, h):
            yield k, h
        h += 1


def _coprime_representative(q: BinaryForm, n: int) -> BinaryForm:
    """A form properly equivalent to ``q`` whose leading coefficient is coprime to ``n``.

    Tries the explicit vector ``x = n/gcd(c, n)``, ``y = n/gcd(a x, n)`` first.
    Falls back to scanning small primitive vectors, at most ``|delta|`` of them.
    """
    a, b, c = q
    if gcd(a, n) == 1:
        return q
    x = n // gcd(c, n)
    y = n // gcd(a * x, n)
    for x, y in itertools.islice(itertools.chain([(x, y)], _small_vectors()), abs(discriminant(q))):
        if gcd(x, y) == 1 and gcd(forms.evaluate(q, x, y), n) == 1:
            return act(q, _complete_to_sl2(x, y))
    raise DomainError(f"no representative of {q} with leading coefficient coprime to {n}")


def compose(F: ClassElement, G: ClassElement) -> ClassElement:
    """Product of two classes of the same discriminant.

    ``G`` is moved to a representative ``[a2, b2, c2]`` with ``gcd(a1, a2) = 1``;
    then ``2 a1 n = b2 - b1 (mod a2)`` gives the common middle coefficient
    ``B = b1 + 2 a1 n`` and the result is the reduction of ``[a1 a2, B, *]``.
    """
    if F.delta != G.delta:
        raise DomainError(f"discriminants differ: {F.delta} vs {G.delta}")
    delta = F.delta
    a1, b1, _ = F.form
    a2, b2, _ = _coprime_representative(G.form, a1)
    # b1, b2 share the parity of delta
    n = ((b2 - b1) // 2 * mod_inverse(a1, a2)) % a2
    B = b1 + 2 * a1 * n
    A = a1 * a2
    C, rem = divmod(B * B - delta, 4 * A)
    assert rem == 0
    return class_of(BinaryForm(A, B, C))


def pow_(F: ClassElement, n: int) -> ClassElement:
    """``F`` composed with itself ``n >= 0`` times (square and multiply)."""
    if n < 0:
        raise DomainError("exponent must be >= 0")
    result = identity(F.delta)
    base = F
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor_trial(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def order_of(F: ClassElement, group_order: int | None = None) -> int:
    """Least ``n >= 1`` with ``F^n`` the identity.

    With ``group_order`` given only its divisors are tried; otherwise the
    powers are walked one by one.
    """
    e = identity(F.delta)
    if group_order:
        for d in _divisors(group_order):
            if pow_(F, d) == e:
                return d
        raise DomainError(f"order of {F} does not divide {group_order}")
    k, G = 1, F
    while G != e:
        G = compose(G, F)
        k += 1
    return k


def class_number_enum(delta: int) -> int:
    return len(forms.enumerate_reduced(delta))


def class_number_formula(delta: int) -> int:
    """``h(delta) = (1/delta) * sum_{n=1}^{|delta|-1} (delta/n) n`` for
    fundamental ``delta < -4``, summed exactly.

    Raises :class:`DomainError` if the sum is not a positive integer, which
    happens for some ``delta = 4k`` with ``k = 1 mod 4`` accepted by the
    loose fundamental test.
    """
    if delta >= -4:
        raise DomainError(f"formula needs delta < -4, got {delta}")
    if not is_fundamental(delta):
        raise DomainError(f"{delta} is not fundamental")
    total = sum(jacobi(delta, n) * n for n in range(1, -delta))
    h = Fraction(total, delta)
    if h.denominator != 1 or h <= 0:
        raise DomainError(f"class-number sum for {delta} evaluates to {h}, not a positive integer")
    return int(h)


def count_ambiguous(delta: int) -> int:
    """Number of reduced classes whose square is the identity."""
    e = identity(delta)
    return sum(1 for f in forms.enumerate_reduced(delta) if compose(class_of(f), class_of(f)) == e)


def classical_class_count(delta: int) -> int:
    """Classes of primitive forms under GL2(Z) congruence: ``(g+ + h+)/2``.

    For ``delta < 0`` both the proper class number and the proper genus
    number double because positive and negative definite classes are counted.
    """
    h_plus = 2 * class_number_enum(delta)
    g_plus = 2 * count_ambiguous(delta)
    return (g_plus + h_plus) // 2


def genus_numbers(delta: int) -> GenusReport:
    """Proper and geometric genus numbers for a non-square ``delta > 0``.

    ``m`` is the number of distinct odd primes dividing ``delta``.
    """
    if delta <= 0:
        raise DomainError(f"genus formulas need delta > 0, got {delta}")
    if delta % 4 not in (0, 1):
        raise DomainError(f"discriminant {delta} is not 0 or 1 mod 4")
    if is_square(delta)[0]:
        raise DomainError(f"discriminant {delta} is a square")
    primes = [p for p, _ in factor_trial(delta)]
    odd = [p for p in primes if p != 2]
    m = len(odd)

    if delta % 2 == 1 or (delta // 4) % 4 == 1:
        g_plus_exp = m - 1
    elif delta % 32 == 0:
        g_plus_exp = m + 1
    else:
        g_plus_exp = m

    residue_one = delta % 4 == 1 or (delta % 4 == 0 and (delta // 4) % 4 == 1)
    has_q = any(p % 4 == 3 for p in odd)
    eight_pi = False
    if delta % 8 == 0:
        rest = delta // 8
        eight_pi = rest % 2 == 1 and all(p % 4 == 1 for p, _ in factor_trial(rest))
    if has_q and residue_one:
        g_exp = m - 2
    elif eight_pi or delta % 32 == 0:
        g_exp = m
    else:
        g_exp = m - 1

    if g_exp < 0 or g_plus_exp < 0:
        raise DomainError(f"genus formulas give a fractional value for {delta}")
    report = GenusReport(2**g_plus_exp, 2**g_exp, m)
    if report.g_plus not in (report.g_geom, 2 * report.g_geom):
        raise DomainError(f"genus formulas disagree for {delta}: {report}")
    return report


_PAIR_RE = re.compile(r"\s*\(?\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)?\s*")


def parse_class(text: str, delta: int | None = None) -> ClassElement:
    """Read ``"(a,b)"`` / ``"a,b"`` (needs ``delta``) or ``"[a,b,c]"``.

    Pair input must already be reduced; full forms are reduced on the way in.
    """
    if text.count(",") == 2:
        q = BinaryForm.parse(text)
        if delta is not None and discriminant(q) != delta:
            raise FormatError(f"{q} does not have discriminant {delta}")
        return class_of(q)
    m = _PAIR_RE.fullmatch(text)
    if not m:
        raise FormatError(f"cannot parse class {text!r}")
    if delta is None:
        raise FormatError("pair input needs the discriminant")
    from .crypto import decompress

    return decompress((int(m.group(1)), int(m.group(2))), delta)
