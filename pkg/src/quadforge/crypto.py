"""Diffie-Hellman key agreement in the class group of a negative discriminant.

.. warning::
   Teaching code. Exponentiation is not constant time and nothing here is
   hardened against side channels. Real deployments need discriminants of
   several hundred bits and secrets of at least 16 bytes; this module caps
   the discriminant so the generator can be chosen by enumeration.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import forms
from .classgroup import ClassElement, class_of, identity, order_of, pow_
from .errors import CapacityError, DomainError, FormatError
from .forms import BinaryForm

DEFAULT_MAX_ENUM = 10**6


def max_enum() -> int:
    """Enumeration cap on ``|delta|``; ``QUADFORGE_MAX_ENUM`` overrides it."""
    raw = os.environ.get("QUADFORGE_MAX_ENUM")
    return int(raw) if raw else DEFAULT_MAX_ENUM


@dataclass(frozen=True)
class PublicParams:
    delta: int
    generator: ClassElement
    group_order_hint: int = 0


@dataclass(frozen=True)
class KeyPair:
    secret: int
    public_value: ClassElement


def _generator_key(f: BinaryForm):
    # smallest a, then smallest |b|, then b >= 0
    return (f.a, abs(f.b), f.b < 0)


def setup(delta: int, generator: ClassElement | None = None) -> PublicParams:
    """Public parameters for ``delta``.

    Without an explicit ``generator`` the class of maximal order is taken,
    ties going to the smallest ``(a, |b|)`` with non-negative ``b``.
    """
    if delta >= 0 or delta % 4 not in (0, 1):
        raise DomainError(f"need negative discriminant = 0, 1 mod 4, got {delta}")
    if -delta > max_enum():
        raise CapacityError(f"|delta| = {-delta} exceeds the enumeration cap {max_enum()}")
    reduced = forms.enumerate_reduced(delta)
    h = len(reduced)
    if generator is not None:
        if generator.delta != delta:
            raise DomainError("generator has the wrong discriminant")
        return PublicParams(delta, generator, h)
    best, best_order = None, 0
    for f in sorted(reduced, key=_generator_key):
        k = order_of(ClassElement(f, delta), h)
        if k > best_order:
            best, best_order = f, k
            if k == h:
                break
    return PublicParams(delta, ClassElement(best, delta), h)


def keygen(params: PublicParams, secret: int) -> KeyPair:
    if secret < 1:
        raise DomainError("secret exponent must be >= 1")
    return KeyPair(secret, pow_(params.generator, secret))


def dh_shared(params: PublicParams, my_secret: int, their_public: ClassElement) -> ClassElement:
    if their_public.delta != params.delta:
        raise DomainError("public value has the wrong discriminant")
    if my_secret < 1:
        raise DomainError("secret exponent must be >= 1")
    return pow_(their_public, my_secret)


def compress(F: ClassElement) -> tuple[int, int]:
    return F.form.a, F.form.b


def decompress(pair: tuple[int, int], delta: int) -> ClassElement:
    """Rebuild the reduced form from ``(a, b)``; ``c = (b^2 - delta) / (4a)``."""
    a, b = pair
    if a <= 0:
        raise FormatError(f"leading coefficient must be positive, got {a}")
    c, rem = divmod(b * b - delta, 4 * a)
    if rem:
        raise FormatError(f"({a},{b}) gives a non-integral third coefficient for delta = {delta}")
    try:
        return ClassElement(BinaryForm(a, b, c), delta)
    except DomainError as exc:
        raise FormatError(str(exc)) from exc


def format_public(F: ClassElement) -> str:
    a, b = compress(F)
    return f"{a},{b}"


def parse_public(text: str, delta: int) -> ClassElement:
    try:
        a, b = (int(v) for v in text.strip().strip("()").split(","))
    except ValueError as exc:
        raise FormatError(f"cannot parse public value {text!r}") from exc
    return decompress((a, b), delta)


__all__ = [
    "PublicParams", "KeyPair", "setup", "keygen", "dh_shared", "compress", "decompress",
    "format_public", "parse_public", "identity", "class_of",
]
