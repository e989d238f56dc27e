"""Exponents in (0, inf] and the index algebra built on reciprocals.

An :class:`Exponent` is stored through its reciprocal ``inv = 1/p`` as an
exact :class:`fractions.Fraction`, so ``inv == 0`` is exactly ``p = inf``
and derived indices are obtained by exact subtraction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

ExponentLike = Union["Exponent", int, float, Fraction, str]

_INF_TOKENS = {"inf", "infinity", "+inf", "oo"}


@dataclass(frozen=True)
class Exponent:
    """A norm index ``p`` in ``(0, inf]``, held as its reciprocal."""

    inv: Fraction

    def __post_init__(self):
        if not isinstance(self.inv, Fraction):
            object.__setattr__(self, "inv", Fraction(self.inv))
        if self.inv < 0:
            raise ValueError(f"exponent must be positive, got 1/p = {self.inv}")

    @classmethod
    def of(cls, value: ExponentLike) -> "Exponent":
        """Build an exponent from a number, a fraction string or ``"inf"``."""
        if isinstance(value, Exponent):
            return value
        if isinstance(value, str):
            token = value.strip().lower()
            if token in _INF_TOKENS:
                return cls(Fraction(0))
            try:
                value = Fraction(token)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"cannot parse exponent {value!r}") from exc
        if isinstance(value, float):
            if math.isinf(value) and value > 0:
                return cls(Fraction(0))
            if not math.isfinite(value):
                raise ValueError(f"invalid exponent {value!r}")
        value = Fraction(value)
        if value <= 0:
            raise ValueError(f"exponent must be positive, got {value}")
        return cls(1 / value)

    @property
    def is_infinite(self) -> bool:
        return self.inv == 0

    @property
    def exact(self) -> Optional[Fraction]:
        """The exact value of ``p``, or ``None`` for ``inf``."""
        return None if self.is_infinite else 1 / self.inv

    @property
    def value(self) -> float:
        return math.inf if self.is_infinite else float(1 / self.inv)

    def __float__(self) -> float:
        return self.value

    # p <= p'  <=>  1/p >= 1/p'
    def __lt__(self, other: ExponentLike) -> bool:
        return self.inv > Exponent.of(other).inv

    def __le__(self, other: ExponentLike) -> bool:
        return self.inv >= Exponent.of(other).inv

    def __gt__(self, other: ExponentLike) -> bool:
        return self.inv < Exponent.of(other).inv

    def __ge__(self, other: ExponentLike) -> bool:
        return self.inv <= Exponent.of(other).inv

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        v = 1 / self.inv
        if v.denominator == 1:
            return str(v.numerator)
        if v.denominator <= 10_000:
            return f"{v.numerator}/{v.denominator}"
        return repr(float(v))

    def __repr__(self) -> str:
        return f"Exponent({self})"


INF = Exponent(Fraction(0))
ONE = Exponent(Fraction(1))
TWO = Exponent(Fraction(1, 2))


def conjugate(p: ExponentLike) -> Exponent:
    """Conjugate index ``p*`` with ``1/p + 1/p* = 1``; requires ``p >= 1``."""
    p = Exponent.of(p)
    if p.inv > 1:
        raise ValueError(f"conjugate exponent needs p >= 1, got p = {p}")
    return Exponent(1 - p.inv)


@dataclass(frozen=True)
class ExponentPair:
    """Domain index ``p`` and target index ``q <= p`` with derived indices.

    ``r`` solves ``1/r = 1/q - 1/p`` and ``s`` solves ``1/s = 1/(2r) + 1/4``.
    Conjugates are ``None`` when the index is below 1.
    """

    p: Exponent
    q: Exponent
    r: Exponent = field(init=False)
    s: Exponent = field(init=False)
    p_conj: Optional[Exponent] = field(init=False)
    q_conj: Optional[Exponent] = field(init=False)

    def __post_init__(self):
        p, q = Exponent.of(self.p), Exponent.of(self.q)
        if q > p:
            raise ValueError(f"need q <= p, got p = {p}, q = {q}")
        r = Exponent(q.inv - p.inv)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", Exponent(r.inv / 2 + Fraction(1, 4)))
        object.__setattr__(self, "p_conj", conjugate(p) if p.inv <= 1 else None)
        object.__setattr__(self, "q_conj", conjugate(q) if q.inv <= 1 else None)

    def __str__(self) -> str:
        return f"(p={self.p}, q={self.q})"


def make_pair(p: ExponentLike, q: ExponentLike) -> ExponentPair:
    return ExponentPair(Exponent.of(p), Exponent.of(q))
