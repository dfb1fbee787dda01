"""Symbolic +/- infinity used for root values.

Roots carry ``INF`` in a vertex function and ``NEG_INF`` in a configuration.
These are dedicated singletons rather than floats or large integers, so
integer arithmetic on ordinary vertices can never collide with them.
"""

from __future__ import annotations


class _Infinite:
    __slots__ = ("_sign",)

    def __init__(self, sign: int) -> None:
        self._sign = sign

    def __repr__(self) -> str:
        return "inf" if self._sign > 0 else "-inf"

    __str__ = __repr__

    def __reduce__(self) -> str:
        # pickle by global name so identity survives process pools
        return "INF" if self._sign > 0 else "NEG_INF"

    def __hash__(self) -> int:
        return hash(("multipark.infinity", self._sign))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Infinite) and other._sign == self._sign

    def _key(self, other: object) -> tuple[int, int]:
        if isinstance(other, _Infinite):
            return self._sign, other._sign
        if isinstance(other, int) and not isinstance(other, bool):
            return self._sign, 0
        raise TypeError(f"cannot compare {self!r} with {other!r}")

    def __lt__(self, other: object) -> bool:
        a, b = self._key(other)
        return a < b

    def __le__(self, other: object) -> bool:
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other: object) -> bool:
        a, b = self._key(other)
        return a > b

    def __ge__(self, other: object) -> bool:
        a, b = self._key(other)
        return a >= b

    def __add__(self, other: object) -> "_Infinite":
        if isinstance(other, _Infinite) and other._sign != self._sign:
            raise ArithmeticError("inf + -inf is undefined")
        if isinstance(other, (_Infinite, int)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> "_Infinite":
        if isinstance(other, int):
            return self
        return NotImplemented


INF = _Infinite(1)
NEG_INF = _Infinite(-1)


def is_infinite(x: object) -> bool:
    return isinstance(x, _Infinite)
