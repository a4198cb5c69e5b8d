"""Naturals extended with infinity, for rank and subgroup-order bounds."""

from __future__ import annotations

from typing import Union


class ExtNat:
    """A non-negative integer or infinity, with saturating arithmetic."""

    __slots__ = ("value",)

    def __init__(self, value: Union[int, None]):
        if value is not None:
            value = int(value)
            if value < 0:
                raise ValueError("ExtNat must be non-negative")
        object.__setattr__(self, "value", value)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __setattr__(self, *a):
        raise AttributeError("ExtNat is immutable")

    def __int__(self) -> int:
        if self.value is None:
            raise OverflowError("infinite ExtNat")
        return self.value

    def _coerce(self, other) -> "ExtNat":
        if isinstance(other, ExtNat):
            return other
        if isinstance(other, int):
            return ExtNat(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.value is None or o.value is None:
            return INF
        return ExtNat(self.value + o.value)

    __radd__ = __add__

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.value == 0 or o.value == 0:
            return ExtNat(0)
        if self.value is None or o.value is None:
            return INF
        return ExtNat(self.value * o.value)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.value == o.value

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.value is None:
            return False
        if o.value is None:
            return True
        return self.value < o.value

    def __le__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self == o or self < o

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __hash__(self):
        return hash(("ExtNat", self.value))

    def __repr__(self):
        return f"ExtNat({self.value})"

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def to_json(self) -> str:
        return str(self)


INF = ExtNat(None)
ZERO = ExtNat(0)
ONE = ExtNat(1)
