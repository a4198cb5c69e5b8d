"""Exact symbolic bound magnitudes.

A BoundValue is a product of integer powers prod(b_i ** e_i) held
unexpanded, together with a certified base-10 logarithm interval.  Bounds
like (n^n)^((3n+E)*n^n) dwarf anything materialisable, so arithmetic stays
on the factored form; decimal expansion is permitted only below a digit cap.

Equality is mathematical, not structural: 4^24 == 2^48.  It is decided by
rewriting both sides over a joint gcd-free (pairwise coprime) base set.
Order comparisons use interval enclosures of log10 with escalating
precision, falling back on exact equality when the intervals refuse to
separate.
"""

from __future__ import annotations

import math
import sys
from typing import Dict, Iterable, List, Optional, Tuple

import mpmath

from .caps import DEFAULT_CAPS


def _allow_str_digits(n: int) -> None:
    # the interpreter limits int -> str conversions; printing big bounds in
    # decimal is a designed feature up to the configured digit cap
    try:
        if sys.get_int_max_str_digits() < n + 10:
            sys.set_int_max_str_digits(n + 10)
    except AttributeError:  # very old interpreters have no limit
        pass


def _coprime_basis(nums: Iterable[int]) -> List[int]:
    """gcd-free basis: pairwise coprime integers > 1 multiplicatively
    generating every input (factor refinement)."""
    basis: List[int] = []
    work = [int(n) for n in nums if n > 1]
    while work:
        n = work.pop()
        if n == 1:
            continue
        for i, p in enumerate(basis):
            g = math.gcd(n, p)
            if g == 1:
                continue
            # refine: p and n both factor through {g, p/g, n/g}
            basis.pop(i)
            work.extend((g, p // g, n // g))
            break
        else:
            basis.append(n)
    return sorted(basis)


def _factor_over_basis(n: int, exp: int, basis: List[int], out: Dict[int, int]):
    """Accumulate exp * (exponent vector of n over a gcd-free basis)."""
    for p in basis:
        if n == 1:
            break
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out[p] = out.get(p, 0) + k * exp
    if n != 1:
        raise ArithmeticError(f"{n} not generated by basis {basis}")


class BoundValue:
    """Positive integer held as an unexpanded product of powers, or infinity."""

    __slots__ = ("_factors", "_infinite", "_log10_cache")

    def __init__(self, factors: Iterable[Tuple[int, int]] = (), *, infinite: bool = False):
        merged: Dict[int, int] = {}
        if not infinite:
            for base, exp in factors:
                base = int(base)
                exp = int(exp)
                if base < 1 or exp < 0:
                    raise ValueError("bases must be >= 1 and exponents >= 0")
                if base == 1 or exp == 0:
                    continue
                merged[base] = merged.get(base, 0) + exp
        object.__setattr__(self, "_factors", tuple(sorted(merged.items())))
        object.__setattr__(self, "_infinite", infinite)
        object.__setattr__(self, "_log10_cache", {})

    def __setattr__(self, *a):
        raise AttributeError("BoundValue is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "BoundValue":
        if n < 1:
            raise ValueError("BoundValue must be >= 1")
        return cls([(n, 1)])

    @property
    def is_infinite(self) -> bool:
        return self._infinite

    @property
    def factors(self) -> Tuple[Tuple[int, int], ...]:
        return self._factors

    @property
    def is_one(self) -> bool:
        return not self._infinite and not self._factors

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "BoundValue":
        if isinstance(other, BoundValue):
            return other
        if isinstance(other, int):
            return BoundValue.from_int(other)
        return NotImplemented

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._infinite or o._infinite:
            return INF
        return BoundValue(self._factors + o._factors)

    __rmul__ = __mul__

    def pow(self, exponent: int) -> "BoundValue":
        exponent = int(exponent)
        if exponent < 0:
            raise ValueError("exponent must be >= 0")
        if exponent == 0:
            return ONE
        if self._infinite:
            return INF
        return BoundValue((b, e * exponent) for b, e in self._factors)

    __pow__ = pow

    # -- expansion ---------------------------------------------------------

    def digits10_interval(self) -> Tuple[int, int]:
        """Interval [lo, hi] certainly containing the decimal digit count."""
        if self._infinite:
            raise OverflowError("infinite bound")
        if not self._factors:
            return (1, 1)
        lo, hi = self.log10_interval()
        return (int(math.floor(lo)) + 1, int(math.floor(hi)) + 1)

    def to_int(self, max_digits: int = DEFAULT_CAPS.decimal_digits) -> Optional[int]:
        """Expand to a plain integer, or None when past the digit cap."""
        if self._infinite:
            return None
        if self.digits10_interval()[0] > max_digits:
            return None
        out = 1
        for base, exp in self._factors:
            out *= base ** exp
        return out

    # -- certified log10 ---------------------------------------------------

    def log10_interval(self, dps: int = 30) -> Tuple[float, float]:
        """Certified enclosure of log10 of the value (interval arithmetic)."""
        if self._infinite:
            return (math.inf, math.inf)
        cached = self._log10_cache.get(dps)
        if cached is not None:
            return cached
        old = mpmath.iv.dps
        try:
            mpmath.iv.dps = dps
            total = mpmath.iv.mpf(0)
            ln10 = mpmath.iv.log(mpmath.iv.mpf(10))
            for base, exp in self._factors:
                total += mpmath.iv.mpf(exp) * mpmath.iv.log(mpmath.iv.mpf(base)) / ln10
            result = (float(mpmath.mpf(total.a)), float(mpmath.mpf(total.b)))
        finally:
            mpmath.iv.dps = old
        self._log10_cache[dps] = result
        return result

    # -- comparisons -------------------------------------------------------

    def _canonical_vector(self, basis: List[int]) -> Tuple[Tuple[int, int], ...]:
        out: Dict[int, int] = {}
        for base, exp in self._factors:
            _factor_over_basis(base, exp, basis, out)
        return tuple(sorted((p, e) for p, e in out.items() if e))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._infinite or o._infinite:
            return self._infinite and o._infinite
        if self._factors == o._factors:
            return True
        basis = _coprime_basis([b for b, _ in self._factors] + [b for b, _ in o._factors])
        return self._canonical_vector(basis) == o._canonical_vector(basis)

    __hash__ = None  # structural hashing would break mathematical equality

    def compare(self, other) -> int:
        """-1, 0 or 1; exact."""
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare BoundValue with {type(other)}")
        if self._infinite or o._infinite:
            if self._infinite and o._infinite:
                return 0
            return 1 if self._infinite else -1
        if self == o:
            return 0
        dps = 30
        while True:
            alo, ahi = self.log10_interval(dps)
            blo, bhi = o.log10_interval(dps)
            if ahi < blo:
                return -1
            if bhi < alo:
                return 1
            dps *= 2
            if dps > 100_000:  # unequal values always separate; defensive
                raise ArithmeticError("bound comparison failed to converge")

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # -- rendering ---------------------------------------------------------

    def render(self, max_digits: int = DEFAULT_CAPS.decimal_digits) -> str:
        """Decimal if it fits the digit cap, else the symbolic product."""
        if self._infinite:
            return "inf"
        value = self.to_int(max_digits)
        if value is not None:
            _allow_str_digits(self.digits10_interval()[1])
            return str(value)
        sym = " * ".join(f"{b}^{e}" if e != 1 else str(b) for b, e in self._factors)
        lo, hi = self.log10_interval()
        return f"{sym} (~10^[{lo:.6g}, {hi:.6g}])"

    def __str__(self):
        return self.render(max_digits=40)

    def __repr__(self):
        if self._infinite:
            return "BoundValue.INF"
        return f"BoundValue({list(self._factors)!r})"

    def to_json(self, max_digits: int = DEFAULT_CAPS.decimal_digits) -> dict:
        if self._infinite:
            return {"infinite": True, "factors": None, "log10": None, "decimal": None}
        value = self.to_int(max_digits)
        if value is not None:
            _allow_str_digits(self.digits10_interval()[1])
        lo, hi = self.log10_interval()
        return {
            "infinite": False,
            "factors": [[str(b), str(e)] for b, e in self._factors],
            "log10": [lo, hi],
            "decimal": None if value is None else str(value),
        }


ONE = BoundValue()
INF = BoundValue(infinite=True)


def bv_min(*values: BoundValue) -> BoundValue:
    best = values[0]
    for v in values[1:]:
        if v.compare(best) < 0:
            best = v
    return best
