"""
Exact arithmetic over the prime field F_p.

Hot loops elsewhere in the package work on plain residues in ``[0, p)``;
``FieldElement`` is the checked value type returned across module
boundaries. Multi-indices are plain tuples of naturals.
"""

import math
import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple, Union

from sympy import isprime

from .errors import CharacteristicMismatchError, LengthMismatchError, NotPrimeError

MultiIndex = Tuple[int, ...]


class Prime(int):
    """A prime characteristic; construction fails unless the value is prime."""

    def __new__(cls, p: int) -> "Prime":
        if isinstance(p, Prime):
            return p
        if isinstance(p, bool):
            raise NotPrimeError(f"{p!r} is not prime")
        try:
            value = operator.index(p)
        except TypeError as exc:
            raise NotPrimeError(f"{p!r} is not an integer") from exc
        if value < 2 or not isprime(value):
            raise NotPrimeError(f"{value} is not prime")
        return super().__new__(cls, value)

    def __repr__(self) -> str:
        return f"Prime({int(self)})"


Scalar = Union["FieldElement", int]


@dataclass(frozen=True, eq=False)
class FieldElement:
    """
    Element of F_p stored as ``(residue, p)``.

    Arithmetic with an element of another characteristic raises
    ``CharacteristicMismatchError``; plain integers are reduced mod p.
    """
    residue: int
    p: Prime

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))
        object.__setattr__(self, 'residue', operator.index(self.residue) % self.p)

    def _coerce(self, other: Scalar) -> Optional[int]:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise CharacteristicMismatchError(
                    f"cannot combine elements of F_{self.p} and F_{other.p}")
            return other.residue
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.p
        return None

    def _make(self, residue: int) -> "FieldElement":
        return FieldElement(residue, self.p)

    def __add__(self, other):
        value = self._coerce(other)
        return NotImplemented if value is None else self._make(self.residue + value)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._coerce(other)
        return NotImplemented if value is None else self._make(self.residue - value)

    def __rsub__(self, other):
        value = self._coerce(other)
        return NotImplemented if value is None else self._make(value - self.residue)

    def __mul__(self, other):
        value = self._coerce(other)
        return NotImplemented if value is None else self._make(self.residue * value)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return self._make(-self.residue)

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._make(pow(self.residue, exponent, self.p))

    def inverse(self) -> "FieldElement":
        if self.residue == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return self._make(pow(self.residue, -1, self.p))

    def __truediv__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self * self._make(value).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int) and not isinstance(other, bool):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, int(self.p)))

    def __bool__(self) -> bool:
        return self.residue != 0

    def __int__(self) -> int:
        return self.residue

    def __index__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"{self.residue} (mod {int(self.p)})"


@dataclass(frozen=True)
class PadicDigits:
    """Base-p expansion ``(d0, d1, ...)``, least significant digit first."""
    digits: Tuple[int, ...]
    p: Prime

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))
        digits = tuple(self.digits)
        if any(d < 0 or d >= self.p for d in digits):
            raise ValueError(f"digits {digits} out of range for p={self.p}")
        if digits and digits[-1] == 0:
            raise ValueError("trailing digit must be nonzero")
        object.__setattr__(self, 'digits', digits)

    @property
    def value(self) -> int:
        return sum(d * self.p ** t for t, d in enumerate(self.digits))

    def digit(self, t: int) -> int:
        return self.digits[t] if t < len(self.digits) else 0

    def padded(self, length: int) -> Tuple[int, ...]:
        """Digits padded with zeros (or cut) to ``length`` positions."""
        return tuple(self.digit(t) for t in range(length))

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __len__(self) -> int:
        return len(self.digits)


def digits_of(n: int, p: int) -> Tuple[int, ...]:
    """Raw base-p digits of ``n``, least significant first, without validation."""
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return tuple(digits)


def padic_digits(n: int, p: int) -> PadicDigits:
    """p-adic expansion of a natural number."""
    p = Prime(p)
    if n < 0:
        raise ValueError(f"padic_digits needs n >= 0, got {n}")
    return PadicDigits(digits_of(n, p), p)


@lru_cache(maxsize=None)
def _digit_factorials(p: int) -> Tuple[int, ...]:
    return tuple(math.factorial(d) % p for d in range(p))


def factorial_residue(n: int, p: int) -> int:
    """Residue of the p-adic factorial ``n!_p``."""
    table = _digit_factorials(p)
    result = 1
    for d in digits_of(n, p):
        result = result * table[d] % p
    return result


def padic_factorial(n: int, p: int) -> FieldElement:
    """n!_p = n_0! n_1! ... over the p-adic digits of n, reduced mod p."""
    p = Prime(p)
    if n < 0:
        raise ValueError(f"padic_factorial needs n >= 0, got {n}")
    return FieldElement(factorial_residue(n, p), p)


@lru_cache(maxsize=None)
def _small_binomials(p: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(math.comb(a, b) % p for b in range(p)) for a in range(p))


def binom_residue(a: int, b: int, p: int) -> int:
    """C(a, b) mod p by Lucas' digit-wise product; 0 when b > a or b < 0."""
    if b < 0 or b > a:
        return 0
    table = _small_binomials(p)
    result = 1
    while b:
        a, a_digit = divmod(a, p)
        b, b_digit = divmod(b, p)
        if b_digit > a_digit:
            return 0
        result = result * table[a_digit][b_digit] % p
    return result


def binom_mod_p(a: int, b: int, p: int) -> FieldElement:
    """Binomial coefficient C(a, b) as an element of F_p."""
    p = Prime(p)
    if a < 0 or b < 0:
        raise ValueError("binom_mod_p needs a, b >= 0")
    return FieldElement(binom_residue(a, b, p), p)


def _check_lengths(J: Sequence[int], K: Sequence[int]) -> None:
    if len(J) != len(K):
        raise LengthMismatchError(f"multi-indices {tuple(J)} and {tuple(K)} differ in length")


def multiindex_add(J: MultiIndex, K: MultiIndex) -> MultiIndex:
    _check_lengths(J, K)
    return tuple(a + b for a, b in zip(J, K))


def multiindex_degree(J: MultiIndex, weights: Optional[Sequence[int]] = None) -> int:
    if weights is None:
        return sum(J)
    _check_lengths(J, weights)
    return sum(w * j for w, j in zip(weights, J))


def gradedlex_key(J: MultiIndex, weights: Optional[Sequence[int]] = None) -> Tuple[int, MultiIndex]:
    """Sort key: weighted degree first, then lexicographic in coordinate order."""
    return (multiindex_degree(J, weights), tuple(J))


def multiindex_cmp_gradedlex(J: MultiIndex, K: MultiIndex,
                             weights: Optional[Sequence[int]] = None) -> int:
    """Three-way graded-lex comparison: -1, 0 or 1."""
    _check_lengths(J, K)
    left, right = gradedlex_key(J, weights), gradedlex_key(K, weights)
    return (left > right) - (left < right)
