"""
Sparse truncated multivariate power series over F_p.

A series lives in a truncation frame: a total-degree cap and, optionally, a
per-variable exponent box. Terms outside the frame are discarded by every
operation; asking for a coefficient outside it is a ``TruncationError``.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .base_arith import FieldElement, MultiIndex, Prime, gradedlex_key
from .errors import (
    LengthMismatchError,
    SeriesMismatchError,
    SubstitutionError,
    TruncationError,
)

Exponent = Tuple[int, ...]

TENSOR = "⊗"


@dataclass(frozen=True)
class VariableSet:
    """
    Ordered coordinate names, possibly in a tensor power.

    A rank-k set over n names has k*n formal variables laid out factor by
    factor: variable ``f*n + j`` is coordinate j in tensor factor f.
    """
    names: Tuple[str, ...]
    tensor_rank: int = 1

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise ValueError("a variable set needs at least one name")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in {names}")
        if self.tensor_rank not in (1, 2, 3):
            raise ValueError(f"tensor rank must be 1, 2 or 3, got {self.tensor_rank}")
        object.__setattr__(self, 'names', names)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        return self.n * self.tensor_rank

    def index(self, name: str, factor: int = 0) -> int:
        return factor * self.n + self.names.index(name)

    def factor_slice(self, factor: int) -> slice:
        return slice(factor * self.n, (factor + 1) * self.n)

    def with_rank(self, rank: int) -> "VariableSet":
        return VariableSet(self.names, rank)

    def format_exponent(self, exp: Exponent) -> str:
        """Monomial text such as ``x^2 y`` or ``x⊗x y``."""
        parts = []
        for factor in range(self.tensor_rank):
            chunk = exp[self.factor_slice(factor)]
            tokens = []
            for name, e in zip(self.names, chunk):
                if e == 1:
                    tokens.append(name)
                elif e > 1:
                    tokens.append(f"{name}^{e}")
            parts.append(" ".join(tokens) if tokens else "1")
        return TENSOR.join(parts)


@dataclass(frozen=True)
class TruncatedSeries:
    """Immutable sparse power series; ``terms`` maps exponents to residues."""
    vars: VariableSet
    cap: int
    p: Prime
    terms: Mapping[Exponent, int] = field(default_factory=dict)
    box: Optional[Exponent] = None

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))
        if self.cap < 0:
            raise ValueError(f"cap must be >= 0, got {self.cap}")
        size = self.vars.size
        if self.box is not None:
            box = tuple(self.box)
            if len(box) != size:
                raise LengthMismatchError(f"box {box} does not match {size} variables")
            object.__setattr__(self, 'box', box)
        clean: Dict[Exponent, int] = {}
        for exp, coeff in dict(self.terms).items():
            exp = tuple(exp)
            if len(exp) != size:
                raise LengthMismatchError(f"exponent {exp} does not match {size} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if not self._in_frame(exp):
                continue
            clean[exp] = (clean.get(exp, 0) + int(coeff)) % self.p
        object.__setattr__(self, 'terms', MappingProxyType(_pruned(clean)))

    @classmethod
    def _trusted(cls, vars: VariableSet, cap: int, p: Prime, terms: Dict[Exponent, int],
                 box: Optional[Exponent]) -> "TruncatedSeries":
        series = object.__new__(cls)
        object.__setattr__(series, 'vars', vars)
        object.__setattr__(series, 'cap', cap)
        object.__setattr__(series, 'p', p)
        object.__setattr__(series, 'terms', MappingProxyType(terms))
        object.__setattr__(series, 'box', box)
        return series

    def _in_frame(self, exp: Exponent) -> bool:
        if sum(exp) > self.cap:
            return False
        if self.box is not None and any(e > b for e, b in zip(exp, self.box)):
            return False
        return True

    def _like(self, terms: Dict[Exponent, int]) -> "TruncatedSeries":
        return self._trusted(self.vars, self.cap, self.p, terms, self.box)

    # Constructors

    @classmethod
    def zero(cls, vars: VariableSet, cap: int, p: int,
             box: Optional[Exponent] = None) -> "TruncatedSeries":
        return cls(vars, cap, p, {}, box)

    @classmethod
    def constant(cls, value: int, vars: VariableSet, cap: int, p: int,
                 box: Optional[Exponent] = None) -> "TruncatedSeries":
        return cls(vars, cap, p, {(0,) * vars.size: value}, box)

    @classmethod
    def one(cls, vars: VariableSet, cap: int, p: int,
            box: Optional[Exponent] = None) -> "TruncatedSeries":
        return cls.constant(1, vars, cap, p, box)

    @classmethod
    def variable(cls, vars: VariableSet, index: int, cap: int, p: int,
                 box: Optional[Exponent] = None) -> "TruncatedSeries":
        exp = tuple(1 if v == index else 0 for v in range(vars.size))
        return cls(vars, cap, p, {exp: 1}, box)

    # Ring operations

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if (self.vars, self.cap, self.p, self.box) != (other.vars, other.cap, other.p, other.box):
            raise SeriesMismatchError("series live in different variable sets or truncation frames")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            out[exp] = (out.get(exp, 0) + coeff) % self.p
        return self._like(_pruned(out))

    def __neg__(self) -> "TruncatedSeries":
        return self._like({exp: (-c) % self.p for exp, c in self.terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, factor: int) -> "TruncatedSeries":
        factor = int(factor) % self.p
        return self._like(_pruned({exp: c * factor % self.p for exp, c in self.terms.items()}))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        self._check_compatible(other)
        left, right = self.terms, other.terms
        if len(left) > len(right):
            left, right = right, left
        p, cap, box = self.p, self.cap, self.box
        right_items = [(exp, c, sum(exp)) for exp, c in right.items()]
        out: Dict[Exponent, int] = {}
        for exp_a, coeff_a in left.items():
            budget = cap - sum(exp_a)
            for exp_b, coeff_b, degree_b in right_items:
                if degree_b > budget:
                    continue
                exp = tuple(a + b for a, b in zip(exp_a, exp_b))
                if box is not None and any(e > m for e, m in zip(exp, box)):
                    continue
                out[exp] = (out.get(exp, 0) + coeff_a * coeff_b) % p
        return self._like(_pruned(out))

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        return NotImplemented

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = self._like({(0,) * self.vars.size: 1} if self._in_frame((0,) * self.vars.size) else {})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    # Coefficients and frames

    def coefficient(self, J: MultiIndex) -> FieldElement:
        """Stored coefficient of x^J; outside the frame this is an error, never 0."""
        J = tuple(J)
        if len(J) != self.vars.size:
            raise LengthMismatchError(f"exponent {J} does not match {self.vars.size} variables")
        if sum(J) > self.cap:
            raise TruncationError(f"degree {sum(J)} exceeds the cap {self.cap}")
        if self.box is not None and any(e > b for e, b in zip(J, self.box)):
            raise TruncationError(f"exponent {J} lies outside the box {self.box}")
        return FieldElement(self.terms.get(J, 0), self.p)

    @property
    def constant_term(self) -> int:
        return self.terms.get((0,) * self.vars.size, 0)

    def truncate(self, cap: int) -> "TruncatedSeries":
        """Re-truncate to a lower total-degree cap."""
        if cap > self.cap:
            raise TruncationError(f"cannot raise the cap from {self.cap} to {cap} by truncation")
        return self.reframe(cap=cap, box=self.box)

    def reframe(self, cap: Optional[int] = None, box: Optional[Exponent] = None) -> "TruncatedSeries":
        """
        Move the series into another frame, dropping terms outside it.

        Raising the cap does not create information: the caller is responsible
        for knowing that no terms between the old and new cap are missing.
        """
        cap = self.cap if cap is None else cap
        target = self._trusted(self.vars, cap, self.p, {}, tuple(box) if box is not None else None)
        return target._like({exp: c for exp, c in self.terms.items() if target._in_frame(exp)})

    def min_degree(self) -> Optional[int]:
        return min((sum(exp) for exp in self.terms), default=None)

    def homogeneous_part(self, degree: int) -> "TruncatedSeries":
        return self._like({exp: c for exp, c in self.terms.items() if sum(exp) == degree})

    # Tensor structure

    def bidegree(self, exp: Exponent) -> Tuple[int, int]:
        """(left degree, right degree) of a rank-2 exponent."""
        if self.vars.tensor_rank != 2:
            raise ValueError("bidegree needs a rank-2 series")
        n = self.vars.n
        return sum(exp[:n]), sum(exp[n:])

    def filter_bidegree(self, max_left: int, max_right: int) -> "TruncatedSeries":
        return self._like({exp: c for exp, c in self.terms.items()
                           if self.bidegree(exp)[0] <= max_left and self.bidegree(exp)[1] <= max_right})

    def swap_factors(self) -> "TruncatedSeries":
        """The transposition τ on a rank-2 series."""
        if self.vars.tensor_rank != 2:
            raise ValueError("swap_factors needs a rank-2 series")
        n = self.vars.n
        box = None if self.box is None else self.box[n:] + self.box[:n]
        swapped = {exp[n:] + exp[:n]: c for exp, c in self.terms.items()}
        return self._trusted(self.vars, self.cap, self.p, swapped, box)

    def relabel(self, target: VariableSet, positions: Sequence[int],
                box: Optional[Exponent] = None) -> "TruncatedSeries":
        """Embed into ``target``: source variable v becomes variable ``positions[v]``."""
        if len(positions) != self.vars.size:
            raise LengthMismatchError("one position per source variable is required")
        out: Dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            image = [0] * target.size
            for v, e in enumerate(exp):
                image[positions[v]] += e
            out[tuple(image)] = c
        return TruncatedSeries(target, self.cap, self.p, out, box)

    def restrict(self, keep: Iterable[int], target: VariableSet) -> "TruncatedSeries":
        """
        Set every variable not in ``keep`` to zero and re-index the survivors,
        in increasing order, as the variables of ``target``.
        """
        keep = sorted(set(keep))
        if len(keep) != target.size:
            raise LengthMismatchError("target variable set does not match the kept variables")
        kept = set(keep)
        out: Dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            if any(e for v, e in enumerate(exp) if v not in kept):
                continue
            out[tuple(exp[v] for v in keep)] = c
        return TruncatedSeries(target, self.cap, self.p, out)

    def substitute(self, images: Sequence["TruncatedSeries"]) -> "TruncatedSeries":
        """Compose with one image series per variable (all with zero constant term)."""
        if len(images) != self.vars.size:
            raise LengthMismatchError(f"expected {self.vars.size} images, got {len(images)}")
        first = images[0]
        for image in images:
            first._check_compatible(image)
            if image.constant_term:
                raise SubstitutionError("substitution images must have zero constant term")
        result: Dict[Exponent, int] = {}
        unit = first._like({(0,) * first.vars.size: 1} if first._in_frame((0,) * first.vars.size) else {})
        powers: List[List[TruncatedSeries]] = [[unit] for _ in images]
        for exp, coeff in self.terms.items():
            if sum(exp) > first.cap:
                continue
            term = unit
            for v, e in enumerate(exp):
                if not e:
                    continue
                cache = powers[v]
                while len(cache) <= e:
                    cache.append(cache[-1] * images[v])
                term = term * cache[e]
                if not term:
                    break
            for t_exp, t_coeff in term.terms.items():
                result[t_exp] = (result.get(t_exp, 0) + coeff * t_coeff) % self.p
        return first._like(_pruned(result))

    # Output

    def sorted_terms(self) -> List[Tuple[Exponent, int]]:
        return sorted(self.terms.items(), key=lambda item: gradedlex_key(item[0]))

    def to_text(self) -> str:
        """Canonical text: ascending graded-lex, residues in [0, p)."""
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = self.vars.format_exponent(exp)
            if c == 1:
                parts.append(mono)
            elif any(exp):
                parts.append(f"{c} {mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


def _pruned(terms: Dict[Exponent, int]) -> Dict[Exponent, int]:
    return {exp: c for exp, c in terms.items() if c}


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_pow(f: TruncatedSeries, k: int) -> TruncatedSeries:
    return f ** k


def coefficient(f: TruncatedSeries, J: MultiIndex) -> FieldElement:
    return f.coefficient(J)


def substitute(f: TruncatedSeries, images: Sequence[TruncatedSeries]) -> TruncatedSeries:
    return f.substitute(images)
