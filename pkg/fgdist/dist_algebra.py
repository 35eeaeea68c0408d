"""
The distribution algebra Dist(G) at a finite level R.

Elements are combinations of the additive basis δ_{x^J}, dual to the
monomials x^J, with every exponent at most p^{R+1} - 1. The product is dual
to the group law:

    δ_I · δ_J = Σ_K [x^I ⊗ x^J] (Π_j m(x_j)^{K_j}) δ_K

and the coproduct is the divided-power rule Δ(δ_J) = Σ_{A+B=J} δ_A ⊗ δ_B.
Structure constants are memoized per level; the memo is filled under a lock
and every fill is a pure computation.
"""

import itertools
import logging
import threading
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .base_arith import FieldElement, MultiIndex, Prime, gradedlex_key
from .config import Settings, get_settings
from .errors import (
    FiltrationError,
    InputError,
    LengthMismatchError,
    LevelEscapeError,
    OperandError,
    TruncationError,
)
from .formal_group import FormalGroupLaw, default_cap, inverse_series
from .notation import (
    TENSOR,
    format_additive,
    format_combination,
    parse_additive,
    parse_mult,
    split_combination,
)
from .power_series import TruncatedSeries
from .report import Report

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Generator:
    """The generator δ_{x_coord^{p^power}}."""
    coord: int
    power: int


@dataclass(frozen=True)
class MultMonomial:
    """
    Ordered product Π_j Π_t (δ_{x_j^{p^t}})^{digits[j][t]}, coordinate first,
    then power. Every row has R+1 digits.
    """
    digits: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        digits = tuple(tuple(row) for row in self.digits)
        if len({len(row) for row in digits}) > 1:
            raise ValueError("every coordinate needs the same number of digits")
        if any(d < 0 for row in digits for d in row):
            raise ValueError("digits must be non-negative")
        object.__setattr__(self, 'digits', digits)

    @property
    def level(self) -> int:
        return len(self.digits[0]) - 1 if self.digits else 0

    @property
    def is_unit(self) -> bool:
        return not any(any(row) for row in self.digits)

    def word(self) -> Word:
        """Generator ids ``coord * (R+1) + t``, each repeated by its digit."""
        width = self.level + 1
        return tuple(j * width + t
                     for j, row in enumerate(self.digits)
                     for t, d in enumerate(row)
                     for _ in range(d))

    def to_index(self, p: int) -> MultiIndex:
        return tuple(sum(d * p ** t for t, d in enumerate(row)) for row in self.digits)

    @classmethod
    def from_index(cls, J: Sequence[int], p: int, level: int) -> "MultMonomial":
        rows = []
        for value in J:
            row = []
            for _ in range(level + 1):
                value, d = divmod(value, p)
                row.append(d)
            if value:
                raise LevelEscapeError(f"index {tuple(J)} exceeds level {level}")
            rows.append(tuple(row))
        return cls(tuple(rows))

    @classmethod
    def from_word(cls, word: Iterable[int], n: int, level: int) -> "MultMonomial":
        width = level + 1
        rows = [[0] * width for _ in range(n)]
        for gid in word:
            rows[gid // width][gid % width] += 1
        return cls(tuple(tuple(row) for row in rows))


class DistLevel:
    """
    Dist(G) at level R: the span of δ_{x^J} with every J_j <= p^{R+1} - 1.

    The law's cap must be at least 2(p^{R+1} - 1) unless ``unsafe_cap`` is
    set, in which case products may be silently wrong.
    """

    def __init__(self, law: FormalGroupLaw, level: int, *, unsafe_cap: bool = False,
                 settings: Optional[Settings] = None):
        if level < 0:
            raise InputError(f"level must be >= 0, got {level}")
        self.law = law
        self.level = level
        self.p: Prime = law.p
        self.n = law.n
        self.bound = self.p ** (level + 1) - 1
        self.required_cap = default_cap(self.p, level)
        self.unsafe_cap = unsafe_cap
        if law.cap < self.required_cap:
            if not unsafe_cap:
                raise TruncationError(
                    f"cap {law.cap} is below {self.required_cap} = 2(p^(R+1)-1) for p={int(self.p)}, R={level}")
            logger.warning("cap %d is below the safe value %d; products may be wrong",
                           law.cap, self.required_cap)
        self.settings = settings or get_settings()
        self.generators: Tuple[Generator, ...] = tuple(
            Generator(j, t) for j in range(self.n) for t in range(level + 1))
        self._lock = threading.RLock()
        self._products: Dict[Tuple[MultiIndex, MultiIndex], Mapping[MultiIndex, int]] = {}
        self._full_table = False
        self._words: Dict[Word, "Distribution"] = {}
        self._to_mult: Dict[MultiIndex, Dict[MultMonomial, int]] = {}
        self._antipode_rows: Optional[Dict[MultiIndex, Dict[MultiIndex, int]]] = None

    def __repr__(self) -> str:
        return f"DistLevel({self.law.name}, p={int(self.p)}, R={self.level})"

    @property
    def names(self) -> Tuple[str, ...]:
        return self.law.coords

    @property
    def dimension(self) -> int:
        return (self.bound + 1) ** self.n

    def contains(self, J: Sequence[int]) -> bool:
        return len(J) == self.n and all(0 <= j <= self.bound for j in J)

    def check_index(self, J: Sequence[int]) -> MultiIndex:
        J = tuple(J)
        if len(J) != self.n:
            raise LengthMismatchError(f"index {J} does not have {self.n} entries")
        if not self.contains(J):
            raise LevelEscapeError(f"index {J} lies outside level {self.level} (bound {self.bound})")
        return J

    def basis(self) -> List[MultiIndex]:
        """All additive indices of the level in ascending graded-lex order."""
        indices = itertools.product(range(self.bound + 1), repeat=self.n)
        return sorted(indices, key=gradedlex_key)

    # Elements

    def element(self, terms: Mapping[Sequence[int], int]) -> "Distribution":
        return Distribution(self, terms)

    def delta(self, J: Sequence[int]) -> "Distribution":
        return Distribution._trusted(self, {self.check_index(J): 1})

    def unit(self) -> "Distribution":
        return Distribution._trusted(self, {(0,) * self.n: 1})

    def zero(self) -> "Distribution":
        return Distribution._trusted(self, {})

    def scalar(self, value: int) -> "Distribution":
        return self.unit().scale(value)

    def generator_index(self, g: Generator) -> MultiIndex:
        return tuple(self.p ** g.power if j == g.coord else 0 for j in range(self.n))

    def generator_id(self, g: Generator) -> int:
        return g.coord * (self.level + 1) + g.power

    def generator_element(self, g: Union[Generator, int]) -> "Distribution":
        if isinstance(g, int):
            g = self.generators[g]
        if g.power > self.level or not 0 <= g.coord < self.n:
            raise LevelEscapeError(f"generator {g} is not a generator of level {self.level}")
        return self.delta(self.generator_index(g))

    def generator_label(self, g: Union[Generator, int]) -> str:
        if isinstance(g, int):
            g = self.generators[g]
        return format_additive(self.names, self.generator_index(g))

    def parse(self, text: str) -> "Distribution":
        """Parse ``d[...]``, ``m[...]``, ``1`` or a combination of them."""
        result = self.zero()
        for coeff, monomial in split_combination(text):
            if monomial == "1":
                term = self.unit()
            elif monomial.startswith("d["):
                term = self.delta(parse_additive(monomial, self.names))
            elif monomial.startswith("m["):
                mono = MultMonomial(parse_mult(monomial, self.names, self.level))
                self.check_monomial(mono)
                term = self.mult_to_additive(mono)
            else:
                raise OperandError(f"cannot parse operand term '{monomial}'")
            result = result + term.scale(coeff)
        return result

    def check_monomial(self, mono: MultMonomial) -> MultMonomial:
        if len(mono.digits) != self.n or mono.level != self.level:
            raise LengthMismatchError(f"monomial does not have shape {self.n}x{self.level + 1}")
        if any(d >= self.p for row in mono.digits for d in row):
            raise LevelEscapeError(f"monomial digits must be below p={int(self.p)}")
        return mono

    # Structure constants

    def _use_full_table(self) -> bool:
        return self.dimension ** 2 <= self.settings.full_table_limit

    def _walk(self, factors: Sequence[TruncatedSeries], one: TruncatedSeries,
              visit: Callable[[MultiIndex, TruncatedSeries], None]) -> None:
        """Visit Π_j factors[j]^{K_j} for every K at which the product is nonzero."""

        def descend(j: int, prefix: MultiIndex, current: TruncatedSeries) -> None:
            if j == len(factors):
                visit(prefix, current)
                return
            k = 0
            while current:
                descend(j + 1, prefix + (k,), current)
                k += 1
                current = current * factors[j]

        descend(0, (), one)

    def _escape(self, K: MultiIndex) -> bool:
        return any(k > self.bound for k in K)

    def _build_full_table(self) -> None:
        n, bound = self.n, self.bound
        box = (bound,) * (2 * n)
        cap = sum(box)
        factors = [m.reframe(cap=cap, box=box) for m in self.law.comul]
        one = TruncatedSeries.one(self.law.tensor_variables, cap, self.p, box)
        table: Dict[Tuple[MultiIndex, MultiIndex], Dict[MultiIndex, int]] = {}

        def visit(K: MultiIndex, series: TruncatedSeries) -> None:
            if self._escape(K):
                raise LevelEscapeError(f"level {self.level} is not closed under products (at {K})")
            for exp, c in series.terms.items():
                table.setdefault((exp[:n], exp[n:]), {})[K] = c

        self._walk(factors, one, visit)
        with self._lock:
            for key, value in table.items():
                self._products.setdefault(key, MappingProxyType(value))
            self._full_table = True
        logger.debug("%r: full structure-constant table with %d nonzero pairs", self, len(table))

    def _pair_product(self, I: MultiIndex, J: MultiIndex) -> Dict[MultiIndex, int]:
        target = I + J
        cap = sum(target)
        factors = [m.reframe(cap=cap, box=target) for m in self.law.comul]
        one = TruncatedSeries.one(self.law.tensor_variables, cap, self.p, target)
        result: Dict[MultiIndex, int] = {}

        def visit(K: MultiIndex, series: TruncatedSeries) -> None:
            c = series.terms.get(target)
            if c:
                if self._escape(K):
                    raise LevelEscapeError(f"product of {I} and {J} leaves level {self.level} (at {K})")
                result[K] = c

        self._walk(factors, one, visit)
        return result

    def basis_product(self, I: MultiIndex, J: MultiIndex) -> Mapping[MultiIndex, int]:
        """Structure constants of δ_I · δ_J."""
        key = (I, J)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        if not any(I):
            return {J: 1}
        if not any(J):
            return {I: 1}
        if self._use_full_table():
            if not self._full_table:
                self._build_full_table()
            return self._products.get(key, MappingProxyType({}))
        value = MappingProxyType(self._pair_product(I, J))
        with self._lock:
            return self._products.setdefault(key, value)

    # Basis changes

    def word_value(self, word: Sequence[int]) -> "Distribution":
        """The product of the generators listed in ``word``, in that order."""
        word = tuple(word)
        cached = self._words.get(word)
        if cached is None:
            if not word:
                cached = self.unit()
            else:
                cached = dist_mul(self.word_value(word[:-1]), self.generator_element(word[-1]))
            with self._lock:
                cached = self._words.setdefault(word, cached)
        return cached

    def mult_to_additive(self, mono: MultMonomial) -> "Distribution":
        return self.word_value(self.check_monomial(mono).word())

    def additive_index_to_mult(self, J: MultiIndex) -> Dict[MultMonomial, int]:
        """δ_J in the multiplicative basis, by triangular back-substitution."""
        cached = self._to_mult.get(J)
        if cached is not None:
            return cached
        p = self.p
        mono = MultMonomial.from_index(J, p, self.level)
        expansion = self.mult_to_additive(mono)
        lead = expansion.terms.get(J, 0)
        if not lead:
            raise LevelEscapeError(f"multiplicative monomial for {J} has no leading term")
        inv = pow(lead, -1, p)
        result: Dict[MultMonomial, int] = {mono: inv}
        for K, c in expansion.terms.items():
            if K == J:
                continue
            if sum(K) >= sum(J):
                raise LevelEscapeError(f"basis change is not triangular at {J} (term {K})")
            for lower, d in self.additive_index_to_mult(K).items():
                result[lower] = (result.get(lower, 0) - inv * c * d) % p
        result = {m: c for m, c in result.items() if c}
        with self._lock:
            return self._to_mult.setdefault(J, result)

    # Antipode

    def antipode_rows(self) -> Dict[MultiIndex, Dict[MultiIndex, int]]:
        """S(δ_J) = Σ_K [x^J](Π_j i(x_j)^{K_j}) δ_K, as ``rows[J][K]``."""
        if self._antipode_rows is not None:
            return self._antipode_rows
        n, bound = self.n, self.bound
        box = (bound,) * n
        cap = n * bound
        factors = list(inverse_series(self.law, cap=cap, box=box))
        one = TruncatedSeries.one(self.law.variables, cap, self.p, box)
        rows: Dict[MultiIndex, Dict[MultiIndex, int]] = {}

        def visit(K: MultiIndex, series: TruncatedSeries) -> None:
            if self._escape(K):
                raise LevelEscapeError(f"antipode leaves level {self.level} (at {K})")
            for J, c in series.terms.items():
                rows.setdefault(J, {})[K] = c

        self._walk(factors, one, visit)
        with self._lock:
            if self._antipode_rows is None:
                self._antipode_rows = rows
        logger.debug("%r: antipode table with %d rows", self, len(rows))
        return self._antipode_rows


@dataclass(frozen=True)
class Distribution:
    """Immutable combination Σ c_J δ_{x^J} inside one level."""
    level: DistLevel
    terms: Mapping[MultiIndex, int] = field(default_factory=dict)

    def __post_init__(self):
        p = self.level.p
        clean: Dict[MultiIndex, int] = {}
        for J, c in dict(self.terms).items():
            J = self.level.check_index(J)
            clean[J] = (clean.get(J, 0) + int(c)) % p
        object.__setattr__(self, 'terms', MappingProxyType({J: c for J, c in clean.items() if c}))

    @classmethod
    def _trusted(cls, level: DistLevel, terms: Dict[MultiIndex, int]) -> "Distribution":
        element = object.__new__(cls)
        object.__setattr__(element, 'level', level)
        object.__setattr__(element, 'terms', MappingProxyType(terms))
        return element

    def _same_level(self, other: "Distribution") -> None:
        if not isinstance(other, Distribution):
            raise TypeError(f"expected a Distribution, got {type(other).__name__}")
        if other.level is not self.level:
            raise InputError("distributions belong to different levels")

    def __add__(self, other: "Distribution") -> "Distribution":
        self._same_level(other)
        p = self.level.p
        out = dict(self.terms)
        for J, c in other.terms.items():
            out[J] = (out.get(J, 0) + c) % p
        return self._trusted(self.level, {J: c for J, c in out.items() if c})

    def __neg__(self) -> "Distribution":
        p = self.level.p
        return self._trusted(self.level, {J: (-c) % p for J, c in self.terms.items()})

    def __sub__(self, other: "Distribution") -> "Distribution":
        return self + (-other)

    def scale(self, factor: int) -> "Distribution":
        p = self.level.p
        factor = int(factor) % p
        return self._trusted(self.level, {J: c * factor % p for J, c in self.terms.items()
                                          if c * factor % p})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        return dist_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, J: Sequence[int]) -> FieldElement:
        return FieldElement(self.terms.get(tuple(J), 0), self.level.p)

    @property
    def counit(self) -> int:
        return self.terms.get((0,) * self.level.n, 0)

    def degree(self) -> int:
        return filtration_degree(self)

    def sorted_terms(self) -> List[Tuple[MultiIndex, int]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda item: gradedlex_key(item[0]), reverse=True)

    def to_text(self) -> str:
        names = self.level.names
        return format_combination((format_additive(names, J), c) for J, c in self.sorted_terms())

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class DistTensor:
    """Element of Dist ⊗ Dist as a map (A, B) -> coefficient of δ_A ⊗ δ_B."""
    level: DistLevel
    terms: Mapping[Tuple[MultiIndex, MultiIndex], int] = field(default_factory=dict)

    def __post_init__(self):
        p = self.level.p
        clean: Dict[Tuple[MultiIndex, MultiIndex], int] = {}
        for (A, B), c in dict(self.terms).items():
            key = (self.level.check_index(A), self.level.check_index(B))
            clean[key] = (clean.get(key, 0) + int(c)) % p
        object.__setattr__(self, 'terms', MappingProxyType({k: c for k, c in clean.items() if c}))

    def __add__(self, other: "DistTensor") -> "DistTensor":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return DistTensor(self.level, out)

    def __sub__(self, other: "DistTensor") -> "DistTensor":
        p = self.level.p
        return self + DistTensor(self.level, {k: (-c) % p for k, c in other.terms.items()})

    def __mul__(self, other: "DistTensor") -> "DistTensor":
        """Componentwise product (a⊗b)(c⊗d) = ac ⊗ bd."""
        level = self.level
        p = level.p
        out: Dict[Tuple[MultiIndex, MultiIndex], int] = {}
        for (A, B), c1 in self.terms.items():
            for (C, D), c2 in other.terms.items():
                left = level.basis_product(A, C)
                right = level.basis_product(B, D)
                for K, a in left.items():
                    for L, b in right.items():
                        out[(K, L)] = (out.get((K, L), 0) + c1 * c2 * a * b) % p
        return DistTensor(level, out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def apply_counit_left(self) -> Distribution:
        """(ε ⊗ id) applied to the tensor."""
        zero = (0,) * self.level.n
        return Distribution(self.level, {B: c for (A, B), c in self.terms.items() if A == zero})

    def apply_counit_right(self) -> Distribution:
        """(id ⊗ ε) applied to the tensor."""
        zero = (0,) * self.level.n
        return Distribution(self.level, {A: c for (A, B), c in self.terms.items() if B == zero})

    def multiply_factors(self, left_map: Callable[[Distribution], Distribution] = None) -> Distribution:
        """mul ∘ (f ⊗ id), with f the identity when ``left_map`` is None."""
        level = self.level
        result = level.zero()
        for (A, B), c in self.terms.items():
            left = level.delta(A)
            if left_map is not None:
                left = left_map(left)
            result = result + dist_mul(left, level.delta(B)).scale(c)
        return result

    def to_text(self) -> str:
        names = self.level.names
        items = sorted(self.terms.items(),
                       key=lambda item: (gradedlex_key(item[0][0]), gradedlex_key(item[0][1])),
                       reverse=True)
        return format_combination(
            (f"{format_additive(names, A)}{TENSOR}{format_additive(names, B)}", c)
            for (A, B), c in items)

    def __str__(self) -> str:
        return self.to_text()


def pair(J: Sequence[int], K: Sequence[int], p: int) -> FieldElement:
    """δ_{x^J}(x^K): 1 if J = K else 0."""
    return FieldElement(1 if tuple(J) == tuple(K) else 0, p)


def pairing(u: Distribution, f: TruncatedSeries) -> FieldElement:
    """Linear extension of ``pair`` to a distribution against a rank-1 series."""
    if f.vars.tensor_rank != 1 or f.vars.names != u.level.names:
        raise InputError("pairing needs a rank-1 series in the level's coordinates")
    total = 0
    for J, c in u.terms.items():
        total += c * f.coefficient(J).residue
    return FieldElement(total, u.level.p)


def dist_mul(u: Distribution, v: Distribution) -> Distribution:
    """Exact product through the structure constants of the level."""
    u._same_level(v)
    level = u.level
    p = level.p
    out: Dict[MultiIndex, int] = {}
    for I, a in u.terms.items():
        for J, b in v.terms.items():
            for K, c in level.basis_product(I, J).items():
                out[K] = (out.get(K, 0) + a * b * c) % p
    return Distribution._trusted(level, {K: c for K, c in out.items() if c})


def dist_comul(u: Distribution) -> DistTensor:
    """Δ(δ_J) = Σ_{A+B=J} δ_A ⊗ δ_B, extended linearly."""
    out: Dict[Tuple[MultiIndex, MultiIndex], int] = {}
    for J, c in u.terms.items():
        for A in itertools.product(*(range(j + 1) for j in J)):
            B = tuple(j - a for j, a in zip(J, A))
            out[(A, B)] = out.get((A, B), 0) + c
    return DistTensor(u.level, out)


def mult_to_additive(level: DistLevel, mono: MultMonomial) -> Distribution:
    return level.mult_to_additive(mono)


def additive_to_mult(u: Distribution) -> Dict[MultMonomial, int]:
    """Expansion of u in the multiplicative basis (residues, zero terms dropped)."""
    level = u.level
    p = level.p
    out: Dict[MultMonomial, int] = {}
    for J, c in u.terms.items():
        for mono, d in level.additive_index_to_mult(J).items():
            out[mono] = (out.get(mono, 0) + c * d) % p
    return {mono: c for mono, c in out.items() if c}


def mult_combination_to_additive(level: DistLevel, combination: Mapping[MultMonomial, int]) -> Distribution:
    result = level.zero()
    for mono, c in combination.items():
        result = result + level.mult_to_additive(mono).scale(c)
    return result


def frobenius_power(level: DistLevel, g: Union[Generator, int]) -> Distribution:
    """F(η) = η^p for the generator η = δ_{x_j^{p^t}}, with its filtration bound checked."""
    if isinstance(g, int):
        g = level.generators[g]
    eta = level.generator_element(g)
    result = eta
    for _ in range(level.p - 1):
        result = dist_mul(result, eta)
    bound = level.p ** (g.power + 1) - 1
    if filtration_degree(result) > bound:
        raise FiltrationError(f"F({level.generator_label(g)}) has degree above {bound}")
    return result


def canonical_commutator(eta: Distribution, zeta: Distribution) -> Distribution:
    """π_c(η, ζ) = ηζ - ζη."""
    return dist_mul(eta, zeta) - dist_mul(zeta, eta)


def antipode(u: Distribution) -> Distribution:
    level = u.level
    rows = level.antipode_rows()
    p = level.p
    out: Dict[MultiIndex, int] = {}
    for J, c in u.terms.items():
        for K, d in rows.get(J, {}).items():
            out[K] = (out.get(K, 0) + c * d) % p
    return Distribution._trusted(level, {K: c for K, c in out.items() if c})


def filtration_degree(u: Distribution) -> int:
    return max((sum(J) for J in u.terms), default=0)


def check_hopf_axioms(level: DistLevel, elements: Optional[Sequence[Distribution]] = None) -> Report:
    """
    Hopf-algebra axioms on the given elements (default: unit and generators):
    associativity on triples; bialgebra compatibility and the antipode as
    anti-morphism on pairs; counit, antipode axiom and ε∘S = ε on singles.
    """
    if elements is None:
        elements = [level.unit()] + [level.generator_element(g) for g in level.generators]
    elements = list(elements)
    report = Report(f"Hopf axioms on {level!r}")

    def first(cases, predicate) -> Optional[str]:
        for case in cases:
            if not predicate(*case):
                return ", ".join(str(x) for x in case)
        return None

    triples = list(itertools.product(elements, repeat=3))
    pairs = list(itertools.product(elements, repeat=2))
    singles = [(u,) for u in elements]

    witness = first(triples, lambda a, b, c: (a * b) * c == a * (b * c))
    report.record("associativity", witness is None, witness)
    witness = first(pairs, lambda a, b: dist_comul(a * b) == dist_comul(a) * dist_comul(b))
    report.record("bialgebra", witness is None, witness)
    witness = first(singles, lambda a: dist_comul(a).apply_counit_left() == a
                    and dist_comul(a).apply_counit_right() == a)
    report.record("counit", witness is None, witness)
    witness = first(singles, lambda a: dist_comul(a).multiply_factors(antipode) == level.scalar(a.counit))
    report.record("antipode-axiom", witness is None, witness)
    witness = first(pairs, lambda a, b: antipode(a * b) == antipode(b) * antipode(a))
    report.record("antipode-anti-morphism", witness is None, witness)
    witness = first(singles, lambda a: antipode(a).counit == a.counit)
    report.record("antipode-counit", witness is None, witness)
    return report
