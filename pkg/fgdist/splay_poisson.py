"""
Splays of commutative blocks and Poisson tables on their generators.

Generators of the splay are numbered globally in the order <<: block order,
then coordinate, then power. A word is a tuple of generator ids; a normal
word is <<-sorted with every multiplicity below p. Splay elements are
combinations of normal words.

A Poisson table stores π(η, ζ) for cross-block generator pairs η >> ζ; the
lookup ``bracket`` applies skew-symmetry and returns 0 inside a block.
"""

import itertools
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .base_arith import FieldElement, Prime
from .config import Settings
from .dist_algebra import (
    DistLevel,
    Distribution,
    MultMonomial,
    additive_to_mult,
    canonical_commutator,
    dist_comul,
    frobenius_power,
)
from .errors import (
    InputError,
    LevelEscapeError,
    MathematicalRefusal,
    OperandError,
)
from .formal_group import FormalGroupLaw, law_to_model, load_custom
from .models import PoissonTableModel, TableEntryModel, TermModel
from .notation import collect, format_combination, generator_label, parse_generator, split_combination
from .report import Report

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
WordCombination = Dict[Word, int]
TensorCombination = Dict[Tuple[Word, Word], int]
Straightener = Callable[[Word], Mapping[Word, int]]


class SplayDescription:
    """
    The splay of the commutative blocks of a geometric formal group at level R.

    ``blocks`` are single-block, commutative distribution levels listed in
    block order.
    """

    def __init__(self, blocks: Sequence[DistLevel]):
        blocks = tuple(blocks)
        if not blocks:
            raise InputError("a splay needs at least one block")
        p, level = blocks[0].p, blocks[0].level
        for block in blocks:
            if block.p != p or block.level != level:
                raise InputError("all blocks of a splay need the same p and level")
            if len(block.law.blocks) != 1 or not block.law.is_commutative:
                raise InputError(f"block {block.law.name} is not a single commutative block")
        self.blocks = blocks
        self.p: Prime = p
        self.level = level
        self.coords: Tuple[str, ...] = tuple(name for block in blocks for name in block.names)
        if len(set(self.coords)) != len(self.coords):
            raise InputError(f"coordinate names repeat across blocks: {self.coords}")
        self.n = len(self.coords)
        width = level + 1
        self.generator_count = self.n * width
        self.generator_block: Tuple[int, ...] = tuple(
            b for b, block in enumerate(blocks) for _ in range(block.n * width))
        self.block_offsets: Tuple[int, ...] = tuple(
            itertools.accumulate([0] + [block.n * width for block in blocks[:-1]]))
        self.weights: Tuple[int, ...] = tuple(p ** (gid % width) for gid in range(self.generator_count))
        self._frobenius: Dict[int, WordCombination] = {}
        self._straightened: Dict[Word, WordCombination] = {}
        self._coproducts: Dict[int, TensorCombination] = {}
        self._word_coproducts: Dict[Word, TensorCombination] = {}

    def __repr__(self) -> str:
        return f"SplayDescription({', '.join(b.law.name for b in self.blocks)}, p={int(self.p)}, R={self.level})"

    @classmethod
    def from_dist(cls, dist: DistLevel) -> "SplayDescription":
        """The splay of the blocks of ``dist``'s law, in the law's block order."""
        return cls([DistLevel(dist.law.restrict(block), dist.level,
                              unsafe_cap=dist.unsafe_cap, settings=dist.settings)
                    for block in dist.law.blocks])

    @classmethod
    def from_block_laws(cls, laws: Sequence[FormalGroupLaw], level: int, *,
                        unsafe_cap: bool = False, settings: Optional[Settings] = None) -> "SplayDescription":
        return cls([DistLevel(law, level, unsafe_cap=unsafe_cap, settings=settings) for law in laws])

    def swapped(self, i: int) -> "SplayDescription":
        """The same blocks with blocks i and i+1 exchanged."""
        if not 0 <= i < len(self.blocks) - 1:
            raise InputError(f"no adjacent block pair ({i}, {i + 1}) in a splay of {len(self.blocks)} blocks")
        blocks = list(self.blocks)
        blocks[i], blocks[i + 1] = blocks[i + 1], blocks[i]
        return SplayDescription(blocks)

    # Generators

    def generator(self, gid: int) -> Tuple[int, int]:
        """(global coordinate, power) of a generator id."""
        return divmod(gid, self.level + 1)

    def generator_id(self, coord: int, power: int) -> int:
        return coord * (self.level + 1) + power

    def local(self, gid: int) -> Tuple[int, int]:
        """(block index, generator id inside the block's own level)."""
        b = self.generator_block[gid]
        return b, gid - self.block_offsets[b]

    def block_span(self, b: int) -> range:
        return range(self.block_offsets[b], self.block_offsets[b] + self.blocks[b].n * (self.level + 1))

    def translate(self, gid: int, other: "SplayDescription") -> int:
        """The id of the same generator (by coordinate name and power) in ``other``."""
        coord, power = self.generator(gid)
        return other.generator_id(other.coords.index(self.coords[coord]), power)

    def label(self, gid: int) -> str:
        coord, power = self.generator(gid)
        return generator_label(self.coords[coord], self.p, power)

    def format_word(self, word: Word) -> str:
        return " ".join(self.label(g) for g in word) if word else "1"

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "1"):
            return ()
        word = []
        for token in text.split():
            coord, power = parse_generator(token, self.coords, self.p)
            if power > self.level:
                raise LevelEscapeError(f"generator '{token}' lies above level {self.level}")
            word.append(self.generator_id(coord, power))
        return tuple(word)

    def degree(self, word: Word) -> int:
        return sum(self.weights[g] for g in word)

    def is_normal(self, word: Word) -> bool:
        if any(not 0 <= g < self.generator_count for g in word):
            return False
        if any(a > b for a, b in zip(word, word[1:])):
            return False
        return all(len(list(run)) < self.p for _, run in itertools.groupby(word))

    def word_to_mult(self, word: Word) -> MultMonomial:
        return MultMonomial.from_word(word, self.n, self.level)

    def mult_to_word(self, mono: MultMonomial) -> Word:
        return mono.word()

    def lift(self, b: int, local_word: Word) -> Word:
        offset = self.block_offsets[b]
        return tuple(offset + g for g in local_word)

    def split_blocks(self, word: Word) -> List[Word]:
        """Local words of each block, in block order (the word must be sorted)."""
        parts: List[List[int]] = [[] for _ in self.blocks]
        for g in word:
            b, local = self.local(g)
            parts[b].append(local)
        return [tuple(part) for part in parts]

    def normal_words(self) -> List[Word]:
        """All normal words, ascending in the weighted graded-lex order."""
        words = []
        for digits in itertools.product(range(self.p), repeat=self.generator_count):
            words.append(tuple(g for g, d in enumerate(digits) for _ in range(d)))
        return sorted(words, key=self.word_key)

    def word_key(self, word: Word) -> Tuple[int, Word]:
        return (self.degree(word), word)

    # Commutative structure

    def block_combination(self, b: int, combination: Mapping[MultMonomial, int]) -> WordCombination:
        """Lift a combination of block multiplicative monomials to global words."""
        return {self.lift(b, mono.word()): c for mono, c in combination.items()}

    def frobenius_terms(self, gid: int) -> WordCombination:
        """F(η) = η^p as a combination of normal words of η's block."""
        cached = self._frobenius.get(gid)
        if cached is None:
            b, local = self.local(gid)
            value = frobenius_power(self.blocks[b], local)
            cached = self.block_combination(b, additive_to_mult(value))
            self._frobenius[gid] = cached
        return cached

    def straighten(self, word: Word) -> WordCombination:
        """Commutative straightening: sort, then replace p-th powers by F."""
        key = tuple(sorted(word))
        cached = self._straightened.get(key)
        if cached is not None:
            return cached
        result: WordCombination = {key: 1}
        for g, run in itertools.groupby(key):
            if len(list(run)) >= self.p:
                position = key.index(g)
                rest = key[:position] + key[position + self.p:]
                out: WordCombination = {}
                for w, c in self.frobenius_terms(g).items():
                    for u, d in self.straighten(w + rest).items():
                        out[u] = (out.get(u, 0) + c * d) % self.p
                result = {u: c for u, c in out.items() if c}
                break
        self._straightened[key] = result
        return result

    def straighten_combination(self, combination: Mapping[Word, int],
                               straighten: Optional[Straightener] = None) -> WordCombination:
        straighten = straighten or self.straighten
        return collect(((u, c * d) for w, c in combination.items()
                        for u, d in straighten(w).items()), self.p)

    def coproduct(self, gid: int) -> TensorCombination:
        """Δ of a generator, computed in its block and written in normal words."""
        cached = self._coproducts.get(gid)
        if cached is None:
            b, local = self.local(gid)
            block = self.blocks[b]
            pairs = []
            for (A, B), c in dist_comul(block.generator_element(local)).terms.items():
                for w1, c1 in self.block_combination(b, block.additive_index_to_mult(A)).items():
                    for w2, c2 in self.block_combination(b, block.additive_index_to_mult(B)).items():
                        pairs.append(((w1, w2), c * c1 * c2))
            cached = collect(pairs, self.p)
            self._coproducts[gid] = cached
        return cached

    def coproduct_word(self, word: Word,
                       comuls: Optional[Mapping[int, Mapping[Tuple[Word, Word], int]]] = None) -> TensorCombination:
        """Δ of a normal word as the product of its letters' coproducts."""
        if comuls is None and word in self._word_coproducts:
            return self._word_coproducts[word]
        acc: TensorCombination = {((), ()): 1}
        for g in word:
            letter = comuls[g] if comuls is not None and g in comuls else self.coproduct(g)
            pairs = []
            for (l1, l2), c in acc.items():
                for (a1, a2), d in letter.items():
                    for u1, e1 in self.straighten(l1 + a1).items():
                        for u2, e2 in self.straighten(l2 + a2).items():
                            pairs.append(((u1, u2), c * d * e1 * e2))
            acc = collect(pairs, self.p)
        if comuls is None:
            self._word_coproducts[word] = acc
        return acc

    # Elements

    def element(self, terms: Mapping[Word, int]) -> "SplayElement":
        return SplayElement(self, terms)

    def unit(self) -> "SplayElement":
        return SplayElement(self, {(): 1})

    def zero(self) -> "SplayElement":
        return SplayElement(self, {})

    def generator_element(self, gid: int) -> "SplayElement":
        return SplayElement(self, {(gid,): 1})

    def from_words(self, combination: Mapping[Word, int]) -> "SplayElement":
        """Commutatively straightened element of arbitrary words."""
        return SplayElement(self, self.straighten_combination(combination))

    def product(self, a: "SplayElement", b: "SplayElement") -> "SplayElement":
        """Commutative product of the splay algebra."""
        pairs = ((w1 + w2, c1 * c2) for w1, c1 in a.terms.items() for w2, c2 in b.terms.items())
        return self.from_words(collect(pairs, self.p))


@dataclass(frozen=True)
class SplayElement:
    """Combination of normal words of a splay."""
    splay: SplayDescription
    terms: Mapping[Word, int] = field(default_factory=dict)

    def __post_init__(self):
        p = self.splay.p
        clean: Dict[Word, int] = {}
        for word, c in dict(self.terms).items():
            word = tuple(word)
            if not self.splay.is_normal(word):
                raise LevelEscapeError(
                    f"word {word} is not a normal word of level {self.splay.level}")
            clean[word] = (clean.get(word, 0) + int(c)) % p
        object.__setattr__(self, 'terms', MappingProxyType({w: c for w, c in clean.items() if c}))

    def _check(self, other: "SplayElement") -> None:
        if not isinstance(other, SplayElement) or other.splay is not self.splay:
            raise InputError("splay elements belong to different splays")

    def __add__(self, other: "SplayElement") -> "SplayElement":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return SplayElement(self.splay, out)

    def __neg__(self) -> "SplayElement":
        return SplayElement(self.splay, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "SplayElement") -> "SplayElement":
        return self + (-other)

    def scale(self, factor: int) -> "SplayElement":
        return SplayElement(self.splay, {w: c * int(factor) for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        self._check(other)
        return self.splay.product(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Weighted degree (generator δ_{x^{p^t}} has weight p^t)."""
        return max((self.splay.degree(w) for w in self.terms), default=0)

    def sorted_terms(self) -> List[Tuple[Word, int]]:
        return sorted(self.terms.items(), key=lambda item: self.splay.word_key(item[0]), reverse=True)

    def to_text(self) -> str:
        return format_combination((self.splay.format_word(w), c) for w, c in self.sorted_terms())

    def to_mult(self) -> Dict[MultMonomial, int]:
        return {self.splay.word_to_mult(w): c for w, c in self.terms.items()}

    def to_distribution(self, level: DistLevel) -> Distribution:
        """Evaluate in a distribution algebra with the splay's coordinates and level."""
        if level.names != self.splay.coords or level.level != self.splay.level:
            raise InputError("the distribution level does not match the splay")
        result = level.zero()
        for w, c in self.terms.items():
            result = result + level.word_value(w).scale(c)
        return result

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class PoissonTable:
    """Bracket values on generator pairs; zero values are not stored."""
    splay: SplayDescription
    entries: Mapping[Tuple[int, int], SplayElement] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (a, b), value in dict(self.entries).items():
            if value.splay is not self.splay:
                raise InputError("table values must live in the table's splay")
            for g in (a, b):
                if not 0 <= g < self.splay.generator_count:
                    raise LevelEscapeError(f"generator id {g} is not a generator of the splay")
            if value:
                clean[(a, b)] = value
        object.__setattr__(self, 'entries', MappingProxyType(dict(sorted(clean.items()))))

    def bracket(self, a: int, b: int) -> SplayElement:
        """π(a, b) with skew-symmetry; 0 for unknown pairs."""
        value = self.entries.get((a, b))
        if value is not None:
            return value
        value = self.entries.get((b, a))
        if value is not None:
            return -value
        return self.splay.zero()

    def with_entry(self, a: int, b: int, value: SplayElement) -> "PoissonTable":
        entries = dict(self.entries)
        entries[(a, b)] = value
        return PoissonTable(self.splay, entries)

    def without_entry(self, a: int, b: int) -> "PoissonTable":
        entries = {key: v for key, v in self.entries.items() if key != (a, b)}
        return PoissonTable(self.splay, entries)

    def cross_pairs(self) -> List[Tuple[int, int]]:
        """All generator pairs (η, ζ) with η >> ζ in different blocks."""
        block = self.splay.generator_block
        count = self.splay.generator_count
        return [(a, b) for a in range(count) for b in range(count) if block[a] > block[b]]

    def __len__(self) -> int:
        return len(self.entries)

    def to_text(self) -> str:
        lines = [f"π({self.splay.label(a)}, {self.splay.label(b)}) = {value.to_text()}"
                 for (a, b), value in self.entries.items()]
        return "\n".join(lines) if lines else "(empty table)"


def extract_pi(dist: DistLevel) -> PoissonTable:
    """The canonical table π(η, ζ) = ηζ - ζη on cross-block pairs η >> ζ."""
    splay = SplayDescription.from_dist(dist)
    entries = {}
    for a, b in PoissonTable(splay).cross_pairs():
        commutator = canonical_commutator(dist.generator_element(a), dist.generator_element(b))
        value = {mono.word(): c for mono, c in additive_to_mult(commutator).items()}
        if value:
            entries[(a, b)] = SplayElement(splay, value)
    logger.debug("extracted %d nonzero bracket values from %r", len(entries), dist)
    return PoissonTable(splay, entries)


def quotient_straightener(table: PoissonTable) -> Straightener:
    """Normal form in the quotient by the table's own relations."""
    from .pbw_rewrite import RewriteSystem

    return RewriteSystem(table).reduce_word


class Biderivation:
    """
    The extension π̃ of a table to words, computed in the free algebra on the
    generators with the Leibniz rule in each argument:

        π̃(f x, v) = f π̃(x, v) + π̃(f, v) x
        π̃(u, g y) = π̃(u, g) y + g π̃(u, y)

    then normalized with ``straighten`` (default: commutative straightening).
    """

    def __init__(self, table: PoissonTable, straighten: Optional[Straightener] = None):
        self.table = table
        self.splay = table.splay
        self.straighten = straighten or self.splay.straighten
        self._free: Dict[Tuple[Word, Word], WordCombination] = {}

    def free(self, u: Word, v: Word) -> WordCombination:
        if not u or not v:
            return {}
        key = (u, v)
        cached = self._free.get(key)
        if cached is not None:
            return cached
        p = self.splay.p
        if len(u) > 1:
            f, x = u[:-1], u[-1:]
            pairs = [(f + w, c) for w, c in self.free(x, v).items()]
            pairs += [(w + x, c) for w, c in self.free(f, v).items()]
        elif len(v) > 1:
            g, y = v[:-1], v[-1:]
            pairs = [(w + y, c) for w, c in self.free(u, g).items()]
            pairs += [(g + w, c) for w, c in self.free(u, y).items()]
        else:
            pairs = list(self.table.bracket(u[0], v[0]).terms.items())
        result = collect(pairs, p)
        self._free[key] = result
        return result

    def words(self, u: Word, v: Word) -> WordCombination:
        return self.splay.straighten_combination(self.free(u, v), self.straighten)

    def __call__(self, u: Union[Word, SplayElement], v: Union[Word, SplayElement]) -> SplayElement:
        left = u.terms if isinstance(u, SplayElement) else {tuple(u): 1}
        right = v.terms if isinstance(v, SplayElement) else {tuple(v): 1}
        pairs = ((w, a * b * c) for u_word, a in left.items() for v_word, b in right.items()
                 for w, c in self.words(u_word, v_word).items())
        return SplayElement(self.splay, collect(pairs, self.splay.p))


def extend_biderivation(table: PoissonTable, u: Union[Word, SplayElement],
                        v: Union[Word, SplayElement], *, quotient: bool = False) -> SplayElement:
    """π̃(u, v); with ``quotient`` the result is normalized in the quotient algebra."""
    straighten = quotient_straightener(table) if quotient else None
    return Biderivation(table, straighten)(u, v)


def _pair_label(splay: SplayDescription, *gids: int) -> str:
    return "(" + ", ".join(splay.label(g) for g in gids) + ")"


def check_skew_and_constants(table: PoissonTable) -> Report:
    splay = table.splay
    report = Report("skew-symmetry and constants")
    inside = [(a, b) for (a, b) in table.entries if splay.generator_block[a] == splay.generator_block[b]]
    report.record("internal-symmetry", not inside,
                  _pair_label(splay, *inside[0]) if inside else None,
                  "" if not inside else "bracket inside a block")
    witness = None
    for (a, b), value in table.entries.items():
        partner = table.entries.get((b, a))
        if a == b or (partner is not None and partner != -value):
            witness = _pair_label(splay, a, b)
            break
    report.record("skew-symmetry", witness is None, witness)
    bider = Biderivation(table)
    constant_ok = all(not bider((), (g,)) and not bider((g,), ()) for g in range(splay.generator_count))
    report.record("vanishes-on-constants", constant_ok)
    return report


def check_jacobi(table: PoissonTable, straighten: Optional[Straightener] = None) -> Report:
    """
    π̃(π(k,j), i) + π̃(j, π(k,i)) + π̃(π(j,i), k) = 0 for generator triples
    k >= j >= i, evaluated in the quotient by the table's relations.
    """
    splay = table.splay
    report = Report("Jacobi identity")
    try:
        bider = Biderivation(table, straighten or quotient_straightener(table))
        checked = 0
        for i, j, k in itertools.combinations_with_replacement(range(splay.generator_count), 3):
            defect = (bider(table.bracket(k, j), (i,)) + bider((j,), table.bracket(k, i))
                      + bider(table.bracket(j, i), (k,)))
            checked += 1
            if defect:
                report.record("jacobi", False, _pair_label(splay, k, j, i), f"defect {defect.to_text()}")
                break
        else:
            report.record("jacobi", True)
        report.facts['triples'] = checked
    except MathematicalRefusal as exc:
        report.record("jacobi", False, None, f"cannot evaluate brackets: {exc}")
    return report


def check_strongly_filtered(table: PoissonTable) -> Report:
    """deg π(η, ζ) <= deg η + deg ζ - 1 for every stored entry."""
    splay = table.splay
    report = Report("strong filtration")
    slack = {}
    witness = None
    for (a, b), value in table.entries.items():
        room = splay.weights[a] + splay.weights[b] - 1 - value.degree()
        slack[f"{splay.label(a)},{splay.label(b)}"] = room
        if room < 0 and witness is None:
            witness = f"{_pair_label(splay, a, b)}: degree {value.degree()}"
    report.record("strongly-filtered", witness is None, witness)
    report.facts['slack'] = slack
    return report


def check_strongly_multiplicative(table: PoissonTable,
                                  comuls: Optional[Mapping[int, Mapping[Tuple[Word, Word], int]]] = None,
                                  straighten: Optional[Straightener] = None) -> Report:
    """
    Δπ(η,ζ) = Σ η1ζ1 ⊗ π̃(η2,ζ2) + π̃(η1,ζ1) ⊗ η2ζ2 + π̃(η1,ζ1) ⊗ π̃(η2,ζ2)
    over Δη = Σ η1⊗η2 and Δζ = Σ ζ1⊗ζ2, for all cross pairs η >> ζ.
    """
    splay = table.splay
    p = splay.p
    report = Report("strong multiplicativity")

    def delta(g: int) -> Mapping[Tuple[Word, Word], int]:
        if comuls is not None and g in comuls:
            return comuls[g]
        return splay.coproduct(g)

    try:
        bider = Biderivation(table, straighten or quotient_straightener(table))
        for a, b in table.cross_pairs():
            lhs = collect(((key, c * d) for w, c in table.bracket(a, b).terms.items()
                           for key, d in splay.coproduct_word(w, comuls).items()), p)
            pairs = []
            for (a1, a2), c1 in delta(a).items():
                for (b1, b2), c2 in delta(b).items():
                    coeff = c1 * c2
                    left_product = splay.straighten(b1 + a1)
                    right_product = splay.straighten(b2 + a2)
                    left_bracket = bider.words(a1, b1)
                    right_bracket = bider.words(a2, b2)
                    for x, cx in left_product.items():
                        for y, cy in right_bracket.items():
                            pairs.append(((x, y), coeff * cx * cy))
                    for x, cx in left_bracket.items():
                        for y, cy in right_product.items():
                            pairs.append(((x, y), coeff * cx * cy))
                        for y, cy in right_bracket.items():
                            pairs.append(((x, y), coeff * cx * cy))
            rhs = collect(pairs, p)
            if lhs != rhs:
                report.record("strongly-multiplicative", False, _pair_label(splay, a, b))
                break
        else:
            report.record("strongly-multiplicative", True)
    except MathematicalRefusal as exc:
        report.record("strongly-multiplicative", False, None, f"cannot evaluate brackets: {exc}")
    return report


def check_table(table: PoissonTable) -> Report:
    """All four table checks, in the order build_U requires them."""
    report = Report("Poisson table checks")
    report.extend(check_skew_and_constants(table))
    report.extend(check_strongly_filtered(table))
    if report.passed:
        report.extend(check_jacobi(table))
        report.extend(check_strongly_multiplicative(table))
    return report


# Serialization

def _combination_to_terms(splay: SplayDescription, element: SplayElement) -> List[TermModel]:
    return [TermModel(monomial=splay.format_word(w), coeff=c) for w, c in element.sorted_terms()]


def _terms_to_element(splay: SplayDescription, terms: Sequence[TermModel]) -> SplayElement:
    combination: Dict[Word, int] = {}
    for term in terms:
        word = tuple(sorted(splay.parse_word(term.monomial)))
        combination[word] = combination.get(word, 0) + term.coeff
    return SplayElement(splay, combination)


def table_entries_to_models(table: PoissonTable) -> List[TableEntryModel]:
    splay = table.splay
    return [TableEntryModel(eta=splay.label(a), zeta=splay.label(b),
                            value=_combination_to_terms(splay, value))
            for (a, b), value in table.entries.items()]


def table_to_model(table: PoissonTable) -> PoissonTableModel:
    splay = table.splay
    return PoissonTableModel(level=splay.level,
                             blocks=[law_to_model(block.law) for block in splay.blocks],
                             entries=table_entries_to_models(table))


def table_from_entries(splay: SplayDescription, entries: Sequence[TableEntryModel]) -> PoissonTable:
    values = {}
    for entry in entries:
        (a,), (b,) = splay.parse_word(entry.eta), splay.parse_word(entry.zeta)
        values[(a, b)] = _terms_to_element(splay, entry.value)
    return PoissonTable(splay, values)


def table_from_model(model: PoissonTableModel, *, unsafe_cap: bool = False,
                     settings: Optional[Settings] = None) -> PoissonTable:
    laws = [load_custom(block, name=f"block{b}") for b, block in enumerate(model.blocks)]
    splay = SplayDescription.from_block_laws(laws, model.level, unsafe_cap=unsafe_cap, settings=settings)
    return table_from_entries(splay, model.entries)


def parse_element(splay: SplayDescription, text: str) -> SplayElement:
    """Parse a combination of words (``2 x y + y``) into a splay element."""
    combination: Dict[Word, int] = {}
    for coeff, monomial in split_combination(text):
        word = splay.parse_word(monomial)
        combination[word] = combination.get(word, 0) + coeff
    return splay.from_words(combination)
