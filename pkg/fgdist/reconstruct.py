"""
Reconstruction of the distribution algebra from its commutative blocks and a
Poisson table: U = T/J in the PBW basis, with the divided-power coproduct,
its verification, an oracle comparison against Dist(G) and the order-swap
equivalence of tables.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from sympy import GF
from sympy.polys.matrices import DomainMatrix

from .base_arith import MultiIndex
from .config import Settings, get_settings
from .dist_algebra import DistLevel, additive_to_mult, antipode, dist_comul, dist_mul
from .errors import InputError
from .formal_group import law_to_model, load_custom
from .models import (
    AlgebraModel,
    CoproductModel,
    CoproductTermModel,
    ProductModel,
    TermModel,
)
from .notation import collect, format_combination, format_tensor
from .pbw_rewrite import RewriteSystem
from .report import Report
from .splay_poisson import (
    Biderivation,
    PoissonTable,
    SplayDescription,
    SplayElement,
    TensorCombination,
    Word,
    WordCombination,
    check_table,
    table_entries_to_models,
    table_from_entries,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReconstructedAlgebra:
    """
    U = T/J on the PBW basis of ``splay``.

    ``products[(u, v)]`` is the normal form of u·v for basis words u, v and
    ``coproducts[w]`` is Δ(w) as ``{(left word, right word): coefficient}``.
    """
    splay: SplayDescription
    table: PoissonTable
    basis: Tuple[Word, ...]
    products: Mapping[Tuple[Word, Word], SplayElement]
    coproducts: Mapping[Word, TensorCombination]
    system: Optional[RewriteSystem] = field(default=None, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.splay.p

    def unit(self) -> SplayElement:
        return self.splay.unit()

    def product(self, u: Word, v: Word) -> SplayElement:
        return self.products[(u, v)]

    def multiply(self, a: SplayElement, b: SplayElement) -> SplayElement:
        pairs = ((w, c1 * c2 * d) for u, c1 in a.terms.items() for v, c2 in b.terms.items()
                 for w, d in self.products[(u, v)].terms.items())
        return SplayElement(self.splay, collect(pairs, self.p))

    def comul(self, a: SplayElement) -> TensorCombination:
        pairs = ((key, c * d) for w, c in a.terms.items() for key, d in self.coproducts[w].items())
        return collect(pairs, self.p)

    def tensor_multiply(self, s: Mapping[Tuple[Word, Word], int],
                        t: Mapping[Tuple[Word, Word], int]) -> TensorCombination:
        """Componentwise product in U ⊗ U."""
        pairs = []
        for (a1, a2), c in s.items():
            for (b1, b2), d in t.items():
                for w1, e1 in self.products[(a1, b1)].terms.items():
                    for w2, e2 in self.products[(a2, b2)].terms.items():
                        pairs.append(((w1, w2), c * d * e1 * e2))
        return collect(pairs, self.p)

    def additive_element(self, J: MultiIndex) -> SplayElement:
        """E_J: the block-ordered product of the blocks' additive basis elements."""
        parts = []
        offset = 0
        for b, block in enumerate(self.splay.blocks):
            local = tuple(J[offset:offset + block.n])
            offset += block.n
            parts.append(self.splay.block_combination(b, block.additive_index_to_mult(local)))
        terms: WordCombination = {(): 1}
        for part in parts:
            terms = collect(((w + u, c * d) for w, c in terms.items() for u, d in part.items()), self.p)
        return SplayElement(self.splay, terms)

    def additive_comul(self, J: MultiIndex) -> Dict[Tuple[MultiIndex, MultiIndex], int]:
        """Δ(E_J) = Σ_{A+B=J} E_A ⊗ E_B on additive-basis indices."""
        out = {}
        for A in itertools.product(*(range(j + 1) for j in J)):
            B = tuple(j - a for j, a in zip(J, A))
            out[(tuple(A), B)] = 1
        return out

    def to_text(self) -> str:
        lines = [f"U: dimension {self.dimension} over F_{int(self.p)}, level {self.splay.level}"]
        for (u, v), value in self.products.items():
            if value and u and v:
                lines.append(f"{self.splay.format_word(u)} · {self.splay.format_word(v)} = {value.to_text()}")
        return "\n".join(lines)


def word_coproduct(splay: SplayDescription, word: Word) -> TensorCombination:
    """Δ of a normal word as the block-wise product of the block coproducts."""
    acc: TensorCombination = {((), ()): 1}
    for b, local in enumerate(splay.split_blocks(word)):
        if not local:
            continue
        block = splay.blocks[b]
        element = block.word_value(local)
        block_pairs = []
        for (A, B), c in dist_comul(element).terms.items():
            for w1, c1 in splay.block_combination(b, block.additive_index_to_mult(A)).items():
                for w2, c2 in splay.block_combination(b, block.additive_index_to_mult(B)).items():
                    block_pairs.append(((w1, w2), c * c1 * c2))
        acc = collect((((l1 + w1, l2 + w2), c * d) for (l1, l2), c in acc.items()
                       for (w1, w2), d in collect(block_pairs, splay.p).items()), splay.p)
    return acc


def build_U(splay: SplayDescription, table: PoissonTable, *,
            settings: Optional[Settings] = None) -> ReconstructedAlgebra:
    """Refuses tables failing any Poisson check with an ``AxiomViolation``."""
    if table.splay is not splay:
        raise InputError("the table does not belong to the given splay")
    settings = settings or splay.blocks[0].settings
    check_table(table).require()
    system = RewriteSystem(table)
    basis = tuple(splay.normal_words())

    def row(u: Word) -> List[Tuple[Tuple[Word, Word], SplayElement]]:
        return [((u, v), system.normal_form(u + v)) for v in basis]

    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        rows = list(pool.map(row, basis))
    products = MappingProxyType(dict(itertools.chain.from_iterable(rows)))
    coproducts = MappingProxyType({w: word_coproduct(splay, w) for w in basis})
    logger.info("reconstructed U of dimension %d from %d bracket values", len(basis), len(table))
    return ReconstructedAlgebra(splay, table, basis, products, coproducts, system)


def _counit(word: Word) -> int:
    return 0 if word else 1


def _apply_comul_left(U: ReconstructedAlgebra, tensor: Mapping[Tuple[Word, Word], int]) -> Dict:
    pairs = ((((a1, a2), b), c * d) for (a, b), c in tensor.items() for (a1, a2), d in U.coproducts[a].items())
    return collect(pairs, U.p)


def _apply_comul_right(U: ReconstructedAlgebra, tensor: Mapping[Tuple[Word, Word], int]) -> Dict:
    pairs = (((a, (b1, b2)), c * d) for (a, b), c in tensor.items() for (b1, b2), d in U.coproducts[b].items())
    return collect(pairs, U.p)


def dvps_verify(U: ReconstructedAlgebra, scope: str = "auto") -> Report:
    """
    Δ(uv) = Δ(u)Δ(v), coassociativity and counit.

    ``scope`` is ``all`` (every basis pair), ``generators`` (generator ×
    basis pairs) or ``auto`` (``all`` up to the configured dimension).
    """
    if scope not in ("auto", "all", "generators"):
        raise InputError(f"unknown verification scope '{scope}'")
    splay = U.splay
    settings = splay.blocks[0].settings
    full = scope == "all" or (scope == "auto" and U.dimension <= settings.full_check_dimension)
    report = Report("divided-power coproduct")
    report.facts['scope'] = "all basis pairs" if full else "generator × basis pairs"

    lefts = list(U.basis) if full else [(g,) for g in range(splay.generator_count)]
    witness = None
    for u in lefts:
        for v in U.basis:
            lhs = U.comul(U.products[(u, v)])
            rhs = U.tensor_multiply(U.coproducts[u], U.coproducts[v])
            if lhs != rhs:
                witness = f"({splay.format_word(u)}, {splay.format_word(v)})"
                break
        if witness:
            break
    report.record("multiplicative", witness is None, witness)

    if full:
        words = list(U.basis)
    else:
        words = [w for w in U.basis if len({splay.generator_block[g] for g in w}) <= 1]
    witness = None
    for w in words:
        delta = U.coproducts[w]
        if _apply_comul_left(U, delta) != _apply_comul_right(U, delta):
            witness = splay.format_word(w)
            break
    report.record("coassociativity", witness is None, witness)

    witness = None
    for w in words:
        delta = U.coproducts[w]
        left = collect(((b, c * _counit(a)) for (a, b), c in delta.items()), U.p)
        right = collect(((a, c * _counit(b)) for (a, b), c in delta.items()), U.p)
        if left != {w: 1} or right != {w: 1}:
            witness = splay.format_word(w)
            break
    report.record("counit", witness is None, witness)
    report.facts['words'] = len(words)
    return report


def check_associativity(U: ReconstructedAlgebra) -> Report:
    """(uv)w = u(vw) on all basis triples."""
    report = Report("associativity of U")
    witness = None
    for u, v, w in itertools.product(U.basis, repeat=3):
        left = U.multiply(U.products[(u, v)], U.splay.element({w: 1}))
        right = U.multiply(U.splay.element({u: 1}), U.products[(v, w)])
        if left != right:
            witness = "(" + ", ".join(U.splay.format_word(x) for x in (u, v, w)) + ")"
            break
    report.record("associativity", witness is None, witness)
    report.facts['triples'] = U.dimension ** 3
    return report


def compare_with_oracle(U: ReconstructedAlgebra, dist: DistLevel) -> Report:
    """Structure constants of U against products computed in Dist(G) by the pairing."""
    splay = U.splay
    if tuple(dist.names) != splay.coords or dist.level != splay.level or dist.p != splay.p:
        raise InputError("the oracle level must have the algebra's coordinates, p and level")
    report = Report("oracle comparison")
    witness = None
    detail = ""
    for u in U.basis:
        for v in U.basis:
            expected = additive_to_mult(dist_mul(dist.word_value(u), dist.word_value(v)))
            expected_words = {mono.word(): c for mono, c in expected.items()}
            actual = dict(U.products[(u, v)].terms)
            if actual != expected_words:
                witness = f"({splay.format_word(u)}, {splay.format_word(v)})"
                detail = (f"U gives {U.products[(u, v)].to_text()}, "
                          f"Dist(G) gives {SplayElement(splay, expected_words).to_text()}")
                break
        if witness:
            break
    report.record("oracle", witness is None, witness, detail)
    report.facts['structure_constants'] = U.dimension ** 2
    return report


class _BasisChange:
    """Rewrites elements of U from one block order's PBW basis to another's."""

    def __init__(self, system: RewriteSystem, target: SplayDescription):
        source = system.splay
        self.source = source
        self.target = target
        self.system = system
        p = int(source.p)
        self.source_words = source.normal_words()
        self.target_words = target.normal_words()
        row = {w: i for i, w in enumerate(self.source_words)}
        size = len(self.source_words)
        domain = GF(p)
        columns = []
        for word in self.target_words:
            image = system.reduce_word(tuple(target.translate(g, source) for g in word))
            column = [0] * size
            for w, c in image.items():
                column[row[w]] = c
            columns.append(column)
        matrix = DomainMatrix([[domain(columns[j][i]) for j in range(size)] for i in range(size)],
                              (size, size), domain)
        inverse = matrix.inv().to_Matrix()
        self.inverse = [[int(inverse[i, j]) % p for j in range(size)] for i in range(size)]
        self.row = row
        logger.debug("basis change between block orders of dimension %d", size)

    def convert(self, combination: Mapping[Word, int]) -> SplayElement:
        """A combination of source normal words as a target element."""
        p = self.source.p
        pairs = []
        for w, c in combination.items():
            j = self.row[w]
            for i, target_word in enumerate(self.target_words):
                if self.inverse[i][j]:
                    pairs.append((target_word, c * self.inverse[i][j]))
        return SplayElement(self.target, collect(pairs, p))


def swap_order_equivalence(splay: SplayDescription, table: PoissonTable, i: int = 0,
                           antipode_blocks: Optional[Iterable[int]] = None) -> Report:
    """
    Exchange blocks i and i+1, transport the table to the new order and
    check Φ(π(η, ζ)) = π̃'(Φζ, Φη) on cross pairs of the two blocks, where Φ
    applies the block antipode on ``antipode_blocks`` (default: i and i+1).
    """
    report = Report(f"order-swap equivalence of blocks ({i}, {i + 1})")
    if len(splay.blocks) == 1:
        report.record("order-swap", True, None, "single block")
        report.facts['checked_pairs'] = 0
        return report
    swapped = splay.swapped(i)
    antipode_blocks: Set[int] = set(antipode_blocks if antipode_blocks is not None else (i, i + 1))
    system = RewriteSystem(table)
    change = _BasisChange(system, swapped)
    new_block = list(range(len(splay.blocks)))
    new_block[i], new_block[i + 1] = i + 1, i

    swapped_entries = {}
    for a, b in PoissonTable(swapped).cross_pairs():
        old_a, old_b = swapped.translate(a, splay), swapped.translate(b, splay)
        commutator = collect(itertools.chain(system.reduce_word((old_a, old_b)).items(),
                                             ((w, -c) for w, c in system.reduce_word((old_b, old_a)).items())),
                             splay.p)
        value = change.convert(commutator)
        if value:
            swapped_entries[(a, b)] = value
    swapped_table = PoissonTable(swapped, swapped_entries)
    report.facts['swapped_entries'] = len(swapped_entries)

    def phi_block(b: int, local: Word) -> WordCombination:
        """Φ on a word of block b, as source words."""
        block = splay.blocks[b]
        element = block.word_value(local)
        if b in antipode_blocks:
            element = antipode(element)
        return splay.block_combination(b, additive_to_mult(element))

    def phi(combination: Mapping[Word, int]) -> SplayElement:
        pairs = []
        for w, c in combination.items():
            parts = [(b, local) for b, local in enumerate(splay.split_blocks(w)) if local]
            images: WordCombination = {(): c}
            for b, local in reversed(parts):
                images = collect(((x + y, d * e) for x, d in images.items()
                                  for y, e in phi_block(b, local).items()), splay.p)
            pairs.extend(images.items())
        reduced = system.reduce_combination(collect(pairs, splay.p))
        return change.convert(reduced)

    bider = Biderivation(swapped_table, RewriteSystem(swapped_table).reduce_word)
    checked = skipped = 0
    witness = None
    for a, b in table.cross_pairs():
        blocks = {splay.generator_block[a], splay.generator_block[b]}
        if not blocks <= {i, i + 1}:
            skipped += 1
            continue
        checked += 1
        lhs = phi(table.bracket(a, b).terms)
        phi_a, phi_b = phi({(a,): 1}), phi({(b,): 1})
        rhs = bider(phi_b, phi_a)
        if lhs != rhs:
            witness = f"({splay.label(a)}, {splay.label(b)})"
            report.record("order-swap", False, witness,
                          f"Φ(π) = {lhs.to_text()}, π'(Φ, Φ) = {rhs.to_text()}")
            break
    if witness is None:
        report.record("order-swap", True)
    report.facts['checked_pairs'] = checked
    report.facts['unchecked_pairs'] = skipped
    return report


# Serialization

def algebra_to_model(U: ReconstructedAlgebra) -> AlgebraModel:
    splay = U.splay
    products = [ProductModel(left=splay.format_word(u), right=splay.format_word(v),
                             value=[TermModel(monomial=splay.format_word(w), coeff=c)
                                    for w, c in U.products[(u, v)].sorted_terms()])
                for u in U.basis for v in U.basis]
    comul = [CoproductModel(element=splay.format_word(w),
                            terms=[CoproductTermModel(left=splay.format_word(a), right=splay.format_word(b), coeff=c)
                                   for (a, b), c in sorted(U.coproducts[w].items(),
                                                           key=lambda item: (splay.word_key(item[0][0]),
                                                                             splay.word_key(item[0][1])))])
             for w in U.basis]
    return AlgebraModel(level=splay.level, blocks=[law_to_model(block.law) for block in splay.blocks],
                        table=table_entries_to_models(U.table), basis=[splay.format_word(w) for w in U.basis],
                        products=products, comul=comul)


def algebra_from_model(model: AlgebraModel, *, unsafe_cap: bool = False,
                       settings: Optional[Settings] = None) -> ReconstructedAlgebra:
    laws = [load_custom(block, name=f"block{b}") for b, block in enumerate(model.blocks)]
    splay = SplayDescription.from_block_laws(laws, model.level, unsafe_cap=unsafe_cap,
                                             settings=settings or get_settings())
    table = table_from_entries(splay, model.table)
    basis = tuple(splay.parse_word(text) for text in model.basis)
    products = {}
    for entry in model.products:
        value = {}
        for term in entry.value:
            word = splay.parse_word(term.monomial)
            value[word] = value.get(word, 0) + term.coeff
        products[(splay.parse_word(entry.left), splay.parse_word(entry.right))] = SplayElement(splay, value)
    coproducts = {}
    for entry in model.comul:
        coproducts[splay.parse_word(entry.element)] = collect(
            (((splay.parse_word(t.left), splay.parse_word(t.right)), t.coeff) for t in entry.terms), splay.p)
    missing = [(u, v) for u in basis for v in basis if (u, v) not in products]
    if missing:
        raise InputError(f"algebra file lacks {len(missing)} structure constants")
    return ReconstructedAlgebra(splay, table, basis, MappingProxyType(products), MappingProxyType(coproducts))


def format_coproduct(U: ReconstructedAlgebra, tensor: Mapping[Tuple[Word, Word], int]) -> str:
    splay = U.splay
    items = sorted(tensor.items(), key=lambda item: (splay.word_key(item[0][0]), splay.word_key(item[0][1])),
                   reverse=True)
    return format_combination((format_tensor(splay.format_word(a), splay.format_word(b)), c) for (a, b), c in items)
