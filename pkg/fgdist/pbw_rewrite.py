"""
PBW rewriting in the quotient of the free algebra on the splay generators by

    η^p -> F(η)                       (Frobenius relations)
    η ζ -> ζ η + π(η, ζ)    for η >> ζ (commutation relations)

Normal forms are computed by inserting letters from the right into an
already normal word. The rewriting terminates for strongly filtered tables:
every rule lowers (weighted degree, number of inversions) lexicographically.
"""

import itertools
import logging
import threading
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .dist_algebra import MultMonomial
from .errors import MathematicalRefusal, TerminationError
from .notation import collect, split_combination
from .report import Report
from .splay_poisson import PoissonTable, SplayDescription, SplayElement, Word, WordCombination

logger = logging.getLogger(__name__)

Operand = Union[Word, Mapping[Word, int], SplayElement, str]


def word_key(splay: SplayDescription, word: Word) -> Tuple[int, Word]:
    """Weighted degree first, then left-to-right generator comparison under <<."""
    return splay.word_key(word)


def compare(splay: SplayDescription, u: Word, v: Word) -> int:
    """-1, 0 or 1 as u sorts before, equal to or after v."""
    ku, kv = word_key(splay, u), word_key(splay, v)
    return (ku > kv) - (ku < kv)


def inversions(word: Word) -> int:
    return sum(1 for a, b in itertools.combinations(word, 2) if a > b)


class RewriteSystem:
    """Normal forms modulo the relations of a Poisson table."""

    def __init__(self, table: PoissonTable, *, check_termination: Optional[bool] = None):
        self.table = table
        self.splay = table.splay
        self.p = self.splay.p
        if check_termination is None:
            check_termination = self.splay.blocks[0].settings.check_termination
        self.check_termination = check_termination
        self._lock = threading.RLock()
        self._inserted: Dict[Tuple[int, Word], WordCombination] = {}
        self._reduced: Dict[Word, WordCombination] = {}

    def measure(self, word: Word) -> Tuple[int, int]:
        return (self.splay.degree(word), inversions(word))

    def _descends(self, before: Word, after: Mapping[Word, int]) -> None:
        if not self.check_termination:
            return
        bound = self.measure(before)
        for word in after:
            if self.measure(word) >= bound:
                raise TerminationError(
                    f"rewriting '{self.splay.format_word(before)}' does not lower the measure "
                    f"(reaches '{self.splay.format_word(word)}')")

    def _concat(self, word: Word, normal: Word) -> WordCombination:
        """NF(word · normal), inserting the letters of ``word`` from the right."""
        acc: WordCombination = {normal: 1}
        for g in reversed(word):
            pairs = ((w, c * d) for v, c in acc.items() for w, d in self._insert(g, v).items())
            acc = collect(pairs, self.p)
        return acc

    def _insert(self, g: int, v: Word) -> WordCombination:
        """NF(g · v) for a normal word v."""
        if not v or g < v[0]:
            return {(g,) + v: 1}
        key = (g, v)
        cached = self._inserted.get(key)
        if cached is not None:
            return cached
        head = v[0]
        if g == head:
            run = 1 + len(list(itertools.takewhile(lambda x: x == g, v)))
            if run < self.p:
                return {(g,) + v: 1}
            rest = v[run - 1:]
            frobenius = self.splay.frobenius_terms(g)
            self._descends((g,) + v, {w + rest: c for w, c in frobenius.items()})
            pairs = ((u, c * d) for w, c in frobenius.items() for u, d in self._concat(w, rest).items())
        else:
            tail = v[1:]
            bracket = self.table.bracket(g, head).terms
            after = {(head, g) + tail: 1}
            after.update((w + tail, c) for w, c in bracket.items())
            self._descends((g,) + v, after)
            swapped = ((u, c * d) for w, c in self._insert(g, tail).items()
                       for u, d in self._insert(head, w).items())
            corrections = ((u, c * d) for w, c in bracket.items() for u, d in self._concat(w, tail).items())
            pairs = itertools.chain(swapped, corrections)
        result = collect(pairs, self.p)
        with self._lock:
            return self._inserted.setdefault(key, result)

    def reduce_word(self, word: Word) -> WordCombination:
        """Normal form of an arbitrary word, as ``{normal word: coefficient}``."""
        word = tuple(word)
        cached = self._reduced.get(word)
        if cached is not None:
            return cached
        try:
            result = self._concat(word, ())
        except RecursionError as exc:
            raise TerminationError(
                f"rewriting '{self.splay.format_word(word)}' does not terminate") from exc
        with self._lock:
            return self._reduced.setdefault(word, result)

    def reduce_combination(self, combination: Mapping[Word, int]) -> WordCombination:
        return self.splay.straighten_combination(combination, self.reduce_word)

    def parse(self, text: str) -> WordCombination:
        """Combination of arbitrary (not necessarily sorted) words."""
        combination: Dict[Word, int] = {}
        for coeff, monomial in split_combination(text):
            word = self.splay.parse_word(monomial)
            combination[word] = combination.get(word, 0) + coeff
        return combination

    def normal_form(self, operand: Operand) -> SplayElement:
        if isinstance(operand, SplayElement):
            combination = dict(operand.terms)
        elif isinstance(operand, str):
            combination = self.parse(operand)
        elif isinstance(operand, tuple):
            combination = {operand: 1}
        else:
            combination = dict(operand)
        return SplayElement(self.splay, self.reduce_combination(combination))

    def multiply(self, a: SplayElement, b: SplayElement) -> SplayElement:
        """Product in the quotient algebra U."""
        pairs = ((w1 + w2, c1 * c2) for w1, c1 in a.terms.items() for w2, c2 in b.terms.items())
        return self.normal_form(collect(pairs, self.p))

    def overlap_words(self) -> List[Word]:
        """
        Overlaps η^(p+k) for 1 <= k < p, η^p ζ, η ζ^p and a b c for η >> ζ and
        a >> b >> c.
        """
        p = self.p
        count = self.splay.generator_count
        words = []
        for a in range(count):
            words.extend((a,) * (p + k) for k in range(1, p))
            for b in range(a):
                words.append((a,) * p + (b,))
                words.append((a,) + (b,) * p)
        for c, b, a in itertools.combinations(range(count), 3):
            words.append((a, b, c))
        return sorted(set(words), key=self.splay.word_key)

    def _overlap_reductions(self, word: Word) -> Tuple[WordCombination, WordCombination]:
        p = self.p
        a = word[0]
        if len(word) == 3 and len(set(word)) == 3:
            _, b, c = word
            first = {(b, a, c): 1}
            for w, k in self.table.bracket(a, b).terms.items():
                first[w + (c,)] = first.get(w + (c,), 0) + k
            second = {(a, c, b): 1}
            for w, k in self.table.bracket(b, c).terms.items():
                second[(a,) + w] = second.get((a,) + w, 0) + k
            return first, second
        if len(set(word)) == 1:
            rest = (a,) * (len(word) - p)
            frobenius = self.splay.frobenius_terms(a)
            return ({w + rest: c for w, c in frobenius.items()},
                    {rest + w: c for w, c in frobenius.items()})
        if word[1] == a:
            b = word[-1]
            first = {w + (b,): c for w, c in self.splay.frobenius_terms(a).items()}
            prefix = (a,) * (p - 1)
            second = {prefix + (b, a): 1}
            for w, k in self.table.bracket(a, b).terms.items():
                second[prefix + w] = second.get(prefix + w, 0) + k
            return first, second
        b = word[1]
        suffix = (b,) * (p - 1)
        first = {(b, a) + suffix: 1}
        for w, k in self.table.bracket(a, b).terms.items():
            first[w + suffix] = first.get(w + suffix, 0) + k
        second = {(a,) + w: c for w, c in self.splay.frobenius_terms(b).items()}
        return first, second

    def s_polynomial(self, word: Word) -> SplayElement:
        """Difference of the normal forms of the two reductions of an overlap."""
        first, second = self._overlap_reductions(word)
        return self.normal_form(first) - self.normal_form(second)


def s_polynomial_report(system: RewriteSystem) -> Report:
    """Every overlap residue; the report passes when all of them vanish."""
    splay = system.splay
    report = Report("S-polynomial confluence")
    words = system.overlap_words()
    residues = {}
    try:
        for word in words:
            residue = system.s_polynomial(word)
            if residue:
                residues[splay.format_word(word)] = residue.to_text()
                report.record("s-polynomial", False, splay.format_word(word), residue.to_text())
    except MathematicalRefusal as exc:
        report.record("termination", False, None, str(exc))
    if report.passed:
        report.record("confluence", True)
    report.facts['overlaps'] = len(words)
    report.facts['nonzero_residues'] = len(residues)
    logger.info("checked %d overlaps, %d nonzero residues", len(words), len(residues))
    return report


def enumerate_pbw_basis(system: Union[RewriteSystem, SplayDescription]) -> List[MultMonomial]:
    """The normal words as multiplicative monomials, ascending in word order."""
    splay = system.splay if isinstance(system, RewriteSystem) else system
    return [splay.word_to_mult(word) for word in splay.normal_words()]
