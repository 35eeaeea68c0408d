"""
Closed-form formulas for the built-in groups, checked against the pairing.

The T₂ formulas are written for the coordinates (1+x, y; 0, (1+x)^{-1}) of
``builtin_t2``: x spans the multiplicative block, y the additive one.
Indices are (exponent of x, exponent of y).
"""

import itertools
import logging
from typing import Callable, Dict, Iterable, Optional, Tuple

from sympy.functions.combinatorial.numbers import stirling

from .base_arith import binom_residue, digits_of, factorial_residue, padic_digits
from .config import Settings
from .dist_algebra import (
    DistLevel,
    Distribution,
    Generator,
    MultMonomial,
    additive_to_mult,
    canonical_commutator,
    dist_mul,
    filtration_degree,
    frobenius_power,
)
from .errors import InputError
from .formal_group import builtin_additive, builtin_multiplicative, builtin_t2, default_cap
from .report import Report

logger = logging.getLogger(__name__)


def _power_count(r: int, s: int, p: int) -> int:
    """Largest k with k p^s <= p^r (0 when r < s)."""
    return p ** r // p ** s if r >= s else 0


def t2_product_xy(level: DistLevel, r: int, s: int) -> Distribution:
    """δ_{x^{p^r}} · δ_{y^{p^s}}."""
    p = level.p
    terms = {(p ** r, p ** s): 1}
    if r >= s:
        key = (p ** r - p ** s, p ** s)
        terms[key] = terms.get(key, 0) + 1
    return level.element(terms)


def t2_product_yx(level: DistLevel, r: int, s: int) -> Distribution:
    """δ_{y^{p^s}} · δ_{x^{p^r}} = Σ_{0<=k<=p^{r-s}} (-1)^k δ_{x^{p^r - k p^s} y^{p^s}}."""
    p = level.p
    terms: Dict[Tuple[int, int], int] = {}
    for k in range(_power_count(r, s, p) + 1):
        key = (p ** r - k * p ** s, p ** s)
        terms[key] = terms.get(key, 0) + (-1) ** k
    return level.element(terms)


def t2_commutator(level: DistLevel, r: int, s: int) -> Distribution:
    """π_c(δ_{x^{p^r}}, δ_{y^{p^s}}); zero for r < s."""
    p = level.p
    if r < s:
        return level.zero()
    terms = {(p ** r - p ** s, p ** s): 2}
    for k in range(2, _power_count(r, s, p) + 1):
        key = (p ** r - k * p ** s, p ** s)
        terms[key] = terms.get(key, 0) - (-1) ** k
    return level.element(terms)


def _gm_coefficient(a: int, i: int, j: int, p: int) -> int:
    """[x'^i x''^j] (x' + x'' + x'x'')^a, i.e. C(a, i) C(i, a - j)."""
    return binom_residue(a, i, p) * binom_residue(i, a - j, p) % p


def _recursion_applies(p: int, r: int, m: int) -> bool:
    return padic_digits(m, p).digit(r) < p - 1


def gm_product(level: DistLevel, r: int, m: int, coord: int = 0) -> Distribution:
    """
    δ_{x^{p^r}} · δ_{x^m} = (m_r + 1) δ_{x^{m+p^r}} + m_r δ_{x^m} for a
    multiplicative coordinate, valid when the digit m_r is below p - 1.
    """
    p = level.p
    if not _recursion_applies(p, r, m):
        raise InputError(f"the recursion needs digit {r} of {m} below {p - 1}")
    m_r = padic_digits(m, p).digit(r)

    def index(e: int) -> Tuple[int, ...]:
        return tuple(e if j == coord else 0 for j in range(level.n))

    terms = {index(m + p ** r): m_r + 1}
    terms[index(m)] = terms.get(index(m), 0) + m_r
    return level.element(terms)


def t2_mixed_product(level: DistLevel, r: int, s: int, m: int) -> Distribution:
    """
    δ_{x^{p^r}} · δ_{x^m y^{p^s}} = (m_r + 1) δ_{x^{m+p^r} y^{p^s}} + m_r δ_{x^m y^{p^s}}
      + Σ_k C(k, m) C(m, k - p^r + p^s) δ_{x^k y^{p^s}}

    with the sum over max(m, p^r - p^s) <= k <= m + p^r - p^s, present only
    for r >= s.
    """
    p = level.p
    if not _recursion_applies(p, r, m):
        raise InputError(f"the recursion needs digit {r} of {m} below {p - 1}")
    m_r = padic_digits(m, p).digit(r)
    y = p ** s
    terms: Dict[Tuple[int, int], int] = {(m + p ** r, y): m_r + 1}
    terms[(m, y)] = terms.get((m, y), 0) + m_r
    if r >= s:
        shift = p ** r - p ** s
        for k in range(max(m, shift), m + shift + 1):
            terms[(k, y)] = terms.get((k, y), 0) + _gm_coefficient(k, shift, m, p)
    return level.element(terms)


def ga_divided_power(p: int, level: int, n: int) -> Dict[MultMonomial, int]:
    """δ_{y^n} = (1/n!_p) Π_t δ_{y^{p^t}}^{n_t} in the multiplicative basis."""
    digits = padic_digits(n, p).padded(level + 1)
    if digits_of(n, p)[level + 1:]:
        raise InputError(f"{n} lies above level {level}")
    return {MultMonomial((digits,)): pow(factorial_residue(n, p), -1, p)}


def gm_stirling_expansion(p: int, level: int, m: int) -> Dict[MultMonomial, int]:
    """
    δ_{x^m} = (1/m!_p) Π_t δ_{x^{p^t}}(δ_{x^{p^t}} - 1)...(δ_{x^{p^t}} - (m_t - 1)),
    expanded with signed Stirling numbers of the first kind.
    """
    digits = padic_digits(m, p).padded(level + 1)
    if digits_of(m, p)[level + 1:]:
        raise InputError(f"{m} lies above level {level}")
    scale = pow(factorial_residue(m, p), -1, p)
    factors = [[(j, int(stirling(d, j, kind=1, signed=True)) % p) for j in range(d + 1)] for d in digits]
    out: Dict[MultMonomial, int] = {}
    for choice in itertools.product(*factors):
        coeff = scale
        for _, c in choice:
            coeff = coeff * c % p
        if coeff:
            mono = MultMonomial((tuple(j for j, _ in choice),))
            out[mono] = (out.get(mono, 0) + coeff) % p
    return {mono: c for mono, c in out.items() if c}


def t2_lie_algebra_is_abelian(p: int) -> bool:
    """π_c(δ_x, δ_y) = 2δ_y, which vanishes only in characteristic 2."""
    return p == 2


def _first_failure(cases: Iterable, predicate: Callable[..., bool]) -> Optional[str]:
    for case in cases:
        if not predicate(*case):
            return str(case)
    return None


def run_t2_demo(p: int, level: int, settings: Optional[Settings] = None) -> Report:
    """Every closed form above against pairing-based products at (p, R)."""
    cap = default_cap(p, level)
    t2 = DistLevel(builtin_t2(p, cap), level, settings=settings)
    gm = DistLevel(builtin_multiplicative(p, cap), level, settings=settings)
    ga = DistLevel(builtin_additive(p, cap), level, settings=settings)
    p = t2.p
    bound = t2.bound
    report = Report(f"T2 closed forms at p={int(p)}, R={level}")
    powers = list(itertools.product(range(level + 1), repeat=2))

    def x(r: int) -> Distribution:
        return t2.generator_element(Generator(0, r))

    def y(s: int) -> Distribution:
        return t2.generator_element(Generator(1, s))

    witness = _first_failure(powers, lambda r, s: dist_mul(x(r), y(s)) == t2_product_xy(t2, r, s))
    report.record("t2-product-xy", witness is None, witness)
    witness = _first_failure(powers, lambda r, s: dist_mul(y(s), x(r)) == t2_product_yx(t2, r, s))
    report.record("t2-product-yx", witness is None, witness)
    witness = _first_failure(powers, lambda r, s: canonical_commutator(x(r), y(s)) == t2_commutator(t2, r, s))
    report.record("t2-commutator", witness is None, witness)

    mixed = [(r, s, m) for r, s in powers for m in range(bound - p ** r + 1)
             if _recursion_applies(p, r, m)]
    witness = _first_failure(
        mixed, lambda r, s, m: dist_mul(x(r), t2.delta((m, p ** s))) == t2_mixed_product(t2, r, s, m))
    report.record("t2-mixed-recursion", witness is None, witness)

    recursion = [(r, m) for r in range(level + 1) for m in range(bound - p ** r + 1)
                 if _recursion_applies(p, r, m)]
    witness = _first_failure(
        recursion, lambda r, m: dist_mul(gm.generator_element(Generator(0, r)), gm.delta((m,))) == gm_product(gm, r, m))
    report.record("gm-recursion", witness is None, witness)

    generators = [(r,) for r in range(level + 1)]
    witness = _first_failure(generators, lambda r: (
        frobenius_power(gm, Generator(0, r)) == gm.generator_element(Generator(0, r))
        and not frobenius_power(ga, Generator(0, r))
        and frobenius_power(t2, Generator(0, r)) == x(r)
        and not frobenius_power(t2, Generator(1, r))))
    report.record("frobenius", witness is None, witness)

    witness = _first_failure(powers, lambda r, s: (
        filtration_degree(frobenius_power(t2, Generator(0, r))) <= p ** (r + 1) - 1
        and filtration_degree(canonical_commutator(x(r), y(s))) <= p ** r + p ** s - 1))
    report.record("filtration", witness is None, witness)

    indices = [(n,) for n in range(bound + 1)]
    witness = _first_failure(indices, lambda n: additive_to_mult(ga.delta((n,))) == ga_divided_power(p, level, n))
    report.record("ga-basis-change", witness is None, witness)
    witness = _first_failure(indices, lambda m: additive_to_mult(gm.delta((m,))) == gm_stirling_expansion(p, level, m))
    report.record("gm-basis-change", witness is None, witness)

    abelian = not canonical_commutator(x(0), y(0))
    report.record("lie-algebra", abelian == t2_lie_algebra_is_abelian(p), None,
                  "abelian" if abelian else "not abelian")
    report.facts['dimension'] = t2.dimension
    report.facts['mixed_cases'] = len(mixed)
    logger.info("T2 demo at p=%d, R=%d: %s", p, level, "pass" if report.passed else "fail")
    return report
