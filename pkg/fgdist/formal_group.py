"""
Formal group laws over F_p with an ordered, geometric block structure.

A law is given by one rank-2 series m(x_i) per coordinate, truncated at a
total-degree cap. Blocks partition the coordinates into commutative formal
subgroups; custom laws declare their blocks and ``validate`` verifies them.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from .base_arith import Prime, gradedlex_key
from .errors import InputError, LawParseError
from .models import BlockModel, ComulTermModel, LawModel
from .power_series import TruncatedSeries, VariableSet
from .report import Report

logger = logging.getLogger(__name__)


class BlockKind(str, Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"
    CUSTOM = "custom"


def default_cap(p: int, level: int) -> int:
    """Smallest cap at which every pairing coefficient of level R is exact."""
    return 2 * (p ** (level + 1) - 1)


@dataclass(frozen=True)
class BlockDescriptor:
    """A contiguous run of coordinates forming a commutative formal subgroup."""
    block_id: int
    kind: BlockKind
    coordinate_indices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'kind', BlockKind(self.kind))
        indices = tuple(self.coordinate_indices)
        if not indices:
            raise InputError("a block needs at least one coordinate")
        if indices != tuple(range(indices[0], indices[0] + len(indices))):
            raise InputError(f"block coordinates {indices} are not contiguous")
        object.__setattr__(self, 'coordinate_indices', indices)

    def __contains__(self, index: int) -> bool:
        return index in self.coordinate_indices


@dataclass(frozen=True)
class FormalGroupLaw:
    """
    Truncated formal group law with ordered coordinates x_1 << ... << x_n.

    ``comul[i]`` is m(x_i) over the rank-2 variable set of ``coords``.
    """
    p: Prime
    coords: Tuple[str, ...]
    comul: Tuple[TruncatedSeries, ...]
    cap: int
    blocks: Tuple[BlockDescriptor, ...]
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'p', Prime(self.p))
        object.__setattr__(self, 'coords', tuple(self.coords))
        object.__setattr__(self, 'comul', tuple(self.comul))
        object.__setattr__(self, 'blocks', tuple(self.blocks))
        if self.cap < 1:
            raise InputError(f"cap must be at least 1, got {self.cap}")
        if len(self.comul) != len(self.coords):
            raise InputError("one comultiplication series per coordinate is required")
        tensor_vars = VariableSet(self.coords, 2)
        for name, series in zip(self.coords, self.comul):
            if series.vars != tensor_vars or series.cap != self.cap or series.p != self.p:
                raise InputError(f"m({name}) does not live in the law's tensor square")
        covered = [i for block in self.blocks for i in block.coordinate_indices]
        if covered != list(range(len(self.coords))):
            raise InputError("blocks must partition the coordinates in order")
        if [block.block_id for block in self.blocks] != list(range(len(self.blocks))):
            raise InputError("block ids must be 0, 1, ... in block order")

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def variables(self) -> VariableSet:
        return VariableSet(self.coords, 1)

    @property
    def tensor_variables(self) -> VariableSet:
        return VariableSet(self.coords, 2)

    @cached_property
    def is_commutative(self) -> bool:
        """Whether m = τ∘m for every coordinate, up to the cap."""
        return all(m == m.swap_factors() for m in self.comul)

    @property
    def commutative_flag(self) -> bool:
        return self.is_commutative

    def block_of(self, index: int) -> BlockDescriptor:
        for block in self.blocks:
            if index in block:
                return block
        raise IndexError(f"no block contains coordinate {index}")

    def restrict(self, block: Union[BlockDescriptor, int]) -> "FormalGroupLaw":
        """The law of the block subgroup (all other coordinates set to 0)."""
        if isinstance(block, int):
            block = self.blocks[block]
        indices = block.coordinate_indices
        coords = tuple(self.coords[i] for i in indices)
        keep = list(indices) + [self.n + i for i in indices]
        target = VariableSet(coords, 2)
        comul = tuple(self.comul[i].restrict(keep, target) for i in indices)
        single = BlockDescriptor(0, block.kind, tuple(range(len(indices))))
        return FormalGroupLaw(self.p, coords, comul, self.cap, (single,),
                              name=f"{self.name}[{','.join(coords)}]")


def _series(coords: Sequence[str], p: int, cap: int, terms: Dict[Tuple[int, ...], int]) -> TruncatedSeries:
    return TruncatedSeries(VariableSet(tuple(coords), 2), cap, p, terms)


def builtin_additive(p: int, cap: int, coord: str = "y") -> FormalGroupLaw:
    """G_a: m(y) = y⊗1 + 1⊗y."""
    m = _series([coord], p, cap, {(1, 0): 1, (0, 1): 1})
    block = BlockDescriptor(0, BlockKind.ADDITIVE, (0,))
    return FormalGroupLaw(p, (coord,), (m,), cap, (block,), name="ga")


def builtin_multiplicative(p: int, cap: int, coord: str = "x") -> FormalGroupLaw:
    """G_m: m(x) = x⊗1 + 1⊗x + x⊗x."""
    m = _series([coord], p, cap, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
    block = BlockDescriptor(0, BlockKind.MULTIPLICATIVE, (0,))
    return FormalGroupLaw(p, (coord,), (m,), cap, (block,), name="gm")


def builtin_t2(p: int, cap: int) -> FormalGroupLaw:
    """
    Upper triangular 2x2 matrices of determinant one, in coordinates
    (1+x, y; 0, (1+x)^{-1}):

        m(x) = x⊗1 + 1⊗x + x⊗x
        m(y) = (1+x)⊗y + y⊗(1 - x + x^2 - ...)
    """
    coords = ("x", "y")
    m_x = _series(coords, p, cap, {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1, (1, 0, 1, 0): 1})
    y_terms = {(0, 0, 0, 1): 1, (1, 0, 0, 1): 1}
    for k in range(cap):
        y_terms[(0, 1, k, 0)] = (-1) ** k
    m_y = _series(coords, p, cap, y_terms)
    blocks = (BlockDescriptor(0, BlockKind.MULTIPLICATIVE, (0,)),
              BlockDescriptor(1, BlockKind.ADDITIVE, (1,)))
    return FormalGroupLaw(p, coords, (m_x, m_y), cap, blocks, name="t2")


BUILTINS = {
    "ga": builtin_additive,
    "gm": builtin_multiplicative,
    "t2": builtin_t2,
}


def product_law(laws: Sequence[FormalGroupLaw]) -> FormalGroupLaw:
    """
    Direct product: coordinates concatenated, comultiplications on disjoint
    variables, blocks concatenated. Colliding names get the factor index as
    suffix (``x_1``, ``x_2``).
    """
    laws = list(laws)
    if not laws:
        raise InputError("product_law needs at least one law")
    p, cap = laws[0].p, laws[0].cap
    for law in laws[1:]:
        if law.p != p or law.cap != cap:
            raise InputError("product_law needs laws with identical p and cap")

    all_names = [name for law in laws for name in law.coords]
    clashing = {name for name in all_names if all_names.count(name) > 1}
    coords: List[str] = []
    for position, law in enumerate(laws, start=1):
        coords.extend(f"{name}_{position}" if name in clashing else name for name in law.coords)
    if len(set(coords)) != len(coords):
        raise InputError(f"cannot make coordinate names unique: {coords}")

    total = len(coords)
    target = VariableSet(tuple(coords), 2)
    comul: List[TruncatedSeries] = []
    blocks: List[BlockDescriptor] = []
    offset = 0
    for law in laws:
        n = law.n
        positions = [offset + j for j in range(n)] + [total + offset + j for j in range(n)]
        comul.extend(m.relabel(target, positions) for m in law.comul)
        for block in law.blocks:
            blocks.append(BlockDescriptor(len(blocks), block.kind,
                                          tuple(offset + i for i in block.coordinate_indices)))
        offset += n
    name = "×".join(law.name for law in laws)
    return FormalGroupLaw(p, tuple(coords), tuple(comul), cap, tuple(blocks), name=name)


def builtin_law(spec: str, p: int, cap: int) -> FormalGroupLaw:
    """Built-in by name, or a comma-separated product such as ``ga,gm``."""
    names = [part.strip().lower() for part in spec.split(",") if part.strip()]
    if not names:
        raise InputError("empty built-in law name")
    unknown = [name for name in names if name not in BUILTINS]
    if unknown:
        raise InputError(f"unknown built-in law(s): {', '.join(unknown)} "
                         f"(choose from {', '.join(sorted(BUILTINS))})")
    laws = [BUILTINS[name](p, cap) for name in names]
    return laws[0] if len(laws) == 1 else product_law(laws)


# Validation

def _first_difference(left: TruncatedSeries, right: TruncatedSeries) -> Optional[str]:
    diff = left - right
    if not diff:
        return None
    exp, _ = diff.sorted_terms()[0]
    return diff.vars.format_exponent(exp)


def _block_keep(law: FormalGroupLaw, block: BlockDescriptor) -> List[int]:
    indices = block.coordinate_indices
    return list(indices) + [law.n + i for i in indices]


def _check_counit(law: FormalGroupLaw, report: Report) -> None:
    rank1 = law.variables
    xs = [TruncatedSeries.variable(rank1, k, law.cap, law.p) for k in range(law.n)]
    zeros = [TruncatedSeries.zero(rank1, law.cap, law.p) for _ in range(law.n)]
    for name, x, m in zip(law.coords, xs, law.comul):
        for images, side in ((xs + zeros, "right"), (zeros + xs, "left")):
            witness = _first_difference(m.substitute(images), x)
            if witness is not None:
                report.record("counit", False, f"m({name}) with {side} copy at 0: {witness}")
                return
    report.record("counit", True)


def _check_coassociativity(law: FormalGroupLaw, report: Report) -> None:
    n = law.n
    triple = VariableSet(law.coords, 3)
    first_two = [m.relabel(triple, list(range(2 * n))) for m in law.comul]
    last_two = [m.relabel(triple, list(range(n, 3 * n))) for m in law.comul]
    slot = [[TruncatedSeries.variable(triple, s * n + k, law.cap, law.p) for k in range(n)]
            for s in range(3)]
    for name, m in zip(law.coords, law.comul):
        left = m.substitute(first_two + slot[2])
        right = m.substitute(slot[0] + last_two)
        witness = _first_difference(left, right)
        if witness is not None:
            report.record("coassociativity", False, f"m({name}): {witness}")
            return
    report.record("coassociativity", True)


def _check_block_commutativity(law: FormalGroupLaw, report: Report) -> None:
    for block in law.blocks:
        sub = law.restrict(block)
        for name, m in zip(sub.coords, sub.comul):
            witness = _first_difference(m, m.swap_factors())
            if witness is not None:
                report.record("block-commutativity", False, f"m({name}): {witness}")
                return
    report.record("block-commutativity", True)


def _check_block_closure(law: FormalGroupLaw, report: Report) -> None:
    for block in law.blocks:
        keep = _block_keep(law, block)
        target = VariableSet(tuple(law.coords[i] for i in block.coordinate_indices), 2)
        for k, (name, m) in enumerate(zip(law.coords, law.comul)):
            if k in block:
                continue
            leak = m.restrict(keep, target)
            if leak:
                exp, _ = leak.sorted_terms()[0]
                report.record("block-closure", False,
                              f"m({name}) on block {block.block_id}: {target.format_exponent(exp)}")
                return
    report.record("block-closure", True)


def _check_block_kind(law: FormalGroupLaw, report: Report) -> None:
    expected_terms = {
        BlockKind.ADDITIVE: {(1, 0): 1, (0, 1): 1},
        BlockKind.MULTIPLICATIVE: {(1, 0): 1, (0, 1): 1, (1, 1): 1},
    }
    for block in law.blocks:
        if block.kind not in expected_terms:
            continue
        sub = law.restrict(block)
        for j, (name, m) in enumerate(zip(sub.coords, sub.comul)):
            n = sub.n
            terms = {}
            for (a, b), c in expected_terms[block.kind].items():
                exp = [0] * (2 * n)
                exp[j] += a
                exp[n + j] += b
                terms[tuple(exp)] = c
            expected = TruncatedSeries(m.vars, m.cap, m.p, terms)
            witness = _first_difference(m, expected)
            if witness is not None:
                report.record("block-kind", False,
                              f"m({name}) is not {block.kind.value}: {witness}")
                return
    report.record("block-kind", True)


def validate(law: FormalGroupLaw) -> Report:
    """Check the group-law axioms and the declared block structure up to the cap."""
    report = Report(f"law validation ({law.name}, p={int(law.p)}, cap={law.cap})")
    _check_counit(law, report)
    _check_coassociativity(law, report)
    _check_block_commutativity(law, report)
    _check_block_closure(law, report)
    _check_block_kind(law, report)
    report.facts['commutative'] = law.is_commutative
    logger.debug("validated %s: %s", law.name, "pass" if report.passed else "fail")
    return report


def inverse_series(law: FormalGroupLaw, cap: Optional[int] = None,
                   box: Optional[Tuple[int, ...]] = None) -> Tuple[TruncatedSeries, ...]:
    """
    The inverse i(x) with m(x, i(x)) = 0, solved degree by degree.

    The linear part of m makes each degree's correction unique. ``cap`` and
    ``box`` give the frame of the result (default: the law's cap, no box);
    terms outside the box never feed back into terms inside it.
    """
    cap = law.cap if cap is None else cap
    rank1 = law.variables
    xs = [TruncatedSeries.variable(rank1, k, cap, law.p, box) for k in range(law.n)]
    inverse = [-x for x in xs]
    for degree in range(2, cap + 1):
        args = [s.truncate(degree) for s in xs + inverse]
        errors = [m.reframe(cap=degree).substitute(args) for m in law.comul]
        inverse = [inv - err.homogeneous_part(degree).reframe(cap=cap, box=box)
                   for inv, err in zip(inverse, errors)]
    return tuple(inverse)


# Custom laws

def law_to_model(law: FormalGroupLaw) -> LawModel:
    n = law.n
    comul = {}
    for name, m in zip(law.coords, law.comul):
        comul[name] = [ComulTermModel(left=list(exp[:n]), right=list(exp[n:]), coeff=c)
                       for exp, c in m.sorted_terms()]
    blocks = [BlockModel(kind=block.kind.value,
                         coords=[law.coords[i] for i in block.coordinate_indices])
              for block in law.blocks]
    return LawModel(p=int(law.p), cap=law.cap, coords=list(law.coords), blocks=blocks, comul=comul)


def law_from_model(model: LawModel, name: str = "custom") -> FormalGroupLaw:
    """Build a law from a parsed description without validating the axioms."""
    coords = tuple(model.coords)
    comul = []
    for coord in coords:
        terms: Dict[Tuple[int, ...], int] = {}
        for term in model.comul[coord]:
            exp = tuple(term.left) + tuple(term.right)
            terms[exp] = terms.get(exp, 0) + term.coeff
        comul.append(_series(coords, model.p, model.cap, terms))
    blocks = []
    position = 0
    for block_id, block in enumerate(model.blocks):
        size = len(block.coords)
        blocks.append(BlockDescriptor(block_id, block.kind, tuple(range(position, position + size))))
        position += size
    return FormalGroupLaw(model.p, coords, tuple(comul), model.cap, tuple(blocks), name=name)


def dump_law(law: FormalGroupLaw) -> Dict[str, Any]:
    """Canonical JSON-ready description of a law."""
    return law_to_model(law).model_dump()


def parse_law_model(description: Union[LawModel, Dict[str, Any], str, Path]) -> LawModel:
    """Parse a law description given as a model, dict, JSON text or file path."""
    if isinstance(description, LawModel):
        return description
    try:
        if isinstance(description, Path) or (
                isinstance(description, str) and not description.lstrip().startswith("{")):
            text = Path(description).read_text(encoding='utf-8')
            return LawModel.model_validate_json(text)
        if isinstance(description, str):
            return LawModel.model_validate_json(description)
        return LawModel.model_validate(description)
    except ValidationError as exc:
        raise LawParseError(f"invalid law description: {exc}") from exc
    except OSError as exc:
        raise LawParseError(f"cannot read law description: {exc}") from exc


def load_custom(description: Union[LawModel, Dict[str, Any], str, Path],
                name: str = "custom") -> FormalGroupLaw:
    """Parse and validate a custom law; any failed axiom raises ``AxiomViolation``."""
    law = law_from_model(parse_law_model(description), name=name)
    validate(law).require()
    return law
