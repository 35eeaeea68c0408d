"""
Text syntax for distributions, multiplicative monomials and words.

    d[x^2 y]            additive basis element δ_{x^2 y}; ``1`` is the unit
    m[x:0,1;y:1,0]      multiplicative monomial, digits per coordinate
    x x^2 y             word in the generators δ_{x}, δ_{x^2}, δ_{y}

Combinations join terms with `` + ``; coefficient 1 is omitted and the zero
combination is ``0``.
"""

import re
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import OperandError

TENSOR = "⊗"

_ADDITIVE = re.compile(r'^d\[(.*)\]$')
_MULT = re.compile(r'^m\[(.*)\]$')
_FACTOR = re.compile(r'^([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?$')
_TERM = re.compile(r'^(?:(\d+)\s*\*?\s*)?(\S.*)$')


def format_monomial(names: Sequence[str], exponents: Sequence[int]) -> str:
    """``x^2 y`` style monomial; empty string for the constant monomial."""
    tokens = []
    for name, e in zip(names, exponents):
        if e == 1:
            tokens.append(name)
        elif e > 1:
            tokens.append(f"{name}^{e}")
    return " ".join(tokens)


def parse_monomial(text: str, names: Sequence[str]) -> Tuple[int, ...]:
    """Exponent vector of a ``x^2 y`` monomial over ``names``."""
    exponents = [0] * len(names)
    for token in text.split():
        match = _FACTOR.match(token)
        if not match:
            raise OperandError(f"cannot parse monomial factor '{token}'")
        name, power = match.group(1), match.group(2)
        if name not in names:
            raise OperandError(f"unknown coordinate '{name}' (coordinates: {', '.join(names)})")
        exponents[names.index(name)] += int(power) if power else 1
    return tuple(exponents)


def format_additive(names: Sequence[str], J: Sequence[int]) -> str:
    if not any(J):
        return "1"
    return f"d[{format_monomial(names, J)}]"


def parse_additive(text: str, names: Sequence[str]) -> Tuple[int, ...]:
    text = text.strip()
    if text == "1":
        return (0,) * len(names)
    match = _ADDITIVE.match(text)
    if not match:
        raise OperandError(f"expected d[...] or 1, got '{text}'")
    return parse_monomial(match.group(1), names)


def format_mult(names: Sequence[str], digits: Sequence[Sequence[int]]) -> str:
    groups = [f"{name}:{','.join(str(d) for d in row)}"
              for name, row in zip(names, digits) if any(row)]
    if not groups:
        return "1"
    return f"m[{';'.join(groups)}]"


def parse_mult(text: str, names: Sequence[str], level: int) -> Tuple[Tuple[int, ...], ...]:
    """Digit matrix of ``m[x:d0,d1;y:e0]``; missing digits are 0."""
    text = text.strip()
    digits = [[0] * (level + 1) for _ in names]
    if text == "1":
        return tuple(tuple(row) for row in digits)
    match = _MULT.match(text)
    if not match:
        raise OperandError(f"expected m[...] or 1, got '{text}'")
    body = match.group(1).strip()
    for group in filter(None, (part.strip() for part in body.split(";"))):
        if ":" not in group:
            raise OperandError(f"digit group '{group}' needs the form name:d0,d1,...")
        name, raw = (part.strip() for part in group.split(":", 1))
        if name not in names:
            raise OperandError(f"unknown coordinate '{name}'")
        try:
            values = [int(d) for d in raw.split(",") if d.strip()]
        except ValueError as exc:
            raise OperandError(f"bad digits in '{group}'") from exc
        if len(values) > level + 1:
            raise OperandError(f"'{group}' has more than {level + 1} digits")
        digits[names.index(name)][:len(values)] = values
    return tuple(tuple(row) for row in digits)


def generator_label(name: str, p: int, power: int) -> str:
    """Label of δ_{x^{p^t}} as a word letter: ``x``, ``x^2``, ``x^9``..."""
    exponent = p ** power
    return name if exponent == 1 else f"{name}^{exponent}"


def parse_generator(token: str, names: Sequence[str], p: int) -> Tuple[int, int]:
    """(coordinate index, power t) of a generator token ``x^{p^t}`` or ``d[x^{p^t}]``."""
    token = token.strip()
    match = _ADDITIVE.match(token)
    if match:
        token = match.group(1).strip()
    factor = _FACTOR.match(token)
    if not factor:
        raise OperandError(f"cannot parse generator '{token}'")
    name, power = factor.group(1), int(factor.group(2) or 1)
    if name not in names:
        raise OperandError(f"unknown coordinate '{name}'")
    t = 0
    while p ** t < power:
        t += 1
    if p ** t != power:
        raise OperandError(f"generator exponent {power} is not a power of {p}")
    return names.index(name), t


def parse_word(text: str, names: Sequence[str], p: int) -> List[Tuple[int, int]]:
    text = text.strip()
    if text in ("", "1"):
        return []
    return [parse_generator(token, names, p) for token in text.split()]


def format_combination(items: Iterable[Tuple[str, int]]) -> str:
    """Join ``(monomial text, residue)`` pairs; the caller fixes the order."""
    parts = []
    for text, coeff in items:
        if not coeff:
            continue
        if coeff == 1:
            parts.append(text)
        elif text == "1":
            parts.append(str(coeff))
        else:
            parts.append(f"{coeff} {text}")
    return " + ".join(parts) if parts else "0"


def split_combination(text: str) -> List[Tuple[int, str]]:
    """Inverse of ``format_combination``: ``[(coefficient, monomial text)]``."""
    text = text.strip()
    if text in ("", "0"):
        return []
    terms = []
    for chunk in text.split(" + "):
        chunk = chunk.strip()
        if chunk.isdigit():
            terms.append((int(chunk), "1"))
            continue
        match = _TERM.match(chunk)
        if not match:
            raise OperandError(f"cannot parse term '{chunk}'")
        coeff = int(match.group(1)) if match.group(1) else 1
        terms.append((coeff, match.group(2).strip()))
    return terms


def format_tensor(left: str, right: str) -> str:
    return f"{left}{TENSOR}{right}"


def collect(pairs: Iterable[Tuple[Tuple, int]], p: int) -> Dict[Tuple, int]:
    """Sum coefficients per key mod p, dropping zeros."""
    out: Dict[Tuple, int] = {}
    for key, coeff in pairs:
        out[key] = (out.get(key, 0) + coeff) % p
    return {key: c for key, c in out.items() if c}
