"""Virasoro structure constants, PBW monomials and formal operators.

Only lowering monomials ``L_{-j1} ... L_{-jk}`` with ``j1 >= ... >= jk >= 1``
are ever stored; mixed words are normal ordered by the module backends.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .exact import Scalar, as_rational, rational_str

#: Marker for the central element in bracket expansions.
CENTRAL = "C"

BracketTerm = tuple[Union[int, str], Fraction]


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """``L_{-parts[0]} L_{-parts[1]} ...`` with non-increasing positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(j) for j in self.parts)
        if any(j < 1 for j in parts):
            raise ValueError(f"PBW parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"PBW parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def sorted(cls, parts: Iterable[int]) -> "PBWMonomial":
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def level(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "1"
        return "".join(f"L_{{-{j}}}" for j in self.parts)


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """Partitions of ``n`` as non-increasing tuples, reverse lexicographic.

    The first entry is ``(n,)`` and the last is ``(1,) * n``.
    """
    if n < 0:
        return ()
    if n == 0:
        return ((),)

    def gen(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(n, n))


def bracket(m: int, n: int) -> list[BracketTerm]:
    """Expansion of ``[L_m, L_n] = (m - n) L_{m+n} + (m^3 - m)/12 δ_{m+n,0} C``.

    Returns a list of ``(key, coefficient)`` where ``key`` is the integer
    mode of an ``L`` generator or :data:`CENTRAL`.  Zero terms are omitted.
    """
    out: list[BracketTerm] = []
    if m != n:
        out.append((m + n, Fraction(m - n)))
    if m + n == 0:
        central = Fraction(m ** 3 - m, 12)
        if central:
            out.append((CENTRAL, central))
    return out


class Operator:
    """Finite combination of PBW monomials with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping, Iterable, None] = None):
        clean: dict[PBWMonomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for mono, coeff in items:
            if not isinstance(mono, PBWMonomial):
                mono = PBWMonomial(tuple(mono))
            coeff = as_rational(coeff)
            total = clean.get(mono, Fraction(0)) + coeff
            if total:
                clean[mono] = total
            else:
                clean.pop(mono, None)
        self.terms = clean

    @classmethod
    def monomial(cls, *parts: int, coeff: Scalar = 1) -> "Operator":
        return cls({PBWMonomial(tuple(parts)): coeff})

    def levels(self) -> set[int]:
        return {m.level for m in self.terms}

    @property
    def level(self) -> int:
        """The common level of a homogeneous operator."""
        levels = self.levels()
        if len(levels) != 1:
            raise ValueError(f"operator is not homogeneous (levels {sorted(levels)})")
        return levels.pop()

    def is_homogeneous(self) -> bool:
        return len(self.levels()) <= 1

    def coefficient(self, parts: Iterable[int]) -> Fraction:
        return self.terms.get(PBWMonomial(tuple(parts)), Fraction(0))

    def scale(self, s: Scalar) -> "Operator":
        s = as_rational(s)
        return Operator({m: c * s for m, c in self.terms.items()})

    def __add__(self, other: "Operator") -> "Operator":
        return operator_combine(self, other, 1)

    def __sub__(self, other: "Operator") -> "Operator":
        return operator_combine(self, other, -1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        """Terms ordered by level, then reverse lexicographic partition."""
        return sorted(self.terms.items(), key=lambda mc: (mc[0].level, tuple(-j for j in mc[0].parts)))

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return {m.parts: c for m, c in self.terms.items()}

    def to_json(self) -> list[dict]:
        return [{"partition": m.to_json(), "coeff": rational_str(c)} for m, c in self.items()]

    @classmethod
    def from_json(cls, records: Iterable[Mapping]) -> "Operator":
        return cls((PBWMonomial(tuple(r["partition"])), as_rational(r["coeff"])) for r in records)

    def __repr__(self) -> str:
        if not self.terms:
            return "Operator(0)"
        body = " + ".join(f"{rational_str(c)}*{m}" for m, c in self.items())
        return f"Operator({body})"


def operator_combine(a: Operator, b: Operator, scalar: Scalar = 1) -> Operator:
    """``a + scalar * b`` with zero coefficients pruned."""
    scalar = as_rational(scalar)
    terms = dict(a.terms)
    for mono, coeff in b.terms.items():
        terms[mono] = terms.get(mono, Fraction(0)) + scalar * coeff
    return Operator(terms)
