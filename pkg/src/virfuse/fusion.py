"""Fusion-rule tables for the family L(c(t), h_{m-1,1}(t)), m >= 2.

At t = -1 this is L(25, 1 - m^2/4); at t = 1 it is L(1, (m-2)^2/4).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .exact import Scalar, as_rational, rational_str
from .verma import DEFAULT_LEVEL_CAP, SingularVectorCache
from .zhu import IdealGenerator, ReductionContext, fusion_generator, hom_dim, label_weight, monomial_reduction

VACUUM_RULE = "vacuum-rule"
BOUND_THEOREM = "bound+theorem"


def clebsch_gordan(a: int, b: int) -> set[int]:
    """{|a-b|, |a-b|+2, ..., a+b}."""
    if a < 0 or b < 0:
        raise ValueError("sl(2) labels are non-negative")
    return set(range(abs(a - b), a + b + 1, 2))


def shifted_cg(m: int, n: int, r: int) -> int:
    """Expected dimension for labels m, n, r >= 2."""
    return 1 if r - 2 in clebsch_gordan(m - 2, n - 2) else 0


class GeneratorPool:
    """Memoises fusion generators for one value of t."""

    def __init__(self, t: Scalar, level_cap: int = DEFAULT_LEVEL_CAP, cache: Optional[SingularVectorCache] = None):
        self.t = as_rational(t)
        self.level_cap = level_cap
        self.cache = cache
        self._gens: dict[tuple[int, int], IdealGenerator] = {}

    def get(self, m: int, n: int) -> IdealGenerator:
        key = (m, n)
        if key not in self._gens:
            self._gens[key] = self._solve(m, n)
        return self._gens[key]

    def prefill(self, pairs: Iterable[tuple[int, int]], jobs: int = 1) -> None:
        """Compute generators for ``pairs``, up to ``jobs`` at a time."""
        pending = [mn for mn in pairs if mn not in self._gens]
        if jobs > 1 and len(pending) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as ex:
                solved = list(ex.map(lambda mn: self._solve(*mn), pending))
        else:
            solved = [self._solve(*mn) for mn in pending]
        self._gens.update(zip(pending, solved))

    def _solve(self, m: int, n: int) -> IdealGenerator:
        return fusion_generator(m, n, self.t, level_cap=self.level_cap, cache=self.cache)


def fusion_bound(m: int, n: int, r: int, t: Scalar = -1, pool: Optional[GeneratorPool] = None) -> int:
    """Upper bound on dim I(r; m, n) from the Zhu-algebra quotient, taken in both argument orders."""
    if min(m, n, r) < 2:
        raise ValueError("labels must be at least 2")
    if m == 2:
        return 1 if r == n else 0
    if n == 2:
        return 1 if r == m else 0
    pool = pool or GeneratorPool(t)
    rho = label_weight(r, pool.t)
    return min(hom_dim(pool.get(m, n), rho), hom_dim(pool.get(n, m), rho))


@dataclass
class FusionTable:
    max_label: int
    t: Fraction
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)
    provenance: dict[tuple[int, int, int], str] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int, int]) -> int:
        return self.entries[key]

    def labels(self) -> range:
        return range(2, self.max_label + 1)

    def mismatches(self, rule=shifted_cg) -> list[tuple[int, int, int]]:
        return [key for key, dim in sorted(self.entries.items()) if dim != rule(*key)]

    def to_json(self) -> dict:
        rows = [
            {"m": m, "n": n, "r": r, "dim": dim, "why": self.provenance[(m, n, r)]}
            for (m, n, r), dim in sorted(self.entries.items())
        ]
        return {"t": rational_str(self.t), "max_label": self.max_label, "entries": rows}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def to_text(self) -> str:
        """One row per (m, n), one column per r."""
        rs = list(self.labels())
        width = max(2, len(str(self.max_label)))
        header = f"{'m':>{width}} {'n':>{width}} | " + " ".join(f"r={r:<{width}}" for r in rs)
        header = header.rstrip()
        lines = [f"t = {rational_str(self.t)}", header, "-" * len(header)]
        for m in rs:
            for n in rs:
                cells = " ".join(f"{self.entries[(m, n, r)]:<{width + 2}}" for r in rs)
                lines.append(f"{m:>{width}} {n:>{width}} | {cells}".rstrip())
        return "\n".join(lines)


def _pair_entries(m: int, n: int, max_label: int, pool: GeneratorPool) -> dict[tuple[int, int, int], tuple[int, str]]:
    why = VACUUM_RULE if 2 in (m, n) else BOUND_THEOREM
    return {(m, n, r): (fusion_bound(m, n, r, pool=pool), why) for r in range(2, max_label + 1)}


def fusion_table(
    max_label: int,
    t: Scalar = -1,
    *,
    level_cap: int = DEFAULT_LEVEL_CAP,
    cache: Optional[SingularVectorCache] = None,
    jobs: int = 1,
) -> FusionTable:
    """All entries with 2 <= m, n, r <= max_label.

    Entries with m or n equal to 2 come from the vacuum rule; the others are
    the two-sided Zhu bound, which the existence argument shows is attained.
    """
    if max_label < 2:
        raise ValueError("max_label must be at least 2")
    t = as_rational(t)
    if max_label - 1 > level_cap:
        raise ValueError(f"max_label {max_label} needs singular vectors above the level cap {level_cap}")
    pool = GeneratorPool(t, level_cap, cache)
    labels = range(2, max_label + 1)
    pool.prefill([(m, n) for m in labels for n in labels if m > 2 and n > 2], jobs)
    parts = [_pair_entries(m, n, max_label, pool) for m in labels for n in labels]
    table = FusionTable(max_label, t)
    for part in parts:
        for key, (dim, why) in part.items():
            table.entries[key] = dim
            table.provenance[key] = why
    return table


def correlation_coefficients(js: Iterable[int], m: int, n: int, r: int) -> Fraction:
    """Coefficient of the leading power in <1_r, Y(1_m, x) L(-j1)...L(-jk) 1_n> (normalised to C = 1).

    prod_i ( j_i (1 - m^2/4) + r^2/4 + sum_{s>i} j_s - n^2/4 )
    """
    js = tuple(js)
    if not js:
        raise ValueError("js must be nonempty")
    h_m = 1 - Fraction(m * m, 4)
    out = Fraction(1)
    for i, j in enumerate(js):
        out *= j * h_m + Fraction(r * r, 4) + sum(js[i + 1:]) - Fraction(n * n, 4)
    return out


def correlation_matches_reduction(js: Iterable[int], m: int, n: int, r: int) -> bool:
    """Check the coefficient against the Zhu closed form with the weights exchanged, at x = 1 - r^2/4."""
    js = tuple(js)
    ctx = ReductionContext(h_left=1 - Fraction(n * n, 4), h_right=1 - Fraction(m * m, 4))
    return correlation_coefficients(js, m, n, r) == monomial_reduction(js, ctx).eval(1 - Fraction(r * r, 4))
