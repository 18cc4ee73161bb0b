"""Verification suites shared by the CLI and the test-suite."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .density import DensityParams, ff_squared, project_f
from .exact import Poly
from .fusion import correlation_matches_reduction, fusion_table, shifted_cg
from .verma import GENERIC_T, DegenerateKernel, SingularVectorCache, annihilated, kac_weight, singular_vector
from .vir_core import partitions
from .zhu import ReductionContext, fusion_generator, reduction_coincidence


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def record(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        line = f"{self.name}: {self.checks} checks, {len(self.failures)} failures"
        if self.skipped:
            line += f", {len(self.skipped)} skipped"
        return line

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "checks": self.checks,
            "failures": self.failures,
            "skipped": self.skipped,
        }


def random_rational(rng: random.Random, num: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_partition(rng: random.Random, max_level: int) -> tuple[int, ...]:
    level = rng.randint(0, max_level)
    return rng.choice(partitions(level))


def suite_singular(max_level: int = 8, cache: Optional[SingularVectorCache] = None, **_) -> SuiteResult:
    """Every solvable O_{p,q}(t) with pq <= max_level is killed by L_1, ..., L_pq."""
    res = SuiteResult("sv")
    for t in GENERIC_T:
        for p in range(1, max_level + 1):
            for q in range(1, max_level // p + 1):
                try:
                    op = singular_vector(p, q, t, level_cap=max(max_level, p * q), cache=cache)
                except DegenerateKernel as exc:
                    res.skipped.append(str(exc))
                    continue
                c, h = kac_weight(p, q, t)
                res.record(annihilated(op, c, h), f"O_{p},{q}({t}) not annihilated")
    return res


def suite_ff(max_level: int = 8, seed: int = 0, cache: Optional[SingularVectorCache] = None, **_) -> SuiteResult:
    """project_f(O_{p,q}(t))^2 equals the Feigin-Fuchs product, μ = x, random λ."""
    rng = random.Random(seed)
    res = SuiteResult("ff")
    for t in GENERIC_T:
        for p in range(1, max_level + 1):
            for q in range(1, max_level // p + 1):
                lam = random_rational(rng, 5, 3)
                try:
                    op = singular_vector(p, q, t, level_cap=max(max_level, p * q), cache=cache)
                except DegenerateKernel as exc:
                    res.skipped.append(str(exc))
                    continue
                params = DensityParams(lam, Poly.x())
                f = project_f(op, params)
                res.record(f * f == ff_squared(p, q, t, params), f"(p,q,t,λ)=({p},{q},{t},{lam})")
                res.record(f.degree == p * q, f"deg f_{p},{q}({t}) != {p * q}")
    return res


def opg_rhs(m: int, n: int) -> Poly:
    """prod over i in {n-m+2, ..., n+m-2} of (x - (1 - i^2/4))."""
    return Poly.from_roots(1 - Fraction(i * i, 4) for i in range(n - m + 2, n + m - 1, 2))


def suite_zhu(
    max_level: int = 8,
    max_label: int = 9,
    seed: int = 0,
    samples: int = 200,
    corr_samples: int = 100,
    cache: Optional[SingularVectorCache] = None,
    **_,
) -> SuiteResult:
    """Closed-form reduction vs density action, the c=25 factorisation, and the correlation coefficients."""
    rng = random.Random(seed)
    res = SuiteResult("zhu")
    for _ in range(samples):
        parts = random_partition(rng, max_level)
        ctx = ReductionContext(random_rational(rng), random_rational(rng))
        res.record(reduction_coincidence(parts, ctx), f"reduction {parts} at {ctx}")
    for m in range(3, max_label + 1):
        for n in range(3, max_label + 1):
            g = fusion_generator(m, n, -1, level_cap=max(12, m - 1), cache=cache)
            lam = Fraction(n * n, 4) - 1
            mu = Poly.linear(-1, 2 - Fraction(n * n + m * m, 4))
            ff = ff_squared(m - 1, 1, -1, DensityParams(lam, mu))
            res.record(g.gen * g.gen == ff, f"(m,n)=({m},{n}): gen^2 != FF product")
            res.record(g.gen == opg_rhs(m, n), f"(m,n)=({m},{n}): gen != factorised form")
            expected = Counter(abs(i) for i in range(n - m + 2, n + m - 1, 2))
            res.record(g.complete and Counter(g.labels) == expected, f"(m,n)=({m},{n}): labels {g.labels}")
    for _ in range(corr_samples):
        js = random_partition(rng, max_level) or (1,)
        m, n, r = (rng.randint(2, max_label) for _ in range(3))
        res.record(correlation_matches_reduction(js, m, n, r), f"correlation {js} {(m, n, r)}")
    return res


def suite_fusion(max_label: int = 9, cache: Optional[SingularVectorCache] = None, jobs: int = 1, **_) -> SuiteResult:
    """Tables at t = -1 and t = 1 against the shifted Clebsch-Gordan rule."""
    res = SuiteResult("fusion")
    for t in (-1, 1):
        table = fusion_table(max_label, t, cache=cache, jobs=jobs)
        for (m, n, r), dim in sorted(table.entries.items()):
            res.record(dim == shifted_cg(m, n, r), f"t={t} ({m},{n},{r}): {dim}")
            res.record(dim == table[(n, m, r)], f"t={t} ({m},{n},{r}): asymmetric")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "sv": suite_singular,
    "ff": suite_ff,
    "zhu": suite_zhu,
    "fusion": suite_fusion,
}


def run_suites(name: str, **kwargs) -> list[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    return [SUITES[n](**kwargs) for n in names]
