"""Zhu-algebra reductions for Virasoro modules.

In ``A(M(c, h_left)) ⊗_{C[y]} L(c, h_right)(0)`` every vector is a
polynomial in ``x`` times the image of the lowest weight vector; ``y`` has
already been replaced by ``h_right``.  The image of a PBW monomial has the
closed form

    [L(-j1)...L(-jk) v] = prod_r (j_r h_right - x + j_{r+1} + ... + j_k + h_left)

and agrees with the density projection for λ = -h_right,
μ = h_left + h_right - x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .density import monomial_on_vacuum, params_for_weights, project_f
from .exact import Poly, Scalar, as_rational, rational_roots, rational_str
from .verma import DEFAULT_LEVEL_CAP, SingularVectorCache, kac_h, singular_vector


@dataclass(frozen=True)
class ReductionContext:
    h_left: Fraction
    h_right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "h_left", as_rational(self.h_left))
        object.__setattr__(self, "h_right", as_rational(self.h_right))


def monomial_reduction(parts: Iterable[int], ctx: ReductionContext) -> Poly:
    """Image of ``L(-j1)...L(-jk) v_{h_left} ⊗ 1`` as a polynomial in ``x``."""
    parts = tuple(getattr(parts, "parts", parts))
    out = Poly.const(1)
    for r, j in enumerate(parts):
        beta = sum(parts[r + 1:]) + ctx.h_left
        out = out * Poly.linear(-1, j * ctx.h_right + beta)
    return out


def reduction_coincidence(parts: Iterable[int], ctx: ReductionContext) -> bool:
    """Whether the closed form matches the density coefficient P(j1, ..., jk)."""
    parts = tuple(getattr(parts, "parts", parts))
    params = params_for_weights(ctx.h_left, ctx.h_right)
    return monomial_reduction(parts, ctx) == monomial_on_vacuum(parts, params)


def wang_rewrite(n: int) -> dict[int, int]:
    """Right side of ``[L(-n) v] = [((n-1)L(-2) - L(-1) + L(0)) v]`` in A(L(c, 0)).

    Returned as ``{mode: coefficient}``; for ``n = 1`` the identity
    ``[L(-1) v] = [L(0) v]`` applies instead.
    """
    if n < 1:
        raise ValueError("wang_rewrite needs n >= 1")
    if n == 1:
        return {0: 1}
    return {-2: n - 1, -1: -1, 0: 1}


def label_weight(i: int, t: Scalar = -1) -> Fraction:
    """Lowest weight h_{i-1,1}(t) of the module with label ``i``.

    At t = -1 this is 1 - i^2/4; at t = 1 it is (i-2)^2/4.
    """
    return kac_h(i - 1, 1, t)


@dataclass
class IdealGenerator:
    """Monic generator of the fusion ideal and its roots read as labels."""

    m: int
    n: int
    t: Fraction
    gen: Poly
    labels: dict[int, int] = field(default_factory=dict)
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "t": rational_str(self.t),
            "gen": self.gen.to_json(),
            "labels": {str(i): k for i, k in sorted(self.labels.items())},
            "complete": self.complete,
        }

    def label_multiset(self) -> list[int]:
        return sorted(i for i, k in self.labels.items() for _ in range(k))


def label_candidates(bound: int, t: Scalar = -1) -> dict[Fraction, int]:
    """Weight -> label over 0 <= i <= bound; the largest label wins a tie."""
    out: dict[Fraction, int] = {}
    for i in range(bound + 1):
        out[label_weight(i, t)] = i
    return out


def extract_labels(gen: Poly, bound: int, t: Scalar = -1) -> tuple[dict[int, int], bool]:
    candidates = label_candidates(bound, t)
    mults, splits = rational_roots(gen, candidates)
    labels = {candidates[rho]: k for rho, k in mults.items() if k}
    return labels, splits


def fusion_generator(
    m: int,
    n: int,
    t: Scalar = -1,
    *,
    level_cap: int = DEFAULT_LEVEL_CAP,
    cache: Optional[SingularVectorCache] = None,
) -> IdealGenerator:
    """Generator of the ideal cutting ``A(L_m) ⊗ L_n(0)`` out of C[x].

    The singular operator O_{m-1,1}(t) is projected onto the density module
    with λ = -h_n, μ = h_m + h_n - x and made monic; its degree is m - 1.
    """
    t = as_rational(t)
    if m < 2 or n < 2:
        raise ValueError("fusion_generator needs labels m, n >= 2")
    h_m, h_n = label_weight(m, t), label_weight(n, t)
    op = singular_vector(m - 1, 1, t, level_cap=level_cap, cache=cache)
    f = project_f(op, params_for_weights(h_m, h_n))
    gen = f.monic()
    labels, complete = extract_labels(gen, m + n, t)
    return IdealGenerator(m, n, t, gen, labels, complete)


def hom_dim(g: IdealGenerator, rho: Scalar) -> int:
    """dim Hom(C[x]/(gen), C_rho): 1 if ``rho`` is a root of the generator, else 0."""
    return 1 if g.gen.eval(rho) == 0 else 0
