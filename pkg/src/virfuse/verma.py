"""Graded pieces of Verma modules M(c, h) and the singular-vector solver."""

from __future__ import annotations

import json
import logging
import math
import os
import tempfile
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .exact import Scalar, as_rational, nullspace, rational_str
from .vir_core import CENTRAL, Operator, bracket, partitions

log = logging.getLogger(__name__)

DEFAULT_LEVEL_CAP = 12

#: t values used by the generic-t verification suites.
GENERIC_T = tuple(Fraction(v) for v in ("-1", "1", "2", "-2", "1/2", "3"))

Coords = dict[tuple[int, ...], Fraction]


class DegenerateKernel(ArithmeticError):
    """The singular-vector system does not have a one-dimensional kernel."""


def central_charge(t: Scalar) -> Fraction:
    """c(t) = 13 - 6t - 6/t."""
    t = as_rational(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    return 13 - 6 * t - 6 / t


def kac_h(p: int, q: int, t: Scalar) -> Fraction:
    """h_{p,q}(t) = (p^2-1)t/4 - (pq-1)/2 + (q^2-1)/(4t)."""
    t = as_rational(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    return Fraction(p * p - 1, 4) * t - Fraction(p * q - 1, 2) + Fraction(q * q - 1, 4) / t


def kac_weight(p: int, q: int, t: Scalar) -> tuple[Fraction, Fraction]:
    """Central charge and lowest weight carrying a level ``p*q`` singular vector."""
    return central_charge(t), kac_h(p, q, t)


@dataclass(frozen=True)
class KacLabel:
    p: int
    q: int
    t: Fraction
    h: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "t", as_rational(self.t))
        object.__setattr__(self, "h", kac_h(self.p, self.q, self.t))

    @property
    def c(self) -> Fraction:
        return central_charge(self.t)

    @property
    def level(self) -> int:
        return self.p * self.q


def minimal_charge(p: int, q: int) -> Fraction:
    """c_{p,q} = 1 - 6(p-q)^2/(pq)."""
    if p < 2 or q < 2:
        raise ValueError("minimal_charge needs p, q >= 2")
    return 1 - Fraction(6 * (p - q) ** 2, p * q)


def vacuum_witness(c: Scalar, search_bound: int = 50) -> Optional[tuple[int, int]]:
    """Coprime ``(p, q)`` with ``c == c_{p,q}``, or None if there is none in range.

    Every c_{p,q} with coprime p, q >= 2 is strictly below 1, so c >= 1 is
    decided without searching.
    """
    if search_bound < 2:
        raise ValueError("search_bound must be at least 2")
    c = as_rational(c)
    if c >= 1:
        return None
    for p in range(2, search_bound + 1):
        for q in range(2, p):
            if math.gcd(p, q) == 1 and minimal_charge(p, q) == c:
                return p, q
    return None


def vacuum_simple(c: Scalar, search_bound: int = 50) -> bool:
    """Whether the vacuum Verma quotient M_c is already irreducible."""
    return vacuum_witness(c, search_bound) is None


@dataclass
class VermaVector:
    """A homogeneous vector of M(c, h) in the PBW basis."""

    level: int
    coords: Coords
    c: Fraction
    h: Fraction

    def __post_init__(self):
        self.coords = {tuple(k): as_rational(v) for k, v in self.coords.items() if v != 0}
        for parts in self.coords:
            if sum(parts) != self.level:
                raise ValueError(f"monomial {parts} is not at level {self.level}")

    @classmethod
    def from_operator(cls, op: Operator, c: Scalar, h: Scalar) -> "VermaVector":
        """``op`` applied to the lowest weight vector."""
        return cls(op.level, op.as_dict(), as_rational(c), as_rational(h))

    def is_zero(self) -> bool:
        return not self.coords

    def to_operator(self) -> Operator:
        return Operator(self.coords)


class VermaModule:
    """Action of the Virasoro modes on the PBW basis of M(c, h).

    Results of single-monomial computations are memoised per instance.
    """

    def __init__(self, c: Scalar, h: Scalar):
        self.c = as_rational(c)
        self.h = as_rational(h)
        self._memo: dict[tuple[int, tuple[int, ...]], Coords] = {}

    def basis(self, level: int) -> tuple[tuple[int, ...], ...]:
        return partitions(level)

    def act_monomial(self, n: int, parts: tuple[int, ...]) -> Coords:
        """L_n applied to L_{-parts} 1_{c,h}, as PBW coordinates."""
        key = (n, parts)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if n < 0:
            out = self._lower(-n, parts)
        elif n == 0:
            out = {parts: self.h + sum(parts)}
        elif not parts:
            out = {}
        else:
            # L_n L_{-j} R = L_{-j} (L_n R) + [L_n, L_{-j}] R
            j, rest = parts[0], parts[1:]
            out = {}
            for mono, coeff in self.act_monomial(n, rest).items():
                _accumulate(out, self._lower(j, mono), coeff)
            for key2, coeff in bracket(n, -j):
                if key2 == CENTRAL:
                    _accumulate(out, {rest: self.c}, coeff)
                else:
                    _accumulate(out, self.act_monomial(key2, rest), coeff)
        self._memo[key] = out
        return out

    def _lower(self, a: int, parts: tuple[int, ...]) -> Coords:
        """Normal-ordered product L_{-a} L_{-parts}."""
        if not parts or a >= parts[0]:
            return {(a,) + parts: Fraction(1)}
        key = (-a, parts)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        # L_{-a} L_{-j} R = L_{-j} (L_{-a} R) + (j - a) L_{-a-j} R
        j, rest = parts[0], parts[1:]
        out: Coords = {}
        for mono, coeff in self._lower(a, rest).items():
            _accumulate(out, self._lower(j, mono), coeff)
        _accumulate(out, self._lower(a + j, rest), Fraction(j - a))
        self._memo[key] = out
        return out

    def act(self, n: int, v: VermaVector) -> VermaVector:
        out: Coords = {}
        for parts, coeff in v.coords.items():
            _accumulate(out, self.act_monomial(n, parts), coeff)
        level = v.level - n
        if level < 0:
            return VermaVector(0, {}, self.c, self.h)
        return VermaVector(level, out, self.c, self.h)

    def matrix(self, n: int, level: int) -> list[list[Fraction]]:
        """Matrix of L_n from level ``level`` to ``level - n`` (rows: target basis)."""
        src = self.basis(level)
        dst = self.basis(level - n)
        index = {p: i for i, p in enumerate(dst)}
        mat = [[Fraction(0)] * len(src) for _ in dst]
        for col, parts in enumerate(src):
            for mono, coeff in self.act_monomial(n, parts).items():
                mat[index[mono]][col] += coeff
        return mat


def _accumulate(target: Coords, src: Coords, scale: Fraction) -> None:
    for mono, coeff in src.items():
        val = target.get(mono, Fraction(0)) + scale * coeff
        if val:
            target[mono] = val
        else:
            target.pop(mono, None)


def act_generator(n: int, v: VermaVector) -> VermaVector:
    """Exact action of L_n on ``v`` inside its Verma module."""
    return VermaModule(v.c, v.h).act(n, v)


# ---------------------------------------------------------------------------
# singular vectors


def cache_filename(p: int, q: int, t: Fraction) -> str:
    return f"sv_p{p}_q{q}_t{t.numerator}_{t.denominator}.json"


class SingularVectorCache:
    """Directory of solved singular vectors, one JSON file per (p, q, t).

    Writes go through a temporary file and an atomic rename; unreadable
    entries are treated as missing.
    """

    def __init__(self, directory: Union[str, os.PathLike]):
        self.directory = Path(directory)

    def path(self, p: int, q: int, t: Fraction) -> Path:
        return self.directory / cache_filename(p, q, t)

    def load(self, p: int, q: int, t: Fraction) -> Optional[Operator]:
        path = self.path(p, q, t)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        try:
            if (data["p"], data["q"], as_rational(data["t"])) != (p, q, t):
                return None
            return Operator.from_json(data["terms"])
        except (KeyError, TypeError, ValueError):
            log.warning("ignoring malformed cache entry %s", path)
            return None

    def store(self, p: int, q: int, t: Fraction, op: Operator) -> None:
        c, h = kac_weight(p, q, t)
        doc = {
            "p": p,
            "q": q,
            "t": rational_str(t),
            "c": rational_str(c),
            "h": rational_str(h),
            "terms": op.to_json(),
        }
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".sv-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh, indent=1)
            os.replace(tmp, self.path(p, q, t))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def solve_singular_vector(p: int, q: int, t: Scalar, level_cap: int = DEFAULT_LEVEL_CAP) -> Operator:
    """Solve for O_{p,q}(t) without touching the disk cache."""
    t = as_rational(t)
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if p * q > level_cap:
        raise ValueError(f"level {p * q} exceeds the level cap {level_cap}")
    return Operator(_solve(p, q, t).terms)


@lru_cache(maxsize=256)
def _solve(p: int, q: int, t: Fraction) -> Operator:
    level = p * q
    c, h = kac_weight(p, q, t)
    module = VermaModule(c, h)
    cols = module.basis(level)
    rows = module.matrix(1, level) + module.matrix(2, level)
    kernel = nullspace(rows, len(cols))
    if len(kernel) != 1:
        raise DegenerateKernel(f"(p, q, t) = ({p}, {q}, {rational_str(t)}): kernel dimension {len(kernel)}")
    vec = kernel[0]
    norm = vec[cols.index((1,) * level)]
    if norm == 0:
        raise DegenerateKernel(
            f"(p, q, t) = ({p}, {q}, {rational_str(t)}): L_{{-1}}^{level} coefficient vanishes"
        )
    return Operator({parts: v / norm for parts, v in zip(cols, vec) if v != 0})


def singular_vector(
    p: int,
    q: int,
    t: Scalar,
    level_cap: int = DEFAULT_LEVEL_CAP,
    cache: Optional[SingularVectorCache] = None,
) -> Operator:
    """O_{p,q}(t): the level ``p*q`` singular operator of M(c(t), h_{p,q}(t)).

    Normalised so that the coefficient of L_{-1}^{pq} is 1.  Raises
    :class:`DegenerateKernel` when the solution is not unique.
    """
    t = as_rational(t)
    if p * q > level_cap:
        raise ValueError(f"level {p * q} exceeds the level cap {level_cap}")
    if cache is not None:
        hit = cache.load(p, q, t)
        if hit is not None:
            return hit
    op = solve_singular_vector(p, q, t, level_cap)
    if cache is not None:
        cache.store(p, q, t, op)
    return op


def annihilated(op: Operator, c: Scalar, h: Scalar, upto: Optional[int] = None) -> bool:
    """Whether L_k kills ``op`` 1_{c,h} for every 1 <= k <= upto (default: its level)."""
    module = VermaModule(c, h)
    v = VermaVector.from_operator(op, c, h)
    upto = v.level if upto is None else upto
    return all(module.act(k, v).is_zero() for k in range(1, upto + 1))

