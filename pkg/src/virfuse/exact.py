"""Exact rationals and univariate polynomials over them.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.  :class:`Poly` is a small immutable
dense polynomial in one formal variable ``x``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are rejected.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def rational_str(value: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """Polynomial in ``x`` with Fraction coefficients, ascending degree.

    The coefficient tuple never ends in a zero; the zero polynomial is the
    empty tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def linear(cls, a: Scalar, b: Scalar) -> "Poly":
        """The polynomial ``a*x + b``."""
        return cls((b, a))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Poly":
        out = cls.const(1)
        for r in roots:
            out = out * cls((-as_rational(r), 1))
        return out

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        return cls.const(value)

    # basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out, base = Poly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, s: Scalar) -> "Poly":
        s = as_rational(s)
        return Poly(c * s for c in self.coeffs)

    def __call__(self, value: Scalar) -> Fraction:
        return self.eval(value)

    def eval(self, value: Scalar) -> Fraction:
        value = as_rational(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose_linear(self, a: Scalar, b: Scalar) -> "Poly":
        """Substitute ``x -> a*x + b``."""
        sub = Poly.linear(a, b)
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * sub + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def divmod_linear(self, root: Scalar) -> tuple["Poly", Fraction]:
        """Synthetic division by ``x - root``: returns (quotient, remainder)."""
        root = as_rational(root)
        if not self.coeffs:
            return Poly(), Fraction(0)
        quot = []
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * root + c
            quot.append(acc)
        remainder = quot.pop()
        return Poly(reversed(quot)), remainder

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroDivisionError("the zero polynomial has no monic form")
        return self.scale(1 / self.leading)

    # display / serialization --------------------------------------------

    def to_json(self) -> list[str]:
        return [rational_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(as_rational(s) for s in data)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = rational_str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{rational_str(mag)}*{var}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def rational_roots(p: Poly, candidates: Iterable[Scalar]) -> tuple[dict[Fraction, int], bool]:
    """Multiplicity of each candidate as a root of ``p``.

    Returns ``(mults, splits)`` where ``mults[rho]`` is the largest ``k``
    with ``(x - rho)**k`` dividing ``p`` and ``splits`` says whether the
    candidate roots account for the whole degree of ``p``.
    """
    if p.is_zero():
        raise ValueError("rational_roots is undefined for the zero polynomial")
    mults: dict[Fraction, int] = {}
    rest = p
    for rho in candidates:
        rho = as_rational(rho)
        if rho in mults:
            continue
        k = 0
        while rest.degree > 0:
            quot, rem = rest.divmod_linear(rho)
            if rem != 0:
                break
            rest = quot
            k += 1
        mults[rho] = k
    return mults, rest.degree == 0




def _integer_row(row: Sequence[Scalar]) -> dict[int, int]:
    """Nonzero entries of a rational row scaled to coprime integers."""
    entries = {j: as_rational(v) for j, v in enumerate(row) if v != 0}
    if not entries:
        return {}
    denom = math.lcm(*(v.denominator for v in entries.values()))
    ints = {j: int(v * denom) for j, v in entries.items()}
    g = math.gcd(*ints.values())
    return {j: v // g for j, v in ints.items()}


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Fraction]]:
    """Kernel basis of a rational matrix by fraction-free Gauss-Jordan elimination.

    Rows are scaled to integers and kept primitive (content 1) after every
    update.  Pivots are taken left to right, each from the first remaining
    row with a nonzero entry in that column, so the output depends only on
    the input.  One basis vector per free column, with a 1 in that column.
    """
    for row in rows:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    pending = [r for r in (_integer_row(row) for row in rows) if r]
    reduced: list[tuple[int, dict[int, int]]] = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(pending) if col in r), None)
        if idx is None:
            continue
        piv = pending.pop(idx)
        a = piv[col]
        updated = []
        for row in pending:
            b = row.get(col)
            if b is None:
                updated.append(row)
                continue
            new = _eliminate(row, piv, b, a)
            if new:
                updated.append(new)
        pending = updated
        reduced = [(pc, _eliminate(r, piv, r[col], a) if col in r else r) for pc, r in reduced]
        reduced.append((col, piv))
        if not pending:
            break
    pivot_cols = {pc for pc, _ in reduced}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for pc, r in reduced:
            if free in r:
                vec[pc] = Fraction(-r[free], r[pc])
        basis.append(vec)
    return basis


def _eliminate(row: dict[int, int], piv: dict[int, int], b: int, a: int) -> dict[int, int]:
    """a*row - b*piv, divided by its content; clears the pivot column."""
    out = {j: a * v for j, v in row.items()}
    for j, v in piv.items():
        val = out.get(j, 0) - b * v
        if val:
            out[j] = val
        else:
            out.pop(j, None)
    if not out:
        return out
    g = math.gcd(*out.values())
    if g != 1:
        out = {j: v // g for j, v in out.items()}
    return out
