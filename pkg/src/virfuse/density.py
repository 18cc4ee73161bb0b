"""Density modules D_{λ,μ} with polynomial parameters.

The basis is ``w_r`` (r an integer) and ``L_n w_r = (μ + r + λ(n+1)) w_{r-n}``.
λ and μ are :class:`Poly` values in the formal variable ``x``; in practice λ
is constant and μ is linear in ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import Poly, Scalar, as_rational
from .vir_core import Operator

DensityState = dict[int, Poly]


@dataclass(frozen=True)
class DensityParams:
    lam: Poly
    mu: Poly

    def __init__(self, lam, mu):
        object.__setattr__(self, "lam", Poly.coerce(_maybe_rational(lam)))
        object.__setattr__(self, "mu", Poly.coerce(_maybe_rational(mu)))

    def weight(self, n: int, r: int) -> Poly:
        """Coefficient of w_{r-n} in L_n w_r."""
        return self.mu + r + self.lam.scale(n + 1)


def _maybe_rational(value):
    return value if isinstance(value, Poly) else as_rational(value)


def density_act(n: int, state: Mapping[int, Poly], params: DensityParams) -> DensityState:
    out: DensityState = {}
    for r, coeff in state.items():
        term = coeff * params.weight(n, r)
        total = out.get(r - n, Poly()) + term
        if total.is_zero():
            out.pop(r - n, None)
        else:
            out[r - n] = total
    return out


def monomial_on_vacuum(parts: Iterable[int], params: DensityParams) -> Poly:
    """P(j1, ..., jk): the coefficient of w_{j1+...+jk} in L_{-j1}...L_{-jk} w_0.

    Works for any sequence of positive modes, ordered or not.
    """
    parts = tuple(parts)
    coeff = Poly.const(1)
    r = 0
    for j in reversed(parts):
        coeff = coeff * params.weight(-j, r)
        r += j
    return coeff


def project_f(op: Operator, params: DensityParams) -> Poly:
    """The polynomial f with ``op w_0 = f w_N`` in D_{λ,μ}, N the level of ``op``."""
    if not op.is_homogeneous():
        raise ValueError("project_f needs a homogeneous operator")
    total = Poly()
    for mono, coeff in op.terms.items():
        total = total + monomial_on_vacuum(mono.parts, params).scale(coeff)
    return total


def project_f_by_action(op: Operator, params: DensityParams) -> Poly:
    """Same as :func:`project_f`, stepping whole states through :func:`density_act`."""
    if not op.is_homogeneous():
        raise ValueError("project_f needs a homogeneous operator")
    level = op.level if op else 0
    total: DensityState = {}
    for mono, coeff in op.terms.items():
        state: DensityState = {0: Poly.const(coeff)}
        for j in reversed(mono.parts):
            state = density_act(-j, state, params)
        for r, p in state.items():
            total[r] = total.get(r, Poly()) + p
    return total.get(level, Poly())


# ---------------------------------------------------------------------------
# Feigin-Fuchs product


class OddThetaPart(ArithmeticError):
    """A quantity that must be rational picked up an odd power of θ."""


class ThetaPoly:
    """``even + odd*θ`` in Q[x][θ]/(θ^2 + 1/t), so θ^2 = -1/t and θ^{-1} = -tθ."""

    __slots__ = ("even", "odd", "t")

    def __init__(self, even, odd, t: Fraction):
        self.even = Poly.coerce(even)
        self.odd = Poly.coerce(odd)
        self.t = t

    @classmethod
    def theta(cls, t: Fraction) -> "ThetaPoly":
        return cls(0, 1, t)

    @classmethod
    def theta_inv(cls, t: Fraction) -> "ThetaPoly":
        return cls(0, -t, t)

    def __add__(self, other):
        other = self._lift(other)
        return ThetaPoly(self.even + other.even, self.odd + other.odd, self.t)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return ThetaPoly(self.even - other.even, self.odd - other.odd, self.t)

    def __mul__(self, other):
        other = self._lift(other)
        theta_sq = -1 / self.t
        even = self.even * other.even + (self.odd * other.odd).scale(theta_sq)
        odd = self.even * other.odd + self.odd * other.even
        return ThetaPoly(even, odd, self.t)

    __rmul__ = __mul__

    def _lift(self, other) -> "ThetaPoly":
        if isinstance(other, ThetaPoly):
            return other
        return ThetaPoly(other, 0, self.t)

    def rational(self) -> Poly:
        if not self.odd.is_zero():
            raise OddThetaPart(f"odd θ part {self.odd} does not vanish")
        return self.even


def _half_range(p: int) -> list[Fraction]:
    """-(p-1)/2, -(p-1)/2 + 1, ..., (p-1)/2."""
    return [Fraction(2 * i - (p - 1), 2) for i in range(p)]


def ff_factor_A(p: int, q: int, l: Fraction, k: Fraction, t: Fraction) -> ThetaPoly:
    th, thi = ThetaPoly.theta(t), ThetaPoly.theta_inv(t)
    first = thi * (Fraction(p - 1, 2) + l) + th * (Fraction(q - 1, 2) + k)
    second = thi * (Fraction(p + 1, 2) - l) + th * (Fraction(q + 1, 2) - k)
    return first * second


def ff_squared(p: int, q: int, t: Scalar, params: DensityParams) -> Poly:
    """Right-hand side of the Feigin-Fuchs formula for f_{p,q}^2.

    The product runs over l in {-(p-1)/2, ..., (p-1)/2} and k in
    {-(q-1)/2, ..., (q-1)/2} of
    ``(μ + A(l,k))(μ + A(-l,-k)) - 4λ(lθ^{-1} + kθ)^2``, computed in
    Q[x][θ]; every factor must come out with zero odd part.
    """
    t = as_rational(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    th, thi = ThetaPoly.theta(t), ThetaPoly.theta_inv(t)
    mu, lam = params.mu, params.lam
    total = Poly.const(1)
    for l in _half_range(p):
        for k in _half_range(q):
            a_plus = ff_factor_A(p, q, l, k, t)
            a_minus = ff_factor_A(p, q, -l, -k, t)
            shift = thi * l + th * k
            factor = (a_plus + mu) * (a_minus + mu) - (shift * shift) * lam.scale(4)
            total = total * factor.rational()
    return total


def params_for_weights(h_left: Scalar, h_right: Scalar) -> DensityParams:
    """λ = -h_right, μ = h_left + h_right - x: the density module matching the Zhu reduction."""
    h_left, h_right = as_rational(h_left), as_rational(h_right)
    return DensityParams(-h_right, Poly.linear(-1, h_left + h_right))

