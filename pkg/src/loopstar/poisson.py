"""Weighted symplectic Poisson bracket and the truncated Moyal star-product.

The phase space is the doubled mode set: every (coord, freq) pair has a
primal and a dual copy.  A SymplecticForm fixes the exact block pairing
between them and a frequency weight (weight_c * k^2 + 1).  The bracket is
the weighted single contraction across the form; its r-fold iterates are
the bidifferential coefficients of the star-product.  All of it routes
through the shared channel-contraction engine, so the bracket, its powers
and every deformed product differ only in their channel tables.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .fock import RATIONAL, FockVector, HbarSeries, contract_channels
from .modes import ModeIndex

Matrix = tuple[tuple[Fraction, ...], ...]


def _invert_rational(mat: Sequence[Sequence[Fraction]]) -> Matrix:
    """Exact Gauss-Jordan inverse; raises on a singular matrix."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("form matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class SymplecticForm:
    """Exact antisymmetric pairing on the doubled modes plus a frequency weight.

    Doubled indices 0..d-1 are the primal coordinates, d..2d-1 their duals.
    omega_upper is always computed from omega_lower by exact inversion, so
    sign conventions are a consequence of the stated lower form, not a
    second hand-coded table.
    """

    __slots__ = ("d", "K", "weight_c", "omega_lower", "omega_upper")

    def __init__(self, d: int, K: int, weight_c=Fraction(1),
                 omega_lower: Optional[Sequence[Sequence[Fraction]]] = None):
        if d < 1 or K < 0:
            raise ValueError("need d >= 1 and K >= 0")
        if isinstance(weight_c, int):
            weight_c = Fraction(weight_c)
        if weight_c < 0:
            raise ValueError("weight_c must be nonnegative")
        self.d = d
        self.K = K
        self.weight_c = weight_c
        if omega_lower is None:
            omega_lower = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
            for i in range(d):
                omega_lower[i][d + i] = Fraction(1)      # primal-dual block
                omega_lower[d + i][i] = Fraction(-1)
        lower = tuple(tuple(Fraction(x) for x in row) for row in omega_lower)
        if len(lower) != 2 * d or any(len(row) != 2 * d for row in lower):
            raise ValueError(f"form matrix must be {2 * d} x {2 * d}")
        for i in range(2 * d):
            for j in range(2 * d):
                if lower[i][j] != -lower[j][i]:
                    raise ValueError("form matrix must be antisymmetric")
        self.omega_lower = lower
        self.omega_upper = _invert_rational(lower)

    @classmethod
    def standard(cls, d: int, K: int, weight_c=Fraction(1)) -> "SymplecticForm":
        return cls(d, K, weight_c)

    @classmethod
    def unit_pairing(cls, d: int, K: int) -> "SymplecticForm":
        """Weight-1 form with {primal, dual} = +1: the deformation layer's pairing.

        Obtained by flipping the orientation of the standard blocks and
        dropping the frequency weight, so the single contraction weighs
        every retained frequency by exactly 1.
        """
        lower = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            lower[i][d + i] = Fraction(-1)
            lower[d + i][i] = Fraction(1)
        return cls(d, K, Fraction(0), lower)

    def weight(self, freq: int):
        """Frequency weight weight_c * k^2 + 1, in weight_c's own scalar type."""
        return self.weight_c * freq * freq + 1

    def mode_of_index(self, idx: int, freq: int) -> ModeIndex:
        if not 0 <= idx < 2 * self.d:
            raise ValueError(f"doubled index {idx} out of range for d={self.d}")
        return ModeIndex(idx % self.d + 1, freq, dual=idx >= self.d)

    def channels(self) -> list[tuple[ModeIndex, ModeIndex, object]]:
        """Contraction channels (mode on F, mode on G, weight) for the bracket."""
        out = []
        for k in range(-self.K, self.K + 1):
            w = self.weight(k)
            for i in range(2 * self.d):
                for j in range(2 * self.d):
                    entry = self.omega_upper[i][j]
                    if entry:
                        out.append((self.mode_of_index(i, k), self.mode_of_index(j, k),
                                    w * entry))
        return out

    def __repr__(self) -> str:
        return f"SymplecticForm(d={self.d}, K={self.K}, weight_c={self.weight_c})"


def poisson_bracket(F: FockVector, G: FockVector, form: SymplecticForm) -> FockVector:
    """Weighted single contraction across the form; antisymmetric and bilinear."""
    return contract_channels(F, G, form.channels(), 1)


def poisson_power(r: int, F: FockVector, G: FockVector, form: SymplecticForm,
                  max_degree: Optional[int] = None) -> FockVector:
    """r-fold iterate of the bracket's channel sum; r = 0 is the plain product."""
    return contract_channels(F, G, form.channels(), r, max_degree)


def moyal_star(F: FockVector, G: FockVector, form: SymplecticForm, R: int,
               max_degree: Optional[int] = None) -> HbarSeries:
    """Deformed product: order-r coefficient is the r-fold contraction over r!."""
    if R < 0:
        raise ValueError("series order must be >= 0")
    coeffs = []
    for r in range(R + 1):
        inv = Fraction(1, math.factorial(r)) if F.scalar_mode == RATIONAL \
            else 1.0 / math.factorial(r)
        coeffs.append(poisson_power(r, F, G, form, max_degree).scale(inv))
    return HbarSeries(coeffs)


def star_series(FS: HbarSeries, GS: HbarSeries, form: SymplecticForm,
                max_degree: Optional[int] = None) -> HbarSeries:
    """Bilinear extension of the deformed product to truncated series."""
    FS._check_compatible(GS)
    R = FS.order
    out = []
    for r in range(R + 1):
        acc = FockVector.zero(FS.scalar_mode, max_degree)
        for c in range(r + 1):
            inv = Fraction(1, math.factorial(c)) if FS.scalar_mode == RATIONAL \
                else 1.0 / math.factorial(c)
            for a in range(r - c + 1):
                b = r - c - a
                term = poisson_power(c, FS.coefficient(a), GS.coefficient(b), form, max_degree)
                if not term.is_zero():
                    acc = acc + term.scale(inv)
        out.append(acc)
    return HbarSeries(out)
