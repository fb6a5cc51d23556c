"""Truncated symmetric Fock algebra over the loop modes.

Elements are finite linear combinations of symmetrized monomials, each
labelled by a MultiIndex over ModeIndexes.  In this basis the Wick product
is multiset union of labels with coefficient 1, and the annihilation
operator against a basis mode removes one unit of that mode scaled by its
multiplicity.  Coefficients live in exactly one of two scalar modes:
"rational" (stdlib Fraction, exact) or "float".  Mixing modes raises.

Everything degree-graded here respects an optional max_degree cap: a capped
vector is an element of the quotient algebra where all monomials of higher
degree are identified with zero, so dropping terms above the cap is the
correct multiplication in that quotient, not an approximation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Optional, Union

from .modes import VACUUM, ModeIndex, MultiIndex

RATIONAL = "rational"
FLOAT = "float"

Scalar = Union[Fraction, int, float]


def coerce_scalar(value: Scalar, scalar_mode: str):
    """Bring a coefficient into the given scalar mode.

    Rational mode accepts Fraction and int only: floats are refused rather
    than silently converted, so exact computations cannot be contaminated.
    """
    if scalar_mode == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"rational mode cannot accept {type(value).__name__} coefficient {value!r}")
    if scalar_mode == FLOAT:
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise TypeError(f"float mode cannot accept {type(value).__name__} coefficient {value!r}")
    raise ValueError(f"unknown scalar mode {scalar_mode!r}")


def _combine_caps(*caps: Optional[int]) -> Optional[int]:
    live = [c for c in caps if c is not None]
    return min(live) if live else None


class FockVector:
    """Sparse element of the (possibly degree-capped) symmetric algebra."""

    __slots__ = ("terms", "scalar_mode", "max_degree")

    def __init__(self, terms: Optional[Mapping[MultiIndex, Scalar]] = None,
                 scalar_mode: str = RATIONAL, max_degree: Optional[int] = None):
        if scalar_mode not in (RATIONAL, FLOAT):
            raise ValueError(f"unknown scalar mode {scalar_mode!r}")
        if max_degree is not None and max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        clean: dict[MultiIndex, Scalar] = {}
        for mu, c in (terms or {}).items():
            if not isinstance(mu, MultiIndex):
                mu = MultiIndex(mu)
            if max_degree is not None and mu.degree > max_degree:
                continue        # projection to the quotient
            c = coerce_scalar(c, scalar_mode)
            if c:
                clean[mu] = c
        self.terms = clean
        self.scalar_mode = scalar_mode
        self.max_degree = max_degree

    @classmethod
    def _from_terms(cls, terms: dict, scalar_mode: str, max_degree: Optional[int]) -> "FockVector":
        # Fast path: caller guarantees canonical keys, coerced nonzero coefficients.
        out = object.__new__(cls)
        out.terms = terms
        out.scalar_mode = scalar_mode
        out.max_degree = max_degree
        return out

    @classmethod
    def zero(cls, scalar_mode: str = RATIONAL, max_degree: Optional[int] = None) -> "FockVector":
        return cls._from_terms({}, scalar_mode, max_degree)

    @classmethod
    def unit(cls, scalar_mode: str = RATIONAL, max_degree: Optional[int] = None) -> "FockVector":
        """The vacuum monomial with coefficient 1: the algebra unit."""
        one = Fraction(1) if scalar_mode == RATIONAL else 1.0
        return cls._from_terms({VACUUM: one}, scalar_mode, max_degree)

    @classmethod
    def monomial(cls, mu: MultiIndex, coeff: Scalar = 1,
                 scalar_mode: str = RATIONAL, max_degree: Optional[int] = None) -> "FockVector":
        return cls({mu: coeff}, scalar_mode, max_degree)

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Largest monomial degree present; 0 for the zero vector."""
        return max((mu.degree for mu in self.terms), default=0)

    def degree_part(self, n: int) -> "FockVector":
        part = {mu: c for mu, c in self.terms.items() if mu.degree == n}
        return FockVector._from_terms(part, self.scalar_mode, self.max_degree)

    def support_modes(self) -> set[ModeIndex]:
        out: set[ModeIndex] = set()
        for mu in self.terms:
            for m, _ in mu:
                out.add(m)
        return out

    def vacuum_component(self) -> Scalar:
        zero = Fraction(0) if self.scalar_mode == RATIONAL else 0.0
        return self.terms.get(VACUUM, zero)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        # max_degree is bookkeeping, not part of the value: two vectors with
        # identical terms are equal regardless of their caps.
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.scalar_mode == other.scalar_mode and self.terms == other.terms

    def __hash__(self):
        raise TypeError("FockVector is mutable bookkeeping; not hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "FockVector(0)"
        items = sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())
        shown = " + ".join(f"{c}*{mu!r}" for mu, c in items[:6])
        more = "" if len(items) <= 6 else f" + ... ({len(items)} terms)"
        return f"FockVector({shown}{more})"

    # -- linear structure ------------------------------------------------

    def _check_mode(self, other: "FockVector"):
        if self.scalar_mode != other.scalar_mode:
            raise TypeError(f"scalar mode mismatch: {self.scalar_mode} vs {other.scalar_mode}")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_mode(other)
        out = dict(self.terms)
        for mu, c in other.terms.items():
            v = out.get(mu)
            v = c if v is None else v + c
            if v:
                out[mu] = v
            elif mu in out:
                del out[mu]
        return FockVector._from_terms(out, self.scalar_mode, _combine_caps(self.max_degree, other.max_degree))

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __neg__(self) -> "FockVector":
        return FockVector._from_terms({mu: -c for mu, c in self.terms.items()},
                                      self.scalar_mode, self.max_degree)

    def scale(self, scalar: Scalar) -> "FockVector":
        s = coerce_scalar(scalar, self.scalar_mode)
        if not s:
            return FockVector.zero(self.scalar_mode, self.max_degree)
        return FockVector._from_terms({mu: c * s for mu, c in self.terms.items()},
                                      self.scalar_mode, self.max_degree)

    def __mul__(self, scalar: Scalar) -> "FockVector":
        return self.scale(scalar)

    __rmul__ = __mul__

    def truncate(self, n: int) -> "FockVector":
        """Project onto degrees <= n and remember the cap."""
        kept = {mu: c for mu, c in self.terms.items() if mu.degree <= n}
        return FockVector._from_terms(kept, self.scalar_mode, n)

    def to_float(self) -> "FockVector":
        if self.scalar_mode == FLOAT:
            return self
        return FockVector._from_terms({mu: float(c) for mu, c in self.terms.items()},
                                      FLOAT, self.max_degree)


# -- products and contractions ------------------------------------------


def wick_product(F: FockVector, G: FockVector, max_degree: Optional[int] = None) -> FockVector:
    """Symmetrized product: multiset union of monomial labels, coefficient 1.

    The cap is the tightest of the operands' caps and the explicit argument;
    pairs whose degrees sum past it are skipped before any union is built.
    """
    F._check_mode(G)
    cap = _combine_caps(F.max_degree, G.max_degree, max_degree)
    acc: dict[MultiIndex, Scalar] = {}
    fitems = [(mu.degree, mu, c) for mu, c in F.terms.items()]
    gitems = sorted(((mu.degree, mu, c) for mu, c in G.terms.items()), key=lambda t: t[0])
    for dF, muF, cF in fitems:
        for dG, muG, cG in gitems:
            if cap is not None and dF + dG > cap:
                break       # gitems sorted by degree
            key = muF.union(muG)
            v = acc.get(key)
            v = cF * cG if v is None else v + cF * cG
            if v:
                acc[key] = v
            elif key in acc:
                del acc[key]
    return FockVector._from_terms(acc, F.scalar_mode, cap)


def annihilate(mode: ModeIndex, F: FockVector) -> FockVector:
    """Contraction against one basis mode: mu -> mult(mode) * (mu minus one unit)."""
    out: dict[MultiIndex, Scalar] = {}
    for mu, c in F.terms.items():
        m = mu.multiplicity(mode)
        if not m:
            continue
        key = mu.remove(mode)
        v = out.get(key)
        v = m * c if v is None else v + m * c
        if v:
            out[key] = v
        elif key in out:
            del out[key]
    return FockVector._from_terms(out, F.scalar_mode, F.max_degree)


def annihilate_general(h: Mapping[ModeIndex, Scalar], F: FockVector) -> FockVector:
    """Contraction against a finite combination of modes: sum of h[mode] * a_mode."""
    out = FockVector.zero(F.scalar_mode, F.max_degree)
    for mode, coeff in h.items():
        part = annihilate(mode, F)
        if not part.is_zero():
            out = out + part.scale(coeff)
    return out


def annihilate_power(mode: ModeIndex, power: int, F: FockVector) -> FockVector:
    """Iterated contraction a_mode^power; multiplicities give falling factorials."""
    for _ in range(power):
        if F.is_zero():
            break
        F = annihilate(mode, F)
    return F


def contract_channels(F: FockVector, G: FockVector,
                      channels: Iterable[tuple[ModeIndex, ModeIndex, Scalar]],
                      r: int, max_degree: Optional[int] = None) -> FockVector:
    """r-fold channel contraction, the engine behind every bidifferential layer.

    A channel (m_F, m_G, w) contributes w * :a_{m_F}F . a_{m_G}G:.  This
    returns the sum over ordered r-tuples of channels of the product of
    their weights applied slotwise, i.e. the r-th power of the channel sum
    as a bidifferential operator, without any 1/r! normalization.
    Enumeration is by channel multiset with multinomial weight, which is
    exact because slotwise contractions commute.
    """
    F._check_mode(G)
    if r < 0:
        raise ValueError("contraction order must be >= 0")
    if r == 0:
        return wick_product(F, G, max_degree)
    suppF = F.support_modes()
    suppG = G.support_modes()
    live = [(fm, gm, coerce_scalar(w, F.scalar_mode)) for fm, gm, w in channels
            if fm in suppF and gm in suppG]
    cap = _combine_caps(F.max_degree, G.max_degree, max_degree)
    total = FockVector.zero(F.scalar_mode, cap)
    if not live:
        return total
    r_fact = math.factorial(r)
    for combo in combinations_with_replacement(range(len(live)), r):
        counts: dict[int, int] = {}
        for idx in combo:
            counts[idx] = counts.get(idx, 0) + 1
        weight = Fraction(r_fact) if F.scalar_mode == RATIONAL else float(r_fact)
        aF, aG = F, G
        for idx, cnt in counts.items():
            fm, gm, w = live[idx]
            weight = weight * w ** cnt / math.factorial(cnt)
            aF = annihilate_power(fm, cnt, aF)
            if aF.is_zero():
                break
            aG = annihilate_power(gm, cnt, aG)
            if aG.is_zero():
                break
        if aF.is_zero() or aG.is_zero() or not weight:
            continue
        total = total + wick_product(aF, aG, cap).scale(weight)
    return total


def wick_exponential(gamma: Mapping[ModeIndex, Scalar], gamma_star: Mapping[ModeIndex, Scalar],
                     N: int, scalar_mode: str = RATIONAL) -> FockVector:
    """Degree-capped exponential of a degree-one element on the doubled modes.

    gamma feeds primal slots and gamma_star dual slots; the result is
    sum_{n <= N} (gamma + gamma_star)^{wick n} / n!.  Keys must carry the
    matching dual flag so the two halves cannot be confused.
    """
    if N < 0:
        raise ValueError("degree cap must be nonnegative")
    gen_terms: dict[MultiIndex, Scalar] = {}
    for mode, c in gamma.items():
        if mode.dual:
            raise ValueError(f"gamma must have primal support, got {mode!r}")
        gen_terms[MultiIndex.single(mode)] = c
    for mode, c in gamma_star.items():
        if not mode.dual:
            raise ValueError(f"gamma_star must have dual support, got {mode!r}")
        gen_terms[MultiIndex.single(mode)] = c
    gen = FockVector(gen_terms, scalar_mode, max_degree=N)
    out = FockVector.unit(scalar_mode, N)
    power = out
    for n in range(1, N + 1):
        inv_n = Fraction(1, n) if scalar_mode == RATIONAL else 1.0 / n
        power = wick_product(power, gen, max_degree=N).scale(inv_n)
        if power.is_zero():
            break
        out = out + power
    return out


# -- formal power series in the deformation parameter --------------------


class HbarSeries:
    """Truncated formal series: one FockVector per order of the parameter.

    coeffs[r] is the order-r coefficient; the truncation order is fixed at
    construction and all arithmetic demands matching orders and scalar modes.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[FockVector]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("series needs at least the order-0 coefficient")
        mode = coeffs[0].scalar_mode
        for c in coeffs:
            if c.scalar_mode != mode:
                raise TypeError("all series coefficients must share one scalar mode")
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def scalar_mode(self) -> str:
        return self.coeffs[0].scalar_mode

    @classmethod
    def from_vector(cls, F: FockVector, R: int) -> "HbarSeries":
        """The constant series F + 0*hbar + ... up to order R."""
        zeros = [FockVector.zero(F.scalar_mode, F.max_degree) for _ in range(R)]
        return cls([F] + zeros)

    @classmethod
    def zero(cls, R: int, scalar_mode: str = RATIONAL, max_degree: Optional[int] = None) -> "HbarSeries":
        return cls([FockVector.zero(scalar_mode, max_degree) for _ in range(R + 1)])

    def coefficient(self, r: int) -> FockVector:
        return self.coeffs[r]

    def _check_compatible(self, other: "HbarSeries"):
        if self.order != other.order:
            raise ValueError(f"series order mismatch: {self.order} vs {other.order}")
        if self.scalar_mode != other.scalar_mode:
            raise TypeError("scalar mode mismatch between series")

    def __add__(self, other: "HbarSeries") -> "HbarSeries":
        self._check_compatible(other)
        return HbarSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HbarSeries") -> "HbarSeries":
        self._check_compatible(other)
        return HbarSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, scalar: Scalar) -> "HbarSeries":
        return HbarSeries([c.scale(scalar) for c in self.coeffs])

    def wick_mul(self, other: "HbarSeries", max_degree: Optional[int] = None) -> "HbarSeries":
        """Cauchy product with the Wick product on coefficients."""
        self._check_compatible(other)
        out = []
        for r in range(self.order + 1):
            acc = FockVector.zero(self.scalar_mode, max_degree)
            for a in range(r + 1):
                term = wick_product(self.coeffs[a], other.coeffs[r - a], max_degree)
                if not term.is_zero():
                    acc = acc + term
            out.append(acc)
        return HbarSeries(out)

    def truncate_degree(self, n: int) -> "HbarSeries":
        return HbarSeries([c.truncate(n) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, HbarSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        return f"HbarSeries(order={self.order}, terms={[len(c) for c in self.coeffs]})"
