"""Deterministic random instances for property checks.

Every generator is fed from a counter-based stream keyed by (seed, label),
so any check can be re-run in isolation and still see the same instances,
independent of execution order.
"""

from __future__ import annotations

import zlib
from fractions import Fraction

import numpy as np

from .fock import RATIONAL, FockVector
from .modes import ModeIndex, MultiIndex


def instance_rng(seed: int, label: str) -> np.random.Generator:
    """One stream per (seed, check label); stable across runs and platforms."""
    word = zlib.crc32(label.encode("utf-8"))
    return np.random.Generator(np.random.Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, word]))


def random_mode(rng: np.random.Generator, d: int, K: int, dual_fraction: float = 0.0) -> ModeIndex:
    coord = int(rng.integers(1, d + 1))
    freq = int(rng.integers(-K, K + 1))
    dual = bool(rng.random() < dual_fraction)
    return ModeIndex(coord, freq, dual)


def random_multi_index(rng: np.random.Generator, d: int, K: int, degree: int,
                       dual_fraction: float = 0.0) -> MultiIndex:
    return MultiIndex.from_modes(random_mode(rng, d, K, dual_fraction) for _ in range(degree))


def random_fraction(rng: np.random.Generator) -> Fraction:
    num = int(rng.integers(-9, 10))
    if num == 0:
        num = 1
    den = int(rng.integers(1, 6))
    return Fraction(num, den)


def random_fock(rng: np.random.Generator, d: int, K: int, max_degree: int,
                n_terms: int = 4, dual_fraction: float = 0.0,
                min_degree: int = 0) -> FockVector:
    """Random rational vector with small coefficients; never the zero vector."""
    terms: dict[MultiIndex, Fraction] = {}
    while len(terms) < n_terms:
        degree = int(rng.integers(min_degree, max_degree + 1))
        mu = random_multi_index(rng, d, K, degree, dual_fraction)
        terms[mu] = random_fraction(rng)
    return FockVector(terms, RATIONAL)


def random_xi(rng: np.random.Generator, d: int, K: int,
              include_dual: bool = False) -> dict[ModeIndex, float]:
    out = {}
    for c in range(1, d + 1):
        for k in range(-K, K + 1):
            out[ModeIndex(c, k)] = float(rng.standard_normal())
            if include_dual:
                out[ModeIndex(c, k, dual=True)] = float(rng.standard_normal())
    return out


def random_gamma(rng: np.random.Generator, d: int, K: int, size: int,
                 dual: bool) -> dict[ModeIndex, Fraction]:
    """Sparse rational coefficient map on `size` distinct modes of one duality."""
    out: dict[ModeIndex, Fraction] = {}
    while len(out) < size:
        mode = ModeIndex(int(rng.integers(1, d + 1)), int(rng.integers(-K, K + 1)), dual)
        out[mode] = random_fraction(rng)
    return out
