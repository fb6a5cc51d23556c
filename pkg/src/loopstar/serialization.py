"""Canonical text serialization of Fock vectors.

One term per line, `degree; modes; coefficient`, where modes is a
space-separated list of `(coord,freq,dualflag)^mult` factors in canonical
sorted order and the coefficient is `numerator/denominator` in rational
mode or a float repr in float mode.  Full-line `#` comments and blank
lines are ignored.  Two equal vectors always serialize to byte-identical
UTF-8 streams, which is what golden-file comparisons rely on.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Union

from .fock import FLOAT, RATIONAL, FockVector
from .modes import ModeIndex, MultiIndex

_MODE_RE = re.compile(r"^\((-?\d+),(-?\d+),([01])\)\^(\d+)$")
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class FockParseError(ValueError):
    """Malformed serialized vector; carries 1-based line and 0-based column."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def serialize_fock(F: FockVector) -> bytes:
    """Canonical byte stream; the zero vector serializes to an empty stream."""
    lines = []
    for mu in sorted(F.terms, key=lambda m: m.sort_key()):
        c = F.terms[mu]
        modes = " ".join(f"({m.coord},{m.freq},{1 if m.dual else 0})^{mult}" for m, mult in mu)
        if F.scalar_mode == RATIONAL:
            coeff = f"{c.numerator}/{c.denominator}"
        else:
            coeff = repr(c)
        lines.append(f"{mu.degree}; {modes}; {coeff}")
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")


def deserialize_fock(data: Union[bytes, str], scalar_mode: Optional[str] = None) -> FockVector:
    """Parse a serialized vector.

    scalar_mode None means detect from the coefficients: `p/q` tokens give
    rational mode, float reprs give float mode.  An empty stream is the
    zero vector (rational unless a mode is forced).
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    detected = scalar_mode
    parsed: list[tuple[int, MultiIndex, str, int, int]] = []
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(";")
        if len(fields) != 3:
            raise FockParseError(f"expected 'degree; modes; coefficient', got {len(fields)} fields",
                                 lineno)
        deg_txt, modes_txt, coeff_txt = (f.strip() for f in fields)
        try:
            degree = int(deg_txt)
        except ValueError:
            raise FockParseError(f"bad degree {deg_txt!r}", lineno, raw.find(deg_txt)) from None
        entries = []
        for tok in modes_txt.split():
            m = _MODE_RE.match(tok)
            if not m:
                raise FockParseError(f"bad mode factor {tok!r}", lineno, raw.find(tok))
            coord, freq, dual, mult = int(m.group(1)), int(m.group(2)), m.group(3) == "1", int(m.group(4))
            if coord < 1:
                raise FockParseError(f"coordinate must be >= 1 in {tok!r}", lineno, raw.find(tok))
            if mult < 1:
                raise FockParseError(f"multiplicity must be >= 1 in {tok!r}", lineno, raw.find(tok))
            entries.append((ModeIndex(coord, freq, dual), mult))
        mu = MultiIndex(entries)
        if mu.degree != degree:
            raise FockParseError(f"declared degree {degree} != actual degree {mu.degree}", lineno)
        if not coeff_txt:
            raise FockParseError("empty coefficient", lineno)
        token_mode = RATIONAL if _RATIONAL_RE.match(coeff_txt) else FLOAT
        if detected is None:
            detected = token_mode
        elif detected != token_mode and scalar_mode is None:
            raise FockParseError(f"mixed coefficient styles ({detected} then {token_mode})", lineno)
        parsed.append((degree, mu, coeff_txt, lineno, raw.find(coeff_txt)))
    mode = detected if detected is not None else RATIONAL
    terms: dict[MultiIndex, object] = {}
    for degree, mu, coeff_txt, lineno, col in parsed:
        try:
            value = Fraction(coeff_txt) if mode == RATIONAL else float(coeff_txt)
        except ValueError:
            raise FockParseError(f"bad coefficient {coeff_txt!r}", lineno, col) from None
        if mu in terms:
            raise FockParseError(f"duplicate monomial {mu!r}", lineno)
        terms[mu] = value
    return FockVector(terms, mode)
