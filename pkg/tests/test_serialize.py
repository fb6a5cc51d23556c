from fractions import Fraction

import pytest

from loopstar.fock import FLOAT, RATIONAL, FockVector
from loopstar.modes import ModeIndex, MultiIndex
from loopstar.serialization import FockParseError, deserialize_fock, serialize_fock

M1 = ModeIndex(1, 2)
D2 = ModeIndex(2, -1, dual=True)


def sample_vector():
    return FockVector({
        MultiIndex(((M1, 2), (D2, 1))): Fraction(3, 4),
        MultiIndex.single(M1): Fraction(-2),
        MultiIndex(): Fraction(1, 7),
    })


def test_round_trip_rational():
    F = sample_vector()
    assert deserialize_fock(serialize_fock(F)) == F


def test_round_trip_float():
    F = sample_vector().to_float()
    G = deserialize_fock(serialize_fock(F))
    assert G.scalar_mode == FLOAT
    assert G == F


def test_zero_serializes_empty():
    assert serialize_fock(FockVector.zero()) == b""
    Z = deserialize_fock(b"")
    assert Z.is_zero() and Z.scalar_mode == RATIONAL
    assert deserialize_fock(b"", scalar_mode=FLOAT).scalar_mode == FLOAT


def test_comments_and_blank_lines_ignored():
    data = b"# leading comment\n\n0; ; 2/1\n# trailing\n"
    F = deserialize_fock(data)
    assert F == FockVector.unit().scale(2)


def test_canonical_order_is_stable():
    F = sample_vector()
    items = list(F.terms.items())
    reordered = FockVector(dict(reversed(items)))
    assert serialize_fock(reordered) == serialize_fock(F)


def test_declared_degree_must_match():
    with pytest.raises(FockParseError) as exc:
        deserialize_fock(b"2; (1,2,0)^1; 1/1\n")
    assert exc.value.line == 1


def test_duplicate_monomial_rejected():
    data = b"1; (1,2,0)^1; 1/1\n1; (1,2,0)^1; 2/1\n"
    with pytest.raises(FockParseError) as exc:
        deserialize_fock(data)
    assert exc.value.line == 2


def test_bad_coordinate_and_multiplicity():
    with pytest.raises(FockParseError):
        deserialize_fock(b"1; (0,2,0)^1; 1/1\n")
    with pytest.raises(FockParseError):
        deserialize_fock(b"1; (1,2,0)^0; 1/1\n")


def test_mixed_scalar_styles_rejected():
    data = b"0; ; 1/2\n1; (1,2,0)^1; 0.5\n"
    with pytest.raises(FockParseError):
        deserialize_fock(data)


def test_malformed_line_reports_position():
    with pytest.raises(FockParseError) as exc:
        deserialize_fock(b"0; ; 1/1\nnot a term line\n")
    assert exc.value.line == 2
    assert isinstance(exc.value.column, int)


def test_forced_scalar_mode_mismatch():
    data = serialize_fock(sample_vector())
    with pytest.raises(FockParseError):
        deserialize_fock(data, scalar_mode=FLOAT)
