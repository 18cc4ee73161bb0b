from collections import defaultdict
from fractions import Fraction

import pytest

from virfuse.vir_core import CENTRAL, Operator, PBWMonomial, bracket, operator_combine, partitions


def test_bracket_examples():
    assert bracket(1, -1) == [(0, 2)]
    assert bracket(2, -2) == [(0, 4), (CENTRAL, Fraction(1, 2))]
    assert bracket(3, 3) == []
    assert bracket(1, -2) == [(-1, 3)]


@pytest.mark.parametrize("m", range(-12, 13))
def test_antisymmetry(m):
    for n in range(-12, 13):
        assert dict(bracket(m, n)) == {k: -c for k, c in bracket(n, m)}


def _nested(a, b, c):
    """[[L_a, L_b], L_c] as {key: coeff}; the central element commutes with everything."""
    out = defaultdict(Fraction)
    for key, coeff in bracket(a, b):
        if key == CENTRAL:
            continue
        for key2, coeff2 in bracket(key, c):
            out[key2] += coeff * coeff2
    return out


def test_jacobi():
    rng = range(-6, 7)
    for m in rng:
        for n in rng:
            for p in rng:
                total = defaultdict(Fraction)
                for a, b, c in ((m, n, p), (n, p, m), (p, m, n)):
                    for key, coeff in _nested(a, b, c).items():
                        total[key] += coeff
                assert all(v == 0 for v in total.values()), (m, n, p)


def _count_partitions(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        return 1
    return sum(_count_partitions(n - k, k) for k in range(1, min(n, cap) + 1))


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (4, 5), (8, 22), (12, 77)])
def test_partition_counts(n, expected):
    assert len(partitions(n)) == expected == _count_partitions(n)


def test_partition_order():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_monomial_validation():
    assert PBWMonomial((2, 1, 1)).level == 4
    assert PBWMonomial().level == 0
    with pytest.raises(ValueError):
        PBWMonomial((1, 2))
    with pytest.raises(ValueError):
        PBWMonomial((0,))
    assert PBWMonomial.sorted([1, 3, 2]).parts == (3, 2, 1)
    assert PBWMonomial((2, 1, 1)).to_json() == [2, 1, 1]


def test_operator_combine_examples():
    l1 = Operator.monomial(1)
    assert operator_combine(l1, l1, 1) == Operator.monomial(1, coeff=2)
    l11 = Operator.monomial(1, 1)
    assert not operator_combine(l11, l11, -1)
    combo = operator_combine(Operator.monomial(2), Operator.monomial(3), 4)
    assert combo.as_dict() == {(2,): 1, (3,): 4}


def test_operator_json_roundtrip():
    op = Operator({(3,): 6, (2, 1): 4, (1, 1, 1): 1})
    recs = op.to_json()
    assert recs[0] == {"partition": [3], "coeff": "6"}
    assert Operator.from_json(recs) == op


def test_operator_homogeneity():
    op = Operator({(2,): 1, (1,): 1})
    assert not op.is_homogeneous()
    with pytest.raises(ValueError):
        op.level
