import json
import random
from fractions import Fraction

import pytest

from virfuse.fusion import (
    BOUND_THEOREM,
    VACUUM_RULE,
    GeneratorPool,
    clebsch_gordan,
    correlation_coefficients,
    correlation_matches_reduction,
    fusion_bound,
    fusion_table,
    shifted_cg,
)
from virfuse.vir_core import partitions

F = Fraction


def test_clebsch_gordan():
    assert clebsch_gordan(0, 5) == {5}
    assert clebsch_gordan(1, 1) == {0, 2}
    assert clebsch_gordan(2, 3) == {1, 3, 5}


def test_fusion_bound_examples():
    assert fusion_bound(3, 3, 2) == 1
    assert fusion_bound(3, 3, 4) == 1
    assert fusion_bound(3, 3, 6) == 0
    assert fusion_bound(4, 3, 3) == 1
    assert fusion_bound(4, 3, 5) == 1
    assert fusion_bound(4, 3, 7) == 0
    assert fusion_bound(2, 5, 5) == 1
    assert fusion_bound(2, 5, 3) == 0
    with pytest.raises(ValueError):
        fusion_bound(4, 3, 1)


def test_one_sided_bound_is_too_weak():
    # for m < n the (n, m) generator has extra positive roots that the other order removes
    pool = GeneratorPool(-1)
    assert set(pool.get(7, 3).labels) - set(pool.get(3, 7).labels) == {0, 2, 4}
    assert fusion_bound(3, 7, 4, pool=pool) == 0


def test_small_table():
    table = fusion_table(4, -1)
    assert table[(3, 3, 4)] == 1
    assert table[(3, 4, 4)] == 0
    assert table[(4, 4, 2)] == 1
    for k in range(2, 5):
        assert table[(2, k, k)] == 1
    assert table.provenance[(2, 3, 3)] == VACUUM_RULE
    assert table.provenance[(3, 3, 4)] == BOUND_THEOREM


@pytest.mark.parametrize("t", [-1, 1])
def test_table_matches_clebsch_gordan(t):
    table = fusion_table(9, t)
    assert len(table.entries) == 8 ** 3
    assert table.mismatches() == []
    for (m, n, r), dim in table.entries.items():
        assert dim == table[(n, m, r)]
        if m == 2:
            assert dim == (1 if r == n else 0)


def test_table_parallel_equals_serial():
    assert fusion_table(7, -1, jobs=4).to_json() == fusion_table(7, -1).to_json()


def test_table_json_and_text():
    table = fusion_table(4, -1)
    doc = json.loads(table.dumps())
    assert doc["t"] == "-1" and doc["max_label"] == 4
    assert {"m": 3, "n": 3, "r": 4, "dim": 1, "why": BOUND_THEOREM} in doc["entries"]
    text = table.to_text()
    assert text.splitlines()[1].split() == ["m", "n", "|", "r=2", "r=3", "r=4"]
    assert "3 | 1    0    1" in text


def test_correlation_examples():
    assert correlation_coefficients([2], 3, 3, 2) == F(-15, 4)
    assert correlation_coefficients([1], 3, 3, 4) == F(1, 2)
    assert correlation_coefficients([1, 1], 3, 3, 2) == F(15, 4)


def test_correlation_coincidence_random():
    rng = random.Random(7)
    for _ in range(100):
        js = rng.choice(partitions(rng.randint(1, 8)))
        m, n, r = (rng.randint(2, 9) for _ in range(3))
        assert correlation_matches_reduction(js, m, n, r)


def test_shifted_cg():
    assert shifted_cg(3, 3, 4) == 1
    assert shifted_cg(3, 4, 4) == 0
