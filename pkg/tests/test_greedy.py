import numpy as np
import pytest

from conftest import all_bit_vectors, oracle_canonical
from patbreak.graphs import GraphBits, OrderError, num_edges
from patbreak.greedy import ct_prefix, half, ranking, symbreak_greedy, top_four
from patbreak.patterns import cover_size, orthogonal, parse_pattern
from patbreak.sweep import canonical_codes, covered_mask

P = parse_pattern
SIX = ["[1,0,A,B,C,D]", "[A,1,0,B,C,D]", "[A,1,B,0,C,D]", "[A,B,1,B,0,C]", "[A,A,B,C,1,0]", "[A,B,B,1,0,C]"]


def test_ranking_examples():
    p = P("[1,0,A,B,C,D]")
    assert ranking(p, [], 4) == 16
    assert ranking(p, [p], 4) == 0
    assert ranking(P("[A,1,B,0,C,D]"), [P(SIX[0]), P(SIX[1])], 4) == 8
    with pytest.raises(OrderError):
        ranking(p, [], 8)


def test_order_4_run():
    psi = symbreak_greedy(4)
    assert [str(p) for p in psi] == SIX
    assert [e.delta for e in psi.entries] == [16, 16, 8, 6, 5, 2]
    assert [e.round for e in psi.entries] == [1, 1, 2, 2, 3, 3]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_complete_and_accounted(n):
    psi = symbreak_greedy(n)
    mask = covered_mask(n, psi)
    canon = np.zeros(mask.size, dtype=bool)
    canon[canonical_codes(n)] = True
    assert np.array_equal(mask, ~canon)
    assert sum(e.delta for e in psi.entries) == (1 << num_edges(n)) - canon.sum()
    assert all(e.delta >= 1 for e in psi.entries)


@pytest.mark.parametrize("n", [5, 6])
def test_rounds_are_orthogonal_batches(n):
    psi = symbreak_greedy(n)
    by_round = {}
    for e in psi.entries:
        by_round.setdefault(e.round, []).append(e.pattern)
    for batch in by_round.values():
        for i, a in enumerate(batch):
            for b in batch[i + 1 :]:
                assert orthogonal(a, b)
    deltas = [e.delta for e in psi.entries]
    assert deltas == sorted(deltas, reverse=True)


@pytest.mark.parametrize("n", [5, 6])
def test_top_four_lead_the_run(n):
    psi = symbreak_greedy(n)
    assert [str(p) for p in psi[:4]] == [str(p) for p in top_four(n)]


def test_top_four_shapes():
    a, b, c, d = top_four(5)
    assert str(a) == "[1,0,A,B,C,D,E,F,G,H]"
    assert str(b) == "[A,1,0,B,C,D,E,F,G,H]"
    assert str(c) == "[A,1,B,0,C,D,E,F,G,H]"
    assert str(d) == "[A,B,C,1,D,E,0,F,G,H]"
    assert cover_size(a) == 2**8
    with pytest.raises(OrderError):
        top_four(4)


def test_truncations():
    psi = symbreak_greedy(5)
    assert len(half(psi)) == len(psi) // 2
    pre = ct_prefix(psi)
    assert 4 <= len(pre) < len(psi)
    assert [str(p) for p in pre] == [str(p) for p in psi[: len(pre)]]


def test_order_4_run_against_matrix_oracle():
    psi = symbreak_greedy(4)
    for b in all_bit_vectors(6):
        assert psi.covers(GraphBits.from_bits(b)) == (not oracle_canonical(b, 4))
