import pytest

from conftest import all_bit_vectors
from patbreak.graphs import CLASS_CHAIN, GraphBits
from patbreak.ramsey import (
    BudgetError,
    RamseyInstance,
    count_solutions,
    layer_counts,
    ramsey_clauses,
    sweep_count,
    tailored_break,
)
from patbreak.greedy import symbreak_greedy
from patbreak.metrics import iso_class_count


def brute_solutions(s, t, n):
    from itertools import combinations

    out = 0
    for b in all_bit_vectors(n * (n - 1) // 2):
        g = GraphBits.from_bits(b, n)
        has = lambda k, v: any(all(g.has_edge(i, j) == v for i, j in combinations(S, 2)) for S in combinations(range(1, n + 1), k))  # noqa: E731
        if not has(s, True) and not has(t, False):
            out += 1
    return out


def test_clause_examples():
    assert len(ramsey_clauses(RamseyInstance(3, 3, 3)).clauses) == 2
    assert count_solutions(RamseyInstance(4, 4, 4)).count == 62
    assert count_solutions(RamseyInstance(3, 3, 6)).count == 0


@pytest.mark.parametrize("s,t,n", [(3, 3, 5), (3, 4, 5), (4, 4, 5), (3, 5, 5)])
def test_counts_against_brute_force(s, t, n):
    inst = RamseyInstance(s, t, n)
    expect = brute_solutions(s, t, n)
    assert count_solutions(inst).count == sweep_count(inst) == expect


def test_complete_break_counts_canonical_solutions():
    for s, t, n in ((4, 4, 5), (3, 6, 6), (3, 4, 6)):
        inst = RamseyInstance(s, t, n)
        res = count_solutions(inst, symbreak_greedy(n))
        assert res.complete
        assert res.count == iso_class_count(n, ramsey_clauses(inst))


def test_tailored_examples():
    run = tailored_break(RamseyInstance(4, 4, 4))
    assert count_solutions(RamseyInstance(4, 4, 4), run.psi).count == 9
    inst = RamseyInstance(3, 6, 5)
    run = tailored_break(inst, CLASS_CHAIN[:5])
    assert count_solutions(inst, run.psi).count == 14


def test_counts_antitone_along_layers():
    for inst in (RamseyInstance(4, 4, 6), RamseyInstance(3, 6, 6)):
        run = tailored_break(inst)
        counts = [count_solutions(inst, run.snapshot(s.layer)).count for s in run.layers]
        assert counts == sorted(counts, reverse=True)
        assert counts == list(layer_counts(inst).values())


def test_limit_reports_partial():
    res = count_solutions(RamseyInstance(4, 4, 5), limit=10)
    assert res.count == 10 and not res.complete


def test_validation():
    with pytest.raises(ValueError):
        RamseyInstance(1, 3, 4)
    with pytest.raises(BudgetError):
        ramsey_clauses(RamseyInstance(3, 8, 30), budget=1000)
    assert RamseyInstance.parse("ramsey:4,4", 6) == RamseyInstance(4, 4, 6)
    assert str(RamseyInstance(3, 6, 7)) == "R(3,6;7)"
