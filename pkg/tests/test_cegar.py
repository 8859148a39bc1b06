import random

import pytest

from conftest import all_bit_vectors, layer_oracle
from patbreak.cegar import (
    CounterExampleQuery,
    IncompleteBreakError,
    cegar_layer,
    counterexample_cnf,
    encode_image,
    encode_lex_less,
    encode_permutation,
    layered_cegar,
    reduce,
    verify_complete,
)
from patbreak.enumeration import all_patterns
from patbreak.graphs import CLASS_CHAIN, GraphBits, PermClass, Permutation, apply_perm, class_members, num_edges
from patbreak.greedy import symbreak_greedy
from patbreak.metrics import survivor_count
from patbreak.patterns import PatternSet, covers, parse_pattern
from patbreak.sat import Solver

SIX = ["[1,0,A,B,C,D]", "[A,1,0,B,C,D]", "[A,1,B,0,C,D]", "[A,B,1,B,0,C]", "[A,A,B,C,1,0]", "[A,B,B,1,0,C]"]


def perm_models(n, c):
    s = Solver()
    enc = encode_permutation(s, n, c)
    proj = [enc.matrix[u][v] for u in range(1, n + 1) for v in range(1, n + 1)]
    out = set()
    for model in s.enumerate_models(proj):
        image = tuple(v for u in range(n) for v in range(1, n + 1) if model[u * n + v - 1])
        out.add(image)
    return out


class TestEncodings:
    def test_class_model_counts(self):
        assert len(perm_models(4, PermClass.I)) == 9
        assert len(perm_models(4, PermClass.CT)) == 3
        assert len(perm_models(5, PermClass.DI)) == 15

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("c", CLASS_CHAIN)
    def test_models_are_class_members(self, n, c):
        assert perm_models(n, c) == {pi.image for pi in class_members(n, c)}

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_image_matches_apply_perm(self, n):
        r = random.Random(n)
        m = num_edges(n)
        s = Solver()
        s.ensure_vars(m)
        enc = encode_permutation(s, n)
        f = encode_image(s, enc, list(range(1, m + 1)))
        for _ in range(60):
            image = list(range(1, n + 1))
            r.shuffle(image)
            pi = Permutation(tuple(image))
            g = GraphBits(n, r.getrandbits(m))
            assume = [enc.matrix[u][pi(u)] for u in range(1, n + 1)] + [p if b else -p for p, b in enumerate(g.bits, 1)]
            if pi.is_identity():
                assert s.solve(assume) is False  # identity is excluded
                continue
            assert s.solve(assume)
            assert tuple(int(s.value(x)) for x in f) == apply_perm(pi, g).bits

    def test_image_example(self):
        s = Solver()
        s.ensure_vars(6)
        enc = encode_permutation(s, 4)
        f = encode_image(s, enc, list(range(1, 7)))
        pi = Permutation((1, 2, 4, 3))
        bits = (1, 0, 1, 1, 0, 0)
        assume = [enc.matrix[u][pi(u)] for u in range(1, 5)] + [p if b else -p for p, b in enumerate(bits, 1)]
        assert s.solve(assume)
        assert [int(s.value(x)) for x in f] == [bits[q - 1] for q in (1, 4, 5, 2, 3, 6)]

    def test_lex_less(self):
        for fb, eb, sat in (((0, 1), (1, 0), True), ((1, 0), (1, 0), False), ((1, 0), (0, 1), False)):
            s = Solver()
            s.ensure_vars(4)
            encode_lex_less(s, [1, 2], [3, 4])
            assume = [v if b else -v for v, b in zip((1, 2, 3, 4), fb + eb)]
            assert s.solve(assume) is sat

    def test_lex_less_exhaustive(self):
        s = Solver()
        s.ensure_vars(6)
        encode_lex_less(s, [1, 2, 3], [4, 5, 6])
        models = {m for m in s.enumerate_models(list(range(1, 7)))}
        expect = {a + b for a in all_bit_vectors(3) for b in all_bit_vectors(3) if a < b}
        assert {tuple(int(x) for x in m) for m in models} == expect

    def test_query_models_are_the_non_canonical_graphs(self):
        q = CounterExampleQuery(4)
        en = q.solver.enumerate_models(q.edges).run()
        assert en.count == 53


class TestLoops:
    def test_single_all_layer_order_4(self):
        run = layered_cegar(4, [PermClass.ALL])
        assert run.complete and verify_complete(run.psi, 4)
        assert survivor_count(run.psi, 4) == 11
        assert run.iterations == len(run.psi)

    def test_ct_layer_order_4(self):
        run = layered_cegar(4, [PermClass.CT])
        perms = [pi.image for pi in class_members(4, PermClass.CT)]
        # consecutive transpositions already single out the 11 canonical graphs
        assert survivor_count(run.psi, 4) == len(layer_oracle(4, perms, all_bit_vectors(6))) == 11

    @pytest.mark.parametrize("n", [4, 5])
    def test_layer_end_sets_are_run_independent(self, n):
        run = layered_cegar(n)
        graphs = list(all_bit_vectors(num_edges(n)))
        perms = []
        for s in run.layers:
            perms = [pi.image for pi in class_members(n, s.layer)]
            assert survivor_count(run.snapshot(s.layer), n) == len(layer_oracle(n, perms, graphs))

    def test_counter_examples_are_new(self):
        q = CounterExampleQuery(5)
        psi = PatternSet(5)
        for _ in range(15):
            cex = q.find(PermClass.I)
            assert cex is not None
            p = cex.pattern()
            assert covers(p, cex.graph)
            assert not psi.covers(cex.graph)
            assert apply_perm(cex.perm, cex.graph) < cex.graph
            psi.add(p)
            q.block(p)

    def test_cegar_layer_counts(self):
        q = CounterExampleQuery(4)
        psi = PatternSet(4)
        it = cegar_layer(q, PermClass.CT, psi)
        assert it == len(psi) == 6
        assert cegar_layer(q, PermClass.ALL, psi) == 0

    def test_layers_validated(self):
        with pytest.raises(ValueError):
            layered_cegar(4, [PermClass.T, PermClass.CT])
        with pytest.raises(ValueError):
            layered_cegar(4, [])

    def test_layer_names_accepted(self):
        run = layered_cegar(4, ["ct", "all"])
        assert [str(s.layer) for s in run.layers] == ["ct", "all"]


class TestReduceAndVerify:
    def test_verify_examples(self):
        six = [parse_pattern(t) for t in SIX]
        assert verify_complete(six, 4)
        for k in range(6):
            assert not verify_complete(six[:k] + six[k + 1 :], 4)
        assert verify_complete(all_patterns(5, PermClass.I), 5)
        assert not verify_complete([], 4)

    def test_reduce_greedy_unchanged(self):
        psi = symbreak_greedy(4)
        assert [str(p) for p in reduce(psi, 4)] == [str(p) for p in psi]

    @pytest.mark.parametrize("n", [4, 5])
    def test_reduce_irredundant(self, n):
        run = layered_cegar(n, [PermClass.ALL], reduce_break=True)
        red = run.reduced
        assert len(red) <= len(run.psi) <= run.iterations
        assert verify_complete(red, n)
        pats = red.patterns
        for k in range(len(pats)):
            assert not verify_complete(pats[:k] + pats[k + 1 :], n)

    def test_reduce_needs_complete(self):
        with pytest.raises(IncompleteBreakError):
            reduce(PatternSet(4, [parse_pattern(SIX[0])]), 4)
        with pytest.raises(IncompleteBreakError):
            layered_cegar(4, [PermClass.CT], reduce_break=True)


def test_tailored_mode_restricts_counter_examples():
    from patbreak.ramsey import RamseyInstance, ramsey_clauses, sweep_count

    inst = RamseyInstance(3, 3, 5)
    run = layered_cegar(5, problem=ramsey_clauses(inst))
    # only the 12 Ramsey graphs need covering; one pentagon survives
    assert sweep_count(inst, run.psi) == 1
    assert verify_complete(run.psi, 5, ramsey_clauses(inst))
    assert not verify_complete(run.psi, 5)


def test_counterexample_cnf_export():
    f = counterexample_cnf(4, PermClass.ALL)
    assert any(c.startswith("edge-vars") for c in f.comments)
    assert f.to_solver().enumerate_models(list(range(1, 7))).run().count == 53
    g = counterexample_cnf(4, PermClass.ALL, [parse_pattern(t) for t in SIX])
    assert not g.to_solver().solve()
