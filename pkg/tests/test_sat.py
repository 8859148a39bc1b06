import itertools
import random
import stat
import sys

import pytest

from patbreak.sat import (
    CnfFormula,
    ExternalToolError,
    Solver,
    external_count,
    external_solve,
    parse_count_output,
    parse_solver_output,
    projected_vars,
)


def truth_table(nvars, clauses, assumptions=()):
    out = []
    for bits in itertools.product((False, True), repeat=nvars):
        val = lambda x: bits[abs(x) - 1] == (x > 0)  # noqa: E731
        if all(val(a) for a in assumptions) and all(any(val(x) for x in c) for c in clauses):
            out.append(bits)
    return out


def random_cnf(r, nvars, nclauses, width=3):
    return [[r.choice((-1, 1)) * r.randint(1, nvars) for _ in range(r.randint(1, width))] for _ in range(nclauses)]


def pigeonhole(holes):
    pigeons = holes + 1
    var = lambda p, h: p * holes + h + 1  # noqa: E731
    cls = [[var(p, h) for h in range(holes)] for p in range(pigeons)]
    for h in range(holes):
        for a, b in itertools.combinations(range(pigeons), 2):
            cls.append([-var(a, h), -var(b, h)])
    return pigeons * holes, cls


class TestSolver:
    def test_examples(self):
        s = Solver()
        s.ensure_vars(2)
        s.add_clause([-1, 2])
        assert s.solve([1]) and s.value(2)
        s = Solver()
        s.ensure_vars(1)
        s.add_clause([1])
        s.add_clause([-1])
        assert s.solve() is False
        s = Solver()
        assert s.solve() is True
        s.add_clause([])
        assert s.solve() is False

    def test_bad_literals(self):
        s = Solver()
        s.ensure_vars(2)
        with pytest.raises(ValueError):
            s.add_clause([3])
        with pytest.raises(ValueError):
            s.add_clause([0])
        with pytest.raises(ValueError):
            s.solve([5])

    @pytest.mark.parametrize("holes", [2, 3, 5, 6])
    def test_pigeonhole_unsat(self, holes):
        nv, cls = pigeonhole(holes)
        s = Solver()
        s.ensure_vars(nv)
        s.add_clauses(cls)
        assert s.solve() is False

    def test_conflict_limit(self):
        nv, cls = pigeonhole(8)
        s = Solver()
        s.ensure_vars(nv)
        s.add_clauses(cls)
        assert s.solve(conflict_limit=5) is None

    def test_incremental_matches_scratch(self):
        r = random.Random(7)
        for _ in range(150):
            nv = r.randint(1, 9)
            s = Solver()
            s.ensure_vars(nv)
            acc = []
            for _ in range(r.randint(1, 6)):
                batch = random_cnf(r, nv, r.randint(1, 8))
                acc += batch
                s.add_clauses(batch)
                assume = [r.choice((-1, 1)) * r.randint(1, nv) for _ in range(r.randint(0, 2))]
                models = truth_table(nv, acc, assume)
                got = s.solve(assume)
                assert got == bool(models)
                if got:
                    m = tuple(s.value(v) for v in range(1, nv + 1))
                    assert m in models

    def test_deterministic(self):
        r = random.Random(3)
        cls = random_cnf(r, 30, 120)
        a, b = Solver(), Solver()
        for s in (a, b):
            s.ensure_vars(30)
            s.add_clauses(cls)
        assert a.solve() == b.solve()
        if a.model:
            assert a.model == b.model


class TestEnumeration:
    def test_examples(self):
        s = Solver()
        s.ensure_vars(2)
        assert s.enumerate_models([1, 2]).run().count == 4
        s = Solver()
        s.ensure_vars(1)
        s.add_clause([1])
        en = s.enumerate_models([1]).run()
        assert en.count == 1 and en.complete

    def test_limit_flag(self):
        s = Solver()
        s.ensure_vars(4)
        en = s.enumerate_models([1, 2, 3, 4], limit=5).run()
        assert en.count == 5 and not en.complete

    def test_solver_reusable_after_enumeration(self):
        s = Solver()
        s.ensure_vars(2)
        s.enumerate_models([1, 2]).run()
        assert s.enumerate_models([1, 2]).run().count == 4

    def test_projection(self):
        r = random.Random(11)
        for _ in range(40):
            nv = r.randint(2, 8)
            cls = random_cnf(r, nv, r.randint(1, 10))
            proj = sorted(r.sample(range(1, nv + 1), r.randint(1, nv)))
            expect = {tuple(m[v - 1] for v in proj) for m in truth_table(nv, cls)}
            s = Solver()
            s.ensure_vars(nv)
            s.add_clauses(cls)
            got = list(s.enumerate_models(proj))
            assert len(got) == len(set(got)) == len(expect)
            assert set(got) == expect

    def test_empty_projection_rejected(self):
        with pytest.raises(ValueError):
            Solver().enumerate_models([])


class TestDimacs:
    def test_format(self, tmp_path):
        f = CnfFormula(var_count=2)
        f.add_clause([1, -2])
        assert f.to_dimacs() == "p cnf 2 1\n1 -2 0\n"
        path = tmp_path / "f.cnf"
        f.export_dimacs(path)
        g = CnfFormula.load(path)
        assert g.var_count == 2 and g.clauses == [[1, -2]]

    def test_range_and_header_checks(self):
        f = CnfFormula(var_count=2)
        with pytest.raises(ValueError):
            f.add_clause([3])
        with pytest.raises(ValueError):
            CnfFormula.from_dimacs("p cnf 2 2\n1 0\n")

    def test_comments_and_projection(self):
        f = CnfFormula(var_count=3, comments=["projected-vars 1 2 0"])
        g = CnfFormula.from_dimacs(f.to_dimacs())
        assert projected_vars(g) == [1, 2]

    def test_ramsey_33_5_export_is_sat(self, tmp_path):
        from patbreak.ramsey import RamseyInstance, ramsey_clauses

        f = ramsey_clauses(RamseyInstance(3, 3, 5))
        f.export_dimacs(tmp_path / "r.cnf")
        assert CnfFormula.load(tmp_path / "r.cnf").to_solver().solve()
        assert not ramsey_clauses(RamseyInstance(3, 3, 6)).to_solver().solve()


class TestExternalBridge:
    def test_parse_solver_output(self):
        r = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n")
        assert r.satisfiable and r.model == {1: True, 2: False, 3: True}
        assert not parse_solver_output("s UNSATISFIABLE\n").satisfiable
        with pytest.raises(ExternalToolError):
            parse_solver_output("nothing")

    def test_parse_count_output(self):
        assert parse_count_output("c progress\n11\n") == 11
        assert parse_count_output("s mc 42\n") == 42
        with pytest.raises(ExternalToolError):
            parse_count_output("c none")

    def _script(self, tmp_path, body):
        path = tmp_path / "tool.py"
        path.write_text(body)
        path.chmod(path.stat().st_mode | stat.S_IEXEC)
        return f"{sys.executable} {path}"

    def test_round_trip_through_subprocess(self, tmp_path):
        exe = self._script(tmp_path, (
            "import sys\n"
            "from patbreak.sat import CnfFormula\n"
            "f = CnfFormula.load(sys.argv[1])\n"
            "s = f.to_solver()\n"
            "if s.solve():\n"
            "    print('s SATISFIABLE')\n"
            "    print('v ' + ' '.join(str(v if s.value(v) else -v) for v in range(1, f.var_count + 1)) + ' 0')\n"
            "else:\n"
            "    print('s UNSATISFIABLE')\n"
            "print(s.enumerate_models(list(range(1, f.var_count + 1))).run().count)\n"
        ))
        f = CnfFormula(var_count=2)
        f.add_clause([1, 2])
        r = external_solve(f, exe)
        assert r.satisfiable and (r.model[1] or r.model[2])
        assert external_count(f, exe) == 3

    def test_unconfigured(self, monkeypatch):
        monkeypatch.delenv("PATBREAK_SOLVER", raising=False)
        with pytest.raises(ExternalToolError):
            external_solve(CnfFormula())
