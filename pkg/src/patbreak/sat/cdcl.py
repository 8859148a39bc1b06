"""A small incremental CDCL solver.

Two watched literals, first-UIP learning with local minimization, VSIDS
with a lazy heap, phase saving, Luby restarts and LBD-based reduction of
the learnt clause database.  Branching is fully deterministic, so a given
sequence of calls always produces the same models.

Literals in the public API are DIMACS integers.  Internally literal ``v`` is
``2v`` and ``-v`` is ``2v + 1``, so negation is ``x ^ 1``.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Iterator, Sequence

UNASSIGNED = 0
TRUE = 1
FALSE = -1


def _luby(i: int) -> int:
    """The ``i``-th term (0-based) of 1,1,2,1,1,2,4,..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i %= size
    return 1 << seq


class Solver:
    """Add-only clause database with per-call assumptions.

    ``solve`` returns True/False, or None when ``conflict_limit`` runs out.
    After a True answer :meth:`value` and :attr:`model` read the model.
    """

    restart_base = 100
    var_decay = 0.95

    def __init__(self, clauses: Iterable[Sequence[int]] = ()):
        self.nvars = 0
        self.val = [UNASSIGNED, UNASSIGNED]  # per internal literal
        self.level = [0]
        self.reason: list[list[int] | None] = [None]
        self.activity = [0.0]
        self.phase = [False]
        self.seen = [False]
        self.watches: list[list[list[int]]] = [[], []]
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.lbd: dict[int, int] = {}
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.heap: list[tuple[float, int]] = []
        self.var_inc = 1.0
        self.ok = True
        self.model: list[bool] | None = None
        self.max_learnts = 2000
        self.stats = {"solves": 0, "conflicts": 0, "decisions": 0, "propagations": 0, "restarts": 0}
        for c in clauses:
            self.add_clause(c)

    # -- variables and clauses ------------------------------------------

    def new_var(self) -> int:
        self.nvars += 1
        v = self.nvars
        self.val += [UNASSIGNED, UNASSIGNED]
        self.level.append(0)
        self.reason.append(None)
        self.activity.append(0.0)
        self.phase.append(False)
        self.seen.append(False)
        self.watches += [[], []]
        heapq.heappush(self.heap, (0.0, v))
        return v

    def ensure_vars(self, n: int) -> None:
        while self.nvars < n:
            self.new_var()

    def add_clause(self, lits: Iterable[int]) -> bool:
        """Add a permanent clause; returns False once the database is unsatisfiable."""
        if self.trail_lim:
            self._cancel_until(0)
        internal = set()
        for lit in lits:
            if lit == 0 or not isinstance(lit, int):
                raise ValueError(f"invalid literal {lit!r}")
            v = abs(lit)
            if v > self.nvars:
                raise ValueError(f"literal {lit} exceeds allocated variables ({self.nvars})")
            internal.add(2 * v if lit > 0 else 2 * v + 1)
        if not self.ok:
            return False
        val = self.val
        c = []
        for x in sorted(internal):
            if x ^ 1 in internal or val[x] == TRUE:
                return True
            if val[x] == UNASSIGNED:
                c.append(x)
        if not c:
            self.ok = False
            return False
        if len(c) == 1:
            self._enqueue(c[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self.clauses.append(c)
        self.watches[c[0]].append(c)
        self.watches[c[1]].append(c)
        return True

    def add_clauses(self, clauses: Iterable[Sequence[int]]) -> bool:
        for c in clauses:
            self.add_clause(c)
        return self.ok

    # -- core -------------------------------------------------------------

    def _enqueue(self, x: int, reason) -> None:
        self.val[x] = TRUE
        self.val[x ^ 1] = FALSE
        v = x >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(x)

    def _propagate(self):
        val = self.val
        watches = self.watches
        trail = self.trail
        level = self.level
        reason = self.reason
        lvl = len(self.trail_lim)
        props = 0
        while self.qhead < len(trail):
            false_lit = trail[self.qhead] ^ 1
            self.qhead += 1
            props += 1
            ws = watches[false_lit]
            i = j = 0
            end = len(ws)
            while i < end:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if val[first] == TRUE:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if val[lk] != FALSE:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if val[first] == FALSE:
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.stats["propagations"] += props
                        return c
                    val[first] = TRUE
                    val[first ^ 1] = FALSE
                    v = first >> 1
                    level[v] = lvl
                    reason[v] = c
                    trail.append(first)
            del ws[j:]
        self.stats["propagations"] += props
        return None

    def _bump(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for u in range(1, self.nvars + 1):
                act[u] *= 1e-100
            self.var_inc *= 1e-100
            self._rebuild_heap()
        elif self.val[2 * v] == UNASSIGNED:
            heapq.heappush(self.heap, (-act[v], v))

    def _rebuild_heap(self) -> None:
        act = self.activity
        val = self.val
        self.heap = [(-act[v], v) for v in range(1, self.nvars + 1) if val[2 * v] == UNASSIGNED]
        heapq.heapify(self.heap)

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = self.seen
        level = self.level
        reason = self.reason
        trail = self.trail
        cur = len(self.trail_lim)
        learnt = [0]
        pending = 0
        p = -1
        idx = len(trail) - 1
        while True:
            for q in confl:
                if q == p:
                    continue
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if level[v] >= cur:
                        pending += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            v = p >> 1
            seen[v] = False
            pending -= 1
            if pending == 0:
                break
            confl = reason[v]
        learnt[0] = p ^ 1

        # local minimization: drop literals implied by other learnt literals
        kept = [learnt[0]]
        for q in learnt[1:]:
            r = reason[q >> 1]
            if r is None or any(not seen[x >> 1] and level[x >> 1] > 0 for x in r if x != q ^ 1):
                kept.append(q)
        for q in learnt[1:]:
            seen[q >> 1] = False

        if len(kept) == 1:
            return kept, 0
        best = 1
        for k in range(2, len(kept)):
            if level[kept[k] >> 1] > level[kept[best] >> 1]:
                best = k
        kept[1], kept[best] = kept[best], kept[1]
        return kept, level[kept[1] >> 1]

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        val = self.val
        phase = self.phase
        reason = self.reason
        act = self.activity
        heap = self.heap
        start = self.trail_lim[lvl]
        for x in self.trail[start:]:
            v = x >> 1
            val[x] = UNASSIGNED
            val[x ^ 1] = UNASSIGNED
            phase[v] = not (x & 1)
            reason[v] = None
            heapq.heappush(heap, (-act[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = start
        if len(heap) > 8 * self.nvars + 1024:
            self._rebuild_heap()

    def _pick_branch(self) -> int:
        heap = self.heap
        val = self.val
        act = self.activity
        while heap:
            neg, v = heapq.heappop(heap)
            if val[2 * v] == UNASSIGNED and -neg == act[v]:
                return 2 * v if self.phase[v] else 2 * v + 1
        for v in range(1, self.nvars + 1):
            if val[2 * v] == UNASSIGNED:
                return 2 * v if self.phase[v] else 2 * v + 1
        return -1

    def _lbd(self, lits: list[int]) -> int:
        level = self.level
        return len({level[x >> 1] for x in lits})

    def _reduce_db(self) -> None:
        """Keep the better half of the learnts; called at decision level 0."""
        lbd = self.lbd
        ranked = sorted(self.learnts, key=lambda c: (lbd.get(id(c), 99), len(c)))
        keep = ranked[: len(ranked) // 2]
        keep += [c for c in ranked[len(ranked) // 2 :] if lbd.get(id(c), 99) <= 2]
        self.learnts = keep
        self.lbd = {id(c): lbd[id(c)] for c in keep if id(c) in lbd}
        watches = [[] for _ in range(2 * self.nvars + 2)]
        val = self.val
        for c in self.clauses + keep:
            # level-0 propagation is complete here, so watching the first two is sound
            # as long as satisfied clauses keep a true literal watched
            if val[c[0]] == FALSE or val[c[1]] == FALSE:
                c.sort(key=lambda x: val[x] == FALSE)
            watches[c[0]].append(c)
            watches[c[1]].append(c)
        self.watches = watches
        self.max_learnts = int(self.max_learnts * 1.1)

    def solve(self, assumptions: Sequence[int] = (), conflict_limit: int | None = None) -> bool | None:
        self.stats["solves"] += 1
        self.model = None
        if not self.ok:
            return False
        self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return False
        assume = []
        for lit in assumptions:
            v = abs(lit)
            if lit == 0 or v > self.nvars:
                raise ValueError(f"invalid assumption {lit}")
            assume.append(2 * v if lit > 0 else 2 * v + 1)

        conflicts = 0
        restart = 0
        budget = _luby(restart) * self.restart_base
        stats = self.stats
        while True:
            confl = self._propagate()
            if confl is not None:
                conflicts += 1
                stats["conflicts"] += 1
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self.learnts.append(learnt)
                    self.lbd[id(learnt)] = self._lbd(learnt)
                    self.watches[learnt[0]].append(learnt)
                    self.watches[learnt[1]].append(learnt)
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= self.var_decay
                if conflict_limit is not None and conflicts >= conflict_limit:
                    self._cancel_until(0)
                    return None
                continue

            if conflicts >= budget:
                restart += 1
                stats["restarts"] += 1
                budget = conflicts + _luby(restart) * self.restart_base
                self._cancel_until(0)
                if len(self.learnts) > self.max_learnts:
                    self._reduce_db()
                continue

            lvl = len(self.trail_lim)
            if lvl < len(assume):
                x = assume[lvl]
                if self.val[x] == TRUE:
                    self.trail_lim.append(len(self.trail))
                    continue
                if self.val[x] == FALSE:
                    self._cancel_until(0)
                    return False
            else:
                x = self._pick_branch()
                if x < 0:
                    val = self.val
                    self.model = [False] + [val[2 * v] == TRUE for v in range(1, self.nvars + 1)]
                    self._cancel_until(0)
                    return True
                stats["decisions"] += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(x, None)

    # -- models -----------------------------------------------------------

    def value(self, lit: int) -> bool:
        if self.model is None:
            raise RuntimeError("no model: last solve was not satisfiable")
        v = self.model[abs(lit)]
        return v if lit > 0 else not v

    def values(self, lits: Iterable[int]) -> list[bool]:
        return [self.value(lit) for lit in lits]

    def enumerate_models(self, projection: Sequence[int], limit: int | None = None, assumptions: Sequence[int] = ()) -> "ModelEnumeration":
        return ModelEnumeration(self, projection, limit, assumptions)


class ModelEnumeration:
    """Distinct projected models, each blocked after it is reported.

    Blocking clauses hang off a fresh activation literal that is retired at
    the end, so the solver stays usable for unrelated queries.  After
    iteration ``complete`` says whether every model was seen.
    """

    def __init__(self, solver: Solver, projection: Sequence[int], limit: int | None, assumptions: Sequence[int] = ()):
        if not projection:
            raise ValueError("projection must be nonempty")
        self.solver = solver
        self.projection = list(projection)
        self.limit = limit
        self.assumptions = list(assumptions)
        self.count = 0
        self.complete = False

    def __iter__(self) -> Iterator[tuple[bool, ...]]:
        s = self.solver
        act = s.new_var()
        try:
            while self.limit is None or self.count < self.limit:
                if not s.solve([act] + self.assumptions):
                    self.complete = True
                    return
                model = tuple(s.value(v) for v in self.projection)
                self.count += 1
                yield model
                s.add_clause([-act] + [-v if b else v for v, b in zip(self.projection, model)])
            self.complete = not s.solve([act] + self.assumptions)
        finally:
            s.add_clause([-act])

    def run(self) -> "ModelEnumeration":
        for _ in self:
            pass
        return self
