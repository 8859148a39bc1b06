"""Clause databases, DIMACS files and the bridge to external tools."""

from __future__ import annotations

import os
import re
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .cdcl import Solver


@dataclass
class CnfFormula:
    var_count: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def new_var(self) -> int:
        self.var_count += 1
        return self.var_count

    def add_clause(self, lits: Iterable[int]) -> None:
        c = [int(x) for x in lits]
        for x in c:
            if x == 0 or abs(x) > self.var_count:
                raise ValueError(f"literal {x} out of range 1..{self.var_count}")
        self.clauses.append(c)

    def extend(self, clauses: Iterable[Sequence[int]]) -> None:
        for c in clauses:
            self.add_clause(c)

    def to_solver(self, solver: Solver | None = None) -> Solver:
        s = Solver() if solver is None else solver
        s.ensure_vars(self.var_count)
        s.add_clauses(self.clauses)
        return s

    def to_dimacs(self) -> str:
        lines = [f"c {c}" for c in self.comments]
        lines.append(f"p cnf {self.var_count} {len(self.clauses)}")
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    def export_dimacs(self, path: str | Path) -> None:
        Path(path).write_text(self.to_dimacs())

    @classmethod
    def from_dimacs(cls, text: str) -> "CnfFormula":
        f = cls()
        declared = None
        pending: list[int] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            if line.startswith("c"):
                f.comments.append(line[1:].strip())
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise ValueError(f"bad problem line {line!r}")
                f.var_count = int(parts[2])
                declared = int(parts[3])
                continue
            for tok in line.split():
                lit = int(tok)
                if lit == 0:
                    f.add_clause(pending)
                    pending = []
                else:
                    pending.append(lit)
        if pending:
            f.add_clause(pending)
        if declared is not None and declared != len(f.clauses):
            raise ValueError(f"header declares {declared} clauses, found {len(f.clauses)}")
        return f

    @classmethod
    def load(cls, path: str | Path) -> "CnfFormula":
        return cls.from_dimacs(Path(path).read_text())


def projected_vars(f: CnfFormula) -> list[int] | None:
    """Variables named by a ``c projected-vars`` comment, if any."""
    for c in f.comments:
        if c.startswith("projected-vars"):
            return [int(t) for t in c.split()[1:] if t != "0"]
    return None


# --------------------------------------------------------------------------
# external tools

SOLVER_ENV = "PATBREAK_SOLVER"
COUNTER_ENV = "PATBREAK_COUNTER"


class ExternalToolError(RuntimeError):
    pass


@dataclass
class ExternalResult:
    satisfiable: bool
    model: dict[int, bool] | None = None


def _run(executable: str, f: CnfFormula, timeout: float | None) -> str:
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "query.cnf"
        f.export_dimacs(path)
        try:
            proc = subprocess.run([*executable.split(), str(path)], capture_output=True, text=True, timeout=timeout)
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise ExternalToolError(f"could not run {executable!r}: {exc}") from exc
    return proc.stdout


def parse_solver_output(text: str) -> ExternalResult:
    status = None
    model: dict[int, bool] = {}
    for line in text.splitlines():
        if line.startswith("s "):
            word = line[2:].strip()
            if word == "SATISFIABLE":
                status = True
            elif word == "UNSATISFIABLE":
                status = False
        elif line.startswith("v "):
            for tok in line[2:].split():
                lit = int(tok)
                if lit:
                    model[abs(lit)] = lit > 0
    if status is None:
        raise ExternalToolError("solver output has no 's SATISFIABLE|UNSATISFIABLE' line")
    return ExternalResult(status, model if status else None)


def parse_count_output(text: str) -> int:
    """The model count: the last line that is a bare integer or ``s mc N``."""
    count = None
    for line in text.splitlines():
        line = line.strip()
        m = re.fullmatch(r"(?:s\s+(?:mc\s+)?)?(\d+)", line)
        if m:
            count = int(m.group(1))
    if count is None:
        raise ExternalToolError("counter output has no count line")
    return count


def external_solve(f: CnfFormula, executable: str | None = None, timeout: float | None = None) -> ExternalResult:
    exe = executable or os.environ.get(SOLVER_ENV)
    if not exe:
        raise ExternalToolError(f"no external solver configured (set {SOLVER_ENV})")
    return parse_solver_output(_run(exe, f, timeout))


def external_count(f: CnfFormula, executable: str | None = None, timeout: float | None = None) -> int:
    exe = executable or os.environ.get(COUNTER_ENV)
    if not exe:
        raise ExternalToolError(f"no external counter configured (set {COUNTER_ENV})")
    return parse_count_output(_run(exe, f, timeout))
