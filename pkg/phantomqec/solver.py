"""
Phantom QEC Toolkit - Solver Module

SAT solver drivers. A SolverHandle either pipes DIMACS to an external binary that
speaks the SAT-competition output format, or runs the built-in CDCL engine
(two-watched literals, first-UIP learning, VSIDS-style activities, Luby restarts,
phase saving), which is sized for instances of a few thousand variables.
"""

from mylogger import logger
from dataclasses import dataclass, field
from datetime import datetime
from heapq import heapify, heappop, heappush
from typing import Any, Dict, List, Optional, Sequence, Tuple
import os
import subprocess
import tempfile
import time

from .config import QecConfig, default_config
from .enums import SolveStatus, SolverMode, SolverState


logger.info("Loading solver module")


@dataclass
class SolveResult:
    """
    Outcome of one solve.

    Attributes:
        status: SAT / UNSAT / TIMEOUT / UNKNOWN
        model: Signed literals of a satisfying assignment (SAT only)
        seconds: Wall time
    """
    status: SolveStatus
    model: List[int] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def is_sat(self) -> bool:
        return self.status == SolveStatus.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status == SolveStatus.UNSAT

    def value(self, var: int) -> bool:
        """Truth value of a variable in the model (unset variables read False)."""
        if not hasattr(self, "_lookup"):
            self._lookup = {abs(lit): lit > 0 for lit in self.model}
        return self._lookup.get(var, False)


def dimacs_text(num_vars: int, clauses: Sequence[Sequence[int]]) -> str:
    """DIMACS CNF: 'p cnf V C' header and zero-terminated clauses."""
    lines = [f"p cnf {num_vars} {len(clauses)}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in clauses)
    return "\n".join(lines) + "\n"


def parse_solver_output(text: str) -> Tuple[SolveStatus, List[int]]:
    """
    Parse SAT-competition solver output.

    Returns:
        (status, model literals)

    Raises:
        RuntimeError: If no status line is present
    """
    status: Optional[SolveStatus] = None
    model: List[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if word == "SATISFIABLE":
                status = SolveStatus.SAT
            elif word == "UNSATISFIABLE":
                status = SolveStatus.UNSAT
            else:
                status = SolveStatus.UNKNOWN
        elif line.startswith("v "):
            for token in line[2:].split():
                value = int(token)
                if value:
                    model.append(value)
    if status is None:
        raise RuntimeError("Malformed solver output: no 's' status line")
    return status, model


# =============================================================================
# BUILT-IN CDCL ENGINE
# =============================================================================

def _luby(i: int) -> int:
    """i-th term (1-based) of the Luby sequence 1,1,2,1,1,2,4,..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class CdclSolver:
    """
    Conflict-driven clause-learning solver over integer literals.

    Example:
        >>> CdclSolver(2, [[1, 2], [-1], [-2, 1]]).solve()
        False
    """

    RESTART_BASE = 100
    VAR_DECAY = 0.95

    def __init__(self, num_vars: int, clauses: Sequence[Sequence[int]]):
        self.num_vars = num_vars
        self.clauses: List[List[int]] = []
        self.watches: List[List[int]] = [[] for _ in range(2 * num_vars + 2)]
        self.assign = [0] * (num_vars + 1)
        self.level = [0] * (num_vars + 1)
        self.reason: List[Optional[int]] = [None] * (num_vars + 1)
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.activity = [0.0] * (num_vars + 1)
        self.var_inc = 1.0
        self.saved_phase = [False] * (num_vars + 1)
        self.heap = [(0.0, v) for v in range(1, num_vars + 1)]
        heapify(self.heap)
        self.ok = True
        self.conflicts = 0
        self.decisions = 0
        for clause in clauses:
            if not self.ok:
                break
            self._add_input_clause(clause)

    @staticmethod
    def _code(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def _value(self, lit: int) -> int:
        v = self.assign[abs(lit)]
        return v if lit > 0 else -v

    def _add_input_clause(self, clause: Sequence[int]) -> None:
        lits: List[int] = []
        for lit in clause:
            if lit == 0 or abs(lit) > self.num_vars:
                raise ValueError(f"Literal {lit} outside 1..{self.num_vars}")
            if -lit in lits:
                return
            if lit not in lits:
                lits.append(lit)
        if not lits:
            self.ok = False
        elif len(lits) == 1:
            value = self._value(lits[0])
            if value == -1:
                self.ok = False
            elif value == 0:
                self._enqueue(lits[0], None)
        else:
            index = len(self.clauses)
            self.clauses.append(lits)
            self.watches[self._code(lits[0])].append(index)
            self.watches[self._code(lits[1])].append(index)

    def _enqueue(self, lit: int, reason: Optional[int]) -> None:
        v = abs(lit)
        self.assign[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> Optional[int]:
        clauses, watches, assign = self.clauses, self.watches, self.assign
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            ws = watches[self._code(false_lit)]
            i = j = 0
            end = len(ws)
            while i < end:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = assign[abs(first)]
                if (fv if first > 0 else -fv) == 1:
                    ws[j] = ci
                    j += 1
                    continue
                moved = False
                for kk in range(2, len(c)):
                    lit = c[kk]
                    lv = assign[abs(lit)]
                    if (lv if lit > 0 else -lv) != -1:
                        c[1], c[kk] = lit, c[1]
                        watches[self._code(lit)].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = ci
                j += 1
                if (fv if first > 0 else -fv) == -1:
                    while i < end:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    return ci
                self._enqueue(first, ci)
            del ws[j:]
        return None

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.num_vars + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.num_vars + 1)
                         if self.assign[u] == 0]
            heapify(self.heap)
        elif self.assign[v] == 0:
            heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, conflict: int) -> Tuple[List[int], int]:
        seen = [False] * (self.num_vars + 1)
        learnt: List[int] = [0]
        current = len(self.trail_lim)
        counter = 0
        p: Optional[int] = None
        index = len(self.trail) - 1
        clause = self.clauses[conflict]
        while True:
            for q in (clause if p is None else clause[1:]):
                v = abs(q)
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if self.level[v] >= current:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[index])]:
                index -= 1
            p = self.trail[index]
            index -= 1
            v = abs(p)
            seen[v] = False
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[v]]
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        best = 1
        for i in range(2, len(learnt)):
            if self.level[abs(learnt[i])] > self.level[abs(learnt[best])]:
                best = i
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _cancel_until(self, target: int) -> None:
        if len(self.trail_lim) <= target:
            return
        start = self.trail_lim[target]
        for lit in self.trail[start:]:
            v = abs(lit)
            self.saved_phase[v] = lit > 0
            self.assign[v] = 0
            self.reason[v] = None
            heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.trail_lim[target:]
        self.qhead = len(self.trail)

    def _pick_branch(self) -> Optional[int]:
        while self.heap:
            negative, v = heappop(self.heap)
            if self.assign[v] == 0 and -negative == self.activity[v]:
                return v
        for v in range(1, self.num_vars + 1):
            if self.assign[v] == 0:
                return v
        return None

    def solve(self, timeout: Optional[float] = None) -> bool:
        """
        Run the search.

        Args:
            timeout: Seconds before giving up

        Returns:
            bool: True if satisfiable (model via .model()), False if unsatisfiable

        Raises:
            TimeoutError: When the time budget is exhausted
        """
        if not self.ok or self._propagate() is not None:
            return False
        deadline = None if timeout is None else time.monotonic() + timeout
        restart_count = 1
        restart_limit = self.RESTART_BASE * _luby(restart_count)
        conflicts_since_restart = 0
        steps = 0
        while True:
            conflict = self._propagate()
            steps += 1
            if deadline is not None and steps % 512 == 0 and time.monotonic() > deadline:
                raise TimeoutError("internal solver timed out")
            if conflict is not None:
                self.conflicts += 1
                conflicts_since_restart += 1
                if not self.trail_lim:
                    return False
                learnt, back_level = self._analyze(conflict)
                self._cancel_until(back_level)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    index = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[self._code(learnt[0])].append(index)
                    self.watches[self._code(learnt[1])].append(index)
                    self._enqueue(learnt[0], index)
                self.var_inc /= self.VAR_DECAY
                if conflicts_since_restart >= restart_limit:
                    restart_count += 1
                    restart_limit = self.RESTART_BASE * _luby(restart_count)
                    conflicts_since_restart = 0
                    self._cancel_until(0)
            else:
                v = self._pick_branch()
                if v is None:
                    return True
                self.decisions += 1
                self.trail_lim.append(len(self.trail))
                self._enqueue(v if self.saved_phase[v] else -v, None)

    def model(self) -> List[int]:
        """Signed literals for all variables (unassigned read False)."""
        return [v if self.assign[v] > 0 else -v for v in range(1, self.num_vars + 1)]


# =============================================================================
# SOLVER HANDLE
# =============================================================================

class SolverHandle:
    """
    Handle on a SAT backend.

    Attributes:
        mode (SolverMode): EXTERNAL or INTERNAL
        path (str): External binary (EXTERNAL mode)
        args (List[str]): Extra external arguments
        timeout (float): Seconds per solve
        state (SolverState): Lifecycle state

    Example:
        >>> handle = SolverHandle.internal(timeout=60)
        >>> handle.solve(1, [[1]]).status
        SolveStatus.SAT
    """

    def __init__(self, mode: SolverMode = SolverMode.INTERNAL, path: str = "",
                 args: Optional[List[str]] = None, timeout: float = 600.0):
        self.mode = mode
        self.path = path
        self.args: List[str] = list(args or [])
        self.timeout = timeout
        self.state = SolverState.IDLE

        self._solve_count = 0
        self._status_counts: Dict[str, int] = {status.value: 0 for status in SolveStatus}
        self._total_seconds = 0.0
        self._last_solve_time: Optional[datetime] = None
        self._last_error: Optional[str] = None

        logger.debug(f"SolverHandle created in {mode} mode")

    @classmethod
    def internal(cls, timeout: float = 600.0) -> 'SolverHandle':
        return cls(SolverMode.INTERNAL, timeout=timeout)

    @classmethod
    def external(cls, path: str, args: Optional[List[str]] = None, timeout: float = 600.0) -> 'SolverHandle':
        return cls(SolverMode.EXTERNAL, path=path, args=args, timeout=timeout)

    @classmethod
    def from_config(cls, config: Optional[QecConfig] = None, explicit_path: Optional[str] = None,
                    force_internal: bool = False) -> 'SolverHandle':
        """
        Resolve the backend: explicit path, then config, then environment, then internal.
        """
        config = config or default_config
        path = None if force_internal else config.resolve_solver(explicit_path)
        if path:
            return cls.external(path, config.resolve_solver_args(), config.solver_timeout)
        return cls.internal(config.solver_timeout)

    # =============================================================================
    # SOLVING
    # =============================================================================

    def solve(self, num_vars: int, clauses: Sequence[Sequence[int]]) -> SolveResult:
        """
        Solve a CNF.

        Args:
            num_vars: Variable count
            clauses: Clause list of nonzero signed integers

        Returns:
            SolveResult; timeouts come back as status TIMEOUT

        Raises:
            RuntimeError: If the external solver is missing or its output is malformed
        """
        self.state = SolverState.RUNNING
        self._solve_count += 1
        started = time.monotonic()
        try:
            if self.mode == SolverMode.EXTERNAL:
                status, model = self._solve_external(num_vars, clauses)
            else:
                status, model = self._solve_internal(num_vars, clauses)
            self.state = SolverState.IDLE
        except TimeoutError:
            status, model = SolveStatus.TIMEOUT, []
            self.state = SolverState.IDLE
            logger.warning(f"Solve timed out after {self.timeout}s")
        except Exception as e:
            self.state = SolverState.FAILED
            self._last_error = str(e)
            logger.error(f"Solver failure: {e}")
            raise
        seconds = time.monotonic() - started
        self._total_seconds += seconds
        self._last_solve_time = datetime.now()
        self._status_counts[status.value] += 1
        logger.debug(f"Solved {num_vars} vars / {len(clauses)} clauses: {status} in {seconds:.2f}s")
        return SolveResult(status, model, seconds)

    def _solve_internal(self, num_vars: int, clauses: Sequence[Sequence[int]]) -> Tuple[SolveStatus, List[int]]:
        engine = CdclSolver(num_vars, clauses)
        if engine.solve(self.timeout):
            return SolveStatus.SAT, engine.model()
        return SolveStatus.UNSAT, []

    def _solve_external(self, num_vars: int, clauses: Sequence[Sequence[int]]) -> Tuple[SolveStatus, List[int]]:
        if not self.path or not (os.path.exists(self.path) or os.path.sep not in self.path):
            raise RuntimeError(f"External solver not found: {self.path!r}")
        with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as handle:
            handle.write(dimacs_text(num_vars, clauses))
            cnf_path = handle.name
        try:
            proc = subprocess.run([self.path, *self.args, cnf_path], capture_output=True,
                                  text=True, timeout=self.timeout)
        except subprocess.TimeoutExpired as e:
            raise TimeoutError(str(e)) from e
        except FileNotFoundError as e:
            raise RuntimeError(f"External solver not found: {self.path!r}") from e
        finally:
            os.unlink(cnf_path)
        return parse_solver_output(proc.stdout)

    # =============================================================================
    # STATISTICS
    # =============================================================================

    def get_statistics(self) -> Dict[str, Any]:
        """Solve counters, per-status totals and cumulative time."""
        return {
            "mode": self.mode.value,
            "path": self.path,
            "solves": self._solve_count,
            "status_counts": dict(self._status_counts),
            "total_seconds": self._total_seconds,
            "last_solve_time": self._last_solve_time.isoformat() if self._last_solve_time else None,
            "last_error": self._last_error,
        }

    def reset_statistics(self) -> None:
        self._solve_count = 0
        self._status_counts = {status.value: 0 for status in SolveStatus}
        self._total_seconds = 0.0
        self._last_error = None

    def __repr__(self) -> str:
        target = self.path if self.mode == SolverMode.EXTERNAL else "built-in"
        return f"SolverHandle({self.mode.value}, {target}, timeout={self.timeout})"
