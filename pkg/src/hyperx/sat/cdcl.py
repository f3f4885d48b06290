"""A compact CDCL solver.

Literals are encoded internally as ``2*v`` (true) and ``2*v + 1`` (false).
Binary clauses live in their own implication lists; longer clauses use two
watched literals at positions 0 and 1.
"""

from __future__ import annotations

import heapq
import random
import time
from dataclasses import dataclass, field

from .cnf import check_model

SAT, UNSAT, TIMEOUT = "SAT", "UNSAT", "TIMEOUT"


@dataclass
class SolveResult:
    status: str
    model: list[int] | None = None
    stats: dict = field(default_factory=dict)

    @property
    def sat(self) -> bool:
        return self.status == SAT


def luby(i: int) -> int:
    """The i-th element (from 1) of the Luby sequence 1 1 2 1 1 2 4 ..."""
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


class _Unsat(Exception):
    pass


class Solver:
    def __init__(self, var_count: int, clauses, *, seed: int = 0,
                 restart_base: int = 100, decay: float = 0.95):
        self.n = var_count
        self.original = [list(c) for c in clauses]
        self.seed = seed
        self.restart_base = restart_base
        self.decay = decay
        size = 2 * (var_count + 1)
        self.val = [0] * size
        self.level = [0] * (var_count + 1)
        self.reason: list = [None] * (var_count + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.bins: list[list] = [[] for _ in range(size)]
        self.watches: list[list] = [[] for _ in range(size)]
        self.long_clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.lbd: dict[int, int] = {}
        self.cact: dict[int, float] = {}
        self.cla_inc = 1.0
        rng = random.Random(seed)
        # tiny random activities break ties reproducibly for a given seed
        self.act = [rng.random() * 1e-5 for _ in range(var_count + 1)]
        self.var_inc = 1.0
        self.phase = [False] * (var_count + 1)
        self.heap = [(-self.act[v], v) for v in range(1, var_count + 1)]
        heapq.heapify(self.heap)
        self.seen = bytearray(var_count + 1)
        self.stats = {"decisions": 0, "conflicts": 0, "propagations": 0, "restarts": 0, "learnts": 0}
        self.unsat = False
        try:
            for cl in self.original:
                self._add_input(cl)
        except _Unsat:
            self.unsat = True

    # -- setup --------------------------------------------------------------

    def _add_input(self, cl: list[int]):
        lits = set()
        for x in cl:
            if not 0 < abs(x) <= self.n:
                raise ValueError(f"literal {x} out of range")
            lit = 2 * x if x > 0 else -2 * x + 1
            if lit ^ 1 in lits:
                return
            lits.add(lit)
        val = self.val
        if any(val[lit] == 1 for lit in lits):
            return
        lits = sorted(lit for lit in lits if val[lit] != -1)
        if not lits:
            raise _Unsat
        if len(lits) == 1:
            self._assign(lits[0], None)
            if self._propagate() is not None:
                raise _Unsat
        elif len(lits) == 2:
            self._add_binary(lits)
        else:
            self._attach(lits)
            self.long_clauses.append(lits)

    def _add_binary(self, c: list[int]):
        self.bins[c[0]].append((c[1], c))
        self.bins[c[1]].append((c[0], c))

    def _attach(self, c: list[int]):
        self.watches[c[0]].append(c)
        self.watches[c[1]].append(c)

    # -- core ---------------------------------------------------------------

    def _assign(self, lit: int, reason):
        self.val[lit] = 1
        self.val[lit ^ 1] = -1
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self):
        val, trail, bins, watches = self.val, self.trail, self.bins, self.watches
        level, reason = self.level, self.reason
        dl = len(self.trail_lim)
        props = 0
        confl = None
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            props += 1
            false_lit = p ^ 1
            for other, cl in bins[false_lit]:
                vo = val[other]
                if vo == 1:
                    continue
                if vo == -1:
                    confl = cl
                    break
                val[other] = 1
                val[other ^ 1] = -1
                level[other >> 1] = dl
                reason[other >> 1] = cl
                trail.append(other)
            if confl is not None:
                break
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if val[first] == 1:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if val[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if val[first] == -1:
                        confl = c
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        break
                    val[first] = 1
                    val[first ^ 1] = -1
                    level[first >> 1] = dl
                    reason[first >> 1] = c
                    trail.append(first)
            del ws[j:]
            if confl is not None:
                break
        self.stats["propagations"] += props
        return confl

    def _bump_var(self, v: int):
        a = self.act[v] + self.var_inc
        self.act[v] = a
        if a > 1e100:
            self.act = [x * 1e-100 for x in self.act]
            self.var_inc *= 1e-100
            self.heap = [(-self.act[u], u) for u in range(1, self.n + 1) if not self.val[2 * u]]
            heapq.heapify(self.heap)
        elif not self.val[2 * v]:
            heapq.heappush(self.heap, (-a, v))

    def _analyze(self, confl):
        seen, level, reason, trail = self.seen, self.level, self.reason, self.trail
        dl = len(self.trail_lim)
        learnt = [0]
        path = 0
        p = -1
        idx = len(trail) - 1
        cl = confl
        while True:
            cid = id(cl)
            if cid in self.cact:
                self.cact[cid] += self.cla_inc
            for q in cl:
                if q == p:
                    continue
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    self._bump_var(v)
                    if level[v] >= dl:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            v = p >> 1
            cl = reason[v]
            seen[v] = 0
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1
        # drop literals implied by the rest of the clause
        keep = [learnt[0]]
        for q in learnt[1:]:
            r = reason[q >> 1]
            if r is None or any(not seen[x >> 1] and level[x >> 1] > 0 for x in r if x != q ^ 1):
                keep.append(q)
        for q in learnt[1:]:
            seen[q >> 1] = 0
        if len(keep) == 1:
            return keep, 0
        best = max(range(1, len(keep)), key=lambda t: level[keep[t] >> 1])
        keep[1], keep[best] = keep[best], keep[1]
        return keep, level[keep[1] >> 1]

    def _backtrack(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        val, phase, act, heap = self.val, self.phase, self.act, self.heap
        start = self.trail_lim[lvl]
        for lit in self.trail[start:]:
            v = lit >> 1
            val[lit] = 0
            val[lit ^ 1] = 0
            self.reason[v] = None
            phase[v] = not (lit & 1)
            heapq.heappush(heap, (-act[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = start

    def _pick(self) -> int:
        if len(self.heap) > 8 * self.n + 64:
            self.heap = [(-self.act[u], u) for u in range(1, self.n + 1) if not self.val[2 * u]]
            heapq.heapify(self.heap)
        heap, val = self.heap, self.val
        while heap:
            _, v = heapq.heappop(heap)
            if not val[2 * v]:
                return 2 * v if self.phase[v] else 2 * v + 1
        return -1

    def _clause_lbd(self, c) -> int:
        level = self.level
        return len({level[x >> 1] for x in c})

    def _reduce(self):
        reason = self.reason
        locked = set()
        for c in self.learnts:
            v = c[0] >> 1
            if reason[v] is c:
                locked.add(id(c))
        ranked = sorted(self.learnts, key=lambda c: (self.lbd[id(c)] > 2, -self.cact[id(c)]))
        half = len(ranked) // 2
        kept = []
        for t, c in enumerate(ranked):
            cid = id(c)
            if t < half or self.lbd[cid] <= 2 or cid in locked:
                kept.append(c)
            else:
                del self.lbd[cid]
                del self.cact[cid]
        self.learnts = kept
        self.watches = [[] for _ in range(len(self.watches))]
        for c in self.long_clauses:
            self._attach(c)
        for c in kept:
            self._attach(c)

    # -- driver -------------------------------------------------------------

    def solve(self, *, conflict_limit: int | None = None, time_limit: float | None = None) -> SolveResult:
        t0 = time.monotonic()
        stats = self.stats
        if self.unsat:
            return self._result(UNSAT, t0)
        if self._propagate() is not None:
            return self._result(UNSAT, t0)
        restart_no = 1
        next_restart = self.restart_base * luby(restart_no)
        since_restart = 0
        next_reduce = 2000
        while True:
            confl = self._propagate()
            if confl is not None:
                stats["conflicts"] += 1
                since_restart += 1
                if not self.trail_lim:
                    return self._result(UNSAT, t0)
                learnt, back = self._analyze(confl)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._assign(learnt[0], None)
                elif len(learnt) == 2:
                    self._add_binary(learnt)
                    self._assign(learnt[0], learnt)
                else:
                    self._attach(learnt)
                    self.learnts.append(learnt)
                    self.lbd[id(learnt)] = self._clause_lbd(learnt)
                    self.cact[id(learnt)] = self.cla_inc
                    self._assign(learnt[0], learnt)
                stats["learnts"] += 1
                self.var_inc /= self.decay
                self.cla_inc /= 0.999
                if self.cla_inc > 1e20:
                    for k in self.cact:
                        self.cact[k] *= 1e-20
                    self.cla_inc *= 1e-20
                if conflict_limit is not None and stats["conflicts"] >= conflict_limit:
                    return self._result(TIMEOUT, t0)
                if time_limit is not None and stats["conflicts"] % 64 == 0 and time.monotonic() - t0 > time_limit:
                    return self._result(TIMEOUT, t0)
                continue
            if since_restart >= next_restart:
                stats["restarts"] += 1
                restart_no += 1
                next_restart = self.restart_base * luby(restart_no)
                since_restart = 0
                self._backtrack(0)
            if len(self.learnts) >= next_reduce:
                self._reduce()
                next_reduce += 500
            lit = self._pick()
            if lit < 0:
                return self._model_result(t0)
            stats["decisions"] += 1
            self.trail_lim.append(len(self.trail))
            self._assign(lit, None)

    def _model_result(self, t0) -> SolveResult:
        model = [v if self.val[2 * v] == 1 else -v for v in range(1, self.n + 1)]
        if not check_model(self.original, model):
            raise AssertionError("solver produced a model that violates the formula")
        return self._result(SAT, t0, model)

    def _result(self, status, t0, model=None) -> SolveResult:
        stats = dict(self.stats)
        stats["wall_time"] = time.monotonic() - t0
        return SolveResult(status, model, stats)


def solve_clauses(var_count: int, clauses, *, seed: int = 0, conflict_limit: int | None = None,
                  time_limit: float | None = None) -> SolveResult:
    return Solver(var_count, clauses, seed=seed).solve(conflict_limit=conflict_limit, time_limit=time_limit)


def solve(f, *, seed: int = 0, conflict_limit: int | None = None, time_limit: float | None = None) -> SolveResult:
    """Solve a CnfFormula with the built-in engine."""
    return solve_clauses(f.var_count, f.clauses, seed=seed, conflict_limit=conflict_limit,
                         time_limit=time_limit)
