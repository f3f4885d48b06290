"""Rectangles, coverings, fooling pairs and non-SAT upper bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .hypersimplex import SlackMatrix, g_pattern_matrix, slack_matrix_standard


class MatrixMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Rectangle:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(set(self.rows))))
        object.__setattr__(self, "cols", tuple(sorted(set(self.cols))))

    def cells(self) -> Iterator[tuple[int, int]]:
        for i in self.rows:
            for j in self.cols:
                yield i, j

    def __len__(self):
        return len(self.rows) * len(self.cols)

    def is_valid_for(self, S: SlackMatrix) -> bool:
        P = S.pattern
        return all(P[i][j] for i in self.rows for j in self.cols)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


@dataclass(frozen=True)
class Covering:
    """A canonical (sorted, deduplicated, no empty rectangles) set of rectangles."""

    rectangles: tuple[Rectangle, ...]
    matrix_ref: str = ""

    def __post_init__(self):
        rects = sorted({r for r in self.rectangles if r.rows and r.cols})
        object.__setattr__(self, "rectangles", tuple(rects))

    @property
    def size(self) -> int:
        return len(self.rectangles)

    def __len__(self):
        return len(self.rectangles)

    def __iter__(self):
        return iter(self.rectangles)

    def to_json(self) -> dict:
        return {"matrix": self.matrix_ref, "rectangles": [r.to_json() for r in self.rectangles]}

    @classmethod
    def from_json(cls, data: dict) -> "Covering":
        rects = tuple(Rectangle(tuple(r["rows"]), tuple(r["cols"])) for r in data["rectangles"])
        return cls(rects, data.get("matrix", ""))


@dataclass(frozen=True)
class FoolingPair:
    first: tuple[int, int]
    second: tuple[int, int]


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    violation: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_cover(S: SlackMatrix, c: Covering, *, check_ref: bool = True) -> CoverCheck:
    """Check that every rectangle lies in the support and their union is the support."""
    if check_ref and c.matrix_ref and c.matrix_ref != S.matrix_id:
        raise MatrixMismatch(f"covering is for {c.matrix_ref!r}, matrix is {S.matrix_id!r}")
    P = S.pattern
    covered = [[False] * S.ncols for _ in range(S.nrows)]
    for rect in c.rectangles:
        if rect.rows[-1] >= S.nrows or rect.cols[-1] >= S.ncols or rect.rows[0] < 0 or rect.cols[0] < 0:
            raise ValueError(f"rectangle {rect} exceeds the {S.nrows}x{S.ncols} matrix")
        for i in rect.rows:
            for j in rect.cols:
                if not P[i][j]:
                    return CoverCheck(False, (i, j), "rectangle contains a zero entry")
                covered[i][j] = True
    for i in range(S.nrows):
        for j in range(S.ncols):
            if P[i][j] and not covered[i][j]:
                return CoverCheck(False, (i, j), "positive entry not covered")
    return CoverCheck(True)


def is_fooling(P, a: tuple[int, int], b: tuple[int, int]) -> bool:
    (i, j), (i2, j2) = a, b
    return P[i][j] and P[i2][j2] and not (P[i][j2] and P[i2][j])


def fooling_index_pairs(S: SlackMatrix, cells: Sequence[tuple[int, int]] | None = None) -> list[tuple[int, int]]:
    """Index pairs (a < b) into ``cells`` (default: the support) that cannot share a rectangle."""
    P = S.pattern
    cells = S.support() if cells is None else list(cells)
    out = []
    for a in range(len(cells)):
        i, j = cells[a]
        Pi = P[i]
        for b in range(a + 1, len(cells)):
            i2, j2 = cells[b]
            if not (Pi[j2] and P[i2][j]):
                out.append((a, b))
    return out


def fooling_pairs(S: SlackMatrix) -> list[FoolingPair]:
    cells = S.support()
    return [FoolingPair(cells[a], cells[b]) for a, b in fooling_index_pairs(S, cells)]


def large_fooling_set(S: SlackMatrix, cells=None, pairs=None) -> list[int]:
    """A large set of pairwise fooling support cells (indices into ``cells``).

    Greedy clique growth from every start cell, keeping the largest; the
    result is deterministic and is a lower bound on rc.
    """
    cells = S.support() if cells is None else cells
    if pairs is None:
        pairs = fooling_index_pairs(S, cells)
    adj: list[set[int]] = [set() for _ in cells]
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    best: list[int] = []
    for start in range(len(cells)):
        if len(adj[start]) + 1 <= len(best):
            continue
        chosen = [start]
        cand = set(adj[start])
        while cand:
            nxt = max(sorted(cand), key=lambda x: len(adj[x] & cand))
            chosen.append(nxt)
            cand &= adj[nxt]
        if len(chosen) > len(best):
            best = chosen
    return best


def row_cover(S: SlackMatrix) -> Covering:
    P = S.pattern
    rects = [Rectangle((i,), tuple(j for j, v in enumerate(P[i]) if v)) for i in range(S.nrows)]
    return Covering(tuple(rects), S.matrix_id)


def column_cover(S: SlackMatrix) -> Covering:
    P = S.pattern
    rects = [Rectangle(tuple(i for i in range(S.nrows) if P[i][j]), (j,)) for j in range(S.ncols)]
    return Covering(tuple(rects), S.matrix_id)


def _grow(P, seed: tuple[int, int], uncovered: set, col_first: bool) -> Rectangle:
    nrows, ncols = len(P), len(P[0])
    rows, cols = {seed[0]}, {seed[1]}
    while True:
        best, best_gain = None, 0
        order = ("c", "r") if col_first else ("r", "c")
        for kind in order:
            if kind == "c":
                for c in range(ncols):
                    if c in cols or not all(P[r][c] for r in rows):
                        continue
                    gain = sum((r, c) in uncovered for r in rows)
                    if gain > best_gain:
                        best, best_gain = ("c", c), gain
            else:
                for r in range(nrows):
                    if r in rows or not all(P[r][c] for c in cols):
                        continue
                    gain = sum((r, c) in uncovered for c in cols)
                    if gain > best_gain:
                        best, best_gain = ("r", r), gain
        if best is None:
            break
        (rows if best[0] == "r" else cols).add(best[1])
    # make maximal
    changed = True
    while changed:
        changed = False
        for c in range(ncols):
            if c not in cols and all(P[r][c] for r in rows):
                cols.add(c)
                changed = True
        for r in range(nrows):
            if r not in rows and all(P[r][c] for c in cols):
                rows.add(r)
                changed = True
    return Rectangle(tuple(rows), tuple(cols))


def greedy_cover(S: SlackMatrix) -> Covering:
    """Cover by maximal rectangles grown from the first uncovered cell.

    Never worse than the trivial one-rectangle-per-row (or per-column) cover.
    """
    P = S.pattern
    uncovered = set(S.support())
    rects = []
    while uncovered:
        seed = min(uncovered)
        a = _grow(P, seed, uncovered, col_first=False)
        b = _grow(P, seed, uncovered, col_first=True)
        gain_a = sum(cell in uncovered for cell in a.cells())
        gain_b = sum(cell in uncovered for cell in b.cells())
        rect = a if gain_a >= gain_b else b
        rects.append(rect)
        uncovered.difference_update(rect.cells())
    cover = prune_cover(Covering(tuple(rects), S.matrix_id))
    baseline = min((row_cover(S), column_cover(S)), key=len)
    return cover if cover.size <= baseline.size else baseline


def prune_cover(c: Covering) -> Covering:
    """Drop rectangles whose cells are all covered by the remaining ones."""
    counts: dict[tuple[int, int], int] = {}
    for rect in c.rectangles:
        for cell in rect.cells():
            counts[cell] = counts.get(cell, 0) + 1
    kept = []
    for rect in sorted(c.rectangles, key=len):
        if all(counts[cell] > 1 for cell in rect.cells()):
            for cell in rect.cells():
                counts[cell] -= 1
        else:
            kept.append(rect)
    return Covering(tuple(kept), c.matrix_ref)


def random_batch_size(n: int, k: int) -> int:
    """ceil(e (k+1)^2 ln n), the per-batch rectangle count of the random construction."""
    return math.ceil(math.e * (k + 1) ** 2 * math.log(n))


@lru_cache(maxsize=32)
def _g_columns(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(n), n - k))


def subset_rectangle(n: int, k: int, I: Sequence[int]) -> Rectangle:
    """The maximal rectangle R_I = {(x, S) : x in I, I subset of S} of G(n, k)."""
    Iset = set(I)
    cols = tuple(j for j, S in enumerate(_g_columns(n, k)) if Iset.issubset(S))
    return Rectangle(tuple(sorted(Iset)), cols)


@dataclass
class RandomCover:
    covering: Covering | None
    batch_size: int
    batches_tried: int
    unpruned_size: int = 0
    seed: int = 0

    @property
    def success(self) -> bool:
        return self.covering is not None


def randomized_cover_gnk(n: int, k: int, trials: int, seed: int) -> RandomCover:
    """Random subset rectangles of G(n, k), each element kept with probability 1/(k+1).

    Each batch draws ``random_batch_size(n, k)`` rectangles from a generator
    seeded by ``(seed, batch)``; the first batch that covers G(n, k) is
    pruned and returned.
    """
    if not 2 <= k <= n - 2:
        raise ValueError(f"need 2 <= k <= n-2, got (n, k) = ({n}, {k})")
    S = g_pattern_matrix(n, k)
    need = set(S.support())
    r = random_batch_size(n, k)
    p = 1.0 / (k + 1)
    for batch in range(trials):
        rng = np.random.default_rng([seed, batch])
        draws = rng.random((r, n)) < p
        rects = []
        covered: set = set()
        for row in draws:
            I = tuple(int(x) for x in np.flatnonzero(row))
            if not I:
                continue
            rect = subset_rectangle(n, k, I)
            rects.append(rect)
            covered.update(rect.cells())
        if covered >= need:
            raw = Covering(tuple(rects), S.matrix_id)
            return RandomCover(prune_cover(raw), r, batch + 1, raw.size, seed)
    return RandomCover(None, r, trials, 0, seed)


def singleton_cover_gnk(n: int, k: int) -> Covering:
    """The n rectangles R_{x}; always a cover of G(n, k)."""
    return Covering(tuple(subset_rectangle(n, k, (x,)) for x in range(n)), f"G({n},{k})")


def compose_hypersimplex_cover(n: int, k: int, g_cover: Covering) -> Covering:
    """Lift a cover of G(n, k) to the full slack matrix, adding one rectangle per F row.

    G(n, k) row x is the G_{x+1} row; its column T (an (n-k)-subset) is the
    vertex given by the complement of T.
    """
    full = slack_matrix_standard((n, k))
    vcols = list(combinations(range(n), k))
    col_index = {S: j for j, S in enumerate(vcols)}
    gcols = _g_columns(n, k)
    to_full = [col_index[tuple(i for i in range(n) if i not in T)] for T in gcols]
    rects = [Rectangle((i,), tuple(j for j, S in enumerate(vcols) if i in S)) for i in range(n)]
    for rect in g_cover.rectangles:
        rects.append(Rectangle(tuple(n + x for x in rect.rows), tuple(to_full[t] for t in rect.cols)))
    return Covering(tuple(rects), full.matrix_id)


# ---------------------------------------------------------------------------
# bound bookkeeping for the standard and combinatorial hypersimplex

# rectangle covering numbers certified by the SAT pipeline; rc depends only
# on the incidence pattern, so these hold for every combinatorial realization
CERTIFIED_RC = {(4, 2): 6, (5, 2): 9, (5, 3): 9, (6, 2): 12, (6, 3): 12, (6, 4): 12}


@dataclass
class BoundLedger:
    n: int
    k: int
    mode: str
    lower: int = 0
    upper: int = 0
    exact: int | None = None
    trace: list[tuple[str, int, str]] = field(default_factory=list)

    def add(self, side: str, value: int, reason: str):
        self.trace.append((side, value, reason))
        if side == "lower":
            self.lower = max(self.lower, value)
        else:
            self.upper = value if not self.upper else min(self.upper, value)

    def bound(self, reason_prefix: str) -> int:
        for _, value, reason in self.trace:
            if reason.startswith(reason_prefix):
                return value
        raise KeyError(reason_prefix)


def _chain_lower(n: int, k: int, standard: bool, memo: dict) -> tuple[int, str]:
    key = (n, k)
    if key in memo:
        return memo[key]
    if k in (1, n - 1):
        out = (n, "simplex")
    elif key in CERTIFIED_RC:
        out = (CERTIFIED_RC[key], "certified rectangle covering number")
    else:
        f, _ = _chain_lower(n - 1, k, standard, memo)
        g, _ = _chain_lower(n - 1, k - 1, standard, memo)
        cands = [
            (max(f, g) + 1, "facet monotonicity"),
            (min(f, g) + 2, "disjoint facet pair F_i, G_i"),
        ]
        if standard and k in (2, n - 2):
            sub = f if k == 2 else g
            cands.append((min(sub + 2, 2 * n), "G-facet simplex argument"))
        out = max(cands)
    memo[key] = out
    return out


def bound_ledger(n: int, k: int, mode: str = "standard") -> BoundLedger:
    """Best known bounds on the extension complexity of the (n, k)-hypersimplex.

    ``mode="standard"`` is the 0/1 realization; ``mode="combinatorial"``
    bounds every polytope with the same face lattice.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 0 < k < n, got (n, k) = ({n}, {k})")
    if mode not in ("standard", "combinatorial"):
        raise ValueError(f"unknown mode {mode!r}")
    led = BoundLedger(n, k, mode)
    nverts = math.comb(n, k)
    led.add("lower", n, "dimension bound rc >= d + 1")
    if k in (1, n - 1):
        led.add("upper", n, "vertex count of a simplex")
        led.exact = n
        return led
    led.add("upper", 2 * n, "facet count of the cube-slice description")
    if mode == "standard" or (n, k) == (4, 2):
        led.add("upper", nverts, "vertex count")
    if mode == "standard" and n == 5:
        led.add("upper", 9, "explicit 9-facet extension (2-fold pyramid)")
    if mode == "combinatorial" and n >= 6:
        lo, hi = n // 2, (n + 1) // 2
        if k < lo:
            led.add("lower", n + 2 * k + 1, "genericity formula n+2k+1")
        elif k <= hi:
            led.add("lower", 2 * n, "genericity formula 2n")
        else:
            led.add("lower", n + 2 * (n - k) + 1, "genericity formula n+2(n-k)+1")
    value, reason = _chain_lower(n, k, mode == "standard", {})
    led.add("lower", value, reason)
    if led.lower == led.upper:
        led.exact = led.lower
    return led
