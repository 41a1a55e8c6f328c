"""Exact discrepancy verification.

Two independent routes:

* :func:`brute_force_min_discrepancy` enumerates every 2-coloring of a tiny
  hypergraph (numpy bit tricks, at most 24 vertices).
* :func:`atom_zero_feasible` / :func:`atom_min_discrepancy` work on the atom
  system.  A coloring only matters through the number of blue vertices ``r_a``
  in each atom, so the search is over integers ``0 <= r_a <= |a|`` with one
  range constraint per edge::

      ceil((|e| - D) / 2) <= sum(r_a for a in e) <= floor((|e| + D) / 2)

  which is ``|sum(d_a)| <= D`` for ``d_a = |a| - 2 r_a`` with the parity
  condition ``d_a = |a| (mod 2)`` built in.  Depth-first search assigns atoms
  in descending degree, propagating interval bounds over the edge rows and over
  every pairwise difference of edge rows.  The difference rows are implied
  constraints; they make the "swap" relations between block copies visible to
  interval reasoning, which is what keeps the constructions cheap to refute.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

from .errors import InfeasibleVector, ResourceExhausted, TooLarge
from .hypergraph import AtomSystem, Color, Hypergraph, atomize

log = logging.getLogger(__name__)

BRUTE_FORCE_MAX_VERTICES = 24
DEFAULT_NODE_BUDGET = 10**8
# implied rows from pairs of edges differing in at most this many atoms
MAX_DIFFERENCE_SUPPORT = 4
REPORT_KEYS = ("zero_feasible", "min_discrepancy", "witness", "nodes_explored", "mode")


@dataclass(frozen=True)
class DiscrepancyReport:
    zero_feasible: bool
    min_discrepancy: Optional[int]
    witness: Optional[tuple[int, ...]]
    nodes_explored: int
    mode: str  # "zero_only" or "minimize"
    # smallest discrepancy not ruled out; equals min_discrepancy when that is known
    lower_bound: int = 0


def write_report(report: DiscrepancyReport) -> str:
    def fmt(v):
        if v is None:
            return "none"
        if isinstance(v, bool):
            return "true" if v else "false"
        return str(v)

    witness = "none" if report.witness is None else ",".join(map(str, report.witness))
    values = (fmt(report.zero_feasible), fmt(report.min_discrepancy), witness,
              fmt(report.nodes_explored), report.mode)
    return "".join(f"{k} = {v}\n" for k, v in zip(REPORT_KEYS, values))


# --------------------------------------------------------------------------
# brute force


def brute_force_min_discrepancy(h: Hypergraph, chunk_bits: int = 20) -> DiscrepancyReport:
    """Minimum discrepancy over all ``2**V`` colorings.

    Coloring index ``k`` colors vertex ``v`` blue iff bit ``V-1-v`` of ``k`` is
    set, so ascending ``k`` is lexicographic order with red before blue and
    the witness comes from the first optimal coloring.
    """
    V = h.num_vertices
    if V > BRUTE_FORCE_MAX_VERTICES:
        raise TooLarge(f"brute force is capped at {BRUTE_FORCE_MAX_VERTICES} vertices, got {V}")
    atoms = atomize(h)
    if not h.edges:
        best_k, best = 0, 0
    else:
        masks = np.array([sum(1 << (V - 1 - v) for v in e) for e in h.edges], dtype=np.int64)
        sizes = np.array([len(e) for e in h.edges], dtype=np.int64)
        best, best_k = None, None
        total = 1 << V
        step = 1 << min(chunk_bits, V)
        for start in range(0, total, step):
            ks = np.arange(start, min(start + step, total), dtype=np.int64)
            blues = np.bitwise_count(ks[:, None] & masks[None, :]).astype(np.int64)
            disc = np.abs(sizes[None, :] - 2 * blues).max(axis=1)
            i = int(disc.argmin())
            if best is None or disc[i] < best:
                best, best_k = int(disc[i]), start + i
            if best == 0:
                break
    coloring = [Color.BLUE if (best_k >> (V - 1 - v)) & 1 else Color.RED for v in range(V)]
    witness = tuple(sum(int(coloring[v]) for v in verts) for verts in atoms.vertices)
    return DiscrepancyReport(best == 0, best, witness, 1 << V, "minimize", best)


# --------------------------------------------------------------------------
# atom-level search kernel


def _edge_ranges(a: AtomSystem, D: int) -> list[tuple[int, int]]:
    out = []
    for size in a.edge_sizes():
        out.append((-((D - size) // 2), (size + D) // 2))  # ceil, floor
    return out


def _build_rows(a: AtomSystem, ranges, differences: bool):
    """Rows ``(vars, coefs, L, U)`` meaning ``L <= sum(c * r[v]) <= U``.

    Besides one row per distinct edge this adds pairwise edge differences
    with small support and, when every edge is an equality, the reduced
    echelon form of the equality system.
    """
    rows: dict[tuple[tuple[int, ...], tuple[int, ...]], list[int]] = {}

    def add(vars_, coefs, L, U):
        key = (vars_, coefs)
        if key in rows:
            cur = rows[key]
            cur[0], cur[1] = max(cur[0], L), min(cur[1], U)
        else:
            rows[key] = [L, U]

    sets = [frozenset(e) for e in a.edge_atoms]
    for e, (L, U) in zip(sets, ranges):
        vs = tuple(sorted(e))
        add(vs, (1,) * len(vs), L, U)
    if differences:
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                sym = sets[i] ^ sets[j]
                if not sym or len(sym) > MAX_DIFFERENCE_SUPPORT:
                    continue
                (Li, Ui), (Lj, Uj) = ranges[i], ranges[j]
                vs = tuple(sorted(sym))
                sign = 1 if vs[0] in sets[i] else -1
                coefs = tuple(sign if v in sets[i] else -sign for v in vs)
                lo, hi = Li - Uj, Ui - Lj
                if sign < 0:
                    lo, hi = -hi, -lo
                add(vs, coefs, lo, hi)
    if all(L == U for L, U in ranges):
        for vs, coefs, b in _echelon_rows(a, [L for L, _ in ranges]):
            add(vs, coefs, b, b)
    return [(v, c, L, U) for (v, c), (L, U) in rows.items()]


def _echelon_rows(a: AtomSystem, rhs):
    """Integer-scaled reduced echelon form of ``sum(r[v] for v in e) = rhs[e]``.

    Pivots are taken from the largest atoms first, so each large atom is
    expressed through small ones and gets fixed as soon as they are.
    """
    n = a.num_atoms
    col_order = sorted(range(n), key=lambda v: (-a.atom_sizes[v], v))
    mat = []
    for e, b in zip(a.edge_atoms, rhs):
        row = [Fraction(0)] * (n + 1)
        for v in e:
            row[v] = Fraction(1)
        row[n] = Fraction(b)
        mat.append(row)
    pivot_rows = []
    r = 0
    for col in col_order:
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][col]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_rows.append(r)
        r += 1
        if r == len(mat):
            break
    out = []
    for row in mat[:r]:
        scale = lcm(*(x.denominator for x in row))
        ints = [int(x * scale) for x in row]
        g = gcd(*ints[:n])
        vs = tuple(v for v in range(n) if ints[v])
        coefs = tuple(ints[v] // g for v in vs)
        if ints[n] % g:
            # no integer solution at all
            out.append(((), (), 1))
            continue
        if coefs and coefs[0] < 0:
            coefs = tuple(-c for c in coefs)
            ints[n] = -ints[n]
        out.append((vs, coefs, ints[n] // g))
    for row in mat[r:]:
        if row[n] != 0:
            out.append(((), (), 1))
    return out


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class _Search:
    def __init__(self, sizes, rows, budget, propagation_factor=20):
        self.sizes = list(sizes)
        self.rows = rows
        self.budget = budget
        self.nodes = 0
        n = len(sizes)
        self.var_rows: list[list[int]] = [[] for _ in range(n)]
        deg = [0] * n
        for ri, (vs, cs, _, _) in enumerate(rows):
            for v in vs:
                self.var_rows[v].append(ri)
            if all(c == 1 for c in cs):
                for v in vs:
                    deg[v] += 1
        self.order = sorted(range(n), key=lambda v: (-deg[v], -sizes[v], v))
        self.max_visits = propagation_factor * max(len(rows), 1)

    def propagate(self, lo, hi, queue) -> bool:
        rows, var_rows = self.rows, self.var_rows
        pending = set(queue)
        queue = list(queue)
        visits = 0
        while queue:
            visits += 1
            if visits > self.max_visits:
                return True  # sound to stop early; branching finishes the job
            ri = queue.pop()
            pending.discard(ri)
            vs, cs, L, U = rows[ri]
            mn = mx = 0
            for v, c in zip(vs, cs):
                if c > 0:
                    mn += c * lo[v]
                    mx += c * hi[v]
                else:
                    mn += c * hi[v]
                    mx += c * lo[v]
            if mn > U or mx < L:
                return False
            if mn >= L and mx <= U:
                continue
            changed = []
            for v, c in zip(vs, cs):
                lv, hv = lo[v], hi[v]
                if c > 0:
                    nh = (U - mn + c * lv) // c
                    nl = _ceil_div(L - mx + c * hv, c)
                else:
                    nl = _ceil_div(U - mn + c * hv, c)
                    nh = (L - mx + c * lv) // c
                if nh < hv or nl > lv:
                    if nl > lv:
                        lo[v] = nl
                    if nh < hv:
                        hi[v] = nh
                    if lo[v] > hi[v]:
                        return False
                    changed.append(v)
            for v in changed:
                for rj in var_rows[v]:
                    if rj not in pending:
                        pending.add(rj)
                        queue.append(rj)
        return True

    def _values(self, v, lo, hi):
        mid = self.sizes[v] // 2
        c = min(max(mid, lo), hi)
        yield c
        step = 1
        while c - step >= lo or c + step <= hi:
            if c + step <= hi:
                yield c + step
            if c - step >= lo:
                yield c - step
            step += 1

    def dfs(self, lo, hi) -> Optional[list[int]]:
        for v in self.order:
            if lo[v] < hi[v]:
                break
        else:
            return lo
        for val in self._values(v, lo[v], hi[v]):
            self.nodes += 1
            if self.nodes > self.budget:
                raise ResourceExhausted(f"node budget {self.budget} exhausted", self.nodes)
            nlo, nhi = lo[:], hi[:]
            nlo[v] = nhi[v] = val
            if self.propagate(nlo, nhi, self.var_rows[v]):
                found = self.dfs(nlo, nhi)
                if found is not None:
                    return found
        return None

    def root(self):
        lo = [0] * len(self.sizes)
        hi = list(self.sizes)
        if not self.propagate(lo, hi, range(len(self.rows))):
            return None
        return lo, hi


def _solve_branch(args):
    sizes, rows, budget, lo, hi = args
    s = _Search(sizes, rows, budget)
    found = s.dfs(lo, hi)
    return found, s.nodes


def _feasible(a: AtomSystem, D: int, budget: int, jobs: int = 1, differences: bool = True):
    """Search for blue counts with every edge imbalance at most ``D``.

    Returns ``(d_vector or None, nodes)``.
    """
    ranges = _edge_ranges(a, D)
    if any(L > U for L, U in ranges):
        return None, 0
    rows = _build_rows(a, ranges, differences)
    s = _Search(a.atom_sizes, rows, budget)
    start = s.root()
    if start is None:
        return None, 0
    lo, hi = start
    if jobs <= 1:
        r = s.dfs(lo, hi)
        nodes = s.nodes
    else:
        r, nodes = _parallel_dfs(s, lo, hi, budget, jobs)
    if r is None:
        return None, nodes
    return tuple(size - 2 * ri for size, ri in zip(a.atom_sizes, r)), nodes


def _parallel_dfs(s: _Search, lo, hi, budget, jobs):
    v = next((v for v in s.order if lo[v] < hi[v]), None)
    if v is None:
        return lo, 0
    tasks = []
    nodes = 0
    for val in s._values(v, lo[v], hi[v]):
        nodes += 1
        nlo, nhi = lo[:], hi[:]
        nlo[v] = nhi[v] = val
        if s.propagate(nlo, nhi, s.var_rows[v]):
            tasks.append((s.sizes, s.rows, budget, nlo, nhi))
    found = None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for r, n in pool.map(_solve_branch, tasks):
            nodes += n
            if r is not None and found is None:
                found = r
    if nodes > budget:
        raise ResourceExhausted(f"node budget {budget} exhausted", nodes)
    return found, nodes


def validate_witness(a: AtomSystem, d: Sequence[int], D: int = 0) -> bool:
    if len(d) != a.num_atoms:
        return False
    for size, da in zip(a.atom_sizes, d):
        if abs(da) > size or (da - size) % 2:
            return False
    return all(abs(sum(d[x] for x in atoms)) <= D for atoms in a.edge_atoms)


def atom_zero_feasible(a: AtomSystem, budget: int = DEFAULT_NODE_BUDGET, jobs: int = 1) -> DiscrepancyReport:
    d, nodes = _feasible(a, 0, budget, jobs)
    if d is None:
        return DiscrepancyReport(False, None, None, nodes, "zero_only", 1)
    if not validate_witness(a, d, 0):
        raise RuntimeError("zero-discrepancy witness failed re-validation")
    return DiscrepancyReport(True, 0, d, nodes, "zero_only", 0)


def candidate_targets(a: AtomSystem):
    """Target discrepancies to try, in increasing order."""
    parities = {s % 2 for s in a.edge_sizes()}
    if len(parities) == 1:
        D, step = parities.pop(), 2
    else:
        D, step = 0, 1
    limit = max(a.edge_sizes(), default=0)
    while D <= limit:
        yield D
        D += step


def atom_min_discrepancy(
    a: AtomSystem,
    cap: Optional[int] = None,
    budget: int = DEFAULT_NODE_BUDGET,
    jobs: int = 1,
) -> DiscrepancyReport:
    """Exact minimum discrepancy, trying targets upward from the parity floor.

    With ``cap`` the search stops after the largest target ``<= cap``; if all
    were infeasible the report carries ``min_discrepancy=None`` and the first
    untried target as ``lower_bound``.
    """
    nodes = 0
    if not a.edge_atoms:
        d = tuple(size % 2 for size in a.atom_sizes)
        return DiscrepancyReport(True, 0, d, 0, "minimize", 0)
    for D in candidate_targets(a):
        if cap is not None and D > cap:
            return DiscrepancyReport(False, None, None, nodes, "minimize", D)
        remaining = budget - nodes
        try:
            d, used = _feasible(a, D, remaining, jobs)
        except ResourceExhausted as exc:
            raise ResourceExhausted(
                f"node budget {budget} exhausted while testing discrepancy {D} "
                f"(all targets below {D} are infeasible)",
                nodes + exc.nodes_explored,
            ) from None
        nodes += used
        log.debug("target %d: %s after %d nodes", D, "feasible" if d else "infeasible", used)
        if d is not None:
            if not validate_witness(a, d, D):
                raise RuntimeError(f"witness for discrepancy {D} failed re-validation")
            return DiscrepancyReport(D == 0, D, d, nodes, "minimize", D)
    raise RuntimeError("no target up to the largest edge size was feasible")


def realize_coloring(h: Hypergraph, a: AtomSystem, d: Sequence[int]) -> list[Color]:
    if len(d) != a.num_atoms:
        raise InfeasibleVector(f"vector has {len(d)} entries, system has {a.num_atoms} atoms")
    colors = [Color.RED] * h.num_vertices
    for idx, (verts, da) in enumerate(zip(a.vertices, d)):
        size = len(verts)
        if abs(da) > size or (da - size) % 2:
            raise InfeasibleVector(f"atom {idx} of size {size} cannot have difference {da}")
        for v in verts[(size + da) // 2:]:
            colors[v] = Color.BLUE
    return colors
