"""Acceptance checks, runnable without a test harness (``hyperdisc selftest``)."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .builder import amplify, build_example19, build_main, build_single_odd, build_three, example19_params
from .errors import NonPositiveBlock
from .hypergraph import Hypergraph, atomize, discrepancy_of_coloring
from .matrixlab import (
    IntMatrix,
    exact_det,
    identity,
    is_in_M,
    ones_minus_identity,
    v_matrix,
    verify_v_matrix,
    z_of,
)
from .numtheory import snd
from .solver import (
    atom_min_discrepancy,
    atom_zero_feasible,
    brute_force_min_discrepancy,
    realize_coloring,
    validate_witness,
)


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.2f}s)"


def cofactor_det(rows) -> int:
    """Laplace expansion along the first row; independent of Bareiss."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def random_hypergraph(rng: random.Random, max_vertices=16, max_edges=8) -> Hypergraph:
    V = rng.randint(1, max_vertices)
    E = rng.randint(1, max_edges)
    edges = [rng.sample(range(V), rng.randint(1, V)) for _ in range(E)]
    return Hypergraph.from_sets(V, edges)


def example19_sizes(lo=20, hi=200):
    """Even n in [lo, hi] with 19 not dividing n and |C| = b - t >= 0."""
    out = []
    for n in range(lo, hi + 1, 2):
        if n % 19 == 0:
            continue
        t, _, b = example19_params(n)
        if b - t >= 0:
            out.append(n)
    return out


def criterion_1():
    sizes = example19_sizes()
    bad = []
    for n in sizes:
        h, cert = build_example19(n)
        ok = h.num_edges == 11 and h.is_uniform(n) and not atom_zero_feasible(atomize(h)).zero_feasible
        if not ok:
            bad.append(n)
    return not bad, f"{len(sizes)} sizes from {sizes[0]} to {sizes[-1]}, failures {bad or 'none'}", 1.0


def criterion_2():
    h, cert = build_example19(110)
    a = atomize(h)
    rep = atom_min_discrepancy(a)
    params = (cert.shift, *cert.x)
    realized = discrepancy_of_coloring(h, realize_coloring(h, a, rep.witness))
    detail = f"(t, a, b) = {params}, min discrepancy {rep.min_discrepancy} (expected 6), realized {realized}"
    return params == (9, 15, 13) and rep.min_discrepancy == 6, detail, 30.0


def criterion_3():
    notes = []
    ok = True
    for n in (4, 12, 16, 48, 60, 420, 2520):
        h, cert = build_main(n)
        good = (
            h.is_uniform(n)
            and cert.edge_count == h.num_edges <= 7 * cert.m
            and len(cert.corrections) <= 2
            and not atom_zero_feasible(atomize(h)).zero_feasible
        )
        ok &= good
        notes.append(f"{n}:{h.num_edges}/{7 * cert.m}{'' if good else '!'}")
    return ok, "edges/bound " + " ".join(notes), 60.0


def criterion_4():
    h, _ = build_main(4)
    bf = brute_force_min_discrepancy(h)
    atom = atom_zero_feasible(atomize(h))
    ok = h.num_vertices == 17 and not bf.zero_feasible and atom.zero_feasible == bf.zero_feasible
    return ok, f"{h.num_vertices} vertices, brute-force min {bf.min_discrepancy}, atom zero-feasible {atom.zero_feasible}", 5.0


def criterion_5():
    got = {}
    for n in (1, 3, 5, 7):
        got[f"odd{n}"] = brute_force_min_discrepancy(build_single_odd(n)[0]).min_discrepancy
    for n in (2, 6):
        got[f"three{n}"] = brute_force_min_discrepancy(build_three(n)[0]).min_discrepancy
    got["three10"] = atom_min_discrepancy(atomize(build_three(10)[0])).min_discrepancy
    ok = all(v == (1 if k.startswith("odd") else 2) for k, v in got.items())
    return ok, " ".join(f"{k}={v}" for k, v in got.items()), 5.0


def criterion_6(seed=20240601, count=200):
    rng = random.Random(seed)
    mismatches = invalid = 0
    for _ in range(count):
        h = random_hypergraph(rng)
        a = atomize(h)
        bf = brute_force_min_discrepancy(h)
        rep = atom_min_discrepancy(a)
        if rep.min_discrepancy != bf.min_discrepancy:
            mismatches += 1
        if not validate_witness(a, rep.witness, rep.min_discrepancy):
            invalid += 1
        elif discrepancy_of_coloring(h, realize_coloring(h, a, rep.witness)) != rep.min_discrepancy:
            invalid += 1
    return mismatches == 0 and invalid == 0, f"{count} hypergraphs, {mismatches} mismatches, {invalid} bad witnesses", 60.0


def criterion_7():
    all_ok = all(verify_v_matrix(q) for q in range(3, 65))
    M = v_matrix(19)
    bareiss, laplace = exact_det(M), cofactor_det(M.to_rows())
    ok = all_ok and bareiss == laplace == -19
    return ok, f"q in [3, 64] all verified: {all_ok}; det(v-matrix, q=19) = {bareiss} (cofactor {laplace})", 1.0


def criterion_8():
    zs = [z_of(ones_minus_identity(n + 1)) for n in range(1, 7)]
    eye = [z_of(identity(k)) for k in range(1, 5)]
    rejected = not is_in_M(IntMatrix.from_rows([[1, 1]]))
    ok = zs == list(range(1, 7)) and eye == [1] * 4 and rejected
    return ok, f"z(J-I) = {zs}, z(I_k) = {eye}, [[1,1]] rejected: {rejected}", 5.0


def criterion_9():
    h, cert = amplify(8, 2)
    rep = atom_min_discrepancy(atomize(h))
    ok = h.num_edges == 300 and h.is_uniform(8) and rep.min_discrepancy is not None and rep.min_discrepancy >= 4
    return ok, f"{h.num_edges} edges of size 8, min discrepancy {rep.min_discrepancy}", 120.0


def criterion_10(limit=10**6):
    best, where = 0, None
    for n in range(1, limit + 1):
        s = snd(n)
        if s > best:
            best, where = s, n
    return best == 17 and where == 720720, f"max snd(n) for n <= {limit} is {best}, first at n = {where}", 30.0


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "example-19 builds have no zero coloring", criterion_1),
    (2, "example-19 at n=110 has discrepancy 6", criterion_2),
    (3, "main construction validity", criterion_3),
    (4, "brute force agrees on build_main(4)", criterion_4),
    (5, "trivial constructions", criterion_5),
    (6, "atom solver equals brute force", criterion_6),
    (7, "v-matrix determinants", criterion_7),
    (8, "unique-solution matrix quantities", criterion_8),
    (9, "amplifier n=8, r=2", criterion_9),
    (10, "smallest non-divisor growth", criterion_10),
]


def run_criterion(number: int) -> Outcome:
    _, title, fn = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        passed, detail, limit = fn()
    except NonPositiveBlock as exc:  # surfaced rather than swallowed
        passed, detail, limit = False, f"error: {exc}", float("inf")
    seconds = time.perf_counter() - start
    if seconds >= limit:
        passed = False
        detail += f"; exceeded {limit:g}s limit"
    return Outcome(number, title, passed, detail, seconds)


def run_all(echo=print) -> list[Outcome]:
    outcomes = []
    for number, _, _ in CRITERIA:
        out = run_criterion(number)
        echo(out.line())
        outcomes.append(out)
    return outcomes
