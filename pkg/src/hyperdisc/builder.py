"""n-uniform hypergraphs with positive discrepancy.

All builders return ``(Hypergraph, ConstructionCertificate)`` and are fully
deterministic: vertex ids are allocated block by block, and every "arbitrary"
choice (which vertices to trim, which to pad) is pinned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Optional

from .errors import (
    AmplifierOverflow,
    DispatchError,
    InvalidInput,
    NonPositiveBlock,
    NotApplicable,
    ParseError,
    WrongParity,
    WrongResidue,
)
from .hypergraph import Hypergraph
from .numtheory import EtaDecomposition, choose_delta, choose_t19, eta_decompose, snd

METHODS = ("single_odd", "three_edge", "main_odd", "main_pow2", "example19", "amplified")
CERT_KEYS = ("method", "n", "q", "m", "eta", "shift", "x", "corrections", "edge_count", "bound_7m_ok")

DEFAULT_AMPLIFY_CAP = 10**6


@dataclass(frozen=True)
class Correction:
    edge_index: int
    kind: str  # "pad" or "trim"
    count: int


@dataclass(frozen=True)
class ConstructionCertificate:
    method: str
    n: int
    q: Optional[int] = None
    m: Optional[int] = None
    eta: tuple[int, ...] = ()
    shift: Optional[int] = None
    x: tuple[int, ...] = ()
    corrections: tuple[Correction, ...] = ()
    edge_count: int = 0
    bound_7m_ok: Optional[bool] = None


@dataclass(frozen=True)
class VectorFamily:
    v: tuple[tuple[int, ...], ...]
    u: tuple[int, ...]

    def dots(self) -> list[int]:
        return [sum(a * b for a, b in zip(row, self.u)) for row in self.v]


def build_vectors(d: EtaDecomposition) -> VectorFamily:
    eta = list(d.eta)
    rows = [tuple(eta)]
    for i in range(1, d.m):
        row = eta[:]
        row[i - 1] += 2
        row[i] -= 1
        rows.append(tuple(row))
    return VectorFamily(tuple(rows), tuple(1 << i for i in range(d.m)))


def _dot(a, b) -> int:
    return sum(p * q for p, q in zip(a, b))


def _require_positive(x, what="block"):
    bad = [i for i, xi in enumerate(x) if xi <= 0]
    if bad:
        raise NonPositiveBlock(f"{what} sizes {tuple(x)} not all positive (index {bad[0]}); n is too small")


def solve_x_odd(n: int, q: int, d: EtaDecomposition, delta: int) -> tuple[int, ...]:
    m = d.m
    eta_last = d.eta[-1]
    if (n + eta_last * delta) % q:
        raise WrongResidue(f"q={q} does not divide n + eta_last*delta = {n + eta_last * delta}")
    x0 = (n + eta_last * delta) // q
    x = [x0 << i for i in range(m - 1)] + [(x0 << (m - 1)) - delta]
    _require_positive(x)
    vf = build_vectors(d)
    expected = [n] * (m - 1) + [n + delta]
    if [_dot(row, x) for row in vf.v] != expected:
        raise RuntimeError(f"block sizes {x} fail the linear system for n={n}, q={q}")
    return tuple(x)


def solve_x_pow2(n: int, m: int) -> tuple[int, ...]:
    if m < 3:
        raise InvalidInput(f"power-of-two case needs m >= 3, got {m}")
    q = 1 << m
    if n % q != q >> 1 or snd(n) != q:
        raise WrongResidue(f"snd({n}) = {snd(n)} is not 2^{m}")
    x0 = (n + (q >> 1)) // q
    x1 = 2 * x0 - 1
    x = [x0, x1] + [x1 << (i - 1) for i in range(2, m - 1)] + [(x1 << (m - 2)) - 1]
    _require_positive(x)
    vf = build_vectors(eta_decompose(q))
    expected = [n] * m
    expected[1] = expected[m - 1] = n + 1
    if [_dot(row, x) for row in vf.v] != expected:
        raise RuntimeError(f"block sizes {x} fail the linear system for n={n}, q={q}")
    return tuple(x)


def main_edge_layout(eta: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """Block-copy layout of the main construction before size correction.

    Entry ``[edge][block]`` is the tuple of copy indices (0..3) of that block
    used by the edge.  Order: base edge, swap edges grouped by block with
    copy subsets in lexicographic order, then shift edges for k = 1..m-1.
    """
    m = len(eta)
    base = tuple(tuple(range(e)) for e in eta)
    layout = [base]
    for k in range(m):
        for R in combinations(range(4), eta[k]):
            layout.append(base[:k] + (R,) + base[k + 1:])
    for k in range(1, m):
        edge = list(base)
        edge[k - 1] = tuple(range(eta[k - 1] + 2))
        edge[k] = tuple(range(eta[k] - 1))
        layout.append(tuple(edge))
    return layout


def block_multiplicities(layout) -> list[list[int]]:
    return [[len(copies) for copies in edge] for edge in layout]


def _correct_sizes(edges: list[list[int]], n: int, next_vertex: int):
    """Pad short edges with fresh vertices, trim long ones from the largest id."""
    corrections = []
    out = []
    for k, e in enumerate(edges):
        e = sorted(e)
        if len(e) < n:
            count = n - len(e)
            e = e + list(range(next_vertex, next_vertex + count))
            next_vertex += count
            corrections.append(Correction(k, "pad", count))
        elif len(e) > n:
            count = len(e) - n
            e = e[:n]
            corrections.append(Correction(k, "trim", count))
        out.append(tuple(e))
    return out, next_vertex, tuple(corrections)


def _blocks_to_edges(x, layout):
    start = []
    offset = 0
    for xi in x:
        start.append([offset + j * xi for j in range(4)])
        offset += 4 * xi
    edges = []
    for edge in layout:
        verts = []
        for i, copies in enumerate(edge):
            for j in copies:
                verts.extend(range(start[i][j], start[i][j] + x[i]))
        edges.append(verts)
    return edges, offset


def build_single_odd(n: int):
    if n < 1 or n % 2 == 0:
        raise WrongParity(f"single-edge construction needs odd n, got {n}")
    h = Hypergraph(n, (tuple(range(n)),))
    return h, ConstructionCertificate("single_odd", n, edge_count=1)


def build_three(n: int):
    """Three sets X, Y, Z of size n/2 and edges X+Y, Y+Z, Z+X."""
    if n < 2 or n % 4 != 2:
        raise WrongResidue(f"three-edge construction needs n = 2 mod 4, got {n}")
    s = n // 2
    X, Y, Z = range(0, s), range(s, 2 * s), range(2 * s, 3 * s)
    edges = (tuple(X) + tuple(Y), tuple(Y) + tuple(Z), tuple(X) + tuple(Z))
    h = Hypergraph(3 * s, edges)
    return h, ConstructionCertificate("three_edge", n, x=(s,), edge_count=3)


def build_main(n: int):
    if n < 1 or n % 2 or n % 4 == 2:
        raise DispatchError(f"main construction needs 4 | n, got n={n}")
    q = snd(n)
    d = eta_decompose(q)
    if q % 2:
        method = "main_odd"
        shift = choose_delta(n, q, d.eta[-1])
        x = solve_x_odd(n, q, d, shift)
    else:
        method = "main_pow2"
        shift = 1
        x = solve_x_pow2(n, d.m)
    layout = main_edge_layout(d.eta)
    raw, nv = _blocks_to_edges(x, layout)
    edges, nv, corrections = _correct_sizes(raw, n, nv)
    edge_count = len(edges)
    expected = 1 + sum(comb(4, e) for e in d.eta) + (d.m - 1)
    if edge_count != expected:
        raise RuntimeError(f"edge count {edge_count} != {expected}")
    cert = ConstructionCertificate(
        method, n, q=q, m=d.m, eta=d.eta, shift=shift, x=x,
        corrections=corrections, edge_count=edge_count,
        bound_7m_ok=edge_count <= 7 * d.m,
    )
    return Hypergraph(nv, tuple(edges)), cert


def example19_params(n: int) -> tuple[int, int, int]:
    """``(t, a, b)`` solving ``3a + 5b = n``, ``a + 8b = n + t``."""
    if n % 19 == 0:
        raise NotApplicable(f"19 divides n={n}")
    t = choose_t19(n)
    a_num, b_num = 8 * n - 5 * (n + t), 3 * (n + t) - n
    if a_num % 19 or b_num % 19:
        raise RuntimeError(f"2x2 system not integral for n={n}, t={t}")
    return t, a_num // 19, b_num // 19


# printed edge order: which B sets (1-based) join A1..A3 in edges 1-8
_EX19_B_SETS = (
    (1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 3, 4, 7), (1, 2, 3, 4, 8),
    (2, 3, 4, 5, 8), (1, 3, 4, 5, 8), (1, 2, 4, 5, 8), (1, 2, 3, 5, 8),
)


def build_example19(n: int):
    """11-edge construction from the integer matrix [[3, 5], [1, 8]] (det 19).

    ``C`` has size ``b - t``: it is ``B1`` plus ``|t|`` fresh vertices when
    ``t < 0`` and ``B1`` without its ``t`` largest ids when ``t > 0``.
    """
    t, a, b = example19_params(n)
    if a <= 0 or b <= 0 or b - t < 0:
        raise NonPositiveBlock(f"n={n} too small: t={t}, a={a}, b={b}, |C|={b - t}")
    A = [tuple(range(i * a, (i + 1) * a)) for i in range(3)]
    base = 3 * a
    B = [tuple(range(base + i * b, base + (i + 1) * b)) for i in range(8)]
    nv = base + 8 * b
    if t < 0:
        C = B[0] + tuple(range(nv, nv - t))
        nv -= t
    else:
        C = B[0][: b - t]
    all_a = A[0] + A[1] + A[2]
    edges = [all_a + sum((B[j - 1] for j in sets), ()) for sets in _EX19_B_SETS]
    tail = sum(B[1:], ())
    edges += [A[i] + C + tail for i in range(3)]
    h = Hypergraph.from_sets(nv, edges)
    if not h.is_uniform(n):
        raise RuntimeError(f"example19 edges not all of size {n}")
    cert = ConstructionCertificate("example19", n, q=19, m=2, shift=t, x=(a, b), edge_count=11)
    return h, cert


def build_auto(n: int):
    if n < 1:
        raise InvalidInput(f"edge size must be >= 1, got {n}")
    if n % 2:
        return build_single_odd(n)
    if n % 4 == 2:
        return build_three(n)
    return build_main(n)


BUILDERS = {
    "auto": build_auto,
    "single": build_single_odd,
    "three": build_three,
    "main": build_main,
    "example19": build_example19,
}


def nearest_int(n: int, r: int) -> int:
    """Nearest integer to n/r, halves rounded up."""
    return (2 * n + r) // (2 * r)


def amplify(n: int, r: int, cap: int = DEFAULT_AMPLIFY_CAP):
    """Discrepancy amplifier over ``2r - 1`` disjoint copies of ``build_auto([n/r])``.

    Every r-subset of copies contributes the unions of one edge per chosen
    copy; edges are then trimmed (largest ids) or padded from a single shared
    pool of fresh vertices so that all have size n.
    """
    if r < 1:
        raise InvalidInput(f"r must be >= 1, got {r}")
    base_n = nearest_int(n, r)
    if base_n < 1:
        raise InvalidInput(f"[n/r] = {base_n} for n={n}, r={r}")
    l = r * base_n - n
    h0, c0 = build_auto(base_n)
    copies = 2 * r - 1
    count = comb(copies, r) * h0.num_edges ** r
    if count > cap:
        raise AmplifierOverflow(f"amplify({n}, {r}) would have {count} edges, cap is {cap}")
    nv0 = h0.num_vertices
    shifted = [[tuple(v + c * nv0 for v in e) for e in h0.edges] for c in range(copies)]
    nv = copies * nv0
    pad = tuple(range(nv, nv - l)) if l < 0 else ()
    nv += len(pad)
    edges = []
    corrections = []
    for A in combinations(range(copies), r):
        for choice in product(*(shifted[c] for c in A)):
            e = sorted(v for part in choice for v in part)
            if l > 0:
                e = e[: len(e) - l]
                corrections.append(Correction(len(edges), "trim", l))
            elif l < 0:
                e = e + list(pad)
                corrections.append(Correction(len(edges), "pad", -l))
            edges.append(tuple(e))
    h = Hypergraph(nv, tuple(edges))
    cert = ConstructionCertificate(
        "amplified", n, q=c0.q, m=c0.m, eta=c0.eta, shift=l, x=c0.x,
        corrections=tuple(corrections), edge_count=len(edges), bound_7m_ok=c0.bound_7m_ok,
    )
    return h, cert


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_certificate(cert: ConstructionCertificate) -> str:
    values = {
        "method": cert.method,
        "n": _fmt(cert.n),
        "q": _fmt(cert.q),
        "m": _fmt(cert.m),
        "eta": ",".join(map(str, cert.eta)) or "none",
        "shift": _fmt(cert.shift),
        "x": ",".join(map(str, cert.x)) or "none",
        "corrections": ";".join(f"{c.edge_index},{c.kind},{c.count}" for c in cert.corrections) or "none",
        "edge_count": _fmt(cert.edge_count),
        "bound_7m_ok": _fmt(cert.bound_7m_ok),
    }
    return "".join(f"{k} = {values[k]}\n" for k in CERT_KEYS)


def read_certificate(text: str) -> ConstructionCertificate:
    lines = text.splitlines()
    if len(lines) != len(CERT_KEYS):
        raise ParseError(f"expected {len(CERT_KEYS)} lines, got {len(lines)}")
    raw = {}
    for i, (line, key) in enumerate(zip(lines, CERT_KEYS), start=1):
        k, sep, v = line.partition(" = ")
        if not sep or k != key:
            raise ParseError(f"expected key {key!r}", i)
        raw[k] = v

    def opt_int(s):
        return None if s == "none" else int(s)

    def ints(s):
        return () if s == "none" else tuple(int(p) for p in s.split(","))

    corrections = ()
    if raw["corrections"] != "none":
        triples = [c.split(",") for c in raw["corrections"].split(";")]
        corrections = tuple(Correction(int(i), kind, int(c)) for i, kind, c in triples)
    try:
        return ConstructionCertificate(
            method=raw["method"], n=int(raw["n"]), q=opt_int(raw["q"]), m=opt_int(raw["m"]),
            eta=ints(raw["eta"]), shift=opt_int(raw["shift"]), x=ints(raw["x"]),
            corrections=corrections, edge_count=int(raw["edge_count"]),
            bound_7m_ok={"none": None, "true": True, "false": False}[raw["bound_7m_ok"]],
        )
    except (ValueError, KeyError) as exc:
        raise ParseError(f"malformed certificate value: {exc}") from None
