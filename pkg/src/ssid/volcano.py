"""Exhaustive isogeny graphs G_l(F_q) at desk scale and volcano checks.

Vertices are field elements, stored by ``Fp2Element.index()``.  Edges come
from the full root multiset of Phi_l(j, X) over F_q, found by evaluating
Phi_l(j, x) at every (j, x) pair with numpy.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import numpy as np

from .arith import FieldSpec, Fp2Element
from .errors import (
    FieldTooLarge,
    NoOrdinaryCurveWithJ,
    NotAnEdge,
    SameCharacteristic,
    SupersingularVertex,
)
from .modpoly import ModpolyDatabase, load_modpoly

MAX_Q = 10**6
_CHUNK = 1 << 22  # (j, x) pairs evaluated per numpy batch


# --------------------------------------------------------------------------
# vectorised F_q arithmetic on index arrays


class _VecField:
    """F_p or F_{p^2} arithmetic on pairs of int64 arrays."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.p = field.p
        self.alpha = field.alpha or 0
        idx = np.arange(field.q, dtype=np.int64)
        self.all0 = idx % self.p
        self.all1 = idx // self.p

    def mul(self, a0, a1, b0, b1):
        p = self.p
        if self.alpha == 0:
            return (a0 * b0) % p, np.zeros_like(a0 * b0)
        c0 = (a0 * b0 + ((a1 * b1) % p) * self.alpha) % p
        c1 = (a0 * b1 + a1 * b0) % p
        return c0, c1

    def index(self, c0, c1):
        return c0 + self.p * c1

    @property
    def square_table(self) -> np.ndarray:
        """Quadratic character chi(x) for every index x."""
        if not hasattr(self, "_chi"):
            s0, s1 = self.mul(self.all0, self.all1, self.all0, self.all1)
            chi = np.full(self.field.q, -1, dtype=np.int64)
            chi[self.index(s0, s1)] = 1
            chi[0] = 0
            self._chi = chi
        return self._chi


@lru_cache(maxsize=64)
def trace_table(field: FieldSpec) -> np.ndarray:
    """t = q + 1 - #E(F_q) for the fixed curve_from_j(j), every j by index."""
    from .curve import curve_from_j

    q = field.q
    if q > MAX_Q:
        raise FieldTooLarge(f"q={q} exceeds {MAX_Q}")
    vf = _VecField(field)
    chi = vf.square_table
    A0 = np.empty(q, dtype=np.int64)
    A1 = np.empty(q, dtype=np.int64)
    B0 = np.empty(q, dtype=np.int64)
    B1 = np.empty(q, dtype=np.int64)
    for i in range(q):
        E = curve_from_j(field, field.element_from_index(i))
        A0[i], A1[i], B0[i], B1[i] = E.A.c0, E.A.c1, E.B.c0, E.B.c1
    x0, x1 = vf.all0, vf.all1
    xx0, xx1 = vf.mul(x0, x1, x0, x1)
    x30, x31 = vf.mul(xx0, xx1, x0, x1)
    traces = np.empty(q, dtype=np.int64)
    rows = max(1, _CHUNK // q)
    for start in range(0, q, rows):
        sl = slice(start, min(q, start + rows))
        a0, a1 = A0[sl, None], A1[sl, None]
        ax0, ax1 = vf.mul(a0, a1, x0[None, :], x1[None, :])
        r0 = (x30[None, :] + ax0 + B0[sl, None]) % vf.p
        r1 = (x31[None, :] + ax1 + B1[sl, None]) % vf.p
        traces[sl] = -chi[vf.index(r0, r1)].sum(axis=1)
    return traces


@lru_cache(maxsize=64)
def twist_traces(field: FieldSpec, j: int) -> FrozenSet[int]:
    """All |t| over curves with j-invariant index j (every twist)."""
    p, q = field.p, field.q
    if j not in (0, 1728 % p):
        return frozenset({abs(int(trace_table(field)[j]))})
    vf = _VecField(field)
    chi = vf.square_table
    x0, x1 = vf.all0[None, :], vf.all1[None, :]
    c0, c1 = vf.all0[1:, None], vf.all1[1:, None]
    xx0, xx1 = vf.mul(x0, x1, x0, x1)
    x30, x31 = vf.mul(xx0, xx1, x0, x1)
    if j == 0:
        # y^2 = x^3 + B for every B != 0
        r0, r1 = (x30 + c0) % p, (x31 + c1) % p
    else:
        # y^2 = x^3 + A x for every A != 0
        ax0, ax1 = vf.mul(c0, c1, x0, x1)
        r0, r1 = (x30 + ax0) % p, (x31 + ax1) % p
    t = -chi[vf.index(r0, r1)].sum(axis=1)
    return frozenset(abs(int(v)) for v in t)


# --------------------------------------------------------------------------
# graph


@dataclass(frozen=True)
class IsogenyGraph:
    field: FieldSpec
    ell: int
    adjacency: Dict[int, Tuple[int, ...]]
    supersingular: FrozenSet[int] = frozenset()

    @property
    def q(self) -> int:
        return self.field.q

    def vertex(self, i: int) -> Fp2Element:
        return self.field.element_from_index(i)

    def neighbors(self, j: Fp2Element) -> List[Fp2Element]:
        return [self.vertex(i) for i in self.adjacency[self.field.lift(j).index()]]

    def out_degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def in_degrees(self) -> Dict[int, int]:
        deg = {i: 0 for i in self.adjacency}
        for nbrs in self.adjacency.values():
            for k in nbrs:
                deg[k] += 1
        return deg

    def edges(self) -> Iterable[Tuple[int, int, int]]:
        """(source, target, multiplicity) triples."""
        for i, nbrs in self.adjacency.items():
            for k in sorted(set(nbrs), key=self._key):
                yield i, k, nbrs.count(k)

    def _key(self, i: int) -> Tuple[int, int]:
        return (i % self.field.p, i // self.field.p)

    def components(self) -> List[List[int]]:
        """Connected components (edges taken undirected), sorted vertex lists."""
        undirected: Dict[int, Set[int]] = {i: set() for i in self.adjacency}
        for i, nbrs in self.adjacency.items():
            for k in nbrs:
                undirected[i].add(k)
                undirected[k].add(i)
        seen: Set[int] = set()
        comps = []
        for start in sorted(self.adjacency, key=self._key):
            if start in seen:
                continue
            seen.add(start)
            comp, todo = [start], [start]
            while todo:
                v = todo.pop()
                for w in undirected[v]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        todo.append(w)
            comps.append(sorted(comp, key=self._key))
        return comps

    def is_supersingular(self, i: int) -> bool:
        return i in self.supersingular

    # exports

    def to_dot(self) -> str:
        lines = [f'digraph "G_{self.ell}(F_{self.q})" {{']
        for i in sorted(self.adjacency, key=self._key):
            attrs = f'label="{self.vertex(i)}"'
            if i in self.supersingular:
                attrs += ", shape=box, style=filled, fillcolor=lightgrey"
            lines.append(f"  v{i} [{attrs}];")
        for i, k, mult in self.edges():
            extra = f' [label="{mult}"]' if mult > 1 else ""
            lines.append(f"  v{i} -> v{k}{extra};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "field": str(self.field),
            "q": self.q,
            "ell": self.ell,
            "vertices": [
                {
                    "j": str(self.vertex(i)),
                    "supersingular": i in self.supersingular,
                    "neighbors": [str(self.vertex(k)) for k in self.adjacency[i]],
                }
                for i in sorted(self.adjacency, key=self._key)
            ],
        }
        return json.dumps(doc, indent=1) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["source", "target", "multiplicity", "supersingular"])
        for i, k, mult in self.edges():
            w.writerow([self.vertex(i), self.vertex(k), mult, int(i in self.supersingular)])
        return buf.getvalue()


def build_graph(field: FieldSpec, ell: int, data=None) -> IsogenyGraph:
    """G_ell(F_q) with edges weighted by root multiplicity."""
    p, q = field.p, field.q
    if q > MAX_Q:
        raise FieldTooLarge(f"q={q} exceeds the desk-scale bound {MAX_Q}")
    if ell == p:
        raise SameCharacteristic(f"ell={ell} equals the characteristic")
    if isinstance(data, ModpolyDatabase):
        phi = data.get(ell)
    else:
        phi = load_modpoly(ell, data)
    n = ell + 2
    M = phi.reduced(p)
    vf = _VecField(field)

    # coefficient arrays c_b(j) = sum_a M[a][b] j^a for every j
    pw = [(np.ones(q, dtype=np.int64), np.zeros(q, dtype=np.int64))]
    for _ in range(n - 1):
        pw.append(vf.mul(*pw[-1], vf.all0, vf.all1))
    coef0 = np.zeros((n, q), dtype=np.int64)
    coef1 = np.zeros((n, q), dtype=np.int64)
    for b in range(n):
        for a in range(n):
            if M[a][b]:
                coef0[b] = (coef0[b] + M[a][b] * pw[a][0]) % p
                coef1[b] = (coef1[b] + M[a][b] * pw[a][1]) % p

    roots_j: List[np.ndarray] = []
    roots_x: List[np.ndarray] = []
    rows = max(1, _CHUNK // q)
    x0, x1 = vf.all0[None, :], vf.all1[None, :]
    for start in range(0, q, rows):
        sl = slice(start, min(q, start + rows))
        acc0 = np.repeat(coef0[n - 1, sl, None], q, axis=1)
        acc1 = np.repeat(coef1[n - 1, sl, None], q, axis=1)
        for b in range(n - 2, -1, -1):
            acc0, acc1 = vf.mul(acc0, acc1, x0, x1)
            acc0 = (acc0 + coef0[b, sl, None]) % p
            acc1 = (acc1 + coef1[b, sl, None]) % p
        jj, xx = np.nonzero((acc0 == 0) & (acc1 == 0))
        roots_j.append(jj + start)
        roots_x.append(xx)
    rj = np.concatenate(roots_j)
    rx = np.concatenate(roots_x)
    mult = _multiplicities(vf, coef0, coef1, rj, rx)

    key = lambda i: (i % p, i // p)  # noqa: E731
    adjacency: Dict[int, List[int]] = {i: [] for i in range(q)}
    for j, x, m in zip(rj.tolist(), rx.tolist(), mult.tolist()):
        adjacency[j].extend([x] * m)
    adj = {i: tuple(sorted(v, key=key)) for i, v in adjacency.items()}

    t = trace_table(field)
    ss = frozenset(np.nonzero(t % p == 0)[0].tolist())
    return IsogenyGraph(field, ell, adj, ss)


def _multiplicities(vf: _VecField, coef0, coef1, rj, rx) -> np.ndarray:
    """Order of vanishing at each root via Hasse derivatives sum C(b,k) c_b x^(b-k)."""
    n = coef0.shape[0]
    p = vf.p
    mult = np.ones(len(rj), dtype=np.int64)
    alive = np.ones(len(rj), dtype=bool)
    x0, x1 = vf.all0[rx], vf.all1[rx]
    for k in range(1, n - 1):
        s0 = np.zeros(len(rj), dtype=np.int64)
        s1 = np.zeros(len(rj), dtype=np.int64)
        for b in range(n - 1, k - 1, -1):
            s0, s1 = vf.mul(s0, s1, x0, x1)
            c = math.comb(b, k) % p
            s0 = (s0 + c * coef0[b, rj]) % p
            s1 = (s1 + c * coef1[b, rj]) % p
        vanish = alive & (s0 == 0) & (s1 == 0)
        mult += vanish
        alive = vanish
    return mult


# --------------------------------------------------------------------------
# volcano profiles


def _squarefree_split(n: int) -> Tuple[int, int]:
    """n = f^2 * s with s squarefree."""
    f, s, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            f *= d
        if n % d == 0:
            n //= d
            s *= d
        d += 1
    return f, s * n


def norm_equation(q: int, t: int) -> Tuple[int, int]:
    """(v, D) with 4q = t^2 - v^2 D and D a fundamental discriminant."""
    N = 4 * q - t * t
    if N <= 0:
        raise NoOrdinaryCurveWithJ(f"4q - t^2 = {N} is not positive")
    f, s = _squarefree_split(N)
    D = -s
    if D % 4 == 1:
        return f, D
    # D = 2, 3 mod 4: the fundamental discriminant is 4D and v absorbs the 2
    return f // 2, 4 * D


def _component_trace(graph: IsogenyGraph, i0: int, comp: List[int]) -> int:
    # j = 0 and 1728 have extra twists whose traces differ from the class
    # the edges live in; read t off an ordinary vertex outside those two
    special = {0, 1728 % graph.field.p}
    traces = trace_table(graph.field)
    if i0 not in special:
        return abs(int(traces[i0]))
    for i in comp:
        if i not in special:
            return abs(int(traces[i]))
    # a component made of 0 and 1728 alone: use the twist consistent with
    # the degrees (depth 0 exactly when no vertex has full degree)
    full = any(graph.out_degree(i) == graph.ell + 1 for i in comp)
    options = sorted(
        set.intersection(*(set(twist_traces(graph.field, i)) for i in comp))
    )
    for t in options:
        if 4 * graph.q - t * t <= 0:
            continue
        d = _valuation(norm_equation(graph.q, t)[0], graph.ell)
        if (d > 0) == full:
            return t
    return abs(int(traces[i0]))


@dataclass(frozen=True)
class VolcanoProfile:
    t: int
    v: int
    D: int
    d: int
    level_of: Dict[int, int]
    vertices: Tuple[int, ...] = ()

    @property
    def levels(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.d + 1)]
        for i, lvl in self.level_of.items():
            if 0 <= lvl <= self.d:
                out[lvl].append(i)
        return out


def _valuation(n: int, ell: int) -> int:
    k = 0
    while n and n % ell == 0:
        n //= ell
        k += 1
    return k


def component_of(graph: IsogenyGraph, i: int) -> List[int]:
    for comp in graph.components():
        if i in comp:
            return comp
    raise KeyError(i)


def profile_component(graph: IsogenyGraph, j0, component: Optional[List[int]] = None) -> VolcanoProfile:
    i0 = j0 if isinstance(j0, int) else graph.field.lift(j0).index()
    if i0 in graph.supersingular:
        raise SupersingularVertex(f"{graph.vertex(i0)} is supersingular")
    comp = component if component is not None else component_of(graph, i0)
    q = graph.q
    t = _component_trace(graph, i0, comp)
    v, D = norm_equation(q, t)
    d = _valuation(v, graph.ell)
    # level i = d - distance to the floor (vertices of degree < ell + 1)
    full = graph.ell + 1
    dist = {i: 0 for i in comp if graph.out_degree(i) < full}
    todo = deque(dist)
    while todo:
        u = todo.popleft()
        for w in graph.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                todo.append(w)
    level_of = {i: d - dist.get(i, d + 1) for i in comp}
    return VolcanoProfile(t, v, D, d, level_of, tuple(comp))


@dataclass
class VolcanoReport:
    checks: Dict[str, List[int]] = dc_field(default_factory=dict)
    notes: List[str] = dc_field(default_factory=list)

    def fail(self, clause: str, vertex: int) -> None:
        self.checks.setdefault(clause, []).append(vertex)

    def mark(self, clause: str) -> None:
        self.checks.setdefault(clause, [])

    @property
    def ok(self) -> bool:
        return not any(self.checks.values())

    def failures(self) -> Dict[str, List[int]]:
        return {k: v for k, v in self.checks.items() if v}


CLAUSES = ("i", "ii", "iii", "iv", "norm_equation", "depth_bound", "trace_constant", "edge_types")


def verify_volcano(graph: IsogenyGraph, profile: VolcanoProfile) -> VolcanoReport:
    """Check the level structure of one ordinary component."""
    rep = VolcanoReport()
    for c in CLAUSES:
        rep.mark(c)
    ell, q, d = graph.ell, graph.q, profile.d
    lvl = profile.level_of
    comp = profile.vertices or tuple(lvl)
    anchor = comp[0]
    if 4 * q != profile.t**2 - profile.v**2 * profile.D:
        rep.fail("norm_equation", anchor)
    if not d < math.log(math.sqrt(4 * q), ell):
        rep.fail("depth_bound", anchor)
    for i in comp:
        if profile.t not in twist_traces(graph.field, i):
            rep.fail("trace_constant", i)
        if i in graph.supersingular:
            rep.fail("edge_types", i)
    for i in comp:
        level = lvl[i]
        nbrs = graph.adjacency[i]
        deg = len(nbrs)
        if not 0 <= level <= d:
            rep.fail("i", i)
            continue
        if (deg == ell + 1) != (level < d):
            rep.fail("i", i)
        down = sum(1 for k in nbrs if lvl.get(k) == level + 1)
        up = sum(1 for k in nbrs if lvl.get(k) == level - 1)
        if level == 0 < d and down < ell - 1:
            rep.fail("ii", i)
        if 0 < level < d and not (up == 1 and down == deg - 1):
            rep.fail("iii", i)
        if 0 < level == d and not (deg == 1 and up == 1):
            rep.fail("iv", i)
    if ell == 2 and d > 1:
        sizes = [len(v) for v in profile.levels]
        for i in range(1, d):
            if 2 * sizes[i] != sizes[i + 1]:
                rep.notes.append(f"level sizes {sizes} break #V_i = #V_(i+1)/2 at i={i}")
    ins = graph.in_degrees()
    for i in comp:
        if ins[i] != graph.out_degree(i):
            rep.notes.append(f"in-degree {ins[i]} != out-degree {graph.out_degree(i)} at {graph.vertex(i)}")
    return rep


# --------------------------------------------------------------------------
# paths


def _successors(graph: IsogenyGraph, prev: int, cur: int) -> List[int]:
    nbrs = list(graph.adjacency[cur])
    nbrs.remove(prev)  # Phi(cur, X) / (X - prev)
    return nbrs


def reachable_set(graph: IsogenyGraph, j0, j1, k: int) -> Set[Fp2Element]:
    """End points of all length-k paths that start j0, j1."""
    i0 = j0 if isinstance(j0, int) else graph.field.lift(j0).index()
    i1 = j1 if isinstance(j1, int) else graph.field.lift(j1).index()
    if i1 not in graph.adjacency.get(i0, ()):
        raise NotAnEdge(f"({graph.vertex(i0)}, {graph.vertex(i1)}) is not an edge")
    states = {(i0, i1)}
    for _ in range(k - 1):
        states = {(b, c) for a, b in states for c in _successors(graph, a, b)}
        if not states:
            break
    return {graph.vertex(b) for _, b in states}


def path_horizons(graph: IsogenyGraph) -> Dict[Tuple[int, int], float]:
    """Longest path length starting with each edge (inf if unbounded).

    R_k(j0, j1) is empty exactly for k > horizon(j0, j1).
    """
    states = [(a, b) for a, nbrs in graph.adjacency.items() for b in set(nbrs)]
    succ = {s: [(s[1], c) for c in set(_successors(graph, *s))] for s in states}
    preds: Dict[Tuple[int, int], List[Tuple[int, int]]] = {s: [] for s in states}
    remaining = {}
    for s, nxt in succ.items():
        remaining[s] = len(nxt)
        for n in nxt:
            preds[n].append(s)
    horizon: Dict[Tuple[int, int], float] = {}
    todo = deque(s for s in states if remaining[s] == 0)
    for s in todo:
        horizon[s] = 1
    while todo:
        s = todo.popleft()
        for pr in preds[s]:
            remaining[pr] -= 1
            if remaining[pr] == 0:
                horizon[pr] = 1 + max(horizon[n] for n in succ[pr])
                todo.append(pr)
    return {s: horizon.get(s, math.inf) for s in states}


@dataclass
class PathReport:
    ordinary_checked: int = 0
    supersingular_checked: int = 0
    violations: List[Tuple[int, str]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_paths(graph: IsogenyGraph, horizons=None) -> PathReport:
    """Both halves of the path dichotomy for every vertex of degree ell + 1."""
    rep = PathReport()
    h = horizons if horizons is not None else path_horizons(graph)
    ell, q = graph.ell, graph.q
    bound = math.log(math.sqrt(4 * q), ell) + 1
    for j0, nbrs in graph.adjacency.items():
        if len(nbrs) != ell + 1:
            continue
        if j0 in graph.supersingular:
            if q == graph.field.p:
                continue
            rep.supersingular_checked += 1
            if any(h[(j0, j1)] != math.inf for j1 in nbrs):
                rep.violations.append((j0, "supersingular path dies"))
        else:
            rep.ordinary_checked += 1
            short = sum(1 for j1 in nbrs if h[(j0, j1)] + 1 < bound)
            if short < ell - 1:
                rep.violations.append((j0, f"only {short} dying edges"))
    return rep


def supersingular_components(graph: IsogenyGraph) -> List[List[int]]:
    return [c for c in graph.components() if c[0] in graph.supersingular]
