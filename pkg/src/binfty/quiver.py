"""Doubled quivers, orientations, and representations over F_p.

Conventions.  A graph has vertex set I and undirected edge set; the doubled
arrow set H contains both directions (out, in) of every edge, with the bar
involution swapping them.  An orientation is a subset of H meeting every
{tau, bar tau} pair exactly once.  The sign of an arrow is +1 on the chosen
orientation and -1 on its bar.  A representation assigns to each vertex a
space F_p^d and to each arrow tau a matrix of shape (d_in(tau), d_out(tau));
arrows not stored act as zero, so the same class covers both E-points
(orientation part only) and X-points (all of H).
"""

from __future__ import annotations

import json

import numpy as np

from . import modp


class QuiverGraph:
    """Finite graph without loops, with its doubled arrow set."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(sorted(vertices))
        norm = []
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            norm.append((min(a, b), max(a, b)))
        self.edges = tuple(sorted(norm))
        self.arrows = tuple(
            arr for (a, b) in self.edges for arr in ((a, b), (b, a))
        )
        self._adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            self._adj[a].append(b)
            self._adj[b].append(a)

    @staticmethod
    def bar(arrow):
        return (arrow[1], arrow[0])

    def arrows_out(self, i):
        """All arrows of H with out(tau) = i."""
        return tuple((i, j) for j in self._adj[i])

    def arrows_in(self, i):
        return tuple((j, i) for j in self._adj[i])

    def neighbors(self, i):
        return tuple(self._adj[i])

    def cartan(self, i, j):
        """Symmetric Cartan pairing <h_i, alpha_j> of the underlying graph."""
        if i == j:
            return 2
        return -sum(1 for k in self._adj[i] if k == j)

    def index(self, v):
        return self.vertices.index(v)

    def is_line(self):
        """True when the graph is a type-A path 1 - 2 - ... - r."""
        r = len(self.vertices)
        return self.vertices == tuple(range(1, r + 1)) and self.edges == tuple(
            (k, k + 1) for k in range(1, r)
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuiverGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))


def type_a(r):
    """The type A_r path graph on vertices 1..r."""
    return QuiverGraph(range(1, r + 1), [(k, k + 1) for k in range(1, r)])


def cartan_pairing(graph, i, j):
    return graph.cartan(i, j)


class Orientation:
    """A choice of one arrow per edge.  eps is +1 on it, -1 on the bars."""

    def __init__(self, graph, arrows):
        self.graph = graph
        arr = set(map(tuple, arrows))
        seen_edges = {(min(a, b), max(a, b)) for a, b in arr}
        if len(arr) != len(graph.edges) or seen_edges != set(graph.edges):
            raise ValueError("orientation must pick one direction per edge")
        self.arrows = frozenset(arr)

    def eps(self, arrow):
        return 1 if tuple(arrow) in self.arrows else -1

    def is_sink(self, i):
        return all(arr[1] == i for arr in self.arrows if i in arr)

    def is_source(self, i):
        return all(arr[0] == i for arr in self.arrows if i in arr)

    def reflect(self, i):
        """s_i of the orientation: reverse every arrow touching i."""
        flipped = {
            (a, b) if i not in (a, b) else (b, a) for (a, b) in self.arrows
        }
        return Orientation(self.graph, flipped)

    def flip_edge(self, edge):
        a, b = min(edge), max(edge)
        new = set()
        for arr in self.arrows:
            if set(arr) == {a, b}:
                new.add((arr[1], arr[0]))
            else:
                new.add(arr)
        return Orientation(self.graph, new)

    def bitmask(self):
        """One bit per edge (in sorted edge order): 0 if oriented max->min."""
        cached = getattr(self, "_bitmask", None)
        if cached is None:
            bits = 0
            for k, (a, b) in enumerate(self.graph.edges):
                if (a, b) in self.arrows:
                    bits |= 1 << k
            self._bitmask = cached = bits
        return cached

    def __eq__(self, other):
        return isinstance(other, Orientation) and self.arrows == other.arrows

    def __hash__(self):
        return hash(self.arrows)


def omega0(graph):
    """The equioriented orientation of a path graph: every arrow k+1 -> k."""
    if not graph.is_line():
        raise ValueError("omega0 is defined for path graphs")
    return Orientation(graph, [(k + 1, k) for k in range(1, len(graph.vertices))])


class Representation:
    """A point of the representation space: dims plus per-arrow matrices."""

    def __init__(self, graph, dims, arrows, p=modp.DEFAULT_PRIME):
        self.graph = graph
        self.dims = dict(dims)
        for v in graph.vertices:
            self.dims.setdefault(v, 0)
        self.p = p
        self.arrows = {}
        for arrow, m in arrows.items():
            arrow = tuple(arrow)
            if arrow not in graph.arrows:
                raise ValueError(f"unknown arrow {arrow}")
            m = modp.asmod(m, p)
            want = (self.dims[arrow[1]], self.dims[arrow[0]])
            if m.shape != want:
                raise ValueError(f"arrow {arrow}: shape {m.shape} != {want}")
            self.arrows[arrow] = m

    def mat(self, arrow):
        arrow = tuple(arrow)
        m = self.arrows.get(arrow)
        if m is None:
            m = np.zeros((self.dims[arrow[1]], self.dims[arrow[0]]), dtype=np.int64)
        return m

    def total_dim(self):
        return sum(self.dims.values())

    def restrict(self, arrow_set):
        """Keep only the listed arrows (e.g. the orientation part)."""
        keep = {a: self.arrows[a] for a in map(tuple, arrow_set) if a in self.arrows}
        return Representation(self.graph, self.dims, keep, self.p)

    def weight(self):
        """The weight -sum d_i alpha_i as a coefficient dict {i: -d_i}."""
        return {v: -d for v, d in self.dims.items()}


def moment_map(rep, orientation):
    """mu_i(B) = sum over tau with out(tau)=i of eps(tau) B_bar(tau) B_tau."""
    out = {}
    for i in rep.graph.vertices:
        d = rep.dims[i]
        acc = np.zeros((d, d), dtype=np.int64)
        for tau in rep.graph.arrows_out(i):
            prod = modp.matmul(rep.mat(QuiverGraph.bar(tau)), rep.mat(tau), rep.p)
            acc = (acc + orientation.eps(tau) * prod) % rep.p
        out[i] = acc
    return out


def symplectic_form(x, y, orientation):
    """omega(X, Y) = sum over all tau in H of eps(tau) tr(X_bar(tau) Y_tau)."""
    p = x.p
    total = 0
    for tau in x.graph.arrows:
        prod = modp.matmul(x.mat(QuiverGraph.bar(tau)), y.mat(tau), p)
        total = (total + orientation.eps(tau) * int(np.trace(prod))) % p
    return total


def is_nilpotent(rep):
    """True iff all path products long enough to revisit vertices vanish.

    Equivalent to nilpotency of the total endomorphism of the direct sum of
    all vertex spaces, checked by repeated squaring.
    """
    n = rep.total_dim()
    if n == 0:
        return True
    offs = {}
    pos = 0
    for v in rep.graph.vertices:
        offs[v] = pos
        pos += rep.dims[v]
    t = np.zeros((n, n), dtype=np.int64)
    for arrow, m in rep.arrows.items():
        o, i = arrow
        t[offs[i] : offs[i] + rep.dims[i], offs[o] : offs[o] + rep.dims[o]] = m
    power = t
    steps = max(1, n).bit_length()
    for _ in range(steps):
        if not power.any():
            return True
        power = modp.matmul(power, power, rep.p)
    return not power.any()


def path_rank_table(rep, orientation):
    """Ranks of all directed-path composites of the orientation part.

    Only defined for path graphs.  Returns a dict {(dst, src): rank} covering
    every ordered pair joined by a consistently oriented path, including the
    diagonal (i, i) -> dim V_i.
    """
    g = rep.graph
    if not g.is_line():
        raise ValueError("path_rank_table is defined for path graphs")
    table = {(v, v): rep.dims[v] for v in g.vertices}
    for src in g.vertices:
        for step in (1, -1):
            cur = src
            # carry a column basis of the image instead of the composite:
            # each step multiplies a shrinking basis and ranks stay cheap
            u = np.eye(rep.dims[src], dtype=np.int64)
            while (cur, cur + step) in orientation.arrows:
                w = modp.matmul(rep.mat((cur, cur + step)), u, rep.p)
                piv = modp.pivot_columns(w, rep.p)
                cur += step
                table[(cur, src)] = len(piv)
                if not piv:
                    while (cur, cur + step) in orientation.arrows:
                        cur += step
                        table[(cur, src)] = 0
                    break
                u = w[:, piv]
    return table


def ranks_as_triples(table):
    """Serialize a rank table as sorted [dst, src, rank] triples."""
    return sorted([a, b, int(r)] for (a, b), r in table.items())


# ---------------------------------------------------------------------------
# file formats


def graph_to_json(graph, orientation=None):
    doc = {
        "vertices": list(graph.vertices),
        "edges": [list(e) for e in graph.edges],
    }
    if orientation is not None:
        doc["orientation"] = sorted(list(a) for a in orientation.arrows)
    return json.dumps(doc, sort_keys=True)


def graph_from_json(text):
    doc = json.loads(text)
    graph = QuiverGraph(doc["vertices"], [tuple(e) for e in doc["edges"]])
    orientation = None
    if "orientation" in doc:
        orientation = Orientation(graph, [tuple(a) for a in doc["orientation"]])
    return graph, orientation


def representation_to_json(rep):
    doc = {
        "dims": {str(v): rep.dims[v] for v in rep.graph.vertices},
        "p": rep.p,
        "arrows": {
            f"{o}->{i}": [int(x) for x in m.reshape(-1)]
            for (o, i), m in sorted(rep.arrows.items())
        },
    }
    return json.dumps(doc, sort_keys=True)


def representation_from_json(graph, text):
    doc = json.loads(text)
    dims = {int(v): d for v, d in doc["dims"].items()}
    arrows = {}
    for key, flat in doc["arrows"].items():
        o, i = key.split("->")
        arrow = (int(o), int(i))
        shape = (dims[arrow[1]], dims[arrow[0]])
        arrows[arrow] = np.array(flat, dtype=np.int64).reshape(shape)
    return Representation(graph, dims, arrows, doc["p"])
