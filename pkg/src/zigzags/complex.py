"""Pure thin chamber complexes, their adjacency graphs and path distances.

Vertices are interned to dense integers in order of first appearance; the
original tokens survive as ``labels``.  Faces are sorted tuples of vertex ids.
"""
from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import networkx as nx

from .errors import (
    DuplicateFacet,
    DuplicateVertexInFacet,
    EmptyComplex,
    FaceNotInComplex,
    FaceNotInGraph,
    LevelOutOfRange,
    NotChamber,
    NotPure,
    NotThin,
    ParameterOutOfRange,
    ParseError,
)

Face = tuple  # sorted tuple of vertex ids


@dataclass(frozen=True, eq=False)
class Complex:
    labels: tuple
    facets: tuple
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.facets[0])

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_facets(self) -> int:
        return len(self.facets)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.labels == other.labels and frozenset(self.facets) == frozenset(other.facets)

    def __hash__(self):
        return hash((self.labels, frozenset(self.facets)))

    def __repr__(self):
        return f"{type(self).__name__}(rank={self.rank}, vertices={self.num_vertices}, facets={self.num_facets})"

    # -- label handling ----------------------------------------------------

    @property
    def vertex_ids(self) -> dict:
        if "vid" not in self._memo:
            self._memo["vid"] = {lab: i for i, lab in enumerate(self.labels)}
        return self._memo["vid"]

    def ids(self, tokens) -> tuple:
        """Map labels (or anything whose ``str`` is a label) to vertex ids, order kept."""
        vid = self.vertex_ids
        try:
            return tuple(vid[str(t)] for t in tokens)
        except KeyError as exc:
            raise FaceNotInComplex(f"unknown vertex {exc.args[0]!r}") from None

    def face(self, tokens) -> Face:
        """Sorted face from labels; raises if it is not a face of the complex."""
        f = tuple(sorted(self.ids(tokens)))
        if not self.is_face(f):
            raise FaceNotInComplex(f"{{{', '.join(map(str, tokens))}}} is not a face")
        return f

    def label_seq(self, vertices) -> list:
        return [self.labels[v] for v in vertices]

    # -- faces -------------------------------------------------------------

    @property
    def facet_index(self) -> dict:
        if "fidx" not in self._memo:
            self._memo["fidx"] = {f: i for i, f in enumerate(self.facets)}
        return self._memo["fidx"]

    def faces(self, k: int) -> list:
        """All k-faces (k+1 vertices), sorted."""
        if not -1 <= k <= self.rank - 1:
            raise LevelOutOfRange(f"level {k} outside -1..{self.rank - 1}")
        key = ("faces", k)
        if key not in self._memo:
            found = set()
            for f in self.facets:
                found.update(itertools.combinations(f, k + 1))
            self._memo[key] = sorted(found)
        return self._memo[key]

    def face_set(self, k: int) -> frozenset:
        key = ("faceset", k)
        if key not in self._memo:
            self._memo[key] = frozenset(self.faces(k))
        return self._memo[key]

    def is_face(self, vertices) -> bool:
        f = tuple(sorted(vertices))
        if len(f) != len(set(f)) or len(f) > self.rank:
            return False
        return f in self.face_set(len(f) - 1)


@dataclass(frozen=True, eq=False, repr=False)
class ThinChamberComplex(Complex):
    """A validated complex; ``ridges`` maps each ridge to its two facets."""

    ridges: dict = field(default_factory=dict, repr=False)

    @property
    def across(self) -> dict:
        """ridge -> the two vertices that complete it to a facet."""
        if "across" not in self._memo:
            out = {}
            for r, (a, b) in self.ridges.items():
                rs = set(r)
                (x,) = set(self.facets[a]) - rs
                (y,) = set(self.facets[b]) - rs
                out[r] = (x, y)
            self._memo["across"] = out
        return self._memo["across"]

    @property
    def facet_neighbors(self) -> list:
        if "fnbr" not in self._memo:
            nbr = [[] for _ in self.facets]
            for a, b in self.ridges.values():
                nbr[a].append(b)
                nbr[b].append(a)
            self._memo["fnbr"] = [sorted(x) for x in nbr]
        return self._memo["fnbr"]

    def facet_distances(self, source: int) -> list:
        """BFS distances in the facet graph from facet index ``source``."""
        key = ("fdist", source)
        if key not in self._memo:
            self._memo[key] = _bfs(self.facet_neighbors, source)
        return self._memo[key]


def _bfs(neighbors, source):
    dist = [-1] * len(neighbors)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in neighbors[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


# -- construction ------------------------------------------------------------

def build_complex(facet_list) -> Complex:
    """Intern tokens and check purity; tokens are compared by ``str``."""
    facet_list = [list(f) for f in facet_list]
    if not facet_list:
        raise EmptyComplex("no facets")
    ids: dict = {}
    labels = []
    facets = []
    seen = set()
    rank = None
    for pos, tokens in enumerate(facet_list):
        if not tokens:
            raise EmptyComplex(f"facet {pos} is empty")
        row = []
        for t in tokens:
            t = str(t)
            if t not in ids:
                ids[t] = len(labels)
                labels.append(t)
            row.append(ids[t])
        if len(set(row)) != len(row):
            raise DuplicateVertexInFacet(f"facet {pos} repeats a vertex: {tokens}")
        if rank is None:
            rank = len(row)
        elif len(row) != rank:
            raise NotPure(f"facet {pos} has {len(row)} vertices, expected {rank}")
        f = tuple(sorted(row))
        if f in seen:
            raise DuplicateFacet(f"facet {pos} repeats {tokens}")
        seen.add(f)
        facets.append(f)
    return Complex(tuple(labels), tuple(facets))


def validate_thin_chamber(c: Complex) -> ThinChamberComplex:
    incident: dict = {}
    for i, f in enumerate(c.facets):
        for r in itertools.combinations(f, len(f) - 1):
            incident.setdefault(r, []).append(i)
    bad = [(tuple(c.label_seq(r)), len(fs)) for r, fs in sorted(incident.items()) if len(fs) != 2]
    if bad:
        raise NotThin(bad)
    ridges = {r: (fs[0], fs[1]) for r, fs in incident.items()}

    nbr = [[] for _ in c.facets]
    for a, b in ridges.values():
        nbr[a].append(b)
        nbr[b].append(a)
    sizes = []
    comp = [-1] * len(nbr)
    for s in range(len(nbr)):
        if comp[s] >= 0:
            continue
        comp[s] = len(sizes)
        size, queue = 0, deque([s])
        while queue:
            u = queue.popleft()
            size += 1
            for v in nbr[u]:
                if comp[v] < 0:
                    comp[v] = comp[s]
                    queue.append(v)
        sizes.append(size)
    if len(sizes) > 1:
        raise NotChamber(sizes)
    return ThinChamberComplex(c.labels, c.facets, ridges=ridges)


def thin_chamber(facet_list) -> ThinChamberComplex:
    return validate_thin_chamber(build_complex(facet_list))


# -- adjacency graphs --------------------------------------------------------

@dataclass(frozen=True)
class AdjacencyGraph:
    level: int
    nodes: tuple
    edges: tuple
    neighbors: tuple = field(repr=False)

    @property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.nodes)}

    def degree(self, node) -> int:
        return len(self.neighbors[self.index[node]])

    def is_connected(self) -> bool:
        return not self.nodes or min(_bfs(self.neighbors, 0)) >= 0


def adjacency_graph(cx: ThinChamberComplex, k: int) -> AdjacencyGraph:
    n = cx.rank
    if not 0 <= k <= n - 1:
        raise LevelOutOfRange(f"level {k} outside 0..{n - 1}")
    key = ("graph", k)
    if key in cx._memo:
        return cx._memo[key]
    nodes = cx.faces(k)
    index = {x: i for i, x in enumerate(nodes)}
    edges = set()
    if k == n - 1:
        for a, b in cx.ridges.values():
            edges.add((min(index[cx.facets[a]], index[cx.facets[b]]),
                       max(index[cx.facets[a]], index[cx.facets[b]])))
    else:
        # Two k-faces through a common (k-1)-face Y are adjacent iff their
        # union is a (k+1)-face Z.
        by_sub: dict = {}
        for x in nodes:
            for y in itertools.combinations(x, k):
                by_sub.setdefault(y, []).append(index[x])
        upper = cx.face_set(k + 1)
        for group in by_sub.values():
            for i, j in itertools.combinations(group, 2):
                if tuple(sorted(set(nodes[i]) | set(nodes[j]))) in upper:
                    edges.add((i, j))
    nbr = [[] for _ in nodes]
    for i, j in sorted(edges):
        nbr[i].append(j)
        nbr[j].append(i)
    g = AdjacencyGraph(k, tuple(nodes), tuple(sorted(edges)), tuple(tuple(x) for x in nbr))
    cx._memo[key] = g
    return g


def path_distance(g: AdjacencyGraph, x, y) -> int:
    idx = g.index
    x, y = tuple(sorted(x)), tuple(sorted(y))
    for f in (x, y):
        if f not in idx:
            raise FaceNotInGraph(f"{f} is not a node of the level-{g.level} graph")
    return _bfs(g.neighbors, idx[x])[idx[y]]


# -- operations on complexes -------------------------------------------------

def join(c1: Complex, c2: Complex) -> ThinChamberComplex:
    """Join; vertices are tagged ``1.<label>`` and ``2.<label>``."""
    facets = []
    for f in c1.facets:
        left = [f"1.{c1.labels[v]}" for v in f]
        for g in c2.facets:
            facets.append(left + [f"2.{c2.labels[v]}" for v in g])
    return thin_chamber(facets)


def simplex(n: int) -> ThinChamberComplex:
    if n < 1:
        raise ParameterOutOfRange("simplex rank must be >= 1")
    return thin_chamber(itertools.combinations(range(1, n + 2), n))


def cross_polytope(n: int) -> ThinChamberComplex:
    if n < 1:
        raise ParameterOutOfRange("cross-polytope rank must be >= 1")
    facets = [[s * i for s, i in zip(signs, range(1, n + 1))]
              for signs in itertools.product((1, -1), repeat=n)]
    return thin_chamber(facets)


def bipyramid(m: int) -> ThinChamberComplex:
    """Bipyramid over an m-gon: apexes ``a``, ``b`` and ring ``1..m``."""
    if m < 3:
        raise ParameterOutOfRange("bipyramid needs m >= 3")
    ring = [str(i) for i in range(1, m + 1)]
    facets = [[apex, ring[i], ring[(i + 1) % m]] for apex in "ab" for i in range(m)]
    return thin_chamber(facets)


def pinched_torus(m: int = 3) -> ThinChamberComplex:
    """Annulus on rings ``t*`` and ``b*`` with both rings coned to ``a``:
    thin and chamber, but the link of ``a`` is two circles."""
    if m < 3:
        raise ParameterOutOfRange("pinched torus needs m >= 3")
    facets = []
    for i in range(m):
        j = (i + 1) % m
        facets += [["a", f"t{i}", f"t{j}"], ["a", f"b{i}", f"b{j}"],
                   [f"t{i}", f"t{j}", f"b{i}"], [f"t{j}", f"b{i}", f"b{j}"]]
    return thin_chamber(facets)


_BUILTINS = {"simplex": simplex, "cross": cross_polytope, "cross_polytope": cross_polytope,
             "bipyramid": bipyramid, "pinched": pinched_torus}


def builtin(name: str) -> ThinChamberComplex:
    """``simplex:n``, ``cross:n``, ``bipyramid:m`` or ``pinched:m``."""
    kind, _, arg = name.partition(":")
    if kind not in _BUILTINS or not arg.isdigit():
        raise ParameterOutOfRange(f"unknown built-in complex {name!r}")
    return _BUILTINS[kind](int(arg))


def is_k_neighborly(cx: Complex, k: int) -> bool:
    if not 1 <= k <= cx.rank:
        raise ParameterOutOfRange(f"k={k} outside 1..{cx.rank}")
    return len(cx.faces(k - 1)) == math.comb(cx.num_vertices, k)


def is_simplex(cx: Complex) -> bool:
    """True iff the complex is the n-simplex up to relabelling."""
    return cx.num_vertices == cx.rank + 1 and cx.num_facets == cx.rank + 1


def isomorphic(c1: Complex, c2: Complex) -> bool:
    """Label-blind isomorphism via the vertex-facet incidence graph."""
    if (c1.rank, c1.num_vertices, c1.num_facets) != (c2.rank, c2.num_vertices, c2.num_facets):
        return False

    def incidence(c):
        g = nx.Graph()
        g.add_nodes_from((("v", v) for v in range(c.num_vertices)), side=0)
        g.add_nodes_from((("f", i) for i in range(c.num_facets)), side=1)
        g.add_edges_from((("f", i), ("v", v)) for i, f in enumerate(c.facets) for v in f)
        return g

    return nx.is_isomorphic(incidence(c1), incidence(c2),
                            node_match=lambda a, b: a["side"] == b["side"])


# -- .cplx files -------------------------------------------------------------

def parse_cplx(text: str) -> Complex:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("no facets in input")
    try:
        return build_complex([r for _, r in rows])
    except (NotPure, DuplicateFacet, DuplicateVertexInFacet) as exc:
        # recover the offending line from the facet position in the message
        pos = int(str(exc).split()[1])
        err = type(exc)(f"line {rows[pos][0]}: {exc}")
        err.line = rows[pos][0]
        raise err from None


def canonical_numbering(c: Complex) -> list:
    """Vertex renumbering under which the sorted facet list introduces the
    vertices in increasing order, so that re-parsing (first-appearance
    interning) reproduces the numbering.

    Greedy: emit the facet whose already-numbered vertices form the least
    sorted prefix (a missing entry counts as larger than any number), ties
    by the current ids; its new vertices take the next numbers.
    """
    inf = len(c.labels)
    new = [-1] * inf
    by_vertex = [[] for _ in range(inf)]
    for i, f in enumerate(c.facets):
        for v in f:
            by_vertex[v].append(i)

    def key(i):
        known = sorted(new[v] for v in c.facets[i] if new[v] >= 0)
        return (tuple(known) + (inf,), c.facets[i])

    heap = [(key(i), i) for i in range(len(c.facets))]
    heapq.heapify(heap)
    done = [False] * len(c.facets)
    nxt = 0
    while heap:
        k, i = heapq.heappop(heap)
        if done[i] or k != key(i):
            continue
        done[i] = True
        for v in c.facets[i]:
            if new[v] < 0:
                new[v] = nxt
                nxt += 1
                for j in by_vertex[v]:
                    if not done[j]:
                        heapq.heappush(heap, (key(j), j))
    return new


def format_cplx(c: Complex) -> str:
    """Facets in sorted order, vertices sorted within a facet, under the
    numbering of :func:`canonical_numbering`; ``format(parse(text))`` is
    then a fixed point."""
    new = canonical_numbering(c)
    rows = sorted(tuple(sorted(new[v] for v in f)) for f in c.facets)
    inv = [0] * len(new)
    for v, i in enumerate(new):
        inv[i] = v
    return "".join(" ".join(c.labels[inv[i]] for i in r) + "\n" for r in rows)


def canonical_form(c: Complex) -> Complex:
    """The complex as it reads back from its own .cplx text."""
    out = parse_cplx(format_cplx(c))
    return validate_thin_chamber(out) if isinstance(c, ThinChamberComplex) else out


def read_cplx(path) -> Complex:
    return parse_cplx(Path(path).read_text(encoding="utf-8"))


def write_cplx(c: Complex, path) -> None:
    Path(path).write_text(format_cplx(c), encoding="utf-8")
