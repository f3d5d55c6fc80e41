"""Abstract polytopes, flag complexes and generalized (delta-) zigzags.

Faces of rank ``k`` (``-1 <= k <= n``) are numbered ``0..count-1``; only the
incidences between consecutive ranks are stored.  A flag is a tuple holding
one face id per rank ``0..n-1``.
"""
from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .complex import Complex, ThinChamberComplex, validate_thin_chamber
from .coxeter import (
    DEFAULT_CAP,
    CoxeterMatrix,
    coxeter_complex,
    enumerate_group,
    named_matrix,
    parabolic_cosets,
    vertex_label,
)
from .errors import (
    CorrespondenceFailure,
    InvalidFlag,
    InvalidPolytope,
    NotStringDiagram,
    ParseError,
    RankOutOfRange,
)
from .zigzag import enumerate_zigzags, t_orbit, canonical


@dataclass(frozen=True, eq=False)
class AbstractPolytope:
    rank: int
    counts: tuple  # counts[k + 1] = number of k-faces, k = -1..n
    up: tuple  # up[k + 1][i] = frozenset of (k+1)-faces above k-face i, k = -1..n-1
    names: tuple = None  # names[k + 1][i], optional
    _memo: dict = field(default_factory=dict, repr=False)

    def num_faces(self, k: int) -> int:
        return self.counts[k + 1]

    @property
    def f_vector(self) -> tuple:
        return self.counts[1:-1]

    def above(self, k: int, i: int) -> frozenset:
        return self.up[k + 1][i]

    def below(self, k: int, i: int) -> frozenset:
        """(k-1)-faces under the k-face ``i``."""
        if "down" not in self._memo:
            down = [[set() for _ in range(self.counts[r + 1])] for r in range(-1, self.rank + 1)]
            for r in range(-1, self.rank):
                for a, ups in enumerate(self.up[r + 1]):
                    for b in ups:
                        down[r + 2][b].add(a)
            self._memo["down"] = tuple(tuple(frozenset(s) for s in row) for row in down)
        return self._memo["down"][k + 1][i]

    def name(self, k: int, i: int) -> str:
        if self.names is not None:
            return str(self.names[k + 1][i])
        return f"{k}.{i}"

    def flags(self) -> list:
        """All flags, in lexicographic order."""
        if "flags" not in self._memo:
            n = self.rank
            out = []

            def extend(prefix, k, face):
                if k == n - 1:
                    out.append(prefix)
                    return
                for nxt in sorted(self.above(k, face)):
                    extend(prefix + (nxt,), k + 1, nxt)

            extend((), -1, 0)
            self._memo["flags"] = out
        return self._memo["flags"]

    @property
    def num_flags(self) -> int:
        return len(self.flags())


def build_polytope(rank: int, counts, incidences, names=None, check: bool = True) -> AbstractPolytope:
    """``incidences``: triples ``(k, low, high)`` with ``low`` a k-face below the
    (k+1)-face ``high``.  Incidences with the least and greatest face may be
    omitted; they are implied."""
    counts = list(counts)
    if len(counts) == rank:
        counts = [1] + counts + [1]
    if len(counts) != rank + 2 or counts[0] != 1 or counts[-1] != 1:
        raise InvalidPolytope("need one least and one greatest face")
    up = [[set() for _ in range(counts[k + 1])] for k in range(-1, rank)]
    for k, a, b in incidences:
        if not -1 <= k < rank or not 0 <= a < counts[k + 1] or not 0 <= b < counts[k + 2]:
            raise InvalidPolytope(f"bad incidence {(k, a, b)}")
        up[k + 1][a].add(b)
    up[0][0] = set(range(counts[1]))
    for a in range(counts[rank]):
        up[rank][a] = {0}
    p = AbstractPolytope(rank, tuple(counts), tuple(tuple(frozenset(s) for s in row) for row in up),
                         names=None if names is None else tuple(tuple(r) for r in names))
    if check:
        validate_polytope(p)
    return p


def validate_polytope(p: AbstractPolytope) -> None:
    n = p.rank
    for k in range(-1, n):
        for i in range(p.num_faces(k)):
            if not p.above(k, i):
                raise InvalidPolytope(f"{k}-face {i} has nothing above it")
    for k in range(0, n + 1):
        for i in range(p.num_faces(k)):
            if not p.below(k, i):
                raise InvalidPolytope(f"{k}-face {i} has nothing below it")
    # diamond condition
    for k in range(0, n):
        for z in range(p.num_faces(k + 1)):
            between: dict = {}
            for x in p.below(k + 1, z):
                for y in p.below(k, x):
                    between[y] = between.get(y, 0) + 1
            for y, c in between.items():
                if c != 2:
                    raise InvalidPolytope(f"diamond fails: {c} {k}-faces between "
                                          f"{k - 1}-face {y} and {k + 1}-face {z}")
    # strong flag-connectivity of every section of rank >= 2
    for lo in range(-1, n - 2):
        for hi in range(lo + 3, n + 1):
            for g in range(p.num_faces(lo)):
                for f in _faces_above_at(p, lo, g, hi):
                    if not _section_connected(p, lo, g, hi, f):
                        raise InvalidPolytope(f"section {hi}-face {f} / {lo}-face {g} is not flag-connected")


def _faces_above_at(p, k, i, target):
    cur = {i}
    for r in range(k, target):
        cur = set().union(*(p.above(r, x) for x in cur))
    return sorted(cur)


def _section_connected(p, lo, g, hi, f) -> bool:
    # faces of ranks lo+1 .. hi-1 lying between g and f
    m = hi - lo - 1
    upward = [{g}]
    for r in range(lo, hi - 1):
        upward.append(set().union(*(p.above(r, x) for x in upward[-1])))
    downward = [{f}]
    for r in range(hi, lo, -1):
        downward.append(set().union(*(p.below(r, x) for x in downward[-1])))
    downward.reverse()  # downward[j] holds faces of rank lo + j
    layers = [upward[j] & downward[j] for j in range(1, m + 1)]
    flags = []

    def extend(prefix, idx, face):
        if idx == len(layers):
            if f in p.above(hi - 1, face):
                flags.append(prefix)
            return
        for x in sorted(p.above(lo + idx, face) & layers[idx]):
            extend(prefix + (x,), idx + 1, x)

    extend((), 0, g)
    if not flags:
        return False
    index = {fl: i for i, fl in enumerate(flags)}
    seen = [False] * len(flags)
    seen[0] = True
    queue = deque([flags[0]])
    count = 1
    while queue:
        fl = queue.popleft()
        for j in range(m):
            below_face = g if j == 0 else fl[j - 1]
            above_face = f if j == m - 1 else fl[j + 1]
            r = lo + 1 + j
            for alt in p.above(r - 1, below_face) & p.below(r + 1, above_face):
                if alt != fl[j]:
                    nxt = fl[:j] + (alt,) + fl[j + 1:]
                    k = index.get(nxt)
                    if k is not None and not seen[k]:
                        seen[k] = True
                        count += 1
                        queue.append(nxt)
    return count == len(flags)


def check_polytope_flag(p: AbstractPolytope, flag) -> tuple:
    flag = tuple(flag)
    if len(flag) != p.rank:
        raise InvalidFlag(f"flag needs {p.rank} faces")
    for k in range(p.rank - 1):
        if flag[k + 1] not in p.above(k, flag[k]):
            raise InvalidFlag(f"faces at ranks {k} and {k + 1} are not incident")
    return flag


# -- constructions -------------------------------------------------------------

def polytope_from_complex(cx: Complex) -> AbstractPolytope:
    n = cx.rank
    faces = [cx.faces(k) for k in range(n)]
    index = [{x: i for i, x in enumerate(fs)} for fs in faces]
    inc = []
    for k in range(n - 1):
        for hi, x in enumerate(faces[k + 1]):
            for sub in itertools.combinations(x, k + 1):
                inc.append((k, index[k][sub], hi))
    names = [["min"]] + [[" ".join(cx.labels[v] for v in x) for x in fs] for fs in faces] + [["max"]]
    return build_polytope(n, [len(fs) for fs in faces], inc, names=names)


def flag_complex(p: AbstractPolytope) -> ThinChamberComplex:
    """Vertices are the proper faces (labelled by ``name``), facets are the flags."""
    labels, vid = [], {}
    facets = []
    for fl in p.flags():
        row = []
        for k, i in enumerate(fl):
            key = (k, i)
            if key not in vid:
                vid[key] = len(labels)
                labels.append(p.name(k, i))
            row.append(vid[key])
        facets.append(tuple(sorted(row)))
    if len(set(labels)) != len(labels):
        raise InvalidPolytope("face names are not unique")
    return validate_thin_chamber(Complex(tuple(labels), tuple(facets)))


def flag_vertex(p: AbstractPolytope, cx: ThinChamberComplex, k: int, i: int) -> int:
    """Vertex id in ``flag_complex(p)`` of the k-face ``i``."""
    return cx.vertex_ids[p.name(k, i)]


def regular_polytope_from_string(M: CoxeterMatrix, cap: int = DEFAULT_CAP) -> AbstractPolytope:
    """Coset geometry of a string diagram: the k-faces are the cosets of the
    subgroup generated by all generators except ``s_k``.  Faces are named
    like the matching Coxeter-complex vertices."""
    if not M.is_string():
        raise NotStringDiagram(f"{M.name or M.m} is not a string diagram")
    t = enumerate_group(M, cap)
    n = t.ngens
    cosets = [parabolic_cosets(t, {k}) for k in range(n)]
    inc = set()
    cols = [c.coset_of.tolist() for c in cosets]
    for w in range(t.size):
        for k in range(n - 1):
            inc.add((k, cols[k][w], cols[k + 1][w]))
    names = [["min"]] + [[vertex_label(k, c) for c in range(cosets[k].count)] for k in range(n)] + [["max"]]
    return build_polytope(n, [c.count for c in cosets], sorted(inc), names=names)


def _cube_matrix(n):
    return named_matrix(f"B{n}").reversed()


def named_polytope(name: str, cap: int = DEFAULT_CAP) -> AbstractPolytope:
    """``icosahedron``, ``24-cell``, ``600-cell``, ``cube:n``, ``cross:n``, ``simplex:n``."""
    fixed = {"icosahedron": "H3", "24-cell": "F4", "600-cell": "H4"}
    if name in fixed:
        return regular_polytope_from_string(named_matrix(fixed[name]), cap)
    kind, _, arg = name.partition(":")
    if arg.isdigit():
        n = int(arg)
        if kind == "simplex" and n >= 1:
            return regular_polytope_from_string(named_matrix(f"A{n}"), cap)
        if kind == "cross" and n >= 2:
            return regular_polytope_from_string(named_matrix(f"B{n}"), cap)
        if kind == "cube" and n >= 2:
            return regular_polytope_from_string(_cube_matrix(n), cap)
    raise NotStringDiagram(f"no built-in polytope {name!r}")


def polytope_matrix(name: str) -> CoxeterMatrix | None:
    fixed = {"icosahedron": "H3", "24-cell": "F4", "600-cell": "H4"}
    if name in fixed:
        return named_matrix(fixed[name])
    kind, _, arg = name.partition(":")
    if arg.isdigit():
        return {"simplex": lambda n: named_matrix(f"A{n}"), "cross": lambda n: named_matrix(f"B{n}"),
                "cube": _cube_matrix}.get(kind, lambda n: None)(int(arg))
    return None


# -- .apoly files ----------------------------------------------------------------

def polytope_to_json(p: AbstractPolytope) -> dict:
    faces = [[p.name(k, i) for i in range(p.num_faces(k))] for k in range(-1, p.rank + 1)]
    inc = [[k, a, b] for k in range(-1, p.rank) for a in range(p.num_faces(k)) for b in sorted(p.above(k, a))]
    return {"rank": p.rank, "faces": faces, "incidence": inc}


def polytope_from_json(data: dict) -> AbstractPolytope:
    try:
        rank = int(data["rank"])
        faces = data["faces"]
        inc = [tuple(int(x) for x in row) for row in data["incidence"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed polytope JSON: {exc}") from None
    if len(faces) != rank + 2:
        raise ParseError(f"expected {rank + 2} face lists (ranks -1..{rank})")
    names = [[str(x) for x in row] for row in faces]
    return build_polytope(rank, [len(r) for r in faces], inc, names=names)


def read_apoly(path) -> AbstractPolytope:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), exc.lineno) from None
    return polytope_from_json(data)


def write_apoly(p: AbstractPolytope, path) -> None:
    Path(path).write_text(json.dumps(polytope_to_json(p), sort_keys=True) + "\n", encoding="utf-8")


# -- flag operators and generalized zigzags ---------------------------------------

def sigma_p(p: AbstractPolytope, flag, i: int) -> tuple:
    n = p.rank
    if not 0 <= i <= n - 1:
        raise RankOutOfRange(f"rank {i} outside 0..{n - 1}")
    lower = 0 if i == 0 else flag[i - 1]
    upper = 0 if i == n - 1 else flag[i + 1]
    alt = (p.above(i - 1, lower) & p.below(i + 1, upper)) - {flag[i]}
    (x,) = alt
    return flag[:i] + (x,) + flag[i + 1:]


def t_delta(p: AbstractPolytope, delta, flag) -> tuple:
    """``sigma_{delta(n-1)} ... sigma_{delta(0)}`` (``delta(0)`` acts first)."""
    for i in delta:
        flag = sigma_p(p, flag, i)
    return flag


def delta_orbit(p: AbstractPolytope, delta, flag) -> list:
    start = tuple(flag)
    orbit = [start]
    f = t_delta(p, delta, start)
    while f != start:
        orbit.append(f)
        f = t_delta(p, delta, f)
    return orbit


@dataclass(frozen=True)
class GeneralizedZigzag:
    """Canonical delta-orbit.  The reversed orbit is the orbit of the reversed
    permutation, so the pair is stored as whichever reads smaller."""

    delta: tuple
    flags: tuple

    @property
    def length(self) -> int:
        return len(self.flags)

    def face_sequence(self) -> list:
        """``(delta(i), face)`` pairs: the i-th entry of block k is the
        ``delta(i)``-face of the k-th flag."""
        return [(d, fl[d]) for fl in self.flags for d in self.delta]

    @property
    def is_simple(self) -> bool:
        seq = self.face_sequence()
        return len(set(seq)) == len(seq)


def _rotate_min(seq):
    i = min(range(len(seq)), key=seq.__getitem__)
    return seq[i:] + seq[:i]


def canonical_generalized(delta, orbit) -> GeneralizedZigzag:
    delta = tuple(delta)
    fwd = (delta, tuple(_rotate_min(list(orbit))))
    rev_orbit = [orbit[0]] + list(reversed(orbit[1:]))
    rev = (delta[::-1], tuple(_rotate_min(rev_orbit)))
    return GeneralizedZigzag(*min(fwd, rev))


def generalized_zigzag(p: AbstractPolytope, delta, flag) -> GeneralizedZigzag:
    delta = tuple(delta)
    if sorted(delta) != list(range(p.rank)):
        raise InvalidFlag(f"{delta} is not a permutation of 0..{p.rank - 1}")
    flag = check_polytope_flag(p, flag)
    return canonical_generalized(delta, delta_orbit(p, delta, flag))


def delta_orbits(p: AbstractPolytope, delta) -> list:
    """Partition of all flags into T_delta-orbits."""
    seen = set()
    out = []
    for fl in p.flags():
        if fl not in seen:
            orb = delta_orbit(p, delta, fl)
            seen.update(orb)
            out.append(orb)
    return out


def generalized_lengths(p: AbstractPolytope, deltas=None) -> dict:
    """delta -> sorted tuple of distinct orbit lengths."""
    deltas = list(itertools.permutations(range(p.rank))) if deltas is None else deltas
    return {tuple(d): tuple(sorted({len(o) for o in delta_orbits(p, d)})) for d in deltas}


@dataclass
class CorrespondenceReport:
    rank: int
    num_flags: int
    generalized_length: int | None
    flag_complex_length: int | None
    classes: int
    flag_complex_zigzags: int
    expected_count: float | None
    simple_preserved: bool

    @property
    def passed(self) -> bool:
        ok = self.classes == self.flag_complex_zigzags and self.simple_preserved
        if self.generalized_length is not None:
            ok = ok and self.flag_complex_length == self.rank * self.generalized_length
            ok = ok and self.classes == self.expected_count
        return ok


def prop_3_6_check(p: AbstractPolytope, cx: ThinChamberComplex | None = None) -> CorrespondenceReport:
    """Build the map from generalized zigzags to zigzags of the flag complex
    and check that it is a length-scaling bijection.

    Generalized zigzags are taken up to the identifications that the map
    respects: reversal (delta reversed, same flags) and the shift
    ``(delta, F) ~ (delta rotated left, sigma_{delta(0)} F)``.
    """
    n = p.rank
    cx = flag_complex(p) if cx is None else cx
    target = {z.flags: j for j, z in enumerate(enumerate_zigzags(cx))}
    vertex = [[flag_vertex(p, cx, k, i) for i in range(p.num_faces(k))] for k in range(n)]

    # union-find over (delta, orbit id)
    nodes: dict = {}
    orbit_of: dict = {}
    parent: list = []

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[max(a, b)] = min(a, b)

    deltas = list(itertools.permutations(range(n)))
    orbits = {}
    for d in deltas:
        orbits[d] = delta_orbits(p, d)
        for j, orb in enumerate(orbits[d]):
            nodes[(d, j)] = len(parent)
            parent.append(len(parent))
            for fl in orb:
                orbit_of[(d, fl)] = j

    image: dict = {}
    gen_len = set()
    fz_len = set()
    simple_ok = True
    for d in deltas:
        rev = d[::-1]
        rot = d[1:] + d[:1]
        for j, orb in enumerate(orbits[d]):
            node = nodes[(d, j)]
            f0 = orb[0]
            union(node, nodes[(rev, orbit_of[(rev, f0)])])
            union(node, nodes[(rot, orbit_of[(rot, sigma_p(p, f0, d[0]))])])
            seed = tuple(vertex[k][f0[k]] for k in d)
            fz_orbit = t_orbit(cx, seed)
            # 0-shadow of the flag-complex zigzag is the delta-face sequence
            expect = [vertex[k][fl[k]] for fl in orb for k in d]
            if [f[0] for f in fz_orbit] != expect:
                raise CorrespondenceFailure("0-shadow does not follow the delta-zigzag",
                                            details={"delta": d, "flag": f0})
            z = canonical(fz_orbit)
            if len(fz_orbit) != n * len(orb):
                raise CorrespondenceFailure("length is not scaled by n", details={"delta": d, "flag": f0})
            gz = GeneralizedZigzag(d, tuple(orb))
            if gz.is_simple != z.is_simple:
                simple_ok = False
            gen_len.add(len(orb))
            fz_len.add(len(fz_orbit))
            image[node] = target[z.flags]

    classes: dict = {}
    for node, j in image.items():
        root = find(node)
        if classes.setdefault(root, j) != j:
            raise CorrespondenceFailure("equivalent generalized zigzags map to different zigzags",
                                        details={"class": root})
    hit = list(classes.values())
    if len(set(hit)) != len(hit):
        raise CorrespondenceFailure("map is not injective")
    if set(hit) != set(target.values()):
        raise CorrespondenceFailure("map is not surjective")

    uniform = len(gen_len) == 1
    l = next(iter(gen_len)) if uniform else None
    report = CorrespondenceReport(
        rank=n,
        num_flags=p.num_flags,
        generalized_length=l,
        flag_complex_length=next(iter(fz_len)) if len(fz_len) == 1 else None,
        classes=len(classes),
        flag_complex_zigzags=len(target),
        expected_count=math.factorial(n - 1) * p.num_flags / (2 * l) if uniform else None,
        simple_preserved=simple_ok,
    )
    if not report.passed:
        raise CorrespondenceFailure("correspondence identities fail", details=report)
    return report


def coset_fidelity(M: CoxeterMatrix, cap: int = DEFAULT_CAP) -> bool:
    """Whether the flag complex of the string-diagram polytope has exactly the
    facets of the Coxeter complex, matched through the shared coset labels."""
    p = regular_polytope_from_string(M, cap)
    fc = flag_complex(p)
    sigma = coxeter_complex(enumerate_group(M, cap)).complex

    def facet_labels(c):
        return {frozenset(c.labels[v] for v in f) for f in c.facets}

    return facet_labels(fc) == facet_labels(sigma)
