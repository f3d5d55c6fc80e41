"""Distance normal pairs and geodesics, extension of geodesics to zigzags,
z-connectedness and weak adjacency.

Facets are passed as collections of vertex ids; paths as lists of facets.
In a geodesic ``X_0, ..., X_m`` the distance of ``X_i`` and ``X_j`` is
``|i - j|``, so the windowed normality test only needs intersection sizes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .complex import ThinChamberComplex, is_k_neighborly, is_simplex
from .errors import (
    FaceNotInComplex,
    NotAPath,
    NotDistanceNormal,
    RankMismatch,
    RankOutOfRange,
    VerificationError,
)
from .zigzag import canonical, enumerate_zigzags, t_orbit, t_step


def _facet_id(cx: ThinChamberComplex, facet) -> int:
    key = tuple(sorted(facet))
    try:
        return cx.facet_index[key]
    except KeyError:
        raise FaceNotInComplex(f"{cx.label_seq(key)} is not a facet") from None


def distance(cx: ThinChamberComplex, x, y) -> int:
    return cx.facet_distances(_facet_id(cx, x))[_facet_id(cx, y)]


def _window_ok(cx, path_ids, j) -> bool:
    """Check d = n - |X_i & X_j| for the last facet against the previous n."""
    n = cx.rank
    fj = set(cx.facets[path_ids[j]])
    for i in range(max(0, j - n), j):
        if len(fj.intersection(cx.facets[path_ids[i]])) != n - (j - i):
            return False
    return True


@dataclass(frozen=True)
class NormalityVerdict:
    pair_normal: bool
    distance: int
    witness_geodesic: tuple | None
    reason: str


def _geodesic_dag(cx, a, b):
    da = cx.facet_distances(a)
    db = cx.facet_distances(b)
    d = da[b]
    nbr = cx.facet_neighbors

    def succ(u):
        return [v for v in nbr[u] if da[v] == da[u] + 1 and db[v] == d - da[v]]

    return d, succ


def shortest_path(cx: ThinChamberComplex, x, y) -> list:
    a, b = _facet_id(cx, x), _facet_id(cx, y)
    d, succ = _geodesic_dag(cx, a, b)
    path = [a]
    while path[-1] != b:
        path.append(succ(path[-1])[0])
    return [cx.facets[i] for i in path]


def all_geodesics(cx: ThinChamberComplex, x, y) -> list:
    a, b = _facet_id(cx, x), _facet_id(cx, y)
    _, succ = _geodesic_dag(cx, a, b)
    out = []

    def walk(path):
        if path[-1] == b:
            out.append([cx.facets[i] for i in path])
            return
        for v in succ(path[-1]):
            walk(path + [v])

    walk([a])
    return out


def is_distance_normal_pair(cx: ThinChamberComplex, x, y) -> NormalityVerdict:
    n = cx.rank
    a, b = _facet_id(cx, x), _facet_id(cx, y)
    d, succ = _geodesic_dag(cx, a, b)
    if d <= n:
        common = len(set(cx.facets[a]) & set(cx.facets[b]))
        if d == n - common:
            return NormalityVerdict(True, d, tuple(shortest_path(cx, x, y)), "d = n - |X & Y|")
        return NormalityVerdict(False, d, None, f"d = {d} but n - |X & Y| = {n - common}")

    # d > n: look for a geodesic whose windows are all normal; a dead end
    # depends only on the last n facets of the prefix
    dead = set()

    def search(path):
        if path[-1] == b:
            return path
        for v in succ(path[-1]):
            path.append(v)
            state = tuple(path[-n - 1:])
            if state not in dead and _window_ok(cx, path, len(path) - 1):
                found = search(path)
                if found:
                    return found
                dead.add(state)
            path.pop()
        return None

    found = search([a])
    if found:
        return NormalityVerdict(True, d, tuple(cx.facets[i] for i in found), "distance normal geodesic found")
    return NormalityVerdict(False, d, None, "no geodesic has all windows distance normal")


def _path_ids(cx, path):
    ids = [_facet_id(cx, f) for f in path]
    n = cx.rank
    for i in range(len(ids) - 1):
        if len(set(cx.facets[ids[i]]) & set(cx.facets[ids[i + 1]])) != n - 1:
            raise NotAPath(f"facets {i} and {i + 1} are not adjacent")
    return ids


def is_geodesic(cx: ThinChamberComplex, path) -> bool:
    ids = _path_ids(cx, path)
    return cx.facet_distances(ids[0])[ids[-1]] == len(ids) - 1


def is_distance_normal_geodesic(cx: ThinChamberComplex, path) -> bool:
    ids = _path_ids(cx, path)
    if cx.facet_distances(ids[0])[ids[-1]] != len(ids) - 1:
        return False
    return all(_window_ok(cx, ids, j) for j in range(1, len(ids)))


def zigzags_through_geodesic(cx: ThinChamberComplex, path) -> list:
    """Zigzags whose facet shadow contains the distance normal geodesic,
    built from seed flags as in the constructive proof; canonical and
    deduplicated."""
    if len(path) < 2:
        raise NotAPath("need at least two facets")
    if not is_distance_normal_geodesic(cx, path):
        raise NotDistanceNormal("path is not a distance normal geodesic")
    n = cx.rank
    facets = [tuple(sorted(f)) for f in path]
    m = len(facets) - 1
    head = facets[:min(m, n) + 1]
    seeds = _seeds(cx, head)
    out = {}
    for seed in seeds:
        z = canonical(t_orbit(cx, seed))
        if not z.contains_path(facets):
            raise VerificationError("constructed zigzag misses the geodesic", details={"seed": seed})
        out[z.flags] = z
    result = sorted(out.values(), key=lambda z: z.flags)
    if m <= n and len(result) > math.factorial(n - m):
        raise VerificationError(f"{len(result)} zigzags exceed the bound (n-m)! = {math.factorial(n - m)}")
    if m > n and len(result) != 1:
        raise VerificationError(f"expected a unique zigzag, found {len(result)}")
    return result


def _seeds(cx, facets) -> list:
    """Seed flags whose T-orbits have facet shadow starting with ``facets``
    (length m <= n)."""
    m = len(facets) - 1
    if m == 0:
        return [tuple(facets[0])]
    prev = _seeds(cx, facets[:-1])[0]
    n = cx.rank
    xs = list(t_orbit_prefix(cx, prev, n + m - 1))
    target = set(facets[m])
    # A = {x_{m-1}, ..., x_{n-1}}; x_t is the one vertex of A outside X_m
    t_cands = [t for t in range(m - 1, n) if xs[t] not in target]
    if len(t_cands) != 1:
        raise VerificationError("geodesic step does not leave exactly one vertex", details={"m": m})
    t = t_cands[0]
    rest = [xs[i] for i in range(m - 1, n) if i != t]
    return [tuple(xs[:m - 1]) + (xs[t],) + perm for perm in itertools.permutations(rest)]


def t_orbit_prefix(cx, flag, count):
    """First ``count`` entries of the 0-shadow starting at ``flag``."""
    out = list(flag)
    f = tuple(flag)
    while len(out) < count:
        f = t_step(cx, f)
        out.append(f[-1])
    return out[:count]


def zigzags_containing_path(cx: ThinChamberComplex, path) -> list:
    """Brute force: scan every zigzag's facet shadow."""
    return [z for z in enumerate_zigzags(cx) if z.contains_path(path)]


# -- z-connectedness -----------------------------------------------------------

def _shadow_sets(cx):
    key = "shadow_sets"
    if key not in cx._memo:
        zs = enumerate_zigzags(cx)
        cx._memo[key] = [[z.faces(k) for k in range(cx.rank)] for z in zs]
    return cx._memo[key]


def _face(cx, face):
    f = tuple(sorted(face))
    if not f or not cx.is_face(f):
        raise FaceNotInComplex(f"{cx.label_seq(f)} is not a face")
    return f


def are_z_connected(cx: ThinChamberComplex, x, y) -> bool:
    x, y = _face(cx, x), _face(cx, y)
    kx, ky = len(x) - 1, len(y) - 1
    return any(x in s[kx] and y in s[ky] for s in _shadow_sets(cx))


def z_connection_matrix(cx: ThinChamberComplex, k: int) -> tuple:
    """``(faces, matrix)`` with ``matrix[i][j]`` true iff faces i and j are z-connected."""
    faces = cx.faces(k)
    index = {f: i for i, f in enumerate(faces)}
    mat = [[False] * len(faces) for _ in faces]
    for sets in _shadow_sets(cx):
        members = sorted(index[f] for f in sets[k])
        for i in members:
            for j in members:
                mat[i][j] = True
    return faces, mat


def weakly_adjacent(cx: ThinChamberComplex, x, y) -> bool:
    x, y = _face(cx, x), _face(cx, y)
    if len(x) != len(y):
        raise RankMismatch("faces have different ranks")
    k = len(x) - 1
    if not 1 <= k <= cx.rank - 2:
        raise RankOutOfRange(f"rank {k} outside 1..{cx.rank - 2}")
    return len(set(x) & set(y)) == k and not cx.is_face(set(x) | set(y))


@dataclass
class NeighborlinessReport:
    z_simple: bool
    weak_pairs_checked: int
    all_connected_up_to: int  # largest k < n-1 with every pair of rank <= k z-connected (0 if none)
    neighborly_implications: list  # (k, holds)
    simplex_implications: list  # (k, holds)

    @property
    def passed(self) -> bool:
        return all(h for _, h in self.neighborly_implications) and all(h for _, h in self.simplex_implications)


def section_4_3_report(cx: ThinChamberComplex) -> NeighborlinessReport:
    """Exhaustive check of the weak-adjacency and neighborliness consequences
    of z-connectedness; raises with a counterexample if one fails."""
    n = cx.rank
    zs = enumerate_zigzags(cx)
    sets = _shadow_sets(cx)

    checked = 0
    for k in range(1, n - 1):
        faces = cx.faces(k)
        for x, y in itertools.combinations(faces, 2):
            if weakly_adjacent(cx, x, y):
                checked += 1
                for z, s in zip(zs, sets):
                    if z.is_simple and x in s[k] and y in s[k]:
                        raise VerificationError("weakly adjacent faces joined by a simple zigzag",
                                                details={"faces": (x, y), "zigzag": z})

    z_simple = all(z.is_simple for z in zs)
    upto = 0
    for k in range(1, n - 1):
        _, mat = z_connection_matrix(cx, k)
        if all(all(row) for row in mat):
            upto = k
        else:
            break
    neighborly, simplex_ = [], []
    if z_simple:
        for k in range(1, upto + 1):
            holds = is_k_neighborly(cx, k + 2)
            neighborly.append((k, holds))
            if not holds:
                raise VerificationError(f"premise holds for k={k} but not {k + 2}-neighborly")
            if k > n // 2 - 2:
                holds = is_simplex(cx)
                simplex_.append((k, holds))
                if not holds:
                    raise VerificationError(f"premise holds for k={k} but complex is not a simplex")
    return NeighborlinessReport(z_simple, checked, upto, neighborly, simplex_)
