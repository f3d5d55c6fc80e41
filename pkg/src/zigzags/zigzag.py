"""Flag operators and zigzags of thin chamber complexes.

A flag is a tuple of vertex ids ``(x0, ..., x_{n-1})`` whose set is a facet;
its i-face is ``{x0, ..., xi}``.  ``T`` drops ``x0`` and appends the unique
vertex completing ``{x1, ..., x_{n-1}}`` to the other facet through that ridge.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .complex import ThinChamberComplex
from .errors import (
    InvalidFlag,
    LevelOutOfRange,
    NotAShadow,
    Z1Violation,
    Z2Violation,
)


def check_flag(cx: ThinChamberComplex, flag) -> tuple:
    flag = tuple(flag)
    if len(flag) != cx.rank or tuple(sorted(flag)) not in cx.facet_index:
        raise InvalidFlag(f"{flag} is not an ordering of a facet")
    return flag


def sigma(cx: ThinChamberComplex, flag, i: int) -> tuple:
    n = cx.rank
    if not 0 <= i <= n - 1:
        raise LevelOutOfRange(f"sigma index {i} outside 0..{n - 1}")
    flag = tuple(flag)
    if i < n - 1:
        return flag[:i] + (flag[i + 1], flag[i]) + flag[i + 2:]
    a, b = cx.across[tuple(sorted(flag[:-1]))]
    return flag[:-1] + (b if a == flag[-1] else a,)


def t_step(cx: ThinChamberComplex, flag) -> tuple:
    a, b = cx.across[tuple(sorted(flag[1:]))]
    return tuple(flag[1:]) + (b if a == flag[0] else a,)


def reverse_flag(flag) -> tuple:
    return tuple(reversed(flag))


def t_orbit(cx: ThinChamberComplex, flag) -> list:
    """``[F, T(F), ..., T^{l-1}(F)]``."""
    across = cx.across
    start = tuple(flag)
    orbit = [start]
    f = start
    while True:
        a, b = across[tuple(sorted(f[1:]))]
        f = f[1:] + (b if a == f[0] else a,)
        if f == start:
            return orbit
        orbit.append(f)


def reverse_orbit(orbit) -> list:
    """The reverse zigzag ``R(F_l), R(F_{l-1}), ..., R(F_1)``."""
    return [f[::-1] for f in reversed(orbit)]


def _least_rotation(orbit):
    i = min(range(len(orbit)), key=orbit.__getitem__)
    return orbit[i:] + orbit[:i]


@dataclass(frozen=True)
class Shadow:
    level: int
    faces: tuple

    def __len__(self):
        return len(self.faces)


@dataclass(frozen=True)
class Zigzag:
    """A T-orbit in canonical form: least rotation over the orbit and its reverse."""

    flags: tuple

    @property
    def length(self) -> int:
        return len(self.flags)

    @property
    def rank(self) -> int:
        return len(self.flags[0])

    @property
    def vertex_shadow(self) -> tuple:
        return tuple(f[0] for f in self.flags)

    @property
    def is_simple(self) -> bool:
        vs = self.vertex_shadow
        return len(set(vs)) == len(vs)

    def shadow(self, k: int) -> Shadow:
        return shadow(self, k)

    def reversed_flags(self) -> list:
        return reverse_orbit(list(self.flags))

    def faces(self, k: int) -> frozenset:
        """Set of k-faces occurring in the flags (same for the reverse)."""
        return frozenset(tuple(sorted(f[:k + 1])) for f in self.flags)

    def contains_path(self, facets) -> bool:
        """Whether the facet shadow, read cyclically in either direction,
        contains ``facets`` as a contiguous run."""
        top = [tuple(sorted(f)) for f in self.flags]
        path = [tuple(sorted(f)) for f in facets]
        m = len(path)
        if m > len(top):
            return False
        for seq in (top, top[::-1]):
            ext = seq + seq[:m - 1]
            for i in range(len(seq)):
                if ext[i:i + m] == path:
                    return True
        return False


def canonical(orbit) -> Zigzag:
    orbit = list(orbit)
    fwd = _least_rotation(orbit)
    rev = _least_rotation(reverse_orbit(orbit))
    return Zigzag(tuple(min(fwd, rev)))


def zigzag_from_flag(cx: ThinChamberComplex, flag) -> Zigzag:
    return canonical(t_orbit(cx, check_flag(cx, flag)))


def shadow(z: Zigzag, k: int) -> Shadow:
    if not 0 <= k <= z.rank - 1:
        raise LevelOutOfRange(f"shadow level {k} outside 0..{z.rank - 1}")
    return Shadow(k, tuple(tuple(sorted(f[:k + 1])) for f in z.flags))


def _same_cycle(a, b) -> bool:
    """Equality of cyclic sequences up to rotation."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    ext = list(b) + list(b)
    return any(ext[i:i + len(a)] == list(a) for i in range(len(b)))


def reconstruct_from_shadow(cx: ThinChamberComplex, k: int, faces) -> Zigzag:
    """Rebuild a zigzag from its k-shadow (given up to rotation and reversal).

    Ascends with ``X_i | X_{i+1}`` to the facet shadow, reads the vertex
    sequence off consecutive facet differences and checks the result.
    """
    n = cx.rank
    if not 0 <= k <= n - 1:
        raise LevelOutOfRange(f"shadow level {k} outside 0..{n - 1}")
    seq = [tuple(sorted(x)) for x in (faces.faces if isinstance(faces, Shadow) else faces)]
    l = len(seq)
    if l <= n:
        raise NotAShadow(f"a shadow has more than n={n} entries, got {l}")
    for i, x in enumerate(seq):
        if len(x) != k + 1 or not cx.is_face(x):
            raise NotAShadow(f"entry {i} is not a {k}-face")
    cur = seq
    for level in range(k + 1, n):
        nxt = []
        for i in range(l):
            u = tuple(sorted(set(cur[i]) | set(cur[(i + 1) % l])))
            if len(u) != level + 1 or not cx.is_face(u):
                raise NotAShadow(f"union of entries {i} and {(i + 1) % l} is not a {level}-face")
            nxt.append(u)
        cur = nxt
    # cur[i] is the facet {x_i, ..., x_{i+n-1}}; x_i is what drops out next
    verts = []
    for i in range(l):
        diff = set(cur[i]) - set(cur[(i + 1) % l])
        if len(diff) != 1:
            raise NotAShadow(f"facets {i} and {(i + 1) % l} are not adjacent")
        verts.append(diff.pop())
    try:
        z = zigzag_from_vertex_sequence(cx, verts)
    except (Z1Violation, Z2Violation) as exc:
        raise NotAShadow(str(exc)) from None
    got = list(shadow(z, k).faces)
    if not (_same_cycle(seq, got) or _same_cycle(seq[::-1], got)):
        raise NotAShadow("reconstructed zigzag does not reproduce the input shadow")
    return z


def zigzag_from_vertex_sequence(cx: ThinChamberComplex, seq) -> Zigzag:
    """Zigzag with the given cyclic 0-shadow; checks (Z1) and (Z2)."""
    n = cx.rank
    seq = list(seq)
    l = len(seq)
    if l <= n:
        raise Z1Violation(0) if l < n else Z2Violation(0)
    for i in range(l):
        window = [seq[(i + j) % l] for j in range(n)]
        if len(set(window)) != n or tuple(sorted(window)) not in cx.facet_index:
            raise Z1Violation(i)
    for i in range(l):
        if seq[i] == seq[(i + n) % l]:
            raise Z2Violation(i)
    orbit = t_orbit(cx, tuple(seq[:n]))
    vs = [f[0] for f in orbit]
    if l % len(vs) or vs * (l // len(vs)) != seq:
        raise Z1Violation(0)  # unreachable for a thin complex
    return canonical(orbit)


def _flags_of(facet):
    return itertools.permutations(facet)


def enumerate_zigzags(cx: ThinChamberComplex) -> list:
    """All zigzags, each identified with its reverse, canonically sorted."""
    memo = cx._memo
    if "zigzags" in memo:
        return memo["zigzags"]
    visited = set()
    out = []
    for facet in cx.facets:
        for flag in _flags_of(facet):
            if flag in visited:
                continue
            orbit = t_orbit(cx, flag)
            visited.update(orbit)
            rev = reverse_orbit(orbit)
            visited.update(rev)
            out.append(canonical(orbit))
    out.sort(key=lambda z: z.flags)
    memo["zigzags"] = out
    return out


@dataclass(frozen=True)
class ZigzagSummary:
    count: int
    lengths: tuple
    z_simple: bool
    z_uniform: bool
    common_length: int | None
    num_flags: int
    expected_count: float | None  # n!N/2l when z-uniform

    @property
    def conserved(self) -> bool:
        return sum(2 * l for l in self.lengths) == self.num_flags

    @property
    def count_formula_holds(self) -> bool | None:
        if self.expected_count is None:
            return None
        return self.count == self.expected_count


def zigzag_predicates(cx: ThinChamberComplex) -> ZigzagSummary:
    zs = enumerate_zigzags(cx)
    lengths = tuple(z.length for z in zs)
    uniform = len(set(lengths)) == 1
    flags = math.factorial(cx.rank) * cx.num_facets
    common = lengths[0] if uniform else None
    expected = flags / (2 * common) if uniform else None
    return ZigzagSummary(
        count=len(zs),
        lengths=lengths,
        z_simple=all(z.is_simple for z in zs),
        z_uniform=uniform,
        common_length=common,
        num_flags=flags,
        expected_count=expected,
    )
