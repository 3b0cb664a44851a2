"""Necklaces: finite wedges of cubes glued greatest vertex to least vertex.

A necklace is a sequence of positive bead dimensions.  Its vertices are
taken in the standard embedding into the cube of the total dimension, so a
vertex is a mask containing a full prefix and contained in a longer one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .boxcat import (
    BoxMap, SizeGuardExceeded, distance, enumerate_maps, omega, vertex_le,
)
from .cubeset import SubcomplexOfCube
from .posets import FinitePoset


@dataclass(frozen=True)
class Necklace:
    """A sequence of bead dimensions; the empty sequence is the point."""

    beads: tuple[int, ...] = ()

    def __post_init__(self):
        if any(b < 1 for b in self.beads):
            raise ValueError("bead dimensions must be positive")

    @property
    def total(self) -> int:
        return sum(self.beads)

    @property
    def offsets(self) -> tuple[int, ...]:
        out = [0]
        for b in self.beads:
            out.append(out[-1] + b)
        return tuple(out)

    def prefix_mask(self, i: int) -> int:
        """Mask of the first i coordinate blocks, i.e. the i-th joint."""
        return omega(self.offsets[i])

    @property
    def alpha(self) -> int:
        return 0

    @property
    def omega(self) -> int:
        return omega(self.total)

    def flag(self) -> tuple[int, ...]:
        """The joint vertices from bottom to top."""
        return tuple(self.prefix_mask(i) for i in range(len(self.beads) + 1)) \
            if self.beads else (0,)

    def vertices(self) -> list[int]:
        out = set()
        offs = self.offsets
        for i, b in enumerate(self.beads):
            lo = self.prefix_mask(i)
            for sub in range(1 << b):
                out.add(lo | (sub << offs[i]))
        if not self.beads:
            out.add(0)
        return sorted(out)

    def is_vertex(self, mask: int) -> bool:
        return self.bead_of_vertex(mask) is not None

    def bead_of_vertex(self, mask: int) -> int | None:
        """Leftmost bead (1-based) whose cube contains the vertex; the point
        necklace returns 0 for its only vertex."""
        if not self.beads:
            return 0 if mask == 0 else None
        for i in range(1, len(self.beads) + 1):
            lo, hi = self.prefix_mask(i - 1), self.prefix_mask(i)
            if vertex_le(lo, mask) and vertex_le(mask, hi):
                return i
        return None

    def local_vertex(self, bead: int, mask: int) -> int:
        return (mask & ~self.prefix_mask(bead - 1)) >> self.offsets[bead - 1]

    def global_vertex(self, bead: int, local: int) -> int:
        return self.prefix_mask(bead - 1) | (local << self.offsets[bead - 1])

    def vertex_le(self, a: int, b: int) -> bool:
        return vertex_le(a, b)

    def to_subcomplex(self) -> SubcomplexOfCube:
        """Image of the standard embedding: the face pairs within beads."""
        n = self.total
        gens = [(self.prefix_mask(i), self.prefix_mask(i + 1))
                for i in range(len(self.beads))]
        if not gens:
            gens = [(0, 0)]
        return SubcomplexOfCube.from_generators(n, gens)

    def to_complex(self):
        return self.to_subcomplex().to_complex()

    def subnecklace(self, a: int, b: int) -> tuple["Necklace", tuple[int, ...]]:
        """The subnecklace between two vertices, with its embedding flag.

        Raises ValueError when the vertices are not comparable.
        """
        if not (self.is_vertex(a) and self.is_vertex(b)):
            raise ValueError("not vertices of the necklace")
        if not vertex_le(a, b):
            raise ValueError("subnecklace requires a <= b")
        if a == b:
            return Necklace(), (a,)
        i = self.bead_of_vertex(a)
        j = self.bead_of_vertex(b)
        if j < i:
            raise ValueError("vertex beads out of order")
        raw = [a]
        if i == j:
            raw.append(b)
        else:
            raw.extend(self.prefix_mask(t) for t in range(i, j))
            raw.append(b)
        flag = tuple(v for t, v in enumerate(raw) if t == 0 or v != raw[t - 1])
        dims = tuple(distance(flag[t], flag[t + 1]) for t in range(len(flag) - 1))
        return Necklace(dims), flag


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True)
class NecMorphism:
    """A necklace morphism, by its chained bead components.

    Component i is a cube of the target: a pair (bead index, box map into
    that bead), with constant cubes at a joint homed in the leftmost bead.
    """

    src: Necklace
    dst: Necklace
    components: tuple[tuple[int, BoxMap], ...]

    def __post_init__(self):
        if len(self.components) != len(self.src.beads):
            raise ValueError("one component per source bead")
        cur = self.dst.alpha
        for (bead, psi), d in zip(self.components, self.src.beads):
            if psi.src_dim != d:
                raise ValueError("component dimension mismatch")
            lo = self.dst.global_vertex(bead, psi.table[0])
            hi = self.dst.global_vertex(bead, psi.table[-1])
            if lo != cur:
                raise ValueError("components do not chain")
            cur = hi
        if cur != self.dst.omega:
            raise ValueError("components do not reach the top")

    def vertex_map(self) -> dict[int, int]:
        out = {}
        offs = self.src.offsets
        for i, (bead, psi) in enumerate(self.components, start=1):
            lo = self.src.prefix_mask(i - 1)
            for sub in range(1 << self.src.beads[i - 1]):
                v = lo | (sub << offs[i - 1])
                out[v] = self.dst.global_vertex(bead, psi.apply(sub))
        if not self.components:
            out[0] = self.dst.alpha
        return out

    def is_identity(self) -> bool:
        return (self.src == self.dst
                and all(b == i + 1 and psi.is_identity()
                        for i, (b, psi) in enumerate(self.components)))


def _cubes_of(dst: Necklace, dim: int, guard: int):
    """All dim-cubes of a necklace, canonicalized, grouped by start vertex."""
    by_start: dict[int, list] = {}
    for j, m in enumerate(dst.beads, start=1):
        if dim + m > guard:
            raise SizeGuardExceeded(
                f"hom_nec needs enumerate_maps({dim},{m}); raise the guard")
        for psi in enumerate_maps(dim, m, guard=guard):
            if j >= 2 and psi.is_constant() and psi.table[0] == 0:
                continue  # homed in the previous bead as the constant at its top
            lo = dst.global_vertex(j, psi.table[0])
            by_start.setdefault(lo, []).append((j, psi))
    return by_start


def hom_nec(src: Necklace, dst: Necklace, guard: int = 8) -> list[NecMorphism]:
    """All necklace morphisms, by chaining bead components."""
    if not src.beads:
        return [NecMorphism(src, dst, ())] if not dst.beads else []
    cubes = {d: _cubes_of(dst, d, guard) for d in set(src.beads)}
    out = []
    k = len(src.beads)

    def extend(i, cur, acc):
        if i == k:
            if cur == dst.omega:
                out.append(NecMorphism(src, dst, tuple(acc)))
            return
        for j, psi in cubes[src.beads[i]].get(cur, ()):
            hi = dst.global_vertex(j, psi.table[-1])
            acc.append((j, psi))
            extend(i + 1, hi, acc)
            acc.pop()
    extend(0, dst.alpha, [])
    out.sort(key=lambda f: tuple((j, psi.sort_key()) for j, psi in f.components))
    return out


def identity_morphism(t: Necklace) -> NecMorphism:
    comps = tuple((i + 1, BoxMap.identity(b)) for i, b in enumerate(t.beads))
    return NecMorphism(t, t, comps)


# ---------------------------------------------------------------------------
# the poset of monomorphic necklace embeddings

def flags_in_subcomplex(sub: SubcomplexOfCube, a: int, b: int) -> list[tuple[int, ...]]:
    """Strictly increasing vertex flags from a to b whose consecutive faces
    all lie in the subcomplex."""
    if not vertex_le(a, b):
        return []
    if not sub.has_pair(a, a) or not sub.has_pair(b, b):
        return []
    if a == b:
        return [(a,)]
    out = []
    stack = [a]

    def walk(cur):
        if cur == b:
            out.append(tuple(stack))
            return
        rest = b & ~cur
        for sub_bits in _nonempty_submasks(rest):
            nxt = cur | sub_bits
            if sub.has_pair(cur, nxt):
                stack.append(nxt)
                walk(nxt)
                stack.pop()
    walk(a)
    out.sort()
    return out


def _nonempty_submasks(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def subneck_poset(sub: SubcomplexOfCube, a: int, b: int) -> FinitePoset:
    """Monomorphic necklace embeddings from a to b, as vertex flags, under
    reverse refinement: a finer flag is below a coarser one."""
    flags = flags_in_subcomplex(sub, a, b)
    return FinitePoset.from_relation(
        flags, lambda x, y: set(y) <= set(x))


def flag_to_partition(flag: tuple[int, ...]) -> tuple:
    """Ordered partition of the coordinates swept by a flag of the full cube."""
    from .boxcat import coords_of
    return tuple(tuple(sorted(coords_of(flag[i + 1] & ~flag[i])))
                 for i in range(len(flag) - 1))


def lub(flags) -> tuple[int, ...]:
    """Least upper bound: the flag through the common vertices."""
    flags = list(flags)
    if not flags:
        raise ValueError("lub of no flags")
    ends = {(f[0], f[-1]) for f in flags}
    if len(ends) != 1:
        raise ValueError("flags must share their endpoints")
    common = set(flags[0])
    for f in flags[1:]:
        common &= set(f)
    return tuple(sorted(common, key=lambda m: m.bit_count()))


def necklace_of_flag(flag: tuple[int, ...]) -> Necklace:
    return Necklace(tuple(distance(flag[i], flag[i + 1])
                          for i in range(len(flag) - 1)))
