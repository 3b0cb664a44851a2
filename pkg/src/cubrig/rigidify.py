"""Mapping spaces of the cubical rigidification.

On a necklace the mapping space between two vertices is the nerve of a
product of weak Bruhat orders; on a subcomplex of a cube it is the colimit
of those nerves over the poset of monomorphic necklace embeddings.  Path
flags give canonical simplex names throughout, so the colimit is computed
directly on nondegenerate chains tagged by their gluing component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .boxcat import coords_of, distance, mask_of, omega, sup, vertex_le
from .cubeset import SubcomplexOfCube, open_box, standard_cube
from .necklace import Necklace, flags_in_subcomplex, subneck_poset
from .posets import FinitePoset, inversions, interval_lattice, nerve
from .sset import FormalSimplex, TruncSSet, op_identity


@dataclass(frozen=True)
class MappingSpace:
    """A mapping space with its construction recorded."""

    space: TruncSSet
    provenance: str
    endpoints: tuple


# ---------------------------------------------------------------------------
# path posets of flags

def complete_flags(flag: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All unit-step refinements of a vertex flag."""
    segments = []
    for lo, hi in zip(flag, flag[1:]):
        coords = sorted(coords_of(hi & ~lo))
        segments.append((lo, coords))
    out = []
    for words in itertools.product(
            *(itertools.permutations(cs) for _, cs in segments)):
        path = [flag[0]]
        for (lo, _), word in zip(segments, words):
            cur = path[-1]
            for c in word:
                cur |= 1 << (c - 1)
                path.append(cur)
        out.append(tuple(path))
    out.sort()
    return out or [flag]


def _segment_words(flag: tuple[int, ...], path: tuple[int, ...]):
    """Per-bead coordinate words of a complete flag refining flag."""
    words = []
    pos = 0
    for lo, hi in zip(flag, flag[1:]):
        d = distance(lo, hi)
        word = []
        for t in range(pos, pos + d):
            word.append((path[t + 1] & ~path[t]).bit_length())
        words.append(tuple(word))
        pos += d
    return words


def flag_path_le(flag: tuple[int, ...], p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    """Product of reverse weak Bruhat orders over the beads of the flag."""
    for wp, wq in zip(_segment_words(flag, p), _segment_words(flag, q)):
        if not inversions(wq) <= inversions(wp):
            return False
    return True


def path_poset_of_flag(flag: tuple[int, ...]) -> FinitePoset:
    elements = complete_flags(flag)
    return FinitePoset(
        elements,
        [{j for j, q in enumerate(elements) if flag_path_le(flag, p, q)}
         for p in elements])


def flag_height(flag: tuple[int, ...]) -> int:
    """Longest chain size of the flag's path poset."""
    return 1 + sum(d * (d - 1) // 2
                   for d in (distance(lo, hi) for lo, hi in zip(flag, flag[1:])))


# ---------------------------------------------------------------------------
# the necklace formula

def necklace_mapping_space(t: Necklace, a: int, b: int,
                           top_dim: int | None = None) -> MappingSpace:
    """Nerve of the product of the bead Bruhat orders of the subnecklace
    between a and b; empty when a is not below b."""
    if not (t.is_vertex(a) and t.is_vertex(b)):
        raise ValueError("endpoints must be vertices of the necklace")
    if not vertex_le(a, b):
        return MappingSpace(TruncSSet.empty(), "necklace-formula", (a, b))
    _, flag = t.subnecklace(a, b)
    poset = path_poset_of_flag(flag)
    d = flag_height(flag) if top_dim is None else top_dim
    return MappingSpace(nerve(poset, d), "necklace-formula", (a, b))


# ---------------------------------------------------------------------------
# the SubNeck colimit for subcomplexes of a cube

class _FlagComponents:
    """For one chain of paths: the admissible embeddings and their gluing
    components within a chosen set of flags."""

    def __init__(self, admissible, sn: FinitePoset):
        self.reps = {}
        parent = {u: u for u in admissible}

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u
        adm = sorted(admissible)
        for x in adm:
            for y in adm:
                if x != y and sn.le(x, y):
                    rx, ry = find(x), find(y)
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        for u in adm:
            r = find(u)
            self.reps[u] = min(v for v in adm if find(v) == r)

    def component_of(self, u):
        return self.reps[u]

    def components(self):
        return sorted(set(self.reps.values()))


def _chain_table(sn: FinitePoset, allowed, top_dim):
    """chain of paths -> _FlagComponents, over the allowed flags."""
    posets = {u: path_poset_of_flag(u) for u in allowed}
    admissible: dict = {}
    for u in allowed:
        pu = posets[u]
        for chain_idx in pu.chains(max_size=top_dim + 1):
            chain = tuple(pu.elements[i] for i in chain_idx)
            admissible.setdefault(chain, set()).add(u)
    return {chain: _FlagComponents(adm, sn)
            for chain, adm in admissible.items()}


def subcomplex_mapping_space(sub: SubcomplexOfCube, a: int, b: int,
                             top_dim: int | None = None) -> MappingSpace:
    """Colimit over the subneck poset of the bead-Bruhat nerves.

    A nondegenerate simplex is a strict chain of paths tagged by its gluing
    component; the face maps drop chain entries and coarsen the tag.
    """
    sn = subneck_poset(sub, a, b)
    if len(sn) == 0:
        return MappingSpace(TruncSSet.empty(), "subneck-colimit", (a, b))
    if top_dim is None:
        top_dim = max(flag_height(u) for u in sn.elements)
    table = _chain_table(sn, sn.elements, top_dim)
    cells: dict[int, list] = {k: [] for k in range(top_dim + 1)}
    for chain, comps in table.items():
        for rep in comps.components():
            cells[len(chain) - 1].append((chain, rep))
    for k in cells:
        cells[k].sort()

    def face_fn(k, key, i):
        chain, rep = key
        sub_chain = chain[:i] + chain[i + 1:]
        new_rep = table[sub_chain].component_of(rep)
        return FormalSimplex(op_identity(k - 1), (sub_chain, new_rep))

    space = TruncSSet(top_dim, cells, face_fn,
                      name=f"subneck colimit ({a},{b})")
    return MappingSpace(space, "subneck-colimit", (a, b))


def subneck_colimit_is_injective(sub: SubcomplexOfCube, a: int, b: int,
                                 allowed) -> bool:
    """Whether the colimit over a downward-closed family of embeddings maps
    dimensionwise injectively into the whole mapping space.

    The map forgets the component tag of each chain, so injectivity is the
    statement that each chain glues into a single component.
    """
    sn = subneck_poset(sub, a, b)
    allowed = list(allowed)
    if not sn.downward_closed(allowed):
        raise ValueError("the family of embeddings must be downward closed")
    if not allowed:
        return True
    top_dim = max(flag_height(u) for u in allowed)
    table = _chain_table(sn, allowed, top_dim)
    return all(len(comps.components()) == 1 for comps in table.values())


# ---------------------------------------------------------------------------
# inner cubes and boxes

def _pole(n: int, i: int, eps: int) -> frozenset:
    bit = 1 << (i - 1)
    if eps == 1:
        return frozenset({0, bit})
    return frozenset({omega(n), omega(n) & ~bit})


def inner_mapping_space(n: int, i: int, eps: int, pa: int, pb: int,
                        box: bool = False) -> MappingSpace:
    """Mapping space of the quotient by the critical edge, through the
    explicit description of the collapsed hom-sets: the pole's hom to
    itself is a point, homs out of (for eps = 1) or into (for eps = 0) the
    pole are taken at the collapsed extreme vertex, and everything else is
    untouched.  Vertices are named by their preimages in the cube."""
    if n < 2 or not 1 <= i <= n or eps not in (0, 1):
        raise ValueError("invalid inner cube parameters")
    pole = _pole(n, i, eps)

    def space(x, y):
        if box:
            ms = subcomplex_mapping_space(open_box(n, i, eps), x, y)
        else:
            ms = necklace_mapping_space(Necklace((n,)), x, y)
        return ms.space

    tag = "s-construction"
    if pa in pole and pb in pole:
        return MappingSpace(TruncSSet.point(), tag, (pa, pb))
    if eps == 1:
        if pa in pole:
            return MappingSpace(space(0, pb), tag, (pa, pb))
        if pb in pole:
            return MappingSpace(TruncSSet.empty(), tag, (pa, pb))
    else:
        if pb in pole:
            return MappingSpace(space(pa, omega(n)), tag, (pa, pb))
        if pa in pole:
            return MappingSpace(TruncSSet.empty(), tag, (pa, pb))
    return MappingSpace(space(pa, pb), tag, (pa, pb))


def inner_eligible(n: int, i: int, eps: int, a: int, b: int) -> bool:
    """The side condition under which collapsing changes nothing."""
    bit = 1 << (i - 1)
    if eps == 1:
        return a != bit
    return b != omega(n) & ~bit


# ---------------------------------------------------------------------------
# the simplicial side

def simplicial_hom(n: int, i: int, j: int) -> MappingSpace:
    """Hom from i to j in the rigidified simplex: the nerve of the subset
    lattice of the open interval; empty when i > j."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError("endpoints out of range")
    if i > j:
        return MappingSpace(TruncSSet.empty(), "simplicial", (i, j))
    lattice = interval_lattice(i, j)
    return MappingSpace(nerve(lattice), "simplicial", (i, j))


def _as_mask(v, n: int) -> int:
    if isinstance(v, int):
        return v
    return mask_of(v, n)


def psi_tilde(n: int, a, b, word: tuple[int, ...]) -> frozenset:
    """Left-to-right records of the word, within the open interval between
    the largest coordinates of the endpoints."""
    a = _as_mask(a, n)
    b = _as_mask(b, n)
    if not vertex_le(a, b):
        raise ValueError("psi requires a <= b")
    if tuple(sorted(word)) != tuple(sorted(coords_of(b & ~a))):
        raise ValueError("word must enumerate the swept coordinates")
    records = {word[l] for l in range(len(word))
               if all(word[p] < word[l] for p in range(l))}
    window = set(range(sup(a) + 1, sup(b)))
    return frozenset(records & window)


def psi_concat_check(n: int, a, b, c, x: tuple, y: tuple) -> bool:
    """The concatenation identity for psi along a middle vertex."""
    a = _as_mask(a, n)
    b = _as_mask(b, n)
    c = _as_mask(c, n)
    if not (vertex_le(a, b) and vertex_le(b, c)):
        raise ValueError("vertices must be nested")
    if not sup(a) < sup(b) < sup(c):
        raise ValueError("the largest coordinates must strictly increase")
    lhs = psi_tilde(n, a, c, tuple(x) + tuple(y))
    rhs = psi_tilde(n, a, b, x) | {sup(b)} | psi_tilde(n, b, c, y)
    return lhs == rhs


def psi_monotone(n: int) -> bool:
    """Monotonicity of psi under the weak Bruhat order, exhaustively."""
    for a in range(1 << n):
        for b in range(1 << n):
            if not vertex_le(a, b):
                continue
            coords = sorted(coords_of(b & ~a))
            words = list(itertools.permutations(coords))
            for x in words:
                for y in words:
                    if inversions(y) <= inversions(x):
                        if not psi_tilde(n, a, b, x) <= psi_tilde(n, a, b, y):
                            return False
    return True


def psi_concat_exhaustive(n: int) -> bool:
    for a in range(1 << n):
        for b in range(1 << n):
            if not (vertex_le(a, b) and sup(a) < sup(b)):
                continue
            for c in range(1 << n):
                if not (vertex_le(b, c) and sup(b) < sup(c)):
                    continue
                xs = itertools.permutations(sorted(coords_of(b & ~a)))
                for x in xs:
                    for y in itertools.permutations(sorted(coords_of(c & ~b))):
                        if not psi_concat_check(n, a, b, c, x, y):
                            return False
    return True


def gamma_constancy_check(n: int, i: int) -> bool:
    """The composite through the positive facet at i depends only on the
    data above i: on vertices via the largest coordinate, on hom posets via
    the record set of the subword of coordinates above i."""
    if not 1 <= i <= n:
        raise ValueError("facet index out of range")
    bit = 1 << (i - 1)
    low = [m for m in range(1 << n) if m.bit_length() < i]
    high = [m for m in range(1 << n)
            if m & (bit | (bit - 1)) == 0]
    for a in low:
        for b in low:
            if not vertex_le(a, b):
                continue
            for a2 in high:
                for b2 in high:
                    if not vertex_le(a2, b2):
                        continue
                    va = a | bit | a2
                    vb = b | bit | b2
                    if sup(va) != sup(bit | a2):
                        return False
                    window = set(range(sup(bit | a2) + 1, sup(bit | b2)))
                    coords = sorted(coords_of(vb & ~va))
                    for z in itertools.permutations(coords):
                        ys = tuple(c for c in z if c > i)
                        recs = {ys[l] for l in range(len(ys))
                                if all(ys[p] < ys[l] for p in range(l))}
                        if psi_tilde(n, va, vb, z) != frozenset(recs & window):
                            return False
    return True
