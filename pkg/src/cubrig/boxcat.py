"""The cube category with faces, degeneracies and negative (max) connections.

Objects are the posets [1]^n.  Morphisms are stored as monotone vertex
functions together with their unique word in the generators, written as
(faces)(connections)(degeneracies) with face indices strictly decreasing
and the other two blocks strictly increasing.

Vertices of [1]^n are encoded as bitmasks: bit i-1 holds coordinate i, so
the mask also reads as the subset of {1, ..., n} of coordinates equal to 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class NonMonotoneError(ValueError):
    """The given vertex table is not a poset map."""


class NotInBoxCategory(ValueError):
    """The table is monotone but not generated by faces, degeneracies and
    negative connections (e.g. the min-connection [1]^2 -> [1])."""


class SizeGuardExceeded(ValueError):
    """An enumeration was refused because it would be too large."""


DEFAULT_ENUM_GUARD = 8  # enumerate_maps refuses n + m beyond this


# ---------------------------------------------------------------------------
# vertices

def mask_of(coords, n: int) -> int:
    """Bitmask of a subset of {1, ..., n}."""
    m = 0
    for i in coords:
        if not 1 <= i <= n:
            raise ValueError(f"coordinate {i} out of range 1..{n}")
        m |= 1 << (i - 1)
    return m


def coords_of(mask: int) -> frozenset[int]:
    """Subset of {1, ..., n} encoded by a bitmask."""
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def vertex_le(a: int, b: int) -> bool:
    """Componentwise order on vertices (subset inclusion of masks)."""
    return a | b == b


def distance(a: int, b: int) -> int:
    """d(a, b) = |b \\ a| for a <= b."""
    if not vertex_le(a, b):
        raise ValueError("distance requires a <= b")
    return (b & ~a).bit_count()


def sup(mask: int) -> int:
    """Largest coordinate of a vertex, with sup(empty) = 0."""
    return mask.bit_length()


@dataclass(frozen=True)
class Vertex:
    """A vertex of [1]^n, i.e. a subset of {1, ..., n}."""

    n: int
    coords: frozenset[int]

    def __post_init__(self):
        if any(not 1 <= i <= self.n for i in self.coords):
            raise ValueError("coordinates out of range")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Vertex":
        return cls(n, coords_of(mask))

    @property
    def mask(self) -> int:
        return mask_of(self.coords, self.n)

    def __le__(self, other: "Vertex") -> bool:
        return self.coords <= other.coords


def alpha(n: int) -> int:
    """Least vertex of [1]^n."""
    return 0


def omega(n: int) -> int:
    """Greatest vertex of [1]^n."""
    return (1 << n) - 1


# ---------------------------------------------------------------------------
# generator actions on masks

def _face_mask(mask: int, c: int, eps: int) -> int:
    # insert eps at coordinate c
    low = mask & ((1 << (c - 1)) - 1)
    return low | (eps << (c - 1)) | ((mask >> (c - 1)) << c)


def _sigma_mask(mask: int, a: int) -> int:
    # forget coordinate a
    low = mask & ((1 << (a - 1)) - 1)
    return low | ((mask >> a) << (a - 1))


def _gamma_mask(mask: int, b: int) -> int:
    # replace coordinates b, b+1 by their max
    x = (mask >> (b - 1)) & 1 | (mask >> b) & 1
    low = mask & ((1 << (b - 1)) - 1)
    return low | (x << (b - 1)) | ((mask >> (b + 1)) << b)


@dataclass(frozen=True)
class NormalForm:
    """Unique generator word of a morphism of the cube category.

    Composition order is right to left: the degeneracy block acts first,
    then the connections, then the faces.
    """

    faces: tuple[tuple[int, int], ...] = ()
    connections: tuple[int, ...] = ()
    degeneracies: tuple[int, ...] = ()

    def __post_init__(self):
        cs = [c for c, _ in self.faces]
        if list(cs) != sorted(cs, reverse=True) or len(set(cs)) != len(cs):
            raise ValueError("face indices must be strictly decreasing")
        for block in (self.connections, self.degeneracies):
            if list(block) != sorted(block) or len(set(block)) != len(block):
                raise ValueError("epi blocks must be strictly increasing")
        if any(eps not in (0, 1) for _, eps in self.faces):
            raise ValueError("face sign must be 0 or 1")

    def is_identity(self) -> bool:
        return not (self.faces or self.connections or self.degeneracies)

    def as_json(self) -> dict:
        return {
            "faces": [list(f) for f in self.faces],
            "connections": list(self.connections),
            "degeneracies": list(self.degeneracies),
        }

    @classmethod
    def from_json(cls, data: dict) -> "NormalForm":
        return cls(
            tuple((c, e) for c, e in data["faces"]),
            tuple(data["connections"]),
            tuple(data["degeneracies"]),
        )


def _word_table(n: int, nf: NormalForm) -> tuple[tuple[int, ...], int]:
    """Vertex table and target dimension of a word applied to [1]^n."""
    d = n - len(nf.degeneracies)
    if nf.degeneracies and not (1 <= nf.degeneracies[0] and nf.degeneracies[-1] <= n):
        raise ValueError("degeneracy index out of range")
    if nf.connections and not (1 <= nf.connections[0] and nf.connections[-1] <= d - 1):
        raise ValueError("connection index out of range")
    d -= len(nf.connections)
    m = d + len(nf.faces)
    if nf.faces and not (nf.faces[-1][0] >= 1 and nf.faces[0][0] <= m):
        raise ValueError("face index out of range")
    table = []
    for mask in range(1 << n):
        v = mask
        for a in reversed(nf.degeneracies):
            v = _sigma_mask(v, a)
        for b in reversed(nf.connections):
            v = _gamma_mask(v, b)
        for c, eps in reversed(nf.faces):
            v = _face_mask(v, c, eps)
        table.append(v)
    return tuple(table), m


class BoxMap:
    """A morphism [1]^src_dim -> [1]^dst_dim of the cube category.

    >>> f = BoxMap.connection(2, 1)          # max of the two coordinates
    >>> f.apply(Vertex.from_mask(2, 0b01)).coords
    frozenset({1})
    """

    __slots__ = ("src_dim", "dst_dim", "table", "normal")

    def __init__(self, src_dim: int, dst_dim: int, table, normal: NormalForm):
        self.src_dim = src_dim
        self.dst_dim = dst_dim
        self.table = tuple(table)
        self.normal = normal

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_table(cls, src_dim: int, dst_dim: int, table) -> "BoxMap":
        """Build from a vertex table, computing the unique normal form.

        Raises NonMonotoneError or NotInBoxCategory when the table is not a
        morphism of the cube category.
        """
        table = tuple(table)
        nf = normalize_table(src_dim, dst_dim, table)
        return cls(src_dim, dst_dim, table, nf)

    @classmethod
    def from_word(cls, src_dim: int, normal: NormalForm) -> "BoxMap":
        table, dst_dim = _word_table(src_dim, normal)
        return cls(src_dim, dst_dim, table, normal)

    @classmethod
    def identity(cls, n: int) -> "BoxMap":
        return cls(n, n, range(1 << n), NormalForm())

    @classmethod
    def face(cls, n: int, i: int, eps: int) -> "BoxMap":
        """The face [1]^{n-1} -> [1]^n inserting eps at coordinate i."""
        if not 1 <= i <= n:
            raise ValueError("face index out of range")
        return cls.from_word(n - 1, NormalForm(faces=((i, eps),)))

    @classmethod
    def degeneracy(cls, n: int, i: int) -> "BoxMap":
        """The map [1]^n -> [1]^{n-1} forgetting coordinate i."""
        if not 1 <= i <= n:
            raise ValueError("degeneracy index out of range")
        return cls.from_word(n, NormalForm(degeneracies=(i,)))

    @classmethod
    def connection(cls, n: int, i: int) -> "BoxMap":
        """The negative connection [1]^n -> [1]^{n-1}, max at coordinates i, i+1."""
        if not 1 <= i <= n - 1:
            raise ValueError("connection index out of range")
        return cls.from_word(n, NormalForm(connections=(i,)))

    @classmethod
    def iota(cls, n: int, a: int, b: int) -> "BoxMap":
        """The face [1]^{d(a,b)} -> [1]^n sending bottom to a and top to b."""
        if not vertex_le(a, b):
            raise ValueError("iota requires a <= b")
        diff = b & ~a
        faces = tuple((c, a >> (c - 1) & 1)
                      for c in range(n, 0, -1) if not diff >> (c - 1) & 1)
        return cls.from_word(diff.bit_count(), NormalForm(faces=faces))

    @classmethod
    def constant(cls, n: int, m: int, value: int) -> "BoxMap":
        """The constant map [1]^n -> [1]^m at the given vertex mask."""
        return cls.from_table(n, m, (value,) * (1 << n))

    @classmethod
    def terminal(cls, n: int) -> "BoxMap":
        """The unique map [1]^n -> [1]^0."""
        return cls.from_word(n, NormalForm(degeneracies=tuple(range(1, n + 1))))

    # -- structure ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, BoxMap) and self.src_dim == other.src_dim
                and self.dst_dim == other.dst_dim and self.table == other.table)

    def __hash__(self):
        return hash((self.src_dim, self.dst_dim, self.table))

    def __repr__(self):
        nf = self.normal
        word = "".join(
            [f"d({c},{e})" for c, e in nf.faces]
            + [f"g({b})" for b in nf.connections]
            + [f"s({a})" for a in nf.degeneracies]) or "id"
        return f"BoxMap({self.src_dim}->{self.dst_dim}, {word})"

    def sort_key(self):
        return (self.src_dim, self.dst_dim, self.table)

    def apply(self, v):
        """Value of the vertex function; accepts a Vertex or a mask."""
        if isinstance(v, Vertex):
            if v.n != self.src_dim:
                raise ValueError("vertex dimension mismatch")
            return Vertex.from_mask(self.dst_dim, self.table[v.mask])
        return self.table[v]

    def compose(self, other: "BoxMap") -> "BoxMap":
        """self o other (other acts first)."""
        if other.dst_dim != self.src_dim:
            raise ValueError("dimension mismatch in composition")
        return BoxMap.from_table(
            other.src_dim, self.dst_dim,
            tuple(self.table[v] for v in other.table))

    def is_identity(self) -> bool:
        return self.normal.is_identity()

    def is_mono(self) -> bool:
        """Monomorphism test: the word consists of faces only."""
        return not (self.normal.connections or self.normal.degeneracies)

    def is_epi(self) -> bool:
        return not self.normal.faces

    def is_constant(self) -> bool:
        return len(set(self.table)) == 1

    def epi_part(self) -> "BoxMap":
        nf = self.normal
        return BoxMap.from_word(
            self.src_dim,
            NormalForm(connections=nf.connections, degeneracies=nf.degeneracies))

    def mono_part(self) -> "BoxMap":
        nf = self.normal
        k = self.src_dim - len(nf.degeneracies) - len(nf.connections)
        return BoxMap.from_word(k, NormalForm(faces=nf.faces))


# ---------------------------------------------------------------------------
# spec-level operations

def apply(f: BoxMap, v):
    return f.apply(v)


def compose(g: BoxMap, f: BoxMap) -> BoxMap:
    """g o f."""
    return g.compose(f)


def normalize_table(src_dim: int, dst_dim: int, table) -> NormalForm:
    """The unique generator word inducing the given vertex table.

    Works directly from the table: split off the face block through the
    images of bottom and top, then read the epi part from the images of the
    atoms.  Raises NonMonotoneError for non-poset-maps and NotInBoxCategory
    for poset maps outside the category (min-connections, diagonals, ...).
    """
    n, m = src_dim, dst_dim
    table = tuple(table)
    if len(table) != 1 << n or any(not 0 <= v < 1 << m for v in table):
        raise ValueError("table has wrong shape")
    for v in range(1 << n):
        for i in range(n):
            if not vertex_le(table[v & ~(1 << i)], table[v | (1 << i)]):
                raise NonMonotoneError("vertex table is not monotone")
    bot, top = table[0], table[(1 << n) - 1]
    diff = top & ~bot
    p = diff.bit_count()
    cols = [j for j in range(1, m + 1) if diff >> (j - 1) & 1]
    col_index = {j: idx for idx, j in enumerate(cols)}
    faces = tuple((c, bot >> (c - 1) & 1)
                  for c in range(m, 0, -1) if not diff >> (c - 1) & 1)

    # image of each atom inside the face spanned by (bot, top)
    block = [0] * (n + 1)  # block index of coordinate i, 0 when forgotten
    for i in range(1, n + 1):
        w = table[1 << (i - 1)] & ~bot
        hits = [col_index[j] + 1 for j in cols if w >> (j - 1) & 1]
        if len(hits) > 1:
            raise NotInBoxCategory("an atom hits several coordinates")
        block[i] = hits[0] if hits else 0

    degeneracies = tuple(i for i in range(1, n + 1) if block[i] == 0)
    sizes = [0] * (p + 1)
    last = 0
    for i in range(1, n + 1):
        if block[i]:
            if block[i] < last:
                raise NotInBoxCategory("atom images are out of order")
            last = block[i]
            sizes[block[i]] += 1
    if any(sizes[j] == 0 for j in range(1, p + 1)):
        raise NotInBoxCategory("a target coordinate is never hit")
    connections = []
    s = 1
    for j in range(1, p + 1):
        connections.extend(range(s, s + sizes[j] - 1))
        s += sizes[j]
    nf = NormalForm(faces, tuple(connections), degeneracies)
    induced, m2 = _word_table(n, nf)
    if m2 != m or induced != table:
        raise NotInBoxCategory("table is not generated by the word it suggests")
    return nf


def normalize(f_or_table, src_dim=None, dst_dim=None) -> NormalForm:
    """Normal form of a BoxMap, or of a raw table given the dimensions."""
    if isinstance(f_or_table, BoxMap):
        return f_or_table.normal
    return normalize_table(src_dim, dst_dim, f_or_table)


def epi_mono_factor(f: BoxMap) -> tuple[BoxMap, BoxMap]:
    """Unique factorisation f = mono o epi."""
    return f.epi_part(), f.mono_part()


def is_mono(f: BoxMap) -> bool:
    return f.is_mono()


def distance_check(f: BoxMap) -> bool:
    """d(f(bottom), f(top)) == src_dim, the monomorphism criterion."""
    return distance(f.table[0], f.table[-1]) == f.src_dim


@lru_cache(maxsize=None)
def enumerate_epis(n: int, k: int) -> tuple[BoxMap, ...]:
    """All epimorphisms [1]^n -> [1]^k.

    An epi forgets a subset of coordinates and merges the survivors into k
    consecutive blocks by max.
    """
    if k > n or k < 0:
        return ()
    out = []
    for p in range(n - k + 1):
        for dropped in itertools.combinations(range(1, n + 1), p):
            survivors = n - p
            if survivors == 0:
                out.append(BoxMap.from_word(n, NormalForm(degeneracies=dropped)))
                continue
            if k == 0:
                continue
            # split the survivors into k consecutive blocks
            for cuts in itertools.combinations(range(1, survivors), k - 1):
                conns = []
                bounds = (0,) + cuts + (survivors,)
                for j in range(k):
                    s, e = bounds[j], bounds[j + 1]
                    conns.extend(range(s + 1, e))
                out.append(BoxMap.from_word(
                    n, NormalForm(connections=tuple(conns), degeneracies=dropped)))
    out.sort(key=BoxMap.sort_key)
    return tuple(out)


def enumerate_monos(k: int, m: int) -> tuple[BoxMap, ...]:
    """All monomorphisms [1]^k -> [1]^m, one per vertex pair at distance k."""
    out = []
    for b in range(1 << m):
        for a in range(1 << m):
            if vertex_le(a, b) and distance(a, b) == k:
                out.append(BoxMap.iota(m, a, b))
    out.sort(key=BoxMap.sort_key)
    return tuple(out)


def enumerate_maps(n: int, m: int, guard: int = DEFAULT_ENUM_GUARD):
    """All morphisms [1]^n -> [1]^m, sorted, without duplicates."""
    if n + m > guard:
        raise SizeGuardExceeded(
            f"enumerate_maps({n},{m}) exceeds guard {guard}; raise the guard to override")
    out = []
    for k in range(min(n, m) + 1):
        for mono in enumerate_monos(k, m):
            for epi in enumerate_epis(n, k):
                out.append(mono.compose(epi))
    out.sort(key=BoxMap.sort_key)
    return out
