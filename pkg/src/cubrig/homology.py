"""Exact integer homology of truncated simplicial sets.

Normalized chains over the nondegenerate simplices, reduced by elementary
chain-complex reductions (free faces, coreductions, unit pivots) before a
dense Smith normal form finishes whatever is left.  All arithmetic is over
the integers; no floating point anywhere.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .sset import TruncSSet, op_is_identity


class MatrixSizeExceeded(ValueError):
    """The dense Smith fallback refused a matrix above the guard."""


DENSE_GUARD = 600  # max rows/cols handed to the dense Smith routine


@dataclass(frozen=True)
class HomologyReport:
    """Betti numbers and torsion in degrees 0 .. top_degree.

    Degrees up to top_degree are exact for the truncated input; the degree
    top_degree + 1 depends on cells above the truncation bound and is not
    reported.
    """

    top_degree: int
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    components: int
    truncated_above: bool = field(default=True)

    def group(self, k: int):
        if not 0 <= k <= self.top_degree:
            raise IndexError("degree out of computed range")
        return (self.betti[k], self.torsion[k])

    def is_point_like(self) -> bool:
        if self.components != 1 or self.betti[0] != 1 or self.torsion[0]:
            return False
        return all(b == 0 and not t
                   for b, t in zip(self.betti[1:], self.torsion[1:]))

    def __str__(self):
        parts = []
        for k in range(self.top_degree + 1):
            gens = ["Z"] * self.betti[k] + [f"Z/{d}" for d in self.torsion[k]]
            parts.append(f"H_{k} = " + (" + ".join(gens) if gens else "0"))
        return "; ".join(parts)


# ---------------------------------------------------------------------------
# chain complexes

def normalized_chain_complex(space: TruncSSet):
    """Sizes and boundary maps of the normalized chains of a TruncSSet.

    Returns (sizes, boundaries): sizes[k] counts nondegenerate k-simplices;
    boundaries[k] is a list of {row: coefficient} dicts, one per k-simplex,
    with rows indexing the (k-1)-simplices.  Degenerate faces contribute 0.
    """
    top = space.top_dim
    sizes = [space.n_cells(k) for k in range(top + 1)]
    index = [{key: i for i, key in enumerate(space.cells(k))} for k in range(top + 1)]
    boundaries = [[] for _ in range(top + 1)]
    for k in range(1, top + 1):
        idx = index[k - 1]
        for key in space.cells(k):
            col: dict[int, int] = {}
            for i in range(k + 1):
                fs = space.face(k, key, i)
                if not op_is_identity(fs.op):
                    continue
                r = idx[fs.key]
                c = col.get(r, 0) + (1 if i % 2 == 0 else -1)
                if c:
                    col[r] = c
                else:
                    del col[r]
            boundaries[k].append(col)
    return sizes, boundaries


def component_count(space: TruncSSet) -> int:
    """Connected components of the 1-skeleton on nondegenerate cells."""
    parent = {key: key for key in space.cells(0)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if space.top_dim >= 1:
        for key in space.cells(1):
            ends = [space.face(1, key, i).key for i in (0, 1)]
            a, b = find(ends[0]), find(ends[1])
            if a != b:
                parent[a] = b
    return len({find(x) for x in parent})


# ---------------------------------------------------------------------------
# the reduction engine

def _chain_homology(sizes, boundaries, dense_guard=DENSE_GUARD):
    """Betti numbers and torsion of a bounded chain complex of free
    Z-modules, via elementary reductions plus a dense Smith fallback.

    boundaries[k][j] is the column of generator j in degree k, as a dict
    over degree-(k-1) generator indices.
    """
    top = len(sizes) - 1
    offs = [0]
    for k in range(top + 1):
        offs.append(offs[-1] + sizes[k])
    total = offs[-1]
    dim_of = [0] * total
    for k in range(top + 1):
        for j in range(sizes[k]):
            dim_of[offs[k] + j] = k

    bnd = [dict() for _ in range(total)]
    cob = [dict() for _ in range(total)]
    for k in range(1, top + 1):
        for j, col in enumerate(boundaries[k]):
            g = offs[k] + j
            for r, c in col.items():
                if c:
                    bnd[g][offs[k - 1] + r] = c
    for g in range(total):
        for r, c in bnd[g].items():
            cob[r][g] = c

    # chain-complex components, for the per-component anchor rule
    comp = list(range(total))

    def cfind(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for g in range(total):
        for r in bnd[g]:
            a, b = cfind(g), cfind(r)
            if a != b:
                comp[a] = b

    alive = [True] * total
    anchored = set()
    anchors = 0
    queue = deque()

    def enqueue(g):
        if not alive[g]:
            return
        if len(cob[g]) == 1 and abs(next(iter(cob[g].values()))) == 1:
            queue.append(g)
        elif len(bnd[g]) == 1 and abs(next(iter(bnd[g].values()))) == 1:
            queue.append(g)

    def reduce_pair(tau, sig):
        """Remove the pair (tau, sig) with <d sig, tau> = +-1."""
        lam = bnd[sig][tau]
        bs = bnd[sig]
        touched = []
        for sp in [s for s in cob[tau] if s != sig]:
            f = -bnd[sp][tau] * lam
            bsp = bnd[sp]
            for r, c in bs.items():
                nv = bsp.get(r, 0) + f * c
                if nv:
                    bsp[r] = nv
                    cob[r][sp] = nv
                else:
                    if r in bsp:
                        del bsp[r]
                        del cob[r][sp]
            touched.append(sp)
        for r in bnd[tau]:
            del cob[r][tau]
            touched.append(r)
        for r in bs:
            if r != tau:
                del cob[r][sig]
                touched.append(r)
        for s2 in cob[sig]:
            del bnd[s2][sig]
            touched.append(s2)
        alive[tau] = alive[sig] = False
        bnd[tau].clear(), cob[tau].clear(), bnd[sig].clear(), cob[sig].clear()
        return touched

    def drain():
        while queue:
            g = queue.popleft()
            if not alive[g]:
                continue
            if len(cob[g]) == 1 and abs(next(iter(cob[g].values()))) == 1:
                tau, sig = g, next(iter(cob[g]))
            elif len(bnd[g]) == 1 and abs(next(iter(bnd[g].values()))) == 1:
                tau, sig = next(iter(bnd[g])), g
            else:
                continue
            for t in reduce_pair(tau, sig):
                enqueue(t)

    for g in range(total):
        enqueue(g)
    drain()

    # per-component free vertex removals: each contributes a Z to H_0
    for v in range(offs[0], offs[1] if top >= 0 else 0):
        if not alive[v]:
            continue
        c = cfind(v)
        if c in anchored:
            continue
        anchored.add(c)
        anchors += 1
        alive[v] = False
        touched = list(cob[v])
        for s in touched:
            del bnd[s][v]
        cob[v].clear()
        for t in touched:
            enqueue(t)
        drain()

    # unit pivots with Markowitz-style selection on whatever is left
    while True:
        best = None
        for g in range(total):
            if not alive[g] or not bnd[g]:
                continue
            for r, c in bnd[g].items():
                if abs(c) == 1:
                    score = (len(bnd[g]) - 1) * (len(cob[r]) - 1)
                    if best is None or score < best[0]:
                        best = (score, r, g)
        if best is None:
            break
        _, tau, sig = best
        for t in reduce_pair(tau, sig):
            enqueue(t)
        drain()

    # dense Smith normal form on the reduced core
    survivors = [g for g in range(total) if alive[g]]
    by_dim = {k: [g for g in survivors if dim_of[g] == k] for k in range(top + 1)}
    ranks = [0] * (top + 2)
    divisors = [[] for _ in range(top + 2)]
    for k in range(1, top + 1):
        rows = by_dim[k - 1]
        cols = [g for g in by_dim[k] if bnd[g]]
        if not cols:
            continue
        if len(rows) > dense_guard or len(cols) > dense_guard:
            raise MatrixSizeExceeded(
                f"reduced boundary in degree {k} is {len(rows)}x{len(cols)}")
        rindex = {r: i for i, r in enumerate(rows)}
        mat = [[0] * len(cols) for _ in rows]
        for j, g in enumerate(cols):
            for r, c in bnd[g].items():
                mat[rindex[r]][j] = c
        divs = smith_invariant_factors(mat)
        ranks[k] = len(divs)
        divisors[k] = divs

    betti = []
    torsion = []
    for k in range(top + 1):
        b = len(by_dim[k]) - ranks[k] - ranks[k + 1]
        if k == 0:
            b += anchors
        betti.append(b)
        torsion.append(tuple(d for d in divisors[k + 1] if d > 1))
    return betti, torsion


def smith_invariant_factors(mat) -> list[int]:
    """Nonzero invariant factors of an integer matrix (dense, exact)."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    divs = []
    top_left = 0
    while True:
        pivot = None
        for i in range(top_left, rows):
            for j in range(top_left, cols):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[top_left], m[pi] = m[pi], m[top_left]
        for row in m:
            row[top_left], row[pj] = row[pj], row[top_left]
        while True:
            p = m[top_left][top_left]
            done = True
            for i in range(top_left + 1, rows):
                q = m[i][top_left] // p
                if q:
                    for j in range(top_left, cols):
                        m[i][j] -= q * m[top_left][j]
                if m[i][top_left]:
                    m[top_left], m[i] = m[i], m[top_left]
                    done = False
                    break
            if not done:
                continue
            for j in range(top_left + 1, cols):
                q = m[top_left][j] // p
                if q:
                    for i in range(top_left, rows):
                        m[i][j] -= q * m[i][top_left]
                if m[top_left][j]:
                    for row in m:
                        row[top_left], row[j] = row[j], row[top_left]
                    done = False
                    break
            if done:
                # ensure the pivot divides the rest of the submatrix
                stubborn = None
                for i in range(top_left + 1, rows):
                    for j in range(top_left + 1, cols):
                        if m[i][j] % p:
                            stubborn = i
                            break
                    if stubborn is not None:
                        break
                if stubborn is None:
                    break
                for j in range(top_left, cols):
                    m[top_left][j] += m[stubborn][j]
        divs.append(abs(m[top_left][top_left]))
        top_left += 1
        if top_left >= rows or top_left >= cols:
            break
    return divs


# ---------------------------------------------------------------------------
# spec-level operations

def homology(space: TruncSSet, dense_guard: int = DENSE_GUARD) -> HomologyReport:
    """Integer homology of the normalized chains, exact through
    degree top_dim - 1 (and everywhere the complex has no top cells)."""
    sizes, boundaries = normalized_chain_complex(space)
    betti, torsion = _chain_homology(sizes, boundaries, dense_guard)
    has_top = space.n_cells(space.top_dim) > 0
    top_degree = space.top_dim - 1 if has_top else space.top_dim
    if top_degree < 0:
        top_degree = 0
        betti = betti + [0] * (1 - len(betti))
    return HomologyReport(
        top_degree=top_degree,
        betti=tuple(betti[: top_degree + 1]),
        torsion=tuple(torsion[: top_degree + 1]),
        components=component_count(space),
        truncated_above=has_top,
    )


def is_contractible_homologically(space: TruncSSet) -> bool:
    """Point homology through the computed range, plus connectedness."""
    return homology(space).is_point_like()


def is_sphere_homologically(space: TruncSSet, n: int) -> bool:
    """Reduced integer homology of an n-sphere through the computed range."""
    rep = homology(space)
    if any(rep.torsion[k] for k in range(rep.top_degree + 1)):
        return False
    if n == 0:
        want = {0: 2}
    else:
        want = {0: 1, n: 1}
    for k in range(rep.top_degree + 1):
        if rep.betti[k] != want.get(k, 0):
            return False
    # degrees above the computed range must not be required
    return n <= rep.top_degree


def euler_characteristic(space: TruncSSet) -> int:
    return space.euler_characteristic()
