"""Verification batteries: each runs a family of finite checks and reports
one pass/fail line per claim.  The CLI exposes them under `verify`; the
acceptance test suite calls the same functions."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass

from .boxcat import BoxMap, NormalForm, enumerate_maps, omega, vertex_le
from .cubeset import (
    BipointedComplex, boundary, open_box, standard_cube, theta_complex,
)
from .homology import homology, is_contractible_homologically, is_sphere_homologically
from .necklace import Necklace, flag_to_partition, hom_nec, subneck_poset
from .pathcat import bruhat_compare, leadsto_closure, paths
from .posets import bruhat, is_order_isomorphism, nerve, ordered_partitions
from .rigidify import (
    gamma_constancy_check, necklace_mapping_space, psi_concat_exhaustive,
    psi_monotone, subcomplex_mapping_space, subneck_colimit_is_injective,
)


@dataclass
class Claim:
    name: str
    passed: bool
    detail: str
    millis: float


def _claim(results, name, fn):
    start = time.perf_counter()
    try:
        detail = fn()
        passed = True
        detail = detail if isinstance(detail, str) else "ok"
    except Exception as exc:  # noqa: BLE001 - report, never crash the battery
        passed = False
        detail = f"{type(exc).__name__}: {exc}"
    results.append(Claim(name, passed, detail, (time.perf_counter() - start) * 1e3))


def compositions(total_max: int):
    """All tuples of positive integers with sum between 1 and total_max."""
    out = []
    for total in range(1, total_max + 1):
        for cuts in itertools.chain.from_iterable(
                itertools.combinations(range(1, total), r) for r in range(total)):
            bounds = (0,) + cuts + (total,)
            out.append(tuple(bounds[i + 1] - bounds[i] for i in range(len(bounds) - 1)))
    return out


# ---------------------------------------------------------------------------

def verify_bruhat() -> list[Claim]:
    results: list[Claim] = []
    for n in range(1, 5):
        def check(n=n):
            pairs = 0
            for a in range(1 << n):
                for b in range(1 << n):
                    if vertex_le(a, b):
                        pre, target, _ = bruhat_compare(n, a, b)
                        assert pre.is_partial_order()
                        pairs += 1
            return f"{pairs} vertex pairs isomorphic to the weak order"
        _claim(results, f"path order = weak Bruhat order on cube^{n}", check)

    def hasse(n=3):
        _, _, mapping = bruhat_compare(3, 0, omega(3))
        pre, _, _ = bruhat_compare(3, 0, omega(3))
        poset = pre.to_poset()
        got = {(mapping[x], mapping[y]) for x, y in poset.cover_pairs()}
        want = {
            ((3, 2, 1), (2, 3, 1)), ((3, 2, 1), (3, 1, 2)),
            ((2, 3, 1), (2, 1, 3)), ((3, 1, 2), (1, 3, 2)),
            ((2, 1, 3), (1, 2, 3)), ((1, 3, 2), (1, 2, 3)),
        }
        assert got == want, f"covers {sorted(got)}"
        return "6 covers as in the reference diagram"
    _claim(results, "Hasse diagram of paths of cube^3", hasse)

    for n in range(1, 5):
        def count(n=n):
            bp = BipointedComplex(standard_cube(n).to_complex(), (0, 0),
                                  (omega(n), omega(n)))
            got = len(paths(bp))
            assert got == math.factorial(n), f"got {got}"
            return f"{got} paths"
        _claim(results, f"path count of cube^{n} is {n}!", count)
    return results


def verify_boxcat() -> list[Claim]:
    results: list[Claim] = []

    def words(n, m):
        for p in range(n + 1):
            for degs in itertools.combinations(range(1, n + 1), p):
                d0 = n - p
                for q in range(max(d0, 1)):
                    for conns in itertools.combinations(range(1, d0), q):
                        r = m - (d0 - q)
                        if r < 0:
                            continue
                        for cs in itertools.combinations(range(1, m + 1), r):
                            for eps in itertools.product((0, 1), repeat=r):
                                yield NormalForm(
                                    tuple(zip(sorted(cs, reverse=True), eps)),
                                    conns, degs)

    def uniqueness():
        seen = 0
        for n in range(4):
            for m in range(4):
                tables = {}
                for w in words(n, m):
                    f = BoxMap.from_word(n, w)
                    assert f.table not in tables, (n, m, w)
                    assert f.normal == w
                    tables[f.table] = w
                    seen += 1
        return f"{seen} words, all distinct and stable"
    _claim(results, "normal-form uniqueness up to dimension 3", uniqueness)

    def factorisation():
        checked = 0
        for n in range(4):
            for m in range(4):
                for f in enumerate_maps(n, m):
                    epi, mono = f.epi_part(), f.mono_part()
                    assert epi.is_epi() and mono.is_mono()
                    assert mono.compose(epi) == f
                    again = mono.compose(epi)
                    assert (again.epi_part(), again.mono_part()) == (epi, mono)
                    checked += 1
        return f"{checked} maps refactored identically"
    _claim(results, "epi-mono factorisation unique up to dimension 3", factorisation)

    def mono_criterion():
        from .boxcat import distance
        checked = 0
        for n in range(4):
            for m in range(4):
                for f in enumerate_maps(n, m):
                    faces_only = not (f.normal.connections or f.normal.degeneracies)
                    dist = distance(f.table[0], f.table[-1]) == n
                    assert f.is_mono() == faces_only == dist
                    checked += 1
        return f"{checked} maps"
    _claim(results, "mono iff distance criterion up to dimension 3", mono_criterion)

    def five_maps():
        maps = enumerate_maps(2, 1)
        assert len(maps) == 5, [f.table for f in maps]
        assert (0, 0, 0, 1) not in {f.table for f in maps}
        return "constants, projections and max; min excluded"
    _claim(results, "five maps from the square to the segment", five_maps)
    return results


def verify_necklace_homs() -> list[Claim]:
    results: list[Claim] = []

    def empty_hom():
        assert hom_nec(Necklace((2, 1, 3)), Necklace((3, 2, 1))) == []
        return "no morphisms"
    _claim(results, "hom (2,1,3) -> (3,2,1) is empty", empty_hom)

    def classification():
        homs = hom_nec(Necklace((2, 1, 3)), Necklace((2, 1)))
        id2, id1 = BoxMap.identity(2), BoxMap.identity(1)
        const_top = BoxMap.constant(3, 1, 1)
        split = {"first": 0, "exceptional": 0}
        for f in homs:
            (j1, p1), (j2, p2), (j3, p3) = f.components
            if j2 == 1 and j3 == 2:
                split["first"] += 1
            elif ((j1, p1), (j2, p2), (j3, p3)) == ((1, id2), (2, id1), (2, const_top)):
                split["exceptional"] += 1
            else:
                raise AssertionError(f"unexpected morphism {f.components}")
        assert split["exceptional"] == 1
        gs = len(hom_nec(Necklace((2, 1)), Necklace((2,))))
        hs = sum(1 for m in enumerate_maps(3, 1)
                 if m.table[0] == 0 and m.table[-1] == 1)
        assert split["first"] == gs * hs
        return f"{split['first']} wedge-split morphisms and one exceptional"
    _claim(results, "hom (2,1,3) -> (2,1) matches the two-case classification",
           classification)

    def partitions_iso():
        counts = {1: 1, 2: 3, 3: 13, 4: 75}
        for n in range(1, 5):
            sp = subneck_poset(standard_cube(n), 0, omega(n))
            op = ordered_partitions(n)
            assert len(sp) == counts[n]
            assert is_order_isomorphism(sp, op, flag_to_partition)
            assert sp.top() == (0, omega(n))
            assert len(sp.minimal_elements()) == math.factorial(n)
        return "counts 1, 3, 13, 75 with top and n! minimal flags"
    _claim(results, "subneck poset of the cube is the ordered-partition poset",
           partitions_iso)
    return results


def verify_contractibility() -> list[Claim]:
    results: list[Claim] = []
    for n in range(1, 5):
        def weak_order(n=n):
            rep = homology(nerve(bruhat(range(1, n + 1))))
            assert rep.is_point_like(), str(rep)
            return str(rep)
        _claim(results, f"nerve of the weak order on {n} letters is contractible",
               weak_order)

    def necklaces_small():
        checked = 0
        for beads in compositions(4):
            t = Necklace(beads)
            verts = t.vertices()
            for a in verts:
                for b in verts:
                    if not vertex_le(a, b):
                        continue
                    ms = necklace_mapping_space(t, a, b)
                    assert is_contractible_homologically(ms.space), (beads, a, b)
                    checked += 1
        return f"{checked} mapping spaces"
    _claim(results, "necklace mapping spaces contractible through total dimension 4",
           necklaces_small)

    def necklaces_dim5():
        checked = 0
        for beads in compositions(5):
            if sum(beads) != 5:
                continue
            t = Necklace(beads)
            ms = necklace_mapping_space(t, t.alpha, t.omega)
            assert is_contractible_homologically(ms.space), beads
            checked += 1
        return f"{checked} end-to-end mapping spaces"
    _claim(results, "necklace mapping spaces contractible at total dimension 5",
           necklaces_dim5)

    for n in (2, 3):
        def boxes(n=n):
            for i in range(1, n + 1):
                for eps in (0, 1):
                    ms = subcomplex_mapping_space(open_box(n, i, eps), 0, omega(n))
                    assert is_contractible_homologically(ms.space), (n, i, eps)
            return f"all {2 * n} open boxes"
        _claim(results, f"open-box mapping spaces contractible in dimension {n}",
               boxes)
    return results


def verify_partition_spheres() -> list[Claim]:
    results: list[Claim] = []
    for n in (1, 2, 3):
        def box_poset(n=n):
            sp = subneck_poset(open_box(n + 1, n + 1, 0), 0, omega(n + 1))
            assert len(sp) == len(ordered_partitions(n + 1)) - 2
            rep = homology(nerve(sp))
            assert rep.is_point_like(), str(rep)
            return f"{len(sp)} embeddings; {rep}"
        _claim(results, f"open-box subneck poset nerve contractible (n={n})",
               box_poset)
    for n in (1, 2, 3):
        def sphere(n=n):
            sp = subneck_poset(boundary(n + 1), 0, omega(n + 1))
            assert len(sp) == len(ordered_partitions(n + 1)) - 1
            space = nerve(sp)
            assert is_sphere_homologically(space, n - 1), str(homology(space))
            return f"{len(sp)} embeddings; {homology(space)}"
        _claim(results, f"boundary subneck poset nerve is a {n - 1}-sphere (n={n})",
               sphere)
    return results


def verify_psi() -> list[Claim]:
    results: list[Claim] = []
    for n in range(1, 5):
        def monotone(n=n):
            assert psi_monotone(n)
            return "ok"
        _claim(results, f"psi monotone under the weak order (n={n})", monotone)
    for n in range(2, 5):
        def concat(n=n):
            assert psi_concat_exhaustive(n)
            return "ok"
        _claim(results, f"psi concatenation identity (n={n})", concat)
    for n in range(1, 5):
        def gamma(n=n):
            for i in range(1, n + 1):
                assert gamma_constancy_check(n, i), i
            return f"all {n} facets"
        _claim(results, f"gamma lifting constancy (n={n})", gamma)
    return results


def verify_counterexample() -> list[Claim]:
    results: list[Claim] = []

    def chain_of_three():
        x, (u, v, w), (a, b) = theta_complex()
        pre = leadsto_closure(BipointedComplex(x, a, b))
        assert len(pre) == 3
        pu = next(p for p in pre.paths if p.edges == (u,))
        pv = next(p for p in pre.paths if p.edges == (v,))
        pw = next(p for p in pre.paths if p.edges == (w,))
        assert pre.leadsto(pu, pv) and pre.leadsto(pv, pw) and pre.leadsto(pu, pw)
        assert pre.is_partial_order()
        assert pre.to_poset().height() == 3
        return "three paths totally ordered"
    _claim(results, "glued squares order their three paths in a chain", chain_of_three)

    def nerve_not_one_skeletal():
        x, _, (a, b) = theta_complex()
        pre = leadsto_closure(BipointedComplex(x, a, b))
        space = nerve(pre.to_poset())
        assert space.n_cells(2) == 1
        return "one nondegenerate 2-simplex"
    _claim(results, "nerve of the glued path order has a 2-simplex",
           nerve_not_one_skeletal)

    def pushout_is_one_skeletal():
        from .posets import FinitePoset, nerve_map
        from .sset import pushout as sset_pushout
        chain2 = FinitePoset.from_covers(["u", "v"], {"u": ["v"]})
        chain2b = FinitePoset.from_covers(["v", "w"], {"v": ["w"]})
        pt = FinitePoset(["v"], [{0}])
        d = 2
        npt = nerve(pt, d)
        n1 = nerve(chain2, d)
        n2 = nerve(chain2b, d)
        _, _, f = nerve_map(pt, chain2, {"v": "v"}, npt, n1)
        _, _, g = nerve_map(pt, chain2b, {"v": "v"}, npt, n2)
        result, _, _ = sset_pushout(f, g)
        assert result.n_cells(0) == 3 and result.n_cells(1) == 2
        assert result.n_cells(2) == 0
        return "three vertices, two edges, nothing above"
    _claim(results, "pushout of the two collapsed-square nerves is 1-skeletal",
           pushout_is_one_skeletal)
    return results


def verify_subneck_injectivity(seed: int = 0, trials: int = 200) -> list[Claim]:
    results: list[Claim] = []

    def run():
        rng = random.Random(seed)
        shapes = [c for c in compositions(4)]
        done = 0
        while done < trials:
            beads = shapes[done % len(shapes)]
            t = Necklace(beads)
            sub = t.to_subcomplex()
            sn = subneck_poset(sub, t.alpha, t.omega)
            seeds = [u for u in sn.elements if rng.random() < 0.35]
            allowed = sn.downward_closure(seeds)
            assert subneck_colimit_is_injective(sub, t.alpha, t.omega, allowed), \
                (beads, allowed)
            done += 1
        return f"{trials} random downward-closed families, zero failures"
    _claim(results, "downward-closed colimits inject into the whole space", run)
    return results


def verify_formula_consistency() -> list[Claim]:
    results: list[Claim] = []

    def run():
        from .rigidify import path_poset_of_flag
        checked = 0
        for beads in compositions(4):
            t = Necklace(beads)
            colim = subcomplex_mapping_space(t.to_subcomplex(), t.alpha, t.omega)
            formula = necklace_mapping_space(t, t.alpha, t.omega)
            poset = path_poset_of_flag(t.flag())
            top = max(colim.space.top_dim, formula.space.top_dim)
            for k in range(top + 1):
                got = sorted(chain for chain, rep in colim.space.cells(k))
                want = sorted(tuple(poset.elements[i] for i in key)
                              for key in formula.space.cells(k))
                assert got == want, (beads, k)
            checked += 1
        return f"{checked} necklaces agree dimensionwise"
    _claim(results, "subneck colimit equals the necklace formula", run)
    return results


BATTERIES = {
    "bruhat": verify_bruhat,
    "boxcat": verify_boxcat,
    "necklace-homs": verify_necklace_homs,
    "open-box-contractible": verify_contractibility,
    "partition-spheres": verify_partition_spheres,
    "psi": verify_psi,
    "counterexample": verify_counterexample,
    "subneck-injectivity": verify_subneck_injectivity,
    "formula-consistency": verify_formula_consistency,
}


def verify_suite(name: str, seed: int = 0) -> tuple[int, dict]:
    """Run a named battery (or all); returns (exit status, report)."""
    if name == "all":
        names = list(BATTERIES)
    elif name in BATTERIES:
        names = [name]
    else:
        raise ValueError(f"unknown battery {name!r}; "
                         f"choose from {', '.join([*BATTERIES, 'all'])}")
    report = {"suite": name, "seed": seed, "batteries": []}
    status = 0
    for battery_name in names:
        fn = BATTERIES[battery_name]
        claims = fn(seed=seed) if battery_name == "subneck-injectivity" else fn()
        entry = {
            "name": battery_name,
            "claims": [{"name": c.name, "passed": c.passed,
                        "detail": c.detail, "millis": round(c.millis, 1)}
                       for c in claims],
        }
        if any(not c.passed for c in claims):
            status = 1
        report["batteries"].append(entry)
    return status, report
