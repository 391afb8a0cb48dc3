import json
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gcflag.exactla import affine_dim, det, rank, solve
from gcflag.flags import FlagType, anticanonical_lambda, dimension
from gcflag.polytopes import (
    GCPolytope,
    build_polytope,
    dual_volume,
    free_positions,
    interior_lattice_points,
    is_reflexive,
    lattice_points,
    polytope_from_json,
    polytope_to_json,
    selection_is_loop_free,
    simplicial_cone_determinant,
    volume,
    volume_formula,
    weyl_dimension,
    LoopError,
)

F3 = FlagType.full(3)
G24 = FlagType.grassmannian(2, 4)


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def test_exactla_basics():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]) == Fraction(1, 6)
    assert rank([[1, 2], [2, 4]]) == 1
    assert solve([[2, 0], [0, 4]], [1, 1]) == (Fraction(1, 2), Fraction(1, 4))
    assert solve([[1, 1], [1, 1]], [0, 1]) is None
    assert affine_dim([(0, 0), (1, 0), (0, 1), (1, 1)]) == 2
    assert affine_dim([(0, 0), (1, 1), (2, 2)]) == 1


# ---------------------------------------------------------------------------
# facet reproduction (the two worked examples, in display order)


def test_facets_f123():
    poly = build_polytope(F3, [2, 0, -2])
    assert poly.coords == ((2, 1), (2, 2), (1, 1))
    got = [(f.v, f.tau) for f in poly.facets]
    assert got == [
        ((-1, 0, 0), Fraction(-2)),
        ((1, 0, 0), Fraction(0)),
        ((0, -1, 0), Fraction(0)),
        ((0, 1, 0), Fraction(-2)),
        ((1, 0, -1), Fraction(0)),
        ((0, -1, 1), Fraction(0)),
    ]


def test_facets_gr24():
    poly = build_polytope(G24, [1, 1, -1, -1])
    assert poly.coords == ((3, 2), (2, 1), (2, 2), (1, 1))
    got = [(f.v, f.tau) for f in poly.facets]
    assert got == [
        ((0, -1, 0, 0), Fraction(-1)),
        ((-1, 1, 0, 0), Fraction(0)),
        ((1, 0, -1, 0), Fraction(0)),
        ((0, 0, 1, 0), Fraction(-1)),
        ((0, 1, 0, -1), Fraction(0)),
        ((0, 0, -1, 1), Fraction(0)),
    ]


def test_facet_tau_blocks_consistency():
    for fl, lam in [(F3, (2, 0, -2)), (G24, (1, 1, -1, -1)), (FlagType(5, (2, 4)), (2, 2, 0, 0, -1))]:
        poly = build_polytope(fl, lam)
        d = fl.dims
        for f in poly.facets:
            assert f.tau == sum(
                Fraction(c) * poly.lam[d[l + 1] - 1]
                for l, c in enumerate(f.tau_blocks)
            )


def test_lambda_validation():
    with pytest.raises(ValueError):
        build_polytope(F3, [0, 0, -2])  # not strict across blocks
    with pytest.raises(ValueError):
        build_polytope(G24, [2, 1, -1, -1])  # not constant on a block
    with pytest.raises(ValueError):
        build_polytope(F3, [1, 2, 3])  # increasing


# ---------------------------------------------------------------------------
# vertex oracle: independent pure-Fraction enumeration, no prefilter


def brute_force_vertices(poly):
    """Intersect every N-subset of facet hyperplanes exactly; keep feasible."""
    ineqs = [(f.v, f.tau) for f in poly.facets]
    found = set()
    for sub in combinations(range(len(ineqs)), poly.N):
        rows = [[Fraction(c) for c in ineqs[j][0]] for j in sub]
        rhs = [ineqs[j][1] for j in sub]
        pt = solve(rows, rhs)
        if pt is None:
            continue
        if all(
            sum(Fraction(c) * x for c, x in zip(v, pt)) - t >= 0
            for v, t in ineqs
        ):
            found.add(pt)
    return sorted(found)


def test_vertices_f123_against_oracle():
    poly = build_polytope(F3, [2, 0, -2])
    oracle = brute_force_vertices(poly)
    assert len(oracle) == 7  # cone over a square: 4 + 2 + 1
    assert [v for v, _ in poly.vertices()] == oracle
    # the apex of the cone (the S^3 fiber point) lies on four facets
    apex = (Fraction(0), Fraction(0), Fraction(0))
    acts = dict(poly.vertices())
    assert len(acts[apex]) == 4


def test_vertices_gr24_against_oracle():
    poly = build_polytope(G24, [1, 1, -1, -1])
    oracle = brute_force_vertices(poly)
    assert [v for v, _ in poly.vertices()] == oracle
    assert len(oracle) == 6


def test_vertices_partial_flag_against_oracle():
    poly = build_polytope(FlagType(4, (1, 3)), [2, 0, 0, -2])
    oracle = brute_force_vertices(poly)
    assert [v for v, _ in poly.vertices()] == oracle


# ---------------------------------------------------------------------------
# membership, patterns, containment


def test_pattern_roundtrip():
    poly = build_polytope(F3, [2, 0, -2])
    u = (Fraction(1), Fraction(-1), Fraction(0))
    pat = poly.pattern(u)
    assert pat.rows[2] == (Fraction(2), Fraction(0), Fraction(-2))
    assert poly.coordinates_of(pat) == u
    assert pat.check_interlacing()
    assert poly.contains(u, strict=True)
    assert not poly.contains((3, 0, 0))
    assert poly.contains_float([1.0, -1.0, 0.0])
    assert not poly.contains_float([2.1, 0.0, 0.0])


@given(st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_random_interlacing_patterns_are_contained(seed):
    import random

    rnd = random.Random(seed)
    lam = sorted((rnd.randint(-3, 3) for _ in range(4)), reverse=True)
    if len(set(lam)) == 1:
        lam[0] += 1
        lam.sort(reverse=True)
    # blocks of equal values determine the flag
    steps = tuple(
        i for i in range(1, 4) if lam[i - 1] != lam[i]
    )
    fl = FlagType(4, steps)
    poly = build_polytope(fl, lam)
    # build a random interlacing pattern top-down
    rows = [list(map(Fraction, lam))]
    for k in (3, 2, 1):
        upper = rows[-1]
        row = []
        for i in range(k):
            lo, hi = upper[i + 1], upper[i]
            row.append(lo + (hi - lo) * Fraction(rnd.randint(0, 8), 8))
        rows.append(row)
    vals = {}
    for k, row in zip((4, 3, 2, 1), rows):
        for i, x in enumerate(row, start=1):
            vals[(k, i)] = x
    u = tuple(vals[pos] for pos in poly.coords)
    assert poly.contains(u)


# ---------------------------------------------------------------------------
# lattice points and the Weyl dimension oracle


def test_weyl_dimension_examples():
    assert weyl_dimension((1, 0)) == 2
    assert weyl_dimension((2, 0, -2)) == 27
    assert weyl_dimension((1, 0, 0)) == 3


def test_lattice_counts_match_weyl():
    for lam in [(1, 0), (2, 0, -2), (3, 1, 0), (2, 1, 0, -1)]:
        n = len(lam)
        steps = tuple(i for i in range(1, n) if lam[i - 1] != lam[i])
        poly = build_polytope(FlagType(n, steps), lam)
        if FlagType(n, steps).is_full():
            assert len(lattice_points(poly)) == weyl_dimension(lam)


def test_lattice_points_are_contained_and_integral():
    poly = build_polytope(G24, [2, 2, -1, -1])
    pts = lattice_points(poly)
    assert len(pts) == len(set(pts))
    for p in pts:
        assert poly.contains(p)
        assert all(x.denominator == 1 for x in p)


# ---------------------------------------------------------------------------
# volume


def test_volume_f123():
    poly = build_polytope(F3, [2, 0, -2])
    assert volume(poly) == 8 == volume_formula(F3, [2, 0, -2])


def test_volume_formula_cases():
    cases = [
        (F3, (3, 1, 0)),
        (G24, (1, 1, -1, -1)),
        (G24, (1, 1, 0, 0)),
        (FlagType.full(4), (3, 1, -1, -3)),
        (FlagType(4, (1, 3)), (2, 0, 0, -2)),
    ]
    for fl, lam in cases:
        poly = build_polytope(fl, lam)
        assert volume(poly) == volume_formula(fl, lam)


def test_volume_gr24_cli_example():
    assert volume_formula(G24, [1, 1, 0, 0]) == Fraction(1, 12)


# ---------------------------------------------------------------------------
# reflexivity and dual volumes


def test_reflexive_full_flags():
    from math import factorial

    for n in (3, 4):
        fl = FlagType.full(n)
        lam = anticanonical_lambda(fl)
        poly = build_polytope(fl, lam)
        ok, p = is_reflexive(poly)
        assert ok
        # interior pattern entry formula k - 2i + 1
        expected = tuple(
            Fraction(k - 2 * i + 1) for (k, i) in poly.coords
        )
        assert p == expected
        N = poly.N
        assert dual_volume(poly) == Fraction(2**N, factorial(N))


def test_reflexive_gr24():
    from math import factorial

    lam = anticanonical_lambda(G24)
    poly = build_polytope(G24, lam)
    ok, p = is_reflexive(poly)
    assert ok
    N, n = poly.N, 4
    assert dual_volume(poly) == Fraction(n * 2 ** (N - (n - 1)), factorial(N))


def test_not_reflexive():
    poly = build_polytope(G24, [1, 1, -1, -1])
    ok, p = is_reflexive(poly)
    assert not ok and p is None
    assert interior_lattice_points(poly) == []


# ---------------------------------------------------------------------------
# simplicial cone determinants


def test_cone_determinant_pm1():
    poly = build_polytope(F3, [2, 0, -2])
    for vertex, active in poly.vertices():
        for sel in combinations(sorted(active), poly.N):
            if not selection_is_loop_free(poly, sel):
                continue
            rows = [list(poly.facets[j].v) for j in sel]
            if rank(rows) < poly.N:
                continue
            assert abs(simplicial_cone_determinant(poly, vertex, sel)) == 1


def test_cone_determinant_loop_detection():
    # at the F(1,2,3) apex the 4 active facets form a single 4-cycle, so
    # every 3-subset is loop-free; Gr(2,4) has genuine looped N-subsets
    poly = build_polytope(F3, [2, 0, -2])
    apex = tuple(map(Fraction, (0, 0, 0)))
    acts = dict(poly.vertices())[apex]
    assert all(
        selection_is_loop_free(poly, sel)
        for sel in combinations(sorted(acts), 3)
    )

    poly = build_polytope(G24, [1, 1, -1, -1])
    vert = tuple(map(Fraction, (-1, -1, -1, -1)))
    acts = dict(poly.vertices())[vert]
    loops = [
        sel
        for sel in combinations(sorted(acts), 4)
        if not selection_is_loop_free(poly, sel)
    ]
    assert (1, 2, 4, 5) in loops
    with pytest.raises(LoopError):
        simplicial_cone_determinant(poly, vert, loops[0])


def test_cone_determinant_requires_active():
    poly = build_polytope(F3, [2, 0, -2])
    with pytest.raises(ValueError):
        simplicial_cone_determinant(poly, (1, -1, 0), [0, 1, 2])


# ---------------------------------------------------------------------------
# serialization


def test_json_roundtrip():
    poly = build_polytope(G24, [Fraction(3, 2), Fraction(3, 2), -1, -1])
    doc = polytope_to_json(poly)
    blob = json.dumps(doc)
    back = polytope_from_json(json.loads(blob))
    assert back.lam == poly.lam
    assert [f.v for f in back.facets] == [f.v for f in poly.facets]
    assert doc["lambda"][0] == "3/2"


def test_coords_override():
    default = free_positions(F3)
    swapped = tuple(reversed(default))
    poly = build_polytope(F3, [2, 0, -2], coords=swapped)
    assert poly.coords == swapped
    base = build_polytope(F3, [2, 0, -2])
    assert volume(poly) == volume(base)
    with pytest.raises(ValueError):
        build_polytope(F3, [2, 0, -2], coords=[(1, 1), (2, 1), (2, 1)])
