"""Exact-rational Gelfand-Cetlin polytopes.

The polytope for a weight vector lambda lives in R^N, one coordinate per
ladder-diagram box (equivalently, per non-constant entry of the triangular
interlacing pattern).  All arithmetic in this module is exact over the
rationals: facet irredundancy, vertex enumeration, volumes, reflexivity and
the unimodularity check for simplicial cones are integer/rational statements
and are decided without floating point (floats are used only to prefilter
vertex candidates, every reported vertex is verified exactly).
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

import numpy as np

from .exactla import affine_dim, det, rank, solve, to_fraction
from .flags import FlagType, dimension


# ---------------------------------------------------------------------------
# lambda / pattern bookkeeping


def validate_lambda(flag, lam):
    """Check the block condition: constant on blocks, strictly decreasing across."""
    lam = tuple(to_fraction(x) for x in lam)
    if len(lam) != flag.n:
        raise ValueError("lambda must have length n = %d" % flag.n)
    d = flag.dims
    for l in range(1, flag.r + 2):
        block = lam[d[l - 1] : d[l]]
        if any(x != block[0] for x in block):
            raise ValueError("lambda must be constant on block %d" % l)
    for l in range(1, flag.r + 1):
        if lam[d[l] - 1] <= lam[d[l]]:
            raise ValueError(
                "lambda must decrease strictly across block boundary %d" % l
            )
    return lam


def is_pinned(flag, k, i):
    """Entry (k, i) of the pattern is forced to a constant lambda value."""
    return flag.block_of(i) == flag.block_of(i + flag.n - k)


def free_positions(flag):
    """Non-constant pattern positions (k, i), rows listed top-down.

    The order (k = n-1, ..., 1, i increasing) is the coordinate order used
    throughout; it matches the usual way the triangular pattern is read.
    """
    return tuple(
        (k, i)
        for k in range(flag.n - 1, 0, -1)
        for i in range(1, k + 1)
        if not is_pinned(flag, k, i)
    )


@dataclass(frozen=True)
class GCPattern:
    """A full triangular interlacing array, rows indexed 1..n (row n = lambda)."""

    rows: tuple  # rows[k-1] is row k as a tuple of Fractions

    @property
    def n(self):
        return len(self.rows)

    def entry(self, k, i):
        return self.rows[k - 1][i - 1]

    def check_interlacing(self, strict=False):
        for k in range(1, self.n):
            for i in range(1, k + 1):
                up_left = self.entry(k + 1, i)
                up_right = self.entry(k + 1, i + 1)
                mid = self.entry(k, i)
                if strict:
                    if not (up_left > mid > up_right):
                        return False
                else:
                    if not (up_left >= mid >= up_right):
                        return False
        return True


@dataclass(frozen=True)
class Facet:
    """One supporting halfspace ell(u) = <v, u> - tau >= 0.

    tau_blocks gives tau as an integer combination of the block values
    lambda_{n_1}, ..., lambda_{n_{r+1}}; pair records the two pattern
    positions whose interlacing inequality produced the facet.
    """

    v: tuple  # integer normal, at most two nonzero entries, each +-1
    tau: Fraction
    tau_blocks: tuple
    pair: tuple  # (upper position, lower position), positions are (k, i)

    def ell(self, u):
        return sum(c * x for c, x in zip(self.v, u)) - self.tau


@dataclass(frozen=True)
class GCPolytope:
    flag: FlagType
    lam: tuple
    coords: tuple  # ordered free positions (k, i)
    facets: tuple

    @property
    def N(self):
        return len(self.coords)

    # -- pattern assembly -------------------------------------------------

    def pattern(self, u):
        """Assemble the full triangular pattern from coordinates u."""
        u = tuple(u)
        if len(u) != self.N:
            raise ValueError("expected %d coordinates, got %d" % (self.N, len(u)))
        vals = dict(zip(self.coords, u))
        rows = []
        for k in range(1, self.flag.n):
            row = []
            for i in range(1, k + 1):
                if (k, i) in vals:
                    row.append(vals[(k, i)])
                else:
                    row.append(self.lam[i - 1])
            rows.append(tuple(row))
        rows.append(tuple(self.lam))
        return GCPattern(rows=tuple(rows))

    def coordinates_of(self, pattern):
        return tuple(pattern.entry(k, i) for (k, i) in self.coords)

    # -- membership -------------------------------------------------------

    def contains(self, u, strict=False):
        u = tuple(to_fraction(x) for x in u)
        if len(u) != self.N:
            raise ValueError("dimension mismatch")
        if strict:
            return all(f.ell(u) > 0 for f in self.facets)
        return all(f.ell(u) >= 0 for f in self.facets)

    def contains_float(self, u, tol=1e-9):
        u = np.asarray(u, dtype=float)
        if u.shape != (self.N,):
            raise ValueError("dimension mismatch")
        A, b = self.halfspace_arrays()
        return bool(np.all(A @ u - b >= -tol))

    def halfspace_arrays(self):
        A = np.array([f.v for f in self.facets], dtype=float)
        b = np.array([float(f.tau) for f in self.facets])
        return A, b

    def interior_point(self):
        """Barycenter of the vertex set (interior for full-dimensional polytopes)."""
        verts = [v for v, _ in self.vertices()]
        m = len(verts)
        return tuple(sum(col) / m for col in zip(*verts))

    # -- vertices (cached) ------------------------------------------------

    def vertices(self):
        """All vertices with their active facet index sets, canonically sorted."""
        if not hasattr(self, "_verts"):
            ineqs = [(f.v, f.tau) for f in self.facets]
            object.__setattr__(self, "_verts", _vertices_of(ineqs, self.N))
        return self._verts


# ---------------------------------------------------------------------------
# construction


def build_polytope(flag, lam, coords=None):
    """Build the irredundant facet description of the Gelfand-Cetlin polytope.

    One inequality is generated per adjacent pattern pair; constant-constant
    pairs are dropped and inequalities whose face is not (N-1)-dimensional
    are removed (decided exactly via vertex enumeration).
    """
    lam = validate_lambda(flag, lam)
    default_coords = free_positions(flag)
    if coords is None:
        coords = default_coords
    else:
        coords = tuple((int(k), int(i)) for k, i in coords)
        if sorted(coords) != sorted(default_coords):
            raise ValueError("coords override must permute the free positions")
    index = {pos: a for a, pos in enumerate(coords)}
    N = len(coords)
    n = flag.n
    d = flag.dims

    def term(k, i):
        """Return ('free', coord index) or ('const', block index)."""
        if k == n or is_pinned(flag, k, i):
            return ("const", flag.block_of(i))
        return ("free", index[(k, i)])

    candidates = []
    seen = set()
    for k in range(n - 1, 0, -1):
        for i in range(1, k + 1):
            for upper, lower in (((k + 1, i), (k, i)), ((k, i), (k + 1, i + 1))):
                tu, tl = term(*upper), term(*lower)
                if tu[0] == "const" and tl[0] == "const":
                    continue
                v = [0] * N
                cb = [0] * (flag.r + 1)
                for t, sgn in ((tu, 1), (tl, -1)):
                    if t[0] == "free":
                        v[t[1]] += sgn
                    else:
                        cb[t[1] - 1] += sgn
                tau_blocks = tuple(-c for c in cb)
                key = (tuple(v), tau_blocks)
                if key in seen:
                    continue
                seen.add(key)
                tau = sum(
                    Fraction(c) * lam[d[l + 1] - 1] for l, c in enumerate(tau_blocks)
                )
                candidates.append(
                    Facet(v=tuple(v), tau=tau, tau_blocks=tau_blocks, pair=(upper, lower))
                )

    verts = _vertices_of([(f.v, f.tau) for f in candidates], N)
    facets = []
    for j, f in enumerate(candidates):
        on_face = [v for v, act in verts if j in act]
        if affine_dim(on_face) == N - 1:
            facets.append(f)
    poly = GCPolytope(flag=flag, lam=lam, coords=coords, facets=tuple(facets))
    return poly


# ---------------------------------------------------------------------------
# vertex enumeration (brute force over facet subsets, float-prefiltered)


def _vertices_of(ineqs, N):
    """Vertices of {u : <v,u> >= tau for all (v, tau)} with active index sets.

    Brute force over N-subsets: floats select candidate basic solutions,
    each surviving candidate is re-solved and feasibility-checked exactly.
    """
    m = len(ineqs)
    if m < N:
        raise ValueError("not enough inequalities for a vertex")
    A = np.array([v for v, _ in ineqs], dtype=float)
    b = np.array([float(t) for _, t in ineqs])
    subsets = list(combinations(range(m), N))
    idx = np.array(subsets)
    As = A[idx]  # (S, N, N)
    bs = b[idx]  # (S, N)
    dets = np.linalg.det(As)
    ok = np.abs(dets) > 1e-9
    sol = np.full((len(subsets), N), np.nan)
    if ok.any():
        sol[ok] = np.linalg.solve(As[ok], bs[ok][..., None])[..., 0]
    scale = 1.0 + np.abs(b).max() + np.abs(sol[ok]).max() if ok.any() else 1.0
    feas = ok & np.all(sol @ A.T - b[None, :] >= -1e-7 * scale, axis=1)

    # group candidate subsets by the rounded float solution, so that a
    # degenerate vertex (many active facets) costs one exact solve, not
    # one per basis choice
    groups = {}
    for s in np.nonzero(feas)[0]:
        key = tuple(np.round(sol[s], 6))
        groups.setdefault(key, []).append(subsets[s])

    found = {}
    for subs in groups.values():
        for sub in subs:
            rows = [[Fraction(x) for x in ineqs[j][0]] for j in sub]
            rhs = [ineqs[j][1] for j in sub]
            pt = solve(rows, rhs)
            if pt is None:
                continue
            if pt in found:
                break
            vals = [
                sum(Fraction(c) * x for c, x in zip(v, pt)) - t for v, t in ineqs
            ]
            if any(val < 0 for val in vals):
                break
            found[pt] = frozenset(j for j, val in enumerate(vals) if val == 0)
            break
    return sorted(found.items())


# ---------------------------------------------------------------------------
# lattice points and counting


def weyl_dimension(lam):
    """prod_{i<j} (lam_i - lam_j + j - i) / prod k!  for integral lam."""
    lam = [to_fraction(x) for x in lam]
    n = len(lam)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + (j - i)
    den = 1
    for k in range(1, n):
        den *= factorial(k)
    val = num / den
    if val.denominator != 1:
        raise AssertionError("Weyl dimension is not an integer")
    return int(val)


def lattice_points(poly):
    """All integral patterns, as coordinate vectors, in sorted order.

    Rows are filled top-down; each entry ranges over the integers between
    its two upper neighbours, which enumerates exactly the interlacing
    patterns with top row lambda.
    """
    lam = poly.lam
    if any(x.denominator != 1 for x in lam):
        raise ValueError("lattice enumeration requires integral lambda")
    n = poly.flag.n
    points = []

    def fill(rows):
        k = n - len(rows)  # row to fill next
        if k == 0:
            pat = GCPattern(rows=tuple(reversed([tuple(r) for r in rows])))
            points.append(poly.coordinates_of(pat))
            return
        upper = rows[-1]

        def fill_row(row, i):
            if i > k:
                fill(rows + [row])
                return
            lo = upper[i]  # lambda^{(k+1)}_{i+1}
            hi = upper[i - 1]  # lambda^{(k+1)}_i
            x = int(lo) if lo.denominator == 1 else int(lo) + 1
            while x <= hi:
                fill_row(row + [Fraction(x)], i + 1)
                x += 1

        fill_row([], 1)

    fill([tuple(lam)])
    return sorted(points)


# ---------------------------------------------------------------------------
# volume


def volume_formula(flag, lam):
    """prod (lam_i - lam_j)/(j - i) over pairs i < j in distinct blocks.

    This is the leading coefficient of k -> weyl_dimension(k lam) in k^N,
    i.e. the Euclidean volume of the polytope; pairs inside a block drop
    out (their lam-difference vanishes and their j - i factor with it).
    """
    lam = validate_lambda(flag, lam)
    n = flag.n
    out = Fraction(1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if flag.block_of(i) != flag.block_of(j):
                out *= Fraction(lam[i - 1] - lam[j - 1], j - i)
    return out


def _volume_of(points, facet_sets):
    """Exact Euclidean volume of a full-dimensional polytope.

    points: list of rational vectors; facet_sets: frozensets of point
    indices lying on each facet.  Uses a pulling triangulation; each face
    of the face lattice is triangulated once (memoized), since the pulled
    vertex min(face) does not depend on how the face was reached.
    """
    N = len(points[0])
    facet_sets = sorted(set(facet_sets))
    dim_cache = {}
    tri_cache = {}

    def adim(fs):
        if fs not in dim_cache:
            dim_cache[fs] = affine_dim([points[i] for i in fs])
        return dim_cache[fs]

    def tri(vset):
        if vset in tri_cache:
            return tri_cache[vset]
        dim = adim(vset)
        if len(vset) == dim + 1:
            out = [tuple(sorted(vset))]
        else:
            v0 = min(vset)
            out = []
            seen = set()
            for fs in facet_sets:
                sub = vset & fs
                if v0 in sub or len(sub) < dim or sub in seen:
                    continue
                seen.add(sub)
                if adim(sub) == dim - 1:
                    out.extend(s + (v0,) for s in tri(sub))
        tri_cache[vset] = out
        return out

    simplices = tri(frozenset(range(len(points))))
    total = Fraction(0)
    fact = factorial(N)
    for simplex in simplices:
        base = points[simplex[0]]
        rows = [
            [points[i][c] - base[c] for c in range(N)] for i in simplex[1:]
        ]
        total += abs(det(rows)) / fact
    return total


def volume(poly):
    """Exact Euclidean volume via a pulling triangulation of the vertex set."""
    if poly.N < 1:
        raise ValueError("polytope must be at least one-dimensional")
    verts = poly.vertices()
    points = [v for v, _ in verts]
    if affine_dim(points) < poly.N:
        raise ValueError("polytope is not full-dimensional")
    facet_sets = [
        frozenset(i for i, (_, act) in enumerate(verts) if j in act)
        for j in range(len(poly.facets))
    ]
    return _volume_of(points, facet_sets)


# ---------------------------------------------------------------------------
# reflexivity and the dual polytope


def interior_lattice_points(poly):
    return [p for p in lattice_points(poly) if poly.contains(p, strict=True)]


def is_reflexive(poly):
    """(True, translation) if the polytope is reflexive after translating the
    unique interior lattice point to the origin; (False, None) otherwise."""
    if any(x.denominator != 1 for x in poly.lam):
        raise ValueError("reflexivity requires integral lambda")
    interior = interior_lattice_points(poly)
    if len(interior) != 1:
        return False, None
    p = interior[0]
    for f in poly.facets:
        shifted = f.tau - sum(Fraction(c) * x for c, x in zip(f.v, p))
        if shifted != -1:
            return False, None
    return True, p


def dual_volume(poly):
    """Exact volume of conv{facet normals}, the dual after the reflexive shift."""
    ok, p = is_reflexive(poly)
    if not ok:
        raise ValueError("dual polytope is only defined for reflexive input")
    normals = [tuple(Fraction(c) for c in f.v) for f in poly.facets]
    # facets of the dual correspond to vertices of the translated polytope
    facet_sets = []
    for w, _ in poly.vertices():
        ws = tuple(x - y for x, y in zip(w, p))
        fs = frozenset(
            i
            for i, v in enumerate(normals)
            if sum(a * b for a, b in zip(v, ws)) == -1
        )
        facet_sets.append(fs)
    return _volume_of(normals, facet_sets)


# ---------------------------------------------------------------------------
# simplicial refinement determinant


class LoopError(ValueError):
    """The selected equality set contains a loop in the pattern graph."""


def _facet_node(poly, pos):
    k, i = pos
    if k == poly.flag.n or is_pinned(poly.flag, k, i):
        return ("val", poly.flag.block_of(i))
    return ("box", k, i)


def selection_is_loop_free(poly, facet_indices):
    """Union-find over pattern entries; a loop is a cycle of equalities."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in facet_indices:
        up, lo = poly.facets[j].pair
        a, b = find(_facet_node(poly, up)), find(_facet_node(poly, lo))
        if a == b:
            return False
        parent[a] = b
    return True


def simplicial_cone_determinant(poly, vertex, facet_indices):
    """|det| of the N normals selected at a vertex; must be 1 when loop-free."""
    vertex = tuple(to_fraction(x) for x in vertex)
    facet_indices = list(facet_indices)
    if len(facet_indices) != poly.N:
        raise ValueError("need exactly N rays")
    for j in facet_indices:
        if poly.facets[j].ell(vertex) != 0:
            raise ValueError("ray %d is not active at the vertex" % j)
    if not selection_is_loop_free(poly, facet_indices):
        raise LoopError("equality set contains a loop")
    rows = [[Fraction(c) for c in poly.facets[j].v] for j in facet_indices]
    if rank(rows) < poly.N:
        raise ValueError("ray selection is rank-deficient")
    return det(rows)


# ---------------------------------------------------------------------------
# serialization


def frac_str(x):
    x = to_fraction(x)
    return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 else str(
        x.numerator
    )


def polytope_to_json(poly):
    return {
        "flag": str(poly.flag),
        "lambda": [frac_str(x) for x in poly.lam],
        "coords": [[k, i] for k, i in poly.coords],
        "facets": [
            {"v": list(f.v), "tau": frac_str(f.tau)} for f in poly.facets
        ],
    }


def polytope_from_json(doc):
    flag = FlagType.parse(doc["flag"])
    lam = [Fraction(s) for s in doc["lambda"]]
    coords = [tuple(c) for c in doc["coords"]]
    poly = build_polytope(flag, lam, coords=coords)
    got = {(f.v, f.tau) for f in poly.facets}
    want = {
        (tuple(f["v"]), Fraction(f["tau"])) for f in doc["facets"]
    }
    if got != want:
        raise ValueError("facet list in document does not match rebuilt polytope")
    return poly


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=False)
