"""Tour of Gelfand-Cetlin polytopes for F(1,2,3) and Gr(2,4).

Builds the two classical examples, prints their facet inequalities in the
standard display order, enumerates vertices and lattice points, and checks
the closed-form volume and the reflexivity of the anticanonical member.
"""

from gcflag import (
    FlagType,
    anticanonical_lambda,
    build_polytope,
    dual_volume,
    is_reflexive,
    lattice_points,
    volume,
    volume_formula,
    weyl_dimension,
)
from gcflag.polytopes import frac_str


def tour(flag, lam):
    poly = build_polytope(flag, lam)
    print("=" * 60)
    print("flag %s, lambda = %s" % (flag, [frac_str(x) for x in poly.lam]))
    print("coordinates (pattern boxes):", poly.coords)
    print("facets <v,u> >= tau:")
    for k, f in enumerate(poly.facets, start=1):
        print("  l_%d: v = %s, tau = %s" % (k, f.v, frac_str(f.tau)))
    verts = poly.vertices()
    print("%d vertices:" % len(verts))
    for v, active in verts:
        print("  %s  (on facets %s)" % ([frac_str(x) for x in v], sorted(active)))
    print("volume:", frac_str(volume(poly)), "=", frac_str(volume_formula(flag, poly.lam)))
    if all(x.denominator == 1 for x in poly.lam):
        pts = lattice_points(poly)
        line = "lattice points: %d" % len(pts)
        if flag.is_full():
            line += "  (Weyl dimension %d)" % weyl_dimension(poly.lam)
        print(line)


def reflexive_demo(flag):
    lam = anticanonical_lambda(flag)
    poly = build_polytope(flag, lam)
    ok, p = is_reflexive(poly)
    print("=" * 60)
    print("anticanonical %s: lambda = %s, reflexive = %s" % (flag, lam, ok))
    if ok:
        print("  unique interior lattice point:", [frac_str(x) for x in p])
        print("  dual volume:", frac_str(dual_volume(poly)))


if __name__ == "__main__":
    tour(FlagType.full(3), [2, 0, -2])
    tour(FlagType.grassmannian(2, 4), [1, 1, -1, -1])
    reflexive_demo(FlagType.full(3))
    reflexive_demo(FlagType.grassmannian(2, 4))
