"""Walk through the toric degeneration of the flag manifold.

The deformed Pluecker coordinates q_I(z, t) interpolate between the honest
minors (t = 1) and their diagonal monomials (t = 0); along the way they
satisfy t-deformed Pluecker relations exactly.  At t = 0 the image is cut
out by binomial relations indexed by meet/join pairs, and the moment-map
eigenvalues on the degenerate fiber agree with the torus moment
coordinates box by box.
"""

import numpy as np

from gcflag import (
    FlagType,
    binomial_relation_holds,
    deformed_plucker,
    moment_mu,
    moment_nu,
    monomial_embedding,
    random_torus_point,
    verify_family_equation,
)
from gcflag.flags import meet_join
from gcflag.polytopes import free_positions
from gcflag.system import eigenvalues_desc

rng = np.random.default_rng(0)

print("deformed Pluecker coordinates, n = 3")
z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
for I in [(1,), (2,), (1, 2), (2, 3)]:
    q1 = deformed_plucker(z, I, 1.0)
    q0 = deformed_plucker(z, I, 0.0)
    minor = np.linalg.det(z[[i - 1 for i in I]][:, : len(I)])
    diag = np.prod([z[i - 1, l] for l, i in enumerate(I)])
    print(
        "  q_%s: |q(1) - det| = %.1e, |q(0) - diag| = %.1e"
        % (list(I), abs(q1 - minor), abs(q0 - diag))
    )

print()
print("t-deformed three-term relation on the family")
res = verify_family_equation(
    FlagType.full(3), "+Z[1]Z[2,3] -Z[2]Z[1,3] +t Z[3]Z[1,2]", samples=200
)
print("  max relative residual over 200 samples: %.1e" % res)

print()
print("binomial relations of the limit ideal, Gr(2,4)")
fl = FlagType.grassmannian(2, 4)
for I, J in [((1, 3), (2, 4)), ((2, 3), (1, 4)), ((1, 4), (2, 3))]:
    meet, join = meet_join(I, J)
    print(
        "  d_%s d_%s = d_%s d_%s: %s"
        % (list(I), list(J), list(meet), list(join),
           binomial_relation_holds(fl, I, J))
    )

print()
print("moment maps on the degenerate fiber (per ladder box)")
for fl, lam in [(FlagType.full(3), [2.0, 0.0, -2.0]),
                (FlagType.grassmannian(2, 4), [1.0, 1.0, -1.0, -1.0])]:
    Z = monomial_embedding(random_torus_point(fl, seed=1))
    worst = 0.0
    for (m, j) in free_positions(fl):
        ev = eigenvalues_desc(moment_mu(Z, m, lam))
        nu = moment_nu(Z, (m, j), lam)
        worst = max(worst, abs(ev[j - 1] - nu))
    print("  %s: worst |eig_j(mu^(m)) - nu~_(m,j)| = %.1e" % (fl, worst))
