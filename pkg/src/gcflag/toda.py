"""Classical Toda-lattice side of the mirror correspondence.

The tridiagonal Lax matrix A (diagonal p_0..p_{n-1}, superdiagonal
q_1..q_{n-1}, subdiagonal -1) has commuting Hamiltonians D_i read off
from det(A + xI) = x^n + sum_i D_i x^{n-i}.  The phase function
f_q = sum (X_ij + Y_ij) on the torus Y_q coincides with the potential
function at T = e^{-1} under a linear change of variables on the
triangular T-coordinates, and at critical points the momenta
p_i = q_i df/dq_i should land on the level set D_2 = ... = D_n = 0.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class TodaState:
    p: tuple  # (p_0, ..., p_{n-1})
    q: tuple  # (q_1, ..., q_{n-1})

    def __post_init__(self):
        if len(self.q) != len(self.p) - 1:
            raise ValueError("need len(q) = len(p) - 1")


def toda_hamiltonians(state):
    """Coefficients (D_1, ..., D_n) of det(A + xI) = x^n + sum D_i x^{n-i}.

    Computed by the leading-principal-minor recurrence
    M_m = (p_{m-1} + x) M_{m-1} + q_{m-1} M_{m-2}, exactly when the inputs
    are exact (Fractions or ints), in floating point otherwise.
    """
    p, q = state.p, state.q
    n = len(p)
    one = Fraction(1) if _exact(p) and _exact(q) else 1.0
    # polynomials in x as coefficient lists, constant term first
    prev2 = [one]  # M_0 = 1
    prev1 = [p[0] * one, one]  # M_1 = p_0 + x
    for m in range(2, n + 1):
        cur = _poly_add(
            _poly_mul_linear(prev1, p[m - 1] * one),
            _poly_scale(prev2, q[m - 2] * one),
        )
        prev2, prev1 = prev1, cur
    coeffs = prev1 if n >= 1 else prev2
    # coeffs[k] multiplies x^k; D_i is the coefficient of x^{n-i}
    return tuple(coeffs[n - i] for i in range(1, n + 1))


def _exact(vals):
    return all(isinstance(v, (int, Fraction)) for v in vals)


def _poly_mul_linear(poly, c):
    """(x + c) * poly."""
    out = [c * a for a in poly] + [0 * poly[0]]
    for k, a in enumerate(poly):
        out[k + 1] += a
    return out


def _poly_scale(poly, c):
    return [c * a for a in poly]


def _poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, x in enumerate(b):
        out[k] += x
    return out


# ---------------------------------------------------------------------------
# phase coordinates


@dataclass(frozen=True)
class PhaseCoordinates:
    """Triangular array T_{ij}, rows i = 1..n, with T_{i,n-i+1} = lambda_i."""

    n: int
    T: dict  # (i, j) -> value, j = 1..n-i+1

    def __post_init__(self):
        n = self.n
        want = {(i, j) for i in range(1, n + 1) for j in range(1, n - i + 2)}
        if set(self.T) != want:
            raise ValueError("T must be defined exactly on the triangle")

    @property
    def lam(self):
        return tuple(self.T[(i, self.n - i + 1)] for i in range(1, self.n + 1))

    def X(self, i, j):
        return np.exp(self.T[(i, j)] - self.T[(i, j + 1)])

    def Y(self, i, j):
        return np.exp(self.T[(i + 1, j)] - self.T[(i, j)])

    def q(self):
        lam = self.lam
        return tuple(np.exp(lam[i] - lam[i - 1]) for i in range(1, self.n))


def phase_function(pc):
    """f_q = sum of all X_{ij} and Y_{ij}; n(n-1) terms in total."""
    total = 0.0
    for i in range(1, pc.n):
        for j in range(1, pc.n - i + 1):
            total += pc.X(i, j) + pc.Y(i, j)
    return total


def phase_term_count(n):
    return n * (n - 1)


def gc_to_toda(x, u, lam, flag=None):
    """Triangular T-coordinates with T_{ij} = u^{(i+j-1)}_i - x^{(i+j-1)}_i.

    x and u are coordinate vectors in the standard order (pattern rows top
    down); the boundary entries are T_{i,n-i+1} = lambda_i.  Full flags
    only: the change of variables needs every pattern entry free.
    """
    from .flags import FlagType
    from .polytopes import free_positions

    n = len(lam)
    if flag is None:
        flag = FlagType.full(n)
    if not flag.is_full():
        raise ValueError("the Toda correspondence needs a full flag")
    coords = free_positions(flag)
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    pos = {p: a for a, p in enumerate(coords)}
    T = {}
    for i in range(1, n + 1):
        for j in range(1, n - i + 2):
            if j == n - i + 1:
                T[(i, j)] = float(lam[i - 1])
            else:
                a = pos[(i + j - 1, i)]
                T[(i, j)] = float(u[a]) - float(x[a])
    return PhaseCoordinates(n=n, T=T)


# ---------------------------------------------------------------------------
# level-set diagnostics


def boundary_gradients(pc):
    """g_m = df/dlambda_m with the interior T fixed.

    lambda_m appears in Y_{m-1, n-m+1} (positively) and X_{m, n-m}
    (negatively); the ends only carry one of the two terms.
    """
    n = pc.n
    out = []
    for m in range(1, n + 1):
        g = 0.0
        if m >= 2:
            g += pc.Y(m - 1, n - m + 1)
        if m <= n - 1:
            g -= pc.X(m, n - m)
        out.append(g)
    return np.array(out)


def momenta(pc):
    """P_i = q_i df/dq_i recovered from the lambda-gradients.

    log q_i = lambda_{i+1} - lambda_i gives g_m = P_{m-1} - P_m, so the
    partial sums telescope: P_m = -(g_1 + ... + g_m).
    """
    g = boundary_gradients(pc)
    return -np.cumsum(g)[:-1]


def level_set_check(pot, T=np.exp(-1), seed=0):
    """Evaluate the Toda Hamiltonians at every critical point of the potential.

    The momenta come from the phase-function q-derivatives, p_0 is fixed by
    D_1 = 0, and a sign/order convention sweep is applied; the report lists
    per-point best residuals max_i |D_i|, i >= 2, and the winning convention.
    """
    from .potential import critical_points

    if not pot.flag.is_full():
        raise ValueError("the Toda correspondence needs a full flag")
    if abs(T - np.exp(-1)) > 1e-12:
        raise ValueError("the change of variables is stated at T = e^{-1}")
    n = pot.flag.n
    lam = [float(x) for x in pot.lam]
    q = tuple(np.exp(lam[i] - lam[i - 1]) for i in range(1, n))
    pts = critical_points(pot, T, seed=seed)
    report = []
    for cp in pts:
        s = np.log(cp.y.astype(complex))
        # T_{ij} = u_{ij} - x_{ij} = -log y_{ij} at T = e^{-1}
        pc = _phase_from_logs(n, lam, -s)
        g = _lambda_gradients(pc)
        best = None
        for name, p_vec, q_vec in _conventions(g, q):
            state = TodaState(p=tuple(p_vec), q=tuple(q_vec))
            D = toda_hamiltonians(state)
            resid = max(abs(D[i]) for i in range(1, n))
            if best is None or resid < best[1]:
                best = (name, resid, [complex(d) for d in D])
        report.append(
            {
                "y": cp.y,
                "convention": best[0],
                "residual": float(best[1]),
                "D": best[2],
            }
        )
    return report


def _phase_from_logs(n, lam, tvals):
    """PhaseCoordinates with complex interior entries -log y."""
    from .flags import FlagType
    from .polytopes import free_positions

    coords = free_positions(FlagType.full(n))
    pos = {p: a for a, p in enumerate(coords)}
    T = {}
    for i in range(1, n + 1):
        for j in range(1, n - i + 2):
            if j == n - i + 1:
                T[(i, j)] = complex(lam[i - 1])
            else:
                T[(i, j)] = complex(tvals[pos[(i + j - 1, i)]])
    return PhaseCoordinates(n=n, T=T)


def _lambda_gradients(pc):
    """df/dlambda_m for complex phase coordinates, m = 1..n."""
    n = pc.n
    g = []
    for m in range(1, n + 1):
        val = 0.0 + 0.0j
        if m >= 2:
            val += np.exp(pc.T[(m, n - m + 1)] - pc.T[(m - 1, n - m + 1)])
        if m <= n - 1:
            val -= np.exp(pc.T[(m, n - m)] - pc.T[(m, n - m + 1)])
        g.append(val)
    return np.array(g)


def _conventions(g, q):
    """Momentum assembly sweep for the Lax diagonal.

    Two families: "grad" takes p_i = df/dt_i = g_{i+1} (the symbol of the
    quantum operator hbar d/dt_i; q_i = e^{t_i - t_{i-1}} pins t_i to
    lambda_{i+1}, and D_1 = sum g = 0 holds identically), "cumsum" takes
    p_i = q_i df/dq_i = -(g_1 + ... + g_i) with p_0 forced by D_1 = 0.
    Each family is tried with both signs and with index reversal.
    """
    P = -np.cumsum(g)[:-1]
    bases = [
        ("grad", list(g)),
        ("cumsum", [-sum(P)] + list(P)),
    ]
    for bname, base in bases:
        for sgn, sname in ((1, "+"), (-1, "-")):
            pv = [sgn * x for x in base]
            yield sname + bname, pv, list(q)
            yield sname + bname + "-rev", list(reversed(pv)), list(reversed(q))
