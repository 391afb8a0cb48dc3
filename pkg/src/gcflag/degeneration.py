"""Toric degeneration combinatorics for flag manifolds.

Deformed Pluecker coordinates q_I(z, t) degenerate det z_I to its diagonal
monomial as t goes to 0; the weights 3^(i-j-1) below the diagonal make the
diagonal term the unique lowest-weight term.  The module also carries the
multi-parameter version (degeneration in stages), the monomial embedding
of the limit torus, its binomial relations, and the numeric moment maps
whose images fill the Gelfand-Cetlin polytope.
"""

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .flags import meet_join, normalize_index_set
from .polytopes import free_positions, is_pinned


# ---------------------------------------------------------------------------
# weights


def weight_matrix(n):
    """w[i][j] = 3^(i-j-1) below the diagonal, 0 elsewhere (1-based access)."""
    w = np.zeros((n + 1, n + 1), dtype=object)
    for i in range(1, n + 1):
        for j in range(1, i):
            w[i][j] = 3 ** (i - j - 1)
    return w


def multi_weight(n):
    """wm[k][i][j]: the exponent of t_k in the (i, j) entry, k = 2..n.

    Row cutoff: entries with i < k are untouched by the k-th stage; the
    exponents telescope to w[i][j] when every t_k is the same t.
    """
    w = weight_matrix(n)
    wm = {}
    for k in range(2, n + 1):
        mat = np.zeros((n + 1, n + 1), dtype=object)
        for i in range(k, n + 1):
            for j in range(1, n + 1):
                mat[i][j] = w[k][j] - w[k - 1][j]
        wm[k] = mat
    return wm


# ---------------------------------------------------------------------------
# deformed Pluecker coordinates


def deformed_plucker(z, I, t):
    """q_I(z, t) = t^(-tr w_I) det(t^(w_ij) z_ij) over rows I, columns 1..|I|.

    Expanded over permutations with the diagonal weight subtracted, so every
    t-exponent is a non-negative integer and q_I(z, 0) is the diagonal
    monomial.
    """
    z = np.asarray(z, dtype=complex)
    n = z.shape[0]
    I = tuple(I)
    k = len(I)
    w = weight_matrix(n)
    base = sum(w[I[l]][l + 1] for l in range(k))
    total = 0.0 + 0.0j
    for perm in permutations(range(k)):
        sign = _perm_sign(perm)
        expo = sum(w[I[perm[l]]][l + 1] for l in range(k)) - base
        term = sign
        for l in range(k):
            term = term * z[I[perm[l]] - 1, l]
        total += term * (t ** expo if expo else 1.0)
    return total


def multi_deformed_plucker(z, I, ts):
    """q~_I(z, t_2, ..., t_n) using the stagewise multi-weights."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[0]
    if len(ts) != n - 1:
        raise ValueError("need n-1 parameters t_2..t_n")
    I = tuple(I)
    k = len(I)
    wm = multi_weight(n)
    base = {m: sum(wm[m][I[l]][l + 1] for l in range(k)) for m in wm}
    total = 0.0 + 0.0j
    for perm in permutations(range(k)):
        term = _perm_sign(perm) + 0.0j
        for l in range(k):
            term = term * z[I[perm[l]] - 1, l]
        for m in wm:
            expo = sum(wm[m][I[perm[l]]][l + 1] for l in range(k)) - base[m]
            if expo:
                term = term * ts[m - 2] ** expo
        total += term
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, ln = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        if ln % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# relation parsing and verification


_TERM_RE = re.compile(
    r"([+-])\s*(?:t(?:\^(\d+))?\s*)?((?:Z\[[0-9,\s]+\])+)\s*"
)
_ZFACT_RE = re.compile(r"Z\[([0-9,\s]+)\]")


def parse_relation(text):
    """Parse "+Z[1]Z[2,3] -Z[2]Z[1,3] +t Z[3]Z[1,2]" into term triples.

    Returns a list of (sign, t-exponent, tuple of index tuples).
    """
    terms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m:
            raise ValueError("malformed relation near %r" % text[pos:])
        sign = 1 if m.group(1) == "+" else -1
        texp = int(m.group(2)) if m.group(2) else (1 if "t" in m.group(0).split("Z")[0] else 0)
        factors = tuple(
            tuple(int(x) for x in f.split(","))
            for f in _ZFACT_RE.findall(m.group(3))
        )
        terms.append((sign, texp, factors))
        pos = m.end()
    if not terms:
        raise ValueError("empty relation")
    return terms


def verify_family_equation(flag, relation, samples=100, seed=0, t=None):
    """Evaluate a signed monomial relation at Z_I = q_I(z, t) on random data.

    Returns the maximum relative residual over the sampled (z, t) pairs;
    t may be pinned to a constant (e.g. 1 for the classical Pluecker
    relation), otherwise it is sampled too.
    """
    if isinstance(relation, str):
        relation = parse_relation(relation)
    n = flag.n
    for _, _, factors in relation:
        for I in factors:
            if len(I) != len(set(I)) or any(not 1 <= i <= n for i in I):
                raise ValueError("invalid index set %r" % (I,))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        tv = t if t is not None else rng.standard_normal() + 1j * rng.standard_normal()
        total = 0.0 + 0.0j
        scale = 0.0
        for sign, texp, factors in relation:
            term = sign * tv ** texp
            for I in factors:
                srt, sgn = normalize_index_set(I)
                term = term * sgn * deformed_plucker(z, srt, tv)
            total += term
            scale += abs(term)
        worst = max(worst, abs(total) / max(scale, 1e-300))
    return worst


# ---------------------------------------------------------------------------
# the limit torus and its monomial embedding


@dataclass(frozen=True)
class TorusPoint:
    """Values tau^{(k)}_i on the ladder boxes; pinned positions are 1."""

    flag: object
    tau: dict  # (k, i) -> complex, free positions only

    def __post_init__(self):
        want = set(free_positions(self.flag))
        if set(self.tau) != want:
            raise ValueError("tau must be given exactly on the free positions")
        if any(v == 0 for v in self.tau.values()):
            raise ValueError("tau values must be nonzero")

    def value(self, k, i):
        if k == self.flag.n or is_pinned(self.flag, k, i):
            return 1.0
        return self.tau[(k, i)]


def random_torus_point(flag, seed):
    rng = np.random.default_rng(seed)
    tau = {}
    for pos in free_positions(flag):
        r = rng.uniform(0.3, 2.0)
        phi = rng.uniform(0, 2 * np.pi)
        tau[pos] = r * np.exp(1j * phi)
    return TorusPoint(flag=flag, tau=tau)


def _tau_entry_boxes(flag, i, j):
    """Free boxes whose tau values multiply into matrix entry (i, j)."""
    return [
        (k, j)
        for k in range(i, flag.n)
        if not is_pinned(flag, k, j)
    ]


def diagonal_monomial_exponents(flag, I):
    """d_I(tau) as a multiset of free boxes (symbolic, exact)."""
    c = Counter()
    for l, i in enumerate(I, start=1):
        c.update(_tau_entry_boxes(flag, i, l))
    return c


def binomial_relation_holds(flag, I, J):
    """d_I d_J = d_meet d_join, checked on exponent multisets."""
    meet, join = meet_join(I, J)
    lhs = diagonal_monomial_exponents(flag, I) + diagonal_monomial_exponents(flag, J)
    rhs = diagonal_monomial_exponents(flag, meet) + diagonal_monomial_exponents(
        flag, join
    )
    return lhs == rhs


@dataclass(frozen=True)
class PluckerPoint:
    """Normalized homogeneous coordinates, one table per step size."""

    flag: object
    values: dict  # sorted index tuple -> complex

    def get(self, I):
        """Coordinate with the sign convention Z_{sigma I} = sgn(sigma) Z_I."""
        srt, sgn = normalize_index_set(I)
        if sgn == 0:
            return 0.0 + 0.0j
        return sgn * self.values.get(srt, 0.0 + 0.0j)


def make_plucker_point(flag, values):
    """Normalize a raw coordinate table so each size class has unit norm."""
    vals = {}
    for I, v in values.items():
        srt, sgn = normalize_index_set(I)
        if sgn == 0:
            raise ValueError("repeated index in %r" % (I,))
        vals[srt] = sgn * complex(v)
    for nk in flag.steps:
        keys = [I for I in vals if len(I) == nk]
        norm = np.sqrt(sum(abs(vals[I]) ** 2 for I in keys))
        if norm == 0:
            raise ValueError("size class %d is identically zero" % nk)
        for I in keys:
            vals[I] = vals[I] / norm
    return PluckerPoint(flag=flag, values=vals)


def monomial_embedding(tau, flag=None):
    """Z_I = d_I(tau), the diagonal monomial, per-size normalized."""
    flag = tau.flag if flag is None else flag
    values = {}
    for nk in flag.steps:
        for I in combinations(range(1, flag.n + 1), nk):
            v = 1.0 + 0.0j
            for l, i in enumerate(I, start=1):
                for box in _tau_entry_boxes(flag, i, l):
                    v = v * tau.value(*box)
            values[I] = v
    return make_plucker_point(flag, values)


# ---------------------------------------------------------------------------
# moment maps


def moment_mu(Z, m, lam):
    """The m x m upper-left block of the orbit point attached to Z."""
    flag = Z.flag
    n = flag.n
    lam = [float(x) for x in lam]
    if not 1 <= m <= n:
        raise ValueError("block size out of range")
    steps = list(flag.steps)
    block_vals = [lam[s - 1] for s in steps] + [lam[n - 1]]
    out = np.full((m, m), 0.0 + 0.0j)
    for k, nk in enumerate(steps):
        coeff = block_vals[k] - block_vals[k + 1]
        norm = sum(
            abs(Z.values.get(I, 0.0)) ** 2
            for I in combinations(range(1, n + 1), nk)
        )
        gram = np.zeros((m, m), dtype=complex)
        for Ip in combinations(range(1, n + 1), nk - 1):
            zi = np.array([Z.get((i,) + Ip) for i in range(1, m + 1)])
            gram += np.outer(zi, zi.conj())
        out += coeff / norm * gram
    out += lam[n - 1] * np.eye(m)
    return (out + out.conj().T) / 2


def moment_nu(Z, box, lam):
    """Torus moment coordinate for ladder box (m, j).

    Sums |Z_I|^2 over the index sets whose intersection with {1..m} has at
    least j elements, weighted by the block gaps of lambda.
    """
    m, j = box
    flag = Z.flag
    n = flag.n
    lam = [float(x) for x in lam]
    steps = list(flag.steps)
    block_vals = [lam[s - 1] for s in steps] + [lam[n - 1]]
    total = 0.0
    for k, nk in enumerate(steps):
        coeff = block_vals[k] - block_vals[k + 1]
        norm = 0.0
        acc = 0.0
        for I in combinations(range(1, n + 1), nk):
            w = abs(Z.values.get(I, 0.0)) ** 2
            norm += w
            if len([i for i in I if i <= m]) >= j:
                acc += w
        total += coeff * acc / norm
    return total + lam[n - 1]
