"""Affine Cartan data for the folding construction.

Four diagram-automorphism cases are supported, tagged a, b, c, d:

  a: parent A_{2n-1}^(1) (cycle of 2n nodes), omega(j) = -j mod 2n,
     folds to D_{n+1}^(2)
  b: parent A_{2n}^(1) (cycle of 2n+1 nodes), omega(j) = -j mod 2n+1,
     folds to A_{2n}^(2)
  c: parent D_{n+1}^(1), omega swaps the two tail nodes n, n+1,
     folds to A_{2n-1}^(2)
  d: parent D_4^(1) with the center numbered 1, omega cycles the outer
     classical nodes 2 -> 3 -> 4 -> 2, folds to D_4^(3)

All weights are plain integer tuples of coefficients over the fundamental
weights, indexed by the node set; levels are computed from comarks.
Arithmetic is exact throughout (ints, with Fractions inside the kernel
solver only).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd


class ScopeError(ValueError):
    """Input outside the supported construction scope."""


def _gcm_from_edges(size, edges):
    """Simply-laced generalized Cartan matrix from an undirected edge list."""
    a = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
    for i, j in edges:
        a[i][j] = -1
        a[j][i] = -1
    return tuple(tuple(row) for row in a)


def check_gcm(a):
    """Assert the generalized Cartan matrix shape conditions."""
    size = len(a)
    for i in range(size):
        if len(a[i]) != size:
            raise ValueError("matrix not square")
        if a[i][i] != 2:
            raise ValueError("diagonal entry not 2 at %d" % i)
        for j in range(size):
            if i != j and a[i][j] > 0:
                raise ValueError("positive off-diagonal at (%d,%d)" % (i, j))
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise ValueError("zero pattern not symmetric at (%d,%d)" % (i, j))


def positive_primitive_kernel(mat, side="right"):
    """One-dimensional kernel of an affine GCM as a positive primitive integer vector.

    side="right" solves mat @ x = 0 (marks), side="left" solves x @ mat = 0
    (comarks). Raises if the kernel dimension is not exactly one or the
    primitive generator is not strictly positive.
    """
    size = len(mat)
    if side == "left":
        rows = [[Fraction(mat[j][k]) for j in range(size)] for k in range(size)]
    else:
        rows = [[Fraction(v) for v in row] for row in mat]
    pivots = []
    r = 0
    for col in range(size):
        piv = None
        for rr in range(r, size):
            if rows[rr][col] != 0:
                piv = rr
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        scale = rows[r][col]
        rows[r] = [v / scale for v in rows[r]]
        for rr in range(size):
            if rr != r and rows[rr][col] != 0:
                factor = rows[rr][col]
                rows[rr] = [v - factor * w for v, w in zip(rows[rr], rows[r])]
        pivots.append(col)
        r += 1
    if r != size - 1:
        raise ValueError("kernel dimension is %d, expected 1" % (size - r))
    free = next(c for c in range(size) if c not in pivots)
    sol = [Fraction(0)] * size
    sol[free] = Fraction(1)
    for row, col in zip(rows, pivots):
        sol[col] = -row[free]
    denom_lcm = 1
    for v in sol:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in sol]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    if ints[free] < 0:
        ints = [-v for v in ints]
    if any(v <= 0 for v in ints):
        raise ValueError("kernel generator not positive: %r" % (ints,))
    return tuple(ints)


@dataclass(frozen=True)
class FoldingDatum:
    """Parent affine Cartan datum plus its diagram automorphism and folded data.

    gcm rows are indexed by coroots and columns by simple roots, so
    gcm[j][k] is the pairing of alpha_k with h_j. Weight tuples follow the
    same node order. The folded (hat) side is indexed by orbit
    representatives, which always come out as 0..n here.
    """

    case: str
    n: int
    gcm: tuple
    omega: tuple
    order: int
    marks: tuple
    comarks: tuple
    reps: tuple
    c_vals: tuple
    hat_gcm: tuple
    hat_marks: tuple
    hat_comarks: tuple
    parent_name: str
    hat_name: str

    @property
    def size(self):
        return len(self.gcm)

    @property
    def nodes(self):
        return tuple(range(len(self.gcm)))

    @property
    def classical_nodes(self):
        return tuple(range(1, len(self.gcm)))

    @property
    def hat_classical_nodes(self):
        return tuple(range(1, len(self.reps)))

    def orbit(self, j):
        """The omega-orbit of node j, starting at j, in application order."""
        out = [j]
        k = self.omega[j]
        while k != j:
            out.append(k)
            k = self.omega[k]
        return tuple(out)

    def rep(self, j):
        return min(self.orbit(j))


def _parent_shape(case, n):
    if case == "a":
        if n < 2:
            raise ScopeError("case (a) needs n >= 2")
        size = 2 * n
        edges = [(k, (k + 1) % size) for k in range(size)]
        omega = tuple((-j) % size for j in range(size))
        return size, edges, omega, "A_%d^(1)" % (size - 1), "D_%d^(2)" % (n + 1)
    if case == "b":
        if n < 1:
            raise ScopeError("case (b) needs n >= 1")
        size = 2 * n + 1
        edges = [(k, (k + 1) % size) for k in range(size)]
        omega = tuple((-j) % size for j in range(size))
        return size, edges, omega, "A_%d^(1)" % (size - 1), "A_%d^(2)" % (2 * n)
    if case == "c":
        if n < 3:
            raise ScopeError("case (c) needs n >= 3")
        size = n + 2
        edges = [(0, 2), (1, 2)]
        edges += [(k, k + 1) for k in range(2, n - 1)]
        edges += [(n - 1, n), (n - 1, n + 1)]
        omega = list(range(size))
        omega[n], omega[n + 1] = n + 1, n
        return size, edges, tuple(omega), "D_%d^(1)" % (n + 1), "A_%d^(2)" % (2 * n - 1)
    if case == "d":
        if n != 3:
            raise ScopeError("case (d) is defined for n = 3 only")
        edges = [(0, 1), (1, 2), (1, 3), (1, 4)]
        omega = (0, 1, 3, 4, 2)
        return 5, edges, omega, "D_4^(1)", "D_4^(3)"
    if case == "e":
        raise ScopeError("case (e) out of scope")
    raise ScopeError("unknown case %r" % (case,))


@lru_cache(maxsize=None)
def make_datum(case, n=3):
    """Build the folding datum for one case.

    Everything derived (marks, comarks, orbit data, the folded matrix and
    its marks/comarks) is computed from first principles and validated;
    nothing is table-driven.
    """
    size, edges, omega, parent_name, hat_name = _parent_shape(case, n)
    gcm = _gcm_from_edges(size, edges)
    check_gcm(gcm)
    if omega[0] != 0:
        raise ValueError("automorphism must fix node 0")
    for j in range(size):
        for k in range(size):
            if gcm[omega[j]][omega[k]] != gcm[j][k]:
                raise ValueError("automorphism does not preserve the matrix")
    order = 1
    perm = omega
    ident = tuple(range(size))
    while perm != ident:
        perm = tuple(omega[p] for p in perm)
        order += 1
    marks = positive_primitive_kernel(gcm, "right")
    comarks = positive_primitive_kernel(gcm, "left")
    if comarks[0] != 1:
        raise ValueError("node 0 comark expected to be 1")

    datum = FoldingDatum(
        case=case, n=n, gcm=gcm, omega=omega, order=order,
        marks=marks, comarks=comarks,
        reps=(), c_vals=(), hat_gcm=(), hat_marks=(), hat_comarks=(),
        parent_name=parent_name, hat_name=hat_name,
    )
    # orbit representatives: minimum of each orbit, ascending
    reps = tuple(sorted({min(datum.orbit(j)) for j in range(size)}))
    if reps != tuple(range(len(reps))):
        raise ValueError("orbit representatives expected to be 0..%d" % (len(reps) - 1))

    def c_entry(i, j):
        return sum(gcm[i][k] for k in datum.orbit(j))

    c_vals = tuple(c_entry(j, j) for j in reps)
    for pos, j in enumerate(reps):
        if c_vals[pos] not in (1, 2):
            raise ValueError("c value out of range at node %d" % j)
    hat = []
    for i in reps:
        row = []
        for pos, j in enumerate(reps):
            num = 2 * c_entry(i, j)
            if num % c_vals[pos] != 0:
                raise ValueError("folded entry not integral at (%d,%d)" % (i, j))
            row.append(num // c_vals[pos])
        hat.append(tuple(row))
    hat_gcm = tuple(hat)
    check_gcm(hat_gcm)
    hat_marks = positive_primitive_kernel(hat_gcm, "right")
    hat_comarks = positive_primitive_kernel(hat_gcm, "left")
    if hat_comarks[0] != 1:
        raise ValueError("folded node 0 comark expected to be 1")
    return FoldingDatum(
        case=case, n=n, gcm=gcm, omega=omega, order=order,
        marks=marks, comarks=comarks,
        reps=reps, c_vals=c_vals, hat_gcm=hat_gcm,
        hat_marks=hat_marks, hat_comarks=hat_comarks,
        parent_name=parent_name, hat_name=hat_name,
    )


# ---------------------------------------------------------------------------
# weight arithmetic

def classical_alpha(gcm, j):
    """The classical image of the simple root alpha_j: column j of the matrix."""
    return tuple(row[j] for row in gcm)


def level(datum, mu):
    return sum(c * v for c, v in zip(datum.comarks, mu))


def hat_level(datum, mu_hat):
    return sum(c * v for c, v in zip(datum.hat_comarks, mu_hat))


def omega_star(datum, mu):
    """Pull a weight through the automorphism: coefficient j moves to omega(j)."""
    out = [0] * datum.size
    for j, v in enumerate(mu):
        out[datum.omega[j]] = v
    return tuple(out)


def p_omega_star(datum, mu_hat):
    """Embed an orbit-side weight: each hat fundamental maps to its orbit sum."""
    if len(mu_hat) != len(datum.reps):
        raise ValueError("expected %d coefficients" % len(datum.reps))
    return tuple(mu_hat[datum.rep(i)] for i in range(datum.size))


def p_omega_star_inverse(datum, mu):
    """Inverse embedding; rejects weights not constant on omega-orbits."""
    for j in datum.reps:
        orb = datum.orbit(j)
        vals = {mu[k] for k in orb}
        if len(vals) > 1:
            raise ValueError(
                "weight not omega*-fixed: coefficients differ on orbit %r" % (orb,))
    return tuple(mu[j] for j in datum.reps)


def pi_weight(datum, i):
    """Level-zero fundamental weight of the parent at node i (zero for i = 0)."""
    out = [0] * datum.size
    if i != 0:
        out[i] = 1
        out[0] = -datum.comarks[i]
    return tuple(out)


def pi_tilde_weight(datum, i):
    """Orbit sum of level-zero fundamentals; zero for i = 0."""
    out = [0] * datum.size
    if i != 0:
        for k in datum.orbit(i):
            out[k] += 1
            out[0] -= datum.comarks[k]
    return tuple(out)


def hat_pi_weight(datum, i):
    """Level-zero fundamental weight on the folded side (zero for i = 0)."""
    out = [0] * len(datum.reps)
    if i != 0:
        out[i] = 1
        out[0] = -datum.hat_comarks[i]
    return tuple(out)


def weyl_reflect(gcm, j, mu):
    """Simple reflection on a weight tuple: mu - mu[j] * alpha_j."""
    mj = mu[j]
    return tuple(v - mj * gcm[k][j] for k, v in enumerate(mu))


def weyl_apply(gcm, word, mu):
    """Apply simple reflections along the word, first entry first."""
    for j in word:
        mu = weyl_reflect(gcm, j, mu)
    return mu


def enumerate_dominant(comarks, lev):
    """All nonnegative coefficient tuples of the given level; finite since comarks > 0."""
    ranges = [range(lev // c + 1) for c in comarks]
    out = []
    for combo in product(*ranges):
        if sum(c * v for c, v in zip(comarks, combo)) == lev:
            out.append(combo)
    return out


def block(gcm, nodes):
    """Submatrix of the GCM on a subset of nodes, in the given order."""
    return tuple(tuple(gcm[i][j] for j in nodes) for i in nodes)


# ---------------------------------------------------------------------------
# words in the folded generators

def _expand_weyl(datum, jhat):
    if jhat not in datum.reps:
        raise ValueError("index %r is not an orbit representative" % (jhat,))
    orb = datum.orbit(jhat)
    if datum.c_vals[jhat] == 1:
        return (jhat, datum.omega[jhat], jhat)
    return orb


def theta_word(datum, word):
    """Expand a word in folded reflections into parent simple reflections."""
    out = []
    for jhat in word:
        out.extend(_expand_weyl(datum, jhat))
    return tuple(out)


def kashiwara_word(datum, jhat, m=1):
    """Parent-operator word realizing the m-th power of a folded operator.

    c = 2 orbits commute, so each orbit member appears m times; the c = 1
    orbit (case b, node n) needs the doubled middle block.
    """
    if jhat not in datum.reps:
        raise ValueError("index %r is not an orbit representative" % (jhat,))
    orb = datum.orbit(jhat)
    if datum.c_vals[jhat] == 1:
        j, wj = jhat, datum.omega[jhat]
        return (j,) * m + (wj,) * (2 * m) + (j,) * m
    out = []
    for j in orb:
        out.extend([j] * m)
    return tuple(out)


def datum_to_json(datum):
    return {
        "case": datum.case,
        "n": datum.n,
        "I": list(datum.nodes),
        "gcm": [list(row) for row in datum.gcm],
        "marks": list(datum.marks),
        "comarks": list(datum.comarks),
        "omega": list(datum.omega),
        "orbit": {
            "reps": list(datum.reps),
            "N": [len(datum.orbit(j)) for j in datum.reps],
            "c": list(datum.c_vals),
            "gcm_hat": [list(row) for row in datum.hat_gcm],
            "marks_hat": list(datum.hat_marks),
            "comarks_hat": list(datum.hat_comarks),
        },
        "parent_name": datum.parent_name,
        "hat_name": datum.hat_name,
    }
