"""Restriction of folded crystals to their classical subalgebra.

A folded crystal decomposes under the node-0-deleted index set into
highest weight components. This module extracts that decomposition two
independent ways, compares it with the closed product formulas where one
exists, and cross-checks cardinalities against Weyl dimensions.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import ScopeError, block, omega_star
from .crystal import Report, VerificationError
from .fixedpoint import build_hat_crystal
from .intertwine import build_tilde_crystal
from .monomial import highest_weight_crystal


@dataclass(frozen=True)
class BranchingResult:
    """Sorted (coefficients, multiplicity, dimension) triples plus the total.

    Coefficients are taken over the folded classical nodes in index order.
    """

    components: tuple
    total: int

    def multiset(self):
        return {coeffs: mult for coeffs, mult, _ in self.components}

    def to_json(self):
        return {
            "components": [
                {"weight": list(coeffs), "mult": mult, "dim": dim}
                for coeffs, mult, dim in self.components],
            "total": self.total,
        }

    def to_text(self):
        lines = ["%-20s %5s %7s" % ("weight", "mult", "dim")]
        for coeffs, mult, dim in self.components:
            lines.append("%-20s %5d %7d" % (",".join(map(str, coeffs)), mult, dim))
        lines.append("total %d" % self.total)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Weyl dimensions

def _symmetrizer(gcm):
    # d[i] * gcm[i][j] == d[j] * gcm[j][i]; any positive scaling works
    rank = len(gcm)
    d = [None] * rank
    for seed in range(rank):
        if d[seed] is not None:
            continue
        d[seed] = Fraction(1)
        stack = [seed]
        while stack:
            i = stack.pop()
            for j in range(rank):
                if gcm[i][j] and d[j] is None:
                    d[j] = d[i] * Fraction(gcm[i][j], gcm[j][i])
                    stack.append(j)
    for i in range(rank):
        for j in range(rank):
            if d[i] * gcm[i][j] != d[j] * gcm[j][i]:
                raise VerificationError("matrix is not symmetrizable")
    return d


def _positive_roots(gcm):
    """Positive roots in simple-root coordinates, by reflection closure."""
    rank = len(gcm)
    simple = [tuple(int(k == j) for k in range(rank)) for j in range(rank)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(rank):
                pairing = sum(gcm[i][j] * c[j] for j in range(rank))
                img = list(c)
                img[i] -= pairing
                img = tuple(img)
                if min(img) >= 0 and any(img) and img not in roots:
                    roots.add(img)
                    nxt.append(img)
                    if len(roots) > 10000:
                        raise VerificationError(
                            "root system does not close up; matrix is not finite type")
        frontier = nxt
    return sorted(roots)


def _weyl_product(gcm, lam):
    d = _symmetrizer(gcm)
    num = den = Fraction(1)
    for root in _positive_roots(gcm):
        num *= sum(Fraction(c) * dj * (lj + 1) for c, dj, lj in zip(root, d, lam))
        den *= sum(Fraction(c) * dj for c, dj in zip(root, d))
    dim = num / den
    if dim.denominator != 1 or dim <= 0:
        raise VerificationError("dimension product is not a positive integer")
    return int(dim)


def weyl_dimension(datum, coeffs, closed_form=False):
    """Dimension of the folded classical irreducible with the given highest weight.

    Counted by building the highest weight crystal, or via the character
    product formula when closed_form is set.
    """
    if len(coeffs) != len(datum.hat_classical_nodes):
        raise ValueError("expected %d coefficients" % len(datum.hat_classical_nodes))
    if min(coeffs, default=0) < 0:
        raise ValueError("weight is not dominant: %r" % (coeffs,))
    bgcm = block(datum.hat_gcm, datum.hat_classical_nodes)
    if closed_form:
        return _weyl_product(bgcm, coeffs)
    return len(highest_weight_crystal(bgcm, tuple(coeffs)))


# ---------------------------------------------------------------------------
# computed decomposition

@lru_cache(maxsize=None)
def branch_hat(datum, i, s):
    """Decompose the folded crystal over its classical nodes.

    The highest nodes are computed twice: nodes killed by every folded
    raising operator, and omega-fixed classically-highest nodes of the
    intertwined product upstairs. Any disagreement is a hard failure.
    """
    hat = build_hat_crystal(datum, i, s)
    tilde = hat.tilde
    jset = datum.hat_classical_nodes
    route1 = sorted(
        b for b in hat.crystal.ids
        if all(hat.crystal.apply_e(j, b) is None for j in jset))
    route2 = sorted(
        b for b in tilde.crystal.ids
        if tilde.omega(b) == b
        and all(tilde.crystal.apply_e(j, b) is None for j in datum.classical_nodes))
    if route1 != route2:
        raise VerificationError(
            "highest weight characterizations disagree: %d folded-highest vs "
            "%d fixed classically-highest" % (len(route1), len(route2)))

    decomp = hat.crystal.highest_weight_decomposition(jset)
    if sorted(b for b, _, _ in decomp) != route1:
        raise VerificationError("component heads differ from the raising kernel")
    counts = Counter()
    sizes = {}
    for b, wt, comp in decomp:
        coeffs = tuple(wt[j] for j in jset)
        counts[coeffs] += 1
        sizes.setdefault(coeffs, set()).add(len(comp))
    components = []
    for coeffs in sorted(counts):
        dim = weyl_dimension(datum, coeffs)
        if sizes[coeffs] != {dim}:
            raise VerificationError(
                "component of weight %r has size %r, dimension oracle says %d"
                % (coeffs, sorted(sizes[coeffs]), dim))
        components.append((coeffs, counts[coeffs], dim))
    total = len(hat.crystal)
    if sum(m * d for _, m, d in components) != total:
        raise VerificationError("component dimensions do not add up to the size")
    return BranchingResult(components=tuple(components), total=total)


# ---------------------------------------------------------------------------
# closed formulas

# support pattern and constraint kind per case; entries for case "e" are
# data only (no parent datum is constructible in scope, so they are
# deliberately unexercised)
def _branch_support(case, n, i):
    """Which fundamental coefficients may be nonzero, and whether their sum
    must equal the width exactly (True) or only be bounded by it (False)."""
    if case == "a":
        if i < n:
            return tuple(range(1, i + 1)), False
        return (n,), True
    if case == "b":
        return tuple(range(1, i + 1)), False
    if case == "c":
        if i % 2:
            return tuple(range(1, i + 1, 2)), True
        return tuple(range(2, i + 1, 2)), False
    if case == "d":
        if i == 1:
            return (1,), False
        raise ScopeError("no closed formula in scope")
    if case == "e":
        table = {1: ((1,), False), 4: ((1, 4), False)}
        if i in table:
            return table[i]
        raise ScopeError("no closed formula in scope")
    raise ScopeError("no formula table for case %r" % case)


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def expected_branching(datum, i, s):
    """The closed-form decomposition, or ScopeError where none exists."""
    support, exact = _branch_support(datum.case, datum.n, i)
    jset = datum.hat_classical_nodes
    weights = []
    totals = range(s, s + 1) if exact else range(s + 1)
    for tot in totals:
        for combo in _compositions(tot, len(support)):
            coeffs = [0] * len(jset)
            for pos, val in zip(support, combo):
                coeffs[jset.index(pos)] = val
            weights.append(tuple(coeffs))
    weights = sorted(set(weights))
    components = tuple(
        (coeffs, 1, weyl_dimension(datum, coeffs)) for coeffs in weights)
    return BranchingResult(
        components=components,
        total=sum(d for _, _, d in components))


def multiplicity_free_gate(datum, i, s):
    """Whether the classical decomposition upstairs is multiplicity-free.

    When it is, the fixed highest nodes must coincide with the highest
    nodes whose weight the automorphism fixes; that consequence is
    verified here and any mismatch is a hard failure.
    """
    tilde = build_tilde_crystal(datum, i, s)
    decomp = tilde.crystal.highest_weight_decomposition(datum.classical_nodes)
    mults = Counter(wt for _, wt, _ in decomp)
    gate = all(v == 1 for v in mults.values())
    if gate:
        node_fixed = {b for b, _, _ in decomp if tilde.omega(b) == b}
        weight_fixed = {b for b, wt, _ in decomp
                        if omega_star(datum, wt) == wt}
        if node_fixed != weight_fixed:
            raise VerificationError(
                "fixed-weight characterization fails: %d node-fixed vs "
                "%d weight-fixed heads" % (len(node_fixed), len(weight_fixed)))
    return gate


def verify_branching(datum, i, s, closed_form_dims=False):
    """Full branching report for one instance."""
    report = Report()
    state = {}

    def compute():
        state["got"] = branch_hat(datum, i, s)
    report.run("branch:dual-route", compute)
    if "got" not in state:
        return report
    got = state["got"]

    try:
        gate = multiplicity_free_gate(datum, i, s)
        report.add("branch:weight-fixed", True,
                   "" if gate else "not multiplicity-free upstairs; check skipped")
    except VerificationError as exc:
        report.add("branch:weight-fixed", False, str(exc))

    try:
        want = expected_branching(datum, i, s)
        report.add("branch:expected", got.multiset() == want.multiset(),
                   "computed %r vs formula %r" % (got.multiset(), want.multiset())
                   if got.multiset() != want.multiset() else "")
    except ScopeError as exc:
        report.add("branch:expected", True, str(exc))

    report.add("branch:cardinality",
               sum(m * d for _, m, d in got.components) == got.total,
               "total %d" % got.total)
    if closed_form_dims:
        bad = [coeffs for coeffs, _, dim in got.components
               if weyl_dimension(datum, coeffs, closed_form=True) != dim]
        report.add("branch:dims-closed-form", not bad,
                   "mismatch at %r" % bad if bad else "")
    return report
