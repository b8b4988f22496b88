"""Folding: the crystal living on twist-fixed nodes, and its verification.

The folded graph keeps exactly the nodes the twist fixes. Each folded
color acts through a fixed word of parent operators; a word that ends
anywhere outside the fixed set, or that its raising partner fails to
undo, is a hard error rather than a skipped edge. Weights fold through
the orbit-constant check, so a node whose parent weight is not constant
on orbits cannot enter the folded crystal silently.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .cartan import (
    block, hat_level, kashiwara_word, p_omega_star, p_omega_star_inverse,
    theta_word)
from .crystal import Crystal, Report, VerificationError, propagate_map, tensor
from .intertwine import build_tilde_crystal, energy_on_tensor
from .monomial import weight_multiset


def fold_crystal(datum, crystal, omega_map):
    """Fixed-node crystal over the folded data; hard-fails on instability."""
    fixed = [b for b in crystal.ids if omega_map[b] == b]
    if not fixed:
        raise VerificationError("the twist fixes no nodes")
    fixedset = set(fixed)
    ncolors_hat = len(datum.hat_gcm)
    nodes = {}
    for b in fixed:
        try:
            wt_hat = p_omega_star_inverse(datum, crystal.weight(b))
        except ValueError as exc:
            raise VerificationError("fixed node %s: %s" % (b, exc))
        nodes[b] = (wt_hat, None)
    f_edges = {jh: {} for jh in range(ncolors_hat)}
    for b in fixed:
        for jh in range(ncolors_hat):
            word = kashiwara_word(datum, jh)
            down = crystal.apply_word(word, b, lowering=True)
            if down is None:
                continue
            if down not in fixedset:
                raise VerificationError(
                    "lowering word for folded color %d leaves the fixed set at %s"
                    % (jh, b))
            back = crystal.apply_word(tuple(reversed(word)), down, lowering=False)
            if back != b:
                raise VerificationError(
                    "raising word fails to undo folded color %d at %s" % (jh, b))
            f_edges[jh][b] = down
    return Crystal(datum.hat_gcm, datum.hat_comarks, nodes, f_edges)


@dataclass
class HatBundle:
    datum: object
    i: int
    s: int
    tilde: object
    crystal: object


@lru_cache(maxsize=None)
def build_hat_crystal(datum, i, s):
    tilde = build_tilde_crystal(datum, i, s)
    hat = fold_crystal(datum, tilde.crystal, tilde.omega_map)
    return HatBundle(datum=datum, i=i, s=s, tilde=tilde, crystal=hat)


# -- the headline verification ----------------------------------------------

def _regularity_stages(report, datum, hat, full):
    rank = len(datum.hat_gcm)
    subsets = []
    for size in range(1, rank):
        if not full and size > 2:
            break
        subsets.extend(itertools.combinations(range(rank), size))
    for sub in subsets:
        name = "regular:" + "".join(str(j) for j in sub)

        def stage(sub=sub):
            blockg = block(datum.hat_gcm, sub)
            for top, wt, comp in hat.highest_weight_decomposition(sub):
                lam = tuple(wt[j] for j in sub)
                expect = weight_multiset(blockg, lam)
                got = tuple(sorted(tuple(hat.weight(b)[j] for j in sub)
                                   for b in comp))
                if got != expect:
                    raise VerificationError(
                        "restricted component at %s is not a highest weight crystal" % top)

        report.run(name, stage)


def verify_main_theorem(datum, i, s, full_regularity=False):
    """Axioms, connectedness, regularity, simplicity, level, perfectness.

    The folded crystal must be a simple crystal that is perfect of level
    equal to the width; every stage reports independently.
    """
    bundle = build_hat_crystal(datum, i, s)
    hat = bundle.crystal
    report = Report()
    hat.verify_crystal_axioms(report)
    report.add("connected", hat.is_connected(),
               "" if hat.is_connected() else "folded graph splits")
    _regularity_stages(report, datum, hat, full_regularity)
    hat.is_simple(report)
    hat.is_perfect(s, report)
    return report


# -- string statistics against the parent -----------------------------------

def check_string_identities(datum, i, s):
    """Folded string data read off the parent in four independent ways."""
    bundle = build_hat_crystal(datum, i, s)
    hat = bundle.crystal
    parent = bundle.tilde.crystal
    report = Report()

    def eps_orbit():
        for b in hat.ids:
            if p_omega_star(datum, hat.eps_tuple(b)) != parent.eps_tuple(b):
                raise VerificationError("eps tuples disagree at %s" % b)
            if p_omega_star(datum, hat.phi_tuple(b)) != parent.phi_tuple(b):
                raise VerificationError("phi tuples disagree at %s" % b)

    def powered_words():
        for b in hat.ids:
            for jh in range(hat.ncolors):
                top = hat.phi(jh, b)
                cur = b
                for m in range(1, top + 2):
                    cur = hat.apply_f(jh, cur) if cur is not None else None
                    via_word = parent.apply_word(
                        kashiwara_word(datum, jh, m), b, lowering=True)
                    if via_word != cur:
                        raise VerificationError(
                            "lowering power %d disagrees at %s color %d" % (m, b, jh))
                top = hat.eps(jh, b)
                cur = b
                for m in range(1, top + 2):
                    cur = hat.apply_e(jh, cur) if cur is not None else None
                    via_word = parent.apply_word(
                        tuple(reversed(kashiwara_word(datum, jh, m))), b, lowering=False)
                    if via_word != cur:
                        raise VerificationError(
                            "raising power %d disagrees at %s color %d" % (m, b, jh))

    def weyl_match():
        for b in hat.ids:
            for jh in range(hat.ncolors):
                lhs = hat.weyl_s(jh, b)
                rhs = parent.weyl_word(theta_word(datum, (jh,)), b)
                if lhs != rhs:
                    raise VerificationError(
                        "folded Weyl operator %d differs at %s" % (jh, b))

    def level_zero():
        for b in hat.ids:
            if hat_level(datum, hat.weight(b)) != 0:
                raise VerificationError("folded weight off level zero at %s" % b)

    report.run("strings:eps-orbit", eps_orbit)
    report.run("strings:powered-words", powered_words)
    report.run("strings:weyl", weyl_match)
    report.run("strings:level-zero", level_zero)
    return report


# -- tensor compatibility, exchange, energy ---------------------------------

def _split_at(bid, cut):
    parts = bid.split("*")
    return "*".join(parts[:cut]), "*".join(parts[cut:])


def verify_tensor_compatibility(datum, spec1, spec2):
    """The folded tensor equals the fold of the tensor, edge for edge.

    Also drags the pair exchange and the energy down to the folded side:
    the exchange must keep fixed nodes fixed and commute with every folded
    edge, and the energy inherited through the identification must satisfy
    the folded difference relations across all affine edges.
    """
    h1 = build_hat_crystal(datum, *spec1)
    h2 = build_hat_crystal(datum, *spec2)
    t1, t2 = h1.tilde, h2.tilde
    cut = len(t1.crystal.factors)
    parent_pair = tensor(t1.crystal, t2.crystal)
    omega_pair = {}
    for bid in parent_pair.ids:
        a, b = _split_at(bid, cut)
        omega_pair[bid] = t1.omega_map[a] + "*" + t2.omega_map[b]
    folded = fold_crystal(datum, parent_pair, omega_pair)
    lhs = tensor(h1.crystal, h2.crystal)
    report = Report()

    report.add("iso:size", lhs.ids == folded.ids,
               "%d vs %d fixed pairs" % (len(lhs), len(folded)))

    def edges():
        for jh in range(lhs.ncolors):
            if lhs.f[jh] != folded.f[jh]:
                for src, dst in enumerate(lhs.f[jh]):
                    if folded.f[jh][src] != dst:
                        raise VerificationError(
                            "edge sets differ at %s color %d" % (lhs.ids[src], jh))

    def eps_match():
        for b in lhs.ids:
            if lhs.eps_tuple(b) != folded.eps_tuple(b):
                raise VerificationError("eps differs at %s" % b)

    report.run("iso:edges", edges)
    report.run("iso:eps", eps_match)

    # exchange on the parent pair, restricted to fixed nodes
    flip_pair = tensor(t2.crystal, t1.crystal)
    anchor = t1.tilde_highest + "*" + t2.tilde_highest
    flipped_anchor = t2.tilde_highest + "*" + t1.tilde_highest
    exchange = propagate_map(parent_pair, flip_pair, {anchor: flipped_anchor},
                             domain=parent_pair.ids)
    flip_omega = {}
    for bid in flip_pair.ids:
        a, b = _split_at(bid, len(t2.crystal.factors))
        flip_omega[bid] = t2.omega_map[a] + "*" + t1.omega_map[b]

    def fixed_closed():
        for bid in folded.ids:
            image = exchange[bid]
            if flip_omega[image] != image:
                raise VerificationError("exchange moves %s off the fixed set" % bid)

    report.run("rhat:fixed", fixed_closed)
    report.add("rhat:anchor", exchange[anchor] == flipped_anchor, "anchor moved")

    def rhat_edges():
        flip_folded = fold_crystal(datum, flip_pair, flip_omega)
        for bid in folded.ids:
            for jh in range(folded.ncolors):
                down = folded.apply_f(jh, bid)
                image_down = flip_folded.apply_f(jh, exchange[bid])
                if (down is None) != (image_down is None):
                    raise VerificationError(
                        "folded exchange breaks a string at %s color %d" % (bid, jh))
                if down is not None and exchange[down] != image_down:
                    raise VerificationError(
                        "folded exchange misroutes color %d at %s" % (jh, bid))

    report.run("rhat:edges", rhat_edges)

    energy = energy_on_tensor(parent_pair, anchor)

    def folded_energy():
        for bid in folded.ids:
            a, b = _split_at(bid, cut)
            phi0 = h1.crystal.phi(0, a)
            eps0 = h2.crystal.eps(0, b)
            down = folded.apply_f(0, bid)
            if down is not None:
                want = -1 if phi0 > eps0 else 1
                if energy[down] - energy[bid] != want:
                    raise VerificationError(
                        "lowering energy relation fails at %s" % bid)
            up = folded.apply_e(0, bid)
            if up is not None:
                want = 1 if phi0 >= eps0 else -1
                if energy[up] - energy[bid] != want:
                    raise VerificationError(
                        "raising energy relation fails at %s" % bid)
            for jh in range(1, folded.ncolors):
                down = folded.apply_f(jh, bid)
                if down is not None and energy[down] != energy[bid]:
                    raise VerificationError(
                        "energy moves along folded color %d at %s" % (jh, bid))

    report.run("energy:zero-edges", folded_energy)
    return report
