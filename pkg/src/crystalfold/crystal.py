"""Finite crystal graphs and their verification machinery.

A crystal is stored as an explicit labeled digraph: canonical string ids,
integer weight tuples over the coroot pairings, and one lowering map per
color with -1 standing for theta. Everything else (raising maps, string
lengths, Weyl action, extremal elements, simplicity, perfectness) is
derived from the graph and re-verified rather than trusted.
"""

import json
from dataclasses import dataclass, field

from .cartan import classical_alpha, enumerate_dominant


class VerificationError(RuntimeError):
    """A structural property that should hold by construction failed."""


@dataclass
class Report:
    """Ordered pass/fail stages with witness details."""

    stages: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.stages.append((name, bool(ok), detail))
        return bool(ok)

    def run(self, name, fn):
        """Run fn, recording VerificationError as a failed stage."""
        try:
            fn()
            self.stages.append((name, True, ""))
            return True
        except VerificationError as exc:
            self.stages.append((name, False, str(exc)))
            return False

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.stages)

    def failures(self):
        return [(name, detail) for name, ok, detail in self.stages if not ok]

    def to_text(self):
        out = []
        for name, ok, detail in self.stages:
            line = "%-26s %s" % (name, "pass" if ok else "FAIL")
            if detail and not ok:
                line += "  [" + detail + "]"
            out.append(line)
        return "\n".join(out)


class Crystal:
    """A finite colored crystal graph.

    nodes: {id: (weight, payload)}; f_edges: {color: {src_id: dst_id}}.
    Ids are sorted lexicographically so all derived output is canonical.
    """

    def __init__(self, gcm, comarks, nodes, f_edges, factors=None):
        self.gcm = tuple(tuple(row) for row in gcm)
        self.comarks = tuple(comarks)
        self.ncolors = len(self.gcm)
        self.ids = tuple(sorted(nodes))
        self.index = {b: k for k, b in enumerate(self.ids)}
        self.weights = []
        self.payloads = []
        for b in self.ids:
            wt, payload = nodes[b]
            if len(wt) != self.ncolors:
                raise ValueError("weight length mismatch at %s" % b)
            self.weights.append(tuple(wt))
            self.payloads.append(payload)
        self.weights = tuple(self.weights)
        self.payloads = tuple(self.payloads)
        n = len(self.ids)
        self.f = []
        self.e = []
        for j in range(self.ncolors):
            arr = [-1] * n
            for src, dst in f_edges.get(j, {}).items():
                arr[self.index[src]] = self.index[dst]
            self.f.append(arr)
            inv = [-1] * n
            for src, dst in enumerate(arr):
                if dst != -1:
                    inv[dst] = src
            self.e.append(inv)
        # a tensor product remembers its leaf crystals in order
        self.factors = (self,) if factors is None else tuple(factors)
        self._eps = {}
        self._phi = {}

    def __len__(self):
        return len(self.ids)

    # -- basic maps ---------------------------------------------------------

    def weight(self, b):
        return self.weights[self.index[b]]

    def apply_f(self, j, b):
        t = self.f[j][self.index[b]]
        return None if t == -1 else self.ids[t]

    def apply_e(self, j, b):
        t = self.e[j][self.index[b]]
        return None if t == -1 else self.ids[t]

    def apply_word(self, word, b, lowering=True):
        """Apply an operator word, first letter first; None once it dies."""
        maps = self.f if lowering else self.e
        cur = self.index[b]
        for j in word:
            cur = maps[j][cur]
            if cur == -1:
                return None
        return self.ids[cur]

    def _walk_color(self, j):
        """String positions for one color; fails on collisions or cycles."""
        if j in self._eps:
            return
        n = len(self.ids)
        f, e = self.f[j], self.e[j]
        eps = [None] * n
        phi = [None] * n
        for i in range(n):
            if e[i] == -1:
                cur, d = i, 0
                if eps[cur] is not None:
                    raise VerificationError("color %d string collision at %s" % (j, self.ids[cur]))
                eps[cur] = 0
                while f[cur] != -1:
                    cur = f[cur]
                    d += 1
                    if eps[cur] is not None:
                        raise VerificationError("color %d string collision at %s" % (j, self.ids[cur]))
                    eps[cur] = d
        for i in range(n):
            if f[i] == -1:
                cur, d = i, 0
                phi[cur] = 0
                while e[cur] != -1:
                    cur = e[cur]
                    d += 1
                    phi[cur] = d
        for i in range(n):
            if eps[i] is None or phi[i] is None:
                raise VerificationError("color %d has a cyclic string through %s" % (j, self.ids[i]))
        self._eps[j] = eps
        self._phi[j] = phi

    def eps_idx(self, j, i):
        self._walk_color(j)
        return self._eps[j][i]

    def phi_idx(self, j, i):
        self._walk_color(j)
        return self._phi[j][i]

    def eps(self, j, b):
        return self.eps_idx(j, self.index[b])

    def phi(self, j, b):
        return self.phi_idx(j, self.index[b])

    def eps_tuple(self, b):
        i = self.index[b]
        return tuple(self.eps_idx(j, i) for j in range(self.ncolors))

    def phi_tuple(self, b):
        i = self.index[b]
        return tuple(self.phi_idx(j, i) for j in range(self.ncolors))

    # -- axioms -------------------------------------------------------------

    def verify_crystal_axioms(self, report=None):
        report = report if report is not None else Report()

        def pairing():
            for j in range(self.ncolors):
                seen = {}
                for src, dst in enumerate(self.f[j]):
                    if dst == -1:
                        continue
                    if dst in seen:
                        raise VerificationError(
                            "color %d: nodes %s and %s share f-target %s"
                            % (j, self.ids[seen[dst]], self.ids[src], self.ids[dst]))
                    seen[dst] = src
                for src, dst in enumerate(self.f[j]):
                    if dst != -1 and self.e[j][dst] != src:
                        raise VerificationError(
                            "color %d: raising map does not invert %s" % (j, self.ids[src]))

        def weight_step():
            for j in range(self.ncolors):
                alpha = classical_alpha(self.gcm, j)
                for src, dst in enumerate(self.f[j]):
                    if dst == -1:
                        continue
                    expect = tuple(w - a for w, a in zip(self.weights[src], alpha))
                    if self.weights[dst] != expect:
                        raise VerificationError(
                            "color %d: weight step fails at %s" % (j, self.ids[src]))

        def semiregular():
            for j in range(self.ncolors):
                for i in range(len(self.ids)):
                    if self.phi_idx(j, i) - self.eps_idx(j, i) != self.weights[i][j]:
                        raise VerificationError(
                            "color %d: phi - eps != weight at %s" % (j, self.ids[i]))

        report.run("axiom:pairing", pairing)
        report.run("axiom:weight-step", weight_step)
        report.run("axiom:semiregular", semiregular)
        return report

    # -- connectivity and decomposition -------------------------------------

    def components(self, colors=None):
        """Connected components under the given colors, as sorted id tuples."""
        colors = range(self.ncolors) if colors is None else tuple(colors)
        n = len(self.ids)
        comp = [-1] * n
        out = []
        for start in range(n):
            if comp[start] != -1:
                continue
            tag = len(out)
            stack = [start]
            comp[start] = tag
            members = [start]
            while stack:
                cur = stack.pop()
                for j in colors:
                    for nxt in (self.f[j][cur], self.e[j][cur]):
                        if nxt != -1 and comp[nxt] == -1:
                            comp[nxt] = tag
                            members.append(nxt)
                            stack.append(nxt)
            out.append(tuple(sorted(self.ids[i] for i in members)))
        return out

    def is_connected(self):
        return len(self.components()) <= 1

    def highest_weight_decomposition(self, colors):
        """Components under a proper color subset, each with its unique highest node.

        Returns a list of (highest_id, weight, component_ids). Zero or
        several highest nodes in one component is a hard error, since the
        crystals this runs on are supposed to be regular.
        """
        colors = tuple(colors)
        out = []
        for comp in self.components(colors):
            highs = [b for b in comp
                     if all(self.eps(j, b) == 0 for j in colors)]
            if len(highs) != 1:
                raise VerificationError(
                    "component of %s has %d highest nodes under colors %r"
                    % (comp[0], len(highs), colors))
            out.append((highs[0], self.weight(highs[0]), comp))
        out.sort(key=lambda item: item[0])
        return out

    # -- Weyl action --------------------------------------------------------

    def weyl_s_idx(self, j, i):
        m = self.weights[i][j]
        maps = self.f[j] if m >= 0 else self.e[j]
        for _ in range(abs(m)):
            i = maps[i]
            if i == -1:
                raise VerificationError("Weyl step fell off the graph (color %d)" % j)
        return i

    def weyl_s(self, j, b):
        return self.ids[self.weyl_s_idx(j, self.index[b])]

    def weyl_word(self, word, b):
        """Apply simple Weyl operators along the word, first letter first."""
        i = self.index[b]
        for j in word:
            i = self.weyl_s_idx(j, i)
        return self.ids[i]

    # -- extremal elements, simplicity, perfectness --------------------------

    def extremal_elements(self):
        """Nodes whose full orbit under the Weyl operators has, for every
        color, a vanishing string length on one side."""
        n = len(self.ids)
        ok_here = []
        for i in range(n):
            ok_here.append(all(
                self.eps_idx(j, i) == 0 or self.phi_idx(j, i) == 0
                for j in range(self.ncolors)))
        verdict = [None] * n
        for start in range(n):
            if verdict[start] is not None:
                continue
            orbit = [start]
            seen = {start}
            k = 0
            while k < len(orbit):
                cur = orbit[k]
                k += 1
                for j in range(self.ncolors):
                    t = self.weyl_s_idx(j, cur)
                    if t not in seen:
                        seen.add(t)
                        orbit.append(t)
            good = all(ok_here[i] for i in orbit)
            for i in orbit:
                verdict[i] = good
        return tuple(self.ids[i] for i in range(n) if verdict[i])

    def level_of(self, b):
        i = self.index[b]
        return sum(c * self.eps_idx(j, i) for j, c in enumerate(self.comarks))

    def is_simple(self, report=None):
        report = report if report is not None else Report()

        def s1():
            for i, wt in enumerate(self.weights):
                if sum(c * v for c, v in zip(self.comarks, wt)) != 0:
                    raise VerificationError("nonzero level weight at %s" % self.ids[i])

        extremal = []

        def s2():
            extremal.extend(self.extremal_elements())
            if not extremal:
                raise VerificationError("no extremal elements")
            seen = {extremal[0]}
            queue = [extremal[0]]
            while queue:
                cur = queue.pop()
                for j in range(self.ncolors):
                    t = self.weyl_s(j, cur)
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
            if seen != set(extremal):
                raise VerificationError(
                    "extremal set is %d nodes but one orbit has %d"
                    % (len(extremal), len(seen)))

        def s3():
            counts = {}
            for wt in self.weights:
                counts[wt] = counts.get(wt, 0) + 1
            for b in extremal:
                if counts[self.weight(b)] != 1:
                    raise VerificationError("extremal weight of %s has multiplicity > 1" % b)

        report.run("simple:S1", s1)
        report.run("simple:S2", s2)
        report.run("simple:S3", s3)
        return report

    def level_and_minimal(self):
        levels = [self.level_of(b) for b in self.ids]
        lev = min(levels)
        return lev, tuple(b for b, l in zip(self.ids, levels) if l == lev)

    def is_perfect(self, s, report=None):
        """Level check plus the two minimal-set bijections onto dominant weights."""
        report = report if report is not None else Report()
        lev, bmin = self.level_and_minimal()
        report.add("level", lev == s,
                   "" if lev == s else "computed level %d, expected %d" % (lev, s))
        targets = set(enumerate_dominant(self.comarks, s))

        def bijection(kind, table):
            image = {}
            for b in bmin:
                v = table(b)
                if v not in targets:
                    raise VerificationError("%s of %s leaves the dominant set" % (kind, b))
                if v in image:
                    raise VerificationError("%s collides on %s and %s" % (kind, image[v], b))
                image[v] = b
            if len(image) != len(targets):
                raise VerificationError(
                    "%s image covers %d of %d dominant weights"
                    % (kind, len(image), len(targets)))

        report.run("perfect:eps-bijection", lambda: bijection("eps", self.eps_tuple))
        report.run("perfect:phi-bijection", lambda: bijection("phi", self.phi_tuple))
        return report

    # -- export -------------------------------------------------------------

    def to_json(self, datum_ref=""):
        nodes = [{"id": b, "wt": list(self.weights[i]),
                  "payload": self.payloads[i] if isinstance(self.payloads[i], (str, int, type(None))) else str(self.payloads[i])}
                 for i, b in enumerate(self.ids)]
        edges = []
        for j in range(self.ncolors):
            for src, dst in enumerate(self.f[j]):
                if dst != -1:
                    edges.append({"src": self.ids[src], "dst": self.ids[dst], "j": j})
        edges.sort(key=lambda rec: (rec["src"], rec["j"]))
        return {"datum_ref": datum_ref, "nodes": nodes, "edges": edges}

    def to_dot(self, name="crystal"):
        lines = ["digraph \"%s\" {" % name, "  rankdir=TB;"]
        for b in self.ids:
            lines.append("  \"%s\" [label=\"%s\"];" % (b, b))
        for j in range(self.ncolors):
            for src, dst in enumerate(self.f[j]):
                if dst != -1:
                    lines.append("  \"%s\" -> \"%s\" [label=\"%d\"];"
                                 % (self.ids[src], self.ids[dst], j))
        lines.append("}")
        return "\n".join(lines) + "\n"


def tensor(left, right):
    """Tensor product crystal, left factor first.

    The lowering rule: f_j acts on the left factor when phi_j(left) is
    strictly larger than eps_j(right), otherwise on the right factor; the
    derived raising maps then act on the left exactly when phi_j(left) >=
    eps_j(right).
    """
    if left.gcm != right.gcm or left.comarks != right.comarks:
        raise ValueError("tensor factors live over different data")
    ncolors = left.ncolors
    nodes = {}
    f_edges = {j: {} for j in range(ncolors)}
    for ia, a in enumerate(left.ids):
        wa = left.weights[ia]
        for ib, b in enumerate(right.ids):
            bid = a + "*" + b
            nodes[bid] = (tuple(x + y for x, y in zip(wa, right.weights[ib])), None)
    for j in range(ncolors):
        fa, fb = left.f[j], right.f[j]
        for ia, a in enumerate(left.ids):
            pa = left.phi_idx(j, ia)
            for ib, b in enumerate(right.ids):
                if pa > right.eps_idx(j, ib):
                    ta = fa[ia]
                    if ta != -1:
                        f_edges[j][a + "*" + b] = left.ids[ta] + "*" + b
                else:
                    tb = fb[ib]
                    if tb != -1:
                        f_edges[j][a + "*" + b] = a + "*" + right.ids[tb]
    out = Crystal(left.gcm, left.comarks, nodes, f_edges,
                  factors=left.factors + right.factors)
    out.left = left
    out.right = right
    return out


def tensor_many(parts):
    """Left fold of the binary tensor."""
    cur = parts[0]
    for nxt in parts[1:]:
        cur = tensor(cur, nxt)
    return cur


def graphs_equal(x, y):
    """Exact equality of node ids, weights, and all labeled edges."""
    if x.ids != y.ids or x.weights != y.weights or x.ncolors != y.ncolors:
        return False
    return all(x.f[j] == y.f[j] for j in range(x.ncolors))


def propagate_map(src, dst, anchors, relabel=None, colors=None, domain=None,
                  weight_map=None, queue_reversed=False):
    """Extend an anchor assignment to a color-respecting isomorphism.

    Walks lowering and raising edges outward from the anchors, with source
    color j matched to destination color relabel[j]. A conflicting image, a
    string that dies on one side only, or (when domain is given) an
    unreached domain node raises VerificationError. Afterwards every edge
    between mapped nodes is re-checked under the finished map, along with
    injectivity and, when weight_map is given, the weight rule.
    """
    colors = tuple(range(src.ncolors)) if colors is None else tuple(colors)
    relabel = {j: j for j in colors} if relabel is None else dict(relabel)
    out = dict(anchors)
    queue = list(anchors)
    while queue:
        x = queue.pop(0) if queue_reversed else queue.pop()
        y = out[x]
        for j in colors:
            jd = relabel[j]
            for nx, ny in ((src.apply_f(j, x), dst.apply_f(jd, y)),
                           (src.apply_e(j, x), dst.apply_e(jd, y))):
                if nx is None and ny is None:
                    continue
                if nx is None or ny is None:
                    raise VerificationError(
                        "string mismatch at %s under color %d" % (x, j))
                if nx in out:
                    if out[nx] != ny:
                        raise VerificationError("conflicting images for %s" % nx)
                else:
                    out[nx] = ny
                    queue.append(nx)
    if domain is not None:
        missing = [b for b in domain if b not in out]
        if missing:
            raise VerificationError(
                "propagation missed %d nodes, first %s" % (len(missing), missing[0]))
    hit = {}
    for x, y in sorted(out.items()):
        if y in hit:
            raise VerificationError("map sends %s and %s to %s" % (hit[y], x, y))
        hit[y] = x
        for j in colors:
            fx, fy = src.apply_f(j, x), dst.apply_f(relabel[j], y)
            if fx is None and fy is None:
                continue
            if fx is None or fy is None or out.get(fx) != fy:
                raise VerificationError(
                    "edge re-check failed at %s under color %d" % (x, j))
        if weight_map is not None:
            if tuple(weight_map(src.weight(x))) != dst.weight(y):
                raise VerificationError("weight rule fails at %s" % x)
    return out
