"""Command line front end: build, verify, branch, rmatrix, energy."""

import contextlib
import json
import sys

import click

from .branching import branch_hat, expected_branching, verify_branching
from .cartan import ScopeError, make_datum
from .crystal import Crystal, Report, VerificationError, tensor
from .fixedpoint import (build_hat_crystal, check_string_identities,
                         verify_main_theorem)
from .intertwine import build_tilde_crystal, compute_r_matrix, energy_on_tensor
from .models import classical_highest_node, kr_crystal

# every instance the verification suite is expected to cover
SCOPE_INSTANCES = (
    [("a", 2, i, s) for i in (1, 2) for s in (1, 2)]
    + [("a", 3, i, s) for i in (1, 2, 3) for s in (1, 2)]
    + [("b", 1, 1, s) for s in (1, 2)]
    + [("b", 2, i, s) for i in (1, 2) for s in (1, 2)]
    + [("c", 3, 1, 1), ("c", 3, 1, 2), ("c", 3, 3, 1)]
    + [("d", 3, 1, 1), ("d", 3, 1, 2), ("d", 3, 2, 1)])


@contextlib.contextmanager
def _boundary():
    try:
        yield
    except ScopeError as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    except (VerificationError, ValueError) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(1)


def _emit(payload, out):
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        click.echo(payload, nl=False)


def _instance_options(fn):
    for opt in (
            click.option("--s", "s", type=int, default=1, show_default=True),
            click.option("--i", "i", type=int, default=1, show_default=True),
            click.option("--n", "n", type=int, default=3, show_default=True),
            click.option("--case", "case_", default=None,
                         type=click.Choice(["a", "b", "c", "d", "e"]))):
        fn = opt(fn)
    return fn


def _require_case(case_):
    # not enforced by click: --all-scope sweeps run without an instance
    if case_ is None:
        raise ScopeError("--case is required")


@click.group()
def main():
    """Exact combinatorics for folded affine crystal graphs."""


@main.command()
@_instance_options
@click.option("--target", type=click.Choice(["kr", "tilde", "hat"]),
              default="hat", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "text"]),
              default="text", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def build(case_, n, i, s, target, fmt, out):
    """Construct one crystal graph and print or save it."""
    with _boundary():
        _require_case(case_)
        datum = make_datum(case_, n)
        if target == "kr":
            crys = kr_crystal(datum, i, s)
        elif target == "tilde":
            crys = build_tilde_crystal(datum, i, s).crystal
        else:
            crys = build_hat_crystal(datum, i, s).crystal
        ref = "%s:n=%d:i=%d:s=%d:%s" % (case_, n, i, s, target)
        if fmt == "json":
            payload = json.dumps(crys.to_json(datum_ref=ref),
                                 sort_keys=True, indent=2) + "\n"
        elif fmt == "dot":
            payload = crys.to_dot(ref)
        else:
            lines = ["%s nodes=%d" % (ref, len(crys))]
            for b in crys.ids:
                lines.append("%s wt=%s" % (b, ",".join(map(str, crys.weight(b)))))
            for j in range(crys.ncolors):
                for idx, t in enumerate(crys.f[j]):
                    if t != -1:
                        lines.append("f%d %s -> %s" % (j, crys.ids[idx], crys.ids[t]))
            payload = "\n".join(lines) + "\n"
        _emit(payload, out)


def _faulted_report(datum, i, s):
    """Rebuild the folded crystal with one duplicated lowering target."""
    crys = build_hat_crystal(datum, i, s).crystal
    nodes = {b: (crys.weight(b), None) for b in crys.ids}
    f_edges = {}
    for j in range(crys.ncolors):
        f_edges[j] = {crys.ids[a]: crys.ids[t]
                      for a, t in enumerate(crys.f[j]) if t != -1}
    done = False
    for j in range(crys.ncolors):
        items = sorted(f_edges[j].items())
        for (s1, t1) in items:
            for (_, t2) in items:
                if t1 != t2:
                    f_edges[j][s1] = t2
                    done = True
                    break
            if done:
                break
        if done:
            break
    if not done:
        raise VerificationError("graph too small to corrupt")
    bad = Crystal(crys.gcm, crys.comarks, nodes, f_edges)
    report = Report()
    bad.verify_crystal_axioms(report)
    return report


@main.command()
@_instance_options
@click.option("--full-regularity", is_flag=True)
@click.option("--all-scope", is_flag=True)
@click.option("--inject-fault", is_flag=True, hidden=True)
def verify(case_, n, i, s, full_regularity, all_scope, inject_fault):
    """Run the full verification stack on one instance or the whole scope."""
    with _boundary():
        if all_scope:
            ok_all = True
            rows = []
            for c_, n_, i_, s_ in SCOPE_INSTANCES:
                d_ = make_datum(c_, n_)
                rep = verify_main_theorem(d_, i_, s_,
                                          full_regularity=full_regularity)
                strings = check_string_identities(d_, i_, s_)
                ok = rep.ok and strings.ok
                ok_all = ok_all and ok
                rows.append("case %s n=%d i=%d s=%d %s"
                            % (c_, n_, i_, s_, "pass" if ok else "FAIL"))
            click.echo("\n".join(rows))
            sys.exit(0 if ok_all else 1)
        _require_case(case_)
        datum = make_datum(case_, n)
        if inject_fault:
            report = _faulted_report(datum, i, s)
            click.echo(report.to_text())
            sys.exit(0 if report.ok else 1)
        report = verify_main_theorem(datum, i, s, full_regularity=full_regularity)
        strings = check_string_identities(datum, i, s)
        click.echo(report.to_text())
        click.echo(strings.to_text())
        sys.exit(0 if report.ok and strings.ok else 1)


@main.command()
@_instance_options
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
@click.option("--all-scope", is_flag=True)
@click.option("--out", type=click.Path(), default=None)
def branch(case_, n, i, s, fmt, all_scope, out):
    """Decompose the folded crystal and compare with the closed formula."""
    with _boundary():
        if all_scope:
            ok_all = True
            rows = []
            for c_, n_, i_, s_ in SCOPE_INSTANCES:
                rep = verify_branching(make_datum(c_, n_), i_, s_)
                ok_all = ok_all and rep.ok
                rows.append("case %s n=%d i=%d s=%d %s"
                            % (c_, n_, i_, s_, "pass" if rep.ok else "FAIL"))
            click.echo("\n".join(rows))
            sys.exit(0 if ok_all else 1)
        _require_case(case_)
        datum = make_datum(case_, n)
        got = branch_hat(datum, i, s)
        note = ""
        match = True
        try:
            match = got.multiset() == expected_branching(datum, i, s).multiset()
        except ScopeError as exc:
            note = str(exc)
        card = "cardinality: sum of mult*dim = %d = size" % got.total
        if fmt == "json":
            doc = got.to_json()
            doc["cardinality_ok"] = True
            doc["matches_formula"] = None if note else match
            if note:
                doc["note"] = note
            payload = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        else:
            payload = got.to_text() + "\n" + card + "\n"
            if note:
                payload += "note: %s\n" % note
            elif not match:
                payload += "MISMATCH with the closed formula\n"
        _emit(payload, out)
        sys.exit(0 if match else 1)


@main.command()
@_instance_options
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def rmatrix(case_, n, i, s, fmt, out):
    """Exchange map between column i and its twist image, as a pair table."""
    with _boundary():
        _require_case(case_)
        datum = make_datum(case_, n)
        mapping = compute_r_matrix(datum, (i, s), (datum.omega[i], s))
        if fmt == "json":
            payload = json.dumps({"map": mapping}, sort_keys=True, indent=2) + "\n"
        else:
            lines = ["%s -> %s" % (x, mapping[x]) for x in sorted(mapping)]
            payload = "\n".join(lines) + "\n"
        _emit(payload, out)


@main.command()
@_instance_options
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def energy(case_, n, i, s, fmt, out):
    """Energy table on the self tensor square of one column crystal."""
    with _boundary():
        _require_case(case_)
        datum = make_datum(case_, n)
        crys = kr_crystal(datum, i, s)
        top = classical_highest_node(datum, crys, i, s)
        prod = tensor(crys, crys)
        table = energy_on_tensor(prod, top + "*" + top)
        if fmt == "json":
            payload = json.dumps({"H": table}, sort_keys=True, indent=2) + "\n"
        else:
            lines = ["H %s %d" % (b, table[b]) for b in sorted(table)]
            payload = "\n".join(lines) + "\n"
        _emit(payload, out)


if __name__ == "__main__":
    main()
