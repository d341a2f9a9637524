"""
Command line interface to the hdmock library.

Every command prints one JSON object {"command", "params", "result",
"version"} on stdout (or a plain table with --table); `gr dims` prints a
CSV table under a '# {json}' metadata line.  Exit status: 0 success,
1 domain error, 2 usage error.
"""

import argparse
import json
import sys

from . import __version__
from .analytic import (
    e2_completion_residual, eichler_star, eval_series, modular_residual,
    period_polynomial, period_rank_in_h1, prec_for, star_cocycle_fit, dbar_residual,
)
from .bol import ConsistencyError, bol_equivariance_report, bol_operator, bol_quotient_dim
from .cohomology import GammaMatrix, RepElement, h0_dim, h1_dim, quotient_invariants_dim, slash_rep
from .graded import GrAlgebra, Variant, gr_table, h1_mult
from .modforms import basis_space, dim_M, dim_S, eisenstein, named_form
from .series import QSeries, as_fraction, format_rational


class DomainError(Exception):
    pass


def _int_list(s):
    s = s.strip()
    return [int(x) for x in s.split(",")] if s else []


def _tau(s):
    x, y = (float(v) for v in s.split(","))
    return complex(x, y)


def _complex_out(z):
    return [float(z.real), float(z.imag)]


def _read_series(stream):
    try:
        return QSeries.from_dict(json.load(stream))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise DomainError("could not parse QSeries JSON from stdin: %s" % e)


def _form(args, prec, stdin):
    if args.form == "-":
        return _read_series(stdin)
    return named_form(args.form, prec)


def _analytic_prec(args, *taus):
    if args.prec is not None:
        return args.prec
    return max(60, prec_for(*taus))


def _cusp_form_at(weight, index, prec):
    """Cusp basis element of the given weight, truncated to prec when longer."""
    sp = basis_space(weight, 0, max(prec, weight // 12 + 12))
    forms = [f for f in sp.basis if f.order() >= 1]
    if not forms:
        raise DomainError("no cusp forms of weight %d" % weight)
    if not 0 <= index < len(forms):
        raise DomainError("cusp form index %d out of range (dim S_%d = %d)" % (index, weight, len(forms)))
    f = forms[index]
    return f.truncate(prec) if f.prec > prec else f


# -- command implementations -------------------------------------------

def cmd_qexp(args, stdin):
    if args.name == "eisenstein":
        if args.k is None:
            raise DomainError("qexp eisenstein needs --k")
        f = eisenstein(args.k, args.prec)
    else:
        f = named_form(args.name, args.prec)
    return f.to_dict()


def cmd_dims(args, stdin):
    out = {"dim_M": dim_M(args.weight), "dim_S": dim_S(args.weight)}
    if args.pole_bound:
        out["dim_weak"] = dim_M(args.weight + 12 * args.pole_bound)
    return out


def cmd_basis(args, stdin):
    return basis_space(args.weight, args.pole_bound, args.prec).to_dict()


def cmd_bol_quotient(args, stdin):
    return bol_quotient_dim(args.k, args.pole_bound, args.prec).to_dict()


def cmd_bol_apply(args, stdin):
    return bol_operator(_read_series(stdin), args.k).to_dict()


def cmd_bol_residual(args, stdin):
    f = _read_series(stdin)
    g = GammaMatrix.parse(args.gamma)
    tau = _tau(args.tau)
    return bol_equivariance_report(f, args.k, g, tau, args.prec)


def cmd_h0(args, stdin):
    return {"h0": h0_dim(args.k)}


def cmd_h1(args, stdin):
    return {"h1": h1_dim(args.k)}


def eichler_shimura_rows(kmax, poles=(1, 2, 3)):
    rows = []
    for k in range(2, kmax + 1, 2):
        bol = [bol_quotient_dim(k, p).quotient_dim for p in poles]
        row = {
            "k": k,
            "h1_cocycles": h1_dim(k),
            "dim_formula": dim_M(k + 2) + dim_S(k + 2),
            "bol_quotient": bol,
        }
        row["agree"] = all(v == row["dim_formula"] for v in [row["h1_cocycles"]] + bol)
        rows.append(row)
    return rows


def cmd_check_es(args, stdin):
    rows = eichler_shimura_rows(args.kmax, tuple(_int_list(args.pole_bounds)))
    ok = all(r["agree"] for r in rows)
    return {"rows": rows, "all_agree": ok}, (0 if ok else 1)


def cmd_invariants(args, stdin):
    return {"h0": quotient_invariants_dim(_int_list(args.summands), _int_list(args.drop))}


def cmd_slash(args, stdin):
    coeffs = args.coeffs.split(",")
    P = RepElement(len(coeffs) - 1, [as_fraction(c) for c in coeffs])
    Q = slash_rep(P, GammaMatrix.parse(args.gamma))
    return {"degree": Q.degree, "coeffs": [format_rational(c) for c in Q.coeffs]}


def cmd_eval(args, stdin):
    tau = _tau(args.tau)
    f = _form(args, _analytic_prec(args, tau), stdin)
    ev = eval_series(f, tau)
    return {"value": _complex_out(ev.value), "error_bound": ev.error_bound}


def cmd_residual(args, stdin):
    tau = _tau(args.tau)
    g = GammaMatrix.parse(args.gamma)
    f = _form(args, _analytic_prec(args, tau, g.act(tau)), stdin)
    res = modular_residual(f, args.weight, g, tau)
    bound = max(eval_series(f, tau).error_bound, eval_series(f, g.act(tau)).error_bound)
    return {"residual": res, "error_bound": bound}


def cmd_star(args, stdin):
    tau = _tau(args.tau)
    g = _cusp_form_at(args.weight, args.index, _analytic_prec(args, tau))
    ev = eichler_star(g, args.weight - 2, tau)
    return {"value": _complex_out(ev.value), "error_bound": ev.error_bound}


def cmd_dbar(args, stdin):
    tau = _tau(args.tau)
    h = args.step
    g = _cusp_form_at(args.weight, args.index, _analytic_prec(args, tau - 1j * h))
    return {"residual": dbar_residual(g, args.weight - 2, tau, h), "step": h}


def cmd_periods(args, stdin):
    if args.form is not None:
        f = _form(args, args.prec or 60, stdin)
        if args.weight is None:
            raise DomainError("--form needs --weight")
        weight = args.weight
    else:
        weight = args.weight if args.weight is not None else 12
        f = _cusp_form_at(weight, args.index, args.prec or 60)
    r = period_polynomial(f, weight - 2)
    rank, sv, misfit = period_rank_in_h1(r)
    out = r.to_dict()
    out["h1_rank_real_imag"] = rank
    out["h1_singular_values"] = [float(s) for s in sv]
    out["h1_dim"] = h1_dim(weight - 2)
    return out


def cmd_cocycle_fit(args, stdin):
    g = _cusp_form_at(args.weight, args.index, args.prec or 60)
    fit = star_cocycle_fit(g, args.weight - 2, GammaMatrix.parse(args.gamma))
    return {"residual": fit.residual, "coeffs": [_complex_out(c) for c in fit.coeffs],
            "center": _complex_out(fit.center), "radius": fit.radius}


def cmd_e2(args, stdin):
    tau = _tau(args.tau)
    g = GammaMatrix.parse(args.gamma)
    N = _analytic_prec(args, tau, g.act(tau))
    bound = max(eval_series(eisenstein(2, N), tau).error_bound,
                eval_series(eisenstein(2, N), g.act(tau)).error_bound)
    return {"residual": e2_completion_residual(g, tau, N), "error_bound": bound}


def cmd_gr_h1mult(args, stdin):
    return {"h1_mult": h1_mult(args.l, Variant.parse(args.variant, args.pole_bound))}


def cmd_gr_labels(args, stdin):
    alg = GrAlgebra(Variant.parse(args.variant, args.pole_bound), args.cutoff)
    labs = alg.labels(args.weight, args.depth)
    return {"count": len(labs), "labels": [lab.to_dict() for lab in labs]}


def render_gr_dims(args):
    variant = Variant.parse(args.variant, args.pole_bound)
    table = gr_table(variant, args.cutoff, args.kmin, args.kmax, args.depth)
    meta = {
        "command": "gr dims",
        "variant": variant.name,
        "cutoff": args.cutoff,
        "depth": args.depth,
        "kmin": args.kmin,
        "kmax": args.kmax,
        "model_dependent": variant.pole_bound > 0,
        "version": __version__,
    }
    lines = ["# " + json.dumps(meta, separators=(",", ":")), "weight,depth,dim"]
    for (k, i), d in sorted(table.items()):
        lines.append("%d,%d,%d" % (k, i, d))
    return "\n".join(lines) + "\n"


# -- parser ------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="hdmock", description=__doc__.strip().splitlines()[0], allow_abbrev=False)
    p.add_argument("--version", action="version", version=__version__)
    # global forms of the shared flags; a value given after the subcommand wins
    p.add_argument("--prec", dest="g_prec", type=int, metavar="N",
                   help="series precision for commands that take --prec")
    p.add_argument("--cutoff", dest="g_cutoff", type=int, metavar="N",
                   help="shadow weight cutoff L for gr commands")
    p.add_argument("--pole-bound", dest="g_pole_bound", type=int, metavar="N",
                   help="pole order bound p at the cusp")
    sub = p.add_subparsers(dest="command", required=True)

    def add(parent, name, fn, help=None):
        sp = parent.add_parser(name, help=help, allow_abbrev=False)
        sp.set_defaults(func=fn, cmdname=name)
        sp.add_argument("--table", action="store_true", help="human-readable output")
        return sp

    q = add(sub, "qexp", cmd_qexp, "q-expansion of a named form")
    q.add_argument("name", help="eisenstein, delta, j, or eK (e.g. e4)")
    q.add_argument("--k", type=int)
    q.add_argument("--prec", type=int)

    d = add(sub, "dims", cmd_dims, "dimensions of M_k and S_k")
    d.add_argument("--weight", type=int, required=True)
    d.add_argument("--pole-bound", type=int)

    b = add(sub, "basis", cmd_basis, "echelon basis of Delta^-p M_{k+12p}")
    b.add_argument("--weight", type=int, required=True)
    b.add_argument("--pole-bound", type=int)
    b.add_argument("--prec", type=int)

    bol = sub.add_parser("bol", help="Bol operator").add_subparsers(dest="bolcmd", required=True)
    bq = add(bol, "quotient", cmd_bol_quotient, "dim of the cokernel of D^{k+1}")
    bq.add_argument("--k", type=int, required=True)
    bq.add_argument("--p", "--pole-bound", dest="pole_bound", type=int)
    bq.add_argument("--prec", type=int)
    ba = add(bol, "apply", cmd_bol_apply, "D^{k+1} of a QSeries JSON read from stdin")
    ba.add_argument("--k", type=int, required=True)
    br = add(bol, "residual", cmd_bol_residual, "equivariance residual of D^{k+1} f (f on stdin)")
    br.add_argument("--k", type=int, required=True)
    br.add_argument("--gamma", default="S")
    br.add_argument("--tau", required=True)
    br.add_argument("--prec", type=int)

    coh = sub.add_parser("cohomology", help="group cohomology of SL2(Z)").add_subparsers(
        dest="cohcmd", required=True)
    add(coh, "h0", cmd_h0, "dim of invariants in V^k").add_argument("--k", type=int, required=True)
    add(coh, "h1", cmd_h1, "dim H^1(SL2(Z), V^k)").add_argument("--k", type=int, required=True)
    ce = add(coh, "check-es", cmd_check_es, "compare three computations of dim H^1")
    ce.add_argument("--kmax", type=int, default=20)
    ce.add_argument("--pole-bounds", default="1,2,3")
    ci = add(coh, "invariants", cmd_invariants, "invariants of a quotient of a sum of V^l")
    ci.add_argument("--summands", required=True)
    ci.add_argument("--drop", default="")
    cs = add(coh, "slash", cmd_slash, "right action of a matrix on V^k")
    cs.add_argument("--gamma", required=True)
    cs.add_argument("--coeffs", required=True, help="comma separated coefficients of X^{k-j}Y^j")

    an = sub.add_parser("analytic", help="numerics on the upper half plane").add_subparsers(
        dest="ancmd", required=True)
    ae = add(an, "eval", cmd_eval, "value of a q-series at tau")
    ae.add_argument("--form", default="delta")
    ae.add_argument("--tau", required=True)
    ae.add_argument("--prec", type=int)
    ar = add(an, "residual", cmd_residual, "modular transformation residual")
    ar.add_argument("--form", default="e4")
    ar.add_argument("--weight", type=int, required=True)
    ar.add_argument("--gamma", default="S")
    ar.add_argument("--tau", required=True)
    ar.add_argument("--prec", type=int)
    ast = add(an, "star", cmd_star, "non-holomorphic Eichler integral of a cusp form")
    ast.add_argument("--weight", type=int, default=12)
    ast.add_argument("--index", type=int, default=0)
    ast.add_argument("--tau", required=True)
    ast.add_argument("--prec", type=int)
    ad = add(an, "dbar", cmd_dbar, "finite-difference check of the Eichler integral")
    ad.add_argument("--weight", type=int, default=12)
    ad.add_argument("--index", type=int, default=0)
    ad.add_argument("--tau", required=True)
    ad.add_argument("--step", type=float, default=1e-4)
    ad.add_argument("--prec", type=int)
    ap = add(an, "periods", cmd_periods, "period polynomial and its H^1 rank")
    ap.add_argument("--form")
    ap.add_argument("--weight", type=int)
    ap.add_argument("--index", type=int, default=0)
    ap.add_argument("--prec", type=int)
    af = add(an, "cocycle-fit", cmd_cocycle_fit, "polynomial fit of the Eichler integral cocycle")
    af.add_argument("--weight", type=int, default=12)
    af.add_argument("--index", type=int, default=0)
    af.add_argument("--gamma", default="S")
    af.add_argument("--prec", type=int)
    a2 = add(an, "e2", cmd_e2, "completed E2 transformation residual")
    a2.add_argument("--gamma", default="S")
    a2.add_argument("--tau", required=True)
    a2.add_argument("--prec", type=int)

    gr = sub.add_parser("gr", help="depth-graded algebra").add_subparsers(dest="grcmd", required=True)
    gd = gr.add_parser("dims", help="CSV table of graded dimensions", allow_abbrev=False)
    gd.set_defaults(func=None, cmdname="dims")
    gd.add_argument("--variant", default="holomorphic")
    gd.add_argument("--pole-bound", type=int)
    gd.add_argument("--depth", type=int, default=2)
    gd.add_argument("--kmin", type=int, default=-24)
    gd.add_argument("--kmax", type=int, default=24)
    gd.add_argument("--cutoff", type=int)
    gh = add(gr, "h1mult", cmd_gr_h1mult, "multiplicity of H^1(V^l) slots")
    gh.add_argument("--l", type=int, required=True)
    gh.add_argument("--variant", default="holomorphic")
    gh.add_argument("--pole-bound", type=int)
    gl = add(gr, "labels", cmd_gr_labels, "enumerate basis labels")
    gl.add_argument("--weight", type=int, required=True)
    gl.add_argument("--depth", type=int, required=True)
    gl.add_argument("--variant", default="holomorphic")
    gl.add_argument("--pole-bound", type=int)
    gl.add_argument("--cutoff", type=int)
    return p


_SKIP = {"func", "cmdname", "table", "command", "bolcmd", "cohcmd", "ancmd", "grcmd"}


# per-command fallbacks when neither the global nor the local flag is given
_DEFAULTS = {
    "qexp": {"prec": 10},
    "dims": {"pole_bound": 0},
    "basis": {"pole_bound": 0},
    "bol quotient": {"pole_bound": 1},
    "gr dims": {"cutoff": 12},
    "gr labels": {"cutoff": 12},
}


def _merge_globals(args, name):
    for key in ("prec", "cutoff", "pole_bound"):
        g = vars(args).pop("g_" + key)
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, g if g is not None else _DEFAULTS.get(name, {}).get(key))


def _command_name(args):
    parts = [args.command]
    for attr in ("bolcmd", "cohcmd", "ancmd", "grcmd"):
        v = getattr(args, attr, None)
        if v:
            parts.append(v)
    return " ".join(parts)


def _params(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in _SKIP}


def _table(obj, indent=""):
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if v and (isinstance(v, dict) or isinstance(v, list) and isinstance(v[0], (dict, list))):
                lines.append("%s%s:" % (indent, k))
                lines.extend(_table(v, indent + "  "))
            else:
                lines.append("%s%-16s %s" % (indent, k, json.dumps(v)))
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(indent + "  ".join("%s=%s" % (k, json.dumps(x)) for k, x in v.items()))
            else:
                lines.append(indent + json.dumps(v))
    else:
        lines.append(indent + json.dumps(obj))
    return lines


def run(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    name = _command_name(args)
    _merge_globals(args, name)
    try:
        if args.command == "gr" and args.grcmd == "dims":
            stdout.write(render_gr_dims(args))
            return 0
        out = args.func(args, stdin)
        code = 0
        if isinstance(out, tuple):
            out, code = out
    except (DomainError, ValueError, ArithmeticError, ConsistencyError, IndexError) as e:
        stderr.write(json.dumps({"command": name, "error": str(e)}) + "\n")
        return 1
    if args.table:
        stdout.write("\n".join(["# " + name] + _table(out)) + "\n")
    else:
        payload = {"command": name, "params": _params(args), "result": out, "version": __version__}
        stdout.write(json.dumps(payload, separators=(",", ":"), allow_nan=False) + "\n")
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
