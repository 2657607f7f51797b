"""Command-line front end: ``relmod <command> [options]``.

Global flags (``--m --n --ell --ideal --tol --seed --format``) may be given
before or after the command. Complex numbers are printed as ``{re, im}``.
Exit codes: 0 success, 1 domain error or failed verification, 2 bad
configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import acceptance as acc
from . import braiding as br
from . import fusion as fu
from . import invariants as inv
from . import repr_sl21 as rp
from . import tangles as tg
from .errors import ConfigError, RelmodError
from .rootdata import RootDatum
from .scalars import Tolerance

GLOBALS = {
    "m": dict(type=int, default=2, help="even block size m"),
    "n": dict(type=int, default=1, help="odd block size n"),
    "ell": dict(type=int, default=5, help="odd order of the root of unity"),
    "ideal": dict(choices=[inv.PROJECTIVE, inv.PERTURBATIVE], default=None, help="modified-trace ideal"),
    "tol": dict(type=float, default=None, help="tolerance override"),
    "seed": dict(type=int, default=0, help="seed for randomized checks"),
    "format": dict(choices=["json", "table"], default="json", help="output format"),
    "precision": dict(type=int, default=12, help="significant digits for complex output"),
}


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    for name, kw in GLOBALS.items():
        kw = dict(kw)
        if suppress:
            kw["default"] = argparse.SUPPRESS
        p.add_argument(f"--{name}", **kw)


def parse_complex(s: str) -> complex:
    return complex(str(s).replace(" ", "").replace("i", "j"))


def parse_ints(s: str) -> list[int]:
    return [int(x) for x in str(s).split(",") if x.strip()] if s not in (None, "") else []


# output

def _num(z, prec: int):
    z = complex(z)
    return {"re": float(f"{z.real:.{prec}g}"), "im": float(f"{z.imag:.{prec}g}")}


def _clean(x, prec: int):
    if isinstance(x, dict):
        return {k: _clean(v, prec) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v, prec) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return _num(x, prec)
    if isinstance(x, np.ndarray):
        return _clean(x.tolist(), prec)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def emit(obj: dict, args) -> None:
    obj = _clean(obj, args.precision)
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
        return
    for k, v in obj.items():
        if isinstance(v, dict) and set(v) == {"re", "im"}:
            v = f"{v['re']:+.{args.precision}g} {v['im']:+.{args.precision}g}i"
        elif isinstance(v, (dict, list)):
            v = json.dumps(v)
        print(f"{k:<24} {v}")


# helpers

def _datum(args) -> RootDatum:
    tol = Tolerance() if args.tol is None else Tolerance(args.tol, args.tol)
    return RootDatum(args.m, args.n, args.ell, tol)


def parse_cpart(s: str) -> list:
    """Comma-separated c-part; integral entries stay ``int``, others become complex."""
    out = []
    for x in str(s).split(","):
        z = parse_complex(x)
        out.append(int(z.real) if z.imag == 0 and z.real.is_integer() else z)
    return out


def _weight(R: RootDatum, a, c):
    cs = parse_cpart(c) if c not in (None, "") else [0] * (R.rank - 1)
    try:
        return R.weight_ca(cs, parse_complex(a))
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _require_sl21(args) -> None:
    if (args.m, args.n) != (2, 1):
        raise ConfigError("this command is implemented for sl(2|1) only (--m 2 --n 1)")


def _ideal(args, default: str) -> str:
    return args.ideal or default


# commands

def cmd_typical(args):
    R = _datum(args)
    lam = _weight(R, args.a, args.c)
    flag, witness = R.is_typical(lam, return_witness=True)
    return {"weight": lam.coords, "typical": flag, "typical_arith": R.is_typical_arith(lam),
            "witness_roots": [f"eps{i}-delta{j}" for i, j in witness]}


def cmd_alcove(args):
    R = _datum(args)
    lam = _weight(R, args.a, args.c)
    try:
        left, right = R.c_parts(lam)
    except RelmodError as e:
        return {"weight": lam.coords, "open": False, "closed": False, "reason": str(e)}
    return {"weight": lam.coords, "c_parts": [left, right],
            "open": R.in_alcove(lam, strict=True), "closed": R.in_alcove(lam)}


def cmd_mdim(args):
    R = _datum(args)
    lam = _weight(R, args.a, args.c)
    ideal = _ideal(args, inv.PROJECTIVE)
    return {"weight": lam.coords, "ideal": ideal, "mdim": inv.mdim(lam, ideal)}


def cmd_twist(args):
    R = _datum(args)
    lam = _weight(R, args.a, args.c)
    return {"weight": lam.coords, "twist": inv.twist_scalar(lam)}


def cmd_sprime(args):
    R = _datum(args)
    lam, mu = _weight(R, args.a, args.c), _weight(R, args.a2, args.c2)
    ideal = _ideal(args, inv.PROJECTIVE)
    out = {"cut": lam.coords, "circle": mu.coords, "ideal": ideal}
    if ideal == inv.PROJECTIVE:
        out.update(s_prime=inv.s_prime(lam, mu), via_mdim=inv.s_prime_via_mdim(lam, mu))
    else:
        out.update(s_prime=inv.s_prime_char(lam, mu))
    return out


def cmd_hopf(args):
    _require_sl21(args)
    a1, a2 = parse_complex(args.a), parse_complex(args.a2)
    c1, c2 = int(args.c or 0), int(args.c2 or 0)
    formula = inv.hopf_value_sl21(a1, c1, a2, c2, args.ell)
    engine = tg.f_prime(tg.hopf_tangle(tg.typical(a1, c1), tg.typical(a2, c2)), args.ell)
    return {"formula": formula, "tangle_engine": engine, "diff": abs(formula - engine)}


def cmd_fuse(args):
    R = _datum(args)
    a, b = parse_complex(args.a), parse_complex(args.b)
    parts = fu.diagrams_in_box(R.m, R.n)
    ws = fu.tensor_decompose_zero(R, a, b)
    return {"a": a, "b": b, "count": len(ws), "summands": [
        {"weight": w.coords, "dim": fu.envelope_dim(R, w), "hw_parity": fu.summand_parity(p, R.m, R.n),
         "diagram": list(p)} for w, p in zip(ws, parts)]}


def cmd_delta(args):
    _require_sl21(args)
    a = parse_complex(args.a)
    out = {}
    modes = ["sum", "closed"] if args.mode == "both" else [args.mode]
    for sign, tag in ((1, "plus"), (-1, "minus")):
        vals = {m: inv.delta_pm_sl21(sign, args.ell, mode=m, a=a) for m in modes}
        out[tag] = vals
        if args.mode == "both":
            out[f"{tag}_diff"] = abs(vals["sum"] - vals["closed"])
    return out


def cmd_kirby(args):
    _require_sl21(args)
    terms = inv.kirby_color_sl21(parse_complex(args.a), args.ell, drop_zero=args.drop_zero)
    return {"count": len(terms), "terms": [{"alpha": t.alpha, "c": t.c, "coeff": t.coeff} for t in terms]}


def _module(args):
    _require_sl21(args)
    if args.type == "typical":
        return rp.make_typical(parse_complex(args.a), int(args.c or 0), args.ell)
    if args.type == "standard":
        return rp.make_standard(args.ell)
    if args.type == "sigma":
        return rp.make_sigma(args.zbar, rp.sigma_weight(args.ell, args.k))
    raise ConfigError(f"unknown module type {args.type}")


def cmd_module(args):
    V = _module(args)
    out = V.to_json()
    out["relations_residual"] = rp.check_relations(V).max_residual
    return out


def cmd_braid(args):
    _require_sl21(args)
    ell = args.ell
    v = rp.make_standard(ell)
    Va = rp.make_typical(parse_complex(args.a), int(args.c or 0), ell)
    Vb = rp.make_typical(parse_complex(args.b), 0, ell)
    q = br.check_quasitriangular(Va, v, Vb)
    th = br.twist_op(Va)
    return {"ybe_vvv": br.ybe_residual(v, v, v), "ybe_VvV": br.ybe_residual(Va, v, Vb),
            "quasitriangular": q.residuals, "twist_op": complex(th[0, 0]),
            "twist_formula": inv.twist_scalar(Va.highest),
            "conventions": {"a_sign": list(br.CONVENTIONS.a_sign), "a_power": list(br.CONVENTIONS.a_power)}}


def _load_diagram(path: str) -> dict:
    try:
        return tg.load_json(path)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read diagram {path}: {e}") from e


def cmd_eval(args):
    _require_sl21(args)
    d = tg.MorseDiagram.from_json(_load_diagram(args.diagram))
    M = tg.evaluate(d, args.ell)
    out = {"shape": list(M.shape)}
    if M.size == 1:
        out["scalar"] = complex(M[0, 0])
    elif M.size <= 256:
        out["matrix"] = [[complex(z) for z in row] for row in M]
    else:
        out["norm"] = float(np.linalg.norm(M))
    return out


def cmd_fprime(args):
    _require_sl21(args)
    d = tg.MorseDiagram.from_json(_load_diagram(args.diagram))
    return {"f_prime": tg.f_prime(d, args.ell, ideal=_ideal(args, inv.PERTURBATIVE))}


def cmd_cgp(args):
    _require_sl21(args)
    if args.diagram:
        p = tg.SurgeryPresentation.from_json(_load_diagram(args.diagram))
    else:
        cut = tg.typical(parse_complex(args.a), int(args.c or 0))
        p = tg.stabilized(cut, args.sign) if args.sign else tg.bare(cut)
    bp, bm = p.signature
    return {"invariant": tg.cgp_invariant(p, args.ell), "b_plus": bp, "b_minus": bm}


def _suite_config(args) -> acc.SuiteConfig:
    _require_sl21(args)
    RootDatum(args.m, args.n, args.ell)
    return acc.SuiteConfig(ell=args.ell, seed=args.seed, tol=args.tol)


def cmd_verify(args):
    cfg = _suite_config(args)
    results = acc.run_all(cfg, parse_ints(args.only) or None)
    for r in results:
        print(r.line(), file=sys.stderr)
    rep = acc.report(results, cfg)
    rep["failing"] = [r.name for r in results if not r.passed]
    return rep


def cmd_report(args):
    cfg = _suite_config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    results = acc.run_all(cfg)
    rep = acc.report(results, cfg)
    (out / "report.json").write_text(json.dumps(rep, indent=2))
    with open(out / "criteria.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "name", "passed", "residual", "tol", "seconds"])
        for r in results:
            w.writerow([r.id, r.name, r.passed, f"{r.residual:.3e}", r.tol, f"{r.seconds:.3f}"])
    figs = _figures(cfg, results, out)
    return {"out": str(out), "passed": rep["passed"], "files": ["report.json", "criteria.csv", *figs]}


def _figures(cfg: acc.SuiteConfig, results, out: Path) -> list[str]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ell = cfg.ell
    names = []

    fig, ax = plt.subplots(figsize=(6, 3.5))
    res = [max(r.residual, 1e-17) for r in results]
    colors = ["tab:green" if r.passed else "tab:red" for r in results]
    ax.bar([str(r.id) for r in results], res, color=colors)
    ax.set_yscale("log")
    ax.set_xlabel("criterion")
    ax.set_ylabel("worst residual")
    ax.set_title(f"acceptance residuals (ell={ell}, seed={cfg.seed})")
    fig.tight_layout()
    fig.savefig(out / "residuals.png", dpi=120)
    plt.close(fig)
    names.append("residuals.png")

    a_grid = np.linspace(0.02, 0.98, 97)
    a_grid = a_grid[np.abs(a_grid - 0.5) > 0.01]
    sums = np.array([inv.delta_sum_sl21(+1, a, ell) for a in a_grid])
    ref = inv.delta_closed_reference(+1, ell)
    with open(out / "delta.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["a", "re", "im"])
        for a, z in zip(a_grid, sums):
            w.writerow([f"{a:.4f}", f"{z.real:.12g}", f"{z.imag:.12g}"])
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.scatter(sums.real, sums.imag, s=12, label="double sum over a")
    ax.scatter([ref.real], [ref.imag], marker="x", s=60, color="tab:red", label="reference closed form")
    lim = inv.delta_closed_limit(+1, ell)
    ax.scatter([lim.real], [lim.imag], marker="+", s=80, color="k", label="-2 ell / {1}")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(f"Delta_+ at ell={ell}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "delta.png", dpi=120)
    plt.close(fig)
    names += ["delta.csv", "delta.png"]

    fig, ax = plt.subplots(figsize=(6, 3.5))
    xs = np.linspace(-1.9, 1.9, 400)
    xs = xs[np.min(np.abs(2 * xs[:, None] - np.arange(-5, 6)[None, :]), axis=1) > 0.04]
    for c in range(ell - 1):
        ys = [abs(inv.mdim_pert_sl21(x, c, ell)) for x in xs]
        ax.plot(xs, ys, ".", ms=2, label=f"c={c}")
    ax.set_yscale("log")
    ax.set_xlabel("alpha")
    ax.set_ylabel("|d(alpha, c)|")
    ax.set_title("perturbative modified dimension")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "mdim.png", dpi=120)
    plt.close(fig)
    names.append("mdim.png")
    return names


# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relmod", description="Quantum sl(m|n) data at odd roots of unity.")
    _add_globals(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        _add_globals(s, suppress=True)
        s.set_defaults(func=fn)
        return s

    def weight_args(s, second=False):
        s.add_argument("--a", default="0.3", help="the non-integral coordinate a")
        s.add_argument("--c", default=None, help="comma-separated c-part (non-integral entries for the projective ideal)")
        if second:
            s.add_argument("--a2", default="0.4")
            s.add_argument("--c2", default=None)

    weight_args(add("typical", cmd_typical, "typicality test with witness roots"))
    weight_args(add("alcove", cmd_alcove, "alcove membership"))
    weight_args(add("mdim", cmd_mdim, "modified dimension"))
    weight_args(add("twist", cmd_twist, "twist scalar"))
    weight_args(add("sprime", cmd_sprime, "open Hopf scalar (cut a/c, circle a2/c2)"), second=True)
    weight_args(add("hopf", cmd_hopf, "sl(2|1) Hopf link: formula and tangle engine"), second=True)
    s = add("fuse", cmd_fuse, "summands of V(a) (x) V(b)")
    s.add_argument("--a", default="0.3")
    s.add_argument("--b", default="0.4")
    s = add("delta", cmd_delta, "stabilisation scalars Delta_+-")
    s.add_argument("--mode", choices=[*inv.DELTA_MODES, "both"], default="both")
    s.add_argument("--a", default="0.3+0.1j")
    s = add("kirby", cmd_kirby, "Kirby color terms")
    s.add_argument("--a", default="0.3")
    s.add_argument("--drop-zero", action="store_true")
    s = add("module", cmd_module, "dump a constructed module as JSON")
    s.add_argument("--type", choices=["typical", "standard", "sigma"], default="typical")
    s.add_argument("--a", default="0.3")
    s.add_argument("--c", default="0")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--zbar", type=int, default=0)
    s = add("braid", cmd_braid, "braiding residuals on V(a,c) (x) v (x) V(b,0)")
    s.add_argument("--a", default="0.3")
    s.add_argument("--c", default="0")
    s.add_argument("--b", default="0.45")
    for name, fn, h in (("eval", cmd_eval, "evaluate a diagram JSON"),
                        ("fprime", cmd_fprime, "renormalised invariant of a (1,1)-tangle JSON")):
        s = add(name, fn, h)
        s.add_argument("--diagram", required=True)
    s = add("cgp", cmd_cgp, "surgery invariant from a presentation JSON or a built-in one")
    s.add_argument("--diagram", default=None)
    s.add_argument("--a", default="0.3")
    s.add_argument("--c", default="0")
    s.add_argument("--sign", type=int, choices=[-1, 0, 1], default=0,
                   help="add a +-1 framed Kirby-colored circle around the cut strand")
    s = add("verify", cmd_verify, "run the acceptance suite")
    s.add_argument("--only", default="", help="comma-separated criterion ids")
    s = add("report", cmd_report, "acceptance report with CSV/JSON and PNG figures")
    s.add_argument("--out", default="relmod_report")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        result = args.func(args)
    except ConfigError as e:
        print(f"ConfigError: {e}", file=sys.stderr)
        return 2
    except RelmodError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    emit(result, args)
    if args.command in ("verify", "report"):
        return 0 if result["passed"] else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
