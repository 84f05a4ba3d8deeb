"""Command-line front end.

Subcommands: gates, curve-info, h0, phi, prop-main, certify, suite.
Exit codes: 0 all requested checks pass, 1 verification failure (with a
machine-readable JSON reason on the last stdout line), 2 usage errors.

Per-point work in `certify`/`prop-main` is a pure map over sampled points;
--jobs N runs it in a process pool (each worker rebuilds the curve context
once), the default is sequential.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .backend import BACKEND
from .bundle import degree, make_line_bundle, make_sym_quotient
from .cohomology import chi, h0_basis, h1_dim, phi_report
from .curve import (curve_init, div_inf, h0_inf_count, iter_admissible_points,
                    verify_translation_identity)
from .errors import RaycertError
from .ff import make_field
from .report import (RunConfig, build_certificate, certificate_json,
                     enc_point, write_bundle_csv)
from .series import verify_differential_identities
from .surface import check_gates, require_params, verify_prop_main

# -- process-pool plumbing: workers rebuild the context once --

_POOL_CTX = {}


def _pool_init(p, n, e, precision, seed):
    _POOL_CTX["ctx"] = curve_init(p, n, e, precision=precision, seed=seed)
    _POOL_CTX["args"] = (p, n, e)


def _pool_certify(task):
    from .surface import certify_point
    (p, n, e, m), (k, z_co, y1_co) = task
    from .curve import PointRec
    fld = make_field(p, k)
    pt = PointRec(field=fld, z_val=fld.elem(z_co), y1_val=fld.elem(y1_co))
    return certify_point(require_params(p, n, e, m), pt, _POOL_CTX["ctx"])


def _point_mapper(cfg: RunConfig, jobs: int):
    if jobs <= 1:
        return None
    import multiprocessing as mp

    def runner(fn, pts):
        # fn is ignored: the pool re-derives the work from (params, point) keys
        tasks = [((cfg.p, cfg.n, cfg.e, cfg.m),
                  (pt.field.k, list(pt.z_val.co), list(pt.y1_val.co)))
                 for pt in pts]
        with mp.get_context("spawn").Pool(
                jobs, initializer=_pool_init,
                initargs=(cfg.p, cfg.n, cfg.e, cfg.precision, cfg.seed)) as pool:
            return pool.map(_pool_certify, tasks)

    return runner


def _finish(ok: bool, reason: str = "") -> int:
    print(json.dumps({"ok": ok, **({"reason": reason} if reason else {})},
                     sort_keys=True))
    return 0 if ok else 1


def _write_out(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(f"wrote {cfg.out}")


def cmd_gates(cfg: RunConfig, args) -> int:
    rep = check_gates(cfg.p, cfg.n, cfg.e, cfg.m)
    for k, v in rep.details:
        print(f"  {k}: {v}")
    if rep.ok:
        pr = rep.params
        print(f"gates pass: q={pr.q} l={pr.ell} N={pr.N}")
        return _finish(True)
    return _finish(False, "; ".join(rep.failures))


def cmd_curve_info(cfg: RunConfig, args) -> int:
    ctx = curve_init(cfg.p, cfg.n, cfg.e, precision=cfg.precision, seed=cfg.seed)
    ident = verify_differential_identities(ctx.basics)
    trans = verify_translation_identity(ctx)
    print(f"curve C({cfg.p},{cfg.n},{cfg.e}): qe={ctx.qe} genus={ctx.g} "
          f"semigroup=<{ctx.sg_gens[0]},{ctx.sg_gens[1]}>")
    print(f"  chain rule dy1 = z^(qe-2) dz: {'pass' if ident.chain_rule.ok else 'FAIL'}")
    print(f"  translation z = alpha^q gamma + beta^q (series): "
          f"{'pass' if ident.translation.ok else 'FAIL'}")
    print(f"  translation (exact bivariate + {trans.points_checked} points): "
          f"{'pass' if trans.ok else 'FAIL'}")
    ok = ident.ok and trans.ok
    return _finish(ok, "" if ok else "identity check failed")


def cmd_h0(cfg: RunConfig, args) -> int:
    ctx = curve_init(cfg.p, cfg.n, cfg.e, precision=cfg.precision, seed=cfg.seed)
    rows = []
    ok = True
    if args.family == "line":
        for M in range(0, args.max + 1, args.step):
            b = make_line_bundle(ctx, div_inf(M))
            h0 = h0_basis(ctx, b).dim
            h1 = h1_dim(ctx, b)
            rows.append({"name": b.name, "rank": 1, "degree": M, "h0": h0,
                         "h1": h1, "chi": chi(ctx, b)})
            ok = ok and h0 == h0_inf_count(ctx, M) and h0 - h1 == chi(ctx, b)
    elif args.family == "sq":
        params = require_params(cfg.p, cfg.n, cfg.e, cfg.m)
        tw = div_inf(-params.N)
        for r in range(params.q):
            b = make_sym_quotient(ctx, r, tw)
            h0 = h0_basis(ctx, b).dim
            h1 = h1_dim(ctx, b) if b.rank else 0
            rows.append({"name": b.name, "rank": b.rank, "degree": degree(b),
                         "h0": h0, "h1": h1, "chi": chi(ctx, b)})
            ok = ok and h0 - h1 == chi(ctx, b)
    else:  # adjoint
        params = require_params(cfg.p, cfg.n, cfg.e, cfg.m)
        from .surface import adjoint_summands
        Q = next(iter_admissible_points(ctx, kmax=cfg.kmax, limit=1), None)
        if Q is None:
            return _finish(False, "no admissible point found within kmax")
        for s in adjoint_summands(params, Q, ctx):
            if s.bundle is None:
                continue
            h0 = h0_basis(ctx, s.bundle).dim
            h1 = h1_dim(ctx, s.bundle)
            rows.append({"name": s.bundle.name, "rank": s.bundle.rank,
                         "degree": degree(s.bundle), "h0": h0, "h1": h1,
                         "chi": chi(ctx, s.bundle)})
            ok = ok and h0 - h1 == chi(ctx, s.bundle)
    wid = max(len(r["name"]) for r in rows)
    print(f"{'bundle':<{wid}}  rank  degree    h0    h1   chi")
    for r in rows:
        print(f"{r['name']:<{wid}}  {r['rank']:>4}  {r['degree']:>6}  "
              f"{r['h0']:>4}  {r['h1']:>4}  {r['chi']:>4}")
    if args.csv:
        write_bundle_csv(args.csv, rows)
        print(f"wrote {args.csv}")
    return _finish(ok, "" if ok else "dimension table failed a consistency check")


def cmd_phi(cfg: RunConfig, args) -> int:
    ctx = curve_init(cfg.p, cfg.n, cfg.e, precision=cfg.precision, seed=cfg.seed)
    params = require_params(cfg.p, cfg.n, cfg.e, cfg.m)
    ms = range(1, params.q + 1) if args.all_m else [cfg.m]
    ok = True
    print("  m  r  h0(S^r)  h0(S^r+1)  h0(L^r+2)  h1(L^r+2)  rank  surjective  W_codim")
    for m in ms:
        for r in range(params.q - 1):
            rep = phi_report(ctx, r, m)
            print(f"  {m}  {r}  {rep.dims[0]:>7}  {rep.dims[1]:>9}  "
                  f"{rep.dims[2]:>9}  {rep.dims[3]:>9}  {rep.phi_rank:>4}  "
                  f"{str(rep.surjective):>10}  {rep.W_codim:>7}")
            ok = ok and not rep.surjective
    return _finish(ok, "" if ok else "a connecting map was surjective")


def cmd_prop_main(cfg: RunConfig, args) -> int:
    ctx = curve_init(cfg.p, cfg.n, cfg.e, precision=cfg.precision, seed=cfg.seed)
    params = require_params(cfg.p, cfg.n, cfg.e, cfg.m)
    pts = list(iter_admissible_points(ctx, kmax=cfg.kmax, limit=cfg.fibers))
    if not pts:
        return _finish(False, "no admissible points found within kmax")
    n_iso = 0
    for pt in pts:
        rec = verify_prop_main(params, pt, ctx)
        n_iso += rec.iso
        print(f"  Q={json.dumps(enc_point(pt), sort_keys=True)} "
              f"h0={rec.h0_noQ}/{rec.h0_withQ} iso={rec.iso}")
    frac = Fraction(n_iso, len(pts))
    print(f"iso fraction: {n_iso}/{len(pts)}")
    ok = frac >= Fraction(9, 10)
    return _finish(ok, "" if ok else f"iso fraction {frac} below 9/10")


def cmd_certify(cfg: RunConfig, args) -> int:
    doc = build_certificate(cfg, point_map=_point_mapper(cfg, args.jobs))
    text = certificate_json(doc)
    _write_out(cfg, text)
    if not cfg.out:
        sys.stdout.write(text)
    if args.csv and "bundles" in doc:
        write_bundle_csv(args.csv, doc["bundles"])
        print(f"wrote {args.csv}")
    print(f"verdict: {doc['verdict']}  pass_fraction: {doc.get('pass_fraction')}")
    return _finish(bool(doc["ok"]),
                   "" if doc["ok"] else f"verdict {doc['verdict']}")


def cmd_suite(cfg: RunConfig, args) -> int:
    from .acceptance import run_suite
    results = run_suite(args.level)
    ok = True
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"[tier {r.tier}] {status}  {r.name}  ({r.seconds}s)" +
              (f"  -- {r.detail}" if r.detail and not r.ok else ""))
        ok = ok and r.ok
    print(f"{sum(r.ok for r in results)}/{len(results)} criteria passed")
    return _finish(ok, "" if ok else "acceptance criteria failed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="raycert",
        description="Exact-arithmetic base-point certificates for adjoint "
                    "systems on generalized Raynaud surfaces")
    ap.add_argument("--version", action="version", version=f"raycert {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, need_m=True):
        sp.add_argument("--p", type=int, required=True, help="characteristic (prime)")
        sp.add_argument("--n", type=int, required=True, help="Frobenius iterate, q = p^n")
        sp.add_argument("--e", type=int, required=True, help="curve degree parameter")
        if need_m:
            sp.add_argument("--m", type=int, default=1, help="adjoint multiple (1..q)")
        sp.add_argument("--kmax", type=int, default=8,
                        help="largest extension degree swept for points")
        sp.add_argument("--fibers", type=int, default=6,
                        help="number of admissible points to sample")
        sp.add_argument("--precision", type=int, default=None,
                        help="series cutoff override")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for the root-finding splitter")
        sp.add_argument("--out", type=str, default=None, help="output JSON path")

    sp = sub.add_parser("gates", help="check the parameter gates")
    common(sp)
    sp.set_defaults(fn=cmd_gates)

    sp = sub.add_parser("curve-info", help="genus, semigroup, identity checks")
    common(sp, need_m=False)
    sp.set_defaults(fn=cmd_curve_info, m=1)

    sp = sub.add_parser("h0", help="dimension table for a bundle family")
    common(sp)
    sp.add_argument("--family", choices=["line", "sq", "adjoint"], default="line")
    sp.add_argument("--max", type=int, default=30, help="largest twist for --family line")
    sp.add_argument("--step", type=int, default=1)
    sp.add_argument("--csv", type=str, default=None, help="also write the table as CSV")
    sp.set_defaults(fn=cmd_h0)

    sp = sub.add_parser("phi", help="connecting-map reports for all r")
    common(sp)
    sp.add_argument("--all-m", action="store_true", help="sweep every m in 1..q")
    sp.set_defaults(fn=cmd_phi)

    sp = sub.add_parser("prop-main", help="multiplication-map isomorphism over sampled points")
    common(sp)
    sp.set_defaults(fn=cmd_prop_main)

    sp = sub.add_parser("certify", help="produce the full base-point certificate")
    common(sp)
    sp.add_argument("--csv", type=str, default=None, help="bundle table CSV path")
    sp.add_argument("--jobs", type=int, default=1, help="parallel workers over points")
    sp.set_defaults(fn=cmd_certify)

    sp = sub.add_parser("suite", help="run the acceptance tiers")
    sp.add_argument("--level", choices=["quick", "full"], default="quick")
    sp.set_defaults(fn=cmd_suite, p=2, n=1, e=3, m=1, kmax=8, fibers=6,
                    precision=None, seed=0, out=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command, p=args.p, n=args.n, e=args.e,
                    m=getattr(args, "m", 1), kmax=args.kmax, fibers=args.fibers,
                    precision=args.precision, seed=args.seed, out=args.out)
    print(f"raycert {__version__} (backend: {BACKEND})", file=sys.stderr)
    try:
        return args.fn(cfg, args)
    except RaycertError as exc:
        print(json.dumps({"ok": False, "error": type(exc).__name__,
                          "reason": str(exc)}, sort_keys=True))
        return 1


if __name__ == "__main__":
    sys.exit(main())
