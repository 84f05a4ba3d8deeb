"""Certificate assembly and serialization.

The JSON certificate (schema version 1) is fully determined by the RunConfig:
field elements are serialized as coefficient vectors plus the modulus,
rationals as "a/b" strings, and the final document is dumped with sorted
keys, so byte-identical inputs give byte-identical certificates.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .cohomology import phi_report
from .curve import (CurveCtx, PointRec, curve_init, iter_admissible_points,
                    verify_translation_identity)
from .ff import FieldDesc, FieldElem
from .series import verify_differential_identities
from .surface import (PointCertificate, certify_point, check_gates,
                      intersection_report)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int
    n: int
    e: int
    m: int = 1
    kmax: int = 8
    fibers: int = 6
    precision: int | None = None
    seed: int = 0
    out: str | None = None

    def to_dict(self):
        return asdict(self)


def enc_field(fld: FieldDesc) -> dict:
    return {"p": fld.p, "k": fld.k, "modulus": list(fld.modulus)}


def enc_elem(x: FieldElem) -> list:
    return list(x.co)


def enc_point(pt: PointRec) -> dict:
    return {"field": enc_field(pt.field), "z": enc_elem(pt.z_val),
            "y1": enc_elem(pt.y1_val), "marker": pt.marker}


def enc_frac(x) -> str | int:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool):
        return x
    return x


def _point_record(cert: PointCertificate) -> dict:
    return {
        "Q": enc_point(cert.Q),
        "h0_noQ": cert.prop_main.h0_noQ,
        "h0_withQ": cert.prop_main.h0_withQ,
        "iso": cert.prop_main.iso,
        "h0_total": cert.h0_total,
        "verdict": cert.verdict,
        "residuals": [
            {"value": list(r.value), "coords": [list(c) for c in r.coord_values],
             "zero": r.is_zero}
            for r in cert.residuals
        ],
    }


def build_certificate(cfg: RunConfig, ctx: CurveCtx | None = None,
                      point_map=None) -> dict:
    """The full machine-checkable certificate for one (p, n, e, m)."""
    gates = check_gates(cfg.p, cfg.n, cfg.e, cfg.m)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "run_config": cfg.to_dict(),
        "gates": {
            "ok": gates.ok,
            "failures": list(gates.failures),
            "details": [list(d) for d in gates.details],
        },
    }
    if not gates.ok:
        doc["verdict"] = "GateFailure"
        doc["ok"] = False
        return doc
    params = gates.params
    doc["params"] = {"p": params.p, "n": params.n, "e": params.e, "m": params.m,
                     "q": params.q, "l": params.ell, "N": params.N}

    if ctx is None:
        ctx = curve_init(cfg.p, cfg.n, cfg.e, precision=cfg.precision, seed=cfg.seed)
    ident = verify_differential_identities(ctx.basics)
    trans = verify_translation_identity(ctx)
    doc["curve"] = {
        "genus": ctx.g,
        "semigroup_generators": list(ctx.sg_gens),
        "identity_checks": {
            "smoothness": True,  # curve_init would have raised otherwise
            "chain_rule": ident.chain_rule.ok,
            "translation_series": ident.translation.ok,
            "translation_exact": trans.ok,
        },
    }
    doc["intersections"] = {k: enc_frac(v)
                            for k, v in intersection_report(params).items()}

    doc["phi"] = []
    for r in range(params.q - 1):
        rep = phi_report(ctx, r, cfg.m)
        doc["phi"].append({"r": rep.r, "m": rep.m, "dims": list(rep.dims),
                           "phi_rank": rep.phi_rank, "surjective": rep.surjective,
                           "W_codim": rep.W_codim})

    points = list(iter_admissible_points(ctx, kmax=cfg.kmax, limit=cfg.fibers))
    runner = point_map or (lambda fn, xs: [fn(x) for x in xs])
    certs = runner(lambda pt: certify_point(params, pt, ctx), points)

    doc["prop_main"] = [_point_record(c) for c in certs]
    passing = [c for c in certs if c.verdict == "BasePointCertified"]
    doc["pass_fraction"] = enc_frac(
        Fraction(len(passing), len(certs)) if certs else Fraction(0))

    if certs:
        head = passing[0] if passing else certs[0]
        head_full, tables = certify_point(params, head.Q, ctx, collect_tables=True)
        doc["bundles"] = tables
        doc["base_point"] = {
            "Q": enc_point(head_full.Q),
            "w": enc_elem(head_full.w),
            "h0_total": head_full.h0_total,
            "summand_dims": list(head_full.summand_dims),
            "residuals": [
                {"value": list(r.value), "coords": [list(c) for c in r.coord_values],
                 "zero": r.is_zero}
                for r in head_full.residuals
            ],
            "verdict": head_full.verdict,
            "assumptions": [
                "R_Q exists by divisibility of Pic^0; only the class "
                "(m-1)*inf + Q of m*R_Q is used",
                "non-first summands vanish along Gamma_2 structurally "
                "(cover-coordinate multiples)",
                "ampleness of A = Gamma_1 + fiber*R is supported by the "
                "numeric positivity table",
            ],
        }
        doc["verdict"] = head_full.verdict
    else:
        doc["base_point"] = None
        doc["verdict"] = "Inconclusive"

    moduli = sorted({(pt.field.p, pt.field.k, pt.field.modulus) for pt in points}
                    | {(ctx.prime_field.p, 1, ctx.prime_field.modulus)})
    doc["engine"] = {
        "moduli": [{"p": p, "k": k, "modulus": list(mod)} for p, k, mod in moduli],
        "precision": ctx.basics.precision,
        "seed": cfg.seed,
        "version": __version__,
    }
    doc["ok"] = doc["verdict"] == "BasePointCertified"
    return doc


def certificate_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_bundle_csv(path: str, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=["name", "rank", "degree", "h0", "h1", "chi"])
        w.writeheader()
        for row in rows:
            w.writerow(row)
