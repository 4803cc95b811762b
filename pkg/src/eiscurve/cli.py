"""Command-line front end.

    eiscurve lp --char kronecker:-4 --p 5
    eiscurve linv --char kronecker:-3 --p 7
    eiscurve qexp eisenstein --char kronecker:-4 --k 1 --kind 1,phi --nmax 10
    eiscurve verify all --char kronecker:-4 --p 5

Exit codes: 0 pass, 1 identity failure, 2 precondition error, 3 precision
insufficient.  Reports are JSON with a top-level "schema" key.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .characters import EmbeddingError, parse_character
from .errors import EmbeddingAmbiguityError, PreconditionError
from .padic import PrecisionError

SCHEMA = "eiscurve.report/1"

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION, EXIT_PRECISION = 0, 1, 2, 3


@dataclass
class RunConfig:
    p: int | None = None
    char: str = "kronecker:-4"
    prec: int = 30
    mx: int = 8
    ms: int = 3
    nmax: int = 1000
    lmax: int = 200
    embedding_index: int = 1
    unit_file: str | None = None
    unit_poly: str | None = None
    unit_val: int | None = None
    unit_inv_file: str | None = None
    unit_inv_poly: str | None = None
    unit_inv_val: int | None = None
    root_residue: int | None = None
    output: str | None = None


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}
_INT_KEYS = {"p", "prec", "mx", "ms", "nmax", "lmax", "embedding_index", "unit_val",
             "unit_inv_val", "root_residue"}


def read_config(path: str | Path) -> dict[str, Any]:
    """Flat ``key = value`` file; '#' starts a comment.  Keys use - or _."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key = key.strip().replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        val = val.strip()
        out[key] = int(val) if key in _INT_KEYS else val
    return out


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    """flags > config file > defaults."""
    values = asdict(RunConfig())
    if getattr(ns, "config", None):
        values.update(read_config(ns.config))
    for key in _CONFIG_KEYS:
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = v
    cfg = RunConfig(**values)
    if cfg.p is None:
        raise PreconditionError("a prime --p is required")
    if cfg.p < 3 or any(cfg.p % q == 0 for q in range(2, int(cfg.p**0.5) + 1)):
        raise PreconditionError(f"--p {cfg.p} is not an odd prime")
    return cfg


def _character(cfg: RunConfig):
    phi = parse_character(cfg.char)
    if cfg.embedding_index != 1:
        phi = phi.with_embedding(cfg.embedding_index)
    return phi


def _unit(cfg: RunConfig, inverse: bool = False):
    from .linvariant import PUnitData

    file_ = cfg.unit_inv_file if inverse else cfg.unit_file
    poly = cfg.unit_inv_poly if inverse else cfg.unit_poly
    val = cfg.unit_inv_val if inverse else cfg.unit_val
    if file_:
        u = PUnitData.load(file_)
    elif poly:
        if val is None:
            raise PreconditionError("--unit-poly needs --unit-val")
        coeffs = tuple(Fraction(c.strip()) for c in poly.split(","))
        u = PUnitData(coeffs, val, label=cfg.char)
    else:
        return None
    if cfg.root_residue is not None and not inverse:
        u = PUnitData(u.coefficients, u.valuation, u.label, cfg.root_residue)
    return u


def _emit(cfg: RunConfig, command: str, result: dict, passed: bool | None = None) -> None:
    from .verify import jsonable

    config = {k: v for k, v in asdict(cfg).items() if k != "output"}
    doc = {"schema": SCHEMA, "command": command, "config": jsonable(config),
           "result": jsonable(result)}
    if passed is not None:
        doc["passed"] = passed
    text = json.dumps(doc, sort_keys=True, indent=2)
    if cfg.output:
        Path(cfg.output).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- commands -------------------------------------------------------------------


def cmd_lp(cfg: RunConfig, ns) -> int:
    from .lfunction import lp_jet

    jet = lp_jet(_character(cfg), cfg.p, cfg.ms, cfg.prec, center=ns.center)
    _emit(cfg, "lp", {"center": ns.center, "jet": jet.series,
                      "derivative": jet.series[1] if cfg.ms > 1 else None})
    return EXIT_OK


def cmd_zeta(cfg: RunConfig, ns) -> int:
    from .lfunction import zeta_series

    z = zeta_series(_character(cfg), cfg.p, cfg.mx, cfg.prec)
    _emit(cfg, "zeta-series", {"mx": cfg.mx, "coefficients": z.series})
    return EXIT_OK


def cmd_linv(cfg: RunConfig, ns) -> int:
    from .linvariant import l_invariant_details, split_prime_power_generator

    phi = _character(cfg)
    L, unit, info = l_invariant_details(phi, cfg.p, cfg.prec, _unit(cfg))
    result: dict[str, Any] = {
        "L": L,
        "unit": unit.to_json(),
        "root": info.root,
        "root_residue": info.residue,
        "candidate_residues": list(info.candidates),
    }
    if phi.discriminant is not None:
        q = split_prime_power_generator(phi.discriminant, cfg.p)
        result["class_number"] = q.class_number
        result["generator"] = [q.x, q.y]
        result["minimal_polynomial"] = list(q.minimal_polynomial)
    _emit(cfg, "linv", result)
    return EXIT_OK


def cmd_qexp(cfg: RunConfig, ns) -> int:
    from .families import eisenstein_qexp

    phi = _character(cfg)
    g = eisenstein_qexp(phi, ns.k, ns.kind, cfg.nmax, cfg.p, cfg.prec)
    _emit(cfg, "qexp eisenstein", {"k": ns.k, "kind": ns.kind, "coefficients": g.coeffs,
                                   "preview": g.preview(10)})
    return EXIT_OK


def cmd_family(cfg: RunConfig, ns) -> int:
    from .families import cuspidal_family, lambda_eisenstein
    from .overconvergent import l_invariants

    phi = _character(cfg)
    if ns.which == "cuspidal":
        L, Li = l_invariants(phi, cfg.p, cfg.prec, _unit(cfg), _unit(cfg, inverse=True))
        g = cuspidal_family(phi, cfg.p, cfg.nmax, L, Li, cfg.prec)
    else:
        g = lambda_eisenstein(phi, cfg.p, ns.which, cfg.nmax, cfg.mx, cfg.prec)
    _emit(cfg, f"family {ns.which}", {"label": g.label, "coefficients": g.coeffs,
                                       "preview": g.preview(6)})
    return EXIT_OK


def cmd_overconvergent(cfg: RunConfig, ns) -> int:
    from .overconvergent import build_basis, l_invariants
    from .verify import verify_eigenspace

    phi = _character(cfg)
    L, Li = l_invariants(phi, cfg.p, cfg.prec, _unit(cfg), _unit(cfg, inverse=True))
    B = build_basis(phi, cfg.p, cfg.nmax, cfg.prec, L, Li)
    result: dict[str, Any] = {
        "L_phi": L, "L_phi_inv": Li,
        "f_dag_phi_1": B.f_phi_one.coeffs[: ns.show + 1],
        "f_dag_1_phi": B.f_one_phi.coeffs[: ns.show + 1],
    }
    passed = None
    if ns.check == "all":
        checks = verify_eigenspace(B, cfg.nmax)
        result["checks"] = [c.to_json() for c in checks]
        passed = all(c.passed for c in checks)
    _emit(cfg, "overconvergent", result, passed)
    return EXIT_OK if passed in (None, True) else EXIT_FAIL


def cmd_hecke(cfg: RunConfig, ns) -> int:
    from .hecke import build_T, build_Tord, build_Tprime, congruence_module, fiber_and_socle
    from .lfunction import zeta_series
    from .overconvergent import l_invariants

    phi = _character(cfg)
    L, Li = l_invariants(phi, cfg.p, cfg.prec, _unit(cfg), _unit(cfg, inverse=True))
    models = [build_T(cfg.mx, cfg.p), build_Tprime(L, Li, cfg.mx), build_Tord(cfg.mx, cfg.p)]
    out = {}
    for A in models:
        r = fiber_and_socle(A)
        out[A.label] = {"dim": r.dim, "fiber_dim": r.fiber_dim, "socle_dim": r.socle_dim,
                        "gorenstein": r.gorenstein, "socle_basis": r.socle_basis,
                        "closed_under_multiplication": A.closure_defect() == 0}
    cm = congruence_module(zeta_series(phi, cfg.p, cfg.mx, cfg.prec))
    out["congruence_module"] = {"J_eis_is_X": cm.j_eis_is_x, "length": cm.length_quotient,
                                "ord_X_zeta": cm.ord_zeta, "unit_at_zero": cm.unit_at_zero}
    _emit(cfg, "hecke-structure", {"mx": cfg.mx, "models": out})
    return EXIT_OK


def cmd_verify(cfg: RunConfig, ns) -> int:
    from . import verify as V
    from .lfunction import check_setting
    from .overconvergent import l_invariants

    phi = _character(cfg)
    check_setting(phi, cfg.p, irregular=True)
    unit, unit_inv = _unit(cfg), _unit(cfg, inverse=True)
    if ns.what == "gross":
        checks = V.verify_gross(phi, cfg.p, cfg.prec, unit)
    elif ns.what == "ferrero-greenberg":
        checks = V.verify_ferrero_greenberg(phi, cfg.p, cfg.prec)
    elif ns.what == "relation":
        L, Li = l_invariants(phi, cfg.p, cfg.prec, unit, unit_inv)
        checks = V.verify_relation(phi, cfg.p, L, Li, cfg.lmax, cfg.prec)
    else:
        report = V.verify_all(phi, cfg.p, cfg.prec, cfg.nmax, cfg.lmax, range(3, cfg.mx + 1),
                              unit, unit_inv)
        checks = report.checks
        checks.append(V.precision_stability(phi, cfg.p, cfg.prec, cfg.prec + 10,
                                            unit=unit, unit_inv=unit_inv))
    passed = all(c.passed for c in checks)
    _emit(cfg, f"verify {ns.what}", {"checks": [c.to_json() for c in checks]}, passed)
    return EXIT_OK if passed else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def _common(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("run configuration")
    g.add_argument("--config", help="key=value file (flags override it)")
    g.add_argument("--char", help="kronecker:D or mod:N:g=e,...,order=m")
    g.add_argument("--p", type=int, help="odd prime")
    g.add_argument("--prec", type=int, help="p-adic digits (default 30)")
    g.add_argument("--mx", type=int, help="truncation in X (default 8)")
    g.add_argument("--ms", "--jet", dest="ms", type=int, help="jet order in s (default 3)")
    g.add_argument("--nmax", type=int, help="q-expansion length (default 1000)")
    g.add_argument("--lmax", type=int, help="largest prime for relation checks (default 200)")
    g.add_argument("--embedding-index", type=int, help="choice of p-adic embedding of phi")
    g.add_argument("--unit-file", help="JSON p-unit data for phi")
    g.add_argument("--unit-poly", help="coefficients c0,c1,...,cd (low degree first)")
    g.add_argument("--unit-val", type=int, help="valuation of the distinguished root")
    g.add_argument("--unit-inv-file", help="JSON p-unit data for phi^-1")
    g.add_argument("--unit-inv-poly", help="coefficients for phi^-1")
    g.add_argument("--unit-inv-val", type=int, help="valuation for phi^-1")
    g.add_argument("--root-residue", type=int, help="residue selecting the root when ambiguous")
    g.add_argument("--output", help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eiscurve", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lp", help="jet of L_p(phi omega, s)")
    _common(sp)
    sp.add_argument("--center", type=int, default=0)
    sp.set_defaults(func=cmd_lp)

    sp = sub.add_parser("zeta-series", help="zeta_phi(X) mod X^Mx")
    _common(sp)
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("linv", help="L-invariant from p-units")
    _common(sp)
    sp.set_defaults(func=cmd_linv)

    sp = sub.add_parser("qexp", help="classical q-expansions")
    qsub = sp.add_subparsers(dest="qexp_kind", required=True)
    e = qsub.add_parser("eisenstein")
    _common(e)
    e.add_argument("--k", type=int, default=1)
    e.add_argument("--kind", default="1,phi", choices=["1,phi", "phi,1"])
    e.set_defaults(func=cmd_qexp, p_optional=True)

    sp = sub.add_parser("family", help="Lambda-adic families")
    sp.add_argument("which", choices=["1,phi", "phi,1", "cuspidal"])
    _common(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("overconvergent", help="f_dag forms and their identities")
    _common(sp)
    sp.add_argument("--check", choices=["all", "none"], default="none")
    sp.add_argument("--show", type=int, default=20, help="coefficients to print")
    sp.set_defaults(func=cmd_overconvergent)

    sp = sub.add_parser("hecke-structure", help="finite models of the Hecke algebras")
    _common(sp)
    sp.set_defaults(func=cmd_hecke)

    sp = sub.add_parser("verify", help="verification suites")
    sp.add_argument("what", choices=["gross", "relation", "ferrero-greenberg", "all"])
    _common(sp)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if getattr(ns, "p_optional", False) and ns.p is None and not ns.config:
            values = asdict(RunConfig())
            values.update({k: getattr(ns, k) for k in _CONFIG_KEYS if getattr(ns, k, None) is not None})
            cfg = RunConfig(**values)
        else:
            cfg = resolve_config(ns)
        return ns.func(cfg, ns)
    except PrecisionError as exc:
        print(f"precision insufficient: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (PreconditionError, EmbeddingError, EmbeddingAmbiguityError, ValueError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
