"""Command-line front end.

Exit codes:
  0  success (validate: all checks pass; verify: every axiom Proven;
     falsify: no counterexample found)
  1  validation failure, or some axiom RefutedNumerically, or a
     counterexample was found
  2  parse, format or shape error in the inputs
  3  verify only: nothing refuted but some axiom Inconclusive
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import __version__
from .arith import TOLERANCES, set_tolerance
from .catalog import CATALOG, load_catalog
from .coaction import (CoactionCertificate, MorphismError, ShapeError, _Collector,
                       universal_presentation, verify_all, verify_coaction, verify_filtration_axioms)
from .filtration import FiltrationSpec, SpecError, validate
from .formats import (FormatError, certificate_from_json, certificate_to_json, dumps,
                      load_json_text, presentation_text, presentation_to_json, spec_from_json,
                      spec_to_json)
from .ncalg import ParseError, PresentationError
from .numeric import DEFAULT_SEED, falsify_in, presentation_points, set_seed
from .rewrite import INCONCLUSIVE, PROVEN, REFUTED, RewriteConfig

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

INPUT_ERRORS = (FormatError, ParseError, ShapeError, SpecError, PresentationError, OSError)


class InputError(Exception):
    pass


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return load_json_text(text, path)
    except FormatError as exc:
        raise InputError(str(exc)) from None


def _catalog(uri: str, degree: Optional[int]) -> tuple:
    try:
        return load_catalog(uri, degree)
    except (ValueError, KeyError) as exc:
        raise InputError(f"{uri}: {exc}") from None


def load_spec(src: str, degree: Optional[int] = None) -> FiltrationSpec:
    if src.startswith("catalog:"):
        return _catalog(src, degree)[0]
    try:
        return spec_from_json(_read_json(src))
    except FormatError as exc:
        raise InputError(f"{src}: {exc}") from None


def load_certificate(spec_src: str, cert_src: Optional[str], degree: Optional[int]) -> CoactionCertificate:
    if cert_src is None:
        if not spec_src.startswith("catalog:"):
            raise InputError("a certificate is required unless the spec is a catalog URI")
        cert = _catalog(spec_src, degree)[1]
    elif cert_src.startswith("catalog:"):
        cert = _catalog(cert_src, degree)[1]
    else:
        try:
            cert = certificate_from_json(_read_json(cert_src))
        except FormatError as exc:
            raise InputError(f"{cert_src}: {exc}") from None
    if degree is not None:
        cert.cfg = RewriteConfig(degree, cert.cfg.max_passes, cert.cfg.max_rules, cert.cfg.monomial_order)
    return cert


def _emit(args, payload: dict, text: str) -> None:
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))
    out = dumps(payload) if args.format == "json" else text
    sys.stdout.write(out if out.endswith("\n") else out + "\n")


def verify_exit_code(status: str) -> int:
    return {PROVEN: EXIT_OK, REFUTED: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[status]


# commands

def cmd_validate(args) -> int:
    spec = load_spec(args.spec)
    rep = validate(spec)
    _emit(args, {"command": "validate", "input": args.spec, **rep.to_json()}, rep.summary())
    if not rep.check("shapes").passed:
        return EXIT_INPUT
    return EXIT_OK if rep.ok else EXIT_FAIL


def _require_valid(spec: FiltrationSpec) -> None:
    rep = validate(spec)
    if not rep.ok:
        bad = ", ".join(c.name for c in rep.failures())
        raise InputError(f"spec fails validation: {bad}")


def cmd_present(args) -> int:
    spec = load_spec(args.spec)
    rep = validate(spec)
    if not rep.ok:
        _emit(args, {"command": "present", "input": args.spec, **rep.to_json()}, rep.summary())
        return EXIT_INPUT if not rep.check("shapes").passed else EXIT_FAIL
    pres, _ = universal_presentation(spec, RewriteConfig(args.degree or 4))
    _emit(args, {"command": "present", "input": args.spec, "presentation": presentation_to_json(pres)},
          presentation_text(pres))
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = load_spec(args.spec, args.degree)
    _require_valid(spec)
    cert = load_certificate(args.spec, args.certificate, args.degree)
    cert.check_shapes(spec)
    rep = verify_all(spec, cert)
    payload = {"command": "verify", "spec": args.spec, "certificate": args.certificate or args.spec,
               **rep.to_json()}
    _emit(args, payload, rep.summary())
    return verify_exit_code(rep.status)


def cmd_falsify(args) -> int:
    """Numeric-only pass: evaluate every axiom identity at the classical points of the target."""
    spec = load_spec(args.spec, args.degree)
    _require_valid(spec)
    cert = load_certificate(args.spec, args.certificate, args.degree)
    cert.check_shapes(spec)
    col = _Collector()
    verify_coaction(spec, cert, checker=col)
    verify_filtration_axioms(spec, cert, checker=col)
    points = presentation_points(cert.target)
    found = []
    checked = 0
    for axiom in sorted(col.polys):
        for label, poly in col.polys[axiom]:
            if not poly:
                continue
            checked += 1
            wit = falsify_in(cert.target, poly, points)
            if wit is not None:
                found.append({"axiom": axiom, "instance": label, **wit.to_json()})
    payload = {"command": "falsify", "spec": args.spec, "classical_points": len(points),
               "identities_checked": checked, "counterexamples": found}
    text = (f"{len(points)} classical points, {checked} identities, "
            f"{len(found)} counterexamples")
    for f in found[:10]:
        text += f"\n  {f['axiom']}: {f['instance']} at {f['point']}"
    _emit(args, payload, text)
    return EXIT_FAIL if found else EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = {k: CATALOG[k] for k in sorted(CATALOG)}
        text = "\n".join(f"catalog:{k:<16} {v}" for k, v in entries.items())
        _emit(args, {"command": "catalog list", "entries": entries}, text)
        return EXIT_OK
    # export
    if not args.uri or not args.outdir:
        raise InputError("catalog export needs URI and OUTDIR")
    spec, cert = _catalog(args.uri, args.degree)
    os.makedirs(args.outdir, exist_ok=True)
    paths = {"filtration": os.path.join(args.outdir, "filtration.json")}
    with open(paths["filtration"], "w", encoding="utf-8") as fh:
        fh.write(dumps(spec_to_json(spec)))
    if cert is not None:
        paths["certificate"] = os.path.join(args.outdir, "certificate.json")
        with open(paths["certificate"], "w", encoding="utf-8") as fh:
            fh.write(dumps(certificate_to_json(cert)))
    _emit(args, {"command": "catalog export", "uri": args.uri, "written": paths},
          "\n".join(f"wrote {p}" for p in paths.values()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", type=int, default=None, help="word-length bound D for completion")
    common.add_argument("--tolerance", type=float, default=None, help="numeric tolerance for relations")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled classical points")
    common.add_argument("--report", default=None, help="also write the JSON report to this path")
    common.add_argument("--format", choices=("json", "text"), default="text")

    ap = argparse.ArgumentParser(prog="qsymmod", description="Verify filtration-preserving quantum symmetries.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a filtration spec")
    p.add_argument("spec", help="filtration.json path or catalog: URI")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("present", parents=[common], help="emit the universal presentation of a spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_present)

    for name, fn, hlp in (("verify", cmd_verify, "decide every axiom for a certificate"),
                          ("falsify", cmd_falsify, "search classical points for counterexamples")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("spec")
        p.add_argument("certificate", nargs="?", default=None,
                       help="certificate.json or catalog: URI (defaults to the spec's catalog entry)")
        p.set_defaults(func=fn)

    p = sub.add_parser("catalog", parents=[common], help="list or export built-in examples")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("uri", nargs="?")
    p.add_argument("outdir", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.degree is not None and args.degree < 2:
        sys.stderr.write("error: --degree must be at least 2\n")
        return EXIT_INPUT
    saved_tol = TOLERANCES["relation"]
    if args.tolerance is not None:
        set_tolerance("relation", args.tolerance)
    set_seed(DEFAULT_SEED if args.seed is None else args.seed)
    try:
        return args.func(args)
    except (InputError, MorphismError, *INPUT_ERRORS) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    finally:
        set_tolerance("relation", saved_tol)
        set_seed(DEFAULT_SEED)


if __name__ == "__main__":
    sys.exit(main())
