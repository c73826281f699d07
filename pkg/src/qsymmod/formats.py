"""JSON forms of specs, presentations, certificates and reports.

Scalars are {"re": "p/q", "im": "p/q"}; undefined (truncated) products are
null.  ``dumps`` is canonical: parse followed by dumps reproduces the bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .arith import Matrix, Scalar
from .coaction import CoactionCertificate
from .filtration import AlgebraData, FiltrationSpec
from .ncalg import Family, NcPoly, ParseError, Presentation, parse_generator, parse_poly
from .rewrite import RewriteConfig

FILTRATION_FORMAT = "filtration/1"
CERTIFICATE_FORMAT = "certificate/1"
PRESENTATION_FORMAT = "presentation/1"


class FormatError(ValueError):
    def __init__(self, msg: str, path: str = "$"):
        super().__init__(f"{path}: {msg}")
        self.path = path


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def load_json_text(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})",
                          source) from None


# scalars and tensors

def scalar_to_json(x: Scalar) -> dict:
    return {"re": str(x.re), "im": str(x.im)}


def scalar_from_json(obj: Any, path: str) -> Scalar:
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        try:
            return Scalar(Fraction(obj))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad rational {obj!r}", path) from None
    if not isinstance(obj, dict) or set(obj) - {"re", "im"}:
        raise FormatError("scalar must be an object with 're' and 'im'", path)
    try:
        return Scalar(Fraction(str(obj.get("re", "0"))), Fraction(str(obj.get("im", "0"))))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational in {obj!r}", path) from None


def _vec_to_json(v) -> Any:
    return None if v is None else [scalar_to_json(x) for x in v]


def _vec_from_json(obj: Any, path: str, allow_null: bool = False):
    if obj is None and allow_null:
        return None
    if not isinstance(obj, list):
        raise FormatError("expected an array of scalars", path)
    return tuple(scalar_from_json(x, f"{path}[{i}]") for i, x in enumerate(obj))


def matrix_to_json(m: Matrix) -> list:
    return [[scalar_to_json(x) for x in row] for row in m.tolist()]


def matrix_from_json(obj: Any, path: str) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise FormatError("expected a non-empty array of rows", path)
    rows = [[scalar_from_json(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)]
    if len({len(r) for r in rows}) != 1:
        raise FormatError("ragged matrix", path)
    return Matrix.from_rows(rows)


def _rank3_to_json(t) -> list:
    return [[_vec_to_json(v) for v in row] for row in t]


def _rank3_from_json(obj: Any, path: str, allow_null: bool) -> tuple:
    if not isinstance(obj, list):
        raise FormatError("expected a nested array", path)
    out = []
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise FormatError("expected an array", f"{path}[{i}]")
        out.append(tuple(_vec_from_json(v, f"{path}[{i}][{j}]", allow_null) for j, v in enumerate(row)))
    return tuple(out)


def _req(obj: dict, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise FormatError("expected an object", path)
    if key not in obj:
        raise FormatError(f"missing field {key!r}", path)
    return obj[key]


# filtration specs

def spec_to_json(spec: FiltrationSpec) -> dict:
    A = spec.algebra
    return {
        "format": FILTRATION_FORMAT,
        "name": spec.name,
        "algebra": {
            "dim": A.dim,
            "labels": list(A.labels) if A.labels is not None else None,
            "struct_consts": _rank3_to_json(A.struct_consts),
            "star_matrix": matrix_to_json(A.star_matrix),
            "unit_vector": _vec_to_json(A.unit_vector),
            "trace_vector": _vec_to_json(A.trace_vector),
        },
        "module_dim": spec.module_dim,
        "blocks": [list(b) for b in spec.blocks],
        "block_labels": list(spec.block_labels) if spec.block_labels is not None else None,
        "inner_tensor": _rank3_to_json(spec.inner_tensor),
        "action_tensor": _rank3_to_json(spec.action_tensor),
        "j_matrix": matrix_to_json(spec.j_matrix),
        "xi0": _vec_to_json(spec.xi0),
    }


def spec_from_json(obj: Any) -> FiltrationSpec:
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    fmt = obj.get("format", FILTRATION_FORMAT)
    if fmt != FILTRATION_FORMAT:
        raise FormatError(f"unsupported format {fmt!r}", "$.format")
    a = _req(obj, "algebra", "$")
    dim = _req(a, "dim", "$.algebra")
    if not isinstance(dim, int) or dim < 1:
        raise FormatError("dim must be a positive integer", "$.algebra.dim")
    labels = a.get("labels")
    alg = AlgebraData(
        dim,
        _rank3_from_json(_req(a, "struct_consts", "$.algebra"), "$.algebra.struct_consts", True),
        matrix_from_json(_req(a, "star_matrix", "$.algebra"), "$.algebra.star_matrix"),
        _vec_from_json(_req(a, "unit_vector", "$.algebra"), "$.algebra.unit_vector"),
        _vec_from_json(_req(a, "trace_vector", "$.algebra"), "$.algebra.trace_vector"),
        tuple(labels) if labels is not None else None,
    )
    nE = _req(obj, "module_dim", "$")
    if not isinstance(nE, int) or nE < 1:
        raise FormatError("module_dim must be a positive integer", "$.module_dim")
    blocks = _req(obj, "blocks", "$")
    if not isinstance(blocks, list) or not all(isinstance(b, list) and all(isinstance(x, int) for x in b)
                                               for b in blocks):
        raise FormatError("blocks must be arrays of basis indices", "$.blocks")
    bl = obj.get("block_labels")
    return FiltrationSpec(
        alg, nE, tuple(tuple(b) for b in blocks),
        _rank3_from_json(_req(obj, "inner_tensor", "$"), "$.inner_tensor", False),
        _rank3_from_json(_req(obj, "action_tensor", "$"), "$.action_tensor", True),
        matrix_from_json(_req(obj, "j_matrix", "$"), "$.j_matrix"),
        _vec_from_json(_req(obj, "xi0", "$"), "$.xi0"),
        tuple(bl) if bl is not None else None,
        obj.get("name", ""),
    )


# presentations and certificates

def presentation_to_json(p: Presentation) -> dict:
    return {
        "name": p.name,
        "families": [{"name": f.name, "rows": f.rows, "cols": f.cols, "block": f.block} for f in p.families],
        "relations": [str(r) for r in p.relations],
        "comul": {str(g): str(v) for g, v in sorted(p.comul.items(), key=lambda kv: kv[0].key)},
        "counit": {str(g): scalar_to_json(v) for g, v in sorted(p.counit.items(), key=lambda kv: kv[0].key)},
        "antipode": {str(g): str(v) for g, v in sorted(p.antipode.items(), key=lambda kv: kv[0].key)},
    }


def _poly(text: Any, path: str) -> NcPoly:
    if not isinstance(text, str):
        raise FormatError("polynomial must be a string", path)
    try:
        return parse_poly(text)
    except ParseError as exc:
        raise FormatError(str(exc), path) from None


def _gen(text: str, path: str):
    try:
        return parse_generator(text)
    except ParseError as exc:
        raise FormatError(str(exc), path) from None


def presentation_from_json(obj: Any, path: str = "$") -> Presentation:
    fams = []
    for k, f in enumerate(_req(obj, "families", path)):
        fp = f"{path}.families[{k}]"
        fams.append(Family(_req(f, "name", fp), int(_req(f, "rows", fp)), int(_req(f, "cols", fp)),
                           f.get("block")))
    rels = tuple(_poly(r, f"{path}.relations[{k}]") for k, r in enumerate(_req(obj, "relations", path)))
    comul = {_gen(g, f"{path}.comul"): _poly(v, f"{path}.comul[{g!r}]") for g, v in obj.get("comul", {}).items()}
    counit = {_gen(g, f"{path}.counit"): scalar_from_json(v, f"{path}.counit[{g!r}]")
              for g, v in obj.get("counit", {}).items()}
    antipode = {_gen(g, f"{path}.antipode"): _poly(v, f"{path}.antipode[{g!r}]")
                for g, v in obj.get("antipode", {}).items()}
    return Presentation(obj.get("name", ""), tuple(fams), rels, comul, counit, antipode)


def certificate_to_json(cert: CoactionCertificate) -> dict:
    return {
        "format": CERTIFICATE_FORMAT,
        "name": cert.name,
        "target": presentation_to_json(cert.target),
        "alpha_matrix": [[str(x) for x in row] for row in cert.alpha],
        "beta_blocks": [[[str(x) for x in row] for row in mat] for mat in cert.beta],
        "rewrite_cfg": cert.cfg.to_json(),
    }


def certificate_from_json(obj: Any) -> CoactionCertificate:
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    fmt = obj.get("format", CERTIFICATE_FORMAT)
    if fmt != CERTIFICATE_FORMAT:
        raise FormatError(f"unsupported format {fmt!r}", "$.format")
    target = presentation_from_json(_req(obj, "target", "$"), "$.target")
    alpha = [[_poly(x, f"$.alpha_matrix[{i}][{j}]") for j, x in enumerate(row)]
             for i, row in enumerate(_req(obj, "alpha_matrix", "$"))]
    beta = [[[_poly(x, f"$.beta_blocks[{b}][{i}][{j}]") for j, x in enumerate(row)]
             for i, row in enumerate(mat)] for b, mat in enumerate(_req(obj, "beta_blocks", "$"))]
    cfg = RewriteConfig.from_json(obj.get("rewrite_cfg", {}))
    return CoactionCertificate(target, alpha, beta, cfg, obj.get("name", ""))


def presentation_text(p: Presentation) -> str:
    lines = [f"# {p.name}", "families:"]
    for f in p.families:
        blk = "" if f.block is None else f"[{f.block}]"
        lines.append(f"  {f.name}{blk} {f.rows}x{f.cols}")
    lines.append(f"relations: {len(p.relations)}")
    lines += [f"  {r} = 0" for r in p.relations]
    return "\n".join(lines) + "\n"
