"""JSON encoding of series, derivations, differential polynomials and cuts.

Residue elements travel as strings ("5/6", "(x^2+1)/(x-2)"), exponents as
integer lists, and an exact frontier as the string "inf".
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .cuts import CutApprox, validate_cut
from .diffpoly import DiffPoly
from .errors import ParseError, ValdiffError
from .ordgroup import INF, GroupVector
from .residue import QQ_TRIVIAL, ResidueField, field_by_name
from .series import DerivationSpec, Series


@dataclass(frozen=True)
class Workspace:
    rank: int
    deriv: DerivationSpec
    field: ResidueField

    @classmethod
    def default(cls):
        return cls(1, DerivationSpec.euler(1), QQ_TRIVIAL)


def _fail(what, detail):
    raise ParseError(f"malformed {what}: {detail}")


def _exp(obj, rank, what):
    if not isinstance(obj, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        _fail(what, f"exponent must be a list of integers, got {obj!r}")
    if rank is not None and len(obj) != rank:
        _fail(what, f"exponent {obj} has rank {len(obj)}, expected {rank}")
    return GroupVector(obj)


def _elem(field, text, what):
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        _fail(what, f"coefficient must be a string, got {text!r}")
    try:
        return field.parse(str(text))
    except ValdiffError:
        raise
    except Exception as e:  # sympy and Fraction raise assorted types
        raise ParseError(f"malformed {what}: cannot parse coefficient {text!r}") from e


# -- encoders ------------------------------------------------------------------


def exp_to_json(e):
    return "inf" if e is INF else [int(x) for x in e]


def series_to_json(a: Series) -> dict:
    terms = [{"exp": exp_to_json(e), "coef": a.field.format(c)} for e, c in sorted(a.terms.items())]
    return {"terms": terms, "frontier": exp_to_json(a.frontier)}


def deriv_to_json(D: DerivationSpec) -> dict:
    return {"rho": exp_to_json(D.rho), "weights": [str(w) for w in D.weights],
            "coefDerivation": D.coef_derivation}


def poly_to_json(P: DiffPoly) -> dict:
    r = P.order()
    monos = []
    for key in sorted(P.terms, key=lambda k: (sum(k), tuple(k) + (0,) * (r + 1 - len(k)))):
        exps = list(key) + [0] * (r + 1 - len(key))
        monos.append({"exps": exps, "coef": series_to_json(P.terms[key])})
    return {"order": r, "monomials": monos}


def cut_to_json(cut: CutApprox) -> dict:
    return {"points": [series_to_json(a) for a in cut.points]}


def workspace_to_json(ws: Workspace) -> dict:
    return {"rank": ws.rank, "field": ws.field.name, "derivation": deriv_to_json(ws.deriv)}


# -- decoders ------------------------------------------------------------------


def _obj(obj, what, keys):
    if not isinstance(obj, dict):
        _fail(what, f"expected an object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        _fail(what, f"missing keys {missing}")


def series_from_json(obj, field: ResidueField = QQ_TRIVIAL, rank=None) -> Series:
    if isinstance(obj, (str, int)) and not isinstance(obj, bool):
        if rank is None:
            _fail("series", "a bare constant needs a known rank")
        return Series.constant(_elem(field, obj, "series"), rank, field)
    _obj(obj, "series", ["terms"])
    if not isinstance(obj["terms"], list):
        _fail("series", "terms must be a list")
    frontier = obj.get("frontier", "inf")
    if frontier == "inf":
        frontier = INF
    else:
        frontier = _exp(frontier, rank, "series")
        rank = len(frontier)
    terms = {}
    for t in obj["terms"]:
        _obj(t, "series term", ["exp", "coef"])
        e = _exp(t["exp"], rank, "series")
        rank = len(e)
        if e in terms:
            _fail("series", f"repeated exponent {t['exp']}")
        terms[e] = _elem(field, t["coef"], "series")
    if rank is None:
        _fail("series", "cannot infer the rank of an exact zero")
    return Series(terms, frontier, field, rank)


def deriv_from_json(obj) -> DerivationSpec:
    _obj(obj, "derivation", ["rho", "weights"])
    rho = _exp(obj["rho"], None, "derivation")
    if not isinstance(obj["weights"], list):
        _fail("derivation", "weights must be a list")
    weights = [_elem(QQ_TRIVIAL, w, "derivation") for w in obj["weights"]]
    try:
        return DerivationSpec(rho, tuple(weights), obj.get("coefDerivation", "trivial"))
    except ValdiffError:
        raise
    except ValueError as e:
        raise ParseError(f"malformed derivation: {e}") from e


def poly_from_json(obj, ws: Workspace) -> DiffPoly:
    _obj(obj, "polynomial", ["monomials"])
    order = obj.get("order")
    terms = {}
    for m in obj["monomials"]:
        _obj(m, "monomial", ["exps", "coef"])
        exps = m["exps"]
        if not isinstance(exps, list) or not all(isinstance(x, int) and x >= 0 for x in exps):
            _fail("polynomial", f"exps must be nonnegative integers, got {exps!r}")
        if order is not None and len(exps) != order + 1:
            _fail("polynomial", f"exps {exps} do not match order {order}")
        key = tuple(exps)
        c = series_from_json(m["coef"], ws.field, ws.rank)
        terms[key] = terms[key] + c if key in terms else c
    return DiffPoly(terms, ws.deriv, ws.field)


def cut_from_json(obj, ws: Workspace) -> CutApprox:
    _obj(obj, "cut", ["points"])
    if not isinstance(obj["points"], list):
        _fail("cut", "points must be a list")
    return validate_cut(series_from_json(p, ws.field, ws.rank) for p in obj["points"])


def workspace_from_json(obj) -> Workspace:
    _obj(obj, "config", [])
    rank = obj.get("rank", 1)
    if not isinstance(rank, int) or rank < 1:
        _fail("config", f"rank must be a positive integer, got {rank!r}")
    try:
        field = field_by_name(obj.get("field", "Q"))
    except (KeyError, ValueError) as e:
        raise ParseError(f"malformed config: {e}") from e
    if "derivation" in obj:
        deriv = deriv_from_json(obj["derivation"])
        if deriv.rank != rank:
            _fail("config", f"derivation rank {deriv.rank} differs from rank {rank}")
    else:
        deriv = DerivationSpec.euler(rank)
    return Workspace(rank, deriv, field)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def parse_exp(text: str, rank=None) -> GroupVector:
    """'3' or '0,-1' or '[0,-1]' -> GroupVector."""
    raw = text.strip().strip("[]()")
    try:
        e = GroupVector(int(x) for x in raw.split(",") if x.strip())
    except ValueError as err:
        raise ParseError(f"malformed exponent {text!r}") from err
    if not e or (rank is not None and len(e) != rank):
        raise ParseError(f"exponent {text!r} does not have rank {rank}")
    return e
