"""JSON input documents: validation, conversion to objects, canonical serialization.

Cyclotomic literals may be written as
  * an integer, or a string "p/q";
  * {"root": [n, k]} for w_n^k;
  * {"terms": [[p, q, e], ...]} for the sum of (p/q) w_N^e;
  * {"sum": [literal, ...]} or {"product": [literal, ...]}.
PGL2 matrices are 2x2 lists of literals or one of the names I, A, B, C, D, E, F,
xiE, xiF, Rn, Rn^k.
"""
from __future__ import annotations

import copy
import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import jsonschema

from .cyclo import CyclotomicField, field
from .decider import SurfaceDescriptor
from .errors import ConductorInvalid, SchemaError

_LITERAL = {
    "anyOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        {"type": "object", "required": ["root"], "additionalProperties": False,
         "properties": {"root": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}}},
        {"type": "object", "required": ["terms"], "additionalProperties": False,
         "properties": {"terms": {"type": "array", "items": {
             "type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3}}}},
        {"type": "object", "required": ["sum"], "additionalProperties": False,
         "properties": {"sum": {"type": "array", "items": {"$ref": "#/$defs/literal"}}}},
        {"type": "object", "required": ["product"], "additionalProperties": False,
         "properties": {"product": {"type": "array", "items": {"$ref": "#/$defs/literal"}}}},
    ]
}

_MATRIX2 = {
    "anyOf": [
        {"type": "string"},
        {"type": "array", "minItems": 2, "maxItems": 2,
         "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"$ref": "#/$defs/literal"}}},
    ]
}

_SURFACE_KINDS = ["p2", "quadric", "hirzebruch", "dp5", "dp6", "conic_bundle", "del_pezzo_low"]

DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["conductor", "surface"],
    "additionalProperties": False,
    "$defs": {"literal": _LITERAL, "matrix2": _MATRIX2},
    "properties": {
        "conductor": {"type": "integer"},
        "surface": {
            "type": "object",
            "required": ["kind"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": _SURFACE_KINDS},
                "n": {"type": "integer"},
                "k2": {"type": "integer"},
            },
        },
        "generators": {"type": "array"},
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"cap": {"type": "integer", "minimum": 1}, "seed": {"type": "integer"}},
        },
        "expect": {"type": "object"},
        "name": {"type": "string"},
    },
}

_GENERATOR_SCHEMAS = {
    "p2": {"type": "array", "minItems": 3, "maxItems": 3,
           "items": {"type": "array", "minItems": 3, "maxItems": 3, "items": {"$ref": "#/$defs/literal"}}},
    "hirzebruch": {"$ref": "#/$defs/matrix2"},
    "quadric": {"type": "object", "required": ["m", "n"], "additionalProperties": False,
                "properties": {"m": {"$ref": "#/$defs/matrix2"}, "n": {"$ref": "#/$defs/matrix2"},
                               "swap": {"type": "boolean"}}},
    "dp6": {"type": "object", "additionalProperties": False,
            "properties": {"torus": {"type": "array", "minItems": 3, "maxItems": 3,
                                     "items": {"$ref": "#/$defs/literal"}},
                           "word": {"type": "string", "pattern": "^[rs]*$"}}},
    "dp5": {"type": "array", "minItems": 5, "maxItems": 5, "items": {"type": "integer"}},
}

_MAP_SCHEMA = {
    "type": "array", "minItems": 3, "maxItems": 3,
    "items": {"type": "array", "items": {
        "type": "array", "minItems": 2, "maxItems": 2,
        "prefixItems": [{"$ref": "#/$defs/literal"},
                        {"type": "array", "minItems": 3, "maxItems": 3,
                         "items": {"type": "integer", "minimum": 0}}]}}}

MAP_DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["conductor", "f", "conjugator", "target"],
    "additionalProperties": False,
    "$defs": {"literal": _LITERAL},
    "properties": {
        "conductor": {"type": "integer"},
        "f": _MAP_SCHEMA, "conjugator": _MAP_SCHEMA, "target": _MAP_SCHEMA,
        "options": {"type": "object", "additionalProperties": False,
                    "properties": {"trials": {"type": "integer", "minimum": 1},
                                   "seed": {"type": "integer"}}},
        "name": {"type": "string"},
    },
}


def _path_str(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "$"


def _validate(instance, schema, prefix=()):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(instance), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = max(errors, key=lambda e: len(e.absolute_path))
        raise SchemaError(_path_str(list(prefix) + list(err.absolute_path)), err.message)


def _with_defs(schema):
    return {"$defs": {"literal": _LITERAL, "matrix2": _MATRIX2}, **schema}


# -- literal conversion ----------------------------------------------------------------

def literal(fld: CyclotomicField, value, path="$"):
    if isinstance(value, bool):
        raise SchemaError(path, "booleans are not numbers")
    if isinstance(value, int):
        return fld(value)
    if isinstance(value, str):
        try:
            return fld(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(path, f"bad rational {value!r}") from exc
    if isinstance(value, dict):
        if "root" in value:
            n, k = value["root"]
            if n < 1:
                raise SchemaError(path, "root order must be positive")
            try:
                return fld.root_of_unity(n, k % n)
            except Exception as exc:
                raise ConductorInvalid(path, f"w_{n} is not in Q(w_{fld.conductor})") from exc
        if "terms" in value:
            for i, (p, q, e) in enumerate(value["terms"]):
                if q == 0:
                    raise SchemaError(f"{path}.terms[{i}]", "zero denominator")
            return fld.canonicalize([(p, q, e) for p, q, e in value["terms"]])
        if "sum" in value:
            out = fld.zero
            for i, v in enumerate(value["sum"]):
                out = out + literal(fld, v, f"{path}.sum[{i}]")
            return out
        if "product" in value:
            out = fld.one
            for i, v in enumerate(value["product"]):
                out = out * literal(fld, v, f"{path}.product[{i}]")
            return out
    raise SchemaError(path, f"not a cyclotomic literal: {value!r}")


_NAMED = re.compile(r"^R(\d+)(?:\^(-?\d+))?$")


def matrix2(fld: CyclotomicField, value, path="$"):
    from .moebius import MoebiusMap, R, standard_matrices
    if isinstance(value, str):
        m = _NAMED.match(value)
        if m:
            n, k = int(m.group(1)), int(m.group(2) or 1)
            if n < 1:
                raise SchemaError(path, "R needs a positive order")
            try:
                return R(fld, n, k % n)
            except Exception as exc:
                raise ConductorInvalid(path, f"R{n} needs w_{n}, not in Q(w_{fld.conductor})") from exc
        if value in ("xiE", "xiF"):
            if fld.conductor % 5:
                raise ConductorInvalid(path, "xiE/xiF need a conductor divisible by 5")
            from .quadric import outer_involution_images
            xe, xf = outer_involution_images(fld)
            return xe if value == "xiE" else xf
        mats = standard_matrices(fld)
        if value not in mats:
            if value in ("C", "D", "E", "F"):
                raise ConductorInvalid(path, f"matrix {value} is not defined over Q(w_{fld.conductor})")
            raise SchemaError(path, f"unknown matrix name {value!r}")
        return mats[value]
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(r, list) and len(r) == 2 for r in value)):
        raise SchemaError(path, "expected a 2x2 matrix")
    entries = [literal(fld, value[i][j], f"{path}[{i}][{j}]") for i in range(2) for j in range(2)]
    try:
        return MoebiusMap(entries, fld)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


# -- documents -----------------------------------------------------------------------------

_KIND_TO_DESCRIPTOR = {"p2": "P2", "quadric": "Quadric", "hirzebruch": "Hirzebruch", "dp5": "DP5",
                       "dp6": "DP6", "conic_bundle": "ConicBundle", "del_pezzo_low": "DelPezzoLow"}


@dataclass
class InputDocument:
    conductor: int
    surface: SurfaceDescriptor
    generators: list                      # validated JSON, as written
    options: dict = dc_field(default_factory=dict)
    raw: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def field(self) -> CyclotomicField:
        return field(self.conductor)

    @property
    def cap(self):
        return self.options.get("cap")

    @property
    def seed(self) -> int:
        return self.options.get("seed", 0)

    def build_generators(self):
        return build_generators(self.surface, self.generators, self.field)

    def to_json(self) -> dict:
        kind = next(k for k, v in _KIND_TO_DESCRIPTOR.items() if v == self.surface.kind)
        surf = {"kind": kind}
        if self.surface.kind == "Hirzebruch":
            surf["n"] = self.surface.param
        elif self.surface.param is not None:
            surf["k2"] = self.surface.param
        out = {"conductor": self.conductor, "surface": surf, "generators": copy.deepcopy(self.generators)}
        if self.options:
            out["options"] = dict(self.options)
        return out


def _check_conductor(N, path="conductor"):
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise ConductorInvalid(path, "conductor must be a positive integer")


def parse_document(obj) -> InputDocument:
    if not isinstance(obj, dict):
        raise SchemaError("$", "document must be a JSON object")
    if "conductor" in obj:
        _check_conductor(obj["conductor"])
    _validate(obj, DOCUMENT_SCHEMA)
    surf = obj["surface"]
    kind = surf["kind"]
    if kind == "hirzebruch":
        if "n" not in surf:
            raise SchemaError("surface.n", "Hirzebruch surfaces need n")
        if surf["n"] < 1:
            raise SchemaError("surface.n", "n must be >= 1 (F_0 is the quadric)")
        param = surf["n"]
    elif kind in ("conic_bundle", "del_pezzo_low"):
        if "k2" not in surf:
            raise SchemaError("surface.k2", f"{kind} needs k2")
        param = surf["k2"]
        if kind == "conic_bundle" and param > 8:
            raise SchemaError("surface.k2", "a conic bundle has K^2 <= 8")
    else:
        extra = set(surf) - {"kind"}
        if extra:
            raise SchemaError(f"surface.{sorted(extra)[0]}", f"not used for {kind}")
        param = None
    descriptor = SurfaceDescriptor(_KIND_TO_DESCRIPTOR[kind], param)
    gens = obj.get("generators", [])
    if kind in _GENERATOR_SCHEMAS:
        gschema = _with_defs(_GENERATOR_SCHEMAS[kind])
        for i, g in enumerate(gens):
            _validate(g, gschema, ("generators", i))
    elif gens:
        raise SchemaError("generators", f"{kind} documents take no generators")
    if kind in ("quadric", "dp5", "dp6", "hirzebruch") and not gens:
        raise SchemaError("generators", f"{kind} needs at least one generator")
    doc = InputDocument(obj["conductor"], descriptor, copy.deepcopy(gens), dict(obj.get("options", {})), obj)
    doc.build_generators()          # semantic validation of every literal
    return doc


def parse_input(text: str) -> InputDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc
    return parse_document(obj)


def serialize(doc: InputDocument) -> str:
    return json.dumps(doc.to_json(), sort_keys=True, ensure_ascii=False, indent=2)


def build_generators(surface: SurfaceDescriptor, gens, fld: CyclotomicField):
    from .delpezzo import DP6Aut, hex_normal_forms, hex_word_reduce
    from .delpezzo import _canon_torus
    from .quadric import QuadricAut
    kind = surface.kind
    out = []
    for i, g in enumerate(gens):
        path = f"generators[{i}]"
        if kind == "P2":
            rows = [[literal(fld, g[r][c], f"{path}[{r}][{c}]") for c in range(3)] for r in range(3)]
            from .linalg import det
            if det(rows).is_zero():
                raise SchemaError(path, "singular matrix")
            out.append(rows)
        elif kind == "Hirzebruch":
            out.append(matrix2(fld, g, path))
        elif kind == "Quadric":
            out.append(QuadricAut(matrix2(fld, g["m"], f"{path}.m"), matrix2(fld, g["n"], f"{path}.n"),
                                  bool(g.get("swap", False))))
        elif kind == "DP6":
            torus = g.get("torus", [1, 1, 1])
            t = tuple(literal(fld, v, f"{path}.torus[{j}]") for j, v in enumerate(torus))
            if any(x.is_zero() for x in t):
                raise SchemaError(f"{path}.torus", "torus coordinates must be nonzero")
            perm, flip = hex_normal_forms()[hex_word_reduce(g.get("word", ""))]
            out.append(DP6Aut(_canon_torus(t), perm, flip))
        elif kind == "DP5":
            if sorted(g) != [1, 2, 3, 4, 5]:
                raise SchemaError(path, f"{g} is not a permutation of 1..5")
            out.append(list(g))
    return out


# -- map documents -----------------------------------------------------------------------------

@dataclass
class MapDocument:
    conductor: int
    f: list
    conjugator: list
    target: list
    options: dict = dc_field(default_factory=dict)

    def maps(self):
        from .p2maps import P2RationalMap
        fld = field(self.conductor)
        out = []
        for name in ("f", "conjugator", "target"):
            comps = []
            for ci, comp in enumerate(getattr(self, name)):
                comps.append([(literal(fld, coef, f"{name}[{ci}][{ti}][0]"), tuple(exps))
                              for ti, (coef, exps) in enumerate(comp)])
            try:
                out.append(P2RationalMap.from_terms(fld, comps))
            except ValueError as exc:
                raise SchemaError(name, str(exc)) from exc
        return out


def parse_map_document(obj) -> MapDocument:
    if not isinstance(obj, dict):
        raise SchemaError("$", "document must be a JSON object")
    if "conductor" in obj:
        _check_conductor(obj["conductor"])
    _validate(obj, MAP_DOCUMENT_SCHEMA)
    doc = MapDocument(obj["conductor"], obj["f"], obj["conjugator"], obj["target"], dict(obj.get("options", {})))
    doc.maps()
    return doc


def map_document_from(f, c, target, conductor: int, trials: int = 50, seed: int = 0) -> dict:
    def lit(x):
        return {"terms": [[p, q, e] for p, q, e in _terms(x)]} if not x.is_rational() else (
            int(x.rational()) if x.rational().denominator == 1 else str(x.rational()))
    return {
        "conductor": conductor,
        "f": [[[lit(cf), list(m)] for cf, m in comp] for comp in f.terms()],
        "conjugator": [[[lit(cf), list(m)] for cf, m in comp] for comp in c.terms()],
        "target": [[[lit(cf), list(m)] for cf, m in comp] for comp in target.terms()],
        "options": {"trials": trials, "seed": seed},
    }


def _terms(x):
    from .cyclo import to_terms
    return to_terms(x)
