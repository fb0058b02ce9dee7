"""JSON input files and the bundled catalog.

Schemas (all coefficients are exact: JSON integers or strings ``"p"``/``"p/q"``)::

    {"kind": "algebra", "basis": ["a", "b"], "table": {"a,a": [["1", "b"]]}}
    {"kind": "algebra", "basis": ["a", "b"], "table": {"a,a": {"b": "1"}}}
    {"kind": "dialgebra", "basis": [...], "left": {...}, "right": {...}}
    {"kind": "conformal", "generators": ["v"], "table": {"v,v": [["T + 2*L", "v"]]}}
    {"kind": "identity", "degree": 3, "terms": [{"coeff": "1", "tree": "(x1 (x2 x3))"}]}
    {"kind": "module-action", "dim": 1, "action": {"a": [["0"]], "b": [["0"]]}}

Optional top-level fields ``name``, ``source`` and ``tags`` are kept as metadata.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Dict, List, Tuple

from .exactcore import format_poly, format_rational, parse_poly, parse_rational

KINDS = ("algebra", "dialgebra", "conformal", "identity", "module-action")
CATALOG_ENV = "DIACONF_CATALOG"

if TYPE_CHECKING:
    from .constructions import BarModule


class SpecError(ValueError):
    """Invalid spec file; the message names the offending field."""


@dataclass
class SpecFile:
    kind: str
    payload: dict
    name: str | None = None
    source: str | None = None
    tags: Tuple[str, ...] = ()
    path: str | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.name is not None:
            out["name"] = self.name
        if self.source is not None:
            out["source"] = self.source
        if self.tags:
            out["tags"] = list(self.tags)
        out.update(self.payload)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    def build(self):
        """The mathematical object this file describes."""
        return build(self)


def _rat(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"{where}: {exc}") from None


def _names(values, where: str) -> List[str]:
    if not isinstance(values, list) or not all(isinstance(v, str) and v for v in values):
        raise SpecError(f"{where}: expected a list of nonempty strings")
    if len(set(values)) != len(values):
        raise SpecError(f"{where}: duplicate names")
    if any("," in v for v in values):
        raise SpecError(f"{where}: names may not contain ','")
    return list(values)


def _pair(key: str, names: List[str], where: str) -> Tuple[str, str]:
    parts = [p.strip() for p in key.split(",")]
    if len(parts) != 2:
        raise SpecError(f"{where}[{key!r}]: key must be 'x,y'")
    for p in parts:
        if p not in names:
            raise SpecError(f"{where}[{key!r}]: unknown basis element {p!r}")
    return parts[0], parts[1]


def _table(raw, names: List[str], where: str) -> Dict[str, List[List[str]]]:
    if not isinstance(raw, dict):
        raise SpecError(f"{where}: expected an object")
    out = {}
    for key in raw:
        x, y = _pair(key, names, where)
        terms = raw[key]
        if isinstance(terms, dict):  # {"b": "1"} shorthand
            terms = [[c, b] for b, c in terms.items()]
        if not isinstance(terms, list):
            raise SpecError(f"{where}[{key!r}]: expected a list of [coeff, basis] pairs or a {{basis: coeff}} object")
        acc: Dict[str, Fraction] = {}
        for t, term in enumerate(terms):
            if not (isinstance(term, list) and len(term) == 2):
                raise SpecError(f"{where}[{key!r}][{t}]: expected [coeff, basis]")
            c = _rat(term[0], f"{where}[{key!r}][{t}][0]")
            if term[1] not in names:
                raise SpecError(f"{where}[{key!r}][{t}][1]: unknown basis element {term[1]!r}")
            acc[term[1]] = acc.get(term[1], 0) + c
        row = [[format_rational(acc[n]), n] for n in names if acc.get(n)]
        if row:
            out[f"{x},{y}"] = row
    return dict(sorted(out.items(), key=lambda kv: tuple(names.index(p) for p in kv[0].split(","))))


def _conf_table(raw, names: List[str], where: str) -> Dict[str, List[List[str]]]:
    if not isinstance(raw, dict):
        raise SpecError(f"{where}: expected an object")
    out = {}
    for key in raw:
        x, y = _pair(key, names, where)
        terms = raw[key]
        if not isinstance(terms, list):
            raise SpecError(f"{where}[{key!r}]: expected a list of [poly, generator] pairs")
        acc = {}
        for t, term in enumerate(terms):
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[0], str)):
                raise SpecError(f"{where}[{key!r}][{t}]: expected [poly, generator]")
            if term[1] not in names:
                raise SpecError(f"{where}[{key!r}][{t}][1]: unknown generator {term[1]!r}")
            try:
                p = parse_poly(term[0])
            except ValueError as exc:
                raise SpecError(f"{where}[{key!r}][{t}][0]: {exc}") from None
            extra = p.symbols() - {"T", "L"}
            if extra:
                raise SpecError(f"{where}[{key!r}][{t}][0]: only T and L may appear, found {sorted(extra)}")
            acc[term[1]] = acc.get(term[1], 0) + p
        row = [[format_poly(acc[n]), n] for n in names if n in acc and acc[n]]
        if row:
            out[f"{x},{y}"] = row
    return dict(sorted(out.items(), key=lambda kv: tuple(names.index(p) for p in kv[0].split(","))))


def _matrix(raw, dim: int, where: str) -> List[List[str]]:
    if not isinstance(raw, list) or len(raw) != dim:
        raise SpecError(f"{where}: expected {dim} rows")
    out = []
    for r, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise SpecError(f"{where}[{r}]: expected {dim} entries")
        out.append([format_rational(_rat(x, f"{where}[{r}][{c}]")) for c, x in enumerate(row)])
    return out


def validate(data) -> SpecFile:
    """Validate a decoded JSON document and normalize it."""
    if not isinstance(data, dict):
        raise SpecError("top level: expected an object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise SpecError(f"kind: unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    meta_keys = {"kind", "name", "source", "tags"}
    name = data.get("name")
    source = data.get("source")
    tags = data.get("tags", [])
    if name is not None and not isinstance(name, str):
        raise SpecError("name: expected a string")
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise SpecError("tags: expected a list of strings")
    body = {k: v for k, v in data.items() if k not in meta_keys}
    if kind == "algebra":
        allowed = {"basis", "table"}
        names = _names(body.get("basis"), "basis")
        payload = {"basis": names, "table": _table(body.get("table", {}), names, "table")}
    elif kind == "dialgebra":
        allowed = {"basis", "left", "right"}
        names = _names(body.get("basis"), "basis")
        payload = {"basis": names, "left": _table(body.get("left", {}), names, "left"),
                   "right": _table(body.get("right", {}), names, "right")}
    elif kind == "conformal":
        allowed = {"generators", "table"}
        names = _names(body.get("generators"), "generators")
        payload = {"generators": names, "table": _conf_table(body.get("table", {}), names, "table")}
    elif kind == "identity":
        from .identities import parse_tree, leaves

        allowed = {"degree", "terms"}
        degree = body.get("degree")
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
            raise SpecError("degree: expected a positive integer")
        terms = body.get("terms")
        if not isinstance(terms, list):
            raise SpecError("terms: expected a list")
        norm = []
        for t, term in enumerate(terms):
            if not isinstance(term, dict) or set(term) != {"coeff", "tree"}:
                raise SpecError(f"terms[{t}]: expected {{'coeff', 'tree'}}")
            c = _rat(term["coeff"], f"terms[{t}].coeff")
            try:
                tree = parse_tree(term["tree"])
            except (ValueError, AttributeError) as exc:
                raise SpecError(f"terms[{t}].tree: {exc}") from None
            if len(leaves(tree)) != degree:
                raise SpecError(f"terms[{t}].tree: has {len(leaves(tree))} leaves, degree is {degree}")
            norm.append({"coeff": format_rational(c), "tree": term["tree"]})
        payload = {"degree": degree, "terms": norm}
    else:
        allowed = {"dim", "action", "algebra"}
        dim = body.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise SpecError("dim: expected a positive integer")
        action = body.get("action")
        if not isinstance(action, dict):
            raise SpecError("action: expected an object mapping basis names to matrices")
        payload = {"dim": dim, "action": {k: _matrix(v, dim, f"action[{k!r}]") for k, v in action.items()}}
        if "algebra" in body:
            payload["algebra"] = body["algebra"]
    extra = set(body) - allowed
    if extra:
        raise SpecError(f"{sorted(extra)[0]}: unexpected field for kind {kind!r}")
    return SpecFile(kind, payload, name, source, tuple(tags))


def loads(text: str, path: str | None = None) -> SpecFile:
    where = path or "<input>"
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        spec = validate(data)
    except SpecError as exc:
        raise SpecError(f"{where}: {exc}") from None
    spec.path = path
    return spec


def catalog_dir() -> Path:
    env = os.environ.get(CATALOG_ENV)
    return Path(env) if env else Path(__file__).with_name("catalog")


def catalog_names() -> List[str]:
    return sorted(p.stem for p in catalog_dir().glob("*.json"))


def resolve(ref: str) -> Path:
    if ref.startswith("catalog:"):
        name = ref[len("catalog:"):]
        path = catalog_dir() / f"{name}.json"
        if not path.is_file():
            raise SpecError(f"catalog entry {name!r} not found in {catalog_dir()}")
        return path
    path = Path(ref)
    if not path.is_file():
        raise SpecError(f"{ref}: no such file")
    return path


def parse_spec(ref: str | os.PathLike) -> SpecFile:
    """Read and validate a spec from a path or a ``catalog:<name>`` reference."""
    path = resolve(str(ref))
    spec = loads(path.read_text(encoding="utf-8"), str(ref))
    if spec.name is None and str(ref).startswith("catalog:"):
        spec.name = path.stem
    return spec


def load_catalog(kind: str | None = None, tag: str | None = None) -> List[SpecFile]:
    out = []
    for name in catalog_names():
        spec = parse_spec(f"catalog:{name}")
        if (kind is None or spec.kind == kind) and (tag is None or tag in spec.tags):
            out.append(spec)
    return out


# -- building objects -------------------------------------------------------------

def _compile_table(table: dict, names: List[str]) -> dict:
    idx = {n: i for i, n in enumerate(names)}
    out = {}
    for key, terms in table.items():
        x, y = key.split(",")
        out[(idx[x], idx[y])] = {idx[b]: parse_rational(c) for c, b in terms}
    return out


def build(spec: SpecFile):
    from .conformal import TableConformal
    from .dialgebra import Algebra, Dialgebra

    p = spec.payload
    if spec.kind == "algebra":
        return Algebra(p["basis"], _compile_table(p["table"], p["basis"]), name=spec.name)
    if spec.kind == "dialgebra":
        names = p["basis"]
        return Dialgebra(names, _compile_table(p["left"], names), _compile_table(p["right"], names), name=spec.name)
    if spec.kind == "conformal":
        names = p["generators"]
        idx = {n: i for i, n in enumerate(names)}
        table = {}
        for key, terms in p["table"].items():
            x, y = key.split(",")
            row = [0] * len(names)
            for poly_text, g in terms:
                row[idx[g]] = parse_poly(poly_text)
            table[(idx[x], idx[y])] = row
        return TableConformal(names, table, name=spec.name or "conformal")
    if spec.kind == "identity":
        from .identities import parse_tree, poly_from

        return poly_from((parse_rational(t["coeff"]), parse_tree(t["tree"])) for t in p["terms"])
    return p  # module-action payloads are bound to an algebra by the caller


def module_from_spec(spec: SpecFile, L) -> "BarModule":
    from .constructions import BarModule

    if spec.kind != "module-action":
        raise SpecError(f"expected a module-action spec, got {spec.kind!r}")
    p = spec.payload
    missing = [n for n in L.names if n not in p["action"]]
    if missing:
        raise SpecError(f"action: no matrix for basis element {missing[0]!r}")
    unknown = [n for n in p["action"] if n not in L.names]
    if unknown:
        raise SpecError(f"action[{unknown[0]!r}]: not a basis element of {L.name or 'the algebra'}")
    act = [[[parse_rational(x) for x in row] for row in p["action"][n]] for n in L.names]
    return BarModule(p["dim"], act, spec.name or "V")


def spec_from_object(obj, name: str | None = None, tags=()) -> SpecFile:
    """Inverse of :func:`build` for algebras and dialgebras."""
    from .dialgebra import Algebra, Dialgebra

    def table(t, names):
        out = {}
        for (i, j), entries in sorted(t.items()):
            out[f"{names[i]},{names[j]}"] = [[format_rational(c), names[k]] for k, c in entries]
        return out

    if isinstance(obj, Algebra):
        data = {"kind": "algebra", "basis": list(obj.names), "table": table(obj.table, obj.names)}
    elif isinstance(obj, Dialgebra):
        data = {"kind": "dialgebra", "basis": list(obj.names), "left": table(obj.left, obj.names),
                "right": table(obj.right, obj.names)}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    if name or obj.name:
        data["name"] = name or obj.name
    if tags:
        data["tags"] = list(tags)
    return validate(data)
