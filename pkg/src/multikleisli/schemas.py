"""JSON formats: ``fincat/v1``, ``prof/v1``, ``graded/v1`` and ``theory/v1``.

Loading is two-layered.  A JSON Schema pass (via ``jsonschema``) catches
shape errors; a second pass resolves ids and checks that action and
substitution tables are total within the bound.  Both raise
:class:`SchemaError` with a path into the document.  Tables that are
well-formed but wrong are left for the law checkers.

Ids inside documents are strings.  Internal values that are not strings
(tuples, arity maps) are written through :func:`label`, a compact JSON
rendering, so a dumped document reloads with the same ids.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import jsonschema

from ._order import canon_key, canon_sorted
from .doctrine import DOCTRINES, ArityMap, identity_map, index_valid, word_category
from .fincat import FinCategory, MalformedError, discrete
from .kleisli import graded_info
from .profunctor import Profunctor
from .theory.multicategory import Multicategory


class SchemaError(ValueError):
    def __init__(self, path: Sequence[Any], message: str):
        self.path = list(path)
        self.message = message
        super().__init__(f"{format_path(self.path)}: {message}")


def format_path(path: Sequence[Any]) -> str:
    out = "$"
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


# ---------------------------------------------------------------------
# id rendering


def encode(x: Any) -> Any:
    if x is None or isinstance(x, (str, int, float, bool)):
        return x
    if isinstance(x, ArityMap):
        return {"doctrine": x.doctrine, "src": encode(x.src), "dst": encode(x.dst), "index": list(x.index), "arrows": encode(x.arrows)}
    if isinstance(x, (tuple, list)):
        return [encode(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [encode(v) for v in canon_sorted(x)]
    if isinstance(x, Mapping):
        return {label(k): encode(v) for k, v in x.items()}
    return repr(x)


def label(x: Any) -> str:
    if isinstance(x, str):
        return x
    return json.dumps(encode(x), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def dumps(doc: Mapping) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------
# JSON Schemas (structure only)

_ID = {"type": "string"}
_IDS = {"type": "array", "items": _ID}
_TABLE = {"type": "object", "additionalProperties": {"type": ["string", "null"]}}

FINCAT_SCHEMA = {
    "type": "object",
    "required": ["objects", "morphisms", "identities", "compose"],
    "properties": {
        "schema": {"const": "fincat/v1"},
        "name": {"type": "string"},
        "objects": {"type": "array", "items": _ID, "uniqueItems": True},
        "morphisms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "src", "dst"],
                "properties": {"id": _ID, "src": _ID, "dst": _ID},
            },
        },
        "identities": {"type": "object", "additionalProperties": _ID},
        "compose": {"type": "array", "items": {"type": "array", "items": _ID, "minItems": 3, "maxItems": 3}},
        "partial": {"type": "boolean"},
    },
}

_SORTS = {"oneOf": [{"type": "array", "items": _ID, "uniqueItems": True}, FINCAT_SCHEMA]}

PROF_SCHEMA = {
    "type": "object",
    "required": ["source", "target", "elements"],
    "properties": {
        "schema": {"const": "prof/v1"},
        "name": {"type": "string"},
        "source": FINCAT_SCHEMA,
        "target": FINCAT_SCHEMA,
        "elements": {"type": "object", "additionalProperties": _IDS},
        "left": {"type": "object", "additionalProperties": {"type": "object", "additionalProperties": _TABLE}},
        "right": {"type": "object", "additionalProperties": {"type": "object", "additionalProperties": _TABLE}},
    },
}

_ARITY = {
    "type": "object",
    "required": ["src", "dst", "index", "arrows"],
    "properties": {
        "src": _IDS,
        "dst": _IDS,
        "index": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "arrows": _IDS,
        "doctrine": {"enum": list(DOCTRINES)},
    },
}

_COMMON_GRADED = {
    "doctrine": {"enum": list(DOCTRINES)},
    "bound": {"type": "integer", "minimum": 0},
    "sorts": _SORTS,
    "name": {"type": "string"},
    "left": {
        "type": "array",
        "items": {"type": "object", "required": ["map", "table"], "properties": {"map": _ARITY, "table": _TABLE}},
    },
    "right": {
        "type": "array",
        "items": {"type": "object", "required": ["morphism", "table"], "properties": {"morphism": _ID, "table": _TABLE}},
    },
}

GRADED_SCHEMA = {
    "type": "object",
    "required": ["doctrine", "bound", "sorts", "elements"],
    "properties": {
        "schema": {"const": "graded/v1"},
        **_COMMON_GRADED,
        "elements": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["inputs", "output", "ids"],
                "properties": {"inputs": _IDS, "output": _ID, "ids": _IDS},
            },
        },
    },
}

THEORY_SCHEMA = {
    "type": "object",
    "required": ["doctrine", "bound", "sorts", "elements", "unit", "subst"],
    "properties": {
        "schema": {"const": "theory/v1"},
        **_COMMON_GRADED,
        "elements": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "inputs", "output"],
                "properties": {"id": _ID, "inputs": _IDS, "output": _ID, "label": {"type": "string"}},
            },
        },
        "unit": {"type": "object", "additionalProperties": _ID},
        "subst": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["outer", "inner", "result"],
                "properties": {"outer": _ID, "inner": _IDS, "result": {"type": ["string", "null"]}},
            },
        },
        "normal": {"type": "boolean"},
        "partial": {"type": "boolean"},
    },
}

SCHEMAS = {"fincat/v1": FINCAT_SCHEMA, "prof/v1": PROF_SCHEMA, "graded/v1": GRADED_SCHEMA, "theory/v1": THEORY_SCHEMA}


def check_shape(doc: Any, schema_name: str) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMAS[schema_name])
    err = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if err is not None:
        raise SchemaError(list(err.absolute_path), err.message)


def schema_of(doc: Any) -> str:
    if not isinstance(doc, dict):
        raise SchemaError([], "document must be a JSON object")
    name = doc.get("schema")
    if name not in SCHEMAS:
        raise SchemaError(["schema"], f"unknown schema {name!r}; expected one of {sorted(SCHEMAS)}")
    return name


# ---------------------------------------------------------------------
# fincat/v1


def dump_fincat(c: FinCategory) -> Dict:
    mor, ident, comp = c.tables()
    return {
        "schema": "fincat/v1",
        "name": c.name or "",
        "objects": [label(x) for x in c.objects],
        "morphisms": [{"id": label(m), "src": label(s), "dst": label(d)} for m, (s, d) in _sorted_items(mor)],
        "identities": {label(x): label(i) for x, i in ident.items()},
        "compose": [[label(g), label(f), label(gf)] for (g, f), gf in _sorted_items(comp) if gf is not None],
    }


def load_fincat(doc: Mapping, path: Sequence[Any] = ()) -> FinCategory:
    path = list(path)
    mor = {}
    for i, m in enumerate(doc["morphisms"]):
        if m["id"] in mor:
            raise SchemaError(path + ["morphisms", i, "id"], f"duplicate morphism id {m['id']!r}")
        mor[m["id"]] = (m["src"], m["dst"])
    comp = {}
    for i, (g, f, gf) in enumerate(doc["compose"]):
        if (g, f) in comp and comp[(g, f)] != gf:
            raise SchemaError(path + ["compose", i], f"conflicting composite for ({g!r}, {f!r})")
        comp[(g, f)] = gf
    try:
        return FinCategory(doc["objects"], mor, doc["identities"], comp, name=doc.get("name") or None)
    except MalformedError as e:
        raise SchemaError(path, str(e)) from None


def _load_sorts(doc: Any, path: List[Any]) -> FinCategory:
    if isinstance(doc, list):
        return discrete(doc, name="sorts")
    return load_fincat(doc, path)


def _dump_sorts(c: FinCategory) -> Any:
    if c.is_discrete() and all(isinstance(x, str) for x in c.objects) and all(c.identity(x) == ("id", x) for x in c.objects):
        return [label(x) for x in c.objects]
    return dump_fincat(c)


# ---------------------------------------------------------------------
# prof/v1


def _cell_key(b, a) -> str:
    return f"{label(b)}|{label(a)}"


def dump_prof(p: Profunctor) -> Dict:
    A, B = p.source, p.target
    left: Dict[str, Dict[str, Dict[str, Optional[str]]]] = {}
    for beta in B.morphisms():
        if beta == B.identity(B.src(beta)):
            continue
        per = {}
        for a in A.objects:
            xs = p.elements(B.dst(beta), a)
            if xs:
                per[label(a)] = {label(x): _opt_label(p.left(beta, a, x)) for x in xs}
        if per:
            left[label(beta)] = per
    right: Dict[str, Dict[str, Dict[str, Optional[str]]]] = {}
    for alpha in A.morphisms():
        if alpha == A.identity(A.src(alpha)):
            continue
        per = {}
        for b in B.objects:
            xs = p.elements(b, A.src(alpha))
            if xs:
                per[label(b)] = {label(x): _opt_label(p.right(alpha, b, x)) for x in xs}
        if per:
            right[label(alpha)] = per
    return {
        "schema": "prof/v1",
        "name": p.name or "",
        "source": dump_fincat(A),
        "target": dump_fincat(B),
        "elements": {_cell_key(b, a): sorted(label(x) for x in p.elements(b, a)) for b, a in p.cells()},
        "left": left,
        "right": right,
    }


def load_prof(doc: Mapping) -> Profunctor:
    A = load_fincat(doc["source"], ["source"])
    B = load_fincat(doc["target"], ["target"])
    elements = {}
    for key, xs in doc["elements"].items():
        parts = key.split("|")
        if len(parts) != 2 or not B.has_object(parts[0]) or not A.has_object(parts[1]):
            raise SchemaError(["elements", key], "key must be 'b|a' with b a target object and a a source object")
        if len(set(xs)) != len(xs):
            raise SchemaError(["elements", key], "duplicate element ids")
        elements[(parts[0], parts[1])] = list(xs)
    left = _action_table(doc.get("left", {}), B, A, elements, "left", lambda beta, a: (B.dst(beta), a))
    right = _action_table(doc.get("right", {}), A, B, elements, "right", lambda alpha, b: (b, A.src(alpha)))

    def lookup(table, cat):
        def act(f, other, x):
            if (f, other, x) in table:
                return table[(f, other, x)]
            if f == cat.identity(cat.src(f)):
                return x
            return None

        return act

    p = Profunctor(A, B, elements, lookup(left, B), lookup(right, A), name=doc.get("name") or None)
    _require_total_prof(p, left, right)
    return p


def _action_table(raw, acting: FinCategory, other: FinCategory, elements, side: str, cell_of) -> Dict:
    table = {}
    for f, per in raw.items():
        if not acting.has_morphism(f):
            raise SchemaError([side, f], f"unknown morphism {f!r}")
        for o, xs in per.items():
            if not other.has_object(o):
                raise SchemaError([side, f, o], f"unknown object {o!r}")
            cell = cell_of(f, o)
            for x, y in xs.items():
                if x not in elements.get(cell, ()):
                    raise SchemaError([side, f, o, x], f"{x!r} is not an element at {cell!r}")
                table[(f, o, x)] = y
    return table


def _require_total_prof(p: Profunctor, left, right) -> None:
    A, B = p.source, p.target
    for beta in B.morphisms():
        if beta == B.identity(B.src(beta)):
            continue
        for a in A.objects:
            for x in p.elements(B.dst(beta), a):
                if (beta, a, x) not in left:
                    raise SchemaError(["left", label(beta), label(a)], f"no entry for {x!r}")
    for alpha in A.morphisms():
        if alpha == A.identity(A.src(alpha)):
            continue
        for b in B.objects:
            for x in p.elements(b, A.src(alpha)):
                if (alpha, b, x) not in right:
                    raise SchemaError(["right", label(alpha), label(b)], f"no entry for {x!r}")


# ---------------------------------------------------------------------
# graded/v1 and theory/v1 share sorts, arity maps and action tables


def _dump_arity(u: ArityMap) -> Dict:
    return {"src": [label(x) for x in u.src], "dst": [label(x) for x in u.dst], "index": list(u.index), "arrows": [label(a) for a in u.arrows]}


def _morphism_ref(A: FinCategory, ref: str, path: List[Any]) -> Hashable:
    """Resolve a morphism id as written in a document."""
    table = getattr(A, "_label_index", None)
    if table is None:
        table = A._label_index = {label(f): f for f in A.morphisms()}
    if ref not in table:
        raise SchemaError(path, f"unknown sort morphism {ref!r}")
    return table[ref]


def _load_arity(raw: Mapping, d: str, A: FinCategory, K: int, path: List[Any]) -> ArityMap:
    if raw.get("doctrine", d) != d:
        raise SchemaError(path + ["doctrine"], f"arity map doctrine {raw['doctrine']!r} differs from {d!r}")
    arrows = tuple(_morphism_ref(A, f, path + ["arrows", j]) for j, f in enumerate(raw["arrows"]))
    u = ArityMap(d, tuple(raw["src"]), tuple(raw["dst"]), tuple(raw["index"]), arrows)
    if not word_category(A, d, K).has_morphism(u):
        if not index_valid(d, len(u.src), len(u.dst), u.index):
            raise SchemaError(path + ["index"], f"index {list(u.index)} is not a {d} reindexing")
        raise SchemaError(path, "not an arity map of the word category (check letters, arrows and the bound)")
    return u


def _header(doc: Mapping) -> Tuple[str, int, FinCategory]:
    d = doc["doctrine"]
    K = doc["bound"]
    A = _load_sorts(doc["sorts"], ["sorts"])
    return d, K, A


def _is_identity_map(u: ArityMap, A: FinCategory) -> bool:
    return u.src == u.dst and u == identity_map(u.src, u.doctrine, A)


class _Graded:
    """Element typing plus action tables, shared by both graded formats."""

    def __init__(self, doc: Mapping, d: str, K: int, A: FinCategory, typing: Dict[str, Tuple[Tuple, str]]):
        self.d, self.K, self.A = d, K, A
        self.typing = typing
        self.left: Dict[Tuple[ArityMap, str], Optional[str]] = {}
        self.right: Dict[Tuple[str, str], Optional[str]] = {}
        for i, entry in enumerate(doc.get("left", [])):
            u = _load_arity(entry["map"], d, A, K, ["left", i, "map"])
            for x, y in entry["table"].items():
                self._check_ref(x, ["left", i, "table", x])
                if typing[x][0] != u.dst:
                    raise SchemaError(["left", i, "table", x], f"{x!r} has inputs {list(typing[x][0])}, map targets {list(u.dst)}")
                if y is not None:
                    self._check_ref(y, ["left", i, "table", x])
                self.left[(u, x)] = y
        for i, entry in enumerate(doc.get("right", [])):
            alpha = _morphism_ref(A, entry["morphism"], ["right", i, "morphism"])
            for x, y in entry["table"].items():
                self._check_ref(x, ["right", i, "table", x])
                if typing[x][1] != A.src(alpha):
                    raise SchemaError(["right", i, "table", x], f"{x!r} has output {typing[x][1]!r}, morphism starts at {A.src(alpha)!r}")
                if y is not None:
                    self._check_ref(y, ["right", i, "table", x])
                self.right[(alpha, x)] = y

    def _check_ref(self, x, path):
        if x not in self.typing:
            raise SchemaError(path, f"unknown element id {x!r}")

    def act(self, u, a, x):
        if (u, x) in self.left:
            return self.left[(u, x)]
        if _is_identity_map(u, self.A):
            return x
        return None

    def act_sort(self, alpha, bs, x):
        if (alpha, x) in self.right:
            return self.right[(alpha, x)]
        if alpha == self.A.identity(self.A.src(alpha)):
            return x
        return None

    def require_total(self, elements: Mapping[Tuple[Tuple, str], Sequence[str]]) -> None:
        S = word_category(self.A, self.d, self.K)
        for (bs, a), xs in elements.items():
            for src in S.objects:
                for u in S.hom(src, bs):
                    if _is_identity_map(u, self.A):
                        continue
                    for x in xs:
                        if (u, x) not in self.left:
                            raise SchemaError(["left"], f"no entry for element {x!r} under the arity map {label(u)}")
            for alpha in self.A.hom_from(a):
                if alpha == self.A.identity(a):
                    continue
                for x in xs:
                    if (alpha, x) not in self.right:
                        raise SchemaError(["right"], f"no entry for element {x!r} under {alpha!r}")


def _dump_actions(carrier: Profunctor, A: FinCategory, S, ident) -> Tuple[List, List]:
    by_word: Dict[Tuple, List[Tuple[str, Hashable]]] = {}
    by_output: Dict[Hashable, List[Tuple[Tuple, Hashable]]] = {}
    for bs, a, x in carrier.all_elements():
        by_word.setdefault(bs, []).append((a, x))
        by_output.setdefault(a, []).append((bs, x))
    left = []
    for bs in S.objects:
        if bs not in by_word:
            continue
        for src in S.objects:
            for u in S.hom(src, bs):
                if _is_identity_map(u, A):
                    continue
                table = {ident(bs, a, x): _opt(ident, src, a, carrier.left(u, a, x)) for a, x in by_word[bs]}
                left.append({"map": _dump_arity(u), "table": table})
    right = []
    for alpha in A.morphisms():
        a = A.src(alpha)
        if alpha == A.identity(a) or a not in by_output:
            continue
        table = {ident(bs, a, x): _opt(ident, bs, A.dst(alpha), carrier.right(alpha, bs, x)) for bs, x in by_output[a]}
        right.append({"morphism": label(alpha), "table": table})
    return left, right


def _opt(ident, bs, a, x):
    return None if x is None else ident(bs, a, x)


def _opt_label(x):
    return None if x is None else label(x)


def dump_graded(p: Profunctor, name: Optional[str] = None) -> Dict:
    A, d, K = graded_info(p)
    S = word_category(A, d, K)

    def ident(bs, a, x):
        return label(x)

    left, right = _dump_actions(p, A, S, ident)
    return {
        "schema": "graded/v1",
        "name": name or p.name or "",
        "doctrine": d,
        "bound": K,
        "sorts": _dump_sorts(A),
        "elements": [{"inputs": [label(b) for b in bs], "output": label(a), "ids": sorted(label(x) for x in p.elements(bs, a))} for bs, a in p.cells()],
        "left": left,
        "right": right,
    }


def _word(raw: Sequence[str], A: FinCategory, K: int, path: List[Any]) -> Tuple[str, ...]:
    for i, x in enumerate(raw):
        if not A.has_object(x):
            raise SchemaError(path + [i], f"unknown sort {x!r}")
    if len(raw) > K:
        raise SchemaError(path, f"word of length {len(raw)} exceeds the bound {K}")
    return tuple(raw)


def load_graded(doc: Mapping) -> Profunctor:
    d, K, A = _header(doc)
    elements: Dict[Tuple[Tuple, str], List[str]] = {}
    for i, cell in enumerate(doc["elements"]):
        bs = _word(cell["inputs"], A, K, ["elements", i, "inputs"])
        a = cell["output"]
        if not A.has_object(a):
            raise SchemaError(["elements", i, "output"], f"unknown sort {a!r}")
        if (bs, a) in elements:
            raise SchemaError(["elements", i], "repeated cell")
        if len(set(cell["ids"])) != len(cell["ids"]):
            raise SchemaError(["elements", i, "ids"], "duplicate element ids")
        elements[(bs, a)] = list(cell["ids"])
    g = _GradedLocal(doc, d, K, A, elements)
    S = word_category(A, d, K)
    return Profunctor(A, S, elements, g.act, g.act_sort, name=doc.get("name") or None)


class _GradedLocal:
    """Action tables for ``graded/v1`` where ids are only unique per cell."""

    def __init__(self, doc, d, K, A, elements):
        self.A = A
        self.left: Dict = {}
        self.right: Dict = {}
        for i, entry in enumerate(doc.get("left", [])):
            u = _load_arity(entry["map"], d, A, K, ["left", i, "map"])
            for x, y in entry["table"].items():
                if not any(x in xs for (bs, _), xs in elements.items() if bs == u.dst):
                    raise SchemaError(["left", i, "table", x], f"{x!r} is not an element with inputs {list(u.dst)}")
                self.left[(u, x)] = y
        for i, entry in enumerate(doc.get("right", [])):
            alpha = _morphism_ref(A, entry["morphism"], ["right", i, "morphism"])
            for x, y in entry["table"].items():
                if not any(x in xs for (_, a), xs in elements.items() if a == A.src(alpha)):
                    raise SchemaError(["right", i, "table", x], f"{x!r} is not an element with output {A.src(alpha)!r}")
                self.right[(alpha, x)] = y

    def act(self, u, a, x):
        if (u, x) in self.left:
            return self.left[(u, x)]
        if _is_identity_map(u, self.A):
            return x
        return None

    def act_sort(self, alpha, bs, x):
        if (alpha, x) in self.right:
            return self.right[(alpha, x)]
        if alpha == self.A.identity(self.A.src(alpha)):
            return x
        return None


# ---------------------------------------------------------------------
# theory/v1


def element_ids(m: Multicategory) -> Dict[Tuple[Tuple, Hashable, Hashable], str]:
    """Global string ids: kept when already unique strings, else numbered."""
    triples = list(m.all_elements())
    xs = [x for _, _, x in triples]
    if all(isinstance(x, str) for x in xs) and len(set(xs)) == len(xs):
        return {t: t[2] for t in triples}
    width = len(str(max(len(triples) - 1, 0)))
    return {t: f"e{i:0{width}d}" for i, t in enumerate(triples)}


def dump_theory(m: Multicategory) -> Dict:
    A, d, K, S = m.sorts, m.doctrine, m.bound, m.S
    ids = element_ids(m)
    labels = getattr(m, "labels", None) or {}

    def ident(bs, a, x):
        return ids[(bs, a, x)]

    elements = []
    for (bs, a, x), i in ids.items():
        entry = {"id": i, "inputs": [label(b) for b in bs], "output": label(a)}
        if i in labels:
            entry["label"] = labels[i]
        elif i != x:
            entry["label"] = label(x)
        elements.append(entry)
    left, right = _dump_actions(m.carrier, A, S, ident)
    subst = []
    for bs, a, x in m.all_elements():
        for inners in m.inner_tuples(bs, K):
            r = m.gamma(bs, a, x, inners)
            cat = tuple(c for cs, _ in inners for c in cs)
            subst.append(
                {
                    "outer": ident(bs, a, x),
                    "inner": [ident(cs, bs[i], y) for i, (cs, y) in enumerate(inners)],
                    "result": None if r is None else ident(cat, a, r),
                }
            )
    return {
        "schema": "theory/v1",
        "name": m.name or "",
        "doctrine": d,
        "bound": K,
        "sorts": _dump_sorts(A),
        "elements": elements,
        "unit": {label(a): ident((a,), a, m.unit(a)) for a in A.objects},
        "left": left,
        "right": right,
        "subst": subst,
        "normal": bool(m.normal),
        "partial": bool(m.partial),
    }


def load_theory(doc: Mapping) -> Multicategory:
    d, K, A = _header(doc)
    typing: Dict[str, Tuple[Tuple, str]] = {}
    elements: Dict[Tuple[Tuple, str], List[str]] = {}
    labels: Dict[str, str] = {}
    for i, e in enumerate(doc["elements"]):
        x = e["id"]
        if x in typing:
            raise SchemaError(["elements", i, "id"], f"duplicate element id {x!r}")
        bs = _word(e["inputs"], A, K, ["elements", i, "inputs"])
        a = e["output"]
        if not A.has_object(a):
            raise SchemaError(["elements", i, "output"], f"unknown sort {a!r}")
        typing[x] = (bs, a)
        elements.setdefault((bs, a), []).append(x)
        if "label" in e:
            labels[x] = e["label"]
    unit = {}
    for a in A.objects:
        if label(a) not in doc["unit"]:
            raise SchemaError(["unit"], f"no unit for sort {a!r}")
        e = doc["unit"][label(a)]
        if e not in typing:
            raise SchemaError(["unit", label(a)], f"unknown element id {e!r}")
        unit[a] = e
    g = _Graded(doc, d, K, A, typing)
    g.require_total(elements)
    partial = bool(doc.get("partial", False))
    table: Dict[Tuple[str, Tuple[str, ...]], Optional[str]] = {}
    for i, s in enumerate(doc["subst"]):
        path = ["subst", i]
        outer = s["outer"]
        if outer not in typing:
            raise SchemaError(path + ["outer"], f"unknown element id {outer!r}")
        bs, _ = typing[outer]
        inner = tuple(s["inner"])
        if len(inner) != len(bs):
            raise SchemaError(path + ["inner"], f"{len(inner)} inner elements for an outer element with {len(bs)} inputs")
        for j, y in enumerate(inner):
            if y not in typing:
                raise SchemaError(path + ["inner", j], f"unknown element id {y!r}")
            if typing[y][1] != bs[j]:
                raise SchemaError(path + ["inner", j], f"{y!r} has output {typing[y][1]!r}, input {j} needs {bs[j]!r}")
        r = s["result"]
        if r is None and not partial:
            raise SchemaError(path + ["result"], "null result needs \"partial\": true")
        if r is not None and r not in typing:
            raise SchemaError(path + ["result"], f"unknown element id {r!r}")
        table[(outer, inner)] = r
    S = word_category(A, d, K)
    carrier = Profunctor(A, S, elements, g.act, g.act_sort, name=doc.get("name") or None)

    def gamma(bs, a, x, inners):
        return table.get((x, tuple(y for _, y in inners)))

    m = Multicategory(carrier, unit, gamma, normal=doc.get("normal", True), name=doc.get("name") or None, partial=partial)
    for bs, a, x in m.all_elements():
        for inners in m.inner_tuples(bs, K):
            if (x, tuple(y for _, y in inners)) not in table:
                raise SchemaError(["subst"], f"no entry for outer {x!r} with inner {[y for _, y in inners]}")
    m.labels = labels
    return m


# ---------------------------------------------------------------------
# envelopes: fincat/v1 plus a tensor table


def dump_envelope(e) -> Dict:
    morphisms = [f for f in e.morphisms()]
    width = len(str(max(len(morphisms) - 1, 0)))
    mid = {f: f"f{i:0{width}d}" for i, f in enumerate(morphisms)}
    doc = {
        "schema": "fincat/v1",
        "name": e.name or "",
        "objects": [label(x) for x in e.objects],
        "morphisms": [{"id": mid[f], "src": label(e.src(f)), "dst": label(e.dst(f))} for f in morphisms],
        "identities": {label(x): mid[e.identity(x)] for x in e.objects},
        "compose": [],
        "tensor": [],
        "labels": {mid[f]: label(f[2]) for f in morphisms},
    }
    for g in morphisms:
        for f in e.hom_into(e.src(g)):
            gf = e.compose(g, f)
            if gf is not None:
                doc["compose"].append([mid[g], mid[f], mid[gf]])
    for f in morphisms:
        for g in morphisms:
            fg = e.tensor(f, g)
            if fg is not None:
                doc["tensor"].append([mid[f], mid[g], mid[fg]])
    return doc


def counts_matrix(e) -> List[List[int]]:
    counts = e.hom_counts()
    K = e.bound
    return [[counts.get((m, n), 0) for n in range(K + 1)] for m in range(K + 1)]


def _sorted_items(d: Mapping) -> List:
    return sorted(d.items(), key=lambda kv: canon_key(kv[0]))


LOADERS = {"fincat/v1": load_fincat, "prof/v1": load_prof, "graded/v1": load_graded, "theory/v1": load_theory}


def load_document(doc: Any) -> Tuple[str, Any]:
    """Shape-check, then build the value named by the ``schema`` field."""
    name = schema_of(doc)
    check_shape(doc, name)
    return name, LOADERS[name](doc)
