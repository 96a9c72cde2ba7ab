"""JSON formats for lattice presentations and gluing diagrams.

Presentation format::

    {"generators": ["x", "y"],
     "relations": [{"meet": [["x", "y"]], "join": []}]}

Each relation reads ``/\\ meet <= \\/ join``; every entry of ``meet`` is a list of
generator labels forming one conjunct.  An empty ``meet`` is 1, an empty
``join`` is 0.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from .gluing import GlueDiagram
from .ideals import LatticeMap
from .lattice import DEFAULT_MAX_ELEMENTS, Lattice, LatticeError, Presentation, Relation


class FormatError(LatticeError):
    pass


def _read_json(source) -> Any:
    if isinstance(source, (dict, list)):
        return source
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def _labels(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FormatError(f"{what} must be a list of strings")
    return value


def presentation_from_json(data) -> Presentation:
    if not isinstance(data, dict):
        raise FormatError("a presentation must be a JSON object")
    unknown = set(data) - {"generators", "relations", "name"}
    if unknown:
        raise FormatError(f"unknown presentation keys: {sorted(unknown)}")
    gens = _labels(data.get("generators"), "generators")
    rels = []
    raw = data.get("relations", [])
    if not isinstance(raw, list):
        raise FormatError("relations must be a list")
    for k, r in enumerate(raw):
        if not isinstance(r, dict) or set(r) - {"meet", "join"}:
            raise FormatError(f"relation {k} must be an object with keys meet and join")
        meet = r.get("meet", [])
        if not isinstance(meet, list):
            raise FormatError(f"relation {k}: meet must be a list of conjuncts")
        conj = [_labels(c, f"relation {k} conjunct") for c in meet]
        join = _labels(r.get("join", []), f"relation {k} join")
        rels.append(Relation.make(conj, join))
    return Presentation(tuple(gens), tuple(rels))


def presentation_to_json(P: Presentation) -> dict:
    return {
        "generators": list(P.generators),
        "relations": [{"meet": [sorted(c) for c in r.meet], "join": sorted(r.join)}
                      for r in P.relations],
    }


def load_lattice(source, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Lattice:
    """Lattice from a presentation file, a JSON string path or an already parsed object."""
    return Lattice(presentation_from_json(_read_json(source)), max_elements)


def dump_lattice(T: Lattice) -> str:
    return json.dumps(presentation_to_json(T.presentation), indent=2)


def save_lattice(T: Lattice, path) -> None:
    Path(path).write_text(dump_lattice(T) + "\n")


# gluing diagrams
#
# {"index": ["a", "b"],
#  "lattices": {"a": "a.json", "b": {...inline presentation...}},
#  "pairs": [{"between": ["a", "b"], "lattice": "ab.json"}],
#  "triples": [{"between": ["a", "b", "c"], "lattice": ...}],
#  "projections": [{"from": "a", "to": "b", "images": {"x": "x|y"}}],
#  "triple_projections": [{"pair": ["a", "b"], "to": "c", "images": {...}}],
#  "s": [{"from": "a", "to": "b", "element": "x"}]}
#
# A projection "from i to j" maps T_i onto T_ij; "pair [i, j] to k" maps T_ij
# onto T_ijk; s_ij is an element of T_i written in T_i's syntax.

def _lattice_ref(ref, base: Path, max_elements: int) -> Lattice:
    if isinstance(ref, str):
        return load_lattice(base / ref, max_elements)
    return load_lattice(ref, max_elements)


def load_glue_diagram(source, max_elements: int = DEFAULT_MAX_ELEMENTS) -> GlueDiagram:
    data = _read_json(source)
    base = Path(os.path.dirname(source)) if isinstance(source, (str, os.PathLike)) else Path(".")
    if not isinstance(data, dict) or "index" not in data or "lattices" not in data:
        raise FormatError("a gluing diagram needs index and lattices")
    index = list(data["index"])
    try:
        lat = {i: _lattice_ref(data["lattices"][i], base, max_elements) for i in index}
    except KeyError as exc:
        raise FormatError(f"no lattice given for index {exc}") from exc
    d = GlueDiagram(index, lat)
    for entry in data.get("pairs", []):
        i, j = entry["between"]
        d.pairs[frozenset((i, j))] = _lattice_ref(entry["lattice"], base, max_elements)
    for entry in data.get("triples", []):
        d.triples[frozenset(entry["between"])] = _lattice_ref(entry["lattice"], base, max_elements)
    try:
        for entry in data.get("projections", []):
            i, j = entry["from"], entry["to"]
            src, tgt = lat[i], d.pair(i, j)
            d.proj[(i, j)] = LatticeMap(src, tgt, {g: tgt.parse(t) for g, t in entry["images"].items()})
        for entry in data.get("triple_projections", []):
            i, j = sorted(entry["pair"], key=index.index)
            k = entry["to"]
            src, tgt = d.pair(i, j), d.triples[frozenset((i, j, k))]
            d.proj3[(i, j, k)] = LatticeMap(src, tgt, {g: tgt.parse(t) for g, t in entry["images"].items()})
        for entry in data.get("s", []):
            d.s[(entry["from"], entry["to"])] = lat[entry["from"]].parse(entry["element"])
    except KeyError as exc:
        raise FormatError(f"gluing diagram refers to a missing lattice or key: {exc}") from exc
    return d


def glue_diagram_to_json(d: GlueDiagram) -> dict:
    """Inline JSON rendering of a diagram (all lattices embedded)."""
    def pres(T):
        return presentation_to_json(T.presentation)

    def images(f):
        return {g: str(f(f.source.gen(g))) for g in f.source.generators}

    # JSON object keys are strings, so indices are written as strings throughout
    def ids(k):
        return [str(i) for i in sorted(k, key=d.index.index)]

    return {
        "index": [str(i) for i in d.index],
        "lattices": {str(i): pres(T) for i, T in d.lattices.items()},
        "pairs": [{"between": ids(k), "lattice": pres(T)} for k, T in d.pairs.items()],
        "triples": [{"between": ids(k), "lattice": pres(T)} for k, T in d.triples.items()],
        "projections": [{"from": str(i), "to": str(j), "images": images(f)}
                        for (i, j), f in d.proj.items()],
        "triple_projections": [{"pair": [str(i), str(j)], "to": str(k), "images": images(f)}
                               for (i, j, k), f in d.proj3.items()],
        "s": [{"from": str(i), "to": str(j), "element": str(x)} for (i, j), x in d.s.items()],
    }

