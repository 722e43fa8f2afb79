"""Lattice definition files.

A lattice file is a JSON document::

    {
      "name": "trepalin-1",
      "rank": 8,
      "group": {"degree": 8, "generators": {"g": [[...], ...], "sigma": [[...], ...]}},
      "action": {"generators": {"g": [[...], ...], "sigma": [[...], ...]}},
      "basis_labels": ["s", "l", ...]
    }

Generator order is the key order of ``group.generators`` and fixes the
element numbering.  ``group.degree`` may be omitted when it can be read off
the matrices.  ``basis_labels`` is optional.  Integers are unbounded.
"""

import json

from .errors import InputError, ParseError
from .groups import DEFAULT_ELEMENT_CAP, generate
from .lattices import GLattice
from .zlinalg import IntMatrix


def _line_of(text, path):
    """Line of the last key of a dotted ``path``, found by locating each key in turn."""
    pos = 0
    for key in path.split("."):
        hit = text.find(f'"{key}"', pos)
        if hit < 0:
            return None
        pos = hit + len(key) + 2
    return text.count("\n", 0, pos) + 1


def _matrix(value, field, text, size=None):
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError("expected a matrix (array of arrays of integers)", _line_of(text, field), field)
    for r in value:
        for v in r:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"non-integer entry {v!r}", _line_of(text, field), field)
    n = len(value)
    if any(len(r) != n for r in value):
        raise ParseError("matrix is not square", _line_of(text, field), field)
    if size is not None and n != size:
        raise ParseError(f"expected a {size}x{size} matrix, got {n}x{n}", _line_of(text, field), field)
    return IntMatrix(value, n)


def loads(text, element_cap=DEFAULT_ELEMENT_CAP):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1)
    for key in ("rank", "group", "action"):
        if key not in doc:
            raise ParseError("missing required field", None, key)
    rank = doc["rank"]
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 0:
        raise ParseError("rank must be a nonnegative integer", _line_of(text, "rank"), "rank")
    group = doc["group"]
    if not isinstance(group, dict) or not isinstance(group.get("generators"), dict):
        raise ParseError("expected an object with named generators", _line_of(text, "group"), "group.generators")
    gens = {}
    degree = group.get("degree")
    for name, m in group["generators"].items():
        mat = _matrix(m, f"group.generators.{name}", text, degree)
        degree = mat.nrows
        gens[name] = mat
    if degree is None:
        raise ParseError("cannot determine group degree without generators", _line_of(text, "group"), "group.degree")
    action = doc["action"]
    if not isinstance(action, dict) or not isinstance(action.get("generators"), dict):
        raise ParseError("expected an object with named generators", _line_of(text, "action"), "action.generators")
    images = {}
    for name, m in action["generators"].items():
        if name not in gens:
            raise ParseError(f"action given for unknown generator {name!r}", _line_of(text, f"action.generators.{name}"), f"action.generators.{name}")
        images[name] = _matrix(m, f"action.generators.{name}", text, rank)
    missing = [n for n in gens if n not in images]
    if missing:
        raise ParseError(f"no action given for generators {missing}", _line_of(text, "action"), "action.generators")
    labels = doc.get("basis_labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != rank
                               or not all(isinstance(s, str) for s in labels)):
        raise ParseError(f"basis_labels must be {rank} strings", _line_of(text, "basis_labels"), "basis_labels")
    g = generate(degree, list(gens.items()), element_cap=element_cap)
    try:
        return GLattice.from_generator_images(g, images, labels, name=doc.get("name"))
    except AssertionError as exc:
        raise InputError(f"invalid action: {exc}") from None


def load(path, element_cap=DEFAULT_ELEMENT_CAP):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), element_cap=element_cap)


def _fmt_matrix(m, indent):
    pad = " " * indent
    rows = [pad + "  " + json.dumps(list(r)) for r in m.rows]
    if not rows:
        return "[]"
    return "[\n" + ",\n".join(rows) + "\n" + pad + "]"


def dumps(lattice):
    g = lattice.group
    lines = ["{", f'  "name": {json.dumps(lattice.name)},', f'  "rank": {lattice.rank},',
             '  "group": {', f'    "degree": {g.degree},', '    "generators": {']
    items = [f"      {json.dumps(n)}: {_fmt_matrix(m, 6)}" for n, m in zip(g.generator_names, g.generators)]
    lines.append(",\n".join(items))
    lines += ["    }", "  },", '  "action": {', '    "generators": {']
    items = [f"      {json.dumps(n)}: {_fmt_matrix(m, 6)}"
             for n, m in zip(g.generator_names, lattice.generator_images())]
    lines.append(",\n".join(items))
    lines += ["    }", "  },", f'  "basis_labels": {json.dumps(list(lattice.labels))}', "}"]
    return "\n".join(line for line in lines if line) + "\n"


def dump(lattice, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(lattice))
