"""File formats: algebra descriptions, module descriptions, linear combos.

Algebra description (UTF-8 JSON):
    {"field": "Q" | {"Fp": p},
     "vertices": [...],
     "arrows": [{"name", "src", "tgt"}],
     "relations": [[{"coeff": str, "word": [arrow names in traversal order]}]],
     "subalgebras": [{"name", "generators": [combo], "idempotents": [combo]}],
     "towers": [{"name", "levels": [names]}]}

A linear combo is a list of [coefficient string, path word or basis label];
a word is a list of arrow names in traversal order, a label is a trivial
path like "e_1" or a stored basis label.
"""

from __future__ import annotations

import json

from bocal.linalg import Mat, field_from_spec
from bocal.algebra import (
    Quiver,
    Relation,
    AlgebraData,
    build_bound_quiver_algebra,
    make_subalgebra,
    build_tower,
)
from bocal.modules import ModuleRep


class FormatError(ValueError):
    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def _combo_vector(a: AlgebraData, combo, path=""):
    """Evaluate a list of (coeff, word-or-label) in algebra coordinates."""
    f = a.field
    out = a.zero_vec()
    for idx, pair in enumerate(combo):
        if len(pair) != 2:
            raise FormatError("combo term must be [coeff, word-or-label]", f"{path}[{idx}]")
        coeff_s, item = pair
        coeff = f.parse(str(coeff_s))
        if isinstance(item, str):
            if item not in a.labels:
                raise FormatError(f"unknown basis label {item!r}", f"{path}[{idx}]")
            vec = a.unit_vec(a.labels.index(item))
        else:
            vec = _word_vector(a, item, f"{path}[{idx}]")
        out = [f.add(x, f.mul(coeff, y)) for x, y in zip(out, vec)]
    return out


def _word_vector(a: AlgebraData, word, path=""):
    f = a.field
    if not word:
        raise FormatError("empty word", path)
    vecs = []
    for name in word:
        if name not in a.arrow_basis:
            raise FormatError(f"unknown arrow {name!r}", path)
        vecs.append(a.unit_vec(a.arrow_basis[name]))
    out = vecs[0]
    for v in vecs[1:]:
        out = a.product_vec(v, out)  # traversal order: earlier arrows act first
    return out


def load_algebra_description(data: dict, label="main"):
    """Build the main algebra, its subalgebras, and towers from a description."""
    try:
        field = field_from_spec(data["field"])
    except KeyError:
        raise FormatError("missing field spec", "field")
    for key in ("vertices", "arrows"):
        if key not in data:
            raise FormatError(f"missing {key!r}", key)
    arrows = []
    for idx, arr in enumerate(data["arrows"]):
        try:
            arrows.append((arr["name"], arr["src"], arr["tgt"]))
        except (TypeError, KeyError):
            raise FormatError("arrow needs name/src/tgt", f"arrows[{idx}]")
    quiver = Quiver(data["vertices"], arrows)
    rels = []
    for ridx, rel in enumerate(data.get("relations", [])):
        terms = []
        for tidx, term in enumerate(rel):
            try:
                coeff = field.parse(str(term["coeff"]))
                word = tuple(term["word"])
            except (TypeError, KeyError):
                raise FormatError("relation term needs coeff/word", f"relations[{ridx}][{tidx}]")
            terms.append((coeff, word))
        rels.append(Relation(terms))
    main = build_bound_quiver_algebra(quiver, rels, field, label=label)
    algebras = {label: main}
    for sidx, sub in enumerate(data.get("subalgebras", [])):
        name = sub.get("name", f"sub{sidx}")
        gens = [
            _combo_vector(main, combo, f"subalgebras[{sidx}].generators[{gidx}]")
            for gidx, combo in enumerate(sub.get("generators", []))
        ]
        idems = [
            _combo_vector(main, combo, f"subalgebras[{sidx}].idempotents[{iidx}]")
            for iidx, combo in enumerate(sub.get("idempotents", []))
        ]
        algebras[name] = make_subalgebra(main, gens, idems, label=name)
    towers = {}
    for tidx, tw in enumerate(data.get("towers", [])):
        name = tw.get("name", f"tower{tidx}")
        try:
            levels = [algebras[lv] for lv in tw["levels"]]
        except KeyError as exc:
            raise FormatError(f"tower level {exc} not defined", f"towers[{tidx}]")
        towers[name] = build_tower(main, levels, assert_top_rep_finite=tw.get("assert_top_rep_finite", False))
    return algebras, towers


def load_algebra_file(path: str, label="main"):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", path)
    return load_algebra_description(data, label=label)


def dump_algebra_description(a: AlgebraData) -> dict:
    """Serialize a quiver-presented algebra so a rebuild is bit-identical."""
    if a.quiver is None:
        return dump_structure_constants(a)
    out = {
        "field": a.field.spec(),
        "vertices": list(a.quiver.vertices),
        "arrows": [
            {"name": arr.name, "src": arr.src, "tgt": arr.tgt} for arr in a.quiver.arrows
        ],
        "relations": getattr(a, "_relation_dump", []),
    }
    return out


def dump_structure_constants(a: AlgebraData) -> dict:
    fmt = a.field.format
    table = {}
    for (i, j), entry in sorted(a.mult.items()):
        table[f"{i},{j}"] = {str(k): fmt(c) for k, c in sorted(entry.items())}
    return {
        "field": a.field.spec(),
        "labels": list(a.labels),
        "n_idem": a.n_idem,
        "row_idem": list(a.row_idem),
        "col_idem": list(a.col_idem),
        "structure_constants": table,
    }


def load_structure_constants(data: dict, label="") -> AlgebraData:
    from bocal.algebra import from_mult_table

    field = field_from_spec(data["field"])
    mult = {}
    for key, entry in data["structure_constants"].items():
        i, j = (int(x) for x in key.split(","))
        mult[(i, j)] = {int(k): field.parse(v) for k, v in entry.items()}
    return from_mult_table(
        field,
        data["labels"],
        data["n_idem"],
        data["row_idem"],
        data["col_idem"],
        mult,
        label=label,
    )


def load_module_description(a: AlgebraData, data: dict, label="") -> ModuleRep:
    """Module from per-vertex dims and arrow matrices, or raw basis actions."""
    f = a.field
    if "arrows" in data:
        if a.quiver is None:
            raise FormatError("arrow-matrix modules need a quiver-presented algebra")
        dims = data.get("dims", {})
        vdim = [int(dims.get(v, 0)) for v in a.quiver.vertices]
        vertex = []
        for vi, d in enumerate(vdim):
            vertex.extend([vi] * d)
        offsets = []
        acc = 0
        for d in vdim:
            offsets.append(acc)
            acc += d
        n = acc
        arrow_mats = {}
        for name, rows in data["arrows"].items():
            if name not in a.arrow_basis:
                raise FormatError(f"unknown arrow {name!r}", "arrows")
            arr = a.quiver.arrows[a.quiver.arrow_index[name]]
            si = a.quiver.vertex_index[arr.src]
            ti = a.quiver.vertex_index[arr.tgt]
            mat = Mat.from_strings(f, vdim[ti], vdim[si], [[str(x) for x in r] for r in rows])
            arrow_mats[name] = (si, ti, mat)
        action = []
        for b in range(a.dim):
            action.append(Mat.zeros(f, n, n))
        for vi in range(a.n_idem):
            for c in range(n):
                if vertex[c] == vi:
                    action[vi].data[c][c] = f.one()
        for name, (si, ti, mat) in arrow_mats.items():
            big = Mat.zeros(f, n, n)
            for i in range(mat.rows):
                for j in range(mat.cols):
                    big.data[offsets[ti] + i][offsets[si] + j] = mat.data[i][j]
            action[a.arrow_basis[name]] = big
        # extend to all path-class basis elements through the arrow actions
        m = ModuleRep(a, vertex, action, label=label)
        _extend_action_by_words(a, m)
        return m
    if "action" in data:
        acts = data["action"]
        dims = {len(rows) for rows in acts.values() if rows}
        if len(dims) > 1:
            raise FormatError("action matrices have inconsistent sizes", "action")
        n = dims.pop() if dims else 0
        action = []
        for bi, lbl in enumerate(a.labels):
            if lbl in acts:
                action.append(Mat.from_strings(f, n, n, [[str(x) for x in r] for r in acts[lbl]]))
            else:
                action.append(Mat.zeros(f, n, n))
        vertex = _grade_from_idempotents(a, action, n)
        return ModuleRep(a, vertex, action, label=label)
    raise FormatError("module description needs 'arrows' or 'action'")


def _grade_from_idempotents(a: AlgebraData, action, n):
    f = a.field
    vertex = [None] * n
    for i in range(a.n_idem):
        for c in range(n):
            if f.eq(action[i].data[c][c], f.one()):
                vertex[c] = i
    if any(v is None for v in vertex):
        raise FormatError("idempotent actions do not grade the coordinates")
    return vertex


def _extend_action_by_words(a: AlgebraData, m: ModuleRep):
    """Fill in actions of longer path classes as products of arrow actions."""
    known = {i for i in range(a.n_idem)}
    known.update(a.arrow_basis.values())
    changed = True
    while changed:
        changed = False
        for i in sorted(known):
            for j in sorted(known):
                entry = a.product_basis(i, j)
                if len(entry) == 1:
                    ((k, c),) = entry.items()
                    if k not in known and a.field.eq(c, a.field.one()):
                        m.action[k] = m.action[i] @ m.action[j]
                        known.add(k)
                        changed = True
    if len(known) != a.dim:
        raise FormatError("arrow actions do not reach every basis path class")
