"""Built-in corpus: every algebra family the suite reproduces numbers for.

Each entry knows how to build its objects and carries expected invariant
values with a provenance tag: "literature" (value stated in the source
material for this family), "derived" (computed independently and frozen),
"trivial" (immediate from the definition), or "external" (supplied, not
computable here).
"""

from __future__ import annotations

from bocal.linalg import QQ, PrimeField
from bocal.algebra import (
    Quiver,
    Relation,
    AlgebraData,
    build_bound_quiver_algebra,
    make_subalgebra,
    build_tower,
)


class ParameterOutOfRange(ValueError):
    pass


class Expected:
    def __init__(self, invariant, value, source, note=""):
        self.invariant = invariant
        self.value = value
        self.source = source
        self.note = note

    def to_dict(self):
        d = {"invariant": self.invariant, "value": self.value, "source": self.source}
        if self.note:
            d["note"] = self.note
        return d


# ---------- the serial family A and its carved-out subalgebras ----------


def _family_params(s: int, t: int):
    if s < 7:
        raise ParameterOutOfRange(f"family needs s >= 7, got {s}")
    if t <= 1:
        raise ParameterOutOfRange(f"family needs t > 1, got {t}")
    return s, t


def family_a(s: int, t: int, field=QQ) -> AlgebraData:
    """The serial algebra: a linear quiver with one long zero path and a zero tail."""
    _family_params(s, t)
    verts = [str(i) for i in range(1, s + t + 1)]
    arrows = [
        ("la", "2", "5"),
        ("ep", "3", "2"),
        ("xi", "1", "3"),
        ("be", "4", "1"),
        ("al", "6", "4"),
    ]
    for i in range(1, s - 6 + 1):
        arrows.append((f"s{i}", str(6 + i), str(5 + i)))
    for j in range(1, t + 1):
        arrows.append((f"t{j}", str(s + j), str(s + j - 1)))
    rels = [
        Relation.monomial(["al", "be", "xi", "ep", "la"]),
        Relation.monomial(["t1", f"s{s - 6}"]),
    ]
    for i in range(1, t):
        rels.append(Relation.monomial([f"t{i + 1}", f"t{i}"]))
    return build_bound_quiver_algebra(
        Quiver(verts, arrows), rels, field, label=f"family-a({s},{t})"
    )


def _family_sub_vertices(s, t):
    return ["1", "2p", "3p"] + [str(i) for i in range(7, s + t + 1)]


def _tail_arrows(s, t):
    arrows = []
    for i in range(2, s - 6 + 1):
        arrows.append((f"s{i}", str(6 + i), str(5 + i)))
    for j in range(1, t + 1):
        arrows.append((f"t{j}", str(s + j), str(s + j - 1)))
    return arrows


def _tail_relations(s, t):
    rels = [Relation.monomial(["t1", f"s{s - 6}"])]
    for i in range(1, t):
        rels.append(Relation.monomial([f"t{i + 1}", f"t{i}"]))
    return rels


def family_b_presented(s: int, t: int, field=QQ) -> AlgebraData:
    """The middle algebra by its printed quiver presentation (two parallel arrows)."""
    _family_params(s, t)
    arrows = [
        ("ga", "1", "2p"),
        ("be", "2p", "1"),
        ("la", "2p", "2p"),
        ("de", "2p", "3p"),
        ("al", "3p", "2p"),
        ("ep", "3p", "2p"),
        ("s1", "7", "3p"),
    ] + _tail_arrows(s, t)
    rels = [
        Relation.commutator(["be", "ga"], ["de", "ep"]),
        Relation.monomial(["ga", "be"]),
        Relation.monomial(["ga", "de"]),
        Relation.monomial(["la", "la"]),
        Relation.monomial(["la", "be"]),
        Relation.monomial(["la", "de"]),
        Relation.monomial(["de", "al"]),
        Relation.monomial(["ep", "be"]),
        Relation.monomial(["ep", "de"]),
        Relation.monomial(["al", "la"]),
        Relation.monomial(["al", "be", "ga", "la"]),
    ] + _tail_relations(s, t)
    return build_bound_quiver_algebra(
        Quiver(_family_sub_vertices(s, t), arrows), rels, field, label=f"family-b({s},{t})"
    )


def family_c_presented(s: int, t: int, field=QQ) -> AlgebraData:
    """The bottom algebra by its printed quiver presentation (fused arrow)."""
    _family_params(s, t)
    arrows = [
        ("ga", "1", "2p"),
        ("be", "2p", "1"),
        ("la", "2p", "2p"),
        ("de", "2p", "3p"),
        ("ph", "3p", "2p"),
        ("s1", "7", "3p"),
    ] + _tail_arrows(s, t)
    rels = [
        Relation.commutator(["be", "ga"], ["de", "ph"]),
        Relation.monomial(["ga", "be"]),
        Relation.monomial(["ga", "de"]),
        Relation.monomial(["la", "la"]),
        Relation.monomial(["la", "be"]),
        Relation.monomial(["la", "de"]),
        Relation.monomial(["ph", "be", "ga", "la"]),
    ] + _tail_relations(s, t)
    return build_bound_quiver_algebra(
        Quiver(_family_sub_vertices(s, t), arrows), rels, field, label=f"family-c({s},{t})"
    )


def family_subalgebras(s: int, t: int, field=QQ):
    """(A, B, C) with B and C generated inside A from the stated element lists."""
    a = family_a(s, t, field)
    f = a.field

    def unit(label):
        return a.unit_vec(a.labels.index(label))

    def vsum(*labels):
        out = a.zero_vec()
        for l in labels:
            v = unit(l)
            out = [f.add(x, y) for x, y in zip(out, v)]
        return out

    def walk(*labels):
        # traversal-order product of arrows
        vecs = [unit(l) for l in labels]
        out = vecs[0]
        for v in vecs[1:]:
            out = a.product_vec(v, out)
        return out

    idems = [unit("e_1"), vsum("e_2", "e_4", "e_5"), vsum("e_3", "e_6")]
    idems += [unit(f"e_{i}") for i in range(7, s + t + 1)]
    sig = [unit(f"s{i}") for i in range(1, s - 6 + 1)]
    tau = [unit(f"t{j}") for j in range(1, t + 1)]
    gens_b = [unit("la"), unit("be"), unit("al"), unit("ep"),
              walk("xi", "ep"), walk("be", "xi")] + sig + tau
    b = make_subalgebra(a, gens_b, idems, label=f"family-bsub({s},{t})")
    al_plus_ep = [f.add(x, y) for x, y in zip(unit("al"), unit("ep"))]
    gens_c = [unit("la"), unit("be"), al_plus_ep,
              walk("xi", "ep"), walk("be", "xi")] + sig + tau
    c = make_subalgebra(a, gens_c, idems, label=f"family-csub({s},{t})")
    return a, b, c


def family_tower(s: int, t: int, field=QQ):
    a, b, c = family_subalgebras(s, t, field)
    return build_tower(a, [c, b, a])


# ---------- the four-vertex cycle algebras ----------


def a3tilde_hereditary(field=QQ) -> AlgebraData:
    q = Quiver(
        ["1", "2", "3", "4"],
        [("a", "2", "1"), ("b", "3", "1"), ("c", "4", "2"), ("d", "4", "3")],
    )
    return build_bound_quiver_algebra(q, [], field, label="a3tilde-hereditary")


def a3tilde_tilted(field=QQ) -> AlgebraData:
    q = Quiver(
        ["1", "2", "3", "4"],
        [("be", "2", "1"), ("de", "3", "1"), ("al", "4", "2"), ("ga", "4", "3")],
    )
    rels = [Relation.monomial(["al", "be"]), Relation.monomial(["ga", "de"])]
    return build_bound_quiver_algebra(q, rels, field, label="a3tilde-tilted")


# ---------- anticommutative multi-arrow ladder ----------


def lambda_tilde(l: int, n: int, field=QQ) -> AlgebraData:
    """l vertices in a row, n parallel arrows per step, anticommuting squares."""
    if l < 2 or n < 1:
        raise ParameterOutOfRange("ladder needs l >= 2 and n >= 1")
    verts = [str(i) for i in range(1, l + 1)]
    arrows = []
    for i in range(1, l):
        for k in range(1, n + 1):
            arrows.append((f"x{k}_{i}", str(i), str(i + 1)))
    rels = []
    for i in range(1, l - 1):
        for k1 in range(1, n + 1):
            # squares vanish, distinct labels anticommute (sum relation)
            rels.append(Relation.monomial([f"x{k1}_{i}", f"x{k1}_{i + 1}"]))
            for k2 in range(k1 + 1, n + 1):
                rels.append(
                    Relation(
                        [
                            (1, (f"x{k1}_{i}", f"x{k2}_{i + 1}")),
                            (1, (f"x{k2}_{i}", f"x{k1}_{i + 1}")),
                        ]
                    )
                )
    return build_bound_quiver_algebra(
        Quiver(verts, arrows), rels, field, label=f"lambda-tilde({l},{n})"
    )


# ---------- tiny staples ----------


def trivial_loop(k: int, field=QQ) -> AlgebraData:
    if k < 2:
        raise ParameterOutOfRange("truncated loop needs exponent >= 2")
    q = Quiver(["v"], [("x", "v", "v")])
    return build_bound_quiver_algebra(q, [Relation.monomial(["x"] * k)], field,
                                      label=f"trivial-loop({k})")


def semisimple(r: int, field=QQ) -> AlgebraData:
    if r < 1:
        raise ParameterOutOfRange("need at least one vertex")
    q = Quiver([str(i) for i in range(1, r + 1)], [])
    return build_bound_quiver_algebra(q, [], field, label=f"semisimple({r})")


# ---------- the entry table ----------


class CorpusEntry:
    def __init__(self, name, params, builder, expected, description=""):
        self.name = name
        self.params = params
        self.builder = builder
        self.expected = expected
        self.description = description

    def build(self, field=QQ, **overrides):
        params = dict(self.params)
        params.update(overrides)
        return self.builder(field=field, **params)

    def to_dict(self):
        return {
            "name": self.name,
            "params": self.params,
            "description": self.description,
            "expected": [e.to_dict() for e in self.expected],
        }


def _family_entry_expected(s, t):
    return [
        Expected("loewy_length", s - 2, "literature"),
        Expected("dim P(1),P(2p),P(3p)", [3, 6, 6], "derived"),
        Expected("pd S(i), 7<=i<=s", 1, "literature"),
        Expected("pd S(s+j), 1<=j<=t", "j+1", "literature"),
        Expected("pd S(1), S(2p), S(3p)", "infinite", "literature"),
        Expected("gl_dim", "infinite", "literature"),
        Expected("pd simple-tail-set", t + 1, "literature"),
        Expected("tri_dim bound (tower)", 5, "literature"),
        Expected("ext_dim bound (tower)", 3, "literature"),
        Expected("tri_dim bound (aggregate)", min(s - 3, t + 8), "literature"),
        Expected("ext_dim bound (aggregate)", t + 5, "literature"),
    ]


def corpus() -> list[CorpusEntry]:
    s, t = 9, 2
    return [
        CorpusEntry(
            "family-a", {"s": s, "t": t},
            lambda field=QQ, s=s, t=t: {"algebra": family_a(s, t, field)},
            [
                Expected("nakayama", True, "literature"),
                Expected("dimension", 45, "derived", "s=9, t=2"),
            ],
            "serial top algebra of the family",
        ),
        CorpusEntry(
            "family-b", {"s": s, "t": t},
            lambda field=QQ, s=s, t=t: {"algebra": family_b_presented(s, t, field)},
            [Expected("dimension", 47, "derived", "s=9, t=2; printed presentation")],
            "middle algebra by its printed presentation",
        ),
        CorpusEntry(
            "family-c", {"s": s, "t": t},
            lambda field=QQ, s=s, t=t: {"algebra": family_c_presented(s, t, field)},
            _family_entry_expected(s, t),
            "bottom algebra by its printed presentation",
        ),
        CorpusEntry(
            "family-tower", {"s": s, "t": t},
            lambda field=QQ, s=s, t=t: _family_tower_objects(s, t, field),
            [
                Expected("tower length", 2, "literature"),
                Expected("top rep-finite", "proved-nakayama", "literature"),
                Expected("dim subalgebras (C,B,A)", [40, 41, 45], "derived",
                         "generated subalgebras differ from the printed presentations"),
            ],
            "generated subalgebra chain inside the serial algebra",
        ),
        CorpusEntry(
            "a3tilde-hereditary", {},
            lambda field=QQ: {"algebra": a3tilde_hereditary(field)},
            [
                Expected("gl_dim", 1, "literature"),
                Expected("dimension", 10, "derived"),
                Expected("ext_dim", 1, "external",
                         "rests on representation-infiniteness, not decided here"),
            ],
            "hereditary four-vertex double-route algebra",
        ),
        CorpusEntry(
            "a3tilde-tilted", {},
            lambda field=QQ: {"algebra": a3tilde_tilted(field)},
            [
                Expected("dimension", 8, "derived"),
                Expected("ext_dim", 0, "external",
                         "representation-finiteness of the tilted algebra is supplied, not proved"),
            ],
            "the tilted companion, bound by the two zero compositions",
        ),
        CorpusEntry(
            "lambda-tilde", {"l": 2, "n": 2},
            lambda field=QQ, l=2, n=2: {"algebra": lambda_tilde(l, n, field)},
            [
                Expected("ext_dim", "min(l-1,n-1)", "external"),
                Expected("rep_dim", "min(l,n)+1", "external"),
            ],
            "anticommuting multi-arrow ladder",
        ),
        CorpusEntry(
            "trivial-loop", {"k": 2},
            lambda field=QQ, k=2: {"algebra": trivial_loop(k, field)},
            [
                Expected("loewy_length", "k", "trivial"),
                Expected("pd S", "infinite", "trivial", "periodic syzygy"),
            ],
            "truncated polynomial algebra",
        ),
        CorpusEntry(
            "semisimple", {"r": 2},
            lambda field=QQ, r=2: {"algebra": semisimple(r, field)},
            [Expected("gl_dim", 0, "trivial")],
            "product of base fields",
        ),
    ]


def _family_tower_objects(s, t, field):
    a, b, c = family_subalgebras(s, t, field)
    tower = build_tower(a, [c, b, a])
    return {"ambient": a, "levels": {"C": c, "B": b, "A": a}, "tower": tower}


def corpus_entry(name: str) -> CorpusEntry:
    for e in corpus():
        if e.name == name:
            return e
    raise KeyError(f"no corpus entry named {name!r}")
