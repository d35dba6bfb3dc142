"""Scratch validation of the family algebras before freezing corpus values."""

from bocal.linalg import QQ
from bocal.algebra import (
    Quiver, Relation, build_bound_quiver_algebra, make_subalgebra,
    is_left_idealized_extension, build_tower,
)


def family_a(s, t, field=QQ):
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
    rels = [Relation.monomial(["al", "be", "xi", "ep", "la"]),
            Relation.monomial(["t1", f"s{s-6}"])]
    for i in range(1, t):
        rels.append(Relation.monomial([f"t{i+1}", f"t{i}"]))
    return build_bound_quiver_algebra(Quiver(verts, arrows), rels, field, label=f"A({s},{t})")


def family_b_presented(s, t, field=QQ):
    verts = ["1", "2p", "3p"] + [str(i) for i in range(7, s + t + 1)]
    arrows = [
        ("ga", "1", "2p"),
        ("be", "2p", "1"),
        ("la", "2p", "2p"),
        ("de", "2p", "3p"),
        ("al", "3p", "2p"),
        ("ep", "3p", "2p"),
        ("s1", "7", "3p"),
    ]
    for i in range(2, s - 6 + 1):
        arrows.append((f"s{i}", str(6 + i), str(5 + i)))
    for j in range(1, t + 1):
        arrows.append((f"t{j}", str(s + j), str(s + j - 1)))
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
        Relation.monomial(["t1", f"s{s-6}"]),
    ]
    for i in range(1, t):
        rels.append(Relation.monomial([f"t{i+1}", f"t{i}"]))
    return build_bound_quiver_algebra(Quiver(verts, arrows), rels, field, label=f"Bq({s},{t})")


def family_c_presented(s, t, field=QQ):
    verts = ["1", "2p", "3p"] + [str(i) for i in range(7, s + t + 1)]
    arrows = [
        ("ga", "1", "2p"),
        ("be", "2p", "1"),
        ("la", "2p", "2p"),
        ("de", "2p", "3p"),
        ("ph", "3p", "2p"),
        ("s1", "7", "3p"),
    ]
    for i in range(2, s - 6 + 1):
        arrows.append((f"s{i}", str(6 + i), str(5 + i)))
    for j in range(1, t + 1):
        arrows.append((f"t{j}", str(s + j), str(s + j - 1)))
    rels = [
        Relation.commutator(["be", "ga"], ["de", "ph"]),
        Relation.monomial(["ga", "be"]),
        Relation.monomial(["ga", "de"]),
        Relation.monomial(["la", "la"]),
        Relation.monomial(["la", "be"]),
        Relation.monomial(["la", "de"]),
        Relation.monomial(["ph", "be", "ga", "la"]),
        Relation.monomial(["t1", f"s{s-6}"]),
    ]
    for i in range(1, t):
        rels.append(Relation.monomial([f"t{i+1}", f"t{i}"]))
    return build_bound_quiver_algebra(Quiver(verts, arrows), rels, field, label=f"Cq({s},{t})")


def subalgebras(s, t, field=QQ):
    A = family_a(s, t, field)

    def unit(label):
        return A.unit_vec(A.labels.index(label))

    def vsum(*labels):
        out = A.zero_vec()
        for l in labels:
            v = unit(l)
            out = [A.field.add(a, b) for a, b in zip(out, v)]
        return out

    def prod(*labels):
        # traversal-order product of arrow labels
        vecs = [unit(l) for l in labels]
        out = vecs[0]
        for v in vecs[1:]:
            out = A.product_vec(v, out)
        return out

    e1 = unit("e_1")
    e2p = vsum("e_2", "e_4", "e_5")
    e3p = vsum("e_3", "e_6")
    tails = [unit(f"e_{i}") for i in range(7, s + t + 1)]
    idems = [e1, e2p, e3p] + tails

    sig = [unit(f"s{i}") for i in range(1, s - 6 + 1)]
    tau = [unit(f"t{j}") for j in range(1, t + 1)]
    gens_b = [unit("la"), unit("be"), unit("al"), unit("ep"),
              prod("xi", "ep"), prod("be", "xi")] + sig + tau
    B = make_subalgebra(A, gens_b, idems, label=f"Bsub({s},{t})")

    al_plus_ep = [A.field.add(a, b) for a, b in zip(unit("al"), unit("ep"))]
    gens_c = [unit("la"), unit("be"), al_plus_ep,
              prod("xi", "ep"), prod("be", "xi")] + sig + tau
    # embed C inside A directly (same ambient); B contains it, checked below
    C = make_subalgebra(A, gens_c, idems, label=f"Csub({s},{t})")
    return A, B, C


def proj_dims(alg):
    out = {}
    for i in range(alg.n_idem):
        out[alg.labels[i]] = sum(1 for k in range(alg.dim) if alg.col_idem[k] == i)
    return out


if __name__ == "__main__":
    s, t = 9, 2
    A = family_a(s, t)
    print("dim A =", A.dim, "(expect 45)")
    Bq = family_b_presented(s, t)
    print("dim Bq =", Bq.dim, "(expect 47)")
    Cq = family_c_presented(s, t)
    print("dim Cq =", Cq.dim, "(expect 43)")
    print("Cq projective dims:", proj_dims(Cq), "(expect 1:3, 2p:6, 3p:6, 7:7, 8:8, 9:9, 10:2, 11:2)")
    print("Bq projective dims:", proj_dims(Bq))

    A, B, C = subalgebras(s, t)
    print("dim Bsub =", B.dim, "(expect 41)  rad cert:", B.radical_certified, B.radical_note)
    print("dim Csub =", C.dim, "(expect 40)  rad cert:", C.radical_certified, C.radical_note)
    print("Csub projective dims:", proj_dims(C), "(expect 1:3, 2p:6, 3p:6, 7:6, 8:7, 9:8, 10:2, 11:2)")
    print("Bsub projective dims:", proj_dims(B))

    chk_cb = is_left_idealized_extension(C, B)
    print("rad(C) left ideal in B:", chk_cb.holds)
    chk_ba = is_left_idealized_extension(B, A)
    print("rad(B) left ideal in A:", chk_ba.holds)
    chk_ca = is_left_idealized_extension(C, A)
    print("rad(C) left ideal in A:", chk_ca.holds)

    tower = build_tower(A, [C, B, A])
    print("tower:", tower)

    print("A cartan row sums:", [sum(r) for r in A.cartan_matrix()])
    print("certify A:", family_a(7, 2).certify())
