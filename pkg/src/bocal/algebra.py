"""Finite-dimensional algebras: bound quiver quotients, subalgebras, towers.

Conventions.  Relation words and path labels are written in traversal
order, exactly as one reads a walk through the quiver ("a*b" means first
a, then b).  Internally the product x*y is function composition (y acts
first), so left modules satisfy rho(x*y) = rho(x) o rho(y) with no sign
or order exceptions; the constructors perform the reversal.

Every basis is Peirce graded: basis element k lies in e_row[k] * A * e_col[k],
the idempotents themselves are the first ``n_idem`` basis elements, and the
remaining elements span the radical candidate.  The radical certificate
checks that this candidate really is a nilpotent two-sided ideal with split
semisimple quotient; operations that need the radical refuse uncertified
algebras.
"""

from __future__ import annotations

from bocal.linalg import Mat, span_basis, subspace_contains


class AlgebraError(Exception):
    pass


class MalformedRelation(AlgebraError):
    pass


class NonAdmissible(AlgebraError):
    pass


class IdentityMissing(AlgebraError):
    pass


class RadicalUncertified(AlgebraError):
    pass


class NotSubalgebra(AlgebraError):
    pass


class Arrow:
    __slots__ = ("name", "src", "tgt")

    def __init__(self, name: str, src, tgt):
        self.name = name
        self.src = src
        self.tgt = tgt

    def __repr__(self):
        return f"Arrow({self.name}: {self.src}->{self.tgt})"


class Quiver:
    """A finite quiver: vertex ids plus named arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex ids")
        self.arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.src not in vset or a.tgt not in vset:
                raise AlgebraError(f"arrow {a.name} has undeclared endpoint")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    def out_degree(self, v) -> int:
        return sum(1 for a in self.arrows if a.src == v)

    def in_degree(self, v) -> int:
        return sum(1 for a in self.arrows if a.tgt == v)

    def is_linear_uniserial_shape(self) -> bool:
        """True when every vertex has in- and out-degree at most one."""
        return all(
            self.out_degree(v) <= 1 and self.in_degree(v) <= 1 for v in self.vertices
        )

    def reversed(self) -> "Quiver":
        return Quiver(
            self.vertices, [Arrow(a.name, a.tgt, a.src) for a in self.arrows]
        )


class Relation:
    """A linear combination of parallel, equal-length paths (traversal order)."""

    def __init__(self, terms):
        # terms: list of (coefficient, word) with word a sequence of arrow names
        self.terms = [(c, tuple(w)) for c, w in terms]
        if not self.terms:
            raise MalformedRelation("empty relation")

    @staticmethod
    def monomial(word) -> "Relation":
        return Relation([(1, tuple(word))])

    @staticmethod
    def commutator(word_a, word_b) -> "Relation":
        return Relation([(1, tuple(word_a)), (-1, tuple(word_b))])

    def __repr__(self):
        return "Relation(" + " + ".join(f"{c}*{'·'.join(w)}" for c, w in self.terms) + ")"


class ColumnSolver:
    """Solves B x = v repeatedly against a fixed full-column-rank B."""

    def __init__(self, bmat: Mat):
        self.field = bmat.field
        self.cols = bmat.cols
        self.rows = bmat.rows
        aug = bmat.hstack(Mat.identity(bmat.field, bmat.rows))
        R, pivots = aug.rref()
        main = [p for p in pivots if p < bmat.cols]
        if len(main) != bmat.cols:
            raise ValueError("columns are linearly dependent")
        # rows with pivots inside bmat give coordinates; the rest are
        # consistency rows that must annihilate any solvable right-hand side
        self.transform = [row[bmat.cols :] for row in R.data[: len(main)]]
        self.extra = [row[bmat.cols :] for row in R.data[len(main) : len(pivots)]]
        self.pivots = main

    def solve(self, vec):
        """Coordinates of vec in the column basis, or None if outside the span."""
        f = self.field
        out = [f.zero()] * self.cols
        for r, prow in enumerate(self.transform):
            s = f.zero()
            for j, c in enumerate(prow):
                if not f.is_zero(c) and not f.is_zero(vec[j]):
                    s = f.add(s, f.mul(c, vec[j]))
            out[self.pivots[r]] = s
        for prow in self.extra:
            s = f.zero()
            for j, c in enumerate(prow):
                if not f.is_zero(c) and not f.is_zero(vec[j]):
                    s = f.add(s, f.mul(c, vec[j]))
            if not f.is_zero(s):
                return None
        return out


class AlgebraData:
    """A finite-dimensional algebra by exact structure constants.

    ``mult[(i, j)]`` holds the sparse expansion of basis_i * basis_j in the
    internal (function-composition) product; missing keys mean zero.
    """

    def __init__(
        self,
        field,
        labels,
        n_idem,
        row_idem,
        col_idem,
        mult,
        label="",
        quiver=None,
        arrow_basis=None,
        path_len=None,
        ambient=None,
        embedding=None,
        generator_vectors=None,
    ):
        self.field = field
        self.labels = list(labels)
        self.n_idem = n_idem
        self.row_idem = list(row_idem)
        self.col_idem = list(col_idem)
        self.mult = mult
        self.label = label
        self.quiver = quiver
        self.arrow_basis = arrow_basis or {}
        self.path_len = path_len
        self.ambient = ambient
        self.embedding = embedding
        self.generator_vectors = generator_vectors
        self.radical_certified = False
        self.radical_note = "not checked"
        self._lmul = {}
        self._rmul = {}
        self._gen_cache = None

    # ---------- basic structure ----------

    @property
    def dim(self) -> int:
        return len(self.labels)

    def zero_vec(self):
        return [self.field.zero()] * self.dim

    def unit_vec(self, i: int):
        v = self.zero_vec()
        v[i] = self.field.one()
        return v

    def identity_vec(self):
        v = self.zero_vec()
        one = self.field.one()
        for i in range(self.n_idem):
            v[i] = one
        return v

    def radical_indices(self):
        return range(self.n_idem, self.dim)

    def radical_basis(self) -> Mat:
        cols = [self.unit_vec(i) for i in self.radical_indices()]
        return Mat.from_cols(self.field, self.dim, cols)

    def product_basis(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def product_vec(self, u, v):
        f = self.field
        out = [f.zero()] * self.dim
        for i, a in enumerate(u):
            if f.is_zero(a):
                continue
            for j, b in enumerate(v):
                if f.is_zero(b):
                    continue
                entry = self.mult.get((i, j))
                if not entry:
                    continue
                ab = f.mul(a, b)
                for k, c in entry.items():
                    out[k] = f.add(out[k], f.mul(ab, c))
        return out

    def left_mult_mat(self, i: int) -> Mat:
        m = self._lmul.get(i)
        if m is None:
            m = Mat.zeros(self.field, self.dim, self.dim)
            for j in range(self.dim):
                for k, c in self.mult.get((i, j), {}).items():
                    m.data[k][j] = c
            self._lmul[i] = m
        return m

    def left_mult_of_vec(self, vec) -> Mat:
        f = self.field
        out = Mat.zeros(f, self.dim, self.dim)
        for i, a in enumerate(vec):
            if f.is_zero(a):
                continue
            li = self.left_mult_mat(i)
            for r in range(self.dim):
                row = li.data[r]
                orow = out.data[r]
                for c in range(self.dim):
                    x = row[c]
                    if not f.is_zero(x):
                        orow[c] = f.add(orow[c], f.mul(a, x))
        return out

    def cartan_matrix(self):
        """dim e_i A e_j per idempotent pair, as a nested list of ints."""
        C = [[0] * self.n_idem for _ in range(self.n_idem)]
        for k in range(self.dim):
            C[self.row_idem[k]][self.col_idem[k]] += 1
        return C

    def is_semisimple(self) -> bool:
        return self.dim == self.n_idem

    # ---------- generators ----------

    def generating_vectors(self):
        """Vectors that, with the idempotents, generate the algebra.

        Used to cut intertwining systems down to one equation per generator.
        """
        if self._gen_cache is not None:
            return self._gen_cache
        if self.generator_vectors is not None:
            gens = [list(v) for v in self.generator_vectors]
        elif self.radical_certified:
            gens = self._radical_generators()
        else:
            gens = [self.unit_vec(i) for i in range(self.dim)]
        self._gen_cache = gens
        return gens

    def _radical_generators(self):
        # lifts of rad/rad^2: enough to generate any certified algebra
        f = self.field
        rad = list(self.radical_indices())
        sq_cols = []
        for i in rad:
            for j in rad:
                entry = self.mult.get((i, j))
                if entry:
                    v = self.zero_vec()
                    for k, c in entry.items():
                        v[k] = c
                    sq_cols.append(v)
        sq = span_basis(Mat.from_cols(f, self.dim, sq_cols)) if sq_cols else Mat.zeros(f, self.dim, 0)
        gens = []
        current = sq
        for i in rad:
            v = Mat.column(f, self.unit_vec(i))
            if not subspace_contains(current, v):
                gens.append(self.unit_vec(i))
                current = span_basis(current.hstack(v))
        return gens

    # ---------- verification ----------

    def verify_idempotent_system(self) -> bool:
        f = self.field
        for i in range(self.n_idem):
            ei = self.unit_vec(i)
            if self.product_vec(ei, ei) != ei:
                return False
            for j in range(self.n_idem):
                if i != j:
                    p = self.product_vec(ei, self.unit_vec(j))
                    if any(not f.is_zero(x) for x in p):
                        return False
        one = self.identity_vec()
        for k in range(self.dim):
            xk = self.unit_vec(k)
            if self.product_vec(one, xk) != xk or self.product_vec(xk, one) != xk:
                return False
        return True

    def verify_associativity(self) -> bool:
        f = self.field
        n = self.dim
        for i in range(n):
            for j in range(n):
                pij = self.mult.get((i, j), {})
                for k in range(n):
                    left = {}
                    for m, c in pij.items():
                        for t, d in self.mult.get((m, k), {}).items():
                            left[t] = f.add(left.get(t, f.zero()), f.mul(c, d))
                    right = {}
                    for m, c in self.mult.get((j, k), {}).items():
                        for t, d in self.mult.get((i, m), {}).items():
                            right[t] = f.add(right.get(t, f.zero()), f.mul(c, d))
                    keys = set(left) | set(right)
                    for t in keys:
                        if not f.eq(left.get(t, f.zero()), right.get(t, f.zero())):
                            return False
        return True

    def verify_grading(self) -> bool:
        for k in range(self.dim):
            er = self.unit_vec(self.row_idem[k])
            ec = self.unit_vec(self.col_idem[k])
            xk = self.unit_vec(k)
            if self.product_vec(er, xk) != xk or self.product_vec(xk, ec) != xk:
                return False
        return True

    def certify_radical(self):
        """Check the trailing basis elements really span rad(A); set the flag.

        Certificate: two-sided ideal, nilpotent, and the idempotent images
        span the quotient (so the quotient is split semisimple and each
        idempotent is primitive).
        """
        f = self.field
        rad = set(self.radical_indices())
        # two-sided ideal with no idempotent component in any product
        for j in rad:
            for i in range(self.dim):
                for entry in (self.mult.get((i, j), {}), self.mult.get((j, i), {})):
                    for k, c in entry.items():
                        if k < self.n_idem and not f.is_zero(c):
                            self.radical_certified = False
                            self.radical_note = (
                                f"product involving {self.labels[j]} leaves the candidate ideal"
                            )
                            return False
        # nilpotency
        current = [self.unit_vec(i) for i in rad]
        power = 1
        while current and power <= self.dim + 1:
            nxt_cols = []
            for i in rad:
                li = None
                for v in current:
                    if li is None:
                        li = self.left_mult_mat(i)
                    w = li.mul_vec(v)
                    if any(not f.is_zero(x) for x in w):
                        nxt_cols.append(w)
            if not nxt_cols:
                self.radical_certified = True
                self.radical_note = f"nilpotent of index {power}"
                return True
            nxt = span_basis(Mat.from_cols(f, self.dim, nxt_cols))
            current = nxt.col_list()
            power += 1
        self.radical_certified = False
        self.radical_note = "candidate ideal is not nilpotent"
        return False

    def certify(self) -> dict:
        report = {
            "idempotents": self.verify_idempotent_system(),
            "grading": self.verify_grading(),
            "associative": self.verify_associativity(),
            "radical": self.certify_radical(),
        }
        report["ok"] = all(report.values())
        return report

    # ---------- embeddings ----------

    def root_ambient(self):
        a = self
        while a.ambient is not None:
            a = a.ambient
        return a

    def embedding_to_root(self) -> Mat:
        """Composite embedding into the outermost ambient algebra."""
        if self.ambient is None:
            return Mat.identity(self.field, self.dim)
        emb = self.embedding
        a = self.ambient
        while a.ambient is not None:
            emb = a.embedding @ emb
            a = a.ambient
        return emb

    def vec_to_root(self, vec):
        if self.ambient is None:
            return list(vec)
        return self.embedding_to_root().mul_vec(vec)

    def __repr__(self):
        return f"AlgebraData({self.label or 'unnamed'}, dim={self.dim})"


def opposite_algebra(a: AlgebraData) -> AlgebraData:
    """Same basis, transposed structure constants."""
    mult = {}
    for (i, j), entry in a.mult.items():
        mult[(j, i)] = dict(entry)
    op = AlgebraData(
        a.field,
        a.labels,
        a.n_idem,
        a.col_idem,
        a.row_idem,
        mult,
        label=(a.label + "^op") if a.label else "op",
        quiver=a.quiver.reversed() if a.quiver else None,
        arrow_basis=dict(a.arrow_basis),
        path_len=list(a.path_len) if a.path_len else None,
        generator_vectors=[list(v) for v in a.generator_vectors] if a.generator_vectors else None,
    )
    op.radical_certified = a.radical_certified
    op.radical_note = a.radical_note
    return op


# ---------- bound quiver algebras ----------


def _check_relation(q: Quiver, rel: Relation):
    ends = None
    length = None
    for coeff, word in rel.terms:
        if len(word) < 2:
            raise MalformedRelation("relation words must have length >= 2")
        if length is None:
            length = len(word)
        elif len(word) != length:
            raise MalformedRelation("relation is not length-homogeneous")
        for name in word:
            if name not in q.arrow_index:
                raise MalformedRelation(f"unknown arrow {name!r}")
        arrows = [q.arrows[q.arrow_index[n]] for n in word]
        for a, b in zip(arrows, arrows[1:]):
            if a.tgt != b.src:
                raise MalformedRelation(
                    f"word {'*'.join(word)} is not composable at {a.name}->{b.name}"
                )
        pair = (arrows[0].src, arrows[-1].tgt)
        if ends is None:
            ends = pair
        elif ends != pair:
            raise MalformedRelation("relation words are not parallel")


class _GradedIdeal:
    """Ideal data at one path length: paths, reduced spanning rows, pivots."""

    def __init__(self, field, paths):
        self.field = field
        self.paths = paths
        self.index = {p: i for i, p in enumerate(paths)}
        self.rows = []  # reduced echelon rows (vectors over path coords)
        self.pivot_of_row = []
        self.pivot_set = {}

    def reduce(self, vec):
        f = self.field
        v = list(vec)
        for r, p in enumerate(self.pivot_of_row):
            c = v[p]
            if f.is_zero(c):
                continue
            row = self.rows[r]
            for j in range(p, len(v)):
                if not f.is_zero(row[j]):
                    v[j] = f.sub(v[j], f.mul(c, row[j]))
        return v

    def add(self, vec) -> bool:
        f = self.field
        v = self.reduce(vec)
        p = None
        for j, x in enumerate(v):
            if not f.is_zero(x):
                p = j
                break
        if p is None:
            return False
        inv = f.inv(v[p])
        v = [f.mul(inv, x) for x in v]
        # back-reduce existing rows
        for r, row in enumerate(self.rows):
            c = row[p]
            if not f.is_zero(c):
                self.rows[r] = [f.sub(a, f.mul(c, b)) for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivot_of_row.append(p)
        self.pivot_set[p] = len(self.rows) - 1
        order = sorted(range(len(self.rows)), key=lambda r: self.pivot_of_row[r])
        self.rows = [self.rows[r] for r in order]
        self.pivot_of_row = [self.pivot_of_row[r] for r in order]
        self.pivot_set = {p: r for r, p in enumerate(self.pivot_of_row)}
        return True

    def complement(self):
        return [i for i in range(len(self.paths)) if i not in self.pivot_set]


def build_bound_quiver_algebra(
    q: Quiver, rels, field, label="", max_len: int = 64
) -> AlgebraData:
    """Path classes in normal form modulo the admissible ideal.

    Enumerates paths by increasing length, saturating the relation span by
    front and back arrow multiplication, and stops at the first length where
    every path lies in the ideal.  Raises NonAdmissible past ``max_len``.
    """
    for rel in rels:
        _check_relation(q, rel)
    f = field
    arrows = q.arrows
    rel_by_len: dict[int, list[Relation]] = {}
    for rel in rels:
        rel_by_len.setdefault(len(rel.terms[0][1]), []).append(rel)

    # paths per length, as tuples of arrow indices in traversal order
    paths_by_len = [[()] * 0]
    level0 = [(q.vertex_index[v],) for v in q.vertices]  # sentinel handled below
    ideals: dict[int, _GradedIdeal] = {}
    basis_words = []  # (length, word tuple) for non-trivial classes
    reducers = {}

    prev_paths = [((), q.vertex_index[v], q.vertex_index[v]) for v in q.vertices]
    # entries: (word, src_idx, tgt_idx)
    length = 1
    while True:
        cur = []
        for word, s, t in prev_paths:
            for ai, a in enumerate(arrows):
                if q.vertex_index[a.src] == t:
                    cur.append((word + (ai,), s, q.vertex_index[a.tgt]))
        if not cur:
            top_len = length - 1
            break
        ideal = _GradedIdeal(f, [w for w, _, _ in cur])
        # relation generators of this exact length
        for rel in rel_by_len.get(length, []):
            vec = [f.zero()] * len(cur)
            for coeff, wnames in rel.terms:
                widx = tuple(q.arrow_index[n] for n in wnames)
                vec[ideal.index[widx]] = f.add(
                    vec[ideal.index[widx]],
                    coeff if not isinstance(coeff, int) else f.from_int(coeff),
                )
            ideal.add(vec)
        # saturate from the previous length
        prev_ideal = ideals.get(length - 1)
        if prev_ideal is not None:
            for row in prev_ideal.rows:
                support = [j for j, x in enumerate(row) if not f.is_zero(x)]
                if not support:
                    continue
                w0 = prev_ideal.paths[support[0]]
                src0 = q.vertex_index[arrows[w0[0]].src]
                tgt0 = q.vertex_index[arrows[w0[-1]].tgt]
                for ai, a in enumerate(arrows):
                    # back extension: word then a
                    if q.vertex_index[a.src] == tgt0:
                        vec = [f.zero()] * len(cur)
                        for j in support:
                            vec[ideal.index[prev_ideal.paths[j] + (ai,)]] = row[j]
                        ideal.add(vec)
                    # front extension: a then word
                    if q.vertex_index[a.tgt] == src0:
                        vec = [f.zero()] * len(cur)
                        for j in support:
                            vec[ideal.index[(ai,) + prev_ideal.paths[j]]] = row[j]
                        ideal.add(vec)
        ideals[length] = ideal
        comp = ideal.complement()
        if not comp:
            top_len = length - 1
            break
        for ci in comp:
            basis_words.append((length, ideal.paths[ci]))
        if length > max_len:
            raise NonAdmissible(
                f"ideal saturation did not terminate within length {max_len}"
            )
        prev_paths = [
            (w, q.vertex_index[arrows[w[0]].src], q.vertex_index[arrows[w[-1]].tgt])
            for w in ideal.paths
        ]
        length += 1

    # assemble the basis: trivial paths first, then surviving path classes
    labels = [f"e_{v}" for v in q.vertices]
    row_idem = list(range(len(q.vertices)))
    col_idem = list(range(len(q.vertices)))
    path_len = [0] * len(q.vertices)
    word_to_basis = {}
    for ln, w in basis_words:
        word_to_basis[w] = len(labels)
        labels.append("*".join(arrows[ai].name for ai in w))
        row_idem.append(q.vertex_index[arrows[w[-1]].tgt])
        col_idem.append(q.vertex_index[arrows[w[0]].src])
        path_len.append(ln)

    def normal_form(word):
        """Sparse dict of basis coefficients for a composable word."""
        ln = len(word)
        if ln > top_len:
            return {}
        ideal = ideals.get(ln)
        if ideal is None:
            return {word_to_basis[word]: f.one()} if word in word_to_basis else {}
        vec = [f.zero()] * len(ideal.paths)
        vec[ideal.index[word]] = f.one()
        red = ideal.reduce(vec)
        out = {}
        for j, x in enumerate(red):
            if not f.is_zero(x):
                out[word_to_basis[ideal.paths[j]]] = x
        return out

    mult = {}
    n_vert = len(q.vertices)
    dim = len(labels)
    all_words = {i: None for i in range(n_vert)}
    basis_word = [None] * dim
    for w, i in word_to_basis.items():
        basis_word[i] = w
    for i in range(dim):
        for j in range(dim):
            # internal product: (word_j then word_i) in traversal order
            if i < n_vert and j < n_vert:
                if i == j:
                    mult[(i, j)] = {i: f.one()}
                continue
            if i < n_vert:
                # e_i * x_j = x_j iff row(x_j) == i
                if row_idem[j] == i:
                    mult[(i, j)] = {j: f.one()}
                continue
            if j < n_vert:
                if col_idem[i] == j:
                    mult[(i, j)] = {i: f.one()}
                continue
            if col_idem[i] != row_idem[j]:
                continue
            prod = normal_form(basis_word[j] + basis_word[i])
            if prod:
                mult[(i, j)] = prod

    arrow_basis = {}
    for ai, a in enumerate(arrows):
        bi = word_to_basis.get((ai,))
        if bi is not None:
            arrow_basis[a.name] = bi

    alg = AlgebraData(
        f,
        labels,
        n_vert,
        row_idem,
        col_idem,
        mult,
        label=label,
        quiver=q,
        arrow_basis=arrow_basis,
        path_len=path_len,
    )
    alg.generator_vectors = [alg.unit_vec(bi) for bi in arrow_basis.values()]
    alg.radical_certified = True
    alg.radical_note = f"graded: path classes of length >= 1, nilpotency index {top_len + 1}"
    alg._relation_dump = [
        [
            {
                "coeff": f.format(c if not isinstance(c, int) else f.from_int(c)),
                "word": list(w),
            }
            for c, w in rel.terms
        ]
        for rel in rels
    ]
    return alg


def from_mult_table(field, labels, n_idem, row_idem, col_idem, mult, label="") -> AlgebraData:
    """Wrap an explicit structure-constant table; radical is certified if possible."""
    alg = AlgebraData(field, labels, n_idem, row_idem, col_idem, mult, label=label)
    alg.certify_radical()
    return alg


# ---------- subalgebras ----------


class _AmbientSpan:
    """Echelonized span of vectors in the ambient coordinate space."""

    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        self.rows = []
        self.pivots = []

    def reduce(self, vec):
        f = self.field
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if f.is_zero(c):
                continue
            for j in range(self.dim):
                if not f.is_zero(row[j]):
                    v[j] = f.sub(v[j], f.mul(c, row[j]))
        return v

    def add(self, vec):
        """Extend the span; returns the normalized new echelon row, or None."""
        f = self.field
        v = self.reduce(vec)
        p = next((j for j, x in enumerate(v) if not f.is_zero(x)), None)
        if p is None:
            return None
        inv = f.inv(v[p])
        v = [f.mul(inv, x) for x in v]
        for i, row in enumerate(self.rows):
            c = row[p]
            if not f.is_zero(c):
                self.rows[i] = [f.sub(a, f.mul(c, b)) for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)
        order = sorted(range(len(self.rows)), key=lambda r: self.pivots[r])
        self.rows = [self.rows[r] for r in order]
        self.pivots = [self.pivots[r] for r in order]
        return v

    def contains(self, vec) -> bool:
        f = self.field
        return all(f.is_zero(x) for x in self.reduce(vec))


def make_subalgebra(ambient: AlgebraData, generators, idems, label="") -> AlgebraData:
    """Close generators and idempotents under multiplication inside ambient.

    ``generators`` and ``idems`` are ambient coordinate vectors.  The
    radical candidate is the closure intersected with rad(ambient); the
    result is flagged (not rejected) when its certificate fails.
    """
    f = ambient.field
    idems = [list(v) for v in idems]
    for i, e in enumerate(idems):
        if ambient.product_vec(e, e) != e:
            raise AlgebraError(f"idempotent {i} fails e*e = e")
        for j, e2 in enumerate(idems):
            if i != j:
                p = ambient.product_vec(e, e2)
                if any(not f.is_zero(x) for x in p):
                    raise AlgebraError(f"idempotents {i}, {j} are not orthogonal")
    total = [f.zero()] * ambient.dim
    for e in idems:
        total = [f.add(a, b) for a, b in zip(total, e)]
    if total != ambient.identity_vec():
        raise IdentityMissing("idempotents do not sum to the ambient identity")

    span = _AmbientSpan(f, ambient.dim)
    for v in idems:
        span.add(v)
    for v in generators:
        span.add(list(v))
    frontier = [list(r) for r in span.rows]
    while frontier:
        new = []
        basis_now = [list(r) for r in span.rows]
        for u in frontier:
            for v in basis_now:
                for p in (ambient.product_vec(u, v), ambient.product_vec(v, u)):
                    if any(not f.is_zero(x) for x in p):
                        added = span.add(p)
                        if added is not None:
                            new.append(added[:])
        frontier = new

    # Peirce-grade the closure against the supplied idempotent system
    n_idem = len(idems)
    graded = _AmbientSpan(f, ambient.dim)
    basis_vecs = []
    row_idem = []
    col_idem = []
    labels = []
    for i, e in enumerate(idems):
        graded.add(e)
        basis_vecs.append(list(e))
        row_idem.append(i)
        col_idem.append(i)
        labels.append(f"E{i}")
    rad_note = None
    for i in range(n_idem):
        for j in range(n_idem):
            for srow in span.rows:
                comp = ambient.product_vec(idems[i], ambient.product_vec(srow, idems[j]))
                if any(not f.is_zero(x) for x in comp):
                    if graded.add(comp) is not None:
                        basis_vecs.append(list(comp))
                        row_idem.append(i)
                        col_idem.append(j)
                        labels.append(f"r{len(labels) - n_idem}")
    if len(graded.rows) != len(span.rows):
        raise AlgebraError("Peirce grading lost dimensions; idempotent system is inconsistent")

    bmat = Mat.from_cols(f, ambient.dim, basis_vecs)
    solver = ColumnSolver(bmat)
    dim = len(basis_vecs)
    mult = {}
    for i in range(dim):
        for j in range(dim):
            if col_idem[i] != row_idem[j]:
                continue
            p = ambient.product_vec(basis_vecs[i], basis_vecs[j])
            coords = solver.solve(p)
            if coords is None:
                raise AlgebraError("closure is not multiplicatively closed (internal error)")
            entry = {k: c for k, c in enumerate(coords) if not f.is_zero(c)}
            if entry:
                mult[(i, j)] = entry

    gen_vectors = []
    for g in generators:
        coords = solver.solve(list(g))
        if coords is None:
            raise AlgebraError("generator escaped its own closure (internal error)")
        gen_vectors.append(coords)

    alg = AlgebraData(
        f,
        labels,
        n_idem,
        row_idem,
        col_idem,
        mult,
        label=label,
        ambient=ambient,
        embedding=bmat,
        generator_vectors=gen_vectors,
    )
    alg.certify_radical()
    if alg.radical_certified and ambient.radical_certified:
        # cross-check: candidate equals closure n rad(ambient)
        amb_rad_rows = set(ambient.radical_indices())
        for k in range(n_idem, dim):
            vec = basis_vecs[k]
            if any(not f.is_zero(vec[t]) for t in range(ambient.n_idem)):
                alg.radical_certified = False
                alg.radical_note = "candidate radical is not inside rad(ambient)"
                break
    if rad_note:
        alg.radical_note = rad_note
    return alg


# ---------- left idealized extensions and towers ----------


class LeftIdealCheck:
    """Certificate or refutation for 'rad(lam) is a left ideal of gam'."""

    def __init__(self, lam, gam, holds, pairs=None, refutation=None):
        self.lam = lam
        self.gam = gam
        self.holds = holds
        self.pairs = pairs or []
        self.refutation = refutation

    def __repr__(self):
        verdict = "holds" if self.holds else "fails"
        return f"LeftIdealCheck({self.lam.label} in {self.gam.label}: {verdict})"


def _common_root(lam: AlgebraData, gam: AlgebraData):
    ra, rb = lam.root_ambient(), gam.root_ambient()
    if ra is not rb:
        raise NotSubalgebra("algebras are not embedded in a common ambient algebra")
    return ra


def is_left_idealized_extension(lam: AlgebraData, gam: AlgebraData) -> LeftIdealCheck:
    """Check gam * rad(lam) <= rad(lam) by expanding every basis product."""
    root = _common_root(lam, gam)
    f = root.field
    emb_l = lam.embedding_to_root()
    emb_g = gam.embedding_to_root()
    if not subspace_contains(emb_g, emb_l):
        raise NotSubalgebra(f"{lam.label or 'lam'} is not contained in {gam.label or 'gam'}")
    if lam.vec_to_root(lam.identity_vec()) != gam.vec_to_root(gam.identity_vec()):
        raise NotSubalgebra("the two algebras do not share the same identity")
    if not lam.radical_certified:
        raise RadicalUncertified(f"radical of {lam.label or 'lam'} is not certified")

    rad_cols = [lam.vec_to_root(lam.unit_vec(i)) for i in lam.radical_indices()]
    if not rad_cols:
        return LeftIdealCheck(lam, gam, True)
    rad_mat = Mat.from_cols(f, root.dim, rad_cols)
    solver = ColumnSolver(span_basis(rad_mat))
    pairs = []
    for gi in range(gam.dim):
        g = gam.vec_to_root(gam.unit_vec(gi))
        for ri, r in enumerate(rad_cols):
            p = root.product_vec(g, r)
            if all(f.is_zero(x) for x in p):
                pairs.append((gi, ri, None))
                continue
            coords = solver.solve(p)
            if coords is None:
                return LeftIdealCheck(
                    lam, gam, False, refutation={"gam_index": gi, "rad_index": ri, "product": p}
                )
            pairs.append((gi, ri, coords))
    return LeftIdealCheck(lam, gam, True, pairs=pairs)


class AlgebraTower:
    """A verified chain lam_0 <= lam_1 <= ... <= lam_m inside one ambient algebra."""

    def __init__(self, ambient, levels, checks, top_rep_finite, top_note=""):
        self.ambient = ambient
        self.levels = levels
        self.checks = checks
        self.top_rep_finite = top_rep_finite
        self.top_note = top_note

    @property
    def m(self) -> int:
        return len(self.levels) - 1

    def __repr__(self):
        names = " <= ".join(lv.label or "?" for lv in self.levels)
        return f"AlgebraTower({names}; m={self.m}, top={self.top_rep_finite})"


def build_tower(ambient: AlgebraData, levels, assert_top_rep_finite=False) -> AlgebraTower:
    """Run the left-idealized-extension check on every adjacent pair."""
    if not levels:
        raise AlgebraError("tower needs at least one level")
    for lv in levels:
        if lv.root_ambient() is not ambient.root_ambient():
            raise AlgebraError("tower level not embedded in the stated ambient algebra")
    checks = []
    for idx, (lo, hi) in enumerate(zip(levels, levels[1:])):
        chk = is_left_idealized_extension(lo, hi)
        if not chk.holds:
            raise AlgebraError(
                f"tower step {idx} fails: rad({lo.label}) is not a left ideal of {hi.label}"
            )
        checks.append(chk)
    top = levels[-1]
    if top.quiver is not None and top.quiver.is_linear_uniserial_shape():
        status, note = "proved-nakayama", "quiver has in/out degree <= 1 at every vertex"
    elif assert_top_rep_finite:
        status, note = "asserted", "user-asserted without proof object"
    else:
        status, note = "unknown", "no finiteness evidence"
    return AlgebraTower(ambient, levels, checks, status, note)
