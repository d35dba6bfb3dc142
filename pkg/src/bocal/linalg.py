"""Exact dense linear algebra over the rationals and prime fields.

Scalars are plain ``fractions.Fraction`` objects (over Q) or small ints
(over F_p); a field object mediates all arithmetic so the rest of the
package never needs to know which field it is running over.  Elimination
always picks the first nonzero entry in column order, so every basis this
module returns is reproducible byte for byte.
"""

from __future__ import annotations

from fractions import Fraction


class Rationals:
    """Field of arbitrary-precision rationals."""

    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def div(self, x, y):
        return Fraction(x) / y

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, x, y) -> bool:
        return x == y

    def format(self, x) -> str:
        return str(Fraction(x))

    def parse(self, s: str):
        return Fraction(s)

    def random(self, rng):
        # small integers keep intermediate fractions tame
        return Fraction(rng.randint(-3, 3))

    def spec(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field with p elements, p a (verified) prime."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def div(self, x, y):
        return (x * self.inv(y)) % self.p

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def eq(self, x, y) -> bool:
        return (x - y) % self.p == 0

    def format(self, x) -> str:
        return f"{x % self.p} mod {self.p}"

    def parse(self, s: str):
        head, _, tail = s.partition("mod")
        if tail.strip() and int(tail) != self.p:
            raise ValueError(f"scalar {s!r} belongs to F_{int(tail)}, not F_{self.p}")
        return int(head) % self.p

    def random(self, rng):
        return rng.randrange(self.p)

    def spec(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = Rationals()


def field_from_spec(spec):
    """Decode the field part of a description file: "Q" or {"Fp": p}."""
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return PrimeField(int(spec["Fp"]))
    raise ValueError(f"unrecognized field spec {spec!r}")


class Mat:
    """Dense matrix over an exact field; data is row-major lists."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows: int, cols: int, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    # ---------- constructors ----------

    @staticmethod
    def zeros(field, rows: int, cols: int) -> "Mat":
        z = field.zero()
        return Mat(field, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field, n: int) -> "Mat":
        m = Mat.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.data[i][i] = one
        return m

    @staticmethod
    def from_rows(field, rows) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return Mat(field, len(rows), ncols, rows)

    @staticmethod
    def from_int_rows(field, rows) -> "Mat":
        return Mat.from_rows(field, [[field.from_int(x) for x in r] for r in rows])

    @staticmethod
    def from_cols(field, nrows: int, cols) -> "Mat":
        m = Mat.zeros(field, nrows, len(cols))
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise ValueError("column of wrong height")
            for i, x in enumerate(c):
                m.data[i][j] = x
        return m

    @staticmethod
    def column(field, vec) -> "Mat":
        return Mat(field, len(vec), 1, [[x] for x in vec])

    # ---------- basic access ----------

    def copy(self) -> "Mat":
        return Mat(self.field, self.rows, self.cols, [row[:] for row in self.data])

    def col(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def col_list(self) -> list[list]:
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        z = self.field.is_zero
        return all(z(x) for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols) or self.field != other.field:
            return False
        eq = self.field.eq
        return all(
            eq(self.data[i][j], other.data[i][j])
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __hash__(self):
        raise TypeError("Mat is not hashable")

    def __repr__(self):
        fmt = self.field.format
        body = "; ".join(" ".join(fmt(x) for x in row) for row in self.data)
        return f"Mat({self.rows}x{self.cols}: {body})"

    # ---------- arithmetic ----------

    def __add__(self, other: "Mat") -> "Mat":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        add = self.field.add
        return Mat(
            self.field,
            self.rows,
            self.cols,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        sub = self.field.sub
        return Mat(
            self.field,
            self.rows,
            self.cols,
            [
                [sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __neg__(self) -> "Mat":
        neg = self.field.neg
        return Mat(self.field, self.rows, self.cols, [[neg(x) for x in row] for row in self.data])

    def scale(self, c) -> "Mat":
        mul = self.field.mul
        return Mat(self.field, self.rows, self.cols, [[mul(c, x) for x in row] for row in self.data])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        is_zero, add, mul = f.is_zero, f.add, f.mul
        out = Mat.zeros(f, self.rows, other.cols)
        odata = out.data
        for i in range(self.rows):
            srow = self.data[i]
            orow = odata[i]
            for k in range(self.cols):
                a = srow[k]
                if is_zero(a):
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if not is_zero(b):
                        orow[j] = add(orow[j], mul(a, b))
        return out

    def mul_vec(self, vec: list) -> list:
        assert len(vec) == self.cols
        f = self.field
        out = [f.zero()] * self.rows
        for k, a in enumerate(vec):
            if f.is_zero(a):
                continue
            for i in range(self.rows):
                b = self.data[i][k]
                if not f.is_zero(b):
                    out[i] = f.add(out[i], f.mul(b, a))
        return out

    def transpose(self) -> "Mat":
        return Mat(
            self.field,
            self.cols,
            self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def hstack(self, other: "Mat") -> "Mat":
        assert self.rows == other.rows
        return Mat(
            self.field,
            self.rows,
            self.cols + other.cols,
            [ra + rb for ra, rb in zip(self.data, other.data)],
        )

    def vstack(self, other: "Mat") -> "Mat":
        assert self.cols == other.cols
        return Mat(self.field, self.rows + other.rows, self.cols, [r[:] for r in self.data] + [r[:] for r in other.data])

    @staticmethod
    def block_diag(field, blocks) -> "Mat":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = Mat.zeros(field, rows, cols)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out.data[r0 + i][c0 : c0 + b.cols] = b.data[i][:]
            r0 += b.rows
            c0 += b.cols
        return out

    # ---------- elimination ----------

    def rref(self):
        """Reduced row echelon form; returns (R, pivot_columns).

        Pivot choice is the first nonzero entry in column order, so the
        output is deterministic.
        """
        f = self.field
        R = [row[:] for row in self.data]
        nr, nc = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(nc):
            if r == nr:
                break
            pr = None
            for i in range(r, nr):
                if not f.is_zero(R[i][c]):
                    pr = i
                    break
            if pr is None:
                continue
            if pr != r:
                R[r], R[pr] = R[pr], R[r]
            pv = R[r][c]
            if not f.eq(pv, f.one()):
                ipv = f.inv(pv)
                R[r] = [f.mul(ipv, x) for x in R[r]]
            for i in range(nr):
                if i == r:
                    continue
                factor = R[i][c]
                if f.is_zero(factor):
                    continue
                Ri, Rr = R[i], R[r]
                for j in range(c, nc):
                    if not f.is_zero(Rr[j]):
                        Ri[j] = f.sub(Ri[j], f.mul(factor, Rr[j]))
            pivots.append(c)
            r += 1
        return Mat(f, nr, nc, R), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Mat":
        """Columns form a basis of {v : Mv = 0}; count = cols - rank."""
        f = self.field
        R, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        cols = []
        for fc in free:
            v = [f.zero()] * self.cols
            v[fc] = f.one()
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(R.data[r][fc])
            cols.append(v)
        return Mat.from_cols(f, self.cols, cols)

    def solve(self, b: "Mat"):
        """One exact solution X of MX = b, or None if b is outside the column space."""
        if b.rows != self.rows:
            raise ValueError("right-hand side has wrong row count")
        f = self.field
        aug = self.hstack(b)
        R, pivots = aug.rref()
        n = self.cols
        for c in pivots:
            if c >= n:
                return None
        X = Mat.zeros(f, n, b.cols)
        for r, pc in enumerate(pivots):
            for j in range(b.cols):
                X.data[pc][j] = R.data[r][n + j]
        return X

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("not square")
        X = self.solve(Mat.identity(self.field, self.rows))
        if X is None or (self @ X) != Mat.identity(self.field, self.rows):
            raise ValueError("matrix is singular")
        return X

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    # ---------- serialization ----------

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self.data]

    @staticmethod
    def from_strings(field, rows, cols, data) -> "Mat":
        return Mat(field, rows, cols, [[field.parse(s) for s in row] for row in data])


# ---------- subspaces (column spans) ----------


def span_basis(mat: Mat) -> Mat:
    """Canonical basis of the column span: RREF the transpose, keep nonzero rows.

    Canonical means equal subspaces yield equal matrices, which keeps
    reports byte-reproducible.
    """
    R, pivots = mat.transpose().rref()
    cols = [R.data[i] for i in range(len(pivots))]
    return Mat.from_cols(mat.field, mat.rows, cols)


def subspace_sum(a: Mat, b: Mat) -> Mat:
    if a.rows != b.rows:
        raise ValueError("ambient dimensions differ")
    return span_basis(a.hstack(b))


def subspace_intersection(a: Mat, b: Mat) -> Mat:
    """Basis of span(a) n span(b), via the kernel of the concatenated system."""
    if a.rows != b.rows:
        raise ValueError("ambient dimensions differ")
    if a.cols == 0 or b.cols == 0:
        return Mat.zeros(a.field, a.rows, 0)
    K = a.hstack(b).kernel_basis()
    cols = []
    for j in range(K.cols):
        u = [K.data[i][j] for i in range(a.cols)]
        cols.append(a.mul_vec(u))
    return span_basis(Mat.from_cols(a.field, a.rows, cols))


def subspace_contains(space: Mat, vecs: Mat) -> bool:
    """True when every column of vecs lies in the column span of space."""
    if vecs.cols == 0:
        return True
    if space.cols == 0:
        return vecs.is_zero()
    return space.solve(vecs) is not None


def subspace_equal(a: Mat, b: Mat) -> bool:
    return subspace_contains(a, b) and subspace_contains(b, a)


def subspace_dim(mat: Mat) -> int:
    return mat.rank()
