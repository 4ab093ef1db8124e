"""Exact sparse linear algebra over the scalar field.

Matrices are stored as a list of row dicts {col: Scalar}; zero entries
are absent.  All solves are exact Gaussian elimination with divisions
in Q(t); pivots are chosen by smallest operand size to limit
coefficient growth.
"""


class SMat:
    __slots__ = ("field", "nr", "nc", "rows")

    def __init__(self, field, nr, nc, rows=None):
        self.field = field
        self.nr = nr
        self.nc = nc
        self.rows = rows if rows is not None else [dict() for _ in range(nr)]

    @staticmethod
    def identity(field, n):
        m = SMat(field, n, n)
        one = field.one
        for i in range(n):
            m.rows[i][i] = one
        return m

    @staticmethod
    def zero(field, nr, nc):
        return SMat(field, nr, nc)

    @staticmethod
    def diagonal(field, scalars):
        n = len(scalars)
        m = SMat(field, n, n)
        for i, s in enumerate(scalars):
            if s:
                m.rows[i][i] = s
        return m

    def set(self, i, j, v):
        if v:
            self.rows[i][j] = v
        else:
            self.rows[i].pop(j, None)

    def get(self, i, j):
        return self.rows[i].get(j, self.field.zero)

    def copy(self):
        return SMat(self.field, self.nr, self.nc, [dict(r) for r in self.rows])

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, SMat):
            return NotImplemented
        if (self.nr, self.nc) != (other.nr, other.nc):
            return False
        return all(self.rows[i] == other.rows[i] for i in range(self.nr))

    def is_zero(self):
        return all(not r for r in self.rows)

    def __add__(self, other):
        out = self.copy()
        for i, r in enumerate(other.rows):
            orow = out.rows[i]
            for j, v in r.items():
                s = orow.get(j)
                s = v if s is None else s + v
                if s:
                    orow[j] = s
                else:
                    orow.pop(j, None)
        return out

    def __sub__(self, other):
        return self + other.scale(self.field(-1))

    def scale(self, s):
        if not s:
            return SMat(self.field, self.nr, self.nc)
        return SMat(
            self.field,
            self.nr,
            self.nc,
            [{j: s * v for j, v in r.items()} for r in self.rows],
        )

    def __mul__(self, other):
        """Matrix product self @ other."""
        if not isinstance(other, SMat):
            return NotImplemented
        assert self.nc == other.nr, (self.nc, other.nr)
        out = SMat(self.field, self.nr, other.nc)
        orows = other.rows
        for i, r in enumerate(self.rows):
            acc = {}
            for k, v in r.items():
                row_k = orows[k]
                for j, w in row_k.items():
                    p = v * w
                    s = acc.get(j)
                    s = p if s is None else s + p
                    if s:
                        acc[j] = s
                    else:
                        acc.pop(j, None)
            out.rows[i] = acc
        return out

    def apply(self, vec):
        """Apply to a dense list of Scalars."""
        out = []
        for r in self.rows:
            s = self.field.zero
            for j, v in r.items():
                if vec[j]:
                    s = s + v * vec[j]
            out.append(s)
        return out

    def transpose(self):
        out = SMat(self.field, self.nc, self.nr)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out.rows[j][i] = v
        return out

    def kron(self, other):
        """Kronecker product; index (i1, i2) -> i1 * other.nr + i2."""
        out = SMat(self.field, self.nr * other.nr, self.nc * other.nc)
        for i1, r1 in enumerate(self.rows):
            for i2, r2 in enumerate(other.rows):
                row = out.rows[i1 * other.nr + i2]
                for j1, v1 in r1.items():
                    for j2, v2 in r2.items():
                        row[j1 * other.nc + j2] = v1 * v2
        return out

    def first_nonzero(self):
        for i, r in enumerate(self.rows):
            if r:
                j = min(r)
                return i, j, r[j]
        return None

    def inverse(self):
        """Exact inverse via Gauss-Jordan; raises on singular input."""
        assert self.nr == self.nc
        n = self.nr
        a = [dict(r) for r in self.rows]
        b = [dict() for _ in range(n)]
        one = self.field.one
        for i in range(n):
            b[i][i] = one
        for c in range(n):
            piv = None
            best = None
            for r in range(c, n):
                v = a[r].get(c)
                if v:
                    sz = v.size() + len(a[r])
                    if best is None or sz < best:
                        best, piv = sz, r
            if piv is None:
                raise ArithmeticError("singular matrix")
            a[c], a[piv] = a[piv], a[c]
            b[c], b[piv] = b[piv], b[c]
            inv = one / a[c][c]
            a[c] = {j: inv * v for j, v in a[c].items()}
            b[c] = {j: inv * v for j, v in b[c].items()}
            for r in range(n):
                if r != c:
                    f = a[r].get(c)
                    if f:
                        _row_axpy(a[r], a[c], -f)
                        _row_axpy(b[r], b[c], -f)
        return SMat(self.field, n, n, b)


def _row_axpy(target, source, coeff):
    for j, v in source.items():
        s = target.get(j)
        p = coeff * v
        s = p if s is None else s + p
        if s:
            target[j] = s
        else:
            target.pop(j, None)


def rref(mat):
    """Reduced row echelon form; returns (rows, pivot_cols)."""
    rows = [dict(r) for r in mat.rows if r]
    field = mat.field
    one = field.one
    pivots = []
    reduced = []
    for row in rows:
        for pcol, prow in zip(pivots, reduced):
            v = row.get(pcol)
            if v:
                _row_axpy(row, prow, -v)
        if not row:
            continue
        pcol = min(row)
        inv = one / row[pcol]
        row = {j: inv * v for j, v in row.items()}
        for prow in reduced:
            v = prow.get(pcol)
            if v:
                _row_axpy(prow, row, -v)
        pivots.append(pcol)
        reduced.append(row)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [reduced[k] for k in order], [pivots[k] for k in order]


def kernel_basis(mat):
    """Basis of the right null space as dense Scalar lists."""
    field = mat.field
    rows, pivots = rref(mat)
    pivset = set(pivots)
    free = [j for j in range(mat.nc) if j not in pivset]
    basis = []
    for f in free:
        vec = [field.zero] * mat.nc
        vec[f] = field.one
        for prow, pcol in zip(rows, pivots):
            v = prow.get(f)
            if v:
                vec[pcol] = -v
        basis.append(vec)
    return basis


def rank(mat):
    rows, _ = rref(mat)
    return len(rows)


def solve_dense(mat, rhs):
    """Solve mat x = rhs (unique solution expected); None if inconsistent.

    rhs is a dense list; raises ArithmeticError when underdetermined.
    """
    field = mat.field
    aug = SMat(field, mat.nr, mat.nc + 1)
    for i, r in enumerate(mat.rows):
        aug.rows[i] = dict(r)
        if rhs[i]:
            aug.rows[i][mat.nc] = rhs[i]
    rows, pivots = rref(aug)
    sol = [field.zero] * mat.nc
    npiv = 0
    for prow, pcol in zip(rows, pivots):
        if pcol == mat.nc:
            return None  # inconsistent
        npiv += 1
        extra = [j for j in prow if j != pcol and j != mat.nc]
        if extra:
            raise ArithmeticError("underdetermined linear system")
        v = prow.get(mat.nc)
        sol[pcol] = v if v is not None else field.zero
    if npiv < mat.nc:
        raise ArithmeticError("underdetermined linear system (free columns)")
    return sol
