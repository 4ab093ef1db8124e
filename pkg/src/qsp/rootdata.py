"""Finite-type Cartan data: lattices, bilinear form, Weyl group machinery.

Weights live in the fundamental-weight basis as int tuples (elements of
P); root-lattice vectors live in the simple-root basis, again as
tuples, with Fraction entries when a weight is converted to root
coordinates.  Weyl group elements are integer matrices acting on the
fundamental-weight coordinates.

The normalization is (alpha, alpha) = 2 for short roots in each
component, so the symmetrizers d_i are 1, 2 or 3 and every pairing of
weights lies in (1/d)Z for the minimal d computed per datum.
"""

from fractions import Fraction
from math import lcm

CARTAN_CATALOG = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "A4": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "B3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "C3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    "G2": [[2, -3], [-1, 2]],
}


def _mat_vec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


class RootDatum:
    """Cartan matrix, symmetrizers, lattices, Weyl group of one finite type."""

    def __init__(self, label):
        if label not in CARTAN_CATALOG:
            raise ValueError(f"unknown type label {label!r}")
        self.label = label
        self.cartan = tuple(tuple(row) for row in CARTAN_CATALOG[label])
        self.rank = len(self.cartan)
        a = self.cartan
        # symmetrizers: minimal positive integers with d_i a_ij = d_j a_ji,
        # normalized so short roots have (alpha, alpha) = 2, i.e. d_i in {1,2,3}
        self.sym = self._symmetrizers()
        # B[i][j] = (alpha_i, alpha_j) = d_i a_ij
        self.form_roots = tuple(
            tuple(Fraction(self.sym[i] * a[i][j]) for j in range(self.rank))
            for i in range(self.rank)
        )
        if not self._positive_definite():
            raise ValueError(f"{label}: symmetrized Cartan matrix not positive definite")
        # fundamental weights in root coordinates: C·B = diag(d)
        self.fw_root_coords = self._fw_root_coords()
        # (w_i, w_j) = C[i][j] * d_j
        self.form_weights = tuple(
            tuple(self.fw_root_coords[i][j] * self.sym[j] for j in range(self.rank))
            for i in range(self.rank)
        )
        self.d = lcm(
            *[
                x.denominator
                for row in self.form_weights
                for x in row
            ]
        )
        self.rho = tuple([1] * self.rank)
        # simple reflection matrices on fundamental-weight coordinates
        self.refl = tuple(self._reflection_matrix(i) for i in range(self.rank))
        self._pos_roots = None
        self._w0 = None
        self._tau0 = None

    # -- construction helpers -------------------------------------------

    def _symmetrizers(self):
        a = self.cartan
        n = self.rank
        d = [0] * n
        # propagate along the Dynkin graph from an arbitrary normalization,
        # then rescale each connected component so min d_i = 1
        for start in range(n):
            if d[start]:
                continue
            d[start] = 2
            stack = [start]
            comp = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if i != j and a[i][j] != 0 and not d[j]:
                        # d_i a_ij = d_j a_ji
                        num = d[i] * a[i][j]
                        if num % a[j][i]:
                            raise ValueError("non-symmetrizable Cartan matrix")
                        d[j] = num // a[j][i]
                        comp.append(j)
                        stack.append(j)
            m = min(d[j] for j in comp)
            for j in comp:
                if d[j] % m:
                    raise ValueError("bad symmetrizer normalization")
                d[j] //= m
        return tuple(d)

    def _positive_definite(self):
        # leading principal minors of the symmetrized matrix
        n = self.rank
        m = [[self.form_roots[i][j] for j in range(n)] for i in range(n)]
        for k in range(1, n + 1):
            sub = [row[:k] for row in m[:k]]
            if _det(sub) <= 0:
                return False
        return True

    def _fw_root_coords(self):
        # solve  sum_k c_ik (alpha_k, alpha_j) = delta_ij d_j
        n = self.rank
        rows = []
        for i in range(n):
            rhs = [Fraction(0)] * n
            rhs[i] = Fraction(self.sym[i])
            rows.append(_solve_frac(self.form_roots, rhs))
        return tuple(tuple(r) for r in rows)

    def _reflection_matrix(self, i):
        # sigma_i(lam)_k = lam_k - lam_i a_ki
        n = self.rank
        m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for k in range(n):
            m[k][i] -= self.cartan[k][i]
        return tuple(tuple(row) for row in m)

    # -- weights ----------------------------------------------------------

    def alpha(self, i):
        """Simple root alpha_i in fundamental-weight coordinates."""
        return tuple(self.cartan[k][i] for k in range(self.rank))

    def fw(self, i):
        w = [0] * self.rank
        w[i] = 1
        return tuple(w)

    def zero(self):
        return tuple([0] * self.rank)

    def to_root_coords(self, lam):
        """Express a P-weight in the simple-root basis (Fractions)."""
        return tuple(
            sum(self.fw_root_coords[i][j] * lam[i] for i in range(self.rank))
            for j in range(self.rank)
        )

    def root_to_weight(self, m):
        """Root-lattice vector (ints) to fundamental-weight coordinates."""
        return tuple(
            sum(self.cartan[i][j] * m[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def pairing(self, lam, mu):
        """(lam, mu) for two P-weights; a Fraction in (1/d)Z."""
        return sum(
            self.form_weights[i][j] * lam[i] * mu[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if lam[i] and mu[j]
        ) or Fraction(0)

    def pairing_wr(self, lam, m):
        """(lam, mu) with lam in P-coords and mu = sum m_j alpha_j."""
        return sum(
            Fraction(lam[j] * self.sym[j]) * m[j] for j in range(self.rank)
        ) or Fraction(0)

    def pairing_rr(self, m, n):
        return sum(
            self.form_roots[i][j] * m[i] * n[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if m[i] and n[j]
        ) or Fraction(0)

    def is_dominant(self, lam):
        return all(c >= 0 for c in lam)

    def in_q_plus(self, lam):
        """Is the P-weight a nonnegative integer combination of simple roots?"""
        rc = self.to_root_coords(lam)
        return all(c.denominator == 1 and c >= 0 for c in rc)

    def height_r(self, m):
        return sum(m)

    # -- Weyl group ---------------------------------------------------------

    def reflect(self, i, lam):
        return tuple(
            lam[k] - lam[i] * self.cartan[k][i] for k in range(self.rank)
        )

    def word_matrix(self, word):
        n = self.rank
        m = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
        for i in word:
            m = _mat_mul(self.refl[i], m)
        return m

    def apply_word(self, word, lam):
        """w(lam) for w = sigma_{i1} ... sigma_{it}, word = (i1, ..., it)."""
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def longest_word(self, subset=None):
        """Reduced word for the longest element of the parabolic W_subset.

        Greedy descent to the antidominant chamber of the subsystem;
        deterministic tie-break: smallest node index first.
        """
        if subset is None:
            subset = tuple(range(self.rank))
        subset = tuple(sorted(subset))
        v = [0] * self.rank
        for i in subset:
            v[i] = 1
        v = tuple(v)
        word = []
        while True:
            for i in subset:
                if v[i] > 0:
                    word.append(i)
                    v = self.reflect(i, v)
                    break
            else:
                break
        return tuple(word)

    def w0_matrix(self):
        if self._w0 is None:
            self._w0 = self.word_matrix(self.longest_word())
        return self._w0

    def w0(self, lam):
        return _mat_vec(self.w0_matrix(), lam)

    def wX_matrix(self, subset):
        return self.word_matrix(self.longest_word(subset))

    def tau0(self):
        """The diagram automorphism with w0(alpha_i) = -alpha_{tau0(i)}."""
        if self._tau0 is None:
            perm = []
            for i in range(self.rank):
                img = self.w0(self.alpha(i))
                neg = tuple(-c for c in img)
                for j in range(self.rank):
                    if neg == self.alpha(j):
                        perm.append(j)
                        break
                else:
                    raise ArithmeticError("w0 does not negate the simple roots")
            self._tau0 = tuple(perm)
        return self._tau0

    # -- roots ---------------------------------------------------------------

    def positive_roots(self):
        """All positive roots in simple-root coordinates (int tuples)."""
        if self._pos_roots is None:
            simple = [
                tuple(1 if j == i else 0 for j in range(self.rank))
                for i in range(self.rank)
            ]
            roots = set(simple)
            frontier = list(simple)
            while frontier:
                beta = frontier.pop()
                bw = self.root_to_weight(beta)
                for i in range(self.rank):
                    img = self.reflect(i, bw)
                    # back to root coordinates: differs from beta in slot i only
                    m = list(beta)
                    m[i] -= bw[i]
                    m = tuple(m)
                    assert self.root_to_weight(m) == img
                    if all(c >= 0 for c in m) and m not in roots:
                        roots.add(m)
                        frontier.append(m)
            self._pos_roots = tuple(sorted(roots))
        return self._pos_roots

    def rho_X_root_coords(self, subset):
        """Half sum of the positive roots supported on the subset (Fractions)."""
        subset = set(subset)
        tot = [Fraction(0)] * self.rank
        for beta in self.positive_roots():
            if all(beta[j] == 0 for j in range(self.rank) if j not in subset):
                for j in range(self.rank):
                    tot[j] += beta[j]
        return tuple(x / 2 for x in tot)

    def weyl_dim(self, lam):
        """Dimension of the simple module of highest weight lam (oracle)."""
        num = 1
        den = 1
        rho_r = self.to_root_coords(self.rho)
        lam_r = self.to_root_coords(lam)
        for beta in self.positive_roots():
            num *= self.pairing_rr(tuple(a + b for a, b in zip(lam_r, rho_r)), beta)
            den *= self.pairing_rr(rho_r, beta)
        val = Fraction(num, den)
        assert val.denominator == 1
        return int(val)

    def kostant_dim(self, mu):
        """Number of ways to write mu (root coords) as a sum of positive roots.

        Independent dimension oracle for the weight spaces of U^+.
        """
        roots = self.positive_roots()

        def count(rem, idx):
            if all(c == 0 for c in rem):
                return 1
            if idx == len(roots):
                return 0
            beta = roots[idx]
            total = 0
            cur = rem
            while all(c >= 0 for c in cur):
                total += count(cur, idx + 1)
                cur = tuple(a - b for a, b in zip(cur, beta))
            return total

        return count(tuple(mu), 0)


def _det(m):
    n = len(m)
    m = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _solve_frac(a, b):
    """Solve a x = b over Fractions (a square, nonsingular)."""
    n = len(b)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c])
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] for i in range(n)]


_DATUM_CACHE = {}


def build_root_datum(label):
    """Catalog constructor; data are immutable and cached per label."""
    datum = _DATUM_CACHE.get(label)
    if datum is None:
        datum = _DATUM_CACHE[label] = RootDatum(label)
    return datum
