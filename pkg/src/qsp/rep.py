"""Finite-dimensional weight modules: simple modules by the Verma-quotient
algorithm, tensor / dual / twisted constructions, actions of symbolic
elements, intertwiner spaces, and matrix coefficients.

A WeightModule stores an ordered basis with one weight per vector and
exact sparse action matrices for every Chevalley generator; the torus
acts diagonally through the weights.  Simple modules are built from the
free module over the lower-triangular part: weight spaces are spanned by
canonical lowering words applied to the highest weight vector, the
contravariant form is computed exactly, and its radical is quotiented
out degree by degree.
"""

from fractions import Fraction

from .linalg import SMat, kernel_basis, solve_dense
from .uqalg import UElement, get_algebra


class WeightModule:
    def __init__(self, alg, weights, e_mats, f_mats, name=""):
        self.alg = alg
        self.field = alg.field
        self.datum = alg.datum
        self.weights = tuple(tuple(w) for w in weights)
        self.dim = len(self.weights)
        self.E = e_mats  # dict node -> SMat
        self.F = f_mats
        self.name = name or f"module(dim {self.dim})"

    def __repr__(self):
        return f"<{self.name}: dim {self.dim}>"

    def k_diag(self, mu):
        """Diagonal scalars of K_mu."""
        return [self.alg.q_pow_ww(mu, w) for w in self.weights]

    def k_mat(self, mu):
        return SMat.diagonal(self.field, self.k_diag(mu))

    def act_mono(self, mono):
        f, mu, e = mono
        out = None

        def mulinto(m):
            nonlocal out
            out = m if out is None else m * out

        # monomial F_w K_mu E_u: rightmost factor acts first
        for i in reversed(e):
            mulinto(self.E[i])
        if any(mu):
            mulinto(self.k_mat(mu))
        for i in reversed(f):
            mulinto(self.F[i])
        return out if out is not None else SMat.identity(self.field, self.dim)

    def act(self, x):
        """Matrix of a symbolic element (UElement)."""
        out = SMat.zero(self.field, self.dim, self.dim)
        for mono, c in x.terms.items():
            out = out + self.act_mono(mono).scale(c)
        return out

    def weight_spaces(self):
        spaces = {}
        for k, w in enumerate(self.weights):
            spaces.setdefault(w, []).append(k)
        return spaces

    def highest_weight_vectors(self):
        """Basis of the joint kernel of all raising operators, per weight."""
        out = []
        spaces = self.weight_spaces()
        for w, idxs in sorted(spaces.items()):
            rows = []
            for i in range(self.datum.rank):
                for r in range(self.dim):
                    row = {}
                    for pos, k in enumerate(idxs):
                        v = self.E[i].rows[r].get(k)
                        if v:
                            row[pos] = v
                    if row:
                        rows.append(row)
            mat = SMat(self.field, len(rows), len(idxs), rows or [dict()])
            if not rows:
                mat = SMat(self.field, 1, len(idxs))
            for vec in kernel_basis(mat):
                full = [self.field.zero] * self.dim
                for pos, k in enumerate(idxs):
                    full[k] = vec[pos]
                out.append((w, full))
        return out

    def check_relations(self):
        """Defining relations as exact matrix identities."""
        alg = self.alg
        D = self.datum
        fld = self.field
        one = fld.one
        for i in range(D.rank):
            for j in range(D.rank):
                lhs = self.E[i] * self.F[j] - self.F[j] * self.E[i]
                if i == j:
                    qi = alg.qi(i)
                    coeff = one / (qi - 1 / qi)
                    rhs = (
                        self.k_mat(D.alpha(i)) - self.k_mat(tuple(-c for c in D.alpha(i)))
                    ).scale(coeff)
                    if lhs != rhs:
                        return False
                elif not lhs.is_zero():
                    return False
                if i != j:
                    # quantum Serre for both letters
                    for mats in (self.E, self.F):
                        m = 1 - D.cartan[i][j]
                        acc = SMat.zero(fld, self.dim, self.dim)
                        for k in range(m + 1):
                            coeff = alg.field.q_binom(m, k, D.sym[i])
                            if k % 2:
                                coeff = -coeff
                            term = SMat.identity(fld, self.dim)
                            for _ in range(m - k):
                                term = term * mats[i]
                            term = term * mats[j]
                            for _ in range(k):
                                term = term * mats[i]
                            acc = acc + term.scale(coeff)
                        if not acc.is_zero():
                            return False
        # weight compatibility
        for i in range(D.rank):
            ai = D.alpha(i)
            for r, row in enumerate(self.E[i].rows):
                for c in row:
                    if tuple(
                        a - b for a, b in zip(self.weights[r], self.weights[c])
                    ) != ai:
                        return False
        return True


# ----------------------------------------------------------------------
# simple modules via the Verma quotient
# ----------------------------------------------------------------------


def _omega_pair(alg, w, wp, lam):
    """Contravariant pairing <F_w v, F_wp v> on the free lower part."""
    # omega maps F-words to reversed E-words; evaluate the middle part on
    # the highest weight vector: only F-free, E-free monomials survive
    ew = tuple(reversed(w))
    u = alg.mul_mono(((), alg._zeroP, ew), (tuple(wp), alg._zeroP, ()))
    tot = alg.field.zero
    for (f, mu, e), c in u.items():
        if not f and not e:
            tot = tot + c * alg.q_pow_ww(mu, lam)
    return tot


def simple_module(datum_or_label, lam, name=None):
    """Irreducible highest-weight module of dominant weight lam."""
    alg = (
        get_algebra(datum_or_label)
        if isinstance(datum_or_label, str)
        else datum_or_label
    )
    D = alg.datum
    lam = tuple(lam)
    if not D.is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    expected_dim = D.weyl_dim(lam)
    # height bound: lam - w0(lam) in root coordinates
    diff = tuple(a - b for a, b in zip(lam, D.w0(lam)))
    diam = D.to_root_coords(diff)
    assert all(x.denominator == 1 for x in diam)
    diam = tuple(int(x) for x in diam)
    hmax = sum(diam)

    # degree-by-degree basis selection
    layers = {0: [()]}  # root-height -> chosen basis words
    by_deg = {(0,) * D.rank: [()]}
    gram_cache = {}

    def gram(w, wp):
        key = (w, wp) if w <= wp else (wp, w)
        v = gram_cache.get(key)
        if v is None:
            v = gram_cache[key] = _omega_pair(alg, key[0], key[1], lam)
        return v

    degs_by_height = {}
    for h in range(1, hmax + 1):
        degs_by_height[h] = [
            mu
            for mu in _degrees_at_height(D.rank, h)
            if all(m <= dm for m, dm in zip(mu, diam))
        ]

    for h in range(1, hmax + 1):
        for mu in degs_by_height[h]:
            words = alg.basis_words(mu)
            if not words:
                continue
            chosen = []
            for w in words:
                # accept w if the Gram matrix on chosen + [w] is nonsingular
                cand = chosen + [w]
                m = SMat(alg.field, len(cand), len(cand))
                for a, wa in enumerate(cand):
                    for b, wb in enumerate(cand):
                        v = gram(wa, wb)
                        if v:
                            m.rows[a][b] = v
                from .linalg import rank as _rank

                if _rank(m) == len(cand):
                    chosen.append(w)
            if chosen:
                by_deg[mu] = chosen

    basis = []  # (mu, word)
    index = {}
    weights = []
    for mu in sorted(by_deg):
        for w in by_deg[mu]:
            index[(mu, w)] = len(basis)
            basis.append((mu, w))
            wmu = tuple(
                l - r for l, r in zip(lam, D.root_to_weight(mu))
            )
            weights.append(wmu)
    if len(basis) != expected_dim:
        raise ArithmeticError(
            f"Verma quotient produced dim {len(basis)}, Weyl formula {expected_dim}"
        )

    # express a lowering word (class in the quotient) over a chosen basis
    expr_cache = {}

    def express(mu, word):
        key = (mu, word)
        hit = expr_cache.get(key)
        if hit is not None:
            return hit
        chosen = by_deg.get(mu, [])
        if not chosen:
            expr_cache[key] = {}
            return {}
        m = SMat(alg.field, len(chosen), len(chosen))
        for a, wa in enumerate(chosen):
            for b, wb in enumerate(chosen):
                v = gram(wa, wb)
                if v:
                    m.rows[a][b] = v
        rhs = [gram(wa, word) for wa in chosen]
        sol = solve_dense(m, rhs)
        if sol is None:
            raise ArithmeticError("inconsistent Gram system in Verma quotient")
        out = {
            index[(mu, wb)]: c for wb, c in zip(chosen, sol) if c
        }
        expr_cache[key] = out
        return out

    fld = alg.field
    n = len(basis)
    e_mats = {i: SMat.zero(fld, n, n) for i in range(D.rank)}
    f_mats = {i: SMat.zero(fld, n, n) for i in range(D.rank)}
    for col, (mu, w) in enumerate(basis):
        for i in range(D.rank):
            # F_i action: prepend the letter, straighten, express
            mu2 = tuple(m + (1 if j == i else 0) for j, m in enumerate(mu))
            if all(m <= dm for m, dm in zip(mu2, diam)) and by_deg.get(mu2):
                acc = {}
                for w2, c in alg.straighten((i,) + w).items():
                    for row, c2 in express(mu2, w2).items():
                        s = acc.get(row, fld.zero) + c * c2
                        if s:
                            acc[row] = s
                        else:
                            acc.pop(row, None)
                for row, c in acc.items():
                    f_mats[i].rows[row][col] = c
            # E_i action through the commutation with the K-part evaluated at lam
            mu2 = tuple(m - (1 if j == i else 0) for j, m in enumerate(mu))
            if any(m < 0 for m in mu2):
                continue
            cross = alg.mul_mono(((), alg._zeroP, (i,)), (w, alg._zeroP, ()))
            acc = {}
            for (f, kmu, e), c in cross.items():
                if e:
                    continue  # raising part kills the highest weight vector
                coeff = c * alg.q_pow_ww(kmu, lam)
                for w2, c2 in alg.straighten(f).items():
                    deg2 = alg.word_degree(w2)
                    for row, c3 in express(deg2, w2).items():
                        s = acc.get(row, fld.zero) + coeff * c2 * c3
                        if s:
                            acc[row] = s
                        else:
                            acc.pop(row, None)
            for row, c in acc.items():
                e_mats[i].rows[row][col] = c
    mod = WeightModule(
        alg,
        weights,
        e_mats,
        f_mats,
        name=name or ("V[" + ",".join(str(c) for c in lam) + "]"),
    )
    return mod


def _degrees_at_height(rank, h):
    if rank == 1:
        yield (h,)
        return
    for first in range(h + 1):
        for rest in _degrees_at_height(rank - 1, h - first):
            yield (first,) + rest


def trivial_module(alg):
    fld = alg.field
    zero = {i: SMat.zero(fld, 1, 1) for i in range(alg.datum.rank)}
    zero2 = {i: SMat.zero(fld, 1, 1) for i in range(alg.datum.rank)}
    return WeightModule(alg, [alg.datum.zero()], zero, zero2, name="V[0]")


# ----------------------------------------------------------------------
# constructions
# ----------------------------------------------------------------------


def tensor(m1, m2, name=None):
    """Tensor module through the coproduct: E acts as E(x)1 + K(x)E."""
    alg = m1.alg
    fld = alg.field
    weights = [
        tuple(a + b for a, b in zip(w1, w2))
        for w1 in m1.weights
        for w2 in m2.weights
    ]
    i1 = SMat.identity(fld, m1.dim)
    i2 = SMat.identity(fld, m2.dim)
    e_mats = {}
    f_mats = {}
    for i in range(alg.datum.rank):
        ai = alg.datum.alpha(i)
        mai = tuple(-c for c in ai)
        e_mats[i] = m1.E[i].kron(i2) + m1.k_mat(ai).kron(m2.E[i])
        f_mats[i] = m1.F[i].kron(m2.k_mat(mai)) + i1.kron(m2.F[i])
    return WeightModule(
        alg, weights, e_mats, f_mats, name=name or f"({m1.name}(x){m2.name})"
    )


def dual_module(m, inverse_antipode=False, name=None):
    """Left module on the dual space: (u f)(v) = f(S(u) v).

    With inverse_antipode the action goes through S^(-1) instead.
    """
    alg = m.alg
    p = -1 if inverse_antipode else 1
    weights = [tuple(-c for c in w) for w in m.weights]
    e_mats = {}
    f_mats = {}
    for i in range(alg.datum.rank):
        e_mats[i] = m.act(alg.E(i).antipode(p)).transpose()
        f_mats[i] = m.act(alg.F(i).antipode(p)).transpose()
    return WeightModule(alg, weights, e_mats, f_mats, name=name or f"{m.name}^*")


def twist_module(m, perm, name=None):
    """Twist by a diagram automorphism: u acts as sigma(u)."""
    alg = m.alg
    inv = [perm.index(i) for i in range(alg.datum.rank)]
    weights = [tuple(w[inv[i]] for i in range(alg.datum.rank)) for w in m.weights]
    e_mats = {i: m.E[perm[i]] for i in range(alg.datum.rank)}
    f_mats = {i: m.F[perm[i]] for i in range(alg.datum.rank)}
    return WeightModule(alg, weights, e_mats, f_mats, name=name or f"{m.name}^sigma")


def sigma_iso(m_simple, lam, perm):
    """Intertwiner V(lam) -> V(lam)^sigma fixing the highest weight vector.

    Requires sigma(lam) = lam; returns the SMat on the underlying space.
    """
    alg = m_simple.alg
    inv = [perm.index(i) for i in range(alg.datum.rank)]
    lam_perm = tuple(lam[inv[i]] for i in range(alg.datum.rank))
    if lam_perm != tuple(lam):
        raise ValueError("diagram automorphism does not fix the highest weight")
    tw = twist_module(m_simple, perm)
    basis = hom_space_full(m_simple, tw)
    if len(basis) != 1:
        raise ArithmeticError("intertwiner space is not one-dimensional")
    T = basis[0]
    # normalize on the highest weight vector
    hw = [k for k, w in enumerate(m_simple.weights) if w == tuple(lam)]
    assert len(hw) == 1
    k = hw[0]
    c = T.rows[k].get(k)
    if not c:
        raise ArithmeticError("intertwiner vanishes on the highest weight vector")
    return T.scale(alg.field.one / c)


# ----------------------------------------------------------------------
# intertwiners
# ----------------------------------------------------------------------


def hom_space_full(m1, m2):
    """Basis of intertwiners m1 -> m2 over the whole quantized algebra.

    Weight-compatible unknowns only (torus equivariance), then kernel of
    the commutation constraints with every raising and lowering operator.
    """
    alg = m1.alg
    fld = alg.field
    pairs = [
        (r, c)
        for r in range(m2.dim)
        for c in range(m1.dim)
        if m2.weights[r] == m1.weights[c]
    ]
    if not pairs:
        return []
    pos = {rc: k for k, rc in enumerate(pairs)}
    rows = []
    for mats1, mats2 in ((m1.E, m2.E), (m1.F, m2.F)):
        for i in range(alg.datum.rank):
            a, b = mats1[i], mats2[i]
            # T a - b T = 0, entry (r, c): sum_k T[r,k] a[k,c] - b[r,k] T[k,c]
            at = a.transpose()
            for r in range(m2.dim):
                for c in range(m1.dim):
                    row = {}
                    for k, v in at.rows[c].items():
                        if (r, k) in pos:
                            row[pos[(r, k)]] = row.get(pos[(r, k)], fld.zero) + v
                    for k, v in b.rows[r].items():
                        if (k, c) in pos:
                            s = row.get(pos[(k, c)], fld.zero) - v
                            if s:
                                row[pos[(k, c)]] = s
                            else:
                                row.pop(pos[(k, c)], None)
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        rows.append(row)
    mat = SMat(fld, len(rows) or 1, len(pairs), rows or [dict()])
    out = []
    for vec in kernel_basis(mat):
        T = SMat.zero(fld, m2.dim, m1.dim)
        for k, (r, c) in enumerate(pairs):
            if vec[k]:
                T.rows[r][c] = vec[k]
        out.append(T)
    return out


def hom_space_generic(m1, m2, generators):
    """Basis of maps m1 -> m2 commuting with given symbolic generators."""
    alg = m1.alg
    fld = alg.field
    nvars = m1.dim * m2.dim
    rows = []
    for g in generators:
        a = m1.act(g)
        b = m2.act(g)
        at = a.transpose()
        for r in range(m2.dim):
            for c in range(m1.dim):
                row = {}
                for k, v in at.rows[c].items():
                    idx = r * m1.dim + k
                    s = row.get(idx, fld.zero) + v
                    if s:
                        row[idx] = s
                    else:
                        row.pop(idx, None)
                for k, v in b.rows[r].items():
                    idx = k * m1.dim + c
                    s = row.get(idx, fld.zero) - v
                    if s:
                        row[idx] = s
                    else:
                        row.pop(idx, None)
                if row:
                    rows.append(row)
    mat = SMat(fld, len(rows) or 1, nvars, rows or [dict()])
    out = []
    for vec in kernel_basis(mat):
        T = SMat.zero(fld, m2.dim, m1.dim)
        for r in range(m2.dim):
            for c in range(m1.dim):
                v = vec[r * m1.dim + c]
                if v:
                    T.rows[r][c] = v
        out.append(T)
    return out


def partial_trace_second(op, m1, m2, twist=None):
    """tr over the second factor of (1 (x) twist) o op, as a map on m1."""
    fld = m1.field
    n2 = m2.dim
    out = SMat.zero(fld, m1.dim, m1.dim)
    if twist is None:
        twist = SMat.identity(fld, n2)
    for rr, row in enumerate(op.rows):
        rm, ru = divmod(rr, n2)
        for cc, val in row.items():
            cm, cu = divmod(cc, n2)
            # contribution twist[cu, ru] * op[(rm,ru),(cm,cu)] to out[rm,cm]
            tv = twist.rows[cu].get(ru)
            if tv:
                s = out.rows[rm].get(cm, fld.zero) + tv * val
                if s:
                    out.rows[rm][cm] = s
                else:
                    out.rows[rm].pop(cm, None)
    return out


# ----------------------------------------------------------------------
# matrix coefficients
# ----------------------------------------------------------------------


class MatrixCoefficient:
    """c_{f,v}: u -> f(u v) for a covector f and vector v of one module."""

    __slots__ = ("module", "fvec", "vvec")

    def __init__(self, module, fvec, vvec):
        self.module = module
        self.fvec = list(fvec)
        self.vvec = list(vvec)

    def evaluate(self, x):
        """Value on a symbolic element."""
        mat = self.module.act(x)
        return self.evaluate_matrix(mat)

    def evaluate_matrix(self, mat):
        out = self.module.field.zero
        col = mat.apply(self.vvec)
        for k, fv in enumerate(self.fvec):
            if fv and col[k]:
                out = out + fv * col[k]
        return out


def module_by_address(alg, address):
    """Parse 'V[a1,a2,...]' to the simple module with those coordinates."""
    address = address.strip()
    if not (address.startswith("V[") and address.endswith("]")):
        raise ValueError(f"bad module address {address!r}")
    coords = tuple(int(p) for p in address[2:-1].split(","))
    if len(coords) != alg.datum.rank:
        raise ValueError(
            f"module address {address!r} has wrong rank for {alg.datum.label}"
        )
    return simple_module(alg, coords)
