"""Graded intertwiner for the bar involution, braiding operators on
modules, the ribbon operator, and quantum traces.

The graded intertwiner ("quasi R") is the unique element
sum_mu R_mu with R_mu in U^-_mu (x) U^+_mu, R_0 = 1 (x) 1, satisfying
Delta(bar u) . R = R . (bar (x) bar)(Delta(u)); it is computed degree by
degree from an exact linear solve against that equation, reusing the
straightening engine, and self-checks by substituting back.

On a pair of modules the braiding operator is flip o (R_21 . kappa^-)
with kappa^- the weight-pairing diagonal; the ribbon operator acts on
each isotypic block by q^((lam, lam + 2 rho)).
"""

from fractions import Fraction

from .linalg import SMat, solve_dense
from .rep import tensor
from .uqalg import TensorUElement, UElement


class HeightError(ArithmeticError):
    """Raised when a graded object was not computed to sufficient height."""


class QuasiR:
    """Graded pairs {mu: [(fword, eword, Scalar)]}, mu in root coords."""

    def __init__(self, alg, height, subset, pairs):
        self.alg = alg
        self.height = height
        self.subset = subset
        self.pairs = pairs  # dict mu -> list[(fword, eword, Scalar)]

    def degree_tensor(self, mu):
        alg = self.alg
        out = {}
        for fw, ew, c in self.pairs.get(tuple(mu), ()):
            out[((fw, alg._zeroP, ()), ((), alg._zeroP, ew))] = c
        return TensorUElement(alg, out)

    def as_tensor(self, max_height=None):
        alg = self.alg
        out = TensorUElement(alg, {})
        for mu in sorted(self.pairs):
            if max_height is None or sum(mu) <= max_height:
                out = out + self.degree_tensor(mu)
        return out

    def to_json(self):
        return [
            [list(mu), [[list(f), list(e), c.to_json()] for f, e, c in entries]]
            for mu, entries in sorted(self.pairs.items())
        ]

    @staticmethod
    def from_json(alg, height, subset, data):
        from .scalar import Scalar

        pairs = {}
        for mu, entries in data:
            pairs[tuple(mu)] = [
                (tuple(f), tuple(e), Scalar.from_json(c)) for f, e, c in entries
            ]
        return QuasiR(alg, height, subset, pairs)


def _degrees_at_height(rank, h, support):
    if h == 0:
        yield (0,) * rank
        return

    def rec(idx, rem):
        if idx == rank:
            if rem == 0:
                yield ()
            return
        top = rem if idx in support else 0
        for k in range(top + 1):
            for rest in rec(idx + 1, rem - k):
                yield (k,) + rest

    yield from rec(0, h)


def _bar_cop(alg, gen_el):
    """(bar (x) bar) of the coproduct of a generator element."""
    return gen_el.coproduct().bar_both()


def quasi_r(alg, height, subset=None):
    """Solve the bar-intertwiner degree by degree up to the height bound."""
    rank = alg.rank
    if subset is None:
        subset = tuple(range(rank))
    subset = tuple(sorted(subset))
    support = set(subset)
    field = alg.field
    pairs = {(0,) * rank: [((), (), field.one)]}
    out = QuasiR(alg, height, subset, pairs)

    cop_e = {i: alg.E(i).coproduct() for i in subset}
    bar_cop_e = {i: _bar_cop(alg, alg.E(i)) for i in subset}

    def L(i, T):
        return cop_e[i] * T - T * bar_cop_e[i]

    for h in range(1, height + 1):
        for mu in _degrees_at_height(rank, h, support):
            words = alg.basis_words(mu)
            if not words:
                continue
            unknowns = [(wf, we) for wf in words for we in words]
            # monomial-indexed rows of the linear system at this degree
            rowidx = {}
            rows = []
            rhs_acc = {}

            def slice_add(T, target, coeff_sign=1):
                for (m1, m2), c in T.terms.items():
                    f2, k2, e2 = m2
                    if f2 or any(k2) or alg.word_degree(e2) != mu:
                        continue
                    key = (m1, m2)
                    if key not in rowidx:
                        rowidx[key] = len(rows)
                        rows.append({})
                        rhs_acc[rowidx[key]] = field.zero
                    target(rowidx[key], c if coeff_sign == 1 else -c)

            cols = {}
            for x, (wf, we) in enumerate(unknowns):
                P = TensorUElement(
                    alg,
                    {((wf, alg._zeroP, ()), ((), alg._zeroP, we)): field.one},
                )
                for i in subset:
                    def put(r, c, _x=x):
                        row = rows[r]
                        s = row.get(_x, field.zero) + c
                        if s:
                            row[_x] = s
                        else:
                            row.pop(_x, None)

                    slice_add(L(i, P), put)
            for i in subset:
                lower = tuple(
                    m - (1 if j == i else 0) for j, m in enumerate(mu)
                )
                if any(c < 0 for c in lower):
                    continue
                T = out.degree_tensor(lower)
                if T.is_zero():
                    continue

                def putc(r, c):
                    rhs_acc[r] = rhs_acc[r] + c

                slice_add(L(i, T), putc)
            mat = SMat(field, len(rows), len(unknowns), rows or [dict()])
            rhs = [-rhs_acc[r] for r in range(len(rows))]
            sol = solve_dense(mat, rhs)
            if sol is None:
                raise ArithmeticError(
                    f"graded intertwiner system inconsistent at degree {mu}"
                )
            entries = [
                (wf, we, c) for (wf, we), c in zip(unknowns, sol) if c
            ]
            if entries:
                out.pairs[mu] = entries
    return out


def quasi_r_residual(alg, qr, gens="EF"):
    """Full residual of the intertwiner equation, truncated consistently.

    Returns the worst offending component or None; checks all components
    whose second-leg degree height is <= height - 1 (those only involve
    computed degrees).
    """
    R = qr.as_tensor()
    support = set(qr.subset)
    for i in qr.subset:
        pieces = []
        if "E" in gens:
            u = alg.E(i)
            pieces.append(u)
        if "F" in gens:
            pieces.append(alg.F(i))
        for u in pieces:
            T = u.bar().coproduct() * R - R * _bar_cop(alg, u)
            for (m1, m2), c in T.terms.items():
                f2, k2, e2 = m2
                deg = alg.word_degree(e2)
                degf = alg.word_degree(f2)
                ht = sum(deg) + sum(degf)
                if ht <= qr.height - 1 and c:
                    return (m1, m2, c)
    return None


# ----------------------------------------------------------------------
# operators on modules
# ----------------------------------------------------------------------


def diam_height(module):
    """Largest root-height of a difference of two weights of the module."""
    best = 0
    rcs = [module.datum.to_root_coords(w) for w in module.weights]
    lo = [min(rc[j] for rc in rcs) for j in range(module.datum.rank)]
    hi = [max(rc[j] for rc in rcs) for j in range(module.datum.rank)]
    tot = sum(h - l for h, l in zip(hi, lo))
    assert tot == int(tot)
    return int(tot)


def kappa_op(m1, m2, fmap=None, sign=-1):
    """Weight-pairing diagonal on m1 (x) m2: q^(sign * (f(w1), w2)).

    fmap maps P-weights to P-weights (identity when omitted).
    """
    alg = m1.alg
    field = alg.field
    diag = []
    for w1 in m1.weights:
        fw1 = fmap(w1) if fmap is not None else w1
        for w2 in m2.weights:
            diag.append(alg.q_pow_ww(fw1, w2, sign))
    return SMat.diagonal(field, diag)


def act_eword(module, word):
    out = SMat.identity(module.field, module.dim)
    for i in reversed(word):
        out = module.E[i] * out
    return out


def act_fword(module, word):
    out = SMat.identity(module.field, module.dim)
    for i in reversed(word):
        out = module.F[i] * out
    return out


def r_matrix(m1, m2, qr, first_perm=None):
    """Universal braiding operator R_21 . kappa^- on m1 (x) m2.

    first_perm applies a diagram automorphism to the first leg (both to
    the acting words and to the kappa exponent), giving the twisted
    variants.
    """
    need = min(diam_height(m1), diam_height(m2))
    if qr.height < need:
        raise HeightError(
            f"graded intertwiner computed to height {qr.height}, "
            f"but height {need} is required; increase the height"
        )
    alg = m1.alg
    op = SMat.zero(alg.field, m1.dim * m2.dim, m1.dim * m2.dim)
    for mu, entries in qr.pairs.items():
        for fw, ew, c in entries:
            ew1 = ew if first_perm is None else tuple(first_perm[i] for i in ew)
            a = act_eword(m1, ew1)
            if a.is_zero():
                continue
            b = act_fword(m2, fw)
            if b.is_zero():
                continue
            op = op + a.kron(b).scale(c)
    kap = kappa_op(
        m1,
        m2,
        fmap=None if first_perm is None else (lambda w: _perm_weight(first_perm, w)),
        sign=-1,
    )
    return op * kap


def _perm_weight(perm, w):
    inv = [perm.index(i) for i in range(len(w))]
    return tuple(w[inv[i]] for i in range(len(w)))


def r_matrix_21(m1, m2, qr, second_perm=None):
    """The flipped operator R . kappa^- acting on m1 (x) m2.

    This is the mirror of r_matrix: lowering words act on the first leg.
    second_perm twists the second leg (used for twisted variants placed
    with reversed legs).
    """
    need = min(diam_height(m1), diam_height(m2))
    if qr.height < need:
        raise HeightError(
            f"graded intertwiner computed to height {qr.height}, "
            f"but height {need} is required; increase the height"
        )
    alg = m1.alg
    op = SMat.zero(alg.field, m1.dim * m2.dim, m1.dim * m2.dim)
    for mu, entries in qr.pairs.items():
        for fw, ew, c in entries:
            ew2 = ew if second_perm is None else tuple(second_perm[i] for i in ew)
            a = act_fword(m1, fw)
            if a.is_zero():
                continue
            b = act_eword(m2, ew2)
            if b.is_zero():
                continue
            op = op + a.kron(b).scale(c)
    if second_perm is None:
        kap = kappa_op(m1, m2, fmap=None, sign=-1)
    else:
        diag = []
        for w1 in m1.weights:
            for w2 in m2.weights:
                diag.append(alg.q_pow_ww(w1, _perm_weight(second_perm, w2), -1))
        kap = SMat.diagonal(alg.field, diag)
    return op * kap


def place_two_leg(op2, dims, i, j):
    """Embed a two-leg operator into legs (i, j) of a product of spaces.

    dims: list of leg dimensions; op2 indexes the pair space dim_i*dim_j
    with the first leg varying slowest.
    """
    n = 1
    for d in dims:
        n *= d
    field = op2.field
    strides = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        strides[k] = strides[k + 1] * dims[k + 1]
    other = [k for k in range(len(dims)) if k not in (i, j)]

    def other_indices(idx=0, acc=0):
        if idx == len(other):
            yield acc
            return
        k = other[idx]
        for v in range(dims[k]):
            yield from other_indices(idx + 1, acc + v * strides[k])

    out = SMat.zero(field, n, n)
    rest = list(other_indices())
    for r2, row in enumerate(op2.rows):
        ri, rj = divmod(r2, dims[j])
        rbase = ri * strides[i] + rj * strides[j]
        for c2, v in row.items():
            ci, cj = divmod(c2, dims[j])
            cbase = ci * strides[i] + cj * strides[j]
            for off in rest:
                out.rows[rbase + off][cbase + off] = v
    return out


# ----------------------------------------------------------------------
# ribbon and quantum traces
# ----------------------------------------------------------------------


def isotypic_blocks(module):
    """Decompose into isotypic pieces: list of (lam, columns matrix).

    Columns are module vectors spanning the submodule generated by each
    highest weight vector.
    """
    alg = module.alg
    field = module.field
    blocks = []
    cols = []
    for lam, vec in module.highest_weight_vectors():
        span = [vec]
        frontier = [vec]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(alg.datum.rank):
                    w = module.F[i].apply(v)
                    if any(w):
                        nxt.append(w)
            # keep the new vectors independent from everything so far
            added = []
            for w in nxt:
                if _extend_independent(field, cols + span + added, w):
                    added.append(w)
            span.extend(added)
            frontier = added
        blocks.append((lam, span))
        cols.extend(span)
    total = sum(len(s) for _, s in blocks)
    if total != module.dim:
        raise ArithmeticError("isotypic decomposition does not span the module")
    return blocks


def _extend_independent(field, have, w):
    # cheap incremental independence test via a dense elimination
    mat = SMat(field, len(have) + 1, len(w))
    for r, v in enumerate(have + [w]):
        for c, x in enumerate(v):
            if x:
                mat.rows[r][c] = x
    from .linalg import rank as _rank

    return _rank(mat) == len(have) + 1


def ribbon_scalar(alg, lam):
    """q^((lam, lam + 2 rho)) for a dominant weight."""
    D = alg.datum
    shifted = tuple(l + 2 * r for l, r in zip(lam, D.rho))
    return alg.field.q_pow(D.pairing(lam, shifted))


def ribbon_op(module, inverse=False):
    """Central ribbon operator: q^((lam, lam+2rho)) per isotypic block."""
    alg = module.alg
    field = module.field
    blocks = isotypic_blocks(module)
    P = SMat.zero(field, module.dim, module.dim)
    diag = []
    col = 0
    for lam, span in blocks:
        s = ribbon_scalar(alg, lam)
        if inverse:
            s = field.one / s
        for v in span:
            for r, x in enumerate(v):
                if x:
                    P.rows[r][col] = x
            diag.append(s)
            col += 1
    return P * SMat.diagonal(field, diag) * P.inverse()


def qdim(module):
    """Quantum dimension: trace of K_(-2 rho)."""
    alg = module.alg
    two_rho = tuple(-2 * r for r in alg.datum.rho)
    out = alg.field.zero
    for w in module.weights:
        out = out + alg.q_pow_ww(two_rho, w)
    return out


def quantum_trace(module, mat):
    """tr(mat . K_(-2 rho)): the quantum trace of an operator."""
    alg = module.alg
    two_rho = tuple(-2 * r for r in alg.datum.rho)
    km = module.k_mat(two_rho)
    prod = mat * km
    out = alg.field.zero
    for i in range(module.dim):
        v = prod.rows[i].get(i)
        if v:
            out = out + v
    return out


# ----------------------------------------------------------------------
# identity checks
# ----------------------------------------------------------------------


def check_r_intertwines(m1, m2, qr):
    """R . Delta(u) = Delta_op(u) . R for every Chevalley generator."""
    alg = m1.alg
    R = r_matrix(m1, m2, qr)
    t12 = tensor(m1, m2)
    for i in range(alg.datum.rank):
        for gen in (alg.E(i), alg.F(i), alg.K_i(i)):
            lhs = R * t12.act(gen)
            cop = gen.coproduct().flip()
            rhs = SMat.zero(alg.field, t12.dim, t12.dim)
            for (ma, mb), c in cop.terms.items():
                rhs = rhs + m1.act_mono(ma).kron(m2.act_mono(mb)).scale(c)
            rhs = rhs * R
            if lhs != rhs:
                return False
    return True


def check_ybe(m1, m2, m3, qr):
    dims = [m1.dim, m2.dim, m3.dim]
    r12 = place_two_leg(r_matrix(m1, m2, qr), dims, 0, 1)
    r13 = place_two_leg(r_matrix(m1, m3, qr), dims, 0, 2)
    r23 = place_two_leg(r_matrix(m2, m3, qr), dims, 1, 2)
    return (r12 * r13) * r23 == r23 * (r13 * r12)


def check_hexagons(m1, m2, m3, qr):
    """Coproduct laws on the legs of the braiding operator.

    (Delta (x) id): operator on (m1 (x) m2) (x) m3 equals R_13 R_23;
    (id (x) Delta): operator on m1 (x) (m2 (x) m3) equals R_13 R_12.
    """
    dims = [m1.dim, m2.dim, m3.dim]
    t12 = tensor(m1, m2)
    t23 = tensor(m2, m3)
    r13 = place_two_leg(r_matrix(m1, m3, qr), dims, 0, 2)
    lhs1 = r_matrix(t12, m3, qr)
    rhs1 = r13 * place_two_leg(r_matrix(m2, m3, qr), dims, 1, 2)
    if lhs1 != rhs1:
        return False
    lhs2 = r_matrix(m1, t23, qr)
    rhs2 = r13 * place_two_leg(r_matrix(m1, m2, qr), dims, 0, 1)
    return lhs2 == rhs2


def check_ribbon_coproduct(m1, m2, qr):
    """Delta(v) = (R_21 R)^(-1) . (v (x) v) as operators on m1 (x) m2."""
    t = tensor(m1, m2)
    lhs = ribbon_op(t)
    R = r_matrix(m1, m2, qr)
    R21 = r_matrix_21(m1, m2, qr)
    v1 = ribbon_op(m1)
    v2 = ribbon_op(m2)
    rhs = (R21 * R).inverse() * v1.kron(v2)
    return lhs == rhs


def check_naturality(m1, m2, n1, n2, qr, f, g):
    """R commutes with intertwiners: (g (x) f)? placement (f: m1->n1, g: m2->n2)."""
    lhs = f.kron(g) * r_matrix(m1, m2, qr)
    rhs = r_matrix(n1, n2, qr) * f.kron(g)
    return lhs == rhs
