"""Contraction of two-leg operators against matrix coefficients.

A factored two-leg operator is an ordered list of factors, each one of

    ("graded", {mu: TensorUElement})   both legs symbolic
    ("kappa",  fmap, sign)             weight-pairing diagonal q^(sign (f(w1), w2))
    ("second", builder)                identity (x) operator, builder(V) -> SMat
    ("scalar", Scalar)                 overall scalar

Contracting the second legs against the matrix coefficients of a module
V turns each factor into a transfer matrix with entries in the symbolic
algebra; the coproduct rule for contractions makes the contraction of
the product the product of the transfer matrices.  This realizes
generalized l-operators: X contracted against c_{f,v} is f . (prod T) . v.
"""

from .linalg import SMat
from .uqalg import UElement


def transfer_matrix(alg, factor, module):
    """Sparse {(row, col): UElement} transfer of one factor on a module."""
    kind = factor[0]
    out = {}
    if kind == "graded":
        for mu, tens in factor[1].items():
            for (m1, m2), c in tens.terms.items():
                mat = module.act_mono(m2)
                for r, row in enumerate(mat.rows):
                    for k, v in row.items():
                        u = UElement(alg, {m1: c * v})
                        if (r, k) in out:
                            out[(r, k)] = out[(r, k)] + u
                        else:
                            out[(r, k)] = u
    elif kind == "kappa":
        fmap, sign = factor[1], factor[2]
        for k, w in enumerate(module.weights):
            lam = fmap(w) if fmap is not None else w
            if sign < 0:
                lam = tuple(-c for c in lam)
            out[(k, k)] = alg.K(lam)
    elif kind == "second":
        mat = factor[1](module)
        one = alg.one_el()
        for r, row in enumerate(mat.rows):
            for k, v in row.items():
                out[(r, k)] = one * v
    elif kind == "scalar":
        s = factor[1]
        for k in range(module.dim):
            out[(k, k)] = alg.scalar_el(s)
    else:
        raise ValueError(f"unknown factor kind {kind!r}")
    return {rc: u for rc, u in out.items() if not u.is_zero()}


def transfer_product(alg, factors, module):
    """Product of the transfer matrices of the factors, in order."""
    prod = None
    for factor in factors:
        t = transfer_matrix(alg, factor, module)
        if prod is None:
            prod = t
            continue
        nxt = {}
        bycol = {}
        for (l, k), u in t.items():
            bycol.setdefault(l, []).append((k, u))
        for (r, l), a in prod.items():
            for k, b in bycol.get(l, ()):
                p = a * b
                if p.is_zero():
                    continue
                if (r, k) in nxt:
                    nxt[(r, k)] = nxt[(r, k)] + p
                else:
                    nxt[(r, k)] = p
        prod = {rc: u for rc, u in nxt.items() if not u.is_zero()}
    if prod is None:
        prod = {
            (k, k): alg.one_el() for k in range(module.dim)
        }
    return prod


def contract_second(alg, factors, module, fvec, vvec):
    """<X, c_{f,v}>: contraction of the factored operator's second legs."""
    prod = transfer_product(alg, factors, module)
    out = alg.zero_el()
    for (r, k), u in prod.items():
        if fvec[r] and vvec[k]:
            out = out + u * (fvec[r] * vvec[k])
    return out


def operator_of_factors(factors, m1, m2):
    """The factored operator as an exact matrix on m1 (x) m2."""
    alg = m1.alg
    field = m1.field
    n = m1.dim * m2.dim
    out = SMat.identity(field, n)
    for factor in factors:
        kind = factor[0]
        if kind == "graded":
            mat = SMat.zero(field, n, n)
            for mu, tens in factor[1].items():
                for (ma, mb), c in tens.terms.items():
                    mat = mat + m1.act_mono(ma).kron(m2.act_mono(mb)).scale(c)
        elif kind == "kappa":
            fmap, sign = factor[1], factor[2]
            diag = []
            for w1 in m1.weights:
                lam = fmap(w1) if fmap is not None else w1
                for w2 in m2.weights:
                    diag.append(alg.q_pow_ww(lam, w2, sign))
            mat = SMat.diagonal(field, diag)
        elif kind == "second":
            mat = SMat.identity(field, m1.dim).kron(factor[1](m2))
        elif kind == "scalar":
            mat = SMat.identity(field, n).scale(factor[1])
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
        out = out * mat
    return out
