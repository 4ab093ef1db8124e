"""Dense univariate polynomial arithmetic over the integers.

This is the hot kernel of the whole engine: every exact scalar is a
quotient of two polynomials in ``t``, and all higher-level algebra
(straightening, linear solves, operator products) reduces to the
primitives below.

A polynomial a_0 + a_1 t + ... + a_n t^n is the list [a_0, ..., a_n] of
Python ints (arbitrary precision).  The zero polynomial is the empty
list.  Invariant: the last list element is nonzero.  Functions return
fresh lists and never mutate their inputs unless stated otherwise.

A Cython twin of this module (_kernel_cy) implements the identical API;
qsp.kernel selects one of the two at import time.
"""

from math import gcd

BACKEND = "python"


def pnorm(a):
    """Strip trailing zeros in place and return the list."""
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] += b[i]
    return pnorm(out)


def psub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i in range(len(b)):
        out[i] -= b[i]
    return pnorm(out)


def pneg(a):
    return [-c for c in a]


def pmulint(a, c):
    if c == 0:
        return []
    return [c * x for x in a]


def pmul(a, b):
    if not a or not b:
        return []
    if len(a) == 1:
        return [a[0] * x for x in b]
    if len(b) == 1:
        return [b[0] * x for x in a]
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def pshift(a, k):
    """Multiply by t^k (k >= 0)."""
    if not a:
        return []
    return [0] * k + list(a)


def pcontent(a):
    """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
    g = 0
    for c in a:
        if c:
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def pdivexact(a, b):
    """Exact quotient a // b in Z[t]; raises if the division is not exact."""
    if not a:
        return []
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(b) == 1:
        d = b[0]
        out = []
        for c in a:
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return pnorm(out)
    if len(a) < len(b):
        raise ArithmeticError("inexact polynomial division")
    r = list(a)
    db = len(b) - 1
    lb = b[db]
    q = [0] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + db]
        if c:
            cq, cr = divmod(c, lb)
            if cr:
                raise ArithmeticError("inexact polynomial division")
            q[k] = cq
            for s in range(db + 1):
                r[k + s] -= cq * b[s]
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return pnorm(q)


def pprem(a, b):
    """Pseudo-remainder of a by b (both nonzero), up to lc(b) powers."""
    r = list(a)
    db = len(b) - 1
    lb = b[db]
    while len(r) - 1 >= db and r:
        la = r[len(r) - 1]
        da = len(r) - 1
        for i in range(len(r)):
            r[i] *= lb
        for s in range(db + 1):
            r[da - db + s] -= la * b[s]
        pnorm(r)
    return r


def pgcd(a, b):
    """Gcd in Z[t], normalized to positive leading coefficient.

    Primitive polynomial remainder sequence with content stripped at
    every step; adequate for the small degrees this engine produces.
    """
    if not a:
        g = list(b)
    elif not b:
        g = list(a)
    else:
        ca, cb = pcontent(a), pcontent(b)
        c = gcd(ca, cb)
        A = [x // ca for x in a]
        B = [x // cb for x in b]
        if len(A) < len(B):
            A, B = B, A
        while B:
            R = pprem(A, B)
            if R:
                cr = pcontent(R)
                if cr != 1:
                    R = [x // cr for x in R]
            A, B = B, R
        g = [x * c for x in A] if c != 1 else list(A)
    if g and g[-1] < 0:
        g = [-x for x in g]
    return g


def peval1(a):
    """Evaluate at t = 1."""
    return sum(a)
