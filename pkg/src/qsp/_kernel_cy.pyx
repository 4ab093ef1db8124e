# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython twin of qsp._kernel_py.

Same API, same semantics: dense integer-coefficient polynomials as
Python lists (little-endian, no trailing zeros).  Coefficients stay
Python ints, so the win over the pure twin is loop overhead, not
big-integer arithmetic.
"""

from math import gcd

BACKEND = "cython"


cpdef list pnorm(list a):
    cdef Py_ssize_t n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


cpdef list padd(list a, list b):
    cdef Py_ssize_t i
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    return pnorm(out)


cpdef list psub(list a, list b):
    cdef Py_ssize_t i
    cdef list out = list(a)
    if len(b) > len(out):
        out.extend([0] * (len(b) - len(out)))
    for i in range(len(b)):
        out[i] = out[i] - b[i]
    return pnorm(out)


cpdef list pneg(list a):
    return [-c for c in a]


cpdef list pmulint(list a, c):
    if c == 0:
        return []
    return [c * x for x in a]


cpdef list pmul(list a, list b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    if la == 1:
        return [a[0] * x for x in b]
    if lb == 1:
        return [b[0] * x for x in a]
    cdef list out = [0] * (la + lb - 1)
    cdef object ai
    for i in range(la):
        ai = a[i]
        if ai:
            for j in range(lb):
                out[i + j] = out[i + j] + ai * b[j]
    return out


cpdef list pshift(list a, Py_ssize_t k):
    if not a:
        return []
    return [0] * k + list(a)


cpdef pcontent(list a):
    cdef object g = 0
    for c in a:
        if c:
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


cpdef list pdivexact(list a, list b):
    cdef Py_ssize_t k, s, db
    if not a:
        return []
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef object d, c, cq, cr, la
    if len(b) == 1:
        d = b[0]
        out = []
        for c in a:
            cq, cr = divmod(c, d)
            if cr:
                raise ArithmeticError("inexact polynomial division")
            out.append(cq)
        return pnorm(out)
    if len(a) < len(b):
        raise ArithmeticError("inexact polynomial division")
    cdef list r = list(a)
    db = len(b) - 1
    d = b[db]
    cdef list q = [0] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + db]
        if c:
            cq, cr = divmod(c, d)
            if cr:
                raise ArithmeticError("inexact polynomial division")
            q[k] = cq
            for s in range(db + 1):
                r[k + s] = r[k + s] - cq * b[s]
    for c in r:
        if c:
            raise ArithmeticError("inexact polynomial division")
    return pnorm(q)


cpdef list pprem(list a, list b):
    cdef list r = list(a)
    cdef Py_ssize_t db = len(b) - 1, da, i, s
    cdef object lb = b[db], la
    while r and len(r) - 1 >= db:
        da = len(r) - 1
        la = r[da]
        for i in range(len(r)):
            r[i] = r[i] * lb
        for s in range(db + 1):
            r[da - db + s] = r[da - db + s] - la * b[s]
        pnorm(r)
    return r


cpdef list pgcd(list a, list b):
    cdef list A, B, R, g
    cdef object ca, cb, c, cr
    if not a:
        g = list(b)
    elif not b:
        g = list(a)
    else:
        ca = pcontent(a)
        cb = pcontent(b)
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
            A = B
            B = R
        g = [x * c for x in A] if c != 1 else list(A)
    if g and g[len(g) - 1] < 0:
        g = [-x for x in g]
    return g


cpdef peval1(list a):
    return sum(a)
