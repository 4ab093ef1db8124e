"""Exact scalars: rational functions in t = q^(1/d) over the rationals.

A Scalar is a pair (num, den) of integer-coefficient polynomials in t,
stored as coefficient tuples, with the unique canonical form
gcd(num, den) = 1 and den having positive leading coefficient.  q is
t^d, so negative q-powers are denominators that are powers of t.

All operations are pure and Scalars are immutable, hence freely
shareable.  Also provides the bar involution (t -> 1/t) and the
q-integer / q-factorial / q-binomial combinatorics.
"""

from fractions import Fraction

from .kernel import (
    padd,
    pcontent,
    pdivexact,
    peval1,
    pgcd,
    pmul,
    pmulint,
    pneg,
    pnorm,
    pshift,
    psub,
)

_ONE = (1,)


class Scalar:
    """Element of Q(t) with t = q^(1/d); canonical, immutable, hashable."""

    __slots__ = ("d", "num", "den", "_hash")

    def __init__(self, d, num, den, _normalized=False):
        self.d = d
        if _normalized:
            self.num = num
            self.den = den
        else:
            num = pnorm(list(num))
            den = pnorm(list(den))
            if not den:
                raise ZeroDivisionError("scalar with zero denominator")
            if not num:
                self.num, self.den = (), _ONE
            else:
                g = pgcd(num, den)
                if len(g) > 1 or g[0] != 1:
                    num = pdivexact(num, g)
                    den = pdivexact(den, g)
                if den[-1] < 0:
                    num = pneg(num)
                    den = pneg(den)
                self.num = tuple(num)
                self.den = tuple(den)
        self._hash = None

    # -- basic protocol -------------------------------------------------

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.d, self.num, self.den))
        return h

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den and self.d == other.d
        if isinstance(other, int):
            return self.den == _ONE and (
                self.num == () if other == 0 else self.num == (other,)
            )
        return NotImplemented

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == _ONE and self.den == _ONE

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return Scalar(self.d, padd(list(self.num), list(other.num)), list(self.den))
        num = padd(
            pmul(list(self.num), list(other.den)),
            pmul(list(other.num), list(self.den)),
        )
        den = pmul(list(self.den), list(other.den))
        return Scalar(self.d, num, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        if not self.num:
            return self
        s = Scalar(self.d, (), _ONE, _normalized=True)
        s.num = tuple(-c for c in self.num)
        s.den = self.den
        return s

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return Scalar(self.d, (), _ONE, _normalized=True)
        if self.is_one():
            return other
        if other.is_one():
            return self
        # cross-cancel first to keep intermediate degrees small
        a, b = list(self.num), list(self.den)
        c, e = list(other.num), list(other.den)
        g1 = pgcd(a, e)
        if len(g1) > 1 or g1[0] != 1:
            a = pdivexact(a, g1)
            e = pdivexact(e, g1)
        g2 = pgcd(c, b)
        if len(g2) > 1 or g2[0] != 1:
            c = pdivexact(c, g2)
            b = pdivexact(b, g2)
        num = pmul(a, c)
        den = pmul(b, e)
        if den[-1] < 0:
            num = pneg(num)
            den = pneg(den)
        out = Scalar(self.d, (), _ONE, _normalized=True)
        out.num = tuple(num)
        out.den = tuple(den)
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("scalar division by zero")
        inv = Scalar(self.d, list(other.den), list(other.num))
        return self * inv

    def __rtruediv__(self, other):
        if not self.num:
            raise ZeroDivisionError("scalar division by zero")
        return self._coerce(other) * Scalar(self.d, list(self.den), list(self.num))

    def __pow__(self, n):
        if n == 0:
            return Scalar(self.d, _ONE, _ONE, _normalized=True)
        if n < 0:
            return (1 / self) ** (-n)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.d != self.d:
                raise ValueError("scalars from different fields (d mismatch)")
            return other
        if isinstance(other, int):
            s = Scalar(self.d, (), _ONE, _normalized=True)
            if other:
                s.num = (other,)
            return s
        if isinstance(other, Fraction):
            return Scalar(self.d, [other.numerator], [other.denominator])
        return NotImplemented

    # -- structure -------------------------------------------------------

    def bar(self):
        """Image under t -> 1/t (the bar involution on scalars)."""
        if not self.num:
            return self
        m, n = len(self.num) - 1, len(self.den) - 1
        num = list(reversed(self.num))
        den = list(reversed(self.den))
        if n >= m:
            num = pshift(num, n - m)
        else:
            den = pshift(den, m - n)
        return Scalar(self.d, num, den)

    def subs_one(self):
        """Evaluate at t = 1 (Fraction); denominator must not vanish there."""
        dv = peval1(list(self.den))
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes at t = 1")
        return Fraction(peval1(list(self.num)), dv)

    def is_monomial(self):
        """True when of the form a * t^k with a rational, k an integer."""
        return (
            sum(1 for c in self.num if c) <= 1
            and sum(1 for c in self.den if c) == 1
        )

    def size(self):
        return len(self.num) + len(self.den)

    # -- io ----------------------------------------------------------------

    def to_json(self):
        return {
            "d": self.d,
            "num": [[i, str(c)] for i, c in enumerate(self.num) if c],
            "den": [[i, str(c)] for i, c in enumerate(self.den) if c],
        }

    @staticmethod
    def from_json(obj):
        d = obj["d"]

        def build(pairs):
            if not pairs:
                return []
            top = max(e for e, _ in pairs)
            out = [0] * (top + 1)
            for e, c in pairs:
                out[e] = int(c)
            return out

        return Scalar(d, build(obj["num"]), build(obj["den"]))

    def __repr__(self):
        return f"Scalar({self.str_q()})"

    def str_q(self):
        """Human-readable form in powers of q (fractional exponents allowed)."""

        def side(coeffs):
            terms = []
            for i, c in enumerate(coeffs):
                if not c:
                    continue
                e = Fraction(i, self.d)
                if e == 0:
                    terms.append(f"{c}")
                else:
                    es = str(e)
                    cs = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                    terms.append(f"{cs}q^{es}" if e != 1 else f"{cs}q")
            return " + ".join(terms).replace("+ -", "- ") if terms else "0"

        if self.den == _ONE:
            return side(self.num)
        return f"({side(self.num)})/({side(self.den)})"


class ScalarField:
    """The field Q(q^(1/d)): scalar constructors and q-combinatorics.

    d must be chosen so every weight pairing of the active root datum
    lies in (1/d)Z; the root datum computes the minimal such d.
    """

    def __init__(self, d):
        if d < 1:
            raise ValueError("d must be a positive integer")
        self.d = d
        self.zero = Scalar(d, (), _ONE, _normalized=True)
        self.one = Scalar(d, _ONE, _ONE, _normalized=True)
        self._tcache = {0: self.one}
        self.q = self.t_pow(d)

    def __call__(self, n):
        if isinstance(n, Fraction):
            return Scalar(self.d, [n.numerator], [n.denominator])
        return Scalar(self.d, [n] if n else [], _ONE)

    def t_pow(self, k):
        """t^k for integer k (k may be negative)."""
        s = self._tcache.get(k)
        if s is None:
            if k >= 0:
                s = Scalar(self.d, tuple([0] * k + [1]), _ONE, _normalized=True)
            else:
                s = Scalar(self.d, _ONE, tuple([0] * (-k) + [1]), _normalized=True)
            self._tcache[k] = s
        return s

    def q_pow(self, x):
        """q^x for x integer or Fraction with d*x integral."""
        e = Fraction(x) * self.d
        if e.denominator != 1:
            raise ValueError(
                f"q^{x} does not lie in Q(q^(1/{self.d})); enlarge d"
            )
        return self.t_pow(int(e))

    def q_int(self, n, di=1):
        """Quantum integer [n] in q_i = q^di: (q_i^n - q_i^-n)/(q_i - q_i^-1)."""
        if n == 0:
            return self.zero
        sign = 1
        if n < 0:
            n, sign = -n, -1
        # sum_{k=0}^{n-1} q_i^(n-1-2k) as a Laurent polynomial in t
        step = self.d * di
        out = self.zero
        for k in range(n):
            out = out + self.t_pow(step * (n - 1 - 2 * k))
        return out if sign == 1 else -out

    def q_factorial(self, n, di=1):
        if n < 0:
            raise ValueError("negative quantum factorial")
        out = self.one
        for k in range(2, n + 1):
            out = out * self.q_int(k, di)
        return out

    def q_binom(self, m, k, di=1):
        if k < 0 or k > m:
            return self.zero
        return self.q_factorial(m, di) / (
            self.q_factorial(k, di) * self.q_factorial(m - k, di)
        )

    def parse(self, text):
        """Parse scalar expressions like '-q^-1', 'q+q^-1', '2*t^3/(q-1)'."""
        return _ScalarParser(self, text).parse()


class _ScalarParser:
    def __init__(self, field, text):
        self.f = field
        self.s = text.replace(" ", "")
        self.i = 0

    def parse(self):
        v = self.expr()
        if self.i != len(self.s):
            raise ValueError(f"trailing input in scalar expression: {self.s[self.i:]!r}")
        return v

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.s[self.i]
            self.i += 1
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.s[self.i]
            self.i += 1
            w = self.factor()
            v = v * w if op == "*" else v / w
        return v

    def factor(self):
        if self.peek() == "-":
            self.i += 1
            return -self.factor()
        if self.peek() == "+":
            self.i += 1
            return self.factor()
        v = self.atom()
        if self.peek() == "^":
            self.i += 1
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.i += 1
            n = self.integer()
            v = v ** (sign * n)
        return v

    def atom(self):
        c = self.peek()
        if c == "(":
            self.i += 1
            v = self.expr()
            if self.peek() != ")":
                raise ValueError("unbalanced parenthesis in scalar expression")
            self.i += 1
            return v
        if c == "q":
            self.i += 1
            return self.f.q
        if c == "t":
            self.i += 1
            return self.f.t_pow(1)
        if c.isdigit():
            return self.f(self.integer())
        raise ValueError(f"cannot parse scalar at {self.s[self.i:]!r}")

    def integer(self):
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            raise ValueError("expected integer in scalar expression")
        return int(self.s[j : self.i])
