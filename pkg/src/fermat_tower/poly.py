"""Generic exact univariate arithmetic over an abstract coefficient field.

A polynomial over a field K is a tuple of K-element values in ascending
degree order with no trailing zeros; () is the zero polynomial.  A rational
function is a pair (num, den) of such tuples in canonical form: den monic,
gcd(num, den) = 1, and the canonical zero is ((), (1,)).

The coefficient field is an explicit object (a Field instance) passed to
every operation, so one kernel serves Q, Q(x), and every level of the
extension tower.  Element values are required to implement exact __eq__ and
__hash__ agreeing with the field's equality; all canonical forms here are
then structurally comparable and hashable, which the rest of the package
relies on for dedup tables.
"""

from gmpy2 import mpq

from fractions import Fraction


class Field:
    """Exact field protocol over opaque element values."""

    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def from_int(self, n: int):
        raise NotImplementedError

    def pow(self, a, n: int):
        if n < 0:
            a = self.inv(a)
            n = -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def to_text(self, a) -> str:
        return str(a)


class RationalField(Field):
    """The prime field Q; elements are gmpy2.mpq (reduced, positive denominator)."""

    zero = mpq(0)
    one = mpq(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n):
        return mpq(n)

    def from_rational(self, q):
        return mpq(q)


QQ = RationalField()


def as_rational(value) -> mpq:
    """Coerce an int / Fraction / mpq to the canonical scalar type."""
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    if isinstance(value, type(mpq())):
        return value
    raise TypeError(f"cannot interpret {value!r} as a rational number")


# ---------------------------------------------------------------------------
# dense univariate polynomials (tuples, ascending degree, no trailing zeros)

def p_trim(K: Field, coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and K.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def p_const(K: Field, c) -> tuple:
    return () if K.is_zero(c) else (c,)


def p_one(K: Field) -> tuple:
    return (K.one,)


def p_gen(K: Field) -> tuple:
    """The polynomial X."""
    return (K.zero, K.one)


def p_deg(a: tuple) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def poly_add(K: Field, a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return p_trim(K, out)


def poly_neg(K: Field, a: tuple) -> tuple:
    return tuple(K.neg(c) for c in a)


def poly_sub(K: Field, a: tuple, b: tuple) -> tuple:
    return poly_add(K, a, poly_neg(K, b))


def poly_mul(K: Field, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if K.is_zero(ai):
            continue
        for j, bj in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(ai, bj))
    return p_trim(K, out)


def p_scale(K: Field, c, a: tuple) -> tuple:
    if K.is_zero(c):
        return ()
    return p_trim(K, [K.mul(c, x) for x in a])


def p_pow(K: Field, a: tuple, n: int) -> tuple:
    if n < 0:
        raise ValueError("negative polynomial power")
    result = p_one(K)
    while n:
        if n & 1:
            result = poly_mul(K, result, a)
        a = poly_mul(K, a, a)
        n >>= 1
    return result


def poly_divmod(K: Field, a: tuple, b: tuple) -> tuple:
    """Quotient and remainder with deg r < deg b."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return (), a
    lc_inv = K.inv(b[-1])
    rem = list(a)
    db = len(b) - 1
    quo = [K.zero] * (len(a) - db)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + db]
        if K.is_zero(c):
            continue
        q = K.mul(c, lc_inv)
        quo[i] = q
        for j in range(db + 1):
            rem[i + j] = K.sub(rem[i + j], K.mul(q, b[j]))
    return p_trim(K, quo), p_trim(K, rem[:db])


def p_mod(K: Field, a: tuple, b: tuple) -> tuple:
    return poly_divmod(K, a, b)[1]


def p_monic(K: Field, a: tuple) -> tuple:
    if not a or K.is_one(a[-1]):
        return a
    return p_scale(K, K.inv(a[-1]), a)


def poly_gcd(K: Field, a: tuple, b: tuple) -> tuple:
    """Monic gcd by Euclid's algorithm (remainders re-normalized each step)."""
    if not a and not b:
        raise ValueError("gcd of two zero polynomials")
    while b:
        a, b = b, p_monic(K, p_mod(K, a, b))
    return p_monic(K, a)


def poly_ext_gcd(K: Field, a: tuple, b: tuple) -> tuple:
    """(g, u, v) with u*a + v*b = g, g the monic gcd."""
    if not a and not b:
        raise ValueError("gcd of two zero polynomials")
    r0, r1 = a, b
    s0, s1 = p_one(K), ()
    t0, t1 = (), p_one(K)
    while r1:
        q, r = poly_divmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(K, s0, poly_mul(K, q, s1))
        t0, t1 = t1, poly_sub(K, t0, poly_mul(K, q, t1))
    c = K.inv(r0[-1])
    return p_scale(K, c, r0), p_scale(K, c, s0), p_scale(K, c, t0)


def p_eval(K: Field, a: tuple, x):
    """Horner evaluation at a K-element."""
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def resultant(K: Field, a: tuple, b: tuple):
    """Resultant of two nonzero polynomials, by the Euclidean recurrence.

    Zero exactly when a and b share a root in the algebraic closure.
    """
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    acc = K.one
    negate = False
    while True:
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            a, b = b, a
            if da & 1 and db & 1:
                negate = not negate
            continue
        if db == 0:
            acc = K.mul(acc, K.pow(b[0], da))
            return K.neg(acc) if negate else acc
        r = p_mod(K, a, b)
        if not r:
            return K.zero
        acc = K.mul(acc, K.pow(b[-1], da - (len(r) - 1)))
        if da & 1 and db & 1:
            negate = not negate
        a, b = b, r


def p_render(K: Field, a: tuple, var: str, atom=None) -> str:
    """Human-readable form like ``2*x^3 - x + 5/2`` (descending degree)."""
    if atom is None:
        atom = K.to_text
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if K.is_zero(c):
            continue
        text = atom(c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        compound = any(ch in text for ch in "+-*/ ") and not text[1:].isdigit()
        if i == 0:
            term = f"({text})" if compound else text
        else:
            power = var if i == 1 else f"{var}^{i}"
            if text == "1" and not compound:
                term = power
            else:
                term = (f"({text})" if compound else text) + "*" + power
        if not parts:
            parts.append(("-" if negative else "") + term)
        else:
            parts.append(("- " if negative else "+ ") + term)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# rational functions: canonical (num, den) pairs over K

class FractionField(Field):
    """Field of fractions of K[X], elements canonical (num, den) pairs."""

    def __init__(self, K: Field):
        self.K = K
        self.zero = ((), (K.one,))
        self.one = ((K.one,), (K.one,))
        self.gen = ((K.zero, K.one), (K.one,))  # the variable X itself

    def make(self, num: tuple, den: tuple) -> tuple:
        """Canonicalize an arbitrary num/den pair."""
        K = self.K
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = poly_gcd(K, num, den)
        if len(g) > 1:
            num = poly_divmod(K, num, g)[0]
            den = poly_divmod(K, den, g)[0]
        if not K.is_one(den[-1]):
            c = K.inv(den[-1])
            num = p_scale(K, c, num)
            den = p_scale(K, c, den)
        return (num, den)

    def from_poly(self, num: tuple) -> tuple:
        return (num, (self.K.one,)) if num else self.zero

    def from_int(self, n: int):
        return self.from_poly(p_const(self.K, self.K.from_int(n)))

    def from_coeff(self, c):
        """Embed a K-element as a constant rational function."""
        return self.from_poly(p_const(self.K, c))

    def add(self, a, b):
        (an, ad), (bn, bd) = a, b
        K = self.K
        num = poly_add(K, poly_mul(K, an, bd), poly_mul(K, bn, ad))
        return self.make(num, poly_mul(K, ad, bd))

    def neg(self, a):
        return (poly_neg(self.K, a[0]), a[1])

    def mul(self, a, b):
        (an, ad), (bn, bd) = a, b
        K = self.K
        return self.make(poly_mul(K, an, bn), poly_mul(K, ad, bd))

    def inv(self, a):
        num, den = a
        if not num:
            raise ZeroDivisionError("inverse of zero rational function")
        return self.make(den, num)

    def is_zero(self, a):
        return not a[0]

    def is_constant(self, a) -> bool:
        return len(a[0]) <= 1 and len(a[1]) == 1

    def constant_value(self, a):
        """The K-element of a constant fraction (requires is_constant)."""
        if not a[0]:
            return self.K.zero
        return a[0][0]

    def to_text(self, a) -> str:
        num, den = a
        if den == (self.K.one,):
            return p_render(self.K, num, "X")
        return f"({p_render(self.K, num, 'X')})/({p_render(self.K, den, 'X')})"


def fraction_field(K: Field) -> FractionField:
    """Memoized fraction field of K[X]."""
    ff = getattr(K, "_frac_field", None)
    if ff is None:
        ff = FractionField(K)
        K._frac_field = ff
    return ff


def ratfunc_add(K: Field, a, b):
    return fraction_field(K).add(a, b)


def ratfunc_mul(K: Field, a, b):
    return fraction_field(K).mul(a, b)


def ratfunc_inv(K: Field, a):
    return fraction_field(K).inv(a)
