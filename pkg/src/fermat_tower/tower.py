"""The extension tower: level 0 is Q, level s+1 adjoins x_s (transcendental)
and y_s with y_s^p + x_s^p = 1 for the s-th configured odd prime p.

Element representation
----------------------
A TowerElem at level 0 wraps a single rational.  At level s+1 it wraps a
polynomial in y_s of degree < p_s (a tuple) whose coefficients are canonical
rational functions in x_s over level-s elements, i.e. pairs of polynomial
tuples whose own coefficients are TowerElems of level <= s.

Every element is stored at its *minimal* level: a constant polynomial over a
constant fraction is unwrapped on the spot.  Coercion upward is therefore
implicit (any element is usable at any level at or above its own), equality
is plain structural comparison of (level, payload), and elements are
hashable, which the presentation layer uses for its dedup tables.  Lowering
a representation below its minimal level is not offered.
"""

import json
from dataclasses import dataclass

from gmpy2 import mpq

from . import arith
from .errors import InvariantViolationError, SubstitutionSingularityError
from .poly import (
    Field,
    FractionField,
    as_rational,
    p_eval,
    p_mod,
    p_render,
    poly_add,
    poly_divmod,
    poly_ext_gcd,
    poly_mul,
    poly_neg,
)


@dataclass(frozen=True)
class TowerConfig:
    """Ordered prime list for the tower; depth equals len(primes).

    Primes must be odd, distinct, and greater than 3 (genus at least 2)
    unless `unchecked` is set, which permits 3 and marks the list as not
    schedule-verified (reports echo the flag).
    """

    primes: tuple
    unchecked: bool = False

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        for p in self.primes:
            if p % 2 == 0:
                raise ValueError(f"even prime {p} not allowed")
            if not arith.is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p == 3 and not self.unchecked:
                raise ValueError("p = 3 has genus 1; pass unchecked=True to allow it")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("repeated primes not allowed")

    @property
    def depth(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class FermatRelation:
    """The defining curve equation X^p + Y^p - 1 of one tower level."""

    prime: int

    def check(self, x, y) -> bool:
        """Exact test of x^p + y^p == 1 through the operands' own arithmetic."""
        return bool(x ** self.prime + y ** self.prime == x.tower.one)

    def __str__(self):
        return f"X^{self.prime} + Y^{self.prime} - 1"


class TowerElem:
    """Immutable canonical element of the tower (see module docstring)."""

    __slots__ = ("tower", "level", "payload", "_hash")

    def __init__(self, tower, level, payload):
        self.tower = tower
        self.level = level
        self.payload = payload
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, TowerElem):
            return NotImplemented
        return (
            self.tower is other.tower
            and self.level == other.level
            and self.payload == other.payload
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.level, self.payload))
        return h

    def __bool__(self):
        return not (self.level == 0 and not self.payload)

    def inv(self):
        return self.tower.inv(self)

    def serialize(self) -> str:
        return self.tower.serialize(self)

    def __add__(self, other):
        o = self.tower._operand(other)
        return NotImplemented if o is None else self.tower.add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self.tower._operand(other)
        return NotImplemented if o is None else self.tower.sub(self, o)

    def __rsub__(self, other):
        o = self.tower._operand(other)
        return NotImplemented if o is None else self.tower.sub(o, self)

    def __mul__(self, other):
        o = self.tower._operand(other)
        return NotImplemented if o is None else self.tower.mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self.tower._operand(other)
        return NotImplemented if o is None else self.tower.div(self, o)

    def __rtruediv__(self, other):
        o = self.tower._operand(other)
        return NotImplemented if o is None else self.tower.div(o, self)

    def __neg__(self):
        return self.tower.neg(self)

    def __pow__(self, n):
        return self.tower.pow(self, n)

    def __str__(self):
        return self.tower.render(self)

    def __repr__(self):
        return f"<TowerElem level={self.level} {self}>"


class _LevelField(Field):
    """Field adapter whose element values are TowerElems of level <= s."""

    def __init__(self, tower, s):
        self.tower = tower
        self.s = s
        self.zero = tower.zero
        self.one = tower.one

    def add(self, a, b):
        return self.tower.add(a, b)

    def neg(self, a):
        return self.tower.neg(a)

    def mul(self, a, b):
        return self.tower.mul(a, b)

    def inv(self, a):
        return self.tower.inv(a)

    def sub(self, a, b):
        return self.tower.sub(a, b)

    def from_int(self, n):
        return self.tower.from_int(n)

    def to_text(self, a):
        return self.tower.render(a)


class TowerField:
    """Field object for a configured tower; all TowerElem arithmetic lives here."""

    def __init__(self, config: TowerConfig):
        self.config = config
        self.primes = config.primes
        self.depth = config.depth
        self.zero = TowerElem(self, 0, mpq(0))
        self.one = TowerElem(self, 0, mpq(1))
        self._level_fields = []
        self._frac = []
        self._moduli = []
        self._gens_x = []
        self._gens_y = []
        for s, p in enumerate(self.primes):
            lf = _LevelField(self, s)
            ff = FractionField(lf)
            self._level_fields.append(lf)
            self._frac.append(ff)
            # modulus in y_s over Q(..)(x_s): Y^p + (x_s^p - 1)
            xp_minus_1 = (self._neg_one(),) + (self.zero,) * (p - 1) + (self.one,)
            const = ff.make(xp_minus_1, (self.one,))
            self._moduli.append((const,) + (ff.zero,) * (p - 1) + (ff.one,))
            self._gens_x.append(TowerElem(self, s + 1, (ff.gen,)))
            self._gens_y.append(TowerElem(self, s + 1, (ff.zero, ff.one)))

    def _neg_one(self):
        return TowerElem(self, 0, mpq(-1))

    # -- constructors ------------------------------------------------------

    def from_rational(self, q) -> TowerElem:
        q = as_rational(q)
        if not q:
            return self.zero
        if q == 1:
            return self.one
        return TowerElem(self, 0, q)

    def from_int(self, n: int) -> TowerElem:
        return self.from_rational(n)

    def _operand(self, v):
        if isinstance(v, TowerElem):
            return v if v.tower is self else None
        try:
            return self.from_rational(v)
        except TypeError:
            return None

    def _ensure(self, v) -> TowerElem:
        o = self._operand(v)
        if o is None:
            raise TypeError(f"not an element of this tower: {v!r}")
        return o

    def gen_x(self, i: int) -> TowerElem:
        if not 0 <= i < self.depth:
            raise ValueError(f"level index {i} out of range for depth {self.depth}")
        return self._gens_x[i]

    def gen_y(self, i: int) -> TowerElem:
        if not 0 <= i < self.depth:
            raise ValueError(f"level index {i} out of range for depth {self.depth}")
        return self._gens_y[i]

    def relation(self, i: int) -> FermatRelation:
        if not 0 <= i < self.depth:
            raise ValueError(f"level index {i} out of range for depth {self.depth}")
        return FermatRelation(self.primes[i])

    def generator_names(self):
        names = []
        for i in range(self.depth):
            names.append(f"x{i}")
            names.append(f"y{i}")
        return names

    def generator(self, name: str) -> TowerElem:
        kind, idx = name[0], name[1:]
        if kind in ("x", "y") and idx.isdigit():
            i = int(idx)
            if 0 <= i < self.depth:
                return self._gens_x[i] if kind == "x" else self._gens_y[i]
        raise ValueError(f"unknown generator {name!r}")

    # -- representation plumbing -------------------------------------------

    def _at_level(self, e: TowerElem, level: int):
        """Payload of e viewed at exactly `level` (>= e.level)."""
        if e.level == level:
            return e.payload
        # one wrap suffices: coefficients may sit at any lower level
        return (((e,), (self.one,)),)

    def _demote(self, level: int, payload) -> TowerElem:
        while level > 0:
            if not payload:
                return self.zero
            if len(payload) == 1:
                num, den = payload[0]
                if den == (self.one,) and len(num) <= 1:
                    return num[0] if num else self.zero
            break
        if level == 0:
            return self.from_rational(payload)
        return TowerElem(self, level, payload)

    # -- field operations ----------------------------------------------------

    def add(self, a, b) -> TowerElem:
        a, b = self._ensure(a), self._ensure(b)
        lvl = a.level if a.level >= b.level else b.level
        if lvl == 0:
            return self.from_rational(a.payload + b.payload)
        ff = self._frac[lvl - 1]
        res = poly_add(ff, self._at_level(a, lvl), self._at_level(b, lvl))
        return self._demote(lvl, res)

    def neg(self, a) -> TowerElem:
        a = self._ensure(a)
        if a.level == 0:
            return self.from_rational(-a.payload)
        ff = self._frac[a.level - 1]
        return TowerElem(self, a.level, poly_neg(ff, a.payload))

    def sub(self, a, b) -> TowerElem:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> TowerElem:
        a, b = self._ensure(a), self._ensure(b)
        lvl = a.level if a.level >= b.level else b.level
        if lvl == 0:
            return self.from_rational(a.payload * b.payload)
        ff = self._frac[lvl - 1]
        prod = poly_mul(ff, self._at_level(a, lvl), self._at_level(b, lvl))
        if len(prod) > self.primes[lvl - 1]:
            prod = p_mod(ff, prod, self._moduli[lvl - 1])
        return self._demote(lvl, prod)

    def inv(self, a) -> TowerElem:
        a = self._ensure(a)
        if not a:
            raise ZeroDivisionError("inverse of zero tower element")
        if a.level == 0:
            return self.from_rational(1 / a.payload)
        ff = self._frac[a.level - 1]
        m = self._moduli[a.level - 1]
        g, u, _ = poly_ext_gcd(ff, a.payload, m)
        if len(g) != 1:
            # the defining polynomial is irreducible, so a non-unit gcd is a bug
            raise InvariantViolationError(
                f"extended gcd against the level-{a.level} relation returned "
                f"a non-unit of degree {len(g) - 1}"
            )
        return self._demote(a.level, p_mod(ff, u, m))

    def div(self, a, b) -> TowerElem:
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int) -> TowerElem:
        a = self._ensure(a)
        n = int(n)
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

    def eq(self, a, b) -> bool:
        a, b = self._ensure(a), self._ensure(b)
        return a.level == b.level and a.payload == b.payload

    def coerce(self, a, level: int) -> TowerElem:
        """View a at `level`; minimal representations make this the identity."""
        a = self._ensure(a)
        if not a.level <= level <= self.depth:
            raise ValueError(
                f"cannot represent a level-{a.level} element at level {level}"
            )
        return a

    def level_of(self, a) -> int:
        return self._ensure(a).level

    def is_rational(self, a):
        """The rational value of a constant element, else None."""
        a = self._ensure(a)
        return a.payload if a.level == 0 else None

    # -- substitution ----------------------------------------------------------

    def substitute(self, a, images) -> TowerElem:
        """Evaluate a with generators replaced per `images` ({"x0": elem, ...}).

        Ring-homomorphic by construction.  Every generator appearing in a must
        be mapped; for each level with both generators mapped the images must
        satisfy that level's defining relation.  A vanishing denominator
        raises SubstitutionSingularityError.
        """
        a = self._ensure(a)
        imgs = {}
        for name, val in images.items():
            self.generator(name)  # validates the key
            imgs[name] = self._ensure(val)
        for i in range(self.depth):
            u, v = imgs.get(f"x{i}"), imgs.get(f"y{i}")
            if u is not None and v is not None:
                if not self.relation(i).check(u, v):
                    raise ValueError(
                        f"images of x{i}, y{i} do not satisfy the level-{i} relation"
                    )
        return self._subst(a, imgs, {})

    def _subst(self, e: TowerElem, imgs, memo) -> TowerElem:
        if e.level == 0:
            return e
        cached = memo.get(e)
        if cached is not None:
            return cached
        s = e.level - 1
        y_img = None
        if len(e.payload) > 1:
            y_img = imgs.get(f"y{s}")
            if y_img is None:
                raise ValueError(f"unmapped generator y{s}")
        x_img = None
        if any(len(num) > 1 or len(den) > 1 for num, den in e.payload):
            x_img = imgs.get(f"x{s}")
            if x_img is None:
                raise ValueError(f"unmapped generator x{s}")
        acc = self.zero
        for num, den in reversed(e.payload):
            nu = self._subst_xpoly(num, x_img, imgs, memo)
            de = self._subst_xpoly(den, x_img, imgs, memo)
            if not de:
                raise SubstitutionSingularityError(
                    f"denominator vanished substituting into a level-{e.level} element"
                )
            coeff = self.div(nu, de)
            acc = self.add(self.mul(acc, y_img) if y_img is not None else acc, coeff)
        memo[e] = acc
        return acc

    def _subst_xpoly(self, coeffs, x_img, imgs, memo) -> TowerElem:
        acc = self.zero
        for c in reversed(coeffs):
            if x_img is not None:
                acc = self.mul(acc, x_img)
            acc = self.add(acc, self._subst(c, imgs, memo))
        return acc

    # -- rendering / serialization ---------------------------------------------

    def render(self, a) -> str:
        a = self._ensure(a)
        if a.level == 0:
            return str(a.payload)
        s = a.level - 1
        ff = self._frac[s]
        return p_render(ff, a.payload, f"y{s}", atom=lambda r: self._render_frac(s, r))

    def _render_frac(self, s, r) -> str:
        num, den = r
        lf = self._level_fields[s]
        num_text = p_render(lf, num, f"x{s}", atom=self.render)
        if den == (self.one,):
            return num_text
        return f"({num_text})/({p_render(lf, den, f'x{s}', atom=self.render)})"

    def serialize(self, a) -> str:
        """Canonical machine form, stable across runs (see _structure)."""
        return json.dumps(self._structure(self._ensure(a)), separators=(",", ":"))

    def _structure(self, e: TowerElem):
        if e.level == 0:
            return str(e.payload)
        return [
            e.level,
            [
                [[self._structure(c) for c in num], [self._structure(c) for c in den]]
                for num, den in e.payload
            ],
        ]

    # -- sampling (seeded; powers the randomized exact test suites) -------------

    def random_element(self, rng, max_level=None, atoms=4, coeff_bound=9) -> TowerElem:
        """Small random element combining generators and rationals."""
        if max_level is None:
            max_level = self.depth
        pool = []
        for i in range(max_level):
            pool.append(self._gens_x[i])
            pool.append(self._gens_y[i])

        def atom():
            if pool and rng.random() < 0.55:
                e = rng.choice(pool)
                if rng.random() < 0.2:
                    return self.inv(e)
                return e
            return self.from_rational(
                mpq(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, 4))
            )

        value = atom()
        for _ in range(rng.randrange(1, max(2, atoms))):
            op = rng.randrange(3)
            rhs = atom()
            if op == 0:
                value = self.add(value, rhs)
            elif op == 1:
                value = self.sub(value, rhs)
            else:
                value = self.mul(value, rhs)
        return value

    def __repr__(self):
        flag = ", unchecked" if self.config.unchecked else ""
        return f"<TowerField primes={list(self.primes)}{flag}>"


def build_tower(config: TowerConfig) -> TowerField:
    """Construct the tower field for a validated configuration."""
    return TowerField(config)
