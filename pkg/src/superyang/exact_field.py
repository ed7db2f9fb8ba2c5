"""Exact scalars, univariate polynomials and rational functions.

Rationals are :class:`fractions.Fraction`.  A :class:`Poly` holds an
ascending coefficient tuple over any exact field whose zero is falsy, and a
:class:`RatFun` is a reduced quotient of two such polynomials with a monic
denominator, so equality of canonical forms decides equality of functions.

Nested ``RatFun`` chains such as ``('u1', 'u2')`` (a rational function of
``u1`` with coefficients in Q(u2)) are supported for small cases; the
:class:`FieldTower` used by the fusion procedure stores elements of
Q(u_1, ..., u_k) as reduced quotients of flint multivariate polynomials.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import DivisionByZero, EvaluationPole

Rational = Fraction

__all__ = [
    "Rational", "Poly", "RatFun", "FieldTower", "TowerElem",
    "parse_rational", "format_rational",
    "ratfun_normalize", "ratfun_shift", "poly_gcd", "rational_roots",
    "tower_substitute",
]


def parse_rational(text) -> Fraction:
    return Fraction(str(text).strip())


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Univariate polynomial with ascending coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="u"):
        self.coeffs = _trim(Fraction(c) if isinstance(c, int) else c for c in coeffs)
        self.var = var

    @classmethod
    def const(cls, c, var="u"):
        return cls((c,), var)

    @classmethod
    def x(cls, var="u"):
        return cls((Fraction(0), Fraction(1)), var)

    @classmethod
    def from_roots(cls, roots, var="u"):
        p = cls.const(Fraction(1), var)
        for r in roots:
            p = p * cls((-Fraction(r), Fraction(1)), var)
        return p

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return _format_poly(self.coeffs, self.var)

    # -- arithmetic ----------------------------------------------------
    def _wrap(self, other):
        if isinstance(other, Poly):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return Poly((other,), self.var)

    def __add__(self, other):
        other = self._wrap(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs], self.var)
        other = self._wrap(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly((), self.var)
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return Poly([Fraction(0) if c is None else c for c in out], self.var)

    def __rmul__(self, other):
        return Poly([other * c for c in self.coeffs], self.var)

    def __pow__(self, k: int):
        result = Poly.const(self.lc / self.lc if self.coeffs else Fraction(1), self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        return Poly([x * c for x in self.coeffs], self.var)

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = 1 / other.lc
        if len(rem) <= db:
            return Poly((), self.var), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv_lc
            quot[k - db] = q
            for j, b in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - q * b
        return Poly(quot, self.var), Poly(rem[:db], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero() or self.coeffs[-1] == 1:
            return self
        lc = self.coeffs[-1]
        return Poly([c / lc for c in self.coeffs[:-1]] + [lc / lc], self.var)

    def __call__(self, value):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        return Fraction(0) if acc is None else acc

    def shift(self, a) -> "Poly":
        """Return p(u + a)."""
        if not a or self.degree < 1:
            return self
        lin = Poly((a, a * 0 + 1), self.var)
        acc = Poly((), self.var)
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def to_json(self):
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data, var="u"):
        return cls([parse_rational(c) for c in data], var)


def _format_coeff(c):
    s = format_rational(c) if isinstance(c, (int, Fraction)) else f"({c})"
    return s


def _format_poly(coeffs, var):
    if not coeffs:
        return "0"
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if isinstance(c, (int, Fraction)):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (format_rational(mag) + ("*" + mono if mono else ""))
        else:
            sign = "+"
            body = f"({c})" + ("*" + mono if mono else "")
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(p, 0)`` is ``monic(p)``."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


class RatFun:
    """Reduced rational function ``num/den`` with monic ``den``.

    ``vars`` is the chain of variables from this level down: coefficients of
    ``num`` and ``den`` are Fractions when ``len(vars) == 1`` and RatFun over
    ``vars[1:]`` otherwise.
    """

    __slots__ = ("num", "den", "vars")

    def __init__(self, num, den=None, vars=("u",), _reduced=False):
        vars = tuple(vars)
        self.vars = vars
        if not isinstance(num, Poly):
            num = Poly((num,), vars[0])
        if den is None:
            den = Poly((_one(vars[1:]),), vars[0])
        elif not isinstance(den, Poly):
            den = Poly((den,), vars[0])
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num, self.den = num, den

    @property
    def var(self):
        return self.vars[0]

    @classmethod
    def const(cls, c, vars=("u",)):
        return cls(Poly((c,), vars[0]), None, vars, _reduced=True) if c else cls.zero(vars)

    @classmethod
    def zero(cls, vars=("u",)):
        vars = tuple(vars)
        return cls(Poly((), vars[0]), Poly((_one(vars[1:]),), vars[0]), vars, _reduced=True)

    @classmethod
    def one(cls, vars=("u",)):
        return cls.const(_one(tuple(vars)[1:]), vars)

    @classmethod
    def gen(cls, vars=("u",)):
        vars = tuple(vars)
        o = _one(vars[1:])
        return cls(Poly((o * 0, o), vars[0]), None, vars, _reduced=True)

    @classmethod
    def from_poly(cls, p: Poly, vars=None):
        return cls(p, None, vars or (p.var,))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeffs[0] if self.num.coeffs else _one(self.vars[1:]) * 0

    # -- coercion ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFun):
            if other.vars == self.vars:
                return other
            n = len(other.vars)
            if n < len(self.vars) and self.vars[-n:] == other.vars:
                return RatFun.const(other, self.vars)
            return None
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if len(self.vars) > 1:
                c = RatFun.const(c, self.vars[1:])
            return RatFun.const(c, self.vars)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, RatFun):
                return NotImplemented
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num.coeffs, self.den.coeffs, self.vars))

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            return self
        if not self:
            return o
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den, self.vars)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, self.vars, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self or not o:
            return RatFun.zero(self.vars)
        if o.is_constant():
            c = o.constant_value()
            return RatFun(self.num.scale(c), self.den, self.vars, _reduced=True)
        if self.is_constant():
            c = self.constant_value()
            return RatFun(o.num.scale(c), o.den, self.vars, _reduced=True)
        # cross-cancel before multiplying
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        num = (self.num // g1) * (o.num // g2)
        den = (self.den // g2) * (o.den // g1)
        return RatFun(num, den, self.vars, _reduced=True)._fix_den()

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero rational function")
        return RatFun(self.den, self.num, self.vars, _reduced=True)._fix_den()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun(self.num ** k, self.den ** k, self.vars, _reduced=True)

    def _fix_den(self):
        lc = self.den.lc
        if lc == 1:
            return self
        inv = 1 / lc
        return RatFun(self.num.scale(inv), self.den.scale(inv), self.vars, _reduced=True)

    # -- evaluation ----------------------------------------------------
    def __call__(self, value):
        d = self.den(value)
        if not d:
            raise EvaluationPole(f"pole of {self} at {self.var}={value}")
        return self.num(value) / d

    def shift(self, a):
        """Return f(u + a)."""
        return ratfun_shift(self, a)

    def map_coeffs(self, fn):
        return RatFun(Poly([fn(c) for c in self.num.coeffs], self.var),
                      Poly([fn(c) for c in self.den.coeffs], self.var), self.vars)

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data, var="u"):
        return cls(Poly.from_json(data["num"], var), Poly.from_json(data["den"], var), (var,))

    def leading_behaviour(self):
        """Return (deg num - deg den, ratio of leading coefficients)."""
        if not self:
            return None
        return self.num.degree - self.den.degree, self.num.lc / self.den.lc


def _one(vars):
    if not vars:
        return Fraction(1)
    return RatFun.one(vars)


def _reduce(num: Poly, den: Poly):
    if num.is_zero():
        return num, Poly((den.lc / den.lc,), den.var)
    if den.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
    lc = den.lc
    if lc != 1:
        inv = 1 / lc
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def ratfun_normalize(num: Poly, den: Poly) -> RatFun:
    """Canonical reduced form of ``num/den``; the scalar lives in the numerator."""
    return RatFun(num, den, (num.var,))


def ratfun_shift(f: RatFun, a) -> RatFun:
    if not a:
        return f
    return RatFun(f.num.shift(a), f.den.shift(a), f.vars)


def _int_divisors(n: int):
    n = abs(n)
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def rational_roots(p: Poly):
    """Split ``p`` into rational linear factors and a root-free remainder.

    Returns ``(roots, remainder)`` with ``roots`` a dict root -> multiplicity
    and ``p == remainder * prod((u - r)**m)``.
    """
    if p.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    roots = {}
    rem = p
    # strip zero roots first so the constant term is nonzero below
    k = 0
    while rem.degree > 0 and not rem.coeffs[0]:
        rem = Poly(rem.coeffs[1:], rem.var)
        k += 1
    if k:
        roots[Fraction(0)] = k
    while rem.degree > 0:
        denom = 1
        for c in rem.coeffs:
            denom = denom * c.denominator // _gcd(denom, c.denominator)
        ints = [int(c * denom) for c in rem.coeffs]
        found = None
        for q in _int_divisors(ints[-1]):
            for pp in _int_divisors(ints[0]):
                for cand in (Fraction(pp, q), Fraction(-pp, q)):
                    if not rem(cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        rem = rem // Poly((-found, Fraction(1)), rem.var)
        roots[found] = roots.get(found, 0) + 1
    return dict(sorted(roots.items())), rem


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class TowerElem:
    """Element of Q(u_1, ..., u_k) stored as a reduced quotient of
    multivariate polynomials.

    The denominator is normalised to leading coefficient 1 (lex order), so
    the representation is canonical.  Reducedness makes pole detection under
    the substitution ``u_a := c`` exact: the function is regular at ``u_a = c``
    iff the denominator does not vanish identically there.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = num.context().from_dict({(0,) * num.context().nvars(): 1})
        if den.is_zero():
            raise DivisionByZero("tower element with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = den.context().from_dict({(0,) * den.context().nvars(): 1})
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num / g, den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        self.num, self.den = num, den

    def _coerce(self, other):
        if isinstance(other, TowerElem):
            return other
        if isinstance(other, (int, Fraction)):
            ctx = self.num.context()
            c = Fraction(other)
            return TowerElem(ctx.from_dict({(0,) * ctx.nvars(): _fq_flint(c)}), None, True)
        return None

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return Fraction(0)
        c = self.num.leading_coefficient() / self.den.leading_coefficient()
        return Fraction(int(c.p), int(c.q))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((str(self.num), str(self.den)))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            return self
        if not self:
            return o
        if self.den == o.den:
            return TowerElem(self.num + o.num, self.den)
        return TowerElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(-self.num, self.den, True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self or not o:
            return TowerElem(self.num * 0, None, True)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        return TowerElem((self.num / g1) * (o.num / g2), (self.den / g2) * (o.den / g1), True)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        return TowerElem(self.den, self.num, True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def substitute(self, var, value):
        """The value at ``var := value``; raises :class:`EvaluationPole` at a pole."""
        v = _fq_flint(Fraction(value))
        den = self.den.subs({var: v})
        if den.is_zero():
            raise EvaluationPole(f"pole at {var}={value}")
        return TowerElem(self.num.subs({var: v}), den)

    def __repr__(self):
        if self.den.is_one():
            return f"TowerElem({self.num})"
        return f"TowerElem(({self.num})/({self.den}))"

    __str__ = __repr__


def _fq_flint(c: Fraction):
    import flint
    return flint.fmpq(c.numerator, c.denominator)


class FieldTower:
    """The field Q(u_1, ..., u_k); ``u_1`` is the outermost variable and is
    substituted first in consecutive evaluations."""

    def __init__(self, variables):
        import flint
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("tower variables must be distinct")
        self.ctx = flint.fmpq_mpoly_ctx.get(self.variables, "lex")

    def gen(self, var) -> TowerElem:
        k = self.variables.index(var)
        return TowerElem(self.ctx.gens()[k], None, True)

    def const(self, c) -> TowerElem:
        c = Fraction(c)
        return TowerElem(self.ctx.from_dict({(0,) * len(self.variables): _fq_flint(c)}), None, True)


def tower_substitute(f, var, value):
    """Substitute ``var := value`` in a tower element (or univariate RatFun).

    Fully evaluated tower elements come back as Fractions.
    """
    if isinstance(f, TowerElem):
        out = f.substitute(var, value)
        return out.constant_value() if out.is_constant() else out
    if not isinstance(f, RatFun):
        return f
    if f.var == var:
        den = f.den(value)
        if not den:
            raise EvaluationPole(f"pole at {var}={value}")
        return f.num(value) / den
    if var not in f.vars:
        return f
    return f.map_coeffs(lambda c: tower_substitute(c, var, value))
