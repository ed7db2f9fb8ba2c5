"""Drinfeld polynomials of highest weight modules over X(osp_{2|2n}).

A reduced highest weight (lambda_1, ..., lambda_{n+2}) corresponds to the
tuple (Qbar, Q, P_2, ..., P_{n+1}) of monic polynomials with

    lambda_1/lambda_2 = Qbar/Q,
    lambda_{i+1}/lambda_i = P_i(u+1)/P_i(u)        (i = 2, ..., n),
    lambda_{n+2}/lambda_{n+1} = P_{n+1}(u+2)/P_{n+1}(u).

The shift equations are solved exactly from the rational root multisets.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeMismatch, IrrationalRoots, NoSolution
from .exact_field import Poly, RatFun, poly_gcd, ratfun_shift, rational_roots


def _one():
    return Poly.const(1)


@dataclass(frozen=True)
class DrinfeldTuple:
    Qbar: Poly
    Q: Poly
    P: tuple  # P_2, ..., P_{n+1}

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(self.P))
        for p in (self.Qbar, self.Q) + self.P:
            if not p.is_monic():
                raise ValueError(f"Drinfeld polynomial {p} is not monic")

    @property
    def n(self):
        return len(self.P)

    @classmethod
    def ones(cls, n):
        return cls(_one(), _one(), [_one()] * n)

    @classmethod
    def from_roots(cls, qbar, q, ps):
        """Build from root lists, e.g. ``from_roots([-1], [2], [[2], []])``."""
        mk = lambda rs: Poly.from_roots([Fraction(r) for r in rs])  # noqa: E731
        return cls(mk(qbar), mk(q), [mk(r) for r in ps])

    def is_y_form(self):
        return self.Qbar.degree == self.Q.degree and poly_gcd(self.Qbar, self.Q).degree == 0

    def to_json(self):
        return {"Qbar": self.Qbar.to_json(), "Q": self.Q.to_json(),
                "P": [p.to_json() for p in self.P]}

    @classmethod
    def from_json(cls, data):
        return cls(Poly.from_json(data["Qbar"]), Poly.from_json(data["Q"]),
                   [Poly.from_json(p) for p in data["P"]])

    def __str__(self):
        return "(" + ", ".join(str(p) for p in (self.Qbar, self.Q) + self.P) + ")"


def _root_multiset(p: Poly) -> dict:
    roots, rem = rational_roots(p)
    if rem.degree > 0:
        raise IrrationalRoots(f"{p} does not split over the rationals")
    return roots


def solve_shift_equation(ratio: RatFun, step) -> Poly:
    """The monic P with P(u + step)/P(u) = ratio.

    Along each arithmetic string x, x + step, x + 2 step, ... the root
    multiplicities of P are peeled off from the top: writing n(x) for the
    multiplicity of x in the numerator minus that in the denominator,
    m(x) = -(n(x) + n(x + step) + ...).  A solution exists iff every m(x)
    is non-negative and the strings close up; it is unique when it exists.
    """
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    A, B = ratio.num, ratio.den
    if A.degree != B.degree or A.lc != B.lc:
        raise NoSolution(f"{ratio} does not tend to 1 at infinity")
    net = {}
    for r, m in _root_multiset(A).items():
        net[r] = net.get(r, 0) + m
    for r, m in _root_multiset(B).items():
        net[r] = net.get(r, 0) - m
    net = {r: m for r, m in net.items() if m}
    P = _one()
    # group by residue class modulo step; walk each class from the top
    classes = {}
    for r in net:
        key = (r / step) - ((r / step).numerator // (r / step).denominator)
        classes.setdefault(key, []).append(r)
    u = Poly.x()
    for key in sorted(classes):
        pts = classes[key]
        lo, hi = min(pts), max(pts)
        acc = 0
        x = hi
        while x >= lo:
            acc += net.get(x, 0)
            m = -acc
            if m < 0:
                raise NoSolution(f"{ratio} is not of the form P(u+{step})/P(u)")
            for _ in range(m):
                P = P * (u - x)
            x -= step
        if acc != 0:
            raise NoSolution(f"{ratio} is not of the form P(u+{step})/P(u)")
    if RatFun(P.shift(step), P) != ratio:
        raise NoSolution(f"{ratio} is not of the form P(u+{step})/P(u)")
    return P


def drinfeld_from_weight(weight, n=None) -> DrinfeldTuple:
    """Drinfeld tuple of a reduced weight (lambda_1, ..., lambda_{n+2})."""
    lam = list(weight.reduced) if hasattr(weight, "reduced") else list(weight)
    if n is None:
        n = len(lam) - 2
    if len(lam) != n + 2:
        raise ValueError(f"expected n+2 = {n + 2} components")
    r = lam[0] / lam[1]
    if r.num.lc != r.den.lc:
        raise NoSolution("lambda_1/lambda_2 does not tend to 1 at infinity")
    Qbar, Q = r.num.monic(), r.den.monic()
    _root_multiset(Qbar)
    _root_multiset(Q)
    Ps = []
    for i in range(2, n + 1):
        Ps.append(solve_shift_equation(lam[i] / lam[i - 1], 1))
    Ps.append(solve_shift_equation(lam[n + 1] / lam[n], 2))
    return DrinfeldTuple(Qbar, Q, Ps)


def weight_from_drinfeld(t: DrinfeldTuple) -> tuple:
    """The representative with lambda_{n+2} = 1 and the remaining
    components obtained by telescoping the defining ratios downwards."""
    n = t.n
    lam = [None] * (n + 2)
    lam[n + 1] = RatFun.one()
    P = t.P[-1]
    lam[n] = lam[n + 1] * RatFun(P, P.shift(2))
    for i in range(n, 1, -1):
        P = t.P[i - 2]
        lam[i - 1] = lam[i] * RatFun(P, P.shift(1))
    lam[0] = lam[1] * RatFun(t.Qbar, t.Q)
    return tuple(lam)


def tensor_transition(t1: DrinfeldTuple, t2: DrinfeldTuple) -> DrinfeldTuple:
    """(Qbar Qbar°/d, Q Q°/d, P_2 P°_2, ..., P_{n+1} P°_{n+1}),
    d = gcd(Qbar Qbar°, Q Q°) monic."""
    if t1.n != t2.n:
        raise ValueError("tuples for different n")
    a, b = t1.Qbar * t2.Qbar, t1.Q * t2.Q
    d = poly_gcd(a, b).monic()
    return DrinfeldTuple(a // d, b // d, [p * q for p, q in zip(t1.P, t2.P)])


def shift_tuple(t: DrinfeldTuple, a) -> DrinfeldTuple:
    """Every polynomial P(u) replaced by P(u + a)."""
    a = Fraction(a)
    return DrinfeldTuple(t.Qbar.shift(a).monic(), t.Q.shift(a).monic(),
                         [p.shift(a).monic() for p in t.P])


def shift_weight(weight, a):
    return tuple(ratfun_shift(w, Fraction(a)) for w in weight)


def cancel_common(t: DrinfeldTuple) -> DrinfeldTuple:
    """Divide Qbar and Q by their monic gcd; the weight is unchanged."""
    g = poly_gcd(t.Qbar, t.Q).monic()
    return DrinfeldTuple(t.Qbar // g, t.Q // g, t.P)


def y_classification_normalize(t: DrinfeldTuple) -> DrinfeldTuple:
    """Cancel gcd(Qbar, Q); the reduced pair must have equal degrees."""
    r = cancel_common(t)
    qb, q = r.Qbar, r.Q
    if qb.degree != q.degree:
        raise DegreeMismatch(f"deg Qbar = {qb.degree} != deg Q = {q.degree} after reduction")
    return DrinfeldTuple(qb, q, t.P)


def xi_tuple(n, d) -> DrinfeldTuple:
    """(u+1, u-d, 1, ..., 1, u-d, 1, ..., 1) with P_{d+1} = u - d for d < n,
    and (u+1, u-n, 1, ..., 1, u-n-1) for d = n."""
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    ps = [[] for _ in range(n)]
    if d < n:
        ps[d - 1] = [d]
    else:
        ps[n - 1] = [n + 1]
    return DrinfeldTuple.from_roots([-1], [d], ps)


__all__ = [
    "DrinfeldTuple", "solve_shift_equation", "drinfeld_from_weight", "weight_from_drinfeld",
    "tensor_transition", "cancel_common", "shift_tuple", "shift_weight", "y_classification_normalize", "xi_tuple",
]
