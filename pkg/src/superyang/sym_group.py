"""Symmetric group combinatorics and the group algebra of S_d.

Permutations are one-line tuples ``(s(1), ..., s(d))`` and compose as maps,
``(s * t)(x) = s(t(x))``.  Group-algebra coefficients may be Fractions or
tower elements from :mod:`superyang.exact_field`.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import flint

from .errors import EvaluationPole, ResourceBound
from .exact_field import FieldTower, format_rational, tower_substitute
from .super_space import SuperSpace

DEFAULT_FUSION_BOUND = 4


# -- partitions and tableaux ------------------------------------------------

def parse_partition(text) -> tuple:
    if isinstance(text, (tuple, list)):
        parts = tuple(int(p) for p in text)
    else:
        parts = tuple(int(p) for p in str(text).replace(" ", "").split(",") if p)
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"not a partition: {text!r}")
    return parts


def partitions(d: int):
    """All partitions of d, in reverse lexicographic order."""
    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail
    return list(rec(d, d))


def conjugate(shape) -> tuple:
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p > j) for j in range(shape[0]))


def hook_length_product(shape) -> int:
    conj = conjugate(shape)
    h = 1
    for i, row in enumerate(shape):
        for j in range(row):
            h *= (row - j - 1) + (conj[j] - i - 1) + 1
    return h


def num_standard_tableaux(shape) -> int:
    return math.factorial(sum(shape)) // hook_length_product(shape)


@dataclass(frozen=True)
class Tableau:
    rows: tuple

    @classmethod
    def parse(cls, text):
        rows = tuple(tuple(int(x) for x in r.split(",") if x.strip())
                     for r in str(text).replace(" ", "").split(";") if r)
        t = cls(rows)
        if not t.is_standard():
            raise ValueError(f"not a standard tableau: {text!r}")
        return t

    @property
    def shape(self):
        return tuple(len(r) for r in self.rows)

    @property
    def size(self):
        return sum(self.shape)

    def box(self, a):
        for i, r in enumerate(self.rows):
            if a in r:
                return i, r.index(a)
        raise KeyError(a)

    def content(self, a) -> int:
        i, j = self.box(a)
        return j - i

    def contents(self) -> tuple:
        return tuple(self.content(a) for a in range(1, self.size + 1))

    def is_standard(self) -> bool:
        d = self.size
        if sorted(x for r in self.rows for x in r) != list(range(1, d + 1)):
            return False
        if list(self.shape) != sorted(self.shape, reverse=True) or 0 in self.shape:
            return False
        for i, r in enumerate(self.rows):
            if any(r[j] >= r[j + 1] for j in range(len(r) - 1)):
                return False
            if i and any(self.rows[i - 1][j] >= r[j] for j in range(len(r))):
                return False
        return True

    def remove_max(self) -> "Tableau":
        d = self.size
        rows = tuple(tuple(x for x in r if x != d) for r in self.rows)
        return Tableau(tuple(r for r in rows if r))

    def __str__(self):
        return ";".join(",".join(map(str, r)) for r in self.rows)


def standard_tableaux(shape) -> list:
    shape = tuple(shape)
    d = sum(shape)
    if d == 0:
        return [Tableau(())]
    out = []
    for i, row in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if row > below:  # removable corner at (i, row-1)
            smaller = list(shape)
            smaller[i] -= 1
            smaller = tuple(p for p in smaller if p)
            for t in standard_tableaux(smaller):
                rows = [list(r) for r in t.rows]
                if i == len(rows):
                    rows.append([])
                rows[i].append(d)
                out.append(Tableau(tuple(tuple(r) for r in rows)))
    return sorted(out, key=lambda t: t.rows, reverse=True)


def row_tableau(d):
    return Tableau((tuple(range(1, d + 1)),))


def column_tableau(d):
    return Tableau(tuple((a,) for a in range(1, d + 1)))


def addable_contents(shape) -> list:
    shape = list(shape)
    out = []
    for i in range(len(shape) + 1):
        row = shape[i] if i < len(shape) else 0
        above = shape[i - 1] if i > 0 else math.inf
        if row < above:
            out.append(row - i)
    return out


@dataclass(frozen=True)
class HookData:
    shape: tuple
    m: int
    n: int
    mu: tuple
    nu: tuple
    lambda_sharp: tuple
    lambda_flat: tuple


def in_hook(shape, m, n) -> bool:
    return (shape[m] if len(shape) > m else 0) <= n


def hook_data(shape, m, n):
    """mu, nu and the two (m+n)-tuples attached to an (m,n)-hook partition.

    Returns None when the shape is not contained in the hook.
    """
    shape = tuple(shape)
    if not in_hook(shape, m, n):
        return None
    conj = conjugate(shape)
    lam = lambda k: shape[k] if k < len(shape) else 0  # noqa: E731
    lamc = lambda k: conj[k] if k < len(conj) else 0  # noqa: E731
    mu = tuple(max(lam(i) - n, 0) for i in range(m))
    nu = tuple(max(lamc(j) - m, 0) for j in range(n))
    sharp = tuple(lam(i) for i in range(m)) + nu
    flat = mu + tuple(lamc(j) for j in range(n))
    return HookData(shape, m, n, mu, nu, sharp, flat)


# -- permutations and the group algebra -------------------------------------

def compose(s, t):
    return tuple(s[x - 1] for x in t)


def inverse(s):
    out = [0] * len(s)
    for i, x in enumerate(s, 1):
        out[x - 1] = i
    return tuple(out)


def transposition(a, b, d):
    s = list(range(1, d + 1))
    s[a - 1], s[b - 1] = b, a
    return tuple(s)


def sign(s) -> int:
    inv = sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j])
    return -1 if inv % 2 else 1


def perm_str(s) -> str:
    return "".join(map(str, s)) if len(s) < 10 else ",".join(map(str, s))


class GroupAlgElem:
    """Finitely supported map S_d -> coefficients."""

    __slots__ = ("d", "terms")

    def __init__(self, d, terms=None):
        self.d = d
        self.terms = {s: c for s, c in (terms or {}).items() if c}

    @classmethod
    def identity(cls, d, one=Fraction(1)):
        return cls(d, {tuple(range(1, d + 1)): one})

    @classmethod
    def perm(cls, s, coeff=Fraction(1)):
        return cls(len(s), {tuple(s): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out[s] + c if s in out else c
        return GroupAlgElem(self.d, out)

    def __neg__(self):
        return GroupAlgElem(self.d, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GroupAlgElem):
            return GroupAlgElem(self.d, {s: c * other for s, c in self.terms.items()})
        out = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                st = compose(s, t)
                v = a * b
                out[st] = out[st] + v if st in out else v
        return GroupAlgElem(self.d, out)

    def __rmul__(self, c):
        return GroupAlgElem(self.d, {s: c * x for s, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GroupAlgElem):
            return NotImplemented
        return self.d == other.d and (self - other).terms == {}

    __hash__ = None

    def embed(self, d):
        """Image under S_k -> S_d fixing k+1..d."""
        tail = tuple(range(self.d + 1, d + 1))
        return GroupAlgElem(d, {s + tail: c for s, c in self.terms.items()})

    def map_coeffs(self, fn):
        return GroupAlgElem(self.d, {s: fn(c) for s, c in self.terms.items()})

    def to_json(self):
        return {perm_str(s): format_rational(c) for s, c in sorted(self.terms.items())}

    def __repr__(self):
        return f"GroupAlgElem({self.to_json()})"


def jucys_murphy(a, d) -> GroupAlgElem:
    x = GroupAlgElem(d)
    for b in range(1, a):
        x = x + GroupAlgElem.perm(transposition(b, a, d))
    return x


def murphy_idempotent(U: Tableau) -> GroupAlgElem:
    d = U.size
    if d == 1:
        return GroupAlgElem.identity(1)
    V = U.remove_max()
    e = murphy_idempotent(V).embed(d)
    c = U.content(d)
    addable = list(addable_contents(V.shape))
    addable.remove(c)
    x = jucys_murphy(d, d)
    one = GroupAlgElem.identity(d)
    for a in addable:
        e = e * (x - one * Fraction(a)) * Fraction(1, c - a)
    return e


def fusion_bound() -> int:
    return int(os.environ.get("SUPERYANG_FUSION_BOUND", DEFAULT_FUSION_BOUND))


def fusion_function(d: int, tower: FieldTower) -> GroupAlgElem:
    """phi(u_1..u_d) = prod_{a<b} (1 - (a b)/(u_a - u_b)), lexicographic order."""
    u = [tower.gen(v) for v in tower.variables]
    one = tower.const(1)
    phi = GroupAlgElem.identity(d, one)
    for a in range(1, d + 1):
        for b in range(a + 1, d + 1):
            factor = GroupAlgElem(d, {
                tuple(range(1, d + 1)): one,
                transposition(a, b, d): -1 / (u[a - 1] - u[b - 1]),
            })
            phi = phi * factor
    return phi


def fusion_idempotent(U: Tableau, bound=None) -> GroupAlgElem:
    """Consecutive evaluation u_1=c_1, ..., u_d=c_d of phi, divided by h(shape)."""
    d = U.size
    bound = fusion_bound() if bound is None else bound
    if d > bound:
        raise ResourceBound(f"fusion procedure capped at d={bound}, got d={d}")
    if d == 1:
        return GroupAlgElem.identity(1)
    tower = FieldTower([f"u{a}" for a in range(1, d + 1)])
    phi = fusion_function(d, tower)
    for a, c in enumerate(U.contents(), 1):
        var = f"u{a}"
        try:
            phi = phi.map_coeffs(lambda f: tower_substitute(f, var, Fraction(c)))
        except EvaluationPole as exc:
            raise EvaluationPole(f"fusion evaluation of {U} failed at {var}={c}: {exc}") from exc
    return phi * Fraction(1, hook_length_product(U.shape))


def symmetrizer(d) -> GroupAlgElem:
    w = Fraction(1, math.factorial(d))
    return GroupAlgElem(d, {s: w for s in itertools.permutations(range(1, d + 1))})


def antisymmetrizer(d) -> GroupAlgElem:
    w = Fraction(1, math.factorial(d))
    return GroupAlgElem(d, {s: w * sign(s) for s in itertools.permutations(range(1, d + 1))})


# -- action on graded tensor space ------------------------------------------

def perm_action_map(s, space: SuperSpace, d: int):
    """Signed basis map of the operator representing s on the d-fold tensor.

    The factor in position c moves to position s(c); the sign is the Koszul
    sign of the odd factors that pass each other.
    Returns a list of (row, col, sign).
    """
    out = []
    par = space.parity
    for src in itertools.product(space.indices, repeat=d):
        dst = [None] * d
        for c in range(d):
            dst[s[c] - 1] = src[c]
        crossings = sum(1 for a in range(d) for b in range(a + 1, d)
                        if s[a] > s[b] and par(src[a]) and par(src[b]))
        out.append((space.tensor_pos(dst), space.tensor_pos(src), -1 if crossings % 2 else 1))
    return out


def act_on_tensor(x: GroupAlgElem, space: SuperSpace, d: int = None):
    d = x.d if d is None else d
    if d != x.d:
        raise ValueError("degree mismatch")
    N = space.dim ** d
    mat = flint.fmpq_mat(N, N)
    for s, c in x.terms.items():
        c = flint.fmpq(c.numerator, c.denominator)
        for r, col, sg in perm_action_map(s, space, d):
            mat[r, col] = mat[r, col] + (c if sg > 0 else -c)
    return mat
