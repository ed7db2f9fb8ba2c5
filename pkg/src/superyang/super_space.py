"""Z2-graded index sets, tensor bases and exact operators.

Concrete matrices are :class:`flint.fmpq_mat` acting on column vectors in the
lexicographic basis of index tuples.  An element ``A_1 (x) ... (x) A_d`` of
the graded tensor product acts by

    (A_1 (x) ... (x) A_d)(v_1 (x) ... (x) v_d)
        = prod_c (-1)^{|A_c| (|v_1| + ... + |v_{c-1}|)} A_1 v_1 (x) ... (x) A_d v_d,

and every operator below is built from this rule and a displayed formula.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import flint

from .errors import WrongSpaceKind
from .exact_field import Poly, RatFun, format_rational

__all__ = [
    "SuperSpace", "Operator", "embed_units", "permutation_P", "operator_Q_osp",
    "operator_Q_gl", "super_transpose", "kernel_over_field", "identity",
    "to_fraction", "column_space", "mat_from_rows", "vstack", "hstack",
]


def to_fraction(q) -> Fraction:
    return Fraction(int(q.p), int(q.q))


@dataclass(frozen=True)
class SuperSpace:
    """C^{m|n}, C^{2|2n} or its odd part C^{0|2n}.

    ``kind`` is ``"gl"``, ``"osp"`` (indices 1..2n+2) or ``"osp0"`` (indices
    2..2n+1 of C^{2|2n}, all odd).
    """

    kind: str
    m: int
    n: int

    @classmethod
    def gl(cls, m, n):
        if m < 0 or n < 0 or m + n == 0:
            raise ValueError("need m, n >= 0 with m + n > 0")
        return cls("gl", m, n)

    @classmethod
    def osp(cls, n):
        if n < 1:
            raise ValueError("need n >= 1")
        return cls("osp", 2, n)

    @classmethod
    def osp0(cls, n):
        if n < 1:
            raise ValueError("need n >= 1")
        return cls("osp0", 0, n)

    def __str__(self):
        if self.kind == "gl":
            return f"GL({self.m},{self.n})"
        return f"OSP({2 if self.kind == 'osp' else 0},{2 * self.n})"

    @cached_property
    def indices(self) -> tuple:
        if self.kind == "gl":
            return tuple(range(1, self.m + self.n + 1))
        if self.kind == "osp":
            return tuple(range(1, 2 * self.n + 3))
        return tuple(range(2, 2 * self.n + 2))

    @property
    def dim(self) -> int:
        return len(self.indices)

    @cached_property
    def _pos(self):
        return {i: k for k, i in enumerate(self.indices)}

    def pos(self, i) -> int:
        return self._pos[i]

    @property
    def is_osp(self):
        return self.kind in ("osp", "osp0")

    def parity(self, i) -> int:
        if self.kind == "gl":
            return 0 if i <= self.m else 1
        return 0 if i in (1, 2 * self.n + 2) else 1

    def prime(self, i) -> int:
        if not self.is_osp:
            raise WrongSpaceKind("the involution i -> i' exists only for osp spaces")
        return 2 * self.n - i + 3

    def tau(self, i) -> int:
        if not self.is_osp:
            raise WrongSpaceKind("tau is defined only for osp spaces")
        return 1 if (i <= self.n + 1 or i == 2 * self.n + 2) else -1

    @property
    def kappa(self) -> Fraction:
        if self.kind == "osp":
            return Fraction(-self.n)
        if self.kind == "osp0":
            return Fraction(-self.n - 1)
        raise WrongSpaceKind("kappa is defined only for osp spaces")

    def label(self, i) -> str:
        """Index name; primed notation for the upper half of osp indices."""
        if self.is_osp and i > self.n + 1:
            return f"{self.prime(i)}'"
        return str(i)

    def basis(self, d):
        return list(itertools.product(self.indices, repeat=d))

    def tensor_pos(self, tup) -> int:
        k = 0
        dim = self.dim
        for i in tup:
            k = k * dim + self._pos[i]
        return k

    def tensor_parity(self, tup) -> int:
        return sum(self.parity(i) for i in tup) % 2

    def to_json(self):
        return str(self)


def identity(n) -> flint.fmpq_mat:
    m = flint.fmpq_mat(n, n)
    for k in range(n):
        m[k, k] = 1
    return m


def mat_from_rows(rows, ncols=None):
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = [x for r in rows for x in r]
    return flint.fmpq_mat(nrows, ncols, flat)


def vstack(mats, ncols=None):
    mats = [m for m in mats if m.nrows()]
    if not mats:
        return flint.fmpq_mat(0, ncols or 0)
    flat = []
    for m in mats:
        flat.extend(m.entries())
    return flint.fmpq_mat(sum(m.nrows() for m in mats), mats[0].ncols(), flat)


def hstack(mats):
    return vstack([m.transpose() for m in mats]).transpose()


def embed_units(space: SuperSpace, d: int, factors: dict, coeff=1):
    """Concrete matrix of ``coeff * (x)_c A_c`` with ``A_c = e_{ij}`` at site c.

    ``factors`` maps 1-based sites to index pairs ``(i, j)``; other sites carry
    the identity.
    """
    mat = flint.fmpq_mat(space.dim ** d, space.dim ** d)
    _add_units(mat, space, d, factors, coeff)
    return mat


def _add_units(mat, space, d, factors, coeff):
    par = space.parity
    sites = sorted(factors)
    op_par = {c: (par(factors[c][0]) + par(factors[c][1])) % 2 for c in sites}
    free = [c for c in range(1, d + 1) if c not in factors]
    for rest in itertools.product(space.indices, repeat=len(free)):
        src = [None] * d
        for c, i in zip(free, rest):
            src[c - 1] = i
        for c in sites:
            src[c - 1] = factors[c][1]
        sign = 0
        prefix = 0
        for c in range(1, d + 1):
            if c in op_par and op_par[c]:
                sign += prefix
            prefix += par(src[c - 1])
        dst = list(src)
        for c in sites:
            dst[c - 1] = factors[c][0]
        r, s = space.tensor_pos(dst), space.tensor_pos(src)
        val = -coeff if sign % 2 else coeff
        mat[r, s] = mat[r, s] + val


def _check_sites(d, a, b):
    if not (1 <= a < b <= d):
        raise ValueError(f"need 1 <= a < b <= d, got a={a}, b={b}, d={d}")


def permutation_P(space: SuperSpace, d: int, a: int, b: int):
    """P_ab = sum_{ij} e_ij at a, e_ji at b, times (-1)^{|j|}."""
    _check_sites(d, a, b)
    mat = flint.fmpq_mat(space.dim ** d, space.dim ** d)
    for i in space.indices:
        for j in space.indices:
            _add_units(mat, space, d, {a: (i, j), b: (j, i)}, -1 if space.parity(j) else 1)
    return mat


def operator_Q_osp(space: SuperSpace, d: int, a: int, b: int):
    """Q_ab = sum_{ij} e_ij at a, e_{i'j'} at b, times (-1)^{|i||j|} tau_i tau_j."""
    if not space.is_osp:
        raise WrongSpaceKind("operator_Q_osp needs an osp space")
    _check_sites(d, a, b)
    mat = flint.fmpq_mat(space.dim ** d, space.dim ** d)
    par, pr, tau = space.parity, space.prime, space.tau
    for i in space.indices:
        for j in space.indices:
            c = (-1) ** (par(i) * par(j)) * tau(i) * tau(j)
            _add_units(mat, space, d, {a: (i, j), b: (pr(i), pr(j))}, c)
    return mat


def operator_Q_gl(space: SuperSpace, d: int, a: int, b: int):
    """Q_ab = sum_{ij} e_ij at a, e_ij at b, times (-1)^{|i|+|j|+|i||j|}."""
    if space.kind != "gl":
        raise WrongSpaceKind("operator_Q_gl needs a gl space")
    _check_sites(d, a, b)
    mat = flint.fmpq_mat(space.dim ** d, space.dim ** d)
    par = space.parity
    for i in space.indices:
        for j in space.indices:
            s = par(i) + par(j) + par(i) * par(j)
            _add_units(mat, space, d, {a: (i, j), b: (i, j)}, (-1) ** s)
    return mat


def super_transpose(space: SuperSpace, op):
    """Apply e_ij -> e_{j'i'} (-1)^{|i||j|+|i|} tau_i tau_j to a one-site matrix."""
    if not space.is_osp:
        raise WrongSpaceKind("super_transpose needs an osp space")
    if isinstance(op, Operator):
        return op.map_coeffs(lambda m: super_transpose(space, m))
    n = space.dim
    if op.nrows() != n or op.ncols() != n:
        raise ValueError("super_transpose acts on single-site operators")
    out = flint.fmpq_mat(n, n)
    par, pr, tau, pos = space.parity, space.prime, space.tau, space.pos
    for i in space.indices:
        for j in space.indices:
            x = op[pos(i), pos(j)]
            if x == 0:
                continue
            s = (-1) ** (par(i) * par(j) + par(i)) * tau(i) * tau(j)
            out[pos(pr(j)), pos(pr(i))] = x * s
    return out


class Operator:
    """Rational operator family ``(sum_k u^k coeffs[k]) / den(u)``.

    ``den`` is a monic polynomial over Q.  Equality is decided by
    cross-multiplication, so the representation need not be reduced.
    """

    __slots__ = ("coeffs", "den", "space", "d")

    def __init__(self, coeffs, den=None, space=None, d=None):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = coeffs
        self.den = den if den is not None else Poly((Fraction(1),))
        if not self.den.is_monic():
            lc = self.den.lc
            self.den = self.den.monic()
            self.coeffs = [c * (1 / _fq(lc)) for c in self.coeffs]
        self.space = space
        self.d = d

    @classmethod
    def constant(cls, mat, space=None, d=None):
        return cls([mat], None, space, d)

    @classmethod
    def from_poly_matrix(cls, poly_rows, den: Poly, space=None, d=None):
        """Build from a matrix of numerator Polys over a common ``den``."""
        nr = len(poly_rows)
        nc = len(poly_rows[0]) if nr else 0
        deg = max((p.degree for row in poly_rows for p in row), default=0)
        coeffs = [flint.fmpq_mat(nr, nc) for _ in range(max(deg, 0) + 1)]
        for r, row in enumerate(poly_rows):
            for c, p in enumerate(row):
                for k, x in enumerate(p.coeffs):
                    coeffs[k][r, c] = _fq(x)
        return cls(coeffs, den, space, d)

    @property
    def nrows(self):
        return self.coeffs[0].nrows()

    @property
    def ncols(self):
        return self.coeffs[0].ncols()

    @property
    def shape(self):
        return self.nrows, self.ncols

    def num_degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return all(_is_zero(c) for c in self.coeffs)

    def entry_poly(self, r, c) -> Poly:
        return Poly([to_fraction(m[r, c]) for m in self.coeffs])

    def entry(self, r, c) -> RatFun:
        return RatFun(self.entry_poly(r, c), self.den)

    def at(self, value):
        """Evaluate at a rational point (must not be a root of ``den``)."""
        value = Fraction(value)
        dv = self.den(value)
        if not dv:
            from .errors import EvaluationPole
            raise EvaluationPole(f"operator family has a pole at u={value}")
        acc = None
        for m in reversed(self.coeffs):
            acc = m if acc is None else acc * _fq(value) + m
        return acc * (1 / _fq(dv))

    def map_coeffs(self, fn):
        return Operator([fn(m) for m in self.coeffs], self.den, self.space, self.d)

    def _with_den(self, den: Poly):
        """Rewrite with denominator ``den`` (a multiple of ``self.den``)."""
        q, r = den.divmod(self.den)
        if r:
            raise ValueError("target denominator is not a multiple")
        return _poly_times_coeffs(q, self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Operator):
            other = Operator.constant(other)
        if self.den == other.den:
            den, a, b = self.den, self.coeffs, other.coeffs
        else:
            from .exact_field import poly_gcd
            den = (self.den * other.den) // poly_gcd(self.den, other.den)
            a, b = self._with_den(den), other._with_den(den)
        n = max(len(a), len(b))
        zero = _zeros_like(a[0])
        out = [(a[k] if k < len(a) else zero) + (b[k] if k < len(b) else zero) for k in range(n)]
        return Operator(out, den, self.space, self.d)

    def __neg__(self):
        return Operator([-m for m in self.coeffs], self.den, self.space, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Operator) else Operator.constant(-other))

    def __matmul__(self, other):
        if not isinstance(other, Operator):
            return Operator([m * other for m in self.coeffs], self.den, self.space, self.d)
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        z = flint.fmpq_mat(self.nrows, other.ncols)
        out = [z if m is None else m for m in out]
        return Operator(out, self.den * other.den, self.space, self.d)

    def __rmatmul__(self, mat):
        return Operator([mat * m for m in self.coeffs], self.den, self.space, self.d)

    def scale_poly(self, p: Poly):
        return Operator(_poly_times_coeffs(p, self.coeffs), self.den, self.space, self.d)

    def scale(self, c):
        c = _fq(c)
        return Operator([m * c for m in self.coeffs], self.den, self.space, self.d)

    def divide_poly(self, p: Poly):
        return Operator(self.coeffs, self.den * p, self.space, self.d)

    def shift(self, a):
        """Return the family at u + a."""
        a = Fraction(a)
        if not a:
            return self
        # Taylor shift of the matrix polynomial by Horner's rule.
        lin = Poly((a, Fraction(1)))
        acc = [_zeros_like(self.coeffs[0])]
        for m in reversed(self.coeffs):
            acc = _poly_times_coeffs(lin, acc)
            acc[0] = acc[0] + m
        return Operator(acc, self.den.shift(a), self.space, self.d)

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        if self.shape != other.shape:
            return False
        lhs = _poly_times_coeffs(other.den, self.coeffs)
        rhs = _poly_times_coeffs(self.den, other.coeffs)
        n = max(len(lhs), len(rhs))
        zero = _zeros_like(self.coeffs[0])
        return all((lhs[k] if k < len(lhs) else zero) == (rhs[k] if k < len(rhs) else zero)
                   for k in range(n))

    __hash__ = None

    def block(self, r0, r1, c0, c1):
        return Operator([_submatrix(m, r0, r1, c0, c1) for m in self.coeffs], self.den)

    def rows_ratfun(self):
        return [[self.entry(r, c) for c in range(self.ncols)] for r in range(self.nrows)]

    def to_json(self):
        return {
            "space": str(self.space) if self.space else None,
            "d": self.d,
            "rows": [[f.to_json() for f in row] for row in self.rows_ratfun()],
        }

    def apply(self, vec):
        """Apply to a column vector (fmpq_mat); returns an Operator column."""
        return self @ vec

    def __repr__(self):
        return f"Operator({self.nrows}x{self.ncols}, deg={self.num_degree()}, den={self.den})"


def _fq(x):
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def _is_zero(m):
    return m == flint.fmpq_mat(m.nrows(), m.ncols())


def _zeros_like(m):
    return flint.fmpq_mat(m.nrows(), m.ncols())


def _poly_times_coeffs(p: Poly, coeffs):
    out = [None] * (len(coeffs) + max(p.degree, 0))
    for i, x in enumerate(p.coeffs):
        if not x:
            continue
        fx = _fq(x)
        for j, m in enumerate(coeffs):
            t = m * fx
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    z = _zeros_like(coeffs[0])
    return [z if m is None else m for m in out] or [z]


def _submatrix(m, r0, r1, c0, c1):
    ents = m.entries()
    nc = m.ncols()
    flat = [ents[r * nc + c] for r in range(r0, r1) for c in range(c0, c1)]
    return flint.fmpq_mat(r1 - r0, c1 - c0, flat)


def _rref_rows(mat):
    """Nonzero rows of the reduced row echelon form, with pivot columns."""
    if mat.nrows() == 0:
        return [], []
    rr, rank = mat.rref()
    nc = mat.ncols()
    ents = rr.entries()
    rows, pivots = [], []
    for r in range(rank):
        row = ents[r * nc:(r + 1) * nc]
        rows.append(row)
        pivots.append(next(c for c, x in enumerate(row) if x != 0))
    return rows, pivots


def _as_matrices(op):
    if isinstance(op, Operator):
        return op.coeffs
    return [op]


def kernel_over_field(ops, dim=None):
    """Basis (list of column fmpq_mat) of the common kernel of ``ops``.

    A rational family kills a constant vector exactly when every numerator
    coefficient does, so families are replaced by their stacked numerator
    coefficient matrices and the kernel is taken over Q.
    """
    mats = [m for op in ops for m in _as_matrices(op)]
    if dim is None:
        if not mats:
            raise ValueError("dimension unknown for an empty operator list")
        dim = mats[0].ncols()
    rows, pivots = [], []
    # Reduce in chunks so the stacked matrix never grows past a few times dim.
    chunk = []
    size = 0
    for m in mats:
        chunk.append(m)
        size += m.nrows()
        if size >= 4 * dim:
            rows, pivots = _rref_rows(vstack([mat_from_rows(rows, dim)] + chunk, dim))
            chunk, size = [], 0
    if chunk:
        rows, pivots = _rref_rows(vstack([mat_from_rows(rows, dim)] + chunk, dim))
    free = [c for c in range(dim) if c not in set(pivots)]
    basis = []
    for f in free:
        v = flint.fmpq_mat(dim, 1)
        v[f, 0] = 1
        for row, p in zip(rows, pivots):
            v[p, 0] = -row[f]
        basis.append(v)
    return basis


def column_space(mat):
    """A basis of the column space, as a matrix whose columns are rref rows."""
    rows, _ = _rref_rows(mat.transpose())
    if not rows:
        return flint.fmpq_mat(mat.nrows(), 0)
    return mat_from_rows(rows, mat.nrows()).transpose()


def format_matrix(mat) -> list:
    return [[format_rational(to_fraction(mat[r, c])) for c in range(mat.ncols())]
            for r in range(mat.nrows())]
