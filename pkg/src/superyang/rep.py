"""Sparse rational operator families and Yangian representations.

A :class:`Family` is a matrix ``N(u)/den(u)`` whose numerator entries are
``flint.fmpq_poly`` stored sparsely; a :class:`YangianRep` is the family of
operators ``t_ij(u)`` on a module with a homogeneous basis.

Sign conventions.  With ``T(u) = sum e_ij (x) t_ij(u) (-1)^{j(i+1)}`` the
operator of ``T(u)`` on ``C^N (x) M`` has ``(i, j)`` block exactly
``t_ij(u)``.  Writing ``T_1``, ``T_2`` for the two auxiliary copies one gets
the block formulas

    (T_1(u) T_2(v))_{(i,k),(j,l)} = (-1)^{(i+j)k} t_ij(u) t_kl(v)
    (T_2(v) T_1(u))_{(i,k),(j,l)} = (-1)^{(i+j)l} t_kl(v) t_ij(u)

(parities of indices in the exponents), which is all the RTT check needs.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import flint

from .errors import EvaluationPole, VerificationFailure
from .exact_field import Poly, RatFun
from .super_space import (
    Operator, SuperSpace, kernel_over_field, operator_Q_gl, operator_Q_osp,
    permutation_P, to_fraction,
)

QP = flint.fmpq_poly
U = QP([0, 1])
ONE = QP([1])


def fq(x):
    if isinstance(x, flint.fmpq):
        return x
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def poly_to_flint(p: Poly) -> QP:
    return QP([fq(c) for c in p.coeffs])


def poly_from_flint(p: QP, var="u") -> Poly:
    return Poly([to_fraction(c) for c in p.coeffs()], var)


def ratfun_from_flint(num: QP, den: QP) -> RatFun:
    return RatFun(poly_from_flint(num), poly_from_flint(den))


def taylor_shift(p: QP, a) -> QP:
    a = fq(a)
    return p if a == 0 else p(U + a)


def _monic(den: QP):
    lc = den.coeffs()[-1]
    return lc, den / lc


class Family:
    """Sparse rational matrix family ``entries/den`` in one variable."""

    __slots__ = ("entries", "den", "shape")

    def __init__(self, entries, den=None, shape=None):
        den = ONE if den is None else den
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        lc, den = _monic(den)
        self.entries = {k: (v / lc if lc != 1 else v) for k, v in entries.items() if v != 0}
        self.den = den
        self.shape = shape

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n, m=None):
        return cls({}, ONE, (n, n if m is None else m))

    @classmethod
    def identity(cls, n, den=None):
        den = ONE if den is None else den
        return cls({(r, r): den for r in range(n)}, den, (n, n))

    @classmethod
    def constant(cls, mat):
        ents = {}
        for r in range(mat.nrows()):
            for c in range(mat.ncols()):
                x = mat[r, c]
                if x != 0:
                    ents[(r, c)] = QP([x])
        return cls(ents, ONE, (mat.nrows(), mat.ncols()))

    @classmethod
    def from_operator(cls, op: Operator):
        ents = {}
        nr, nc = op.shape
        for k, m in enumerate(op.coeffs):
            for r in range(nr):
                for c in range(nc):
                    x = m[r, c]
                    if x != 0:
                        ents.setdefault((r, c), []).append((k, x))
        num = {}
        for key, terms in ents.items():
            cs = [flint.fmpq(0)] * (max(k for k, _ in terms) + 1)
            for k, x in terms:
                cs[k] = x
            num[key] = QP(cs)
        return cls(num, poly_to_flint(op.den), (nr, nc))

    # -- conversions -------------------------------------------------------
    def to_operator(self, space=None, d=None) -> Operator:
        nr, nc = self.shape
        deg = max((p.degree() for p in self.entries.values()), default=0)
        mats = [flint.fmpq_mat(nr, nc) for _ in range(max(deg, 0) + 1)]
        for (r, c), p in self.entries.items():
            for k, x in enumerate(p.coeffs()):
                if x != 0:
                    mats[k][r, c] = x
        return Operator(mats, poly_from_flint(self.den), space, d)

    def num_coeff_mats(self):
        return self.to_operator().coeffs

    def entry(self, r, c) -> RatFun:
        return ratfun_from_flint(self.entries.get((r, c), QP(0)), self.den)

    # -- arithmetic --------------------------------------------------------
    def _common(self, other):
        if self.den == other.den:
            return self.den, ONE, ONE
        g = self.den.gcd(other.den)
        fa, fb = other.den // g, self.den // g
        return self.den * fa, fa, fb

    def __add__(self, other):
        den, fa, fb = self._common(other)
        out = {k: v * fa for k, v in self.entries.items()} if fa != 1 else dict(self.entries)
        for k, v in other.entries.items():
            v = v * fb if fb != 1 else v
            out[k] = out[k] + v if k in out else v
        return Family(out, den, self.shape)

    def __neg__(self):
        return Family({k: -v for k, v in self.entries.items()}, self.den, self.shape)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = fq(c)
        return Family({k: v * c for k, v in self.entries.items()}, self.den, self.shape)

    def scale_poly(self, p: QP):
        return Family({k: v * p for k, v in self.entries.items()}, self.den, self.shape)

    def divide_poly(self, p: QP):
        return Family(self.entries, self.den * p, self.shape)

    def __matmul__(self, other):
        rows = {}
        for (r, c), v in other.entries.items():
            rows.setdefault(r, []).append((c, v))
        out = {}
        for (r, m), a in self.entries.items():
            for c, b in rows.get(m, ()):
                key = (r, c)
                x = a * b
                out[key] = out[key] + x if key in out else x
        return Family(out, self.den * other.den, (self.shape[0], other.shape[1]))

    def reduce(self):
        """Cancel the common gcd of all numerators with the denominator."""
        g = self.den
        for v in self.entries.values():
            if g == 1:
                break
            g = g.gcd(v)
        if g == 1:
            return self
        return Family({k: v // g for k, v in self.entries.items()}, self.den // g, self.shape)

    def shift(self, a):
        """The family at ``u + a``."""
        a = fq(a)
        if a == 0:
            return self
        x = U + a
        return Family({k: v(x) for k, v in self.entries.items()}, self.den(x), self.shape)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        if self.shape != other.shape:
            return False
        keys = set(self.entries) | set(other.entries)
        z = QP(0)
        return all(self.entries.get(k, z) * other.den == other.entries.get(k, z) * self.den
                   for k in keys)

    __hash__ = None

    def degree_bound(self):
        """Max degree among numerators and the denominator."""
        return max([self.den.degree()] + [p.degree() for p in self.entries.values()])

    def at(self, value):
        """Sparse evaluation ``{(r, c): fmpq}`` at a non-pole rational point."""
        value = fq(value)
        dv = self.den(value)
        if dv == 0:
            raise EvaluationPole(f"family has a pole at u={value}")
        inv = 1 / dv
        out = {}
        for k, p in self.entries.items():
            x = p(value)
            if x != 0:
                out[k] = x * inv
        return out

    def dense_at(self, value):
        m = flint.fmpq_mat(*self.shape)
        for (r, c), x in self.at(value).items():
            m[r, c] = x
        return m

    def apply(self, vec):
        """Numerators of ``self * vec`` for a sparse vector ``{index: fmpq}``."""
        cols = {}
        for (r, c), p in self.entries.items():
            cols.setdefault(c, []).append((r, p))
        out = {}
        for c, x in vec.items():
            for r, p in cols.get(c, ()):
                y = p * x
                out[r] = out[r] + y if r in out else y
        return {r: p for r, p in out.items() if p != 0}

    def series_coeff(self, r):
        """The coefficient of u^{-r} in the expansion at u = infinity, as a
        dense matrix (r = 0 gives the limit; needs no positive powers)."""
        e = self.den.degree()
        if self.degree_bound() > e:
            raise ValueError("family has a pole at infinity")
        # p(u)/q(u) with w = 1/u: sum_k p_k w^{e-k} / rev(q)(w)
        qc = self.den.coeffs()
        qrev = [qc[e - k] if 0 <= e - k else flint.fmpq(0) for k in range(r + 1)]
        inv = [flint.fmpq(0)] * (r + 1)
        for k in range(r + 1):
            acc = flint.fmpq(1) if k == 0 else flint.fmpq(0)
            for a in range(1, k + 1):
                acc -= qrev[a] * inv[k - a]
            inv[k] = acc / qrev[0]
        m = flint.fmpq_mat(*self.shape)
        for (row, col), p in self.entries.items():
            pc = p.coeffs()
            val = flint.fmpq(0)
            for k in range(r + 1):
                deg = e - k
                if 0 <= deg < len(pc):
                    val += pc[deg] * inv[r - k]
            m[row, col] = val
        return m

    def mul_dense(self, mat):
        """``self @ mat`` for a constant fmpq_mat."""
        op = self.to_operator()
        return Family.from_operator(Operator([m * mat for m in op.coeffs], op.den))

    def rmul_dense(self, mat):
        """``mat @ self`` for a constant fmpq_mat."""
        op = self.to_operator()
        return Family.from_operator(Operator([mat * m for m in op.coeffs], op.den))

    def __repr__(self):
        return f"Family({self.shape[0]}x{self.shape[1]}, nnz={len(self.entries)}, den={self.den})"


def kron(a: Family, b: Family, odd: bool, parity_a, db):
    """Graded ``a (x) b`` where ``b`` has parity ``odd``: the sign is
    ``(-1)^{|b| |x|}`` for ``x`` the first-factor input vector."""
    out = {}
    for (r1, c1), p in a.entries.items():
        neg = odd and parity_a[c1]
        for (r2, c2), q in b.entries.items():
            x = p * q
            out[(r1 * db + r2, c1 * db + c2)] = -x if neg else x
    return Family(out, a.den * b.den, (a.shape[0] * db, a.shape[1] * db))


# -- weights -----------------------------------------------------------------

def index_weight(space: SuperSpace, i):
    """Weight of the basis vector e_i as an integer tuple."""
    if space.kind == "gl":
        w = [0] * space.dim
        w[space.pos(i)] = 1
        return tuple(w)
    half = space.dim // 2
    w = [0] * half
    p = space.pos(i)
    if p < half:
        w[p] = 1
    else:
        w[space.dim - 1 - p] = -1
    return tuple(w)


def add_weights(a, b):
    return tuple(x + y for x, y in zip(a, b))


# -- representations ----------------------------------------------------------

class YangianRep:
    """Operators ``t_ij(u)`` (as :class:`Family`) on a module with a
    homogeneous basis of given parities and (optionally) weights."""

    def __init__(self, space: SuperSpace, t: dict, parities, weights=None, name=""):
        self.space = space
        self.t = t
        self.parities = list(parities)
        self.weights = list(weights) if weights is not None else None
        self.name = name

    @property
    def dim(self):
        return len(self.parities)

    def __getitem__(self, ij):
        return self.t[ij]

    @classmethod
    def trivial(cls, space, name="trivial"):
        t = {(i, j): (Family.identity(1) if i == j else Family.zero(1))
             for i in space.indices for j in space.indices}
        return cls(space, t, [0], [tuple(0 for _ in index_weight(space, space.indices[0]))], name)

    def shift(self, a, name=None):
        """Pull back along the automorphism ``t(u) -> t(u + a)``."""
        return YangianRep(self.space, {k: f.shift(a) for k, f in self.t.items()},
                          self.parities, self.weights, name or f"{self.name}[{a}]")

    def tensor(self, other, name=None):
        """Coproduct action ``t_ij -> sum_k t_ik (x) t_kj`` with the Koszul sign
        ``(-1)^{(k+j) |x|}``, ``x`` the first-factor vector."""
        if other.space != self.space:
            raise ValueError("tensor factors over different spaces")
        sp = self.space
        db = other.dim
        t = {}
        for i in sp.indices:
            for j in sp.indices:
                acc = None
                for k in sp.indices:
                    a, b = self.t[(i, k)], other.t[(k, j)]
                    if a.is_zero() or b.is_zero():
                        continue
                    odd = bool((sp.parity(k) + sp.parity(j)) % 2)
                    term = kron(a, b, odd, self.parities, db)
                    acc = term if acc is None else acc + term
                if acc is None:
                    acc = Family.zero(self.dim * db)
                t[(i, j)] = acc.reduce()
        par = [(p + q) % 2 for p in self.parities for q in other.parities]
        wts = None
        if self.weights is not None and other.weights is not None:
            wts = [add_weights(w1, w2) for w1 in self.weights for w2 in other.weights]
        return YangianRep(sp, t, par, wts, name or f"({self.name})x({other.name})")

    def restrict(self, basis, name=None, check=True):
        """Restriction to the span of the columns of ``basis`` (fmpq_mat whose
        columns are in reduced echelon form, i.e. identity rows at pivots).

        With ``check`` the invariance ``t_ij(u) B = B C_ij(u)`` is verified
        exactly, which is the same as ``(1 - E) t_ij(u) E = 0`` for any
        projector ``E`` onto the span.
        """
        pivots = _pivot_rows(basis)
        r = basis.ncols()
        sel = flint.fmpq_mat(r, basis.nrows())
        for c, p in enumerate(pivots):
            sel[c, p] = 1
        t = {}
        for key, f in self.t.items():
            op = f.to_operator()
            img = [m * basis for m in op.coeffs]
            coords = [sel * m for m in img]
            if check and any(basis * c != m for c, m in zip(coords, img)):
                raise VerificationFailure(f"subspace not invariant under t{key}")
            t[key] = Family.from_operator(Operator(coords, op.den)).reduce()
        par = []
        wts = [] if self.weights is not None else None
        for c in range(r):
            rows = [k for k in range(basis.nrows()) if basis[k, c] != 0]
            ps = {self.parities[k] for k in rows}
            par.append(ps.pop() if len(ps) == 1 else None)
            if wts is not None:
                ws = {self.weights[k] for k in rows}
                wts = wts + [ws.pop()] if len(ws) == 1 else None
        if any(p is None for p in par):
            par = [0] * r  # inhomogeneous basis: parities unavailable
        return YangianRep(self.space, t, par, wts, name or f"{self.name}|sub")

    def to_json(self):
        return {"space": str(self.space), "dim": self.dim, "name": self.name}


def _pivot_rows(basis):
    piv = []
    for c in range(basis.ncols()):
        r = next(r for r in range(basis.nrows()) if basis[r, c] != 0
                 and all(basis[r, c2] == 0 for c2 in range(basis.ncols()) if c2 != c))
        piv.append(r)
    return piv


# -- R-matrices ---------------------------------------------------------------

def yang_R(space: SuperSpace) -> Family:
    """R(u) = 1 - P/u on the two-fold tensor space."""
    P = Family.constant(permutation_P(space, 2, 1, 2))
    n = space.dim ** 2
    return (Family.identity(n).scale_poly(U) - P).divide_poly(U)


def yang_Rprime(space: SuperSpace) -> Family:
    """R'(u) = 1 - Q/u with the gl-type Q."""
    Q = Family.constant(operator_Q_gl(space, 2, 1, 2))
    n = space.dim ** 2
    return (Family.identity(n).scale_poly(U) - Q).divide_poly(U)


def osp_R(space: SuperSpace) -> Family:
    """R(u) = 1 - P/u + Q/(u - kappa).

    On the purely odd space C^{0|2n} the graded formulas for P and Q already
    reduce to -sum e_ij (x) e_ji and -sum e_ij (x) e_i'j' tau_i tau_j.
    """
    P = Family.constant(permutation_P(space, 2, 1, 2))
    Q = Family.constant(operator_Q_osp(space, 2, 1, 2))
    k = fq(space.kappa)
    n = space.dim ** 2
    w = U * (U - k)
    num = Family.identity(n).scale_poly(w) - P.scale_poly(U - k) + Q.scale_poly(U)
    return num.divide_poly(w)


# -- exact residual checks ------------------------------------------------------

class _Blocks:
    """An evaluated integer operator split along a weight grading:
    ``{src: (tgt, fmpz_mat)}``."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        self.blocks = blocks

    @classmethod
    def from_sparse(cls, sparse, grading):
        wid, spaces, local = grading
        tmp = {}
        for (r, c), x in sparse.items():
            s, t = wid[c], wid[r]
            ent = tmp.get(s)
            if ent is None:
                ent = tmp[s] = (t, {})
            elif ent[0] != t:
                raise VerificationFailure("operator does not respect the weight grading")
            ent[1][(local[r], local[c])] = x
        blocks = {}
        for s, (t, ents) in tmp.items():
            m = flint.fmpz_mat(len(spaces[t]), len(spaces[s]))
            for (a, b), x in ents.items():
                m[a, b] = x
            blocks[s] = (t, m)
        return cls(blocks)

    def __mul__(self, other):
        out = {}
        for s, (t, m) in other.blocks.items():
            e = self.blocks.get(t)
            if e is not None:
                out[s] = (e[0], e[1] * m)
        return _Blocks(out)

    def add_into(self, acc, c):
        for s, (t, m) in self.blocks.items():
            if s in acc:
                t0, m0 = acc[s]
                if t0 != t:
                    raise VerificationFailure("inhomogeneous residual block")
                acc[s] = (t, m0 + m * c)
            else:
                acc[s] = (t, m * c)


class _ScaledFamilies:
    """Integer evaluation of a set of families up to one common factor.

    All families are brought to a common denominator ``den``; at ``x = a/b``
    the numerators are returned as ``L * b^g * num(x)``, which are integers
    (``L`` clears the coefficient denominators, ``g`` is the top degree).
    The common positive factor ``L b^g / den(x)`` never affects whether a
    homogeneous identity holds.
    """

    def __init__(self, families):
        den = ONE
        for f in families.values():
            den = den * (f.den // den.gcd(f.den))
        self.den = den
        nums = {}
        L = flint.fmpz(1)
        g = 0
        for key, f in families.items():
            scale = den // f.den
            ents = {}
            for rc, p in f.entries.items():
                q = p * scale
                ents[rc] = q
                g = max(g, q.degree())
                for c in q.coeffs():
                    L = L * c.q // L.gcd(c.q)
            nums[key] = ents
        self.degree = max(g, den.degree())
        self.nums = {k: {rc: QP([c * L for c in q.coeffs()]) for rc, q in e.items()}
                     for k, e in nums.items()}

    def at(self, x):
        x = fq(x)
        if self.den(x) == 0:
            raise EvaluationPole(f"pole at u={x}")
        bg = flint.fmpq(x.q ** self.degree)
        out = {}
        for key, ents in self.nums.items():
            d = {}
            for rc, p in ents.items():
                y = p(x) * bg
                if y != 0:
                    d[rc] = y.p
            out[key] = d
        return out


def _grading(rep: YangianRep, depth=None):
    """Blocks of equal weight (or of equal leading ``depth`` weight
    components: coarser blocks trade Python overhead for larger products)."""
    if rep.weights is None:
        labels = [0] * rep.dim
    else:
        labels = [w[:depth] if depth is not None else w for w in rep.weights]
    ids, spaces, wid, local = {}, [], [], []
    for lab in labels:
        if lab not in ids:
            ids[lab] = len(spaces)
            spaces.append([])
        k = ids[lab]
        wid.append(k)
        local.append(len(spaces[k]))
        spaces[k].append(len(wid) - 1)
    return wid, spaces, local


def _unital_at_infinity(families):
    """Every family is regular at infinity with limit the identity (or zero
    off the diagonal, for keys (i, j) with i != j)."""
    for key, f in families.items():
        if f.degree_bound() > f.den.degree():
            return False
        lim = f.series_coeff(0)
        diag = key == 0 or key[0] == key[1]
        for r in range(lim.nrows()):
            for c in range(lim.ncols()):
                if lim[r, c] != (1 if diag and r == c else 0):
                    return False
    return True


def _grid(count, offset, den, step=1):
    pts, k = [], 0
    while len(pts) < count:
        x = fq(offset) + k * step
        if den(x) != 0:
            pts.append(x)
        k += 1
    return pts


def rtt_residual(rep: YangianRep, R: Family, depth=None):
    """Exact check of ``R(u-v) T_1(u) T_2(v) = T_2(v) T_1(u) R(u-v)``.

    The residual cleared of denominators is a polynomial in ``(u, v)`` of
    degree at most ``deg num R + deg num t`` in each variable, so vanishing
    on a product grid of that many points plus one proves it is zero.  When
    ``T(u)`` and ``R(u)`` tend to the identity at infinity the residual is
    ``O(1/u)`` and ``O(1/v)``, which lowers both degrees by one.  The
    grids are offset by 1/3 and -1/7 so ``u - v`` is never an integer and
    misses every pole of ``R`` with integral poles.  At every grid point
    the identity is checked between integer matrices (both sides scaled by
    the same positive constant).

    Returns ``None`` when the residual vanishes, else a witness dict.
    """
    sp = rep.space
    idx = sp.indices
    par = {i: sp.parity(i) for i in idx}
    fam = _ScaledFamilies(rep.t)
    Rs = _ScaledFamilies({0: R})
    n = sp.dim
    pos = {i: sp.pos(i) for i in idx}
    grading = _grading(rep, depth)
    count = fam.degree + Rs.degree + 1
    if _unital_at_infinity(rep.t) and _unital_at_infinity({0: R}):
        # then the residual is O(1/u) and O(1/v), so the cleared polynomial
        # has no top-degree term in either variable
        count -= 1
    us = _grid(count, Fraction(1, 3), fam.den)
    vs = _grid(count, Fraction(-1, 7), fam.den, step=-1)
    cache_u, cache_v = {}, {}

    def ev(cache, pt):
        if pt not in cache:
            cache.clear()
            cache[pt] = {k: _Blocks.from_sparse(d, grading) for k, d in fam.at(pt).items()}
        return cache[pt]

    inv_idx = {pos[i]: i for i in idx}
    for v in vs:
        Tv = ev(cache_v, v)
        for u in us:
            Tu = ev(cache_u, u)
            Rw = Rs.at(u - v)[0]
            rows = {}
            cols = {}
            for (r, c), x in Rw.items():
                rows.setdefault(r, []).append((c, x))
                cols.setdefault(c, []).append((r, x))
            puv, pvu = {}, {}
            for i, k, j, l in product(idx, repeat=4):
                rr = pos[i] * n + pos[k]
                cc = pos[j] * n + pos[l]
                acc = {}
                for c, x in rows.get(rr, ()):
                    a, b = inv_idx[c // n], inv_idx[c % n]
                    key = (a, j, b, l)
                    if key not in puv:
                        puv[key] = Tu[(a, j)] * Tv[(b, l)]
                    sgn = -1 if ((par[a] + par[j]) * par[b]) % 2 else 1
                    puv[key].add_into(acc, x * sgn)
                for r, x in cols.get(cc, ()):
                    a, b = inv_idx[r // n], inv_idx[r % n]
                    key = (k, b, i, a)
                    if key not in pvu:
                        pvu[key] = Tv[(k, b)] * Tu[(i, a)]
                    sgn = -1 if ((par[i] + par[a]) * par[b]) % 2 else 1
                    pvu[key].add_into(acc, -x * sgn)
                if any(not m.is_zero() for _, m in acc.values()):
                    return {"u": str(u), "v": str(v), "block": [i, k, j, l]}
    return None


def ybe_residual(R: Family, space: SuperSpace):
    """Exact check of R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v) on
    the threefold tensor space, by the same grid argument as the RTT check."""
    N = space.dim
    P23 = permutation_P(space, 3, 2, 3)
    degR = max(p.degree() for p in R.entries.values())
    us = _grid(2 * degR + 1, Fraction(1, 3), R.den)
    vs = _grid(2 * degR + 1, Fraction(-1, 7), R.den, step=-1)
    I = flint.fmpq_mat(N, N)
    for r in range(N):
        I[r, r] = 1

    def r12(x):
        return _kron_dense(R.dense_at(x), I)

    def r23(x):
        return _kron_dense(I, R.dense_at(x))

    def r13(x):
        return P23 * r12(x) * P23

    for v in vs:
        R23 = r23(v)
        for u in us:
            R12, R13 = r12(u - v), r13(u)
            if R12 * R13 * R23 != R23 * R13 * R12:
                return {"u": str(u), "v": str(v)}
    return None


def _kron_dense(a, b):
    na, nb = a.nrows(), b.nrows()
    out = flint.fmpq_mat(na * nb, na * nb)
    for r1 in range(na):
        for c1 in range(na):
            x = a[r1, c1]
            if x == 0:
                continue
            for r2 in range(nb):
                for c2 in range(nb):
                    y = b[r2, c2]
                    if y != 0:
                        out[r1 * nb + r2, c1 * nb + c2] = x * y
    return out


# -- highest vectors -------------------------------------------------------------

def common_kernel(families, dim):
    mats = [m for f in families for m in f.num_coeff_mats()] if families else []
    if not mats:
        return [_unit(dim, k) for k in range(dim)]
    return kernel_over_field(mats, dim)


def _unit(dim, k):
    v = flint.fmpq_mat(dim, 1)
    v[k, 0] = 1
    return v


def eigenvalue(f: Family, vec):
    """The rational function lambda with f(u) vec = lambda(u) vec, or None."""
    sv = {r: vec[r, 0] for r in range(vec.nrows()) if vec[r, 0] != 0}
    img = f.apply(sv)
    p = min(sv)
    lam_num = img.get(p, QP(0)) / sv[p]
    for r in set(img) | set(sv):
        if img.get(r, QP(0)) != lam_num * sv.get(r, flint.fmpq(0)):
            return None
    return ratfun_from_flint(lam_num, f.den)


# -- applying the coproduct to vectors ---------------------------------------

class SiteChain:
    """The tensor product ``rep_1 (x) ... (x) rep_r`` acting on sparse vectors.

    Vectors are dicts ``{(b_1, ..., b_r): coeff}`` over tuples of basis
    positions of the factors.  The action of ``t_ij(u)`` is expanded as
    ``sum t_{i l_1} (x) t_{l_1 l_2} (x) ... (x) t_{l_{r-1} j}`` with the Koszul
    sign of each factor passing the input vectors to its left, so no operator
    on the whole tensor product is ever formed.  This keeps large tensor
    products (such as (C^{2|6})^{(x) 6}) within reach.
    """

    def __init__(self, sites):
        self.sites = list(sites)
        sp = self.sites[0].space
        self.space = sp
        self.idx = sp.indices
        self._par = {i: sp.parity(i) for i in self.idx}
        self.den = ONE
        self._cols = []
        for rep in self.sites:
            den = ONE
            for f in rep.t.values():
                den = den * (f.den // den.gcd(f.den))
            table = {}
            for (l, m), f in rep.t.items():
                scale = den // f.den
                for (r, c), p in f.entries.items():
                    table.setdefault((l, c), []).append((m, r, p * scale))
            self._cols.append(table)
            self.den = self.den * den

    def apply(self, i, j, vec):
        """Numerators of ``t_ij(u) vec`` over the common denominator ``self.den``."""
        return self._apply(i, j, {k: QP([x]) for k, x in vec.items()}, self._cols)

    def apply_poly(self, i, j, vec, shift=0):
        """``t_ij(u + shift)`` on a vector with polynomial coefficients;
        the result is over the denominator ``self.den(u + shift)``."""
        shift = fq(shift)
        if shift == 0:
            return self._apply(i, j, vec, self._cols)
        x = U + shift
        cols = [{k: [(m, r, p(x)) for m, r, p in v] for k, v in tab.items()}
                for tab in self._cols]
        return self._apply(i, j, vec, cols)

    def _apply(self, i, j, vec, cols):
        out = {}
        last = len(self.sites) - 1
        for key, x in vec.items():
            states = {(i, ()): x}
            pre = 0
            for a, k in enumerate(key):
                table = cols[a]
                new = {}
                for (l, outs), coef in states.items():
                    pl = self._par[l]
                    for m, r, p in table.get((l, k), ()):
                        if a == last and m != j:
                            continue
                        y = coef * p
                        if pre and (pl + self._par[m]) % 2:
                            y = -y
                        s = (m, outs + (r,))
                        new[s] = new[s] + y if s in new else y
                states = new
                pre = (pre + self.sites[a].parities[k]) % 2
            for (_, outs), coef in states.items():
                out[outs] = out[outs] + coef if outs in out else coef
        return {k: p for k, p in out.items() if p != 0}

    def eigenvalue(self, i, j, vec):
        """RatFun ``lam`` with ``t_ij(u) vec = lam(u) vec``, or None."""
        img = self.apply(i, j, vec)
        p = min(vec)
        lam = img.get(p, QP(0)) / vec[p]
        for k in set(img) | set(vec):
            if img.get(k, QP(0)) != lam * vec.get(k, flint.fmpq(0)):
                return None
        return ratfun_from_flint(lam, self.den)
