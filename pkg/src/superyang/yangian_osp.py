"""Representations of the extended Yangians X(osp_{2|2n}) and X(osp_{0|2n}).

Indices of C^{2|2n} are 1, 2, ..., 2n+2 with i' = 2n + 3 - i; the even
vectors are e_1 and e_{1'}.  The sub-algebra X(osp_{0|2n}) uses the odd
indices 2, ..., 2'.  Everything here is verified exactly: the vector
representations, the tensor modules, the subspace W of the tensor square,
the vectors xi_d, the central series c(u) and the subspace V^+.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import flint

from .errors import Inconsistent, NotScalar, VerificationFailure, WrongSpaceKind
from .exact_field import Poly, RatFun, rational_roots
from .rep import (
    QP, U, Family, SiteChain, YangianRep, common_kernel, fq, index_weight,
    osp_R as _osp_R, ratfun_from_flint, rtt_residual,
)
from .super_space import SuperSpace, column_space, super_transpose
from .sym_group import sign as perm_sign


def _sgn(e):
    return -1 if e % 2 else 1


def osp_R(space: SuperSpace, which=None) -> Family:
    """R(u) = 1 - P/u + Q/(u - kappa); ``which`` is "full" (OSP(2,2n),
    kappa = -n) or "sub" (OSP(0,2n), kappa = -n-1) and must match the space."""
    if not space.is_osp:
        raise WrongSpaceKind(f"osp R-matrix needs an osp space, got {space}")
    if which is not None:
        want = {"full": "osp", "sub": "osp0"}[which]
        if space.kind != want:
            raise WrongSpaceKind(f"{which!r} R-matrix requested on {space}")
    return _osp_R(space)


# -- vector representations ---------------------------------------------------

def _vector_rep(space, den, diag_coeff, refl_coeff):
    N = space.dim
    pos, pr = space.pos, space.prime
    t = {}
    for i in space.indices:
        for j in space.indices:
            e = {}
            if i == j:
                for r in range(N):
                    e[(r, r)] = den
            k = (pos(i), pos(j))
            e[k] = e.get(k, QP(0)) + diag_coeff(i, j)
            k = (pos(pr(j)), pos(pr(i)))
            e[k] = e.get(k, QP(0)) + refl_coeff(i, j)
            t[(i, j)] = Family(e, den, (N, N))
    parities = [space.parity(i) for i in space.indices]
    weights = [index_weight(space, i) for i in space.indices]
    return YangianRep(space, t, parities, weights, "V")


def vector_rep_osp(space: SuperSpace) -> YangianRep:
    """t_ij(u) -> d_ij + u^{-1} e_ij (-1)^i - (u-n)^{-1} e_{j'i'} (-1)^{ij} tau_i tau_j."""
    if space.kind != "osp":
        raise WrongSpaceKind(f"expected OSP(2,2n), got {space}")
    n = space.n
    par, tau = space.parity, space.tau
    return _vector_rep(
        space, U * (U - n),
        lambda i, j: (U - n) * _sgn(par(i)),
        lambda i, j: -U * (_sgn(par(i) * par(j)) * tau(i) * tau(j)))


def vector_rep_osp0(space: SuperSpace) -> YangianRep:
    """tbar_ij(u) -> d_ij - u^{-1} e_ij + (u-n-1)^{-1} e_{j'i'} tau_i tau_j."""
    if space.kind != "osp0":
        raise WrongSpaceKind(f"expected OSP(0,2n), got {space}")
    n = space.n
    tau = space.tau
    return _vector_rep(
        space, U * (U - n - 1),
        lambda i, j: -(U - n - 1),
        lambda i, j: U * (tau(i) * tau(j)))


def vector_rep(space: SuperSpace) -> YangianRep:
    return vector_rep_osp(space) if space.kind == "osp" else vector_rep_osp0(space)


def tensor_module_osp(space: SuperSpace, shifts) -> YangianRep:
    """V_{s_1} (x) ... (x) V_{s_d}: factor a carries t(u) -> t(u + s_a).

    Shifts (-1, 0) give t_ij(u) -> sum_l t_il(u-1) (x) t_lj(u).
    """
    V = vector_rep(space)
    out = None
    for s in shifts:
        f = V.shift(Fraction(s))
        out = f if out is None else out.tensor(f)
    out.name = f"V{tuple(str(Fraction(s)) for s in shifts)}"
    return out


def rtt_check(rep: YangianRep):
    return rtt_residual(rep, osp_R(rep.space))


# -- super-transposition and the central series --------------------------------

def transpose_sign(space: SuperSpace, a, b) -> int:
    """Sign s with (T^t)_{ab} = s * t_{b'a'} for the operator blocks.

    It is the sign of the super-transposition of e_{b'a'} corrected by the
    Koszul factor relating graded and block matrix units.
    """
    pr = space.prime
    i, j = pr(b), pr(a)
    e = flint.fmpq_mat(space.dim, space.dim)
    e[space.pos(i), space.pos(j)] = 1
    st = super_transpose(space, e)[space.pos(a), space.pos(b)]
    par = space.parity
    # the graded element e_ij (x) t_ij (-1)^{j(i+1)} has block t_ij; its
    # transpose sits at (j', i') where the block carries a further
    # (-1)^{(i+j) i}, so the net correction is (-1)^{i+j}.
    return int(st) * _sgn(par(i) + par(j))


@dataclass
class CentralSeries:
    c: RatFun

    def to_json(self):
        return self.c.to_json()


def central_series(rep: YangianRep) -> CentralSeries:
    """c(u) with T(u - kappa) T^t(u) = c(u) 1, verified to be scalar."""
    sp = rep.space
    kappa = fq(sp.kappa)
    idx = sp.indices
    pr = sp.prime
    D = rep.dim
    shifted = {k: f.shift(-kappa) for k, f in rep.t.items()}
    c = None
    for i in idx:
        for j in idx:
            acc = Family.zero(D)
            for k in idx:
                a = shifted[(i, k)]
                b = rep.t[(pr(j), pr(k))]
                if a.is_zero() or b.is_zero():
                    continue
                acc = acc + (a @ b).scale(transpose_sign(sp, k, j))
            acc = acc.reduce()
            if i != j:
                if not acc.is_zero():
                    raise NotScalar(f"off-diagonal entry ({i},{j}) of T(u-kappa)T^t(u) is nonzero")
                continue
            lam = _scalar_of(acc, D)
            if lam is None:
                raise NotScalar(f"diagonal entry ({i},{i}) is not a scalar operator")
            if c is None:
                c = lam
            elif lam != c:
                raise NotScalar(f"diagonal entries (1,1) and ({i},{i}) differ")
    return CentralSeries(c)


def _scalar_of(f: Family, D):
    p = f.entries.get((0, 0), QP(0))
    for (r, cc), q in f.entries.items():
        if r != cc or q != p:
            return None
    if len(f.entries) != (D if p != 0 else 0):
        return None
    return ratfun_from_flint(p, f.den)


def yangian_normalizer(c: RatFun, kappa):
    """A rational f(u) with f(u - kappa) f(u) = c(u), or None.

    Writes f = prod (u - b)^{e_b}; the factor (u - b) contributes roots
    b and b + kappa to f(u-kappa) f(u).  Peeling the largest remaining root
    determines the exponents uniquely.
    """
    kappa = Fraction(kappa)
    if kappa >= 0:
        raise ValueError("expected a negative kappa")
    mult = {}
    for poly, sg in ((c.num, 1), (c.den, -1)):
        roots, rem = rational_roots(poly)
        if rem.degree > 0:
            return None
        for r, m in roots.items():
            mult[r] = mult.get(r, 0) + sg * m
    if c.num.lc != c.den.lc:
        return None
    lo = min(mult, default=0)
    ex = {}
    while any(mult.values()):
        r = max(k for k, m in mult.items() if m)
        e = mult[r]
        ex[r] = e
        mult[r] = 0
        mult[r + kappa] = mult.get(r + kappa, 0) - e
        if mult[r + kappa] and r + kappa < lo:
            return None
    u = Poly.x()
    num, den = Poly.const(1), Poly.const(1)
    for b, e in ex.items():
        for _ in range(abs(e)):
            if e > 0:
                num = num * (u - b)
            else:
                den = den * (u - b)
    return RatFun(num, den)


# -- highest weights ---------------------------------------------------------------

@dataclass
class OspHighestWeight:
    n: int
    full: tuple

    @property
    def reduced(self):
        return self.full[: self.n + 2]

    def to_json(self):
        return [w.to_json() for w in self.reduced]


def _shift_rf(f: RatFun, a) -> RatFun:
    from .exact_field import ratfun_shift
    return ratfun_shift(f, Fraction(a))


def consistency_check(hw: OspHighestWeight):
    """lambda_i(u) lambda_{i'}(u+n-i+2) = lambda_{i+1}(u) lambda_{(i+1)'}(u+n-i+2)."""
    n = hw.n
    lam = {k + 1: w for k, w in enumerate(hw.full)}
    pr = lambda i: 2 * n + 3 - i  # noqa: E731
    for i in range(1, n + 1):
        s = n - i + 2
        lhs = lam[i] * _shift_rf(lam[pr(i)], s)
        rhs = lam[i + 1] * _shift_rf(lam[pr(i + 1)], s)
        if lhs != rhs:
            raise Inconsistent(i)
    return {"consistent": True}


def complete_weight(reduced, n) -> OspHighestWeight:
    """Extend (lambda_1, ..., lambda_{n+2}) by solving the consistency
    conditions for lambda_{n'}, ..., lambda_{1'} in turn."""
    if len(reduced) != n + 2:
        raise ValueError(f"need n+2 = {n + 2} components")
    lam = {k + 1: w for k, w in enumerate(reduced)}
    pr = lambda i: 2 * n + 3 - i  # noqa: E731
    for i in range(n, 0, -1):
        s = n - i + 2
        # lambda_{i'}(u) = lambda_{i+1}(u-s) lambda_{(i+1)'}(u) / lambda_i(u-s)
        lam[pr(i)] = _shift_rf(lam[i + 1], -s) * lam[pr(i + 1)] / _shift_rf(lam[i], -s)
    return OspHighestWeight(n, tuple(lam[k] for k in range(1, 2 * n + 3)))


def central_from_weight(hw: OspHighestWeight) -> RatFun:
    """c(u) = lambda_1(u) lambda_{1'}(u+n)."""
    return hw.full[0] * _shift_rf(hw.full[-1], hw.n)


def highest_weight_osp(rep: YangianRep) -> tuple:
    """Highest vector and weight of a module with one-dimensional
    common kernel of the t_ij(u), i < j."""
    from .errors import NonCyclic
    from .rep import eigenvalue
    idx = list(rep.space.indices)
    upper = [rep.t[(i, j)] for a, i in enumerate(idx) for j in idx[a + 1:]]
    ker = common_kernel(upper, rep.dim)
    if len(ker) != 1:
        raise NonCyclic(len(ker))
    xi = ker[0]
    ws = []
    for i in idx:
        lam = eigenvalue(rep.t[(i, i)], xi)
        if lam is None:
            raise VerificationFailure(f"highest vector is not an eigenvector of t{i}{i}")
        ws.append(lam)
    return xi, OspHighestWeight(rep.space.n, tuple(ws))


# -- the subspace W of the tensor square ---------------------------------------------

def w_index(space: SuperSpace):
    return [i for i in space.indices if i not in (1, space.prime(1))]


def w_basis(space: SuperSpace):
    """Columns w_k = e_1 (x) e_k - e_k (x) e_1, k = 2, ..., 2'."""
    ks = w_index(space)
    B = flint.fmpq_mat(space.dim ** 2, len(ks))
    for c, k in enumerate(ks):
        B[space.tensor_pos((1, k)), c] += 1
        B[space.tensor_pos((k, 1)), c] -= 1
    return B


def w_action_formula(space: SuperSpace, i, j) -> Family:
    """t_ij(u) w_k = d_ij w_k - d_kj u^{-1} w_i + d_{ki'} tau_i tau_j (u-n-1)^{-1} w_{j'}
    as a family on W in the basis w_2, ..., w_{2'}."""
    n = space.n
    ks = w_index(space)
    col = {k: c for c, k in enumerate(ks)}
    pr, tau = space.prime, space.tau
    den = U * (U - n - 1)
    e = {}
    for k in ks:
        c = col[k]
        if i == j:
            e[(c, c)] = e.get((c, c), QP(0)) + den
        if k == j:
            key = (col[i], c)
            e[key] = e.get(key, QP(0)) - (U - n - 1)
        if k == pr(i):
            key = (col[pr(j)], c)
            e[key] = e.get(key, QP(0)) + U * (tau(i) * tau(j))
    return Family(e, den, (len(ks), len(ks)))


@dataclass
class WReport:
    n: int
    checks: dict = field(default_factory=dict)

    def to_json(self):
        return {"n": self.n, "checks": dict(self.checks)}


def w_subspace(space: SuperSpace, module: YangianRep = None) -> WReport:
    """Verify the properties of W inside V_{-1} (x) V_0 (the tensor square)."""
    if space.kind != "osp":
        raise WrongSpaceKind("W lives in the tensor square of C^{2|2n}")
    M = module if module is not None else tensor_module_osp(space, (-1, 0))
    B = w_basis(space)
    ks = w_index(space)
    one, onep = 1, space.prime(1)
    sub = SuperSpace.osp0(space.n)
    V0 = vector_rep_osp0(sub)
    rep = WReport(space.n)
    for i in ks:
        for j in ks:
            F = w_action_formula(space, i, j)
            if M.t[(i, j)].mul_dense(B) != F.rmul_dense(B):
                raise VerificationFailure(f"W-action formula fails for t{i}{j}")
            if F != V0.t[(i, j)]:
                raise VerificationFailure(f"W is not the OSP(0,2n) vector rep at t{i}{j}")
    rep.checks["action_formula"] = True
    rep.checks["isomorphic_to_vector_osp0"] = True
    for j in space.indices:
        if j > one and not M.t[(one, j)].mul_dense(B).is_zero():
            raise VerificationFailure(f"t1{j} does not annihilate W")
    for i in space.indices:
        if i < onep and not M.t[(i, onep)].mul_dense(B).is_zero():
            raise VerificationFailure(f"t{i}1' does not annihilate W")
    rep.checks["annihilation"] = True
    target = Family.identity(len(ks)).scale_poly(U + 1).divide_poly(U)
    if M.t[(one, one)].mul_dense(B) != target.rmul_dense(B):
        raise VerificationFailure("t11 does not act on W as 1 + 1/u")
    rep.checks["t11_scalar"] = True
    return rep


# -- V^+ ------------------------------------------------------------------------------

def vplus_subspace(rep: YangianRep, check_rtt=True):
    """V^+ = common kernel of t_1j (j > 1) and t_{i1'} (i < 1'), with the
    restricted action of the t_ij(u), 2 <= i, j <= 2', as an OSP(0,2n) module."""
    sp = rep.space
    if sp.kind != "osp":
        raise WrongSpaceKind("V^+ is defined for OSP(2,2n) modules")
    onep = sp.prime(1)
    fams = [rep.t[(1, j)] for j in sp.indices if j > 1]
    fams += [rep.t[(i, onep)] for i in sp.indices if i < onep]
    ker = common_kernel(fams, rep.dim)
    if not ker:
        return None, None
    M = flint.fmpq_mat(rep.dim, len(ker))
    for c, v in enumerate(ker):
        for r in range(rep.dim):
            M[r, c] = v[r, 0]
    basis = column_space(M)
    sub = SuperSpace.osp0(sp.n)
    inner = {(i, j): rep.t[(i, j)] for i in sub.indices for j in sub.indices}
    wts = [w[1:] for w in rep.weights] if rep.weights is not None else None
    amb = YangianRep(sub, inner, rep.parities, wts, f"{rep.name}^+")
    res = amb.restrict(basis)
    if check_rtt:
        w = rtt_residual(res, osp_R(sub))
        if w is not None:
            raise VerificationFailure(f"V^+ action violates the OSP(0,2n) RTT relation at {w}")
    return basis, res


# -- the vectors xi_d ---------------------------------------------------------------

def xi_sites(space: SuperSpace, d: int):
    """Factors of V_0 (x) V_{-1} (x) ... (x) V_{-d+1}; V_a = V_{a-1} (x) V_a."""
    V = vector_rep_osp(space)
    sites = []
    for k in range(d):
        sites.append(V.shift(-k - 1))
        sites.append(V.shift(-k))
    return sites


def xi_vector(space: SuperSpace, d: int) -> dict:
    """xi_d = sum over permutations of {2..d+1} of sgn * w_s(2) (x) ... (x) w_s(d+1),
    as a sparse vector over tuples of basis positions."""
    pos = space.pos
    out = {}
    for perm in permutations(range(2, d + 2)):
        s = perm_sign(tuple(p - 1 for p in perm))
        terms = {(): s}
        for k in perm:
            new = {}
            for key, c in terms.items():
                for pair, e in (((1, k), 1), ((k, 1), -1)):
                    kk = key + (pos(pair[0]), pos(pair[1]))
                    new[kk] = new.get(kk, 0) + c * e
            terms = new
        for key, c in terms.items():
            out[key] = out.get(key, 0) + c
    return {k: flint.fmpq(c) for k, c in out.items() if c}


def expected_xi_weight(n: int, d: int):
    """(u+1)/(u-d+1), (u-d)/(u-d+1) for i=2..d+1, 1 for the rest up to n+2,
    with lambda_{n+2} = (u-n)/(u-n-1) when d = n."""
    u = Poly.x()
    w = [RatFun(u + 1, u - (d - 1))]
    for i in range(2, n + 3):
        if i <= d + 1:
            w.append(RatFun(u - d, u - (d - 1)))
        else:
            w.append(RatFun.one())
    if d == n:
        w[n + 1] = RatFun(u - n, u - n - 1)
    return tuple(w)


@dataclass
class XiModule:
    n: int
    d: int
    chain: SiteChain
    xi: dict
    weight: OspHighestWeight
    checks: dict = field(default_factory=dict)

    def to_json(self):
        return {"n": self.n, "d": self.d, "highest_weight": self.weight.to_json(),
                "checks": dict(self.checks)}


def xi_module(d: int, n: int) -> XiModule:
    """Verify that xi_d is a highest vector of V_0 (x) ... (x) V_{-d+1} and
    return its full weight; eigenvalue equations are checked in the whole
    tensor product."""
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    sp = SuperSpace.osp(n)
    chain = SiteChain(xi_sites(sp, d))
    xi = xi_vector(sp, d)
    idx = sp.indices
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            if chain.apply(i, j, xi):
                raise VerificationFailure(f"t{i}{j}(u) xi_{d} != 0")
    ws = []
    for i in idx:
        lam = chain.eigenvalue(i, i, xi)
        if lam is None:
            raise VerificationFailure(f"xi_{d} is not an eigenvector of t{i}{i}")
        ws.append(lam)
    hw = OspHighestWeight(n, tuple(ws))
    checks = {"annihilated": True}
    if hw.reduced != expected_xi_weight(n, d):
        raise VerificationFailure(f"eigenvalues of xi_{d} differ from the expected ones")
    checks["eigenvalues"] = True
    consistency_check(hw)
    checks["consistency"] = True
    return XiModule(n, d, chain, xi, hw, checks)


def central_on_vector(chain: SiteChain, vec: dict, kappa) -> RatFun:
    """c(u) on a vector of a SiteChain module, via T(u - kappa) T^t(u),
    checked to be scalar on ``vec`` for all diagonal and off-diagonal entries."""
    sp = chain.space
    idx = sp.indices
    pr = sp.prime
    c = None
    first = {}
    for j in idx:
        for k in idx:
            first[(j, k)] = chain.apply(pr(j), pr(k), vec)
    den = chain.den * chain.den(U - fq(kappa))
    for i in idx:
        for j in idx:
            acc = {}
            for k in idx:
                img = first[(j, k)]
                if not img:
                    continue
                s = transpose_sign(sp, k, j)
                for key, p in chain.apply_poly(i, k, img, -fq(kappa)).items():
                    acc[key] = acc[key] + s * p if key in acc else s * p
            acc = {k: p for k, p in acc.items() if p != 0}
            if i != j:
                if acc:
                    raise NotScalar(f"entry ({i},{j}) of T(u-kappa)T^t(u) is nonzero on the vector")
                continue
            p0 = min(vec)
            lam = acc.get(p0, QP(0)) / vec[p0]
            if any(acc.get(k, QP(0)) != lam * vec.get(k, 0) for k in set(acc) | set(vec)):
                raise NotScalar(f"entry ({i},{i}) is not scalar on the vector")
            val = ratfun_from_flint(lam, den)
            if c is None:
                c = val
            elif val != c:
                raise NotScalar(f"diagonal entries differ at ({i},{i})")
    return c


# -- defining relations, embedding -------------------------------------------------

def defrel_check(rep: YangianRep, quadruples, points):
    """The super-commutator form of the RTT relation, evaluated exactly at the
    given (u, v) points for the given (i, j, k, l); returns the first failure."""
    sp = rep.space
    par, tau, pr = sp.parity, sp.tau, sp.prime
    kappa = fq(sp.kappa)
    idx = sp.indices
    for u, v in points:
        u, v = fq(u), fq(v)
        Tu = {k: f.dense_at(u) for k, f in rep.t.items()}
        Tv = {k: f.dense_at(v) for k, f in rep.t.items()}
        for i, j, k, l in quadruples:
            pi, pj, pk, pl = par(i), par(j), par(k), par(l)
            lhs = Tu[(i, j)] * Tv[(k, l)] - Tv[(k, l)] * Tu[(i, j)] * _sgn((pi + pj) * (pk + pl))
            rhs = (Tu[(k, j)] * Tv[(i, l)] - Tv[(k, j)] * Tu[(i, l)]) * (
                _sgn(pi * pj + pi * pk + pj * pk) / (u - v))
            corr = lhs * 0
            if k == pr(i):
                for p in idx:
                    s = _sgn(pi + pi * pj + pj * par(p)) * tau(i) * tau(p)
                    corr = corr + Tu[(p, j)] * Tv[(pr(p), l)] * s
            if l == pr(j):
                for p in idx:
                    s = _sgn(pj + par(p) + pi * pk + pj * pk + pi * par(p)) * tau(j) * tau(p)
                    corr = corr - Tv[(k, pr(p))] * Tu[(i, p)] * s
            rhs = rhs - corr * (1 / (u - v - kappa))
            if lhs != rhs:
                return {"u": str(u), "v": str(v), "indices": [i, j, k, l]}
    return None


def first_coefficients(rep: YangianRep) -> dict:
    """t_ij^{(1)}: the coefficient of u^{-1} in t_ij(u)."""
    return {k: f.series_coeff(1) for k, f in rep.t.items()}


def embedding_F(rep: YangianRep) -> dict:
    """F_ij -> (t_ij^{(1)} - t_{j'i'}^{(1)} (-1)^{j + ij} tau_i tau_j)(-1)^i / 2."""
    sp = rep.space
    par, tau, pr = sp.parity, sp.tau, sp.prime
    t1 = first_coefficients(rep)
    F = {}
    for i in sp.indices:
        for j in sp.indices:
            s = _sgn(par(j) + par(i) * par(j)) * tau(i) * tau(j)
            F[(i, j)] = (t1[(i, j)] - t1[(pr(j), pr(i))] * s) * flint.fmpq(_sgn(par(i)), 2)
    return F


def series_coeff(f: RatFun, r: int):
    """Coefficient of u^{-r} of a rational function regular at infinity."""
    from .rep import poly_to_flint
    fam = Family({(0, 0): poly_to_flint(f.num)}, poly_to_flint(f.den), (1, 1))
    return fam.series_coeff(r)[0, 0]


def embedding_sum_check(rep: YangianRep, c: RatFun = None) -> bool:
    """t_ij^{(1)} + t_{j'i'}^{(1)} (-1)^{j + ij} tau_i tau_j = c^{(1)} delta_ij,
    the u^{-1} coefficient of the matrix identity T(u - kappa) T^t(u) = c(u)."""
    if c is None:
        c = central_series(rep).c
    c1 = series_coeff(c, 1)
    sp = rep.space
    par, tau, pr = sp.parity, sp.tau, sp.prime
    t1 = first_coefficients(rep)
    D = rep.dim
    for i in sp.indices:
        for j in sp.indices:
            s = _sgn(par(j) + par(i) * par(j)) * tau(i) * tau(j)
            m = t1[(i, j)] + t1[(pr(j), pr(i))] * s
            target = flint.fmpq_mat(D, D)
            if i == j:
                for r in range(D):
                    target[r, r] = c1
            if m != target:
                return False
    return True


def osp_structure(space: SuperSpace):
    """The matrices F_ij = e_ij - e_ij^t spanning osp_{2|2n} inside gl_{2|2n},
    with e^t the super-transposition."""
    N = space.dim
    out = {}
    for i in space.indices:
        for j in space.indices:
            e = flint.fmpq_mat(N, N)
            e[space.pos(i), space.pos(j)] = 1
            out[(i, j)] = e - super_transpose(space, e)
    return out


def _solve_in_span(mats, target):
    """Coefficients expressing ``target`` in the span of ``mats`` (or None)."""
    cols = [m.entries() for m in mats]
    A = flint.fmpq_mat(len(cols[0]), len(cols), [cols[c][r] for r in range(len(cols[0]))
                                                    for c in range(len(cols))])
    b = flint.fmpq_mat(len(cols[0]), 1, list(target.entries()))
    aug = flint.fmpq_mat(A.nrows(), A.ncols() + 1)
    for r in range(A.nrows()):
        for c in range(A.ncols()):
            aug[r, c] = A[r, c]
        aug[r, A.ncols()] = b[r, 0]
    R, rank = aug.rref()
    piv = []
    for r in range(rank):
        c = next(c for c in range(aug.ncols()) if R[r, c] != 0)
        if c == A.ncols():
            return None
        piv.append((r, c))
    x = [flint.fmpq(0)] * A.ncols()
    for r, c in piv:
        x[c] = R[r, A.ncols()]
    return x


def check_osp_relations(space: SuperSpace, F: dict) -> bool:
    """The operators F_ij satisfy the commutation relations of osp_{2|2n}:
    every super-bracket [F_ij, F_kl] decomposes over the F_ab with the same
    coefficients as the corresponding bracket of the matrices e_ij - e_ij^t."""
    par = space.parity
    ref = osp_structure(space)
    keys = list(ref)
    # a basis of the span of the reference matrices (duplicates up to sign)
    basis = []
    for k in keys:
        if not basis or _solve_in_span([ref[b] for b in basis], ref[k]) is None:
            basis.append(k)
    for k in keys:
        coeffs = _solve_in_span([ref[b] for b in basis], ref[k])
        img = sum((F[b] * c for b, c in zip(basis, coeffs) if c != 0), F[k] * 0)
        if img != F[k]:
            return False
    for a in basis:
        for b in basis:
            sa = (par(a[0]) + par(a[1])) % 2
            sb = (par(b[0]) + par(b[1])) % 2
            s = _sgn(sa * sb)
            br_ref = ref[a] * ref[b] - ref[b] * ref[a] * s
            coeffs = _solve_in_span([ref[c] for c in basis], br_ref)
            if coeffs is None:
                return False
            br = F[a] * F[b] - F[b] * F[a] * s
            img = sum((F[c] * x for c, x in zip(basis, coeffs) if x != 0), F[a] * 0)
            if br != img:
                return False
    return True


__all__ = [
    "osp_R", "vector_rep_osp", "vector_rep_osp0", "vector_rep", "tensor_module_osp",
    "rtt_check", "transpose_sign", "CentralSeries", "central_series",
    "yangian_normalizer", "OspHighestWeight", "consistency_check", "complete_weight",
    "central_from_weight", "highest_weight_osp", "w_basis", "w_action_formula",
    "w_subspace", "WReport", "vplus_subspace", "xi_sites", "xi_vector",
    "expected_xi_weight", "XiModule", "xi_module", "central_on_vector", "defrel_check",
    "first_coefficients", "series_coeff", "embedding_F", "embedding_sum_check", "osp_structure",
    "check_osp_relations",
]
