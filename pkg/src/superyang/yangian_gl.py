"""Representations of the Yangian Y(gl_{m|n}).

Vector representations, evaluation modules, the two shifted tensor actions
on (C^{m|n})^{(x) d} (R-product and R'-product forms), the polynomial
modules e_U (C^{m|n})^{(x) d} and their highest weights.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import flint

from .errors import NonCyclic, NotInHook, RelationViolation, VerificationFailure, WrongSpaceKind
from .exact_field import Poly, RatFun
from .rep import (
    ONE, QP, U, Family, SiteChain, YangianRep, common_kernel, eigenvalue, fq, index_weight,
    rtt_residual, yang_R,
)
from .super_space import (
    SuperSpace, column_space, embed_units, identity, operator_Q_gl, permutation_P,
)
from .sym_group import sign as perm_sign
from .sym_group import (
    Tableau, act_on_tensor, antisymmetrizer, column_tableau, hook_data,
    murphy_idempotent, row_tableau, symmetrizer,
)


def _require_gl(space):
    if space.kind != "gl":
        raise WrongSpaceKind(f"expected a GL space, got {space}")


def _sign(e):
    return -1 if e % 2 else 1


def _one_site(space, build, den):
    t = {}
    N = space.dim
    for i in space.indices:
        for j in space.indices:
            ents = {}
            if i == j:
                for r in range(N):
                    ents[(r, r)] = den
            for key, val in build(i, j):
                ents[key] = ents.get(key, QP(0)) + val
            t[(i, j)] = Family(ents, den, (N, N))
    return t


def _basis_data(space):
    return ([space.parity(i) for i in space.indices],
            [index_weight(space, i) for i in space.indices])


def vector_rep_A(space: SuperSpace) -> YangianRep:
    """t_ij(u) -> delta_ij - u^{-1} e_ji (-1)^{ij}, i.e. T(u) -> R(u)."""
    _require_gl(space)
    par = space.parity

    def build(i, j):
        yield (space.pos(j), space.pos(i)), QP([-_sign(par(i) * par(j))])

    return YangianRep(space, _one_site(space, build, U), *_basis_data(space), name="A")


def vector_rep_B(space: SuperSpace) -> YangianRep:
    """t_ij(u) -> delta_ij + u^{-1} e_ij (-1)^i, i.e. T(u) -> R'(-u)."""
    _require_gl(space)

    def build(i, j):
        yield (space.pos(i), space.pos(j)), QP([_sign(space.parity(i))])

    return YangianRep(space, _one_site(space, build, U), *_basis_data(space), name="B")


def supertranspose_twist(rep: YangianRep) -> YangianRep:
    """Pull back along t_ij(u) -> t_ji(-u) (-1)^{ij + i}."""
    sp = rep.space
    t = {}
    for (i, j) in rep.t:
        f = rep.t[(j, i)]
        g = Family({k: p(-U) for k, p in f.entries.items()}, f.den(-U), f.shape)
        s = _sign(sp.parity(i) * sp.parity(j) + sp.parity(i))
        t[(i, j)] = g.scale(s) if s < 0 else g
    return YangianRep(sp, t, rep.parities, rep.weights, f"{rep.name}^st")


# -- gl_{m|n} action and evaluation modules -----------------------------------

def gl_action_tensor(space: SuperSpace, d: int) -> dict:
    """E_ij -> sum_a 1 (x) ... (x) e_ij (x) ... (x) 1 with Koszul signs."""
    _require_gl(space)
    return {(i, j): sum_sites(space, d, i, j) for i in space.indices for j in space.indices}


def sum_sites(space, d, i, j):
    acc = None
    for a in range(1, d + 1):
        m = embed_units(space, d, {a: (i, j)})
        acc = m if acc is None else acc + m
    return acc


def check_gl_relations(space: SuperSpace, E: dict):
    """[E_ij, E_kl] = d_kj E_il - d_il E_kj (-1)^{(i+j)(k+l)} (super bracket)."""
    par = space.parity
    idx = space.indices
    for i in idx:
        for j in idx:
            for k in idx:
                for l in idx:
                    a, b = E[(i, j)], E[(k, l)]
                    s = _sign((par(i) + par(j)) * (par(k) + par(l)))
                    lhs = a * b - b * a * s
                    rhs = a * 0
                    if k == j:
                        rhs = rhs + E[(i, l)]
                    if i == l:
                        rhs = rhs - E[(k, j)] * s
                    if lhs != rhs:
                        raise RelationViolation(f"bracket [E{i}{j}, E{k}{l}] fails")


def evaluation_module(space: SuperSpace, E: dict, parities=None, weights=None,
                      check=True) -> YangianRep:
    """t_ij(u) -> delta_ij + E_ij (-1)^i u^{-1} for matrices E_ij."""
    _require_gl(space)
    if check:
        check_gl_relations(space, E)
    D = next(iter(E.values())).nrows()
    t = {}
    for i in space.indices:
        for j in space.indices:
            f = Family.constant(E[(i, j)]).scale(_sign(space.parity(i)))
            num = f + (Family.identity(D).scale_poly(U) if i == j else Family.zero(D))
            t[(i, j)] = num.divide_poly(U)
    if parities is None:
        parities = [0] * D
    return YangianRep(space, t, parities, weights, "ev")


# -- tensor actions -------------------------------------------------------------

def tensor_basis_data(space, d):
    basis = space.basis(d)
    par = [sum(space.parity(i) for i in b) % 2 for b in basis]
    wts = []
    for b in basis:
        w = [0] * len(index_weight(space, space.indices[0]))
        for i in b:
            w = [x + y for x, y in zip(w, index_weight(space, i))]
        wts.append(tuple(w))
    return basis, par, wts


def site_operator(space, d, site, f: Family, parity):
    """The single-site family ``f`` (on C^N) acting in position ``site`` of
    the d-fold tensor product, with the Koszul sign ``(-1)^{parity * p}``
    where ``p`` is the total parity of the factors before ``site``."""
    N = space.dim
    inv = {space.pos(i): i for i in space.indices}
    cols = {}
    for (r, c), p in f.entries.items():
        cols.setdefault(c, []).append((r, p))
    out = {}
    stride = N ** (d - site)
    D = N ** d
    for col in range(D):
        b = (col // stride) % N
        terms = cols.get(b)
        if not terms:
            continue
        prefix = col // (stride * N)
        pp = 0
        if parity:
            q = prefix
            for _ in range(site - 1):
                pp += space.parity(inv[q % N])
                q //= N
        neg = parity and pp % 2
        base = col - b * stride
        for r, p in terms:
            out[(base + r * stride, col)] = -p if neg else p
    return Family(out, f.den, (D, D))


def chain_action(space: SuperSpace, d: int, factors, name="chain") -> YangianRep:
    """Representation on (C^N)^{(x) d} given by an ordered product of
    auxiliary-space factors.

    ``factors`` lists ``(site, rep)`` where ``rep`` is a one-site
    representation; the resulting block is
    ``t_ij = sum rep1_{i m1} rep2_{m1 m2} ... repr_{m_{r-1} j}``, each factor
    acting in its site with the Koszul sign.  Sites listed in increasing
    order reproduce the coproduct; decreasing order gives the opposite one.
    """
    idx = space.indices
    par = space.parity
    D = space.dim ** d
    G = None
    for site, rep in factors:
        F = {(k, l): site_operator(space, d, site, rep.t[(k, l)], (par(k) + par(l)) % 2)
             for k in idx for l in idx}
        if G is None:
            G = F
            continue
        G2 = {}
        for i in idx:
            for j in idx:
                acc = None
                for m in idx:
                    a, b = G[(i, m)], F[(m, j)]
                    if a.is_zero() or b.is_zero():
                        continue
                    term = a @ b
                    acc = term if acc is None else acc + term
                G2[(i, j)] = (acc if acc is not None else Family.zero(D)).reduce()
        G = G2
    _, parities, wts = tensor_basis_data(space, d)
    return YangianRep(space, G, parities, wts, name)


def tensor_action_R(space: SuperSpace, contents) -> YangianRep:
    """T(u) -> R_01(u - c_1) ... R_0d(u - c_d)."""
    _require_gl(space)
    A = vector_rep_A(space)
    d = len(contents)
    facs = [(a, A.shift(-Fraction(c))) for a, c in enumerate(contents, 1)]
    return chain_action(space, d, facs, name=f"R{tuple(contents)}")


def tensor_action_Rprime(space: SuperSpace, contents) -> YangianRep:
    """T(u) -> R'_0d(-u - c_d) ... R'_01(-u - c_1)."""
    _require_gl(space)
    B = vector_rep_B(space)
    d = len(contents)
    facs = [(a, B.shift(Fraction(contents[a - 1]))) for a in range(d, 0, -1)]
    return chain_action(space, d, facs, name=f"R'{tuple(contents)}")


def tensor_action_Rprime_forward(space: SuperSpace, shifts) -> YangianRep:
    """T(u) -> R'_01(-u - z_1) ... R'_0d(-u - z_d) (coproduct of vector reps B)."""
    _require_gl(space)
    B = vector_rep_B(space)
    facs = [(a, B.shift(Fraction(z))) for a, z in enumerate(shifts, 1)]
    return chain_action(space, len(shifts), facs, name=f"R'fwd{tuple(shifts)}")


def coproduct_power(rep: YangianRep, shifts) -> YangianRep:
    """rep_{s_1} (x) ... (x) rep_{s_d} via the Koszul-signed coproduct."""
    out = None
    for s in shifts:
        r = rep.shift(Fraction(s))
        out = r if out is None else out.tensor(r)
    return out


# -- dense oracle for the R-product forms ---------------------------------------

def r_product_dense(space: SuperSpace, d: int, factors, prime=False):
    """Dense operator on C^N (x) (C^N)^{(x) d} (site 0 first) of the product
    of ``R_{0a}(u - c)`` (or ``R'_{0a}(-u - c)`` when ``prime``) over the
    ``(a, c)`` in ``factors``; returns its (i, j) blocks as Families.

    This builds everything from the displayed P and Q operators and serves
    as an independent oracle for :func:`chain_action`.
    """
    N = space.dim
    D = N ** d
    total = None
    for a, c in factors:
        c = fq(c)
        if prime:
            Q = Family.constant(operator_Q_gl(space, d + 1, 1, a + 1))
            # R'(-u - c) = 1 + Q / (u + c)
            lin = U + c
            F = (Family.identity(N * D).scale_poly(lin) + Q).divide_poly(lin)
        else:
            P = Family.constant(permutation_P(space, d + 1, 1, a + 1))
            lin = U - c
            F = (Family.identity(N * D).scale_poly(lin) - P).divide_poly(lin)
        total = F if total is None else (total @ F).reduce()
    blocks = {}
    for i in space.indices:
        for j in space.indices:
            r0, c0 = space.pos(i) * D, space.pos(j) * D
            ents = {(r - r0, c - c0): p for (r, c), p in total.entries.items()
                    if r0 <= r < r0 + D and c0 <= c < c0 + D}
            blocks[(i, j)] = Family(ents, total.den, (D, D)).reduce()
    return blocks


# -- key relations --------------------------------------------------------------

def _sum_family(space, d, one_site_build, sign_total):
    """sum_a of one-site operators (as aux blocks), over a common den u."""
    idx = space.indices
    N = space.dim
    D = N ** d
    out = {}
    for k in idx:
        for l in idx:
            acc = Family.zero(D)
            for a in range(1, d + 1):
                f = Family(dict(one_site_build(k, l)), ONE, (N, N))
                if f.is_zero():
                    continue
                acc = acc + site_operator(space, d, a, f, (space.parity(k) + space.parity(l)) % 2)
            out[(k, l)] = acc
    return out


def fusion_rhs(space, d):
    """Blocks of 1 - (P_01 + ... + P_0d)/u."""
    par = space.parity
    D = space.dim ** d

    def build(k, l):
        # (P_0a)_{kl}: the site value k is replaced by l.
        yield (space.pos(l), space.pos(k)), QP([_sign(par(k) * par(l))])

    S = _sum_family(space, d, build, None)
    return {key: ((Family.identity(D).scale_poly(U) if key[0] == key[1] else Family.zero(D))
                  - f).divide_poly(U) for key, f in S.items()}


def fusion_rhs_prime(space, d):
    """Blocks of 1 + (Q_01 + ... + Q_0d)/u."""
    par = space.parity
    D = space.dim ** d

    def build(k, l):
        # (Q_0a)_{kl}: the site value l is replaced by k.
        yield (space.pos(k), space.pos(l)), QP([_sign(par(k))])

    S = _sum_family(space, d, build, None)
    return {key: ((Family.identity(D).scale_poly(U) if key[0] == key[1] else Family.zero(D))
                  + f).divide_poly(U) for key, f in S.items()}


def check_intertwining(rep: YangianRep, E, rhs: dict):
    """t_ij(u) E == E rhs_ij(u) for all i, j; returns the first failing key."""
    for key, f in rep.t.items():
        if f.mul_dense(E) != rhs[key].rmul_dense(E):
            return key
    return None


# -- polynomial modules -----------------------------------------------------------

@dataclass
class HighestWeightData:
    vector: object
    weights: tuple

    def to_json(self):
        return [w.to_json() for w in self.weights]


def highest_weight(rep: YangianRep) -> HighestWeightData:
    """Common kernel of t_ij(u), i < j, and the eigenvalues of t_ii(u) on it."""
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
    return HighestWeightData(xi, tuple(ws))


def weight_1_plus(values):
    """(1 + a_1 u^{-1}, ...) as RatFuns."""
    u = Poly.x()
    return tuple(RatFun(u + Fraction(a), u) for a in values)


def pi_flat(shape, m, n):
    h = hook_data(shape, m, n)
    if h is None:
        raise NotInHook(f"lambda_{m + 1} = {shape[m]} > n = {n}")
    conj = list(_conj(shape)) + [0] * n
    vals = [-h.mu[i] for i in reversed(range(m))] + [conj[j] for j in reversed(range(n))]
    return weight_1_plus(vals)


def pi_sharp(shape, m, n):
    h = hook_data(shape, m, n)
    if h is None:
        raise NotInHook(f"lambda_{m + 1} = {shape[m]} > n = {n}")
    lam = list(shape) + [0] * m
    vals = [lam[i] for i in range(m)] + [-h.nu[j] for j in range(n)]
    return weight_1_plus(vals)


def _conj(shape):
    from .sym_group import conjugate
    return conjugate(shape)


@dataclass
class PolynomialModule:
    tableau: Tableau
    variant: str
    space: SuperSpace
    E: object
    basis: object
    ambient: YangianRep
    rep: YangianRep
    checks: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.basis.ncols()


def idempotent_image(space: SuperSpace, e):
    E = act_on_tensor(e, space)
    return E, column_space(E)


def polynomial_module(space: SuperSpace, U_tab: Tableau, variant="R", E=None) -> PolynomialModule:
    """L_U = E_U (C^{m|n})^{(x) d} with the action of the given variant.

    ``variant`` is ``"R"`` (R-product form) or ``"Rprime"`` (R'-product form).
    The restriction step verifies invariance exactly.
    """
    _require_gl(space)
    shape = U_tab.shape
    if hook_data(shape, space.m, space.n) is None:
        raise NotInHook(f"shape {shape} is not an ({space.m},{space.n})-hook partition: "
                        f"lambda_{space.m + 1} = {shape[space.m]} > n = {space.n}")
    if E is None:
        E = act_on_tensor(murphy_idempotent(U_tab), space)
    basis = column_space(E)
    contents = U_tab.contents()
    if variant == "R":
        amb = tensor_action_R(space, contents)
    elif variant in ("Rprime", "rprime"):
        variant = "Rprime"
        amb = tensor_action_Rprime(space, contents)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    rep = amb.restrict(basis, name=f"L[{U_tab}]{variant}")
    return PolynomialModule(U_tab, variant, space, E, basis, amb, rep,
                            {"invariant": True})


def symmetrizer_module(space: SuperSpace, d: int) -> YangianRep:
    """h^{(d)} (C^{m|n})^{(x) d} under R'_01(-u-d+1) ... R'_0d(-u)."""
    E = act_on_tensor(symmetrizer(d), space)
    amb = tensor_action_Rprime_forward(space, [d - a for a in range(1, d + 1)])
    return amb.restrict(column_space(E), name=f"sym{d}")


def antisymmetrizer_module(space: SuperSpace, d: int) -> YangianRep:
    """a^{(d)} (C^{m|n})^{(x) d} under R'_01(-u+d-1) ... R'_0d(-u)."""
    E = act_on_tensor(antisymmetrizer(d), space)
    amb = tensor_action_Rprime_forward(space, [-(d - a) for a in range(1, d + 1)])
    return amb.restrict(column_space(E), name=f"alt{d}")


def symmetrizer_weight(space, d):
    return weight_1_plus([d] + [0] * (space.dim - 1))


def antisymmetrizer_weight(space, d):
    m = space.m
    if d <= m:
        vals = [1] * d + [0] * (space.dim - d)
    else:
        vals = [1] * m + [m - d] + [0] * (space.dim - m - 1)
    return weight_1_plus(vals)


def xi_vector(space: SuperSpace, d: int):
    """xi_d = sum_sigma sgn(sigma) e_sigma(1) (x) ... (x) e_sigma(d)."""
    from itertools import permutations
    from .sym_group import sign
    idx = space.indices
    D = space.dim ** d
    v = flint.fmpq_mat(D, 1)
    for s in permutations(range(1, d + 1)):
        v[space.tensor_pos([idx[k - 1] for k in s]), 0] += sign(s)
    return v


def xi_check(space: SuperSpace, d: int):
    """Verify the highest-vector properties of xi_d in the shifted tensor
    product of vector representations B (shifts -d+1, ..., 0), i.e. under
    R'_01(-u-d+1) ... R'_0d(-u), applying the generators site by site.

    Returns the tuple of eigenvalues of t_ii(u) and raises on failure.
    """
    if not 1 <= d <= space.m:
        raise ValueError("need 1 <= d <= m")
    B = vector_rep_B(space)
    chain = SiteChain([B.shift(-(d - a)) for a in range(1, d + 1)])
    xi = {}
    for s in permutations(range(1, d + 1)):
        xi[tuple(k - 1 for k in s)] = flint.fmpq(perm_sign(s))
    idx = space.indices
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
    return tuple(ws)


def xi_weight(space, d):
    """(u+1)/u for i <= d and 1 otherwise."""
    return weight_1_plus([1] * d + [0] * (space.dim - d))


def rtt_check(rep: YangianRep):
    return rtt_residual(rep, yang_R(rep.space))


__all__ = [
    "vector_rep_A", "vector_rep_B", "supertranspose_twist", "evaluation_module",
    "gl_action_tensor", "check_gl_relations", "tensor_action_R", "tensor_action_Rprime",
    "tensor_action_Rprime_forward", "coproduct_power", "r_product_dense", "chain_action",
    "fusion_rhs", "fusion_rhs_prime", "check_intertwining", "highest_weight", "pi_flat",
    "pi_sharp", "polynomial_module", "symmetrizer_module", "antisymmetrizer_module",
    "symmetrizer_weight", "antisymmetrizer_weight", "xi_vector", "xi_check", "xi_weight",
    "rtt_check",
    "HighestWeightData", "PolynomialModule", "row_tableau", "column_tableau", "identity",
]
