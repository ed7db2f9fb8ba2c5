"""The verification suite: every acceptance check as a pure function.

Each check returns a JSON-ready dict ``{"check", "criterion", "params",
"passed", "details"}``.  Nothing time- or machine-dependent enters the
result, so the serialized suite output is reproducible byte for byte.
"""
from __future__ import annotations

from fractions import Fraction

import flint

from . import drinfeld as dr
from . import yangian_gl as gl
from . import yangian_osp as osp
from .errors import VerificationFailure
from .exact_field import Poly
from .rep import rtt_residual, ybe_residual, yang_R
from .super_space import SuperSpace
from .sym_group import (
    GroupAlgElem, act_on_tensor, fusion_idempotent, in_hook, murphy_idempotent,
    num_standard_tableaux, partitions, standard_tableaux,
)

GL_YBE_SPACES = [(1, 1), (2, 1), (1, 2), (2, 2)]
HOOK_SPACES = [(1, 1), (2, 1), (1, 2)]
WEIGHT_SPACES = [(2, 1), (1, 2), (2, 2)]


def _result(name, criterion, params, passed, details=None):
    return {"check": name, "criterion": criterion, "params": params,
            "passed": bool(passed), "details": details if details is not None else {}}


def _guard(name, criterion, params, fn):
    """Run ``fn`` and turn a verification exception into a failed result."""
    try:
        passed, details = fn()
    except (VerificationFailure, ArithmeticError, ValueError) as exc:
        return _result(name, criterion, params, False,
                       {"error": type(exc).__name__, "message": str(exc)})
    return _result(name, criterion, params, passed, details)


# -- 1. YBE -------------------------------------------------------------------------

def check_ybe(kind, m=None, n=None):
    if kind == "gl":
        sp = SuperSpace.gl(m, n)
        R = yang_R(sp)
        params = {"kind": "gl", "m": m, "n": n}
    elif kind in ("osp", "osp0"):
        sp = SuperSpace.osp(n) if kind == "osp" else SuperSpace.osp0(n)
        R = osp.osp_R(sp)
        params = {"kind": kind, "n": n}
    else:
        raise ValueError(f"unknown R-matrix kind {kind!r}")

    def run():
        w = ybe_residual(R, sp)
        return w is None, {"residual": "0" if w is None else str(w)}
    return _guard("ybe", 1, params, run)


# -- 2. RTT -------------------------------------------------------------------------

def _rtt(name, params, rep, R):
    def run():
        w = rtt_residual(rep, R)
        return w is None, {"dim": rep.dim, "residual": "0" if w is None else str(w)}
    return _guard("rtt", 2, dict(params, rep=name), run)


def rtt_gl_checks(m, n, dmax=3):
    sp = SuperSpace.gl(m, n)
    R = yang_R(sp)
    base = {"kind": "gl", "m": m, "n": n}
    out = [_rtt("vector_A", base, gl.vector_rep_A(sp), R),
           _rtt("vector_B", base, gl.vector_rep_B(sp), R)]
    contents = {2: (0, 1), 3: (0, 1, -1)}
    for d in range(2, dmax + 1):
        c = contents[d]
        out.append(_rtt(f"tensor_R{list(c)}", base, gl.tensor_action_R(sp, c), R))
        out.append(_rtt(f"tensor_Rprime{list(c)}", base, gl.tensor_action_Rprime(sp, c), R))
    return out


def rtt_osp_checks(n, dmax=3):
    sp = SuperSpace.osp(n)
    R = osp.osp_R(sp)
    base = {"kind": "osp", "n": n}
    out = [_rtt("vector", base, osp.vector_rep_osp(sp), R)]
    sub = SuperSpace.osp0(n)
    out.append(_rtt("vector_osp0", {"kind": "osp0", "n": n}, osp.vector_rep_osp0(sub),
                    osp.osp_R(sub)))
    shifts = {2: (-1, 0), 3: (-2, -1, 0)}
    for d in range(2, dmax + 1):
        s = shifts[d]
        out.append(_rtt(f"tensor{list(s)}", base, osp.tensor_module_osp(sp, s), R))
    return out


# -- 3. idempotents -------------------------------------------------------------------

def check_idempotents(shape):
    params = {"shape": list(shape)}

    def run():
        tabs = standard_tableaux(shape)
        es = [murphy_idempotent(U) for U in tabs]
        d = sum(shape)
        zero = GroupAlgElem(d)
        idem = all(e * e == e for e in es)
        orth = all(es[a] * es[b] == zero for a in range(len(es))
                   for b in range(len(es)) if a != b)
        fus = all(fusion_idempotent(U) == e for U, e in zip(tabs, es))
        details = {"tableaux": len(tabs), "idempotent": idem, "orthogonal": orth,
                   "fusion_equal": fus}
        return idem and orth and fus, details
    return _guard("idempotents", 3, params, run)


def check_idempotent_completeness(d):
    """The Murphy idempotents of all standard tableaux of size d sum to 1."""
    def run():
        total = GroupAlgElem(d)
        for lam in partitions(d):
            for U in standard_tableaux(lam):
                total = total + murphy_idempotent(U)
        ok = total == GroupAlgElem.identity(d)
        return ok, {"sum_is_identity": ok}
    return _guard("idempotent_completeness", 3, {"d": d}, run)


# -- 4. Schur-Sergeev ---------------------------------------------------------------

def check_schur_sergeev(m, n, d):
    params = {"m": m, "n": n, "d": d}

    def run():
        sp = SuperSpace.gl(m, n)
        total = 0
        ranks = {}
        ok = True
        for lam in partitions(d):
            U = standard_tableaux(lam)[0]
            r = act_on_tensor(murphy_idempotent(U), sp).rank()
            ranks[",".join(map(str, lam))] = r
            if (r == 0) == in_hook(lam, m, n):
                ok = False
            total += num_standard_tableaux(lam) * r
        ok = ok and total == (m + n) ** d
        return ok, {"ranks": ranks, "total": total, "expected": (m + n) ** d}
    return _guard("schur_sergeev", 4, params, run)


# -- 5. highest weights of the polynomial modules ------------------------------

def _weight_json(ws):
    return [w.to_json() for w in ws]


def check_polynomial_weights(m, n, tableau):
    params = {"m": m, "n": n, "tableau": str(tableau)}

    def run():
        sp = SuperSpace.gl(m, n)
        E = act_on_tensor(murphy_idempotent(tableau), sp)
        shape = tableau.shape
        details = {}
        ok = True
        for variant, expected in (("R", gl.pi_flat(shape, m, n)),
                                  ("Rprime", gl.pi_sharp(shape, m, n))):
            mod = gl.polynomial_module(sp, tableau, variant, E=E)
            hw = gl.highest_weight(mod.rep)
            good = hw.weights == expected
            ok = ok and good
            details[variant] = {"dim": mod.dim, "weight": _weight_json(hw.weights),
                                "matches": good}
        return ok, details
    return _guard("theorem_weights", 5, params, run)


# -- 6. symmetrizer / antisymmetrizer / xi -------------------------------------------

def check_sym_weight(m, n, d, anti=False):
    params = {"m": m, "n": n, "d": d}

    def run():
        sp = SuperSpace.gl(m, n)
        if anti:
            rep, expected = gl.antisymmetrizer_module(sp, d), gl.antisymmetrizer_weight(sp, d)
        else:
            rep, expected = gl.symmetrizer_module(sp, d), gl.symmetrizer_weight(sp, d)
        hw = gl.highest_weight(rep)
        ok = hw.weights == expected
        return ok, {"dim": rep.dim, "weight": _weight_json(hw.weights)}
    return _guard("antisymmetrizer_weight" if anti else "symmetrizer_weight", 6, params, run)


def check_gl_xi(m, n, d):
    def run():
        sp = SuperSpace.gl(m, n)
        ws = gl.xi_check(sp, d)
        ok = ws == gl.xi_weight(sp, d)
        return ok, {"weight": _weight_json(ws)}
    return _guard("xi_gl", 6, {"m": m, "n": n, "d": d}, run)


# -- 7. the subspace W ----------------------------------------------------------------

def check_w(n):
    def run():
        rep = osp.w_subspace(SuperSpace.osp(n))
        return all(rep.checks.values()), rep.checks
    return _guard("w_subspace", 7, {"n": n}, run)


# -- 8. xi_d for osp, Drinfeld round trip ------------------------------------------

def check_osp_xi(n, d):
    def run():
        X = osp.xi_module(d, n)
        tup = dr.drinfeld_from_weight(X.weight)
        tuple_ok = tup == dr.xi_tuple(n, d)
        back = dr.drinfeld_from_weight(dr.weight_from_drinfeld(tup)) == tup
        c = osp.central_on_vector(X.chain, X.xi, SuperSpace.osp(n).kappa)
        central_ok = c == osp.central_from_weight(X.weight)
        details = dict(X.checks)
        details.update({"weight": X.weight.to_json(), "drinfeld": tup.to_json(),
                        "tuple_matches": tuple_ok, "round_trip": back,
                        "central": c.to_json(), "central_identity": central_ok})
        return tuple_ok and back and central_ok, details
    return _guard("xi_osp", 8, {"n": n, "d": d}, run)


def check_vector_central(n):
    """Central series of the vector representation against lambda_1 lambda_1'(u+n)."""
    def run():
        sp = SuperSpace.osp(n)
        rep = osp.vector_rep_osp(sp)
        c = osp.central_series(rep).c
        _, hw = osp.highest_weight_osp(rep)
        osp.consistency_check(hw)
        ok = c == osp.central_from_weight(hw)
        return ok, {"central": c.to_json(), "weight": hw.to_json()}
    return _guard("central_series", 8, {"n": n}, run)


# -- 9. transition rule ---------------------------------------------------------------

def _tuple_pair_corpus():
    """Twenty fixed pairs of Drinfeld tuples (given by roots), for n = 1, 2, 3."""
    T = dr.DrinfeldTuple.from_roots
    h = Fraction(1, 2)
    return [
        (T([-1], [1], [[]]), T([1], [2], [[]])),
        (T([-1], [1], [[1]]), T([0], [-1], [[0]])),
        (T([], [], [[]]), T([3], [-2], [[2, 2]])),
        (T([2], [2], [[]]), T([2], [2], [[1]])),
        (T([0, 1], [2, 3], [[5]]), T([2], [0], [[]])),
        (T([h], [-h], [[h]]), T([-h], [h], [[-h]])),
        (T([1, 1], [0, 0], [[]]), T([0], [1], [[3]])),
        (T([-1], [2], [[], [2]]), T([2], [-1], [[1], []])),
        (T([-1], [1], [[1], []]), T([-1], [1], [[], [3]])),
        (T([4], [-4], [[0], [0]]), T([-4, 1], [4, 2], [[], [1]])),
        (T([], [], [[], []]), T([1], [3], [[2], [2]])),
        (T([h, 3], [1, 2], [[], []]), T([2, 1], [3, h], [[h], []])),
        (T([0], [5], [[1, 1], []]), T([5], [0], [[], [1, 1]])),
        (T([7], [-3], [[], [h]]), T([-3, 0], [7, 0], [[], []])),
        (T([-1], [3], [[], [], [4]]), T([3], [-1], [[], [], []])),
        (T([-1], [2], [[], [2], []]), T([-1], [1], [[1], [], []])),
        (T([1, 2], [3, 4], [[1], [2], [3]]), T([4, 3], [2, 1], [[], [], []])),
        (T([0], [0], [[], [], []]), T([], [], [[5], [], [-1]])),
        (T([h], [2], [[], [h], []]), T([2], [-h], [[], [], [h]])),
        (T([1, 1, 1], [0, 0, -1], [[], [], []]), T([0, -1], [1, 1], [[2], [], []])),
    ]


def _flint_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd computed with flint, independently of exact_field."""
    fp = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in p.coeffs])
    fq_ = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in q.coeffs])
    g = fp.gcd(fq_)
    lc = g[g.degree()]
    return Poly([Fraction(int((g[k] / lc).p), int((g[k] / lc).q)) for k in range(g.degree() + 1)])


def transition_reference(t1, t2):
    a, b = t1.Qbar * t2.Qbar, t1.Q * t2.Q
    d = _flint_gcd(a, b)
    return dr.DrinfeldTuple(a // d, b // d, [p * q for p, q in zip(t1.P, t2.P)])


def check_transition_corpus():
    def run():
        corpus = _tuple_pair_corpus()
        gcd_ok = weight_ok = 0
        for t1, t2 in corpus:
            t = dr.tensor_transition(t1, t2)
            if t == transition_reference(t1, t2):
                gcd_ok += 1
            w1, w2 = dr.weight_from_drinfeld(t1), dr.weight_from_drinfeld(t2)
            if dr.drinfeld_from_weight(tuple(a * b for a, b in zip(w1, w2))) == t:
                weight_ok += 1
        ok = gcd_ok == weight_ok == len(corpus)
        return ok, {"pairs": len(corpus), "gcd_agree": gcd_ok, "weight_product_agree": weight_ok}
    return _guard("transition_corpus", 9, {}, run)


def check_transition_laws():
    def run():
        corpus = _tuple_pair_corpus()
        ident = assoc = 0
        for k, (t1, t2) in enumerate(corpus):
            one = dr.DrinfeldTuple.ones(t1.n)
            if (dr.tensor_transition(t1, one) == dr.cancel_common(t1)
                    and dr.tensor_transition(one, t2) == dr.cancel_common(t2)):
                ident += 1
            t3 = next(b for a, b in corpus[k + 1:] + corpus[:k] if a.n == t1.n)
            lhs = dr.tensor_transition(dr.tensor_transition(t1, t2), t3)
            rhs = dr.tensor_transition(t1, dr.tensor_transition(t2, t3))
            assoc += lhs == rhs
        ok = ident == assoc == len(corpus)
        return ok, {"identity": ident, "associative": assoc}
    return _guard("transition_laws", 9, {}, run)


# -- suite assembly -------------------------------------------------------------------

def suite_plan(level="quick"):
    """The checks of the suite, in declaration order, as zero-argument callables."""
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    plan = []
    add = plan.append
    for m, n in GL_YBE_SPACES:
        add(lambda m=m, n=n: [check_ybe("gl", m, n)])
    for n in (1, 2):
        add(lambda n=n: [check_ybe("osp", n=n)])
        add(lambda n=n: [check_ybe("osp0", n=n)])
    for m, n in GL_YBE_SPACES:
        add(lambda m=m, n=n: rtt_gl_checks(m, n, 3 if full else 2))
    for n in (1, 2):
        add(lambda n=n: rtt_osp_checks(n, 3 if full else 2))
    dmax = 4 if full else 3
    for d in range(1, dmax + 1):
        for lam in partitions(d):
            add(lambda lam=lam: [check_idempotents(lam)])
        add(lambda d=d: [check_idempotent_completeness(d)])
    for m, n in HOOK_SPACES:
        for d in range(1, 5):
            add(lambda m=m, n=n, d=d: [check_schur_sergeev(m, n, d)])
    for m, n in WEIGHT_SPACES:
        for d in range(1, dmax + 1):
            for lam in partitions(d):
                if not in_hook(lam, m, n):
                    continue
                tabs = standard_tableaux(lam)
                for U in (tabs if full else tabs[:1]):
                    add(lambda m=m, n=n, U=U: [check_polynomial_weights(m, n, U)])
    for m, n in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        for d in range(1, 5):
            add(lambda m=m, n=n, d=d: [check_sym_weight(m, n, d)])
            add(lambda m=m, n=n, d=d: [check_sym_weight(m, n, d, anti=True)])
    for m, n in [(2, 1), (3, 2), (4, 1)]:
        for d in range(1, min(m, 4) + 1):
            add(lambda m=m, n=n, d=d: [check_gl_xi(m, n, d)])
    for n in (1, 2, 3):
        add(lambda n=n: [check_w(n)])
    for n in (1, 2, 3):
        add(lambda n=n: [check_vector_central(n)])
        for d in range(1, n + 1):
            if full or (n, d) != (3, 3):
                add(lambda n=n, d=d: [check_osp_xi(n, d)])
    add(lambda: [check_transition_corpus()])
    add(lambda: [check_transition_laws()])
    return plan


def run_suite(level="quick", workers=1, on_result=None):
    """Run the suite; results are returned in declaration order regardless of
    ``workers``."""
    plan = suite_plan(level)
    if workers <= 1:
        results = []
        for job in plan:
            for r in job():
                results.append(r)
                if on_result:
                    on_result(r)
        return results
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=workers) as pool:
        batches = list(pool.map(lambda job: job(), plan))
    results = [r for batch in batches for r in batch]
    if on_result:
        for r in results:
            on_result(r)
    return results


__all__ = [
    "check_ybe", "rtt_gl_checks", "rtt_osp_checks", "check_idempotents",
    "check_idempotent_completeness", "check_schur_sergeev", "check_polynomial_weights",
    "check_sym_weight", "check_gl_xi", "check_w", "check_osp_xi", "check_vector_central",
    "check_transition_corpus", "check_transition_laws", "transition_reference",
    "suite_plan", "run_suite",
]
