"""Drinfeld F_q[t]-modules built from reciprocal maps satisfying the
A-axioms, and the roundtrip with level structures.

Since A = F_q[t], a module is generated by phi_t together with the scalars;
the direct product formula for each divisor alpha * t^nu is kept only as a
consistency check against composition powers of phi_t.
"""

from __future__ import annotations

from .errors import NotLevelStructure, RecipAlgError
from .levelmod import LinearMapFq, ModuleSpace
from .recipmap import (
    AxiomReport,
    RecipMap,
    check_a_axioms,
    exp_poly,
    fiber_class,
    push_zero,
)
from .symalg import TauPoly, tau_compose


class DrinfeldModule:
    """phi: F_q[t] -> K[tau] with d(phi_t) = t, stored through phi_t."""

    def __init__(self, K, q, phi_t):
        self.K = K
        self.q = q
        self.phi_t = phi_t
        self._powers = [TauPoly(K, q, [K.one]), phi_t]

    def phi_t_power(self, j):
        while len(self._powers) <= j:
            self._powers.append(tau_compose(self._powers[-1], self.phi_t))
        return self._powers[j]

    def phi(self, a):
        """phi_a for a in F_q[t] given as a tuple of GF(q) codes, lowest
        degree first."""
        K = self.K
        out = TauPoly(K, self.q, [])
        for j, c in enumerate(a):
            if c:
                out = out + self.phi_t_power(j).scale(K.scalar(c))
        return out

    def phi_divisor(self, alpha, nu):
        """phi_{alpha t^nu}."""
        return self.phi_t_power(nu).scale(self.K.scalar(alpha))

    def rank(self):
        return self.phi_t.tau_degree()

    def __repr__(self):
        return f"DrinfeldModule(rank {self.rank()} over {self.K!r})"


def standard_embedding(src, dst):
    """The A-linear inclusion V^s_N -> V^r_N onto the first s components."""
    if src.q != dst.q or src.n != dst.n or src.r > dst.r:
        raise ValueError("incompatible spaces")
    images = []
    for nu in range(1, src.n + 1):
        for k in range(1, src.r + 1):
            images.append(dst.basis_elem(k, nu))
    return LinearMapFq(src, dst, images)


def phi_from_recip(rho, check=True):
    """Build phi from an A-reciprocal map: phi_t is t * e restricted to the
    t-torsion V_1.  For every divisor alpha t^nu the direct product formula
    is cross-checked against the composition power of phi_t."""
    space = rho.space
    K = rho.ring
    if getattr(K, "t", None) is None:
        raise ValueError("value ring must be an F-algebra containing t")
    if check:
        rep = check_a_axioms(rho)
        if not rep.ok:
            raise RecipAlgError(f"map fails the A-axioms: {rep.violations[:3]}")
    torsion_1 = [v for v in space.nonzero_elements() if space.in_level(v, 1)]
    e1 = exp_poly(rho, subset=torsion_1)
    phi_t = e1.scale(K.t)
    mod = DrinfeldModule(K, space.q, phi_t)
    if not K.eq(phi_t.d(), K.t):
        raise RecipAlgError("d(phi_t) != t")
    if check:
        for nu in range(space.n + 1):
            torsion = [v for v in space.nonzero_elements() if space.in_level(v, nu)]
            direct = exp_poly(rho, subset=torsion).scale(K.pow_int(K.t, nu))
            for alpha in range(1, space.q):
                lhs = direct.scale(K.scalar(alpha))
                if lhs != mod.phi_divisor(alpha, nu):
                    raise RecipAlgError(
                        f"product formula for {alpha} t^{nu} disagrees with composition"
                    )
    return mod


def check_rank(mod, r):
    """Verify the degree, top coefficient and derivative conditions for
    a in {t, t^2}."""
    K = mod.K
    violations = []
    for nu, a in ((1, (0, 1)), (2, (0, 0, 1))):
        phi_a = mod.phi(a)
        want = r * nu
        if phi_a.tau_degree() != want:
            violations.append(("degree", nu, phi_a.tau_degree(), want))
            continue
        top = phi_a.coeffs[-1]
        if K.is_zero(top):
            violations.append(("top", nu))
        d = phi_a.d()
        expected_d = K.pow_int(K.t, nu)
        if not K.eq(d, expected_d):
            violations.append(("derivative", nu))
    return AxiomReport(not violations, violations)


def level_from_recip(rho):
    """(W, lambda, phi) from a field-valued map passing the A-axioms.
    Verifies lambda(a v) = phi_a(lambda(v)) for a in {t} and scalars, and
    that phi is standard of rank = rank(W) when W is nonzero."""
    space = rho.space
    K = rho.ring
    rep = check_a_axioms(rho)
    if not rep.ok:
        raise RecipAlgError(f"map fails the A-axioms: {rep.violations[:3]}")
    W, lam = fiber_class(rho)
    mod = phi_from_recip(rho, check=False)
    for v in W.element_set():
        tv = space.t_mul(v)
        if not K.eq(lam[tv], mod.phi_t.eval(lam[v])):
            raise RecipAlgError("lambda(t v) != phi_t(lambda(v))")
        for alpha in range(1, space.q):
            av = space.smul(alpha, v)
            if not K.eq(lam[av], K.mul(K.scalar(alpha), lam[v])):
                raise RecipAlgError("lambda is not F_q-linear")
    if W.rank > 0:
        rank_rep = check_rank(mod, W.rank)
        if not rank_rep.ok:
            raise RecipAlgError(f"phi is not standard of rank {W.rank}: {rank_rep.violations}")
    return W, lam, mod


def recip_from_level(mod, lam, i):
    """Inverse construction: from a level structure lam on V^s_N (a table
    of values of an injective A-linear map onto the torsion) and an
    A-linear embedding i into V^r_N, build the extension-by-zero map."""
    src = i.src
    K = mod.K
    # validate the level structure
    seen = set()
    for v in src.elements():
        val = lam[v]
        key = repr(val)
        if key in seen:
            raise NotLevelStructure("lambda is not injective")
        seen.add(key)
    if not K.is_zero(lam[src.zero]):
        raise NotLevelStructure("lambda(0) != 0")
    for v in src.elements():
        for alpha in range(1, src.q):
            if not K.eq(lam[src.smul(alpha, v)], K.mul(K.scalar(alpha), lam[v])):
                raise NotLevelStructure("lambda is not F_q-linear")
        if not K.eq(lam[src.t_mul(v)], mod.phi_t.eval(lam[v])):
            raise NotLevelStructure("lambda(t v) != phi_t(lambda(v))")
    for u in src.elements():
        for w in src.elements():
            if not K.eq(lam[src.add(u, w)], K.add(lam[u], lam[w])):
                raise NotLevelStructure("lambda is not additive")
    table = {v: K.inv(lam[v]) for v in src.nonzero_elements()}
    small = RecipMap.from_table(src, K, table)
    rho = push_zero(small, i)
    rep = check_a_axioms(rho)
    if not rep.ok:
        raise RecipAlgError("constructed map fails the A-axioms")
    return rho
