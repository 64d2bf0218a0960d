"""Reciprocal maps: construction, axiom checking, functoriality, the
exponential polynomial, fiberwise classification, and the identity suite.

A reciprocal map is a finite table on the nonzero elements of a module
space, with values in a ring context: either the symbolic-universal map
(value at v is the exact rational 1/l_v) or a concrete field-valued table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotFree, NotSubmodule, UnknownIdentity
from .fields import RatFuncField, field_create
from .levelmod import (
    FqSubspace,
    LinearMapFq,
    Submodule,
    a_basis_of,
    all_subspaces,
    prefix_space,
    submodule_is_free,
    subspace_maps,
)
from .symalg import FracContext, PolyContext, TauPoly, UniPoly, tau_compose, to_tau


class RecipMap:
    def __init__(self, space, ring, values, universal=False):
        self.space = space
        self.ring = ring
        self.values = values  # {nonzero element: ring value}
        self.universal = universal

    @classmethod
    def universal_map(cls, space, coeff_field=None):
        """The symbolic map v -> 1/l_v.  Coefficients default to GF(q);
        pass a RatFuncField for the F = F_q(t) version."""
        if coeff_field is None:
            coeff_field = space.gf
        ring = FracContext(PolyContext(coeff_field, space.var_names))
        values = {v: ring.gen_inverse(v) for v in space.nonzero_elements()}
        return cls(space, ring, values, universal=True)

    @classmethod
    def from_table(cls, space, ring, table):
        values = dict(table)
        missing = [v for v in space.nonzero_elements() if v not in values]
        if missing:
            raise ValueError(f"table misses {len(missing)} nonzero elements")
        return cls(space, ring, values)

    @classmethod
    def from_linear(cls, space, ring, lam):
        """rho = 1/lambda for an injective linear map given as a value table
        on the nonzero elements."""
        return cls(space, ring, {v: ring.inv(lam[v]) for v in space.nonzero_elements()})

    def value(self, v):
        return self.values[v]

    def is_fiberwise_invertible(self):
        return all(not self.ring.is_zero(x) for x in self.values.values())

    def scaled(self, u):
        """The map v -> u * rho(v) (still F_q-reciprocal)."""
        R = self.ring
        return RecipMap(self.space, R, {v: R.mul(u, x) for v, x in self.values.items()})

    def __repr__(self):
        tag = "universal" if self.universal else "table"
        return f"RecipMap({tag} on {self.space!r})"


@dataclass
class AxiomReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_fq_axioms(rho):
    """Exhaustive check of the two reciprocal-map equations."""
    space = rho.space
    R = rho.ring
    violations = []
    nonzero = list(space.nonzero_elements())
    for v in nonzero:
        for w in nonzero:
            s = space.add(v, w)
            if s == space.zero:
                continue
            lhs = R.mul(rho.value(v), rho.value(w))
            rhs = R.mul(rho.value(s), R.add(rho.value(v), rho.value(w)))
            if not R.eq(lhs, rhs):
                violations.append(("a", v, w))
    for alpha in range(1, space.q):
        if alpha == 1:
            continue
        for v in nonzero:
            lhs = R.mul(R.scalar(alpha), rho.value(space.smul(alpha, v)))
            if not R.eq(lhs, rho.value(v)):
                violations.append(("b", alpha, v))
    return AxiomReport(not violations, violations)


def check_a_axioms(rho):
    """t rho(tv) = sum over v' in V_1 of rho(v - v'), for v outside V_1.
    The F_q axioms are checked first; for n = 1 the extra condition is
    vacuous."""
    base = check_fq_axioms(rho)
    if not base.ok:
        return base
    space = rho.space
    R = rho.ring
    if space.n == 1:
        return AxiomReport(True)
    if getattr(R, "t", None) is None:
        raise ValueError("value ring does not contain t; cannot check A-axioms")
    violations = []
    v1 = [v for v in space.elements() if space.in_level(v, 1)]
    for v in space.nonzero_elements():
        if space.in_level(v, 1):
            continue
        lhs = R.mul(R.t, rho.value(space.t_mul(v)))
        rhs = R.zero
        for vp in v1:
            rhs = R.add(rhs, rho.value(space.sub(v, vp)))
        if not R.eq(lhs, rhs):
            violations.append(("t", v))
    return AxiomReport(not violations, violations)


# ---------------------------------------------------------------------------
# functoriality


def pullback(rho, i):
    """i^* rho = rho o i on the source of an injective linear map."""
    values = {}
    for w in i.src.nonzero_elements():
        values[w] = rho.value(i.apply(w))
    return RecipMap(i.src, rho.ring, values)


def push_zero(rho_prime, i):
    """Extension by zero along an injective map into a larger space."""
    R = rho_prime.ring
    image = {i.apply(w): rho_prime.value(w) for w in i.src.nonzero_elements()}
    values = {}
    for v in i.dst.nonzero_elements():
        values[v] = image.get(v, R.zero)
    return RecipMap(i.dst, R, values)


def push_quot(rho, p):
    """Pushforward along a surjection: fiberwise sums of values."""
    R = rho.ring
    space = rho.space
    fibers = {}
    for v in space.nonzero_elements():
        fibers.setdefault(p.apply(v), []).append(v)
    values = {}
    for w in p.dst.nonzero_elements():
        acc = R.zero
        for v in fibers.get(w, []):
            acc = R.add(acc, rho.value(v))
        values[w] = acc
    return RecipMap(p.dst, R, values)


def push_general(rho, f):
    """Pushforward along any linear map; equals the fiber-sum formula,
    which factors as extension-by-zero of the quotient pushforward."""
    return push_quot(rho, f)


# ---------------------------------------------------------------------------
# the exponential polynomial


def exp_poly(rho, subset=None):
    """e_rho = X * prod over nonzero v of (1 - rho(v) X), in tau form.
    NonAdditive from the conversion signals an invalid map."""
    R = rho.ring
    values = (
        [rho.value(v) for v in subset]
        if subset is not None
        else [rho.value(v) for v in rho.space.nonzero_elements()]
    )
    poly = UniPoly(R, [R.zero, R.one])  # X
    for x in values:
        poly = poly * UniPoly(R, [R.one, R.neg(x)])
    return to_tau(poly, rho.space.q)


def _exp_values(ring, values):
    """e as a UniPoly (X * prod (1 - x X)) from a list of values."""
    poly = UniPoly(ring, [ring.zero, ring.one])
    for x in values:
        poly = poly * UniPoly(ring, [ring.one, ring.neg(x)])
    return poly


# ---------------------------------------------------------------------------
# fiberwise classification


def fiber_class(rho):
    """Support submodule W and the inverse table lambda of a field-valued
    map satisfying the A-axioms.  Raises NotSubmodule / NotFree when the
    input violates the classification theorems."""
    space = rho.space
    R = rho.ring
    w_set = {space.zero} | {
        v for v in space.nonzero_elements() if not R.is_zero(rho.value(v))
    }
    for u in w_set:
        for v in w_set:
            if space.add(u, v) not in w_set:
                raise NotSubmodule(f"{u} + {v} leaves the support")
    for v in w_set:
        if space.t_mul(v) not in w_set:
            raise NotSubmodule(f"t * {v} leaves the support")
    if w_set == {space.zero}:
        return Submodule(space, []), {space.zero: R.zero}
    rank = submodule_is_free(space, frozenset(w_set))
    if rank is None:
        raise NotFree("support is a submodule but not free")
    basis = a_basis_of(space, w_set, rank)
    if basis is None:
        raise NotFree("no A-basis found")
    lam = {space.zero: R.zero}
    for v in w_set:
        if v != space.zero:
            lam[v] = R.inv(rho.value(v))
    for u in w_set:
        for v in w_set:
            s = space.add(u, v)
            if not R.eq(lam[s], R.add(lam[u], lam[v])):
                raise NotSubmodule("lambda is not additive")
    return Submodule(space, basis), lam


# ---------------------------------------------------------------------------
# the identity suite

IDENTITY_NAMES = (
    "erho_a",
    "erho_b",
    "rho_a",
    "rho_b",
    "rho_c",
    "rho_quot",
    "comp_a",
    "comp_b",
    "localize_fk",
)


def _prefix_suffix_products(ring, factors):
    n = len(factors)
    pre = [UniPoly(ring, [ring.one])]
    for f in factors:
        pre.append(pre[-1] * f)
    suf = [None] * (n + 1)
    suf[n] = UniPoly(ring, [ring.one])
    for i in range(n - 1, -1, -1):
        suf[i] = factors[i] * suf[i + 1]
    return pre, suf


def _identity_erho_a(rho):
    """Cleared form of 1/e = 1/X + sum -rho(v)/(1 - rho(v) X):
    1 = prod_w (1 - rho(w)X) - sum_v rho(v) X prod_{w != v} (1 - rho(w)X)."""
    R = rho.ring
    vals = [rho.value(v) for v in rho.space.nonzero_elements()]
    factors = [UniPoly(R, [R.one, R.neg(x)]) for x in vals]
    pre, suf = _prefix_suffix_products(R, factors)
    total = pre[len(vals)]
    for i, x in enumerate(vals):
        skip = pre[i] * suf[i + 1]
        term = skip * UniPoly(R, [R.zero, x])
        total = total + UniPoly(R, [R.neg(c) for c in term.coeffs])
    return total == UniPoly(R, [R.one])


def _identity_erho_b(rho):
    """Cleared form of prod 1/(1-rho X) = -sum 1/(1-rho X):
    1 = -sum_v prod_{w != v} (1 - rho(w)X), for V != 0."""
    R = rho.ring
    vals = [rho.value(v) for v in rho.space.nonzero_elements()]
    if not vals:
        return True
    factors = [UniPoly(R, [R.one, R.neg(x)]) for x in vals]
    pre, suf = _prefix_suffix_products(R, factors)
    total = UniPoly(R, [])
    for i in range(len(vals)):
        total = total + pre[i] * suf[i + 1]
    minus_one = UniPoly(R, [R.neg(R.one)])
    return total == minus_one


def _fiber_sum(rho, v, subspace):
    R = rho.ring
    acc = R.zero
    for vp in subspace.elements():
        acc = R.add(acc, rho.value(rho.space.sub(v, vp)))
    return acc


def _identity_rho_a(rho, subspace, v):
    R = rho.ring
    space = rho.space
    lhs = _fiber_sum(rho, v, subspace)
    prod_vp = R.one
    prod_shift = R.one
    for vp in subspace.elements():
        prod_shift = R.mul(prod_shift, rho.value(space.sub(v, vp)))
        if vp != space.zero:
            prod_vp = R.mul(prod_vp, rho.value(vp))
    return R.eq(R.mul(lhs, prod_vp), prod_shift)


def _identity_rho_b(rho, subspace, v):
    R = rho.ring
    space = rho.space
    lhs = _fiber_sum(rho, v, subspace)
    prod_diff = R.one
    count = 0
    for vp in subspace.elements():
        count += 1
        if vp != space.zero:
            prod_diff = R.mul(prod_diff, R.sub(rho.value(v), rho.value(vp)))
    rhs = R.pow_int(rho.value(v), count)
    return R.eq(R.mul(lhs, prod_diff), rhs)


def _e_at_inverse(rho, subspace, v):
    """e_{i^* rho}(1/rho(v)) = y prod_{v' in subspace, v' != 0} (1 - rho(v') y)."""
    R = rho.ring
    y = R.inv(rho.value(v))
    acc = y
    for vp in subspace.elements():
        if vp != rho.space.zero:
            acc = R.mul(acc, R.sub(R.one, R.mul(rho.value(vp), y)))
    return acc


def _identity_rho_c(rho, subspace, v):
    R = rho.ring
    lhs = _fiber_sum(rho, v, subspace)
    return R.eq(R.mul(lhs, _e_at_inverse(rho, subspace, v)), R.one)


def _identity_rho_quot(rho, subspace, v):
    """The pushforward table entry at p(v) is the reciprocal of the
    pushforward linear map: (p_* rho)(p(v)) * e_{i^* rho}(1/rho(v)) = 1."""
    space = rho.space
    R = rho.ring
    _, p, _ = subspace_maps(space, subspace)
    pushed = push_quot(rho, p)
    img = p.apply(v)
    if img == p.dst.zero:
        return True
    return R.eq(R.mul(pushed.value(img), _e_at_inverse(rho, subspace, v)), R.one)


def _identity_comp_a(rho, u):
    R = rho.ring
    e1 = exp_poly(rho)
    e2 = exp_poly(rho.scaled(u))
    u_tau = TauPoly(R, rho.space.q, [u])
    return tau_compose(e1, u_tau) == tau_compose(u_tau, e2)


def _identity_comp_b(rho, subspace):
    space = rho.space
    R = rho.ring
    i, p, _ = subspace_maps(space, subspace)
    restricted = pullback(rho, i)
    pushed = push_quot(rho, p)
    lhs = exp_poly(rho)
    rhs = tau_compose(exp_poly(pushed), exp_poly(restricted))
    return lhs == rhs


def _identity_localize_fk(rho, k):
    """f_k * prod over nonzero v' in V_(k-1) of rho(v') equals the product
    of rho(X_k - v') over all v' in V_(k-1)."""
    space = rho.space
    sub = prefix_space(space, k, space.n) if space.n == 1 else None
    if sub is None:
        raise UnknownIdentity("localize_fk applies to plain spaces")
    return _identity_rho_a(rho, sub, space.basis_elem(k, 1))


def verify_identity(name, rho, params=None):
    """Returns (ok, counterexample).  The counterexample is a dict naming
    the parameters of the first failing instance, or None."""
    params = params or {}
    space = rho.space
    if name == "erho_a":
        return (True, None) if _identity_erho_a(rho) else (False, {})
    if name == "erho_b":
        return (True, None) if _identity_erho_b(rho) else (False, {})
    if name in ("rho_a", "rho_b", "rho_c", "rho_quot"):
        check = {
            "rho_a": _identity_rho_a,
            "rho_b": _identity_rho_b,
            "rho_c": _identity_rho_c,
            "rho_quot": _identity_rho_quot,
        }[name]
        cases = _subspace_point_cases(space, params)
        for subspace, v in cases:
            if not check(rho, subspace, v):
                return False, {"subspace_dim": subspace.dim, "v": v}
        return True, None
    if name == "comp_a":
        us = params.get("u")
        if us is None:
            us = [rho.value(w) for w in space.nonzero_elements()]
        elif not isinstance(us, list):
            us = [us]
        for u in us:
            if not _identity_comp_a(rho, u):
                return False, {"u": u}
        return True, None
    if name == "comp_b":
        subs = params.get("subspace")
        subs = [subs] if subs is not None else all_subspaces(space)
        for sub in subs:
            if not _identity_comp_b(rho, sub):
                return False, {"subspace_dim": sub.dim}
        return True, None
    if name == "localize_fk":
        ks = params.get("k")
        ks = [ks] if ks is not None else list(range(1, space.dim + 1))
        for k in ks:
            if not _identity_localize_fk(rho, k):
                return False, {"k": k}
        return True, None
    raise UnknownIdentity(name)


def _subspace_point_cases(space, params):
    if "subspace" in params and "v" in params:
        return [(params["subspace"], params["v"])]
    cases = []
    subs = [params["subspace"]] if "subspace" in params else [
        s for s in all_subspaces(space) if s.dim < space.dim
    ]
    for sub in subs:
        inside = sub.element_set()
        vs = [params["v"]] if "v" in params else [
            v for v in space.nonzero_elements() if v not in inside
        ]
        for v in vs:
            cases.append((sub, v))
    return cases


def run_identity_suite(q, dims):
    """Run every identity on the universal map for each plain dimension.
    Returns a list of records (name, dim, ok, counterexample)."""
    from .levelmod import plain_space

    records = []
    for dim in dims:
        space = plain_space(q, dim)
        rho = RecipMap.universal_map(space)
        for name in IDENTITY_NAMES:
            ok, cex = verify_identity(name, rho)
            records.append({"identity": name, "q": q, "dim": dim, "ok": ok,
                            "counterexample": cex})
    return records
