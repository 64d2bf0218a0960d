"""The finite modules V^r_N = (t^{-n} F_q[t] / F_q[t])^r and plain
F_q-vector spaces (the n = 1 case), together with their subobjects.

An element is a flat tuple of GF(q) codes of length r*n; position
(nu-1)*r + (k-1) holds the coefficient of t^(-nu) in component k, i.e. the
coordinate of the basis vector X_{k,nu}, and the flat order is exactly the
variable order X_{1,1}, ..., X_{r,1}, X_{1,2}, ..., X_{r,n}.
"""

from __future__ import annotations

import itertools
from math import comb

from .fields import FiniteField, factor_prime_power


class ModuleSpace:
    def __init__(self, q, r, n):
        p, e = factor_prime_power(q)
        self.q = q
        self.r = r
        self.n = n
        self.gf = FiniteField(p, e)
        self.dim = r * n
        self.size = q**self.dim
        self.zero = (0,) * self.dim
        self.var_names = tuple(
            f"X{k}_{nu}" for nu in range(1, n + 1) for k in range(1, r + 1)
        )

    def key(self):
        return (self.q, self.r, self.n)

    def pos(self, k, nu):
        """Flat index of X_{k,nu}; k, nu are 1-based."""
        return (nu - 1) * self.r + (k - 1)

    def basis_elem(self, k, nu):
        v = [0] * self.dim
        v[self.pos(k, nu)] = 1
        return tuple(v)

    def coeff(self, v, k, nu):
        return v[self.pos(k, nu)]

    def elements(self):
        return itertools.product(range(self.q), repeat=self.dim)

    def nonzero_elements(self):
        return (v for v in self.elements() if any(v))

    def add(self, u, v):
        gf = self.gf
        return tuple(gf.add(x, y) for x, y in zip(u, v))

    def neg(self, v):
        gf = self.gf
        return tuple(gf.neg(x) for x in v)

    def sub(self, u, v):
        return self.add(u, self.neg(v))

    def smul(self, alpha, v):
        gf = self.gf
        return tuple(gf.mul(alpha, x) for x in v)

    def t_mul(self, v):
        """Multiplication by t: the t^(-nu) slot receives the old t^(-nu-1)
        slot, the nu = n slot becomes zero."""
        r, n = self.r, self.n
        out = list(v[r:]) + [0] * r
        return tuple(out)

    def t_pow_mul(self, v, j):
        for _ in range(j):
            v = self.t_mul(v)
        return v

    def in_level(self, v, nu):
        """Whether v lies in V_nu (killed by t^nu)."""
        return all(x == 0 for x in v[nu * self.r :])

    def component(self, v, k):
        """1-based component k as a tuple (c_1, ..., c_n) for t^-1..t^-n."""
        return tuple(v[(j * self.r) + (k - 1)] for j in range(self.n))

    def from_components(self, comps):
        out = [0] * self.dim
        for k, comp in enumerate(comps, start=1):
            for j, c in enumerate(comp):
                out[j * self.r + (k - 1)] = c
        return tuple(out)

    def exact_annihilator_tn(self, v):
        """True when the annihilator of v is exactly (t^n)."""
        return any(x != 0 for x in v[(self.n - 1) * self.r :])

    def __repr__(self):
        return f"V(q={self.q}, r={self.r}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, ModuleSpace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def plain_space(q, dim):
    """An F_q-vector space of the given dimension (n = 1)."""
    return ModuleSpace(q, dim, 1)


def divisors(space):
    """Div((t^n)) as a set of (alpha_code, nu) pairs meaning alpha * t^nu."""
    units = [a for a in range(1, space.q) ]
    return {(a, nu) for a in units for nu in range(space.n + 1)}


# ---------------------------------------------------------------------------
# F_q-subspaces


class FqSubspace:
    """An F_q-subspace of a ModuleSpace, given by an independent basis."""

    def __init__(self, space, basis):
        self.space = space
        self.basis = [tuple(b) for b in basis]
        self.dim = len(self.basis)

    def elements(self):
        space = self.space
        seen = set()
        for coeffs in itertools.product(range(space.q), repeat=self.dim):
            v = space.zero
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = space.add(v, space.smul(c, b))
            if v not in seen:
                seen.add(v)
                yield v

    def element_set(self):
        return frozenset(self.elements())

    def coords(self, v):
        """Coordinates of v in the basis, or None if v is outside."""
        space = self.space
        for coeffs in itertools.product(range(space.q), repeat=self.dim):
            w = space.zero
            for c, b in zip(coeffs, self.basis):
                if c:
                    w = space.add(w, space.smul(c, b))
            if w == v:
                return coeffs
        return None

    def contains(self, v):
        return v in self.element_set()

    def __repr__(self):
        return f"FqSubspace(dim={self.dim} of {self.space!r})"


def prefix_space(space, k, nu):
    """The span V'_{k,nu} of all basis vectors strictly before X_{k,nu}."""
    cut = space.pos(k, nu)
    basis = []
    for j in range(cut):
        v = [0] * space.dim
        v[j] = 1
        basis.append(tuple(v))
    return FqSubspace(space, basis)


def echelon_subspaces(space, s):
    """All s-dimensional F_q-subspaces, one reduced echelon basis each."""
    D = space.dim
    q = space.q
    for pivots in itertools.combinations(range(D), s):
        free_pos = []
        for i, p in enumerate(pivots):
            for j in range(p + 1, D):
                if j not in pivots:
                    free_pos.append((i, j))
        for values in itertools.product(range(q), repeat=len(free_pos)):
            rows = []
            for i, p in enumerate(pivots):
                row = [0] * D
                row[p] = 1
                rows.append(row)
            for (i, j), c in zip(free_pos, values):
                rows[i][j] = c
            yield FqSubspace(space, [tuple(r) for r in rows])


def all_subspaces(space):
    """Every F_q-subspace, including 0 and the whole space."""
    out = []
    for s in range(space.dim + 1):
        out.extend(echelon_subspaces(space, s))
    return out


class LinearMapFq:
    """F_q-linear map between module spaces, stored via basis images."""

    def __init__(self, src, dst, images):
        self.src = src
        self.dst = dst
        self.images = [tuple(v) for v in images]  # one per src flat basis vector
        assert len(self.images) == src.dim

    def apply(self, v):
        dst = self.dst
        out = dst.zero
        for c, img in zip(v, self.images):
            if c:
                out = dst.add(out, dst.smul(c, img))
        return out

    def image_set(self):
        return frozenset(self.apply(v) for v in self.src.elements())

    def is_injective(self):
        return len(self.image_set()) == self.src.size

    def is_surjective(self):
        return len(self.image_set()) == self.dst.size

    def is_a_linear(self):
        """Commutes with multiplication by t."""
        for v in self.src.elements():
            if self.apply(self.src.t_mul(v)) != self.dst.t_mul(self.apply(v)):
                return False
        return True

    def preimages(self, w):
        return [v for v in self.src.elements() if self.apply(v) == w]

    def __repr__(self):
        return f"LinearMapFq({self.src!r} -> {self.dst!r})"


def identity_map(space):
    return LinearMapFq(space, space, [space.basis_elem(k, nu)
                                      for nu in range(1, space.n + 1)
                                      for k in range(1, space.r + 1)])


def inclusion_map(subspace):
    """V' -> V as a LinearMapFq from a plain space of dim(V') coordinates."""
    src = plain_space(subspace.space.q, subspace.dim)
    return LinearMapFq(src, subspace.space, subspace.basis)


def subspace_maps(space, subspace):
    """For an F_q-subspace V' of a plain space V, return (i, p, j): the
    inclusion V' -> V, the quotient V -> V'' and a section j with
    p o j = id."""
    i = inclusion_map(subspace)
    # complete the basis greedily
    span = set(subspace.element_set())
    complement = []
    for v in space.elements():
        if v not in span:
            complement.append(v)
            new_span = set()
            for w in span:
                for c in range(space.q):
                    new_span.add(space.add(w, space.smul(c, v)))
            span = new_span
    dst = plain_space(space.q, len(complement))
    full = FqSubspace(space, subspace.basis + complement)
    # p takes coordinates with respect to the completed basis, keeping only
    # the complement part
    table = {}
    for coeffs in itertools.product(range(space.q), repeat=space.dim):
        v = space.zero
        for c, b in zip(coeffs, full.basis):
            if c:
                v = space.add(v, space.smul(c, b))
        table.setdefault(v, coeffs[subspace.dim :])
    basis_images = []
    for j in range(space.dim):
        e = tuple(1 if m == j else 0 for m in range(space.dim))
        basis_images.append(table[e])
    p = LinearMapFq(space, dst, basis_images)
    j_map = LinearMapFq(dst, space, complement)
    return i, p, j_map


# ---------------------------------------------------------------------------
# free A/(t^n)-submodules


class Submodule:
    """A free A/(t^n)-submodule given by an A-basis (generator list)."""

    def __init__(self, space, generators):
        self.space = space
        self.generators = [tuple(g) for g in generators]
        self.rank = len(self.generators)
        self._elements = None

    def elements(self):
        if self._elements is None:
            self._elements = self._element_set()
        return self._elements

    def _element_set(self):
        space = self.space
        n, q = space.n, space.q
        elems = {space.zero}
        for g in self.generators:
            new = set()
            tg = [g]
            for _ in range(n - 1):
                tg.append(space.t_mul(tg[-1]))
            for coeffs in itertools.product(range(q), repeat=n):
                w = space.zero
                for c, tgi in zip(coeffs, tg):
                    if c:
                        w = space.add(w, space.smul(c, tgi))
                for e in elems:
                    new.add(space.add(e, w))
            elems = new
        return frozenset(elems)

    def element_set(self):
        return self.elements()

    def contains(self, v):
        return v in self.elements()

    def __repr__(self):
        return f"Submodule(rank={self.rank} of {self.space!r})"


def gaussian_binom(r, s, q):
    num = 1
    den = 1
    for i in range(s):
        num *= q**r - q**i
        den *= q**s - q**i
    return num // den


def free_submodule_count(space, s):
    """Closed-form count of free rank-s submodules: injective maps with
    free image divided by GL_s of the coefficient ring."""
    q, r, n = space.q, space.r, space.n
    return q ** ((n - 1) * s * (r - s)) * gaussian_binom(r, s, q)


def free_submodules(space, s):
    """Duplicate-free enumeration of the free rank-s A/(t^n)-submodules.

    Canonical form: generator matrix over A/(t^n) whose rows at the pivot
    set J form the identity, with the mod-t part of the non-pivot entries
    in column echelon shape (zero above the pivot row)."""
    if not 1 <= s <= space.r:
        raise ValueError("rank s must satisfy 1 <= s <= r")
    q, r, n = space.q, space.r, space.n
    ring = list(itertools.product(range(q), repeat=n))  # elements of A/(t^n)
    ring_mult_t = [e for e in ring if e[0] == 0]  # the ideal (t)
    out = []
    for pivots in itertools.combinations(range(r), s):
        entry_choices = []
        slots = []
        for c in range(s):
            for i in range(r):
                if i in pivots:
                    continue
                slots.append((i, c))
                if i < pivots[c]:
                    entry_choices.append(ring_mult_t)
                else:
                    entry_choices.append(ring)
        for assignment in itertools.product(*entry_choices):
            # generator c: component rows over A/(t^n)
            gens = []
            for c in range(s):
                comps = [(0,) * n] * r
                comps = list(comps)
                comps[pivots[c]] = (1,) + (0,) * (n - 1)
                gens.append(comps)
            for (i, c), val in zip(slots, assignment):
                gens[c][i] = val
            # a ring element (a_0,...,a_{n-1}) scales the generator
            # t^{-n}b_i: coefficient of t^-nu is a_{n-nu}
            mods = []
            for comps in gens:
                flat = [0] * space.dim
                for i, a in enumerate(comps):
                    for j, coeff in enumerate(a):
                        # a_j * t^j * t^-n = t^-(n-j)
                        nu = n - j
                        flat[space.pos(i + 1, nu)] = coeff
                mods.append(tuple(flat))
            out.append(Submodule(space, mods))
    return out


def brute_force_free_submodules(space, s):
    """Oracle: distinct element sets generated by all s-tuples whose span is
    free of rank s.  Exponential; only usable at small sizes."""
    elems = list(space.elements())
    seen = set()
    for tup in itertools.product(elems, repeat=s):
        sub = Submodule(space, list(tup))
        es = sub.element_set()
        if len(es) == space.q ** (s * space.n):
            # free iff in addition t^(n-1)*W has q^s elements
            tw = {space.t_pow_mul(v, space.n - 1) for v in es}
            if len(tw) == space.q**s:
                seen.add(es)
    return seen


def submodule_is_free(space, element_set):
    """Freeness test for an additively-and-t-closed subset: the size must be
    q^(s n) and the socle t^(n-1) W must have q^s elements."""
    size = len(element_set)
    q, n = space.q, space.n
    s = 0
    while q ** (s * n) < size:
        s += 1
    if q ** (s * n) != size:
        return None
    tw = {space.t_pow_mul(v, n - 1) for v in element_set}
    if len(tw) != q**s:
        return None
    return s


def a_basis_of(space, element_set, rank):
    """Extract an A-basis of a free rank-``rank`` submodule."""
    gens = []
    span = frozenset({space.zero})
    for v in element_set:
        if len(gens) == rank:
            break
        if not space.exact_annihilator_tn(v) or v in span:
            continue
        cand = Submodule(space, gens + [v])
        es = cand.element_set()
        if len(es) == space.q ** ((len(gens) + 1) * space.n):
            gens.append(v)
            span = es
    if len(gens) != rank:
        return None
    return gens


# ---------------------------------------------------------------------------
# the unipotent group U


def _ring_mul(space, a, b):
    """Multiplication in A/(t^n) on coefficient tuples."""
    n = space.n
    gf = space.gf
    out = [0] * n
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0 or i + j >= n:
                continue
            out[i + j] = gf.add(out[i + j], gf.mul(x, y))
    return tuple(out)


def _ring_add(space, a, b):
    gf = space.gf
    return tuple(gf.add(x, y) for x, y in zip(a, b))


def _module_scale(space, a, comp):
    """Act by a ring element on one component (c_1..c_n) of V."""
    n = space.n
    gf = space.gf
    out = [0] * n
    for nu in range(1, n + 1):  # output coefficient of t^-nu
        acc = 0
        for j in range(0, n - nu + 1):
            if a[j] and comp[nu + j - 1]:
                acc = gf.add(acc, gf.mul(a[j], comp[nu + j - 1]))
        out[nu - 1] = acc
    return tuple(out)


class GroupU:
    """Subgroup of GL_r(F_q[t]/(t^n)) congruent mod t to unit upper
    triangular matrices.  A matrix is a tuple of rows of ring elements."""

    def __init__(self, space):
        self.space = space
        self.order = space.q ** (
            space.r * (space.r - 1) // 2 + space.r**2 * (space.n - 1)
        )

    def elements(self):
        space = self.space
        q, r, n = space.q, space.r, space.n
        ring = list(itertools.product(range(q), repeat=n))
        unit_diag = [e for e in ring if e[0] == 1]
        below = [e for e in ring if e[0] == 0]
        choice_lists = []
        positions = []
        for i in range(r):
            for j in range(r):
                positions.append((i, j))
                if i == j:
                    choice_lists.append(unit_diag)
                elif i > j:
                    choice_lists.append(below)
                else:
                    choice_lists.append(ring)
        for combo in itertools.product(*choice_lists):
            mat = [[None] * r for _ in range(r)]
            for (i, j), val in zip(positions, combo):
                mat[i][j] = val
            yield tuple(tuple(row) for row in mat)

    def identity(self):
        space = self.space
        one = (1,) + (0,) * (space.n - 1)
        zero = (0,) * space.n
        return tuple(
            tuple(one if i == j else zero for j in range(space.r))
            for i in range(space.r)
        )

    def act(self, g, v):
        space = self.space
        comps = [space.component(v, k) for k in range(1, space.r + 1)]
        out_comps = []
        for i in range(space.r):
            acc = (0,) * space.n
            for j in range(space.r):
                acc = _ring_add(space, acc, _module_scale(space, g[i][j], comps[j]))
            out_comps.append(acc)
        return space.from_components(out_comps)

    def mul(self, g, h):
        space = self.space
        r = space.r
        out = []
        for i in range(r):
            row = []
            for j in range(r):
                acc = (0,) * space.n
                for l in range(r):
                    acc = _ring_add(space, acc, _ring_mul(space, g[i][l], h[l][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)


def group_U(space):
    return GroupU(space)


def reduction_kernel(space, n_prime):
    """Matrices over F_q[t]/(t^n) congruent to the identity mod t^(n');
    the kernel of GL_r(A/t^n) -> GL_r(A/t^n')."""
    q, r, n = space.q, space.r, space.n
    if not 1 <= n_prime <= n:
        raise ValueError("need 1 <= n' <= n")
    tail = list(itertools.product(range(q), repeat=n - n_prime))
    ring_elems_id = [(1,) + (0,) * (n_prime - 1) + t for t in tail]
    ring_elems_off = [(0,) * n_prime + t for t in tail]
    mats = []
    positions = [(i, j) for i in range(r) for j in range(r)]
    choices = [ring_elems_id if i == j else ring_elems_off for i, j in positions]
    for combo in itertools.product(*choices):
        mat = [[None] * r for _ in range(r)]
        for (i, j), val in zip(positions, combo):
            mat[i][j] = val
        mats.append(tuple(tuple(row) for row in mat))
    return mats


def count_multisets(nitems, d):
    """Multisets of size d from nitems symbols."""
    if d == 0:
        return 1
    if nitems == 0:
        return 0
    return comb(nitems + d - 1, d)
