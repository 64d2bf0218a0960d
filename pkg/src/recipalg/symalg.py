"""Symbolic arithmetic: linear forms, sparse multivariate polynomials,
exact rationals with factored linear-form denominators, univariate
polynomials in X, and additive (tau) polynomials.

Denominators are never expanded; every denominator produced by the rest of
the package is a product of linear forms in the generators, so equality of
rationals reduces to clearing a common factored denominator and comparing
sparse numerators.  No multivariate gcd is ever needed.
"""

from __future__ import annotations

import itertools

from .errors import DenominatorVanishes, DivisionByZero, NonAdditive, NonInvertible


# ---------------------------------------------------------------------------
# linear forms over GF(q): coefficient tuples indexed by the variable list


def normalize_form(gf, vec):
    """Scale a nonzero coefficient vector so its first nonzero entry is 1.
    Returns (form, c) with vec = c * form."""
    vec = tuple(vec)
    for x in vec:
        if x != gf.zero:
            c = x
            break
    else:
        raise ValueError("zero vector is not a linear form")
    if c == gf.one:
        return vec, gf.one
    ci = gf.inv(c)
    return tuple(gf.mul(ci, x) for x in vec), c


class PolyContext:
    """Polynomial ring field[X_1, ..., X_k] with a fixed variable list."""

    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)

    def zero(self):
        return SparsePoly(self, {})

    def const(self, c):
        if self.field.is_zero(c):
            return self.zero()
        return SparsePoly(self, {(0,) * self.nvars: c})

    def one(self):
        return self.const(self.field.one)

    def var(self, i):
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return SparsePoly(self, {e: self.field.one})

    def form_poly(self, form, scalar_map):
        """The linear polynomial of a GF(q)-coefficient vector; scalar_map
        embeds GF(q) codes into the coefficient field."""
        terms = {}
        for i, c in enumerate(form):
            if c:
                e = tuple(1 if j == i else 0 for j in range(self.nvars))
                terms[e] = scalar_map(c)
        return SparsePoly(self, terms)

    def __eq__(self, other):
        return (
            isinstance(other, PolyContext)
            and self.field == other.field
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.field, self.names))


class SparsePoly:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms  # {exponent tuple: nonzero coefficient}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        F = self.ctx.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return SparsePoly(self.ctx, out)

    def __neg__(self):
        F = self.ctx.field
        return SparsePoly(self.ctx, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.ctx.field
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = F.add(out.get(e, F.zero), F.mul(ca, cb))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return SparsePoly(self.ctx, out)

    def scale(self, c):
        F = self.ctx.field
        if F.is_zero(c):
            return self.ctx.zero()
        return SparsePoly(self.ctx, {e: F.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, SparsePoly) and (self - other).is_zero()

    def frobenius(self, q, i):
        """Termwise x -> x^(q^i); valid because q^i is a power of char."""
        F = self.ctx.field
        k = q**i
        return SparsePoly(
            self.ctx,
            {
                tuple(x * k for x in e): F.pow_int(c, k)
                for e, c in self.terms.items()
            },
        )

    def eval(self, point, coeff_map, field):
        """Value at a point (list of field elements), with coeff_map taking
        coefficients into the target field."""
        acc = field.zero
        for e, c in self.terms.items():
            term = coeff_map(c)
            for i, k in enumerate(e):
                if k:
                    term = field.mul(term, field.pow_int(point[i], k))
            acc = field.add(acc, term)
        return acc

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ctx.names
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}")
                for i, k in enumerate(e)
                if k
            )
            parts.append(f"({c!r})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def divide_by_linear_form(poly, form, scalar_map):
    """Exact division of a SparsePoly by the homogeneous linear form;
    returns the quotient, or None when not divisible."""
    ctx = poly.ctx
    F = ctx.field
    pivot = next(i for i, c in enumerate(form) if c)
    c0 = scalar_map(form[pivot])
    # mbar = c0*X_pivot - form  (so form = c0*X_pivot - mbar)
    rest = {}
    for i, c in enumerate(form):
        if c and i != pivot:
            e = tuple(1 if j == i else 0 for j in range(ctx.nvars))
            rest[e] = F.neg(scalar_map(c))
    mbar = SparsePoly(ctx, rest)
    # split poly by the exponent of the pivot variable
    layers = {}
    for e, c in poly.terms.items():
        k = e[pivot]
        stripped = tuple(0 if j == pivot else x for j, x in enumerate(e))
        layers.setdefault(k, {})[stripped] = c
    if not layers:
        return ctx.zero()
    K = max(layers)
    A = {k: SparsePoly(ctx, t) for k, t in layers.items()}
    zero = ctx.zero()
    c0i = F.inv(c0)
    b = {}
    bk = zero
    for k in range(K, 0, -1):
        bk = (A.get(k, zero) + bk * mbar).scale(c0i)
        b[k - 1] = bk
    rem = A.get(0, zero) + bk * mbar
    if not rem.is_zero():
        return None
    out = {}
    for k, pol in b.items():
        for e, c in pol.terms.items():
            e2 = tuple(x + (k if j == pivot else 0) for j, x in enumerate(e))
            out[e2] = c
    return SparsePoly(ctx, out)


# ---------------------------------------------------------------------------
# exact rationals with factored denominators


class FracContext:
    """Ring context for FactoredRational values over a PolyContext.

    The GF(q) used for linear-form coefficients is ``pctx.field.gf``; the
    coefficient field itself may be GF(q), F_q(t), or an extension.
    """

    def __init__(self, pctx):
        self.pctx = pctx
        self.field = pctx.field
        self.gf = pctx.field.gf
        self.q = self.gf.q
        self.char = pctx.field.char
        self.zero = FactoredRational(self, pctx.zero(), {})
        self.one = FactoredRational(self, pctx.one(), {})
        t = getattr(pctx.field, "t", None)
        self.t = None if t is None else self.from_coeff(t)

    def scalar(self, code):
        return FactoredRational(self, self.pctx.const(self.field.scalar(code)), {})

    def from_coeff(self, c):
        return FactoredRational(self, self.pctx.const(c), {})

    def from_poly(self, poly):
        return FactoredRational(self, poly, {})

    def gen_inverse(self, vec):
        """1 / (linear form with GF(q) coefficient vector vec)."""
        form, c = normalize_form(self.gf, vec)
        num = self.pctx.const(self.field.scalar(self.gf.inv(c)))
        return FactoredRational(self, num, {form: 1})

    def gen_linear(self, vec):
        """The linear form itself as a rational."""
        return FactoredRational(
            self, self.pctx.form_poly(vec, self.field.scalar), {}
        )

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inv()

    def div(self, a, b):
        return a * b.inv()

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.num.is_zero()

    def pow_int(self, a, k):
        return a.pow_int(k)

    def frobenius(self, a, i):
        return a.frobenius(i)

    def __eq__(self, other):
        return isinstance(other, FracContext) and self.pctx == other.pctx

    def __hash__(self):
        return hash(("frac", self.pctx))


class FactoredRational:
    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den):
        self.ctx = ctx
        if num.is_zero():
            den = {}
        self.num = num
        self.den = den  # {normalized form: multiplicity >= 1}

    def _reduced(self):
        """Cancel denominator forms that divide the numerator."""
        if not self.den or self.num.is_zero():
            return self
        num = self.num
        den = dict(self.den)
        changed = False
        for form in list(den):
            while den.get(form, 0) > 0:
                quot = divide_by_linear_form(num, form, self.ctx.field.scalar)
                if quot is None:
                    break
                num = quot
                den[form] -= 1
                if den[form] == 0:
                    del den[form]
                changed = True
        if not changed:
            return self
        return FactoredRational(self.ctx, num, den)

    def __mul__(self, other):
        den = dict(self.den)
        for f, m in other.den.items():
            den[f] = den.get(f, 0) + m
        return FactoredRational(self.ctx, self.num * other.num, den)._reduced()

    def _with_common_den(self, other):
        den = {}
        for f in set(self.den) | set(other.den):
            den[f] = max(self.den.get(f, 0), other.den.get(f, 0))
        pctx = self.ctx.pctx
        scal = self.ctx.field.scalar

        def complement(num, own):
            for f, m in den.items():
                extra = m - own.get(f, 0)
                if extra:
                    fp = pctx.form_poly(f, scal)
                    for _ in range(extra):
                        num = num * fp
            return num

        return complement(self.num, self.den), complement(other.num, other.den), den

    def __add__(self, other):
        a, b, den = self._with_common_den(other)
        return FactoredRational(self.ctx, a + b, den)._reduced()

    def __neg__(self):
        return FactoredRational(self.ctx, -self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, FactoredRational):
            return NotImplemented
        a, b, _ = self._with_common_den(other)
        return (a - b).is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def inv(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of 0")
        if len(self.num.terms) != 1:
            raise NonInvertible(
                "can only invert rationals with monomial numerator"
            )
        ctx = self.ctx
        pctx = ctx.pctx
        F = ctx.field
        (exp, coeff), = self.num.terms.items()
        num = pctx.const(F.inv(coeff))
        for f, m in self.den.items():
            fp = pctx.form_poly(f, F.scalar)
            for _ in range(m):
                num = num * fp
        den = {}
        for i, k in enumerate(exp):
            if k:
                form = tuple(
                    ctx.gf.one if j == i else ctx.gf.zero for j in range(pctx.nvars)
                )
                den[form] = k
        return FactoredRational(ctx, num, den)

    def pow_int(self, k):
        if k < 0:
            return self.inv().pow_int(-k)
        out = self.ctx.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def frobenius(self, i):
        """x -> x^(q^i), termwise on the numerator."""
        k = self.ctx.q**i
        return FactoredRational(
            self.ctx,
            self.num.frobenius(self.ctx.q, i),
            {f: m * k for f, m in self.den.items()},
        )

    def eval(self, point, coeff_map, field):
        """Exact value at a point; raises DenominatorVanishes when a
        denominator form is zero there."""
        den_val = field.one
        for f, m in self.den.items():
            v = field.zero
            for i, c in enumerate(f):
                if c:
                    v = field.add(v, field.mul(field.scalar(c), point[i]))
            if field.is_zero(v):
                raise DenominatorVanishes(f"form {f} vanishes at the point")
            den_val = field.mul(den_val, field.pow_int(v, m))
        num_val = self.num.eval(point, coeff_map, field)
        return field.div(num_val, den_val)

    def __repr__(self):
        if not self.den:
            return repr(self.num)
        names = self.ctx.pctx.names
        dens = []
        for f, m in sorted(self.den.items()):
            s = "+".join(
                (names[i] if c == 1 else f"{c}{names[i]}")
                for i, c in enumerate(f)
                if c
            )
            dens.append(f"({s})" + (f"^{m}" if m > 1 else ""))
        return f"({self.num!r})/" + "".join(dens)


def fr_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def fr_eval(a, point, field, t_value=None):
    """Evaluate a FactoredRational at a point of ``field``.

    ``point`` maps variable index to field element (list or dict).  When the
    coefficient field is F_q(t) a ``t_value`` must be supplied.
    """
    if isinstance(point, dict):
        point = [point[i] for i in range(a.ctx.pctx.nvars)]
    coeff_field = a.ctx.field
    if coeff_field is field or coeff_field == field:
        coeff_map = lambda c: c
    elif hasattr(coeff_field, "num") or coeff_field.__class__.__name__ == "RatFuncField":
        if t_value is None:
            raise ValueError("t_value required for F_q(t) coefficients")
        coeff_map = lambda c: ratfunc_value(c, field, t_value)
    else:
        coeff_map = field.scalar
    return a.eval(point, coeff_map, field)


def ratfunc_value(rf, field, t_value):
    """Evaluate a RatFunc at t = t_value inside ``field``."""
    num = field.zero
    for c in reversed(rf.num):
        num = field.add(field.mul(num, t_value), field.scalar(c))
    den = field.zero
    for c in reversed(rf.den):
        den = field.add(field.mul(den, t_value), field.scalar(c))
    if field.is_zero(den):
        raise DenominatorVanishes("coefficient denominator vanishes at t")
    return field.div(num, den)


# ---------------------------------------------------------------------------
# univariate and additive polynomials


class UniPoly:
    """Polynomial in X over a ring context, coefficients low degree first."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.ring = ring
        self.coeffs = list(coeffs)

    def degree(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else R.zero
            b = other.coeffs[i] if i < len(other.coeffs) else R.zero
            out.append(R.add(a, b))
        return UniPoly(R, out)

    def __mul__(self, other):
        R = self.ring
        if not self.coeffs or not other.coeffs:
            return UniPoly(R, [])
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if R.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
        return UniPoly(R, out)

    def __eq__(self, other):
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def coeff(self, k):
        if k < len(self.coeffs):
            return self.coeffs[k]
        return self.ring.zero

    def eval(self, x):
        R = self.ring
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, x), c)
        return acc

    def __repr__(self):
        return "UniPoly(" + ", ".join(f"X^{i}: {c!r}" for i, c in enumerate(self.coeffs) if not self.ring.is_zero(c)) + ")"


def _frob(ring, q, x, i):
    if i == 0:
        return x
    if hasattr(ring, "frobenius"):
        return ring.frobenius(x, i)
    return ring.pow_int(x, q**i)


class TauPoly:
    """Additive polynomial sum u_i tau^i, tau(X) = X^q.  Multiplication is
    composition; d(f) = u_0."""

    __slots__ = ("ring", "q", "coeffs")

    def __init__(self, ring, q, coeffs):
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.ring = ring
        self.q = q
        self.coeffs = list(coeffs)

    def tau_degree(self):
        return len(self.coeffs) - 1

    def d(self):
        return self.coeffs[0] if self.coeffs else self.ring.zero

    def __add__(self, other):
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else R.zero
            b = other.coeffs[i] if i < len(other.coeffs) else R.zero
            out.append(R.add(a, b))
        return TauPoly(R, self.q, out)

    def scale(self, c):
        R = self.ring
        return TauPoly(R, self.q, [R.mul(c, u) for u in self.coeffs])

    def __eq__(self, other):
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def expand(self):
        """The underlying UniPoly, with X^(q^i) monomials."""
        R = self.ring
        if not self.coeffs:
            return UniPoly(R, [])
        deg = self.q ** (len(self.coeffs) - 1)
        out = [R.zero] * (deg + 1)
        for i, c in enumerate(self.coeffs):
            out[self.q**i] = c
        return UniPoly(R, out)

    def eval(self, x):
        R = self.ring
        acc = R.zero
        power = x  # x^(q^i)
        for i, c in enumerate(self.coeffs):
            if i > 0:
                power = R.pow_int(power, self.q)
            if not R.is_zero(c):
                acc = R.add(acc, R.mul(c, power))
        return acc

    def __repr__(self):
        return (
            "TauPoly("
            + ", ".join(
                f"tau^{i}: {c!r}"
                for i, c in enumerate(self.coeffs)
                if not self.ring.is_zero(c)
            )
            + ")"
        )


def to_tau(f, q):
    """Convert a UniPoly to tau form; NonAdditive reports the first term at
    an exponent that is not a power of q (exponent, coefficient)."""
    ring = f.ring
    powers = {}
    i, p = 0, 1
    while p <= max(f.degree(), 1):
        powers[p] = i
        i += 1
        p *= q
    coeffs = []
    for k, c in enumerate(f.coeffs):
        if ring.is_zero(c):
            continue
        if k not in powers:
            raise NonAdditive(k, c)
        i = powers[k]
        while len(coeffs) <= i:
            coeffs.append(ring.zero)
        coeffs[i] = c
    return TauPoly(ring, q, coeffs)


def tau_compose(f, g):
    """Composition f(g(X)) in the twisted polynomial ring."""
    R = f.ring
    if not f.coeffs or not g.coeffs:
        return TauPoly(R, f.q, [])
    out = [R.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if R.is_zero(a):
            continue
        for j, b in enumerate(g.coeffs):
            if R.is_zero(b):
                continue
            out[i + j] = R.add(out[i + j], R.mul(a, _frob(R, f.q, b, i)))
    return TauPoly(R, f.q, out)
