"""Exact coefficient fields.

Every field here is a *context* object whose elements are plain values:
ints in ``[0, q)`` for finite fields, small immutable objects elsewhere.
All arithmetic goes through context methods (``add``, ``mul``, ...), so the
generic algorithms in the rest of the package can run over any of them.

Contexts over F = F_q(t) expose the image of t as ``ctx.t`` and the
underlying GF(q) as ``ctx.gf``; ``ctx.scalar(code)`` embeds a GF(q) code.
"""

from __future__ import annotations

import itertools

from .errors import (
    DivisionByZero,
    InfiniteField,
    NonInvertible,
    NotPrime,
    ReducibleModulus,
)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q):
    """Write q = p^e with p prime, or raise NotPrime."""
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1 or not _is_prime(p):
                raise NotPrime(f"{q} is not a prime power")
            return p, e
    raise NotPrime(f"{q} is not a prime power")


# ---------------------------------------------------------------------------
# univariate polynomials over an arbitrary field context
#
# A polynomial is a tuple of coefficients, lowest degree first, with no
# trailing zeros; () is the zero polynomial.

def poly_trim(F, c):
    c = list(c)
    while c and F.is_zero(c[-1]):
        c.pop()
    return tuple(c)


def poly_deg(c):
    return len(c) - 1


def poly_add(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return poly_trim(F, out)


def poly_sub(F, a, b):
    return poly_add(F, a, tuple(F.neg(x) for x in b))


def poly_mul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(F, out)


def poly_scale(F, a, c):
    return poly_trim(F, tuple(F.mul(x, c) for x in a))


def poly_divmod(F, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = F.inv(b[-1])
    while len(a) >= len(b) and a:
        if F.is_zero(a[-1]):
            a.pop()
            continue
        k = len(a) - len(b)
        c = F.mul(a[-1], inv_lead)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = F.sub(a[k + i], F.mul(c, y))
        a.pop()
    return poly_trim(F, q), poly_trim(F, a)


def poly_gcd(F, a, b):
    while b:
        _, a = poly_divmod(F, a, b)
        a, b = b, a
    if a:
        a = poly_scale(F, a, F.inv(a[-1]))  # monic
    return a


def poly_eval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


# ---------------------------------------------------------------------------
# finite fields GF(p^e), elements encoded as ints in [0, p^e)


class FiniteField:
    """GF(p^e).  Element codes are ints: base-p digit i is the coefficient
    of x^i in the polynomial representative."""

    def __init__(self, p, e=1, modulus=None, seed=0):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        self.char = p
        self.order = self.q
        self.zero = 0
        self.one = 1
        if e == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = _find_irreducible(p, e, seed)
            else:
                modulus = tuple(int(c) % p for c in modulus)
                if len(modulus) != e + 1 or modulus[-1] != 1:
                    raise ValueError("modulus must be monic of degree e")
                if not _poly_irreducible_p(p, modulus):
                    raise ReducibleModulus(
                        f"modulus {modulus} is reducible over GF({p})"
                    )
            self.modulus = modulus
        self.gf = self

    # -- digit helpers
    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.e):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _encode(self, digits):
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    # -- arithmetic on codes
    def add(self, a, b):
        p = self.p
        if self.e == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % p for x, y in zip(da, db)])

    def neg(self, a):
        p = self.p
        if self.e == 1:
            return (-a) % p
        if p == 2:
            return a
        return self._encode([(-x) % p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p = self.p
        if self.e == 1:
            return (a * b) % p
        if a == 0 or b == 0:
            return 0
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce mod modulus
        m = self.modulus
        for k in range(len(prod) - 1, self.e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(self.e):
                    prod[k - self.e + i] = (prod[k - self.e + i] - c * m[i]) % p
        return self._encode(prod[: self.e])

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self.pow_int(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_int(self, a, k):
        if k < 0:
            return self.pow_int(self.inv(a), -k)
        out = 1
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0

    def scalar(self, code):
        return code

    def elements(self):
        return range(self.q)

    def sample(self, rng):
        return rng.randrange(self.q)

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))


def _poly_irreducible_p(p, mod):
    """Trial-division irreducibility over GF(p) for a monic coefficient
    tuple (lowest degree first)."""
    F = FiniteField(p)
    e = len(mod) - 1
    if e == 1:
        return True
    if mod[0] == 0:  # divisible by x
        return False
    for d in range(1, e // 2 + 1):
        for enc in range(p**d):
            digits = []
            a = enc
            for _ in range(d):
                a, r = divmod(a, p)
                digits.append(r)
            cand = tuple(digits) + (1,)
            _, rem = poly_divmod(F, mod, cand)
            if not rem:
                return False
    return True


def _find_irreducible(p, e, seed=0):
    """Deterministic monic irreducible of degree e over GF(p): the ones
    passing trial division, in increasing order of the integer encoding of
    the low coefficients; ``seed`` skips that many hits."""
    skip = seed
    for enc in range(p**e):
        digits = []
        a = enc
        for _ in range(e):
            a, r = divmod(a, p)
            digits.append(r)
        cand = tuple(digits) + (1,)
        if _poly_irreducible_p(p, cand):
            if skip == 0:
                return cand
            skip -= 1
    raise ReducibleModulus(f"no irreducible of degree {e} over GF({p})")


def field_create(p, e=1, modulus=None, seed=0):
    """Build GF(p^e); without an explicit modulus a deterministic
    irreducible selected from the seed is used."""
    return FiniteField(p, e, modulus=modulus, seed=seed)


def sample(field, rng):
    """Uniform field element from an explicit RNG state."""
    if getattr(field, "order", None) is None:
        raise InfiniteField(f"cannot sample uniformly from {field!r}")
    return field.sample(rng)


# ---------------------------------------------------------------------------
# rational function field F_q(t)


class RatFunc:
    """Normalized fraction of polynomials over GF(q): denominator monic,
    gcd cancelled, so equality is structural."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=None, _normalized=False):
        self.field = field
        if den is None:
            den = (field.one,)
        if _normalized:
            self.num = num
            self.den = den
            return
        num = poly_trim(field, num)
        den = poly_trim(field, den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            self.num, self.den = (), (field.one,)
            return
        g = poly_gcd(field, num, den)
        if poly_deg(g) > 0:
            num, _ = poly_divmod(field, num, g)
            den, _ = poly_divmod(field, den, g)
        c = field.inv(den[-1])
        self.num = poly_scale(field, num, c)
        self.den = poly_scale(field, den, c)

    def __add__(self, other):
        F = self.field
        return RatFunc(
            F,
            poly_add(F, poly_mul(F, self.num, other.den), poly_mul(F, other.num, self.den)),
            poly_mul(F, self.den, other.den),
        )

    def __sub__(self, other):
        F = self.field
        return RatFunc(
            F,
            poly_sub(F, poly_mul(F, self.num, other.den), poly_mul(F, other.num, self.den)),
            poly_mul(F, self.den, other.den),
        )

    def __mul__(self, other):
        F = self.field
        return RatFunc(F, poly_mul(F, self.num, other.num), poly_mul(F, self.den, other.den))

    def __truediv__(self, other):
        if not other.num:
            raise DivisionByZero("division by zero rational function")
        F = self.field
        return RatFunc(F, poly_mul(F, self.num, other.den), poly_mul(F, self.den, other.num))

    def __neg__(self):
        F = self.field
        return RatFunc(F, tuple(F.neg(c) for c in self.num), self.den, _normalized=F.p != 2)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return not self.num

    def __repr__(self):
        def fmt(p):
            if not p:
                return "0"
            parts = []
            for i, c in enumerate(p):
                if c == 0:
                    continue
                if i == 0:
                    parts.append(str(c))
                else:
                    s = "t" if i == 1 else f"t^{i}"
                    parts.append(s if c == 1 else f"{c}*{s}")
            return " + ".join(parts)

        if self.den == (self.field.one,):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


class RatFuncField:
    """The field F = F_q(t) as a context; ``t`` is the generator."""

    def __init__(self, gf):
        self.gf = gf
        self.char = gf.p
        self.order = None
        self.zero = RatFunc(gf, ())
        self.one = RatFunc(gf, (gf.one,))
        self.t = RatFunc(gf, (gf.zero, gf.one))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a.is_zero():
            raise DivisionByZero("inverse of 0")
        return self.one / a

    def div(self, a, b):
        return a / b

    def pow_int(self, a, k):
        if k < 0:
            return self.pow_int(self.inv(a), -k)
        out = self.one
        while k:
            if k & 1:
                out = out * a
            a = a * a
            k >>= 1
        return out

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.is_zero()

    def scalar(self, code):
        if code == self.gf.zero:
            return self.zero
        return RatFunc(self.gf, (code,))

    def from_poly(self, coeffs):
        """Polynomial in t from a tuple of GF(q) codes, low degree first."""
        return RatFunc(self.gf, tuple(coeffs))

    def t_power(self, k):
        """t^k for any integer k (negative allowed)."""
        if k >= 0:
            return RatFunc(self.gf, (self.gf.zero,) * k + (self.gf.one,))
        return RatFunc(self.gf, (self.gf.one,), (self.gf.zero,) * (-k) + (self.gf.one,))

    def sample(self, rng):
        raise InfiniteField("F_q(t) is infinite")

    def __repr__(self):
        return f"Frac({self.gf!r}[t])"

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and self.gf == other.gf

    def __hash__(self):
        return hash(("ratfunc", self.gf))


def ratfunc_arith(a, b, op):
    """add | mul | div on rational functions; results are normalized."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# simple extensions K[s]/(m(s)) over any field context


class ExtElem:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs  # tuple of base elements, length = degree

    def __eq__(self, other):
        if not isinstance(other, ExtElem):
            return NotImplemented
        base = self.ctx.base
        return all(base.eq(x, y) for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        name = self.ctx.name
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.ctx.base.is_zero(c):
                continue
            v = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
            parts.append(f"({c!r}){v}" if v else repr(c))
        return " + ".join(parts) if parts else "0"


class ExtensionField:
    """Arithmetic in base[s]/(modulus).  The modulus need not be checked
    irreducible up front; a non-unit inversion raises NonInvertible, which
    callers use to detect reducibility in field mode."""

    def __init__(self, base, name, modulus):
        # modulus: tuple of base elements, lowest degree first, monic
        self.base = base
        self.name = name
        modulus = poly_trim(base, tuple(modulus))
        if poly_deg(modulus) < 1:
            raise ValueError("modulus must have degree >= 1")
        if not base.eq(modulus[-1], base.one):
            raise ValueError("modulus must be monic")
        self.modulus = modulus
        self.deg = poly_deg(modulus)
        self.char = base.char
        self.order = None if base.order is None else base.order**self.deg
        self.gf = base.gf
        self.zero = self._make(())
        self.one = self._make((base.one,))
        self.gen = self._make((base.zero, base.one)) if self.deg > 1 else self._make(
            (base.neg(modulus[0]),)
        )
        if getattr(base, "t", None) is not None:
            self.t = self.embed(base.t)
        else:
            self.t = None

    def _make(self, coeffs):
        coeffs = tuple(coeffs) + (self.base.zero,) * (self.deg - len(coeffs))
        return ExtElem(self, coeffs[: self.deg])

    def embed(self, x):
        return self._make((x,))

    def add(self, a, b):
        B = self.base
        return ExtElem(self, tuple(B.add(x, y) for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a, b):
        B = self.base
        return ExtElem(self, tuple(B.sub(x, y) for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a):
        B = self.base
        return ExtElem(self, tuple(B.neg(x) for x in a.coeffs))

    def mul(self, a, b):
        B = self.base
        pa = poly_trim(B, a.coeffs)
        pb = poly_trim(B, b.coeffs)
        prod = poly_mul(B, pa, pb)
        _, rem = poly_divmod(B, prod, self.modulus)
        return self._make(rem)

    def inv(self, a):
        B = self.base
        pa = poly_trim(B, a.coeffs)
        if not pa:
            raise DivisionByZero("inverse of 0")
        # extended euclid: find u with u*pa = gcd mod modulus
        r0, r1 = self.modulus, pa
        s0, s1 = (), (B.one,)
        while r1:
            q, r = poly_divmod(B, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(B, s0, poly_mul(B, q, s1))
        if poly_deg(r0) != 0:
            raise NonInvertible(
                f"gcd with modulus has degree {poly_deg(r0)}; modulus is reducible"
            )
        return self._make(poly_scale(B, s0, B.inv(r0[0])))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_int(self, a, k):
        if k < 0:
            return self.pow_int(self.inv(a), -k)
        out = self.one
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return all(self.base.is_zero(c) for c in a.coeffs)

    def scalar(self, code):
        return self.embed(self.base.scalar(code))

    def sample(self, rng):
        if self.order is None:
            raise InfiniteField("cannot sample from an infinite extension")
        return self._make(tuple(self.base.sample(rng) for _ in range(self.deg)))

    def elements(self):
        if self.order is None:
            raise InfiniteField("infinite extension")
        for combo in itertools.product(list(self.base.elements()), repeat=self.deg):
            yield self._make(combo)

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/(deg {self.deg})"


def ext_invert(field, x):
    """Inverse in an ExtensionField; NonInvertible flags a reducible modulus."""
    return field.inv(x)


# ---------------------------------------------------------------------------
# purely transcendental extensions base(u_1, ..., u_k)

def _mp_add(B, a, b):
    out = dict(a)
    for e, c in b.items():
        s = B.add(out.get(e, B.zero), c)
        if B.is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _mp_mul(B, a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = B.add(out.get(e, B.zero), B.mul(ca, cb))
            if B.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
    return out


def _mp_neg(B, a):
    return {e: B.neg(c) for e, c in a.items()}


class TransElem:
    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den):
        self.ctx = ctx
        self.num = num
        self.den = den

    def __eq__(self, other):
        if not isinstance(other, TransElem):
            return NotImplemented
        B = self.ctx.base
        lhs = _mp_mul(B, self.num, other.den)
        rhs = _mp_mul(B, other.num, self.den)
        return not _mp_add(B, lhs, _mp_neg(B, rhs))

    def __repr__(self):
        names = self.ctx.names

        def fmt(poly):
            if not poly:
                return "0"
            parts = []
            for e, c in sorted(poly.items()):
                mono = "*".join(
                    (names[i] if k == 1 else f"{names[i]}^{k}")
                    for i, k in enumerate(e)
                    if k
                )
                parts.append(f"({c!r})" + (f"*{mono}" if mono else ""))
            return " + ".join(parts)

        return f"({fmt(self.num)})/({fmt(self.den)})"


class TranscendentalField:
    """Fractions of sparse polynomials in u_1..u_k over the base field.
    No multivariate gcd is attempted; equality is by cross-multiplication,
    with a scalar normalization that keeps the denominator's leading
    coefficient equal to 1."""

    def __init__(self, base, names):
        self.base = base
        self.names = tuple(names)
        self.k = len(self.names)
        self.char = base.char
        self.order = None
        self.gf = base.gf
        zero_exp = (0,) * self.k
        self.zero = TransElem(self, {}, {zero_exp: base.one})
        self.one = TransElem(self, {zero_exp: base.one}, {zero_exp: base.one})
        if getattr(base, "t", None) is not None:
            self.t = self.embed(base.t)
        else:
            self.t = None

    def _make(self, num, den):
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return self.zero
        lead = max(den)
        c = den[lead]
        if not self.base.eq(c, self.base.one):
            ci = self.base.inv(c)
            num = {e: self.base.mul(v, ci) for e, v in num.items()}
            den = {e: self.base.mul(v, ci) for e, v in den.items()}
        return TransElem(self, num, den)

    def embed(self, x):
        if self.base.is_zero(x):
            return self.zero
        return TransElem(self, {(0,) * self.k: x}, {(0,) * self.k: self.base.one})

    def generator(self, i):
        e = tuple(1 if j == i else 0 for j in range(self.k))
        return TransElem(self, {e: self.base.one}, {(0,) * self.k: self.base.one})

    def add(self, a, b):
        B = self.base
        num = _mp_add(B, _mp_mul(B, a.num, b.den), _mp_mul(B, b.num, a.den))
        return self._make(num, _mp_mul(B, a.den, b.den))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return TransElem(self, _mp_neg(self.base, a.num), a.den)

    def mul(self, a, b):
        B = self.base
        return self._make(_mp_mul(B, a.num, b.num), _mp_mul(B, a.den, b.den))

    def inv(self, a):
        if not a.num:
            raise DivisionByZero("inverse of 0")
        return self._make(a.den, a.num)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_int(self, a, k):
        if k < 0:
            return self.pow_int(self.inv(a), -k)
        out = self.one
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return not a.num

    def scalar(self, code):
        return self.embed(self.base.scalar(code))

    def sample(self, rng):
        raise InfiniteField("transcendental extensions are infinite")

    def __repr__(self):
        return f"{self.base!r}({', '.join(self.names)})"
