"""GF(q^m) in logarithm representation for the probabilistic rank engine.

Elements are stored as discrete logs to a fixed primitive root (the class
of x), with -1 as the zero sentinel.  Multiplication is addition mod
q^m - 1 and addition goes through a Zech logarithm table, so whole matrix
rows can be processed with vectorized numpy integer ops regardless of the
characteristic.

Table construction walks x^i through all of GF(q)[x]/(f) once, which takes
a few seconds for the largest default fields; instances are cached per
(q, m) for the process lifetime.
"""

from __future__ import annotations

import numpy as np

from .errors import RecipAlgError
from .fields import FiniteField, factor_prime_power, poly_divmod, poly_mul, poly_trim

_CACHE = {}

# above this size the exp/log/zech tables stop being practical
TABLE_LIMIT = 2**22


def _small_field(q):
    p, e = factor_prime_power(q)
    return FiniteField(p, e)


def _irreducible_candidates(gf, m):
    """Monic degree-m polynomials over GF(q), sparse tails first."""
    q = gf.q
    for enc in range(q**m):
        digits = []
        a = enc
        for _ in range(m):
            a, r = divmod(a, q)
            digits.append(r)
        yield tuple(digits) + (1,)


def _is_irreducible(gf, poly):
    m = len(poly) - 1
    if poly[0] == gf.zero:
        return False
    for d in range(1, m // 2 + 1):
        for enc in range(gf.q**d):
            digits = []
            a = enc
            for _ in range(d):
                a, r = divmod(a, gf.q)
                digits.append(r)
            cand = tuple(digits) + (gf.one,)
            _, rem = poly_divmod(gf, poly, cand)
            if not rem:
                return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _x_is_primitive(gf, modulus, Q):
    """Order of x in (GF(q)[x]/(f))^* equals Q - 1."""
    x = (gf.zero, gf.one)

    def powmod(base, k):
        out = (gf.one,)
        while k:
            if k & 1:
                _, out = poly_divmod(gf, poly_mul(gf, out, base), modulus)
            _, base = poly_divmod(gf, poly_mul(gf, base, base), modulus)
            k >>= 1
        return out

    for ell in _prime_factors(Q - 1):
        if powmod(x, (Q - 1) // ell) == (gf.one,):
            return False
    return True


def _find_primitive_modulus(gf, m):
    Q = gf.q**m
    for cand in _irreducible_candidates(gf, m):
        if _is_irreducible(gf, cand) and _x_is_primitive(gf, cand, Q):
            return cand
    raise RecipAlgError(f"no primitive modulus of degree {m} over GF({gf.q})")


def _build_exp_table_char2(modulus, m):
    # GF(2^m): codes are bitmasks, multiplication by x is shift + reduce
    Q = 1 << m
    modmask = 0
    for i, c in enumerate(modulus[:-1]):
        if c:
            modmask |= 1 << i
    full = Q | modmask
    out = np.empty(Q - 1, dtype=np.int64)
    v = 1
    for i in range(Q - 1):
        out[i] = v
        v <<= 1
        if v & Q:
            v ^= full
    return out


def _build_exp_table_generic(gf, modulus, m):
    q = gf.q
    Q = q**m
    tail = [(i, modulus[i]) for i in range(m) if modulus[i] != gf.zero]
    out = np.empty(Q - 1, dtype=np.int64)
    digits = [gf.one] + [gf.zero] * (m - 1)
    powers = [q**i for i in range(m)]
    for idx in range(Q - 1):
        code = 0
        for i in range(m):
            if digits[i]:
                code += digits[i] * powers[i]
        out[idx] = code
        top = digits[m - 1]
        digits[1:] = digits[: m - 1]
        digits[0] = gf.zero
        if top:
            for i, c in tail:
                digits[i] = gf.sub(digits[i], gf.mul(top, c))
    return out


class ZechField:
    def __init__(self, q, m):
        gf = _small_field(q)
        Q = q**m
        if Q > TABLE_LIMIT:
            raise RecipAlgError(f"GF({q}^{m}) exceeds the table limit")
        self.q = q
        self.m = m
        self.Q = Q
        self.Qm1 = Q - 1
        self.gf = gf
        self.char = gf.p
        self.modulus = _find_primitive_modulus(gf, m)
        if gf.p == 2 and gf.e == 1:
            exp = _build_exp_table_char2(self.modulus, m)
        else:
            exp = _build_exp_table_generic(gf, self.modulus, m)
        self.exp = exp
        log = np.full(Q, -1, dtype=np.int64)
        log[exp] = np.arange(Q - 1, dtype=np.int64)
        self.log = log
        # zech[d] = log(1 + x^d), -1 when the sum is zero
        d0 = exp % q
        addone = np.array([gf.add(c, gf.one) for c in range(q)], dtype=np.int64)
        plus_one = exp - d0 + addone[d0]
        self.zech = log[plus_one]
        self.half = self.Qm1 // 2  # log(-1) in odd characteristic
        # logs of the constants GF(q) (codes < q)
        self.const_log = log[np.arange(q)]

    # ---- scalar helpers (log domain, -1 is zero)
    def s_from_code(self, code):
        return int(self.log[code])

    def s_mul(self, a, b):
        if a < 0 or b < 0:
            return -1
        return (a + b) % self.Qm1

    def s_inv(self, a):
        if a < 0:
            raise ZeroDivisionError("inverse of zero")
        return (-a) % self.Qm1

    def s_neg(self, a):
        if a < 0 or self.char == 2:
            return a
        return (a + self.half) % self.Qm1

    def s_add(self, a, b):
        if a < 0:
            return b
        if b < 0:
            return a
        z = int(self.zech[(b - a) % self.Qm1])
        if z < 0:
            return -1
        return (a + z) % self.Qm1

    def eval_gf_poly(self, coeffs, tlog):
        """Horner evaluation of a GF(q)-coefficient polynomial at a log
        value; returns a log."""
        acc = -1
        for c in reversed(coeffs):
            acc = self.s_add(self.s_mul(acc, tlog), self.s_from_code(c))
        return acc

    # ---- vector helpers on int64 arrays of logs
    def vmul(self, A, B):
        out = (A + B) % self.Qm1
        out[(A < 0) | (B < 0)] = -1
        return out

    def vneg(self, A):
        if self.char == 2:
            return A.copy()
        out = (A + self.half) % self.Qm1
        out[A < 0] = -1
        return out

    def vadd(self, A, B):
        d = (B - A) % self.Qm1
        z = self.zech[d]
        out = (A + z) % self.Qm1
        out[z < 0] = -1
        out = np.where(A < 0, B, out)
        out = np.where(B < 0, A, out)
        return out

    def vpoly_eval(self, coeffs, T):
        """Vector Horner: GF(q) codes as coefficients, T an array of logs."""
        acc = np.full(T.shape, -1, dtype=np.int64)
        for c in reversed(coeffs):
            acc = self.vadd(self.vmul(acc, T), np.full(T.shape, self.s_from_code(c)))
        return acc

    def rank_of_matrix(self, A):
        """Row rank by in-place elimination; A holds logs and is destroyed."""
        if A.size == 0:
            return 0
        nr, nc = A.shape
        r = 0
        for c in range(nc):
            if r == nr:
                break
            col = A[r:, c]
            nz = np.nonzero(col >= 0)[0]
            if nz.size == 0:
                continue
            p = int(nz[0]) + r
            if p != r:
                A[[r, p]] = A[[p, r]]
            if r + 1 < nr:
                piv_inv = (-int(A[r, c])) % self.Qm1
                factors = (A[r + 1 :, c] + piv_inv) % self.Qm1
                factors[A[r + 1 :, c] < 0] = -1
                prod = self.vmul(factors[:, None], A[r, c:][None, :])
                A[r + 1 :, c:] = self.vadd(A[r + 1 :, c:], self.vneg(prod))
            r += 1
        return r


def get_zech_field(q, m):
    key = (q, m)
    if key not in _CACHE:
        _CACHE[key] = ZechField(q, m)
    return _CACHE[key]


def default_extension_degree(q):
    """Smallest m with q^m >= 2^20."""
    m = 1
    while q**m < 2**20:
        m += 1
    return m
