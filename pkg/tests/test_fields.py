import random

import pytest

from recipalg.errors import (
    DivisionByZero,
    InfiniteField,
    NonInvertible,
    NotPrime,
    ReducibleModulus,
)
from recipalg.fields import (
    ExtensionField,
    FiniteField,
    RatFunc,
    RatFuncField,
    TranscendentalField,
    ext_invert,
    field_create,
    ratfunc_arith,
    sample,
)


def test_gf2_basics():
    F = field_create(2, 1)
    assert F.add(1, 1) == 0
    assert F.mul(1, 1) == 1
    assert F.inv(1) == 1


def test_gf4_with_modulus():
    # s^2 + s + 1: coefficients low-first (1, 1, 1); s has code 2
    F = field_create(2, 2, modulus=(1, 1, 1))
    s = 2
    assert F.mul(s, s) == F.add(s, 1)  # s*s = s + 1


def test_not_prime():
    with pytest.raises(NotPrime):
        field_create(4, 1)


def test_reducible_modulus_rejected():
    # x^2 + 1 = (x+1)^2 over GF(2)
    with pytest.raises(ReducibleModulus):
        field_create(2, 2, modulus=(1, 0, 1))


def test_default_modulus_is_deterministic():
    F1 = field_create(2, 4)
    F2 = field_create(2, 4)
    assert F1.modulus == F2.modulus


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 4), (5, 1)])
def test_field_axioms_random(p, e):
    F = field_create(p, e)
    rng = random.Random(1234)
    for _ in range(60):
        a, b, c = (F.sample(rng) for _ in range(3))
        assert F.mul(F.add(a, b), c) == F.add(F.mul(a, c), F.mul(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        if a != 0:
            assert F.mul(a, F.inv(a)) == 1
        # Frobenius is additive
        assert F.pow_int(F.add(a, b), p) == F.add(F.pow_int(a, p), F.pow_int(b, p))


def test_sampling_uniform_gf16():
    F = field_create(2, 4)
    rng = random.Random(99)
    counts = [0] * 16
    trials = 10_000
    for _ in range(trials):
        counts[F.sample(rng)] += 1
    mean = trials / 16
    sigma = (trials * (1 / 16) * (15 / 16)) ** 0.5
    for c in counts:
        assert abs(c - mean) <= 5 * sigma


def test_sample_reproducible():
    F = field_create(2, 1)
    a = F.sample(random.Random(7))
    b = F.sample(random.Random(7))
    assert a == b


def test_sample_infinite_field():
    K = RatFuncField(field_create(2))
    with pytest.raises(InfiniteField):
        sample(K, random.Random(0))


class TestRatFunc:
    def setup_method(self):
        self.gf = field_create(2)
        self.F = RatFuncField(self.gf)

    def test_char2_add(self):
        one_over_t = RatFunc(self.gf, (1,), (0, 1))
        assert ratfunc_arith(one_over_t, one_over_t, "add").is_zero()

    def test_mul(self):
        t = self.F.t
        inv_t_plus_1 = RatFunc(self.gf, (1,), (1, 1))
        out = ratfunc_arith(t, inv_t_plus_1, "mul")
        assert out == RatFunc(self.gf, (0, 1), (1, 1))

    def test_normalization_cancels_gcd(self):
        # (t^2 + t) / t -> t + 1
        x = RatFunc(self.gf, (0, 1, 1), (0, 1))
        assert x == RatFunc(self.gf, (1, 1))

    def test_normalize_idempotent(self):
        x = RatFunc(self.gf, (0, 1, 1), (0, 1))
        y = RatFunc(self.gf, x.num, x.den)
        assert x == y and y.num == x.num and y.den == x.den

    def test_div_by_zero(self):
        with pytest.raises(DivisionByZero):
            ratfunc_arith(self.F.one, self.F.zero, "div")

    def test_field_axioms_gf3_t(self):
        gf3 = field_create(3)
        F3 = RatFuncField(gf3)
        rng = random.Random(5)

        def rand_rf():
            num = tuple(rng.randrange(3) for _ in range(3))
            den = tuple(rng.randrange(3) for _ in range(2)) + (1,)
            return RatFunc(gf3, num, den)

        for _ in range(40):
            a, b, c = rand_rf(), rand_rf(), rand_rf()
            assert (a + b) * c == a * c + b * c
            if not a.is_zero():
                assert F3.mul(a, F3.inv(a)) == F3.one


class TestExtension:
    def setup_method(self):
        self.gf = field_create(2)
        self.F = RatFuncField(self.gf)
        t = self.F.t
        # K = F_2(t)[s] / (s^2 + t s + t)
        self.K = ExtensionField(self.F, "s", (t, t, self.F.one))

    def test_invert_s(self):
        s = self.K.gen
        si = ext_invert(self.K, s)
        assert self.K.mul(s, si) == self.K.one
        # s^-1 = s/t + 1
        t_inv = self.F.inv(self.F.t)
        expected = self.K.add(
            self.K.mul(self.K._make((self.F.zero, t_inv)), self.K.one), self.K.one
        )
        assert si == expected

    def test_non_invertible_detects_reducible(self):
        t = self.F.t
        # s^2 + t^2 = (s + t)^2 over F_2(t)
        K = ExtensionField(self.F, "s", (self.F.mul(t, t), self.F.zero, self.F.one))
        s_plus_t = K.add(K.gen, K.embed(t))
        with pytest.raises(NonInvertible):
            ext_invert(K, s_plus_t)

    def test_invert_one(self):
        assert ext_invert(self.K, self.K.one) == self.K.one

    def test_random_inverses_irreducible(self):
        rng = random.Random(11)
        count = 0
        while count < 100:
            num = tuple(rng.randrange(2) for _ in range(2))
            den = tuple(rng.randrange(2) for _ in range(1)) + (1,)
            a = RatFunc(self.gf, num, den)
            b = RatFunc(self.gf, tuple(rng.randrange(2) for _ in range(2)))
            x = self.K._make((a, b))
            if self.K.is_zero(x):
                continue
            assert self.K.mul(x, self.K.inv(x)) == self.K.one
            count += 1


class TestTranscendental:
    def setup_method(self):
        gf = field_create(2)
        self.F = RatFuncField(gf)
        self.K = TranscendentalField(self.F, ("u", "w"))

    def test_generators_and_inverse(self):
        u = self.K.generator(0)
        w = self.K.generator(1)
        x = self.K.add(u, w)
        xi = self.K.inv(x)
        assert self.K.mul(x, xi) == self.K.one

    def test_eq_cross_multiplication(self):
        u = self.K.generator(0)
        w = self.K.generator(1)
        # u/(u*w) == 1/w
        lhs = self.K.div(u, self.K.mul(u, w))
        rhs = self.K.inv(w)
        assert self.K.eq(lhs, rhs)

    def test_t_embeds(self):
        assert self.K.t is not None
        assert self.K.eq(self.K.mul(self.K.t, self.K.inv(self.K.t)), self.K.one)
