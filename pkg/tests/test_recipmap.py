import itertools
import random

import pytest

from recipalg.errors import NonAdditive, NotSubmodule, UnknownIdentity
from recipalg.fields import ExtensionField, RatFunc, RatFuncField, field_create
from recipalg.levelmod import (
    FqSubspace,
    LinearMapFq,
    ModuleSpace,
    inclusion_map,
    plain_space,
    subspace_maps,
)
from recipalg.recipmap import (
    IDENTITY_NAMES,
    RecipMap,
    check_a_axioms,
    check_fq_axioms,
    exp_poly,
    fiber_class,
    pullback,
    push_general,
    push_quot,
    push_zero,
    run_identity_suite,
    verify_identity,
)


def carlitz_level_t():
    """Carlitz level-(t) map over F = F_2(t): rho([t^-1]) = 1/t."""
    space = ModuleSpace(2, 1, 1)
    F = RatFuncField(field_create(2))
    return RecipMap.from_table(space, F, {(1,): F.inv(F.t)}), F


def carlitz_level_t2():
    """Carlitz level-(t^2) over K = F_2(t)[s]/(s^2 + t s + t)."""
    space = ModuleSpace(2, 1, 2)
    F = RatFuncField(field_create(2))
    K = ExtensionField(F, "s", (F.t, F.t, F.one))
    s = K.gen
    t = K.t
    table = {
        (1, 0): K.inv(t),            # rho([t^-1]) = 1/t
        (0, 1): K.inv(s),            # rho([t^-2]) = 1/s
        (1, 1): K.inv(K.add(s, t)),  # rho([t^-2 + t^-1]) = 1/(s+t)
    }
    return RecipMap.from_table(space, K, table), K


class TestAxioms:
    def test_universal_passes(self):
        rho = RecipMap.universal_map(plain_space(2, 2))
        assert check_fq_axioms(rho).ok

    def test_from_linear_passes(self):
        # injective linear map into F_2(t): x -> t, y -> t^2 (+ sums)
        F = RatFuncField(field_create(2))
        space = plain_space(2, 2)
        t = F.t
        t2 = F.mul(t, t)
        lam = {(1, 0): t, (0, 1): t2, (1, 1): F.add(t, t2)}
        rho = RecipMap.from_linear(space, F, lam)
        assert check_fq_axioms(rho).ok

    def test_perturbed_table_fails(self):
        F = RatFuncField(field_create(2))
        space = plain_space(2, 2)
        t = F.t
        t2 = F.mul(t, t)
        lam = {(1, 0): t, (0, 1): t2, (1, 1): F.add(t, t2)}
        rho = RecipMap.from_linear(space, F, lam)
        rho.values[(1, 1)] = F.add(rho.values[(1, 1)], F.one)
        rep = check_fq_axioms(rho)
        assert not rep.ok
        assert any(kind == "a" for kind, *_ in rep.violations)

    def test_n1_maps_are_a_reciprocal(self):
        rho, _ = carlitz_level_t()
        assert check_a_axioms(rho).ok

    def test_carlitz_level_t2_is_a_reciprocal(self):
        rho, _ = carlitz_level_t2()
        assert check_a_axioms(rho).ok

    def test_bad_level_t2_table_fails(self):
        # (a, b, c) = (1/t, 1, 1) satisfies the F_q axioms but t*a != b + c
        space = ModuleSpace(2, 1, 2)
        F = RatFuncField(field_create(2))
        table = {(1, 0): F.inv(F.t), (0, 1): F.one, (1, 1): F.one}
        rho = RecipMap.from_table(space, F, table)
        rep = check_a_axioms(rho)
        assert not rep.ok


class TestFunctoriality:
    def test_pullback_universal_to_line(self):
        space = plain_space(2, 2)
        rho = RecipMap.universal_map(space)
        line = FqSubspace(space, [(1, 0)])
        i = inclusion_map(line)
        res = pullback(rho, i)
        assert check_fq_axioms(res).ok
        assert res.value((1,)) == rho.value((1, 0))

    def test_push_zero_then_pullback_roundtrip(self):
        space = plain_space(2, 2)
        sub = FqSubspace(space, [(0, 1)])
        i = inclusion_map(sub)
        rho_small = pullback(RecipMap.universal_map(space), i)
        big = push_zero(rho_small, i)
        back = pullback(big, i)
        R = rho_small.ring
        assert all(R.eq(back.value(v), rho_small.value(v))
                   for v in back.space.nonzero_elements())
        assert check_fq_axioms(big).ok

    def test_push_zero_off_image_is_zero(self):
        space = plain_space(2, 2)
        sub = FqSubspace(space, [(0, 1)])
        i = inclusion_map(sub)
        rho_small = pullback(RecipMap.universal_map(space), i)
        big = push_zero(rho_small, i)
        assert big.ring.is_zero(big.value((1, 0)))
        assert big.ring.is_zero(big.value((1, 1)))

    def test_push_quot_formula(self):
        space = plain_space(2, 2)
        rho = RecipMap.universal_map(space)
        sub = FqSubspace(space, [(0, 1)])  # span(e2)
        _, p, _ = subspace_maps(space, sub)
        pushed = push_quot(rho, p)
        R = rho.ring
        img = p.apply((1, 0))
        expected = R.add(rho.value((1, 0)), rho.value((1, 1)))
        assert R.eq(pushed.value(img), expected)
        assert check_fq_axioms(pushed).ok

    def test_push_quot_identity(self):
        space = plain_space(2, 2)
        rho = RecipMap.universal_map(space)
        _, p, _ = subspace_maps(space, FqSubspace(space, []))
        pushed = push_quot(rho, p)
        for v in space.nonzero_elements():
            assert rho.ring.eq(pushed.value(p.apply(v)), rho.value(v))

    def test_push_general_matches_factorization(self):
        space = plain_space(2, 2)
        rho = RecipMap.universal_map(space)
        # f: V -> V with image = span(e1): (a, b) -> (a+b, 0)
        f = LinearMapFq(space, space, [(1, 0), (1, 0)])
        pushed = push_general(rho, f)
        # factor: p onto span(e1) coordinates, then include
        sub = FqSubspace(space, [(1, 1)])  # kernel of f
        _, p, _ = subspace_maps(space, sub)
        via_quot = push_quot(rho, p)
        img_sub = FqSubspace(space, [(1, 0)])
        i = inclusion_map(img_sub)
        via_both = push_zero(via_quot, LinearMapFq(via_quot.space, space, [(1, 0)]))
        R = rho.ring
        for v in space.nonzero_elements():
            assert R.eq(pushed.value(v), via_both.value(v))

    def test_section_pushforward_is_identity(self):
        space = plain_space(2, 2)
        rho = RecipMap.universal_map(space)
        sub = FqSubspace(space, [(0, 1)])
        _, p, j = subspace_maps(space, sub)
        pushed = push_quot(rho, p)
        back = push_general(pushed, j)  # j_* then p_* = id on maps
        again = push_quot(back, p)
        R = rho.ring
        for w in p.dst.nonzero_elements():
            assert R.eq(again.value(w), pushed.value(w))

    def test_push_quot_fiberwise_invertible(self):
        # concrete fiberwise invertible map stays fiberwise invertible
        F = RatFuncField(field_create(2))
        space = plain_space(2, 2)
        t = F.t
        t2 = F.mul(t, t)
        lam = {(1, 0): t, (0, 1): t2, (1, 1): F.add(t, t2)}
        rho = RecipMap.from_linear(space, F, lam)
        sub = FqSubspace(space, [(0, 1)])
        _, p, _ = subspace_maps(space, sub)
        pushed = push_quot(rho, p)
        assert pushed.is_fiberwise_invertible()


class TestExpPoly:
    def test_single_point(self):
        rho, F = carlitz_level_t()
        e = exp_poly(rho)
        # X - X^2/(1/t)^-1 ... e = X (1 - X/t): tau form (1, -1/t)
        assert e.coeffs == [F.one, F.neg(F.inv(F.t))]

    def test_universal_dim2_additive(self):
        rho = RecipMap.universal_map(plain_space(2, 2))
        e = exp_poly(rho)
        assert e.tau_degree() == 2  # degree 4 polynomial, X^3 coeff zero

    def test_zero_space(self):
        rho = RecipMap.universal_map(plain_space(2, 1))
        sub = exp_poly(rho, subset=[])
        assert sub.coeffs == [rho.ring.one]  # e = X

    def test_non_reciprocal_map_can_fail(self):
        F = RatFuncField(field_create(2))
        space = plain_space(2, 2)
        table = {(1, 0): F.t, (0, 1): F.one, (1, 1): F.mul(F.t, F.t)}
        rho = RecipMap.from_table(space, F, table)
        assert not check_fq_axioms(rho).ok
        with pytest.raises(NonAdditive):
            exp_poly(rho)

    def test_random_concrete_maps_additive(self):
        # 1/lambda for random injective lambda always yields tau polynomials
        rng = random.Random(42)
        F = RatFuncField(field_create(3))
        space = plain_space(3, 2)
        count = 0
        while count < 25:
            imgs = []
            for _ in range(2):
                coeffs = tuple(rng.randrange(3) for _ in range(3))
                imgs.append(RatFunc(F.gf, coeffs))
            lam = {}
            ok = True
            for v in space.nonzero_elements():
                acc = F.zero
                for c, img in zip(v, imgs):
                    if c:
                        acc = F.add(acc, F.mul(F.scalar(c), img))
                if acc.is_zero():
                    ok = False
                    break
                lam[v] = acc
            if not ok:
                continue
            rho = RecipMap.from_linear(space, F, lam)
            assert check_fq_axioms(rho).ok
            exp_poly(rho)  # must not raise
            count += 1


class TestFiberClass:
    def test_full_support(self):
        rho, _ = carlitz_level_t2()
        W, lam = fiber_class(rho)
        assert W.element_set() == frozenset(rho.space.elements())
        assert W.rank == 1

    def test_zero_map(self):
        space = ModuleSpace(2, 1, 1)
        F = RatFuncField(field_create(2))
        rho = RecipMap.from_table(space, F, {(1,): F.zero})
        W, lam = fiber_class(rho)
        assert W.rank == 0

    def test_extension_by_zero_rank(self):
        rho_small, F = carlitz_level_t()
        big = ModuleSpace(2, 2, 1)
        i = LinearMapFq(rho_small.space, big, [(1, 0)])
        rho = push_zero(rho_small, i)
        W, lam = fiber_class(rho)
        assert W.rank == 1
        assert W.element_set() == frozenset({(0, 0), (1, 0)})

    def test_bad_support_raises(self):
        space = plain_space(2, 2)
        F = RatFuncField(field_create(2))
        table = {(1, 0): F.inv(F.t), (0, 1): F.inv(F.t), (1, 1): F.zero}
        rho = RecipMap.from_table(space, F, table)
        with pytest.raises(NotSubmodule):
            fiber_class(rho)


class TestIdentities:
    def test_unknown(self):
        rho = RecipMap.universal_map(plain_space(2, 1))
        with pytest.raises(UnknownIdentity):
            verify_identity("nope", rho)

    @pytest.mark.parametrize("name", IDENTITY_NAMES)
    def test_dim2_q2(self, name):
        rho = RecipMap.universal_map(plain_space(2, 2))
        ok, cex = verify_identity(name, rho)
        assert ok, cex

    @pytest.mark.parametrize("name", ["rho_a", "rho_b", "rho_c", "comp_b"])
    def test_dim2_q3(self, name):
        rho = RecipMap.universal_map(plain_space(3, 2))
        ok, cex = verify_identity(name, rho)
        assert ok, cex

    def test_rho_c_worked_example(self):
        # V = F_2^2, V' = span(x2), v = x1:
        # (1/x1 + 1/(x1+x2)) * (x1 - x1^2/x2) = 1 exactly
        space = plain_space(2, 2)
        rho = RecipMap.universal_map(space)
        sub = FqSubspace(space, [(0, 1)])
        ok, cex = verify_identity("rho_c", rho, {"subspace": sub, "v": (1, 0)})
        assert ok

    def test_comp_b_trivial_subspace(self):
        space = plain_space(2, 2)
        rho = RecipMap.universal_map(space)
        sub = FqSubspace(space, [])
        ok, _ = verify_identity("comp_b", rho, {"subspace": sub})
        assert ok

    def test_erho_b_single_point(self):
        rho = RecipMap.universal_map(plain_space(2, 1))
        ok, _ = verify_identity("erho_b", rho)
        assert ok

    def test_identity_on_concrete_map(self):
        F = RatFuncField(field_create(2))
        space = plain_space(2, 2)
        t = F.t
        t2 = F.mul(t, t)
        lam = {(1, 0): t, (0, 1): t2, (1, 1): F.add(t, t2)}
        rho = RecipMap.from_linear(space, F, lam)
        for name in ("erho_a", "rho_a", "rho_b", "rho_c", "comp_b"):
            ok, cex = verify_identity(name, rho)
            assert ok, (name, cex)

    def test_suite_runner(self):
        records = run_identity_suite(2, [1, 2])
        assert all(r["ok"] for r in records)
        assert len(records) == 2 * len(IDENTITY_NAMES)
