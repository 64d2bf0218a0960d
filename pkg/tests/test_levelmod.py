import itertools

import pytest

from recipalg.levelmod import (
    FqSubspace,
    ModuleSpace,
    all_subspaces,
    brute_force_free_submodules,
    divisors,
    echelon_subspaces,
    free_submodule_count,
    free_submodules,
    gaussian_binom,
    group_U,
    inclusion_map,
    plain_space,
    prefix_space,
    reduction_kernel,
    subspace_maps,
)


class TestTAction:
    def test_shift(self):
        V = ModuleSpace(2, 1, 2)
        v = (1, 1)  # t^-1 + t^-2
        assert V.t_mul(v) == (1, 0)

    def test_kills_level_one(self):
        V = ModuleSpace(2, 1, 2)
        assert V.t_mul((1, 0)) == (0, 0)

    def test_moves_basis_down(self):
        V = ModuleSpace(2, 2, 3)
        for k in range(1, 3):
            for nu in range(2, 4):
                assert V.t_mul(V.basis_elem(k, nu)) == V.basis_elem(k, nu - 1)

    def test_linear_and_nilpotent(self):
        V = ModuleSpace(3, 2, 2)
        for u in itertools.islice(V.elements(), 0, 40):
            for v in itertools.islice(V.elements(), 3, 43, 7):
                assert V.t_mul(V.add(u, v)) == V.add(V.t_mul(u), V.t_mul(v))
        for v in V.elements():
            assert V.t_pow_mul(v, V.n) == V.zero


def test_divisors():
    assert divisors(ModuleSpace(2, 1, 2)) == {(1, 0), (1, 1), (1, 2)}
    assert divisors(ModuleSpace(3, 1, 1)) == {(1, 0), (2, 0), (1, 1), (2, 1)}
    assert divisors(ModuleSpace(2, 1, 1)) == {(1, 0), (1, 1)}


class TestFreeSubmodules:
    @pytest.mark.parametrize(
        "q,r,n,s,expected",
        [
            (2, 2, 1, 1, 3),
            (2, 1, 2, 1, 1),
            (2, 2, 1, 2, 1),
            (2, 2, 2, 1, 6),
            (2, 2, 2, 2, 1),
            (3, 2, 1, 1, 4),
        ],
    )
    def test_counts(self, q, r, n, s, expected):
        V = ModuleSpace(q, r, n)
        subs = free_submodules(V, s)
        sets = {w.element_set() for w in subs}
        assert len(subs) == len(sets) == expected
        assert free_submodule_count(V, s) == expected

    @pytest.mark.parametrize(
        "q,r,n,s",
        [(2, 2, 1, 1), (2, 2, 1, 2), (2, 1, 2, 1), (2, 2, 2, 1), (3, 2, 1, 1),
         (2, 3, 1, 1), (2, 3, 1, 2)],
    )
    def test_against_brute_force(self, q, r, n, s):
        V = ModuleSpace(q, r, n)
        enumerated = {w.element_set() for w in free_submodules(V, s)}
        brute = brute_force_free_submodules(V, s)
        assert enumerated == brute

    def test_exact_annihilator(self):
        V = ModuleSpace(2, 1, 2)
        subs = free_submodules(V, 1)
        assert len(subs) == 1
        assert subs[0].element_set() == frozenset(V.elements())


class TestGroupU:
    def test_order_2_2_1(self):
        U = group_U(ModuleSpace(2, 2, 1))
        elems = list(U.elements())
        assert len(elems) == U.order == 2

    def test_order_2_2_2(self):
        U = group_U(ModuleSpace(2, 2, 2))
        elems = list(U.elements())
        assert len(elems) == U.order == 32

    def test_identity_action(self):
        V = ModuleSpace(2, 2, 2)
        U = group_U(V)
        g = U.identity()
        for v in V.elements():
            assert U.act(g, v) == v

    def test_closed_under_mul_and_action_is_linear(self):
        V = ModuleSpace(2, 2, 1)
        U = group_U(V)
        elems = set(U.elements())
        for g in elems:
            for h in elems:
                assert U.mul(g, h) in elems
        g = next(iter(elems))
        for u in V.elements():
            for v in V.elements():
                assert U.act(g, V.add(u, v)) == V.add(U.act(g, u), U.act(g, v))

    def test_action_commutes_with_t(self):
        V = ModuleSpace(2, 2, 2)
        U = group_U(V)
        for g in itertools.islice(U.elements(), 0, 8):
            for v in itertools.islice(V.elements(), 0, 16):
                assert U.act(g, V.t_mul(v)) == V.t_mul(U.act(g, v))

    def test_transitive_on_Ek_cosets(self):
        # U acts freely transitively on prod_k (X_{k,n} + V'_{k,n})
        V = ModuleSpace(2, 2, 2)
        U = group_U(V)
        targets = []
        for k in range(1, V.r + 1):
            base = V.basis_elem(k, V.n)
            coset = [V.add(base, w) for w in prefix_space(V, k, V.n).elements()]
            targets.append(coset)
        combos = set(itertools.product(*[map(tuple, c) for c in targets]))
        seen = set()
        for g in U.elements():
            img = tuple(U.act(g, V.basis_elem(k, V.n)) for k in range(1, V.r + 1))
            assert img in combos
            assert img not in seen  # freeness
            seen.add(img)
        assert seen == combos  # transitivity

    def test_reduction_kernel_sizes(self):
        V = ModuleSpace(2, 1, 2)
        H = reduction_kernel(V, 1)
        assert len(H) == 2
        V2 = ModuleSpace(2, 2, 2)
        H2 = reduction_kernel(V2, 1)
        assert len(H2) == 16
        U2 = set(group_U(V2).elements())
        assert all(h in U2 for h in H2)


class TestSubspaces:
    def test_prefix_space_dims(self):
        V = ModuleSpace(2, 2, 2)
        assert prefix_space(V, 1, 1).dim == 0
        sp = prefix_space(V, 2, 1)
        assert sp.element_set() == {(0, 0, 0, 0), (1, 0, 0, 0)}
        v12 = prefix_space(V, 1, 2)
        assert v12.dim == 2
        assert all(V.in_level(v, 1) for v in v12.elements())

    def test_echelon_subspace_counts(self):
        V = plain_space(2, 3)
        for s in range(4):
            subs = list(echelon_subspaces(V, s))
            assert len(subs) == gaussian_binom(3, s, 2)
            assert len({w.element_set() for w in subs}) == len(subs)
        assert len(all_subspaces(plain_space(3, 2))) == 1 + 4 + 1

    def test_subspace_maps(self):
        V = plain_space(2, 2)
        W = FqSubspace(V, [(0, 1)])  # span(e2)
        i, p, j = subspace_maps(V, W)
        assert p.apply((1, 0)) == p.apply((1, 1)) != (0,)
        for w in p.dst.elements():
            assert p.apply(j.apply(w)) == w

    def test_quotient_by_zero_and_all(self):
        V = plain_space(2, 2)
        _, p0, _ = subspace_maps(V, FqSubspace(V, []))
        imgs = {p0.apply(v) for v in V.elements()}
        assert len(imgs) == 4  # bijective
        _, pV, _ = subspace_maps(V, FqSubspace(V, [(1, 0), (0, 1)]))
        assert pV.dst.dim == 0

    def test_inclusion_map_a_linear(self):
        V = ModuleSpace(2, 2, 2)
        W = free_submodules(V, 1)[0]
        from recipalg.levelmod import LinearMapFq, plain_space as ps

        src = ModuleSpace(2, 1, 2)
        # generator g spans a rank-1 free module; i sends X_{1,nu} to t^(n-nu) g
        g = W.generators[0]
        images = [V.t_pow_mul(g, V.n - nu) for nu in range(1, V.n + 1)]
        i = LinearMapFq(src, V, images)
        assert i.is_injective()
        assert i.is_a_linear()
