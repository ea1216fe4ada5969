import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from quatsel.padic import INFINITE_PLACE, legendre_symbol
from quatsel.quatalg import (
    CoordAlgebra,
    LocalModel,
    QuaternionAlgebra,
    choose_eps,
    elem_discriminant,
    local_model,
)

M2 = QuaternionAlgebra.matrix_algebra()


class TestGlobalElements:
    def test_trace_norm_of_one(self):
        assert M2.one.trace() == 2
        assert M2.one.norm() == 1

    def test_matrix_example(self):
        p = 7
        y = M2.matrix([0, 1, p, 0])
        assert y.trace() == 0
        assert y.norm() == -p
        assert elem_discriminant(y) == 4 * p

    def test_symbol_trace_norm(self):
        H = QuaternionAlgebra.symbol(-1, -1)
        i = H.element([0, 1, 0, 0])
        j = H.element([0, 0, 1, 0])
        k = i * j
        assert k.coords == (0, 0, 0, 1)
        assert (j * i).coords == (0, 0, 0, -1)
        assert i.norm() == 1 and i.trace() == 0
        assert (i * i).coords == (-1, 0, 0, 0)

    @settings(max_examples=50)
    @given(st.lists(st.fractions(min_value=-5, max_value=5), min_size=8, max_size=8))
    def test_norm_multiplicative_symbol(self, cs):
        H = QuaternionAlgebra.symbol(-1, 3)
        x = H.element(cs[:4])
        y = H.element(cs[4:])
        assert (x * y).norm() == x.norm() * y.norm()

    @settings(max_examples=50)
    @given(st.lists(st.integers(-9, 9), min_size=4, max_size=4),
           st.sampled_from(["m", "s"]))
    def test_cayley_hamilton(self, cs, kind):
        A = M2 if kind == "m" else QuaternionAlgebra.symbol(2, -5)
        y = A.element(cs)
        lhs = y * y - y.scale(y.trace()) + A.one.scale(y.norm())
        assert lhs.is_zero()

    def test_conjugation_identities(self):
        A = QuaternionAlgebra.symbol(-2, 7)
        y = A.element([1, 2, 3, 4])
        assert (y + y.conjugate()).coords == A.one.scale(y.trace()).coords
        assert (y * y.conjugate()).coords == A.one.scale(y.norm()).coords


class TestRamification:
    def test_matrix_unramified(self):
        assert M2.ram_set() == []

    def test_hamilton(self):
        H = QuaternionAlgebra.symbol(-1, -1)
        assert H.ram_set() == [INFINITE_PLACE, 2]
        assert not H.is_split_at(2)
        assert H.is_split_at(3)

    def test_split_symbol(self):
        # a = 1 gives zero divisors: split everywhere
        assert QuaternionAlgebra.symbol(1, 5).ram_set() == []

    @settings(max_examples=100)
    @given(st.integers(-50, 50), st.integers(-50, 50))
    def test_even_ramification(self, a, b):
        if a == 0 or b == 0:
            return
        assert len(QuaternionAlgebra.symbol(a, b).ram_set()) % 2 == 0


class TestLocalModel:
    def test_split_basis_matches_standard(self):
        m = local_model(M2, 5, eps=0, pi=5, N=4)
        assert m.x1 == (1, 0, 0, 0)
        assert m.x2 == (0, 1, 5, 0)
        assert m.x3 == (0, 1, 0, 0)
        assert m.check_relations()

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
    def test_ramified_relations(self, p):
        m = LocalModel(p, 6, split=False, eps=choose_eps(p))
        assert m.check_relations()
        # 1 - 4 eps is a non-square unit
        assert legendre_symbol(1 - 4 * m.eps, p) == -1

    def test_eps_choice_rejects_nonunit(self):
        # 1-4*eps must be a unit: eps=1 fails at p=3 since 1-4 = -3
        with pytest.raises(ValueError):
            LocalModel(3, 4, split=False, eps=1)
        m = LocalModel(3, 4, split=False, eps=choose_eps(3))
        assert m.eps % 3 == 2  # 1-4*2 = -7 ≡ 2 mod 3, non-square

    def test_split_rejects_bad_eps(self):
        with pytest.raises(ValueError):
            LocalModel(5, 4, split=True, eps=2)

    @pytest.mark.parametrize("p,split", [(5, True), (3, False), (7, False)])
    def test_norm_of_x_alpha_beta(self, p, split):
        # Nr(x_ab) = a^2 eps - pi (1 + b + eps b^2) for x_ab = a x1 + x2 + b x3
        N = 5
        eps = 0 if split else choose_eps(p)
        m = LocalModel(p, N, split=split, eps=eps)
        q = p ** N
        for alpha, beta in [(0, 0), (p, 1), (0, 2), (2 * p, p + 1)]:
            xab = m.coords_to_mat((0, alpha, 1, beta))
            want = (alpha * alpha * eps - p * (1 + beta + eps * beta * beta)) % q
            assert m.mat_norm(xab) == want
            assert m.mat_trace(xab) == alpha % q
            dd = (m.mat_trace(xab) ** 2 - 4 * m.mat_norm(xab)) % q
            want_d = (alpha ** 2 * (1 - 4 * eps)
                      + 4 * p * (1 + beta + eps * beta ** 2)) % q
            assert dd == want_d


class TestCoordAlgebra:
    @pytest.mark.parametrize("p,split", [(5, True), (5, False), (3, False), (7, True)])
    def test_agrees_with_matrix_model(self, p, split):
        N = 4
        eps = 0 if split else choose_eps(p)
        alg = CoordAlgebra(p, N, eps)
        m = LocalModel(p, N, split=split, eps=eps)
        rng = random.Random(7)
        q = p ** N
        for _ in range(60):
            u = tuple(rng.randrange(q) for _ in range(4))
            v = tuple(rng.randrange(q) for _ in range(4))
            mu, mv = m.coords_to_mat(u), m.coords_to_mat(v)
            assert m.coords_to_mat(alg.mul(u, v)) == m.mat_mul(mu, mv)
            assert alg.trace(u) == m.mat_trace(mu)
            assert alg.norm(u) == m.mat_norm(mu)
            assert m.coords_to_mat(alg.conj(u)) == m.mat_conj(mu)

    def test_associativity_random(self):
        alg = CoordAlgebra(3, 5, choose_eps(3))
        rng = random.Random(3)
        q = 3 ** 5
        for _ in range(80):
            u, v, w = (tuple(rng.randrange(q) for _ in range(4)) for _ in range(3))
            assert alg.mul(alg.mul(u, v), w) == alg.mul(u, alg.mul(v, w))

    def test_cayley_hamilton_mod(self):
        alg = CoordAlgebra(7, 4, 0)
        rng = random.Random(11)
        q = 7 ** 4
        for _ in range(50):
            u = tuple(rng.randrange(q) for _ in range(4))
            lhs = alg.sub(alg.mul(u, u), alg.scale(alg.trace(u), u))
            lhs = alg.add(lhs, alg.scale(alg.norm(u), alg.one))
            assert lhs == (0, 0, 0, 0)

    def test_inverse(self):
        alg = CoordAlgebra(5, 4, 0)
        u = (1, 3, 5, 1)
        assert alg.is_unit_norm(u)
        assert alg.mul(u, alg.inv(u)) == alg.one
