import itertools
import random

import pytest

from quatsel.padic import (
    ALL_SQUARE_CLASSES,
    SQ_TRIVIAL,
    SquareClass,
    legendre_symbol,
    square_class,
)
from quatsel.localbass import (
    HereditaryOrder,
    StandardBassOrder,
    hereditary_closure,
    is_unit,
    minimal_overorder,
    normalizer_norm_classes,
    normalizer_norm_classes_em1,
    order_disc_exponent,
    ramified_invariant,
    sigma0,
    sigma0_stabilizes,
    std_disc,
    std_norm,
    std_trace,
    unit_norm_classes,
    x_ab_normalizes,
)
from quatsel.quatalg import choose_eps


def make(p, n, split, alpha=0, beta=0):
    return StandardBassOrder(p, split, n, alpha, beta)


class TestConstruction:
    def test_r_s(self):
        O = make(5, 3, True)
        assert (O.r, O.s) == (1, 1)
        O = make(5, 4, True)
        assert (O.r, O.s) == (2, 1)
        O2 = make(5, 2, True)
        assert (O2.r, O2.s) == (1, 0)

    def test_constraints(self):
        with pytest.raises(ValueError):
            make(5, 3, True, alpha=1)          # alpha must be in (p)
        with pytest.raises(ValueError):
            make(5, 3, True, beta=4)           # 1 + beta not a unit
        with pytest.raises(ValueError):
            StandardBassOrder(5, False, 3, eps=0)  # eps must be a unit
        with pytest.raises(ValueError):
            make(5, 1, True)

    @pytest.mark.parametrize("p,n,split", [(5, 3, True), (3, 4, False),
                                           (7, 2, False), (13, 5, True)])
    def test_disc_exponent(self, p, n, split):
        assert order_disc_exponent(make(p, n, split)) == n

    def test_disc_exponent_with_params(self):
        assert order_disc_exponent(make(5, 4, True, alpha=5, beta=1)) == 4
        assert order_disc_exponent(
            StandardBassOrder(3, False, 5, alpha=3, beta=2)) == 5


class TestElementFormulas:
    def test_one(self):
        O = make(5, 3, True)
        y = (1, 0, 0, 0)
        assert std_trace(O, y) == 2
        assert std_norm(O, y) == 1
        assert std_disc(O, y) == 0

    def test_x_ab(self):
        O = StandardBassOrder(3, False, 4, alpha=3, beta=2)
        y = (0, 1, 0, 0)
        assert std_trace(O, y) == O.alpha
        assert std_norm(O, y) == O.alpha ** 2 * O.eps - O.pi * O.unit_beta
        assert std_disc(O, y) == O.disc_x_ab()

    def test_split_basis_vector(self):
        # (0,0,1,0) with alpha=0 in the split form: Nr = eps*pi^{2r} = 0
        O = make(5, 4, True)
        assert std_norm(O, (0, 0, 1, 0)) == 0
        assert std_trace(O, (0, 0, 1, 0)) == 5 ** 2

    @pytest.mark.parametrize("p,n,split,alpha,beta",
                             [(5, 3, True, 0, 0), (5, 4, True, 5, 1),
                              (3, 3, False, 3, 1), (7, 5, False, 49, 2)])
    def test_formulas_agree_with_model(self, p, n, split, alpha, beta):
        O = StandardBassOrder(p, split, n, alpha, beta)
        N = n + 4
        alg = O.coord_algebra(N)
        rng = random.Random(n * p)
        q = p ** N
        for _ in range(250):
            y = tuple(rng.randrange(q) for _ in range(4))
            y_alg = _expand(O, y, q)
            assert std_trace(O, y) % q == alg.trace(y_alg)
            assert std_norm(O, y) % q == alg.norm(y_alg)
            assert std_disc(O, y) % q == alg.disc(y_alg)


def _expand(O, y, q):
    a, b, c, d = y
    pr, ps = O.pi ** O.r, O.pi ** O.s
    return (a % q, (b * O.alpha + c * pr) % q, b % q,
            (b * O.beta + d * ps) % q)


class TestUnits:
    def test_examples(self):
        O = make(5, 3, True)
        assert is_unit(O, (1, 0, 0, 0))
        assert not is_unit(O, (0, 1, 0, 0))      # x_ab is a uniformizer
        assert not is_unit(O, (5, 1, 1, 1))

    def test_unit_criterion_exhaustive_p3(self):
        # eq-(42)-style criterion vs invertibility in O/p^3, all elements;
        # the p=5 sweep lives in the acceptance suite (vectorized)
        O = make(3, 3, False)
        N = 3
        alg = O.coord_algebra(N)
        q = 3 ** N
        for y in itertools.product(range(q), repeat=4):
            y_alg = _expand(O, y, q)
            invertible = alg.norm(y_alg) % 3 != 0
            assert invertible == is_unit(O, y)

    @pytest.mark.parametrize("p,split,n", [(3, False, 3), (5, True, 3)])
    def test_unit_norms_are_squares_sampled(self, p, split, n):
        O = make(p, n, split)
        N = 3
        alg = O.coord_algebra(N)
        q = p ** N
        rng = random.Random(0)
        squares = {x * x % p for x in range(1, p)}
        for _ in range(4000):
            y = tuple(rng.randrange(q) for _ in range(4))
            if y[0] % p == 0:
                continue
            nr = alg.norm(_expand(O, y, q))
            assert nr % p in squares
        assert unit_norm_classes(O) == frozenset({SQ_TRIVIAL})


class TestRamifiedInvariant:
    def test_split_alpha0_beta0(self):
        O = make(5, 3, True)
        # Delta(x_ab) = 4*5: odd valuation, square unit part
        assert ramified_invariant(O) == SquareClass(1, 0)

    def test_ramified_p3(self):
        O = StandardBassOrder(3, False, 3)
        assert ramified_invariant(O) == square_class(4 * 3 * O.unit_beta, 3)

    def test_n2_rejected(self):
        with pytest.raises(ValueError):
            ramified_invariant(make(5, 2, True))


class TestOverorders:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("p,split", [(5, True), (3, False)])
    def test_chain(self, n, p, split):
        O = make(p, n, split)
        chain = hereditary_closure(O)
        assert len(chain) == n  # M^0 .. M^(n-1)
        exps = [order_disc_exponent(M) for M in chain]
        assert exps == list(range(n, 0, -1))
        assert isinstance(chain[-1], HereditaryOrder)

    def test_minimal_overorder_index(self):
        from quatsel.intmat import hnf_rows, lattice_index
        O = make(5, 3, True, beta=1)
        M = minimal_overorder(O)
        i = lattice_index(hnf_rows([list(b) for b in M.basis_alg()]),
                          hnf_rows([list(b) for b in O.basis_alg()]))
        assert i == 5

    def test_n2_hereditary_and_radical_identity(self):
        # O = Z + J(M(O)) for n = 2: check lattice equality
        from quatsel.intmat import hnf_rows
        for split in (True, False):
            O = StandardBassOrder(3, split, 2, alpha=3, beta=1)
            H = minimal_overorder(O)
            assert isinstance(H, HereditaryOrder)
            # J(H) = pH + <x2, x3> in both the split and ramified model
            p = 3
            jh = [[p, 0, 0, 0], [0, p, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
            zplusj = hnf_rows([[1, 0, 0, 0]] + jh)
            assert zplusj == hnf_rows([list(b) for b in O.basis_alg()])


class TestNormalizer:
    @pytest.mark.parametrize("p,split,alpha", [
        (5, True, 0), (5, True, 5), (13, True, 0), (13, True, 26),
        (3, False, 0), (3, False, 3), (7, False, 0), (11, False, 11),
    ])
    def test_sigma0_unit_norm_and_stabilizes(self, p, split, alpha):
        beta = 1 if split else 2
        O = StandardBassOrder(p, split, 4, alpha=alpha, beta=beta)
        data = sigma0(O)
        assert data.norm_sigma0 % p != 0
        assert sigma0_stabilizes(O)

    def test_sigma0_alpha0_closed_form(self):
        # alpha = 0: A = 0, sigma0 = -1 + 2 x1, Nr = -(1 - 4 eps)
        O = StandardBassOrder(3, False, 3)
        data = sigma0(O)
        q = 3 ** data.precision
        assert data.A_coeff == 0
        assert data.sigma0 == ((-1) % q, 2, 0, 0)
        assert data.norm_sigma0 == (-(1 - 4 * O.eps)) % q
        # split alpha=0: Nr(sigma0) = -1
        Os = make(5, 3, True)
        ds = sigma0(Os)
        assert ds.norm_sigma0 == (-1) % 5 ** ds.precision

    def test_n2_all_classes(self):
        assert normalizer_norm_classes(make(5, 2, True)) == ALL_SQUARE_CLASSES

    def test_lemma_cases(self):
        # split & -1 a square (p=13): two classes
        O = make(13, 3, True)
        assert legendre_symbol(-1, 13) == 1
        assert len(normalizer_norm_classes(O)) == 2
        # split & -1 non-square (p=7): all four
        O = make(7, 3, True)
        assert normalizer_norm_classes(O) == ALL_SQUARE_CLASSES
        # ramified & -1 non-square (p=3): two classes
        O = StandardBassOrder(3, False, 3)
        assert len(normalizer_norm_classes(O)) == 2
        # ramified & -1 square (p=13): all four
        O = StandardBassOrder(13, False, 3)
        assert normalizer_norm_classes(O) == ALL_SQUARE_CLASSES

    def test_norm_class_values(self):
        # for p=13 split n=3 the classes are Nm(M^x) with M = F(x_ab)
        O = make(13, 3, True)
        classes = normalizer_norm_classes(O)
        assert SQ_TRIVIAL in classes
        assert square_class(-O.disc_x_ab(), 13) in classes

    def test_em1(self):
        assert normalizer_norm_classes_em1(5, a_split=False) == ALL_SQUARE_CLASSES
        assert normalizer_norm_classes_em1(5, a_split=True) == frozenset(
            {SquareClass(0, 0), SquareClass(0, 1)})

    @pytest.mark.parametrize("p,split,alpha,beta", [
        (5, True, 0, 0), (5, True, 5, 1), (3, False, 3, 1), (7, False, 0, 2)])
    def test_x_ab_normalizes(self, p, split, alpha, beta):
        O = StandardBassOrder(p, split, 4, alpha=alpha, beta=beta)
        assert x_ab_normalizes(O)

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
    def test_sigma0_norm_class_matches_lemma(self, p):
        # Nr(sigma0) is a square unit exactly when Nr(N(O)) = Nm(M^x)
        for split in (True, False):
            O = StandardBassOrder(p, split, 3, beta=1 if split else 0)
            data = sigma0(O)
            is_sq = legendre_symbol(data.norm_sigma0 % p, p) == 1
            assert is_sq == (len(normalizer_norm_classes(O)) == 2)
