"""Local Bass orders of Eichler invariant zero in standard form, plus the
hereditary orders they terminate at.

A standard order at an odd prime p is the lattice

    O = < 1,  x_ab,  pi^r x1,  pi^s x3 >,      x_ab = alpha x1 + x2 + beta x3,

with r + s = n - 1, 0 <= r - s <= 1, alpha in (p), and the unit constraints
on beta depending on whether the ambient algebra is split or ramified.  All
parameters are exact integers; the structure constants (see quatalg) make
every formula here exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intmat import det_int
from .padic import (
    ALL_SQUARE_CLASSES,
    SQ_TRIVIAL,
    SquareClass,
    is_prime,
    legendre_symbol,
    square_class,
    valuation,
)
from .quatalg import CoordAlgebra, choose_eps


def coord_mul_exact(u, v, eps: int, pi: int):
    """Product in the basis (1, x1, x2, x3) with exact integer entries."""
    u0, u1, u2, u3 = u
    v0, v1, v2, v3 = v
    return (
        u0 * v0 - eps * u1 * v1 + pi * (u2 * v2 + u2 * v3 + eps * u3 * v3),
        u0 * v1 + u1 * v0 + u1 * v1 + pi * (u3 * v2 - u2 * v3),
        u0 * v2 + u2 * v0 - eps * u1 * v3 + u2 * v1 + eps * u3 * v1,
        u0 * v3 + u3 * v0 + u1 * v2 + u1 * v3 - u2 * v1,
    )


def coord_trace_exact(u) -> int:
    return 2 * u[0] + u[1]


def coord_norm_exact(u, eps: int, pi: int) -> int:
    u0, u1, u2, u3 = u
    return (u0 * u0 + u0 * u1 + eps * u1 * u1
            - pi * (u2 * u2 + u2 * u3 + eps * u3 * u3))


def lattice_disc_exponent(basis, eps: int, pi: int, p: int) -> int:
    """n(O) = v_p(d(O)) with d(O)^2 = |det Tr(b_i b_j)| for a local lattice."""
    gram = [[coord_trace_exact(coord_mul_exact(bi, bj, eps, pi))
             for bj in basis] for bi in basis]
    d = det_int(gram)
    if d == 0:
        raise ValueError("degenerate lattice")
    v = valuation(d, p)
    if v % 2:
        raise ValueError("Gram determinant valuation is odd; not an order")
    return v // 2


@dataclass(frozen=True)
class HereditaryOrder:
    """The hereditary order <1, x1, x2, x3>: the Eichler order of level (pi)
    when the algebra is split, the maximal order when it is ramified."""

    p: int
    split: bool
    eps: int
    pi: int

    n = 1

    @property
    def eichler_invariant(self) -> int:
        return 1 if self.split else -1

    def basis_alg(self):
        return [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]

    def order_coords(self, y):
        """Coordinates of an algebra-coordinate vector in the order basis."""
        a0, a1, a2, a3 = y
        return (a0, a1, a2, a3)

    def coord_algebra(self, N: int) -> CoordAlgebra:
        return CoordAlgebra(self.p, N, self.eps, self.pi)


@dataclass(frozen=True)
class StandardBassOrder:
    """Standard form of a local Bass order with Eichler invariant 0."""

    p: int
    split: bool
    n: int
    alpha: int = 0
    beta: int = 0
    eps: int | None = None
    pi: int | None = None

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError("standard forms are for odd primes")
        if self.n < 2:
            raise ValueError("Eichler invariant 0 forces n >= 2")
        if self.pi is None:
            object.__setattr__(self, "pi", self.p)
        if valuation(self.pi, self.p) != 1:
            raise ValueError("pi must be a uniformizer")
        if self.alpha % self.p != 0:
            raise ValueError("alpha must lie in (p)")
        if self.split:
            if self.eps not in (None, 0):
                raise ValueError("split standard form has eps = 0")
            object.__setattr__(self, "eps", 0)
            if (1 + self.beta) % self.p == 0:
                raise ValueError("split standard form needs 1 + beta a unit")
        else:
            if self.eps is None:
                object.__setattr__(self, "eps", choose_eps(self.p))
            if (self.eps % self.p == 0 or (1 - 4 * self.eps) % self.p == 0
                    or legendre_symbol(1 - 4 * self.eps, self.p) != -1):
                raise ValueError("need 1 - 4*eps a non-square unit")

    @property
    def r(self) -> int:
        return self.n // 2

    @property
    def s(self) -> int:
        return (self.n - 1) // 2

    @property
    def eichler_invariant(self) -> int:
        return 0

    @property
    def unit_beta(self) -> int:
        """1 + beta + eps*beta^2, a unit by the parameter constraints."""
        return 1 + self.beta + self.eps * self.beta * self.beta

    def basis_alg(self):
        pr, ps = self.pi ** self.r, self.pi ** self.s
        return [(1, 0, 0, 0),
                (0, self.alpha, 1, self.beta),
                (0, pr, 0, 0),
                (0, 0, 0, ps)]

    def order_coords(self, y):
        """(a, b, c, d) with y = a + b x_ab + c pi^r x1 + d pi^s x3.

        The map is triangular: the x2-coordinate of y is b, and c, d are
        exact divisions; returns Fractions when those divisions leave Z.
        """
        from fractions import Fraction
        a0, a1, a2, a3 = (Fraction(c) for c in y)
        b = a2
        c = (a1 - b * self.alpha) / self.pi ** self.r
        d = (a3 - b * self.beta) / self.pi ** self.s
        return (a0, b, c, d)

    def order_coords_mod(self, y, N: int):
        """Order coordinates of an algebra-coord vector mod p^N; None if the
        element is not in the order at this precision.

        y = a + b*x_ab + c*pi^r*x1 + d*pi^s*x3 has algebra coords
        (a, b*alpha + c*pi^r, b, b*beta + d*pi^s) on (1, x1, x2, x3).
        """
        q = self.p ** N
        a0, a1, a2, a3 = (c % q for c in y)
        b = a2
        pr, ps = self.pi ** self.r, self.pi ** self.s
        num_c = (a1 - b * self.alpha) % q
        num_d = (a3 - b * self.beta) % q
        if num_c % pr or num_d % ps:
            return None
        return (a0 % q, b, (num_c // pr) % q, (num_d // ps) % q)

    def coord_algebra(self, N: int) -> CoordAlgebra:
        return CoordAlgebra(self.p, N, self.eps, self.pi)

    def x_ab(self):
        return (0, self.alpha, 1, self.beta)

    def disc_x_ab(self) -> int:
        """Delta(x_ab) = alpha^2 (1-4 eps) + 4 pi (1 + beta + eps beta^2)."""
        return (self.alpha ** 2 * (1 - 4 * self.eps)
                + 4 * self.pi * self.unit_beta)


LocalOrder = StandardBassOrder | HereditaryOrder


def std_trace(O: StandardBassOrder, y) -> int:
    """Tr on order coordinates (a, b, c, d)."""
    a, b, c, _ = y
    return 2 * a + b * O.alpha + c * O.pi ** O.r


def std_norm(O: StandardBassOrder, y) -> int:
    a, b, c, d = y
    u = b * O.alpha + c * O.pi ** O.r
    w = b * O.beta + d * O.pi ** O.s
    return (a * a + a * u + O.eps * u * u
            - O.pi * (b * b + b * w + O.eps * w * w))


def std_disc(O: StandardBassOrder, y) -> int:
    a, b, c, d = y
    u = b * O.alpha + c * O.pi ** O.r
    w = b * O.beta + d * O.pi ** O.s
    return (u * u * (1 - 4 * O.eps)
            + 4 * O.pi * (b * b + b * w + O.eps * w * w))


def is_unit(O: StandardBassOrder, y) -> bool:
    """y in O^* iff the scalar coordinate a is a unit."""
    return y[0] % O.p != 0


def unit_norm_classes(O: StandardBassOrder) -> frozenset[SquareClass]:
    """Nr(O^*) consists of the unit squares only."""
    return frozenset({SQ_TRIVIAL})


def ramified_invariant(O: StandardBassOrder) -> SquareClass:
    """Square class of Delta(x_ab): the invariant of the unique ramified
    quadratic extension M with O_M embedding in O.  Needs n >= 3."""
    if O.n < 3:
        raise ValueError("no unique ramified extension when n = 2")
    return square_class(O.disc_x_ab(), O.p)


def minimal_overorder(O: StandardBassOrder) -> LocalOrder:
    """The unique minimal overorder: drop the discriminant exponent by one,
    keeping (alpha, beta); hereditary once n reaches 1."""
    if O.n == 2:
        return HereditaryOrder(O.p, O.split, O.eps, O.pi)
    return StandardBassOrder(O.p, O.split, O.n - 1, O.alpha, O.beta,
                             O.eps, O.pi)


def hereditary_closure(O: StandardBassOrder) -> list[LocalOrder]:
    """The chain O = M^0 c M^1 c ... c M^(n-1) ending at the hereditary
    order, with the containments verified."""
    chain: list[LocalOrder] = [O]
    cur = O
    while isinstance(cur, StandardBassOrder):
        nxt = minimal_overorder(cur)
        if not _contains(nxt, cur):
            raise AssertionError("overorder fails to contain the order")
        chain.append(nxt)
        cur = nxt
    return chain


def _contains(big: LocalOrder, small: LocalOrder) -> bool:
    from .intmat import hnf_rows, solve_lattice
    basis = hnf_rows([list(b) for b in big.basis_alg()])
    return all(solve_lattice(basis, list(b)) is not None
               for b in small.basis_alg())


def order_disc_exponent(O: LocalOrder) -> int:
    return lattice_disc_exponent(O.basis_alg(), O.eps, O.pi, O.p)


@dataclass(frozen=True)
class NormalizerData:
    sigma0: tuple          # algebra coords mod p^N
    A_coeff: int           # mod p^N
    norm_sigma0: int       # mod p^N, a unit
    norm_classes: frozenset[SquareClass]
    precision: int


def sigma0(O: StandardBassOrder, N: int | None = None) -> NormalizerData:
    """The distinguished even-normalizer element

        sigma0 = -1 - A*alpha/2 + A*x_ab + 2*x1,
        A = -2*alpha*(1-4*eps) / Delta(x_ab),

    computed mod p^N, together with its reduced norm (a unit) and the
    square classes of Nr(N(O)).  Requires n >= 3."""
    if O.n < 3:
        raise ValueError("sigma0 is defined for n >= 3")
    if N is None:
        N = O.n + 4
    p, q = O.p, O.p ** N
    delta = O.disc_x_ab()
    delta1 = delta // p
    if delta1 % p == 0 or delta % p != 0:
        raise AssertionError("Delta(x_ab) must have valuation exactly 1")
    alpha1 = O.alpha // p
    w0 = O.pi // p
    # A = -2*alpha*(1-4 eps) / (p * delta1); the division by p is exact
    A = (-2 * alpha1 * (1 - 4 * O.eps)) * pow(delta1, -1, q) % q
    inv2 = pow(2, -1, q)
    a_scal = (-1 - A * O.alpha % q * inv2) % q
    coords = (a_scal, (A * O.alpha + 2) % q, A % q, A * O.beta % q)
    # eq (45)
    half = (1 + A * O.alpha % q * inv2) % q
    nr = (-(half * half) % q * (1 - 4 * O.eps)
          - O.pi * A * A % q * O.unit_beta) % q
    alg = O.coord_algebra(N)
    if alg.norm(coords) != nr % q:
        raise AssertionError("closed-form Nr(sigma0) disagrees with the model")
    if nr % p == 0:
        raise AssertionError("Nr(sigma0) must be a unit")
    return NormalizerData(coords, A, nr % q, normalizer_norm_classes(O), N)


def sigma0_stabilizes(O: StandardBassOrder, N: int | None = None) -> bool:
    """Check sigma0 O sigma0^{-1} = O at precision N via order coordinates."""
    data = sigma0(O, N)
    N = data.precision
    alg = O.coord_algebra(N)
    s = data.sigma0
    s_inv = alg.inv(s)
    for b in O.basis_alg():
        bq = tuple(x % alg.q for x in b)
        conj = alg.mul(alg.mul(s, bq), s_inv)
        if O.order_coords_mod(conj, N) is None:
            return False
    return True


def norm_classes_ramified_ext(O: StandardBassOrder) -> frozenset[SquareClass]:
    """Square classes of Nm(M^*) for M = F(x_ab)."""
    return frozenset({SQ_TRIVIAL, square_class(-O.disc_x_ab(), O.p)})


def normalizer_norm_classes(O: StandardBassOrder) -> frozenset[SquareClass]:
    """Square classes of Nr(N(O)) for an e = 0 standard order."""
    if O.n == 2:
        return ALL_SQUARE_CLASSES
    minus_one_square = legendre_symbol(-1, O.p) == 1
    if (O.split and minus_one_square) or (not O.split and not minus_one_square):
        return norm_classes_ramified_ext(O)
    return ALL_SQUARE_CLASSES


def normalizer_norm_classes_em1(p: int, a_split: bool) -> frozenset[SquareClass]:
    """Square classes of Nr(N(O)) when e(O) = -1."""
    if a_split:
        return frozenset({SquareClass(0, 0), SquareClass(0, 1)})
    return ALL_SQUARE_CLASSES


def x_ab_normalizes(O: StandardBassOrder, N: int | None = None) -> bool:
    """x_ab is an odd-valuation element of N(O): conjugation preserves O."""
    if N is None:
        N = O.n + 4
    alg = O.coord_algebra(N)
    x = tuple(c % alg.q for c in O.x_ab())
    # Nr(x_ab) has valuation 1: conjugate via x b conj(x) / Nr(x), the
    # division by p^v done exactly on the numerator
    nr = alg.norm(x)
    if nr == 0:
        raise ValueError("precision too low")
    v = valuation(nr, O.p)
    unit_inv = pow(nr // O.p ** v, -1, alg.q)
    for b in O.basis_alg():
        bq = tuple(c % alg.q for c in b)
        num = alg.mul(alg.mul(x, bq), alg.conj(x))  # = Nr(x) * x b x^{-1}
        num = alg.scale(unit_inv, num)
        # divide by p^v exactly
        if any(c % O.p ** v for c in num):
            return False
        shifted = tuple(c // O.p ** v for c in num)
        if O.order_coords_mod(shifted, N - v) is None:
            return False
    return True
