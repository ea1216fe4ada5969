"""Rational quaternion algebras and their explicit local models.

Global elements use exact Fraction coordinates.  A local model realizes the
algebra at an odd prime over Z/p^N, either as 2x2 matrices (split) or as
2x2 matrices over the unramified quadratic extension E = (Z/p^N)[X]/(X^2-X+eps)
(ramified), with the distinguished basis 1, x1, x2, x3 satisfying

    x1^2 = x1 - eps,   x2^2 = pi,   x2 x1 = (1 - x1) x2,   x3 = x1 x2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import (
    INFINITE_PLACE,
    hilbert_support,
    hilbert_symbol,
    is_prime,
    legendre_symbol,
)

MATRIX = "matrix"
SYMBOL = "symbol"


class QuaternionAlgebra:
    """M_2(Q), or the symbol algebra (a, b | Q) with i^2=a, j^2=b, ij=-ji."""

    def __init__(self, kind: str, a=None, b=None):
        if kind == MATRIX:
            self.kind = MATRIX
            self.a = self.b = None
        elif kind == SYMBOL:
            if a == 0 or b == 0 or a is None or b is None:
                raise ValueError("symbol algebra needs nonzero a, b")
            self.kind = SYMBOL
            self.a, self.b = Fraction(a), Fraction(b)
        else:
            raise ValueError(f"unknown presentation {kind!r}")

    @classmethod
    def matrix_algebra(cls) -> "QuaternionAlgebra":
        return cls(MATRIX)

    @classmethod
    def symbol(cls, a, b) -> "QuaternionAlgebra":
        return cls(SYMBOL, a, b)

    def __eq__(self, other):
        return (isinstance(other, QuaternionAlgebra)
                and (self.kind, self.a, self.b) == (other.kind, other.a, other.b))

    def __repr__(self):
        if self.kind == MATRIX:
            return "QuaternionAlgebra(M2(Q))"
        return f"QuaternionAlgebra({self.a}, {self.b})"

    def element(self, coords) -> "QuatElement":
        w, x, y, z = (Fraction(c) for c in coords)
        return QuatElement(self, (w, x, y, z))

    def matrix(self, entries) -> "QuatElement":
        if self.kind != MATRIX:
            raise ValueError("matrix entries only make sense for M2(Q)")
        a11, a12, a21, a22 = (Fraction(c) for c in entries)
        return QuatElement(self, (a11, a12, a21, a22))

    @property
    def one(self) -> "QuatElement":
        if self.kind == MATRIX:
            return QuatElement(self, (Fraction(1), Fraction(0),
                                      Fraction(0), Fraction(1)))
        return QuatElement(self, (Fraction(1), Fraction(0),
                                  Fraction(0), Fraction(0)))

    def ram_set(self) -> list[int]:
        """Places (-1 for the real place) where the algebra is a division ring."""
        if self.kind == MATRIX:
            return []
        return [v for v in hilbert_support(self.a, self.b)
                if hilbert_symbol(self.a, self.b, v) == -1]

    def is_split_at(self, place: int) -> bool:
        if self.kind == MATRIX:
            return True
        return hilbert_symbol(self.a, self.b, place) == 1


@dataclass(frozen=True)
class QuatElement:
    """Element with four exact rational coordinates.

    MATRIX presentation: row-major 2x2 entries.  SYMBOL: coordinates on
    1, i, j, k.
    """

    algebra: QuaternionAlgebra
    coords: tuple

    def _like(self, coords):
        return QuatElement(self.algebra, tuple(coords))

    def __add__(self, other):
        return self._like(s + t for s, t in zip(self.coords, other.coords))

    def __sub__(self, other):
        return self._like(s - t for s, t in zip(self.coords, other.coords))

    def __neg__(self):
        return self._like(-s for s in self.coords)

    def scale(self, c) -> "QuatElement":
        c = Fraction(c)
        return self._like(c * s for s in self.coords)

    def __mul__(self, other):
        A = self.algebra
        if A.kind == MATRIX:
            a11, a12, a21, a22 = self.coords
            b11, b12, b21, b22 = other.coords
            return self._like((a11 * b11 + a12 * b21, a11 * b12 + a12 * b22,
                               a21 * b11 + a22 * b21, a21 * b12 + a22 * b22))
        a, b = A.a, A.b
        w1, x1, y1, z1 = self.coords
        w2, x2, y2, z2 = other.coords
        return self._like((
            w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            w1 * x2 + x1 * w2 - b * (y1 * z2 - z1 * y2),
            w1 * y2 + y1 * w2 + a * (x1 * z2 - z1 * x2),
            w1 * z2 + z1 * w2 + (x1 * y2 - y1 * x2),
        ))

    def trace(self) -> Fraction:
        if self.algebra.kind == MATRIX:
            return self.coords[0] + self.coords[3]
        return 2 * self.coords[0]

    def norm(self) -> Fraction:
        if self.algebra.kind == MATRIX:
            a11, a12, a21, a22 = self.coords
            return a11 * a22 - a12 * a21
        a, b = self.algebra.a, self.algebra.b
        w, x, y, z = self.coords
        return w * w - a * x * x - b * y * y + a * b * z * z

    def conjugate(self) -> "QuatElement":
        if self.algebra.kind == MATRIX:
            a11, a12, a21, a22 = self.coords
            return self._like((a22, -a12, -a21, a11))
        w, x, y, z = self.coords
        return self._like((w, -x, -y, -z))

    def discriminant(self) -> Fraction:
        t = self.trace()
        return t * t - 4 * self.norm()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def trace(y: QuatElement) -> Fraction:
    return y.trace()


def norm(y: QuatElement) -> Fraction:
    return y.norm()


def conjugate(y: QuatElement) -> QuatElement:
    return y.conjugate()


def elem_discriminant(y: QuatElement) -> Fraction:
    """Tr(y)^2 - 4 Nr(y); conjugation invariant."""
    return y.discriminant()


def ram_set(A: QuaternionAlgebra) -> list[int]:
    return A.ram_set()


def is_split_at(A: QuaternionAlgebra, place: int) -> bool:
    return A.is_split_at(place)


def choose_eps(p: int) -> int:
    """Smallest nonnegative unit eps with 1-4*eps a non-square unit mod p."""
    for e in range(1, p):
        if (1 - 4 * e) % p != 0 and legendre_symbol(1 - 4 * e, p) == -1:
            return e
    raise ValueError(f"no valid eps mod {p}")  # unreachable for odd p


# ---------------------------------------------------------------------------
# local models


class UnramExt:
    """E = (Z/p^N)[X]/(X^2 - X + eps); elements are (a, b) = a + bX.

    The nontrivial automorphism (Frobenius for eps with 1-4*eps a
    non-square unit) sends X to 1-X.
    """

    def __init__(self, p: int, N: int, eps: int):
        self.p, self.N, self.eps = p, N, eps % p ** N
        self.q = p ** N

    def add(self, u, v):
        return ((u[0] + v[0]) % self.q, (u[1] + v[1]) % self.q)

    def sub(self, u, v):
        return ((u[0] - v[0]) % self.q, (u[1] - v[1]) % self.q)

    def mul(self, u, v):
        # (a+bX)(c+dX) with X^2 = X - eps
        a, b = u
        c, d = v
        bd = b * d
        return ((a * c - self.eps * bd) % self.q, (a * d + b * c + bd) % self.q)

    def frob(self, u):
        a, b = u
        return ((a + b) % self.q, -b % self.q)

    def nm(self, u) -> int:
        a, b = u
        return (a * a + a * b + self.eps * b * b) % self.q

    def tr(self, u) -> int:
        return (2 * u[0] + u[1]) % self.q

    def scalar(self, c: int):
        return (c % self.q, 0)

    def is_unit(self, u) -> bool:
        return self.nm(u) % self.p != 0

    def inv(self, u):
        nm_inv = pow(self.nm(u), -1, self.q)
        ub = self.frob(u)
        return ((ub[0] * nm_inv) % self.q, (ub[1] * nm_inv) % self.q)


class LocalModel:
    """Concrete matrix model of A_p at precision N over Z/p^N.

    split: entries are ints mod p^N, basis per the standard idempotent
    presentation.  ramified: entries live in the unramified quadratic
    extension E; the element (x, y) = x + y*x2 is realized as the matrix
    [[x, y], [pi*ybar, xbar]].
    """

    def __init__(self, p: int, N: int, split: bool, eps: int = 0,
                 pi: int | None = None):
        if p == 2 or not is_prime(p):
            raise ValueError("local models require an odd prime")
        self.p, self.N, self.split = p, N, split
        self.q = p ** N
        self.pi = p if pi is None else pi % self.q
        if self.pi % p != 0 or (self.pi // p) % p == 0:
            raise ValueError("pi must be a uniformizer")
        if split:
            if eps % self.q != 0:
                raise ValueError("split model requires eps = 0")
            self.eps = 0
            self.E = None
        else:
            if eps % p == 0 or (1 - 4 * eps) % p == 0 \
                    or legendre_symbol(1 - 4 * eps, p) != -1:
                raise ValueError(
                    "ramified model needs 1-4*eps a non-square unit")
            self.eps = eps % self.q
            self.E = UnramExt(p, N, self.eps)

    # -- matrix elements: 4-tuples row-major; entries int (split) or pair (ram)

    @property
    def zero(self):
        z = 0 if self.split else (0, 0)
        return (z, z, z, z)

    def scalar_mat(self, c: int):
        if self.split:
            return (c % self.q, 0, 0, c % self.q)
        s = self.E.scalar(c)
        return (s, (0, 0), (0, 0), s)

    @property
    def one_mat(self):
        return self.scalar_mat(1)

    @property
    def x1(self):
        if self.split:
            return (1, 0, 0, 0)
        X = (0, 1)
        return (X, (0, 0), (0, 0), self.E.frob(X))

    @property
    def x2(self):
        if self.split:
            return (0, 1, self.pi, 0)
        one = self.E.scalar(1)
        return ((0, 0), one, self.E.mul(self.E.scalar(self.pi), one), (0, 0))

    @property
    def x3(self):
        return self.mat_mul(self.x1, self.x2)

    def pair_to_mat(self, x, y):
        """Ramified model: the element x + y*x2 with x, y in E."""
        if self.split:
            raise ValueError("pair representation is for the ramified model")
        return (x, y,
                self.E.mul(self.E.scalar(self.pi), self.E.frob(y)),
                self.E.frob(x))

    def mat_add(self, m, n):
        if self.split:
            return tuple((a + b) % self.q for a, b in zip(m, n))
        return tuple(self.E.add(a, b) for a, b in zip(m, n))

    def mat_sub(self, m, n):
        if self.split:
            return tuple((a - b) % self.q for a, b in zip(m, n))
        return tuple(self.E.sub(a, b) for a, b in zip(m, n))

    def mat_scale(self, c: int, m):
        if self.split:
            return tuple(c * a % self.q for a in m)
        cs = self.E.scalar(c)
        return tuple(self.E.mul(cs, a) for a in m)

    def mat_mul(self, m, n):
        a, b, c, d = m
        e, f, g, h = n
        if self.split:
            return ((a * e + b * g) % self.q, (a * f + b * h) % self.q,
                    (c * e + d * g) % self.q, (c * f + d * h) % self.q)
        E = self.E
        return (E.add(E.mul(a, e), E.mul(b, g)), E.add(E.mul(a, f), E.mul(b, h)),
                E.add(E.mul(c, e), E.mul(d, g)), E.add(E.mul(c, f), E.mul(d, h)))

    def mat_trace(self, m) -> int:
        if self.split:
            return (m[0] + m[3]) % self.q
        t = self.E.add(m[0], m[3])
        if t[1] % self.q:
            raise ValueError("trace landed outside the base ring")
        return t[0]

    def mat_norm(self, m) -> int:
        if self.split:
            return (m[0] * m[3] - m[1] * m[2]) % self.q
        d = self.E.sub(self.E.mul(m[0], m[3]), self.E.mul(m[1], m[2]))
        if d[1] % self.q:
            raise ValueError("determinant landed outside the base ring")
        return d[0]

    def mat_conj(self, m):
        t = self.scalar_mat(self.mat_trace(m))
        return self.mat_sub(t, m)

    def coords_to_mat(self, coords):
        """(a, b, c, d) on the basis (1, x1, x2, x3) -> matrix."""
        a, b, c, d = coords
        m = self.scalar_mat(a)
        m = self.mat_add(m, self.mat_scale(b, self.x1))
        m = self.mat_add(m, self.mat_scale(c, self.x2))
        return self.mat_add(m, self.mat_scale(d, self.x3))

    def check_relations(self) -> bool:
        x1, x2 = self.x1, self.x2
        lhs1 = self.mat_mul(x1, x1)
        rhs1 = self.mat_sub(x1, self.scalar_mat(self.eps))
        lhs2 = self.mat_mul(x2, x2)
        rhs2 = self.scalar_mat(self.pi)
        lhs3 = self.mat_mul(x2, x1)
        rhs3 = self.mat_mul(self.mat_sub(self.one_mat, x1), x2)
        return lhs1 == rhs1 and lhs2 == rhs2 and lhs3 == rhs3


def local_model(A: QuaternionAlgebra, p: int, eps: int | None = None,
                pi: int | None = None, N: int = 8) -> LocalModel:
    """Local model of A at the odd prime p, at working precision N.

    For a MATRIX algebra (or a symbol algebra split at p given eps=0) this
    is the split model; for an algebra ramified at p it is the pairs model
    over the unramified quadratic extension.  A split symbol algebra with no
    explicit matrix presentation at p is out of scope here.
    """
    split = A.is_split_at(p)
    if split:
        if A.kind != MATRIX:
            raise NotImplementedError(
                "explicit splitting of a split symbol algebra at p is not "
                "provided; use the MATRIX presentation")
        if eps not in (None, 0):
            raise ValueError("split model requires eps = 0")
        return LocalModel(p, N, True, 0, pi)
    if eps is None:
        eps = choose_eps(p)
    return LocalModel(p, N, False, eps, pi)


class CoordAlgebra:
    """Structure-constant arithmetic on coordinates over the basis
    (1, x1, x2, x3), entries in Z/p^N.  This matches the matrix models and
    is what the enumeration-heavy code uses."""

    def __init__(self, p: int, N: int, eps: int, pi: int | None = None):
        self.p, self.N = p, N
        self.q = p ** N
        self.eps = eps % self.q
        self.pi = p if pi is None else pi % self.q

    def mul(self, u, v):
        q, eps, pi = self.q, self.eps, self.pi
        u0, u1, u2, u3 = u
        v0, v1, v2, v3 = v
        return (
            (u0 * v0 - eps * u1 * v1 + pi * (u2 * v2 + u2 * v3 + eps * u3 * v3)) % q,
            (u0 * v1 + u1 * v0 + u1 * v1 + pi * (u3 * v2 - u2 * v3)) % q,
            (u0 * v2 + u2 * v0 - eps * u1 * v3 + u2 * v1 + eps * u3 * v1) % q,
            (u0 * v3 + u3 * v0 + u1 * v2 + u1 * v3 - u2 * v1) % q,
        )

    def add(self, u, v):
        return tuple((a + b) % self.q for a, b in zip(u, v))

    def sub(self, u, v):
        return tuple((a - b) % self.q for a, b in zip(u, v))

    def scale(self, c, u):
        return tuple(c * a % self.q for a in u)

    def trace(self, u) -> int:
        return (2 * u[0] + u[1]) % self.q

    def conj(self, u):
        return ((u[0] + u[1]) % self.q, -u[1] % self.q,
                -u[2] % self.q, -u[3] % self.q)

    def norm(self, u) -> int:
        u0, u1, u2, u3 = u
        return (u0 * u0 + u0 * u1 + self.eps * u1 * u1
                - self.pi * (u2 * u2 + u2 * u3 + self.eps * u3 * u3)) % self.q

    def disc(self, u) -> int:
        t = self.trace(u)
        return (t * t - 4 * self.norm(u)) % self.q

    @property
    def one(self):
        return (1, 0, 0, 0)

    def is_unit_norm(self, u) -> bool:
        return self.norm(u) % self.p != 0

    def inv(self, u):
        nr = self.norm(u)
        return self.scale(pow(nr, -1, self.q), self.conj(u))

    def truncated(self, N2: int) -> "CoordAlgebra":
        return CoordAlgebra(self.p, N2, self.eps, self.pi)
