"""Exact arithmetic modulo prime powers.

Everything here is integer arithmetic: residues are plain ints carried
together with an explicit precision exponent N (modulus p^N).  No floats,
no implicit precision changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for f in (2, 3):
        if n % f == 0:
            return n == f
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    if isinstance(x, Fraction):
        return valuation(x.numerator, p) - valuation(x.denominator, p)
    x = abs(int(x))
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def unit_residue(x, p: int, N: int) -> int:
    """The unit part x / p^v(x) reduced mod p^N, for a nonzero int/Fraction."""
    if x == 0:
        raise ValueError("zero has no unit part")
    q = p ** N
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
    else:
        num, den = int(x), 1
    vn = valuation(num, p)
    num //= p ** vn
    vd = valuation(den, p) if den % p == 0 else 0
    den //= p ** vd
    return num * pow(den, -1, q) % q


def val_mod(x: int, p: int, N: int) -> int:
    """Valuation of x as an element of Z/p^N; returns N when x ≡ 0."""
    x %= p ** N
    if x == 0:
        return N
    return valuation(x, p)


def legendre_symbol(a, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p; 0 when p | a."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre_symbol needs an odd prime, got {p}")
    if isinstance(a, Fraction):
        if a.denominator % p == 0:
            raise ValueError("denominator divisible by p")
        a = a.numerator * pow(a.denominator, -1, p)
    a = int(a) % p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return -1 if s == p - 1 else 1


def sqrt_mod_p(a: int, p: int) -> int | None:
    """One square root of a modulo an odd prime p, or None.

    Tonelli-Shanks; trivial fast path for p ≡ 3 (mod 4).
    """
    a %= p
    if a == 0:
        return 0
    if legendre_symbol(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, x = 0, t
        while x != 1:
            x = x * x % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def hensel_sqrt(a: int, p: int, N: int) -> int | None:
    """r with r^2 ≡ a (mod p^N) for a unit a, odd p; None for non-residues."""
    if p == 2:
        raise ValueError("hensel_sqrt requires p odd")
    q = p ** N
    a %= q
    if a % p == 0:
        raise ValueError("hensel_sqrt requires a unit argument")
    r = sqrt_mod_p(a, p)
    if r is None:
        return None
    k = 1
    while k < N:
        k = min(2 * k, N)
        qk = p ** k
        # Newton step: r <- (r + a/r)/2, exact since p is odd
        r = (r + a * pow(r, -1, qk)) % qk * pow(2, -1, qk) % qk
    return r % q


def sqrt_all_mod(v: int, p: int, N: int) -> list[int]:
    """All x mod p^N with x^2 ≡ v (mod p^N), odd p.  Exhaustive semantics,
    computed structurally; used by small oracles and tests."""
    q = p ** N
    v %= q
    if v == 0:
        step = p ** ((N + 1) // 2)
        return list(range(0, q, step))
    k = valuation(v, p)
    if k % 2 == 1:
        return []
    w = v // p ** k
    r = hensel_sqrt(w, p, N - k)
    if r is None:
        return []
    h = p ** (k // 2)
    base = p ** (N - k)
    out = []
    for t in range(h):
        for sgn in (r, (-r) % base):
            out.append(h * (sgn + base * t) % q)
    return sorted(set(out))


def is_quartic_residue(t, p: int) -> bool:
    """Whether t is a fourth power in F_p^*; requires p ≡ 1 (mod 4), p ∤ t."""
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"quartic residue test needs p ≡ 1 (mod 4), got {p}")
    if isinstance(t, Fraction):
        if t.denominator % p == 0 or t.numerator % p == 0:
            raise ValueError("t must be a unit at p")
        t = t.numerator * pow(t.denominator, -1, p)
    t = int(t) % p
    if t == 0:
        raise ValueError("t must be a unit at p")
    return pow(t, (p - 1) // 4, p) == 1


@dataclass(frozen=True, order=True)
class SquareClass:
    """Class of a nonzero element of Q_p^* modulo squares, p odd.

    val_parity: valuation mod 2; unit_nonsquare: 0 if the unit part is a
    square mod p, 1 otherwise.  The four classes form a Klein group under *.
    """

    val_parity: int
    unit_nonsquare: int

    def __post_init__(self):
        if self.val_parity not in (0, 1) or self.unit_nonsquare not in (0, 1):
            raise ValueError("SquareClass bits must be 0 or 1")

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(self.val_parity ^ other.val_parity,
                           self.unit_nonsquare ^ other.unit_nonsquare)

    @property
    def is_trivial(self) -> bool:
        return self.val_parity == 0 and self.unit_nonsquare == 0


SQ_TRIVIAL = SquareClass(0, 0)

ALL_SQUARE_CLASSES = frozenset(
    SquareClass(a, b) for a in (0, 1) for b in (0, 1))


def square_class(x, p: int) -> SquareClass:
    """Square class of a nonzero rational in Q_p^*, p odd."""
    if x == 0:
        raise ValueError("square_class of zero is undefined")
    if p == 2 or not is_prime(p):
        raise ValueError("square_class needs an odd prime")
    v = valuation(x, p)
    u = unit_residue(x, p, 1)
    return SquareClass(v % 2, 0 if legendre_symbol(u, p) == 1 else 1)


def square_class_dyadic(x) -> tuple[int, int]:
    """Square class data in Q_2^*: (valuation mod 2, unit part mod 8)."""
    if x == 0:
        raise ValueError("square_class of zero is undefined")
    v = valuation(x, 2)
    u = unit_residue(x, 2, 3)
    return (v % 2, u % 8)


def norm_group_classes(kind: str, p: int,
                       disc_unit: int | None = None) -> frozenset[SquareClass]:
    """Square classes in Nm(L^*) for a quadratic algebra L over Q_p, p odd.

    kind: 'split' (L = Q_p x Q_p), 'unram', or 'ram'.  For 'ram',
    disc_unit is the unit u with L = Q_p(sqrt(p*u)).
    """
    if kind == "split":
        return ALL_SQUARE_CLASSES
    if kind == "unram":
        return frozenset({SquareClass(0, 0), SquareClass(0, 1)})
    if kind == "ram":
        if disc_unit is None:
            raise ValueError("ramified norm group needs the disc unit")
        # Nm(pi_L) = -p*u up to squares
        return frozenset({SQ_TRIVIAL, square_class(-p * disc_unit, p)})
    raise ValueError(f"unknown quadratic algebra kind {kind!r}")


def _hilbert_odd(a, b, p: int) -> int:
    al, bl = valuation(a, p), valuation(b, p)
    u, v = unit_residue(a, p, 1), unit_residue(b, p, 1)
    s = 1
    if al % 2 and bl % 2 and p % 4 == 3:
        s = -s
    if bl % 2:
        s *= legendre_symbol(u, p)
    if al % 2:
        s *= legendre_symbol(v, p)
    return s


def _hilbert_dyadic(a, b) -> int:
    al, bl = valuation(a, 2), valuation(b, 2)
    u, v = unit_residue(a, 2, 3), unit_residue(b, 2, 3)
    e = ((u - 1) // 2) * ((v - 1) // 2)
    e += bl * ((u * u - 1) // 8) + al * ((v * v - 1) // 8)
    return -1 if e % 2 else 1


INFINITE_PLACE = -1


def hilbert_symbol(a, b, place: int) -> int:
    """Hilbert symbol (a, b) at a finite prime or the real place (-1).

    +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_place.
    """
    if a == 0 or b == 0:
        raise ValueError("hilbert_symbol needs nonzero arguments")
    if place == INFINITE_PLACE:
        return -1 if a < 0 and b < 0 else 1
    if place == 2:
        return _hilbert_dyadic(a, b)
    if not is_prime(place):
        raise ValueError(f"not a place: {place}")
    return _hilbert_odd(a, b, place)


def hilbert_support(a, b) -> list[int]:
    """Places (primes and -1) where the symbol (a,b) could be nontrivial."""
    places = {2, INFINITE_PLACE}
    for x in (a, b):
        fx = Fraction(x)
        for n in (fx.numerator, fx.denominator):
            n = abs(n)
            f = 2
            while f * f <= n:
                while n % f == 0:
                    places.add(f)
                    n //= f
                f += 1
            if n > 1:
                places.add(n)
    return sorted(places)


@dataclass(frozen=True)
class ResidueElement:
    """An element of Z/p^N with the precision N carried explicitly.

    Arithmetic requires matching (p, N); use lift_to / truncate_to for
    explicit precision moves (raising re-reads the stored value exactly,
    lowering truncates).
    """

    p: int
    N: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    def _check(self, other: "ResidueElement"):
        if self.p != other.p or self.N != other.N:
            raise ValueError("mixed p-adic precisions; convert explicitly")

    def __add__(self, other):
        self._check(other)
        return ResidueElement(self.p, self.N, self.value + other.value)

    def __sub__(self, other):
        self._check(other)
        return ResidueElement(self.p, self.N, self.value - other.value)

    def __mul__(self, other):
        self._check(other)
        return ResidueElement(self.p, self.N, self.value * other.value)

    def __neg__(self):
        return ResidueElement(self.p, self.N, -self.value)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> "ResidueElement":
        return ResidueElement(self.p, self.N, pow(self.value, -1, self.modulus))

    def lift_to(self, N: int) -> "ResidueElement":
        if N < self.N:
            raise ValueError("use truncate_to to lower precision")
        return ResidueElement(self.p, N, self.value)

    def truncate_to(self, N: int) -> "ResidueElement":
        if N > self.N:
            raise ValueError("use lift_to to raise precision")
        return ResidueElement(self.p, N, self.value % self.p ** N)

    def sqrt(self) -> "ResidueElement | None":
        r = hensel_sqrt(self.value, self.p, self.N)
        return None if r is None else ResidueElement(self.p, self.N, r)
