"""Optimal embeddings of local quadratic orders into local quaternion
orders at an odd prime.

The oracle enumerates embedded generators y in order coordinates mod p^N.
Writing y = a + b*x_ab + c*pi^r*x1 + d*pi^s*x3 in a standard order (or
y = a + b*x1 + c*x2 + d*x3 in a hereditary one), fixing the trace pins a
(resp. b) linearly, and the norm condition becomes a binary quadratic
equation solved exactly: one free coordinate is walked over zero-tailed
residue classes (with adaptive digit refinement wherever a valuation
decision is not yet determined), and the partner coordinate comes from a
square root mod p^k.  Every emitted solution is re-verified against the
trace/norm congruences, so the search layers can only lose completeness,
never soundness; completeness is guarded by the refinement margins and by
precision/section stability checks in the test suite.

Conductor bookkeeping: an element y whose minimal polynomial matches the
conductor-i generator optimally embeds the conductor-(i - k) order, where
k = min of the valuations of its three non-scalar order coordinates; the
optimality filter is exactly k = 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .localbass import (
    HereditaryOrder,
    LocalOrder,
    StandardBassOrder,
    coord_norm_exact,
    coord_trace_exact,
    ramified_invariant,
    std_norm,
    std_trace,
)
from .padic import (
    SquareClass,
    legendre_symbol,
    norm_group_classes,
    sqrt_all_mod,
    square_class,
    unit_residue,
    val_mod,
    valuation,
)

SPLIT, UNRAM, RAM = "split", "unram", "ram"


class PrecisionError(RuntimeError):
    """The requested computation is not determined at the given precision."""


def least_nonresidue(p: int) -> int:
    for a in range(2, p):
        if legendre_symbol(a, p) == -1:
            return a
    raise ValueError(f"no nonresidue mod {p}")


@dataclass(frozen=True, order=True)
class LocalQuadraticOrder:
    """An order B = Z_p + p^i O_L in a quadratic algebra L over Q_p.

    kind 'split' is L = Q_p x Q_p, 'unram' the unramified field, 'ram' a
    ramified field Q_p(sqrt(p*ram_unit)); ram_unit distinguishes the two
    ramified extensions by the square class of its unit part.
    """

    p: int
    kind: str
    i: int = 0
    ram_unit: int = 1

    def __post_init__(self):
        if self.kind not in (SPLIT, UNRAM, RAM):
            raise ValueError(f"unknown quadratic algebra kind {self.kind!r}")
        if self.i < 0:
            raise ValueError("conductor exponent must be >= 0")
        if self.kind == RAM and self.ram_unit % self.p == 0:
            raise ValueError("ram_unit must be a unit")

    def minpoly(self) -> tuple[int, int]:
        """(trace, norm) of the generator g with B = Z_p[g]."""
        p, i = self.p, self.i
        if self.kind == SPLIT:
            return (p ** i, 0)
        if self.kind == UNRAM:
            u0 = _unram_unit(p)
            return (p ** i, p ** (2 * i) * u0)
        return (0, -(p ** (2 * i + 1)) * self.ram_unit)

    def disc(self) -> int:
        t, nm = self.minpoly()
        return t * t - 4 * nm

    def artin(self) -> int:
        """(L/p): +1 split, -1 inert, 0 ramified."""
        return {SPLIT: 1, UNRAM: -1, RAM: 0}[self.kind]

    def norm_classes(self) -> frozenset[SquareClass]:
        return norm_group_classes(self.kind, self.p,
                                  self.ram_unit if self.kind == RAM else None)

    def shallower(self) -> "LocalQuadraticOrder":
        if self.i == 0:
            raise ValueError("the maximal order has no smaller conductor")
        return LocalQuadraticOrder(self.p, self.kind, self.i - 1, self.ram_unit)


def _unram_unit(p: int) -> int:
    # smallest unit u with 1-4u a non-square unit: x^2-x+u generates O_unram
    for u in range(1, p):
        if (1 - 4 * u) % p and legendre_symbol(1 - 4 * u, p) == -1:
            return u
    raise AssertionError


def generator_minpoly(B: LocalQuadraticOrder) -> tuple[int, int]:
    return B.minpoly()


def matching_ram_order(O: StandardBassOrder, i: int) -> LocalQuadraticOrder:
    """The ramified quadratic order of conductor i whose field matches the
    distinguished extension of O (n >= 3)."""
    bit = ramified_invariant(O).unit_nonsquare
    u = 1 if bit == 0 else least_nonresidue(O.p)
    return LocalQuadraticOrder(O.p, RAM, i, u)


def nonmatching_ram_order(O: StandardBassOrder, i: int) -> LocalQuadraticOrder:
    bit = ramified_invariant(O).unit_nonsquare
    u = 1 if bit == 1 else least_nonresidue(O.p)
    return LocalQuadraticOrder(O.p, RAM, i, u)


# ---------------------------------------------------------------------------
# conductors


def optimal_conductor(y, O: LocalOrder) -> int:
    """Conductor exponent of (Q_p + Q_p y) ∩ O for exact algebra coords y.

    Equals i0 - min(v(b), v(c), v(d)) where i0 = floor(v(disc y)/2) is the
    conductor of Z_p[y] and (b, c, d) are the non-scalar order coordinates.
    """
    from fractions import Fraction
    yf = tuple(Fraction(c) for c in y)
    dd = coord_trace_exact(yf) ** 2 - 4 * coord_norm_exact(yf, O.eps, O.pi)
    if dd == 0:
        raise ValueError("y is central or degenerate; no quadratic algebra")
    i0 = valuation(dd, O.p) // 2
    coords = O.order_coords(yf) if isinstance(O, StandardBassOrder) else yf
    tail = coords[1:]
    if all(c == 0 for c in tail):
        raise ValueError("y is scalar")
    k = min(valuation(c, O.p) for c in tail if c != 0)
    return i0 - k


def optimal_conductor_mod(y, O: LocalOrder, N: int) -> int:
    """Same as optimal_conductor for algebra coords given mod p^N; raises
    PrecisionError when the answer is not pinned down at this precision."""
    q = O.p ** N
    alg = O.coord_algebra(N)
    dd = alg.disc(tuple(c % q for c in y))
    vd = val_mod(dd, O.p, N)
    if vd >= N - 1:
        raise PrecisionError("discriminant not resolved at this precision")
    if isinstance(O, StandardBassOrder):
        coords = O.order_coords_mod(y, N)
        if coords is None:
            raise ValueError("y does not lie in O at this precision")
    else:
        coords = tuple(c % q for c in y)
    vals = [val_mod(c, O.p, N) for c in coords[1:]]
    k = min(vals)
    if k >= N - vd:
        raise PrecisionError("conductor defect not resolved; raise N")
    return vd // 2 - k


# ---------------------------------------------------------------------------
# the oracle


@dataclass(frozen=True, order=True)
class EmbeddingSolution:
    """Image of the conductor-i generator under an optimal embedding, in
    order coordinates mod p^precision."""

    y: tuple
    precision: int


def default_precision(B: LocalQuadraticOrder, O: LocalOrder) -> int:
    return O.n + 2 * B.i + 4


def _default_sections(p: int) -> tuple[int, int]:
    # width of the zero-tailed representative sections (var1, partner)
    return (2, 2) if p >= 11 else (3, 3)


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def spend(self, k: int = 1):
        self.left -= k
        if self.left < 0:
            raise PrecisionError("oracle search budget exceeded")


def _sqrt_reps(v: int, p: int, N: int) -> list[int]:
    """Square roots of v mod p^N, capped: for very deep v the full set is
    a coset tower, and only section representatives (distinct in their
    leading digits) are returned."""
    q = p ** N
    v %= q
    k = val_mod(v, p, N)
    if k < N and k % 2 == 1:
        return []
    if k >= N or k // 2 >= 3:
        h = p ** ((N + 1) // 2) if k >= N else None
        if k >= N:
            return [0] + [p ** ((N + 1) // 2) * w % q for w in range(1, p)]
        # v = p^k w, deep but resolved: keep one tail layer only
        from .padic import hensel_sqrt
        w = v // p ** k
        r = hensel_sqrt(w, p, N - k)
        if r is None:
            return []
        h = p ** (k // 2)
        base = p ** (N - k)
        out = {h * r % q, h * (base - r) % q}
        out |= {h * (r + base) % q, h * (base - r + base) % q}
        return sorted(out)
    return sqrt_all_mod(v, p, N)


def _form_layer(G: int, Mq: int, O: LocalOrder, lD: int, adaptive: bool,
                budget: _Budget, on_pair):
    """Solve u2*x^2 + u3*pi^s*x*D + eps*pi^(2s)*D^2 ≡ G (mod p^Mq) for the
    standard form (hereditary: s=0, u2=u3=1, (x, D) -> (c, d)).

    Walks zero-tailed classes of D; x comes from the quadratic formula with
    disc = pi^(2s) D^2 (1-4 eps) + 4 u2 G.  on_pair(x, D) -> stop flag.
    """
    p = O.p
    if isinstance(O, StandardBassOrder):
        s, u2, u3 = O.s, O.unit_beta, 1 + 2 * O.eps * O.beta
    else:
        s, u2, u3 = 0, 1, 1
    eps, pi = O.eps, O.pi
    qq = p ** Mq
    cap = max(1, Mq - 2 * s)
    inv2u2 = pow(2 * u2, -1, qq)
    pis = pi ** s

    def handle(D: int) -> bool:
        budget.spend()
        disc = (pis * pis * D * D * (1 - 4 * eps) + 4 * u2 * G) % qq
        for root in _sqrt_reps(disc, p, Mq):
            x = (-u3 * pis * D + root) * inv2u2 % qq
            if on_pair(x, D):
                return True
        return False

    if not adaptive:
        for D in range(p ** min(cap, lD)):
            if handle(D):
                return True
        return False

    start = min(cap, lD)
    stack = [(D, start) for D in range(p ** start - 1, -1, -1)]
    while stack:
        D, L = stack.pop()
        budget.spend()
        disc = (pis * pis * D * D * (1 - 4 * eps) + 4 * u2 * G) % qq
        det = min(Mq, 2 * s + L)  # disc is class-constant to this depth
        vd = val_mod(disc, p, det) if det > 0 else 0
        need = max(vd + 1 - 2 * s, 1 + (vd + 1) // 2 - 2 * s, 1)
        if vd < det and L >= need:
            if handle(D):
                return True
            continue
        if L >= cap:
            if handle(D):
                return True
            continue
        pL = p ** L
        for dig in range(p - 1, -1, -1):
            stack.append((D + dig * pL, L + 1))
    return False


def _walk_solutions(B: LocalQuadraticOrder, O: LocalOrder, M: int,
                    collector, sections=None, adaptive=True,
                    budget_limit: int = 30_000_000) -> None:
    """Drive the two-layer search; collector(y) -> stop flag."""
    p = O.p
    t, nm = B.minpoly()
    delta = t * t - 4 * nm
    q = p ** M
    Mq = M - 1
    qq = p ** Mq
    if val_mod(delta % q, p, M) >= M - 1:
        raise PrecisionError("generator discriminant not resolved; raise N")
    lC, lD = sections or _default_sections(p)
    budget = _Budget(budget_limit)
    inv2 = pow(2, -1, q)
    w0 = O.pi // p
    inv4w0 = pow(4 * w0, -1, qq)

    if isinstance(O, StandardBassOrder):
        if O.alpha != 0:
            raise NotImplementedError(
                "the oracle handles standard forms with alpha = 0; "
                "conjugate the order first")
        r = O.r
        pr = O.pi ** r
        cap1 = max(1, M - r)
        sens = 2 * r

        def W_of(C):
            return delta - (C * pr) ** 2 * (1 - 4 * O.eps)

        def emit(C, x, D) -> bool:
            ok = min(val_mod(x, p, M), val_mod(C, p, M),
                     val_mod(D, p, M)) == 0
            if not ok:
                return False
            a = (t - C * pr) * inv2 % q
            y = (a, x % q, C % q, D % q)
            if std_trace(O, y) % q != t % q or std_norm(O, y) % q != nm % q:
                raise AssertionError("oracle emitted a non-solution")
            return collector(y)

    else:
        # hereditary target: var1 is the scalar coordinate a; trace pins b
        r = 0
        cap1 = M
        sens = 0

        def W_of(a):
            b = t - 2 * a
            return (a * a + a * b + O.eps * b * b) - nm

        def emit(a, x, D) -> bool:
            b = (t - 2 * a) % q
            ok = min(val_mod(b, p, M), val_mod(x, p, M),
                     val_mod(D, p, M)) == 0
            if not ok:
                return False
            y = (a % q, b, x % q, D % q)
            alg = O.coord_algebra(M)
            if alg.trace(y) != t % q or alg.norm(y) != nm % q:
                raise AssertionError("oracle emitted a non-solution")
            return collector(y)

    def leaf(v1) -> bool:
        W = W_of(v1) % q
        if W % p:
            return False
        G = (W // p) * inv4w0 % qq
        return _form_layer(G, Mq, O, lD, adaptive, budget,
                           lambda x, D: emit(v1, x, D))

    if not adaptive:
        for v1 in range(p ** min(cap1, lC)):
            if leaf(v1):
                return
        return

    start = min(cap1, lC)
    stack = [(v, start) for v in range(p ** start - 1, -1, -1)]
    while stack:
        v1, L = stack.pop()
        budget.spend()
        W = W_of(v1)
        det = min(M, sens + L)
        vW = val_mod(W % q, p, det) if det > 0 else 0
        if vW < det:
            if vW == 0:
                continue
            s_par = O.s if isinstance(O, StandardBassOrder) else 0
            if L >= max(1, vW + s_par + 5 - sens):
                if leaf(v1):
                    return
                continue
        if L >= cap1:
            if leaf(v1):
                return
            continue
        pL = p ** L
        for dig in range(p - 1, -1, -1):
            stack.append((v1 + dig * pL, L + 1))


def enumerate_embeddings(B: LocalQuadraticOrder, O: LocalOrder,
                         N: int | None = None, sections=None,
                         limit: int | None = None) -> list[EmbeddingSolution]:
    """Section representatives of Emb(B, O) mod p^N, deterministically
    ordered.  Representatives cover the solution set up to the free tails
    of the enumeration; soundness of each entry is exact."""
    if N is None:
        N = default_precision(B, O)
    out: set[tuple] = set()

    def collect(y) -> bool:
        out.add(y)
        return limit is not None and len(out) >= limit

    _walk_solutions(B, O, N, collect, sections=sections, adaptive=False)
    return [EmbeddingSolution(y, N) for y in sorted(out)]


def embeddings_exist(B: LocalQuadraticOrder, O: LocalOrder,
                     N: int | None = None) -> bool:
    """Oracle existence of an optimal embedding, by exhaustive refinement
    search at precision N (early exit on the first verified solution)."""
    if N is None:
        N = default_precision(B, O)
    found = []

    def collect(y) -> bool:
        found.append(y)
        return True

    _walk_solutions(B, O, N, collect, adaptive=True)
    return bool(found)


def bruteforce_solutions(B: LocalQuadraticOrder, O: LocalOrder,
                         M: int) -> list[tuple]:
    """Dumb full sweep of (Z/p^M)^4 for tiny cross-checks of the walker."""
    p = O.p
    q = p ** M
    t, nm = B.minpoly()
    out = []
    for y in itertools.product(range(q), repeat=4):
        if isinstance(O, StandardBassOrder):
            tr, no = std_trace(O, y) % q, std_norm(O, y) % q
        else:
            alg = O.coord_algebra(M)
            tr, no = alg.trace(y), alg.norm(y)
        if tr != t % q or no != nm % q:
            continue
        if min(val_mod(c, p, M) for c in y[1:]) != 0:
            continue
        out.append(y)
    return out


# ---------------------------------------------------------------------------
# unit orbits and Nr(E)


def _expand_exact(O: LocalOrder, y):
    if not isinstance(O, StandardBassOrder):
        return tuple(int(c) for c in y)
    a, b, c, d = y
    return (a, b * O.alpha + c * O.pi ** O.r, b,
            b * O.beta + d * O.pi ** O.s)


def _mul_ord_exact(O: LocalOrder, u, v):
    """Exact integer product in order coordinates.  Representatives are
    exact integer tuples, and the order is an honest Z-lattice closed under
    multiplication, so the divisions below are exact."""
    from .localbass import coord_mul_exact
    w = coord_mul_exact(_expand_exact(O, u), _expand_exact(O, v),
                        O.eps, O.pi)
    if not isinstance(O, StandardBassOrder):
        return w
    a0, a1, a2, a3 = w
    b = a2
    pr, ps = O.pi ** O.r, O.pi ** O.s
    nc, nd = a1 - b * O.alpha, a3 - b * O.beta
    if nc % pr or nd % ps:
        raise AssertionError("order not closed under multiplication?")
    return (a0, b, nc // pr, nd // ps)


def _expand_mod(O: LocalOrder, y, N: int):
    q = O.p ** N
    return tuple(c % q for c in _expand_exact(O, y))


def _conj_ord_exact(O: LocalOrder, y):
    t = coord_trace_exact(_expand_exact(O, y))
    return tuple(t - c if j == 0 else -c for j, c in enumerate(y))


def _plane_generators(y1, y2, O: LocalOrder):
    """Vectors spanning {u : y1 u = u y2} over Q_p, in exact integer order
    coordinates.

    For y1, y2 with equal trace t and norm, z = y1 v - v (t - y2)
    intertwines for every v: y1 z - z y2 = t y1 v - y1 v (y2 + (t - y2)) = 0.
    Running v over the order basis spans the plane.
    """
    y2bar = _conj_ord_exact(O, y2)
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    gens = []
    for bk in basis:
        z = tuple(u - v for u, v in
                  zip(_mul_ord_exact(O, y1, bk), _mul_ord_exact(O, bk, y2bar)))
        if any(z):
            gens.append(list(z))
    return gens


def _intertwiner_matrix(y1, y2, O: LocalOrder):
    """Exact integer matrix T with (u T)_j = (y1 u - u y2)_j in order
    coordinates, for u a row vector of order coordinates."""
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    rows = []
    for bk in basis:
        left = _mul_ord_exact(O, y1, bk)
        right = _mul_ord_exact(O, bk, y2)
        rows.append([l - r for l, r in zip(left, right)])
    return rows


def _intertwiner_lattice(y1, y2, O: LocalOrder, N: int):
    """HNF basis of {u in O/p^N (order coords) : y1 u ≡ u y2 mod p^N}."""
    from .intmat import nullspace_mod
    return nullspace_mod(_intertwiner_matrix(y1, y2, O), O.p, N)


def same_orbit(y1, y2, O: LocalOrder, N: int) -> bool:
    """Whether two optimal generators are conjugate by a unit of O at
    precision N: the intertwiner lattice contains an element of unit
    reduced norm iff its norm form is nonzero mod p."""
    p = O.p
    lat = _intertwiner_lattice(y1, y2, O, N)
    alg = O.coord_algebra(N)
    norms = [alg.norm(_expand_mod(O, r, N)) for r in lat]
    for i, ni in enumerate(norms):
        if ni % p:
            return True
        for j in range(i + 1, len(lat)):
            both = tuple((a + b) % alg.q for a, b in zip(lat[i], lat[j]))
            nij = alg.norm(_expand_mod(O, both, N)) - ni - norms[j]
            if nij % p:
                return True
    return False


def _orbit_classes(reps, O: LocalOrder, N: int):
    classes: list[tuple] = []
    for sol in reps:
        y = sol.y if isinstance(sol, EmbeddingSolution) else sol
        for c in classes:
            if same_orbit(c, y, O, N):
                break
        else:
            classes.append(y)
    return classes


def count_classes(B: LocalQuadraticOrder, O: LocalOrder,
                  N: int | None = None, sections=None) -> int:
    """m(B, O, O^*): the number of unit-conjugacy classes of optimal
    embeddings, from section representatives partitioned by same_orbit."""
    if N is None:
        N = default_precision(B, O)
    reps = enumerate_embeddings(B, O, N, sections=sections)
    return len(_orbit_classes(reps, O, N))


@dataclass(frozen=True)
class NrEResult:
    """Square classes of reduced norms over the translate set E of a fixed
    optimal embedding, as a union of Nm(K^*)-cosets, plus witnesses
    (class representative y, intertwiner z, v(Nr z))."""

    classes: frozenset[SquareClass]
    witnesses: tuple
    precision: int
    base: tuple


def _plane_min_norm(y1, y2, O: LocalOrder, N: int):
    """An intertwiner z (y1 z = z y2) with small, resolved v(Nr(z)),
    scanned over mod-p combinations of the closed-form plane generators.
    Any plane element determines the same Nm(K^*)-coset of Nr."""
    p = O.p
    alg = O.coord_algebra(N)
    gens = _plane_generators(y1, y2, O)
    best, best_v = None, N + 1
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            for a in range(p):
                for b in (0, 1) if i == j else range(p):
                    if a == 0 and b == 0:
                        continue
                    z = tuple((a * u + b * v) % alg.q
                              for u, v in zip(gens[i], gens[j]))
                    if not any(z):
                        continue
                    v0 = val_mod(alg.norm(_expand_mod(O, z, N)), p, N)
                    if v0 < best_v:
                        best, best_v = z, v0
    if best is None or best_v >= N - 2:
        raise PrecisionError("no intertwiner with resolved norm; raise N")
    return best, best_v


def nr_E(B: LocalQuadraticOrder, O: LocalOrder, N: int | None = None,
         sections=None) -> NrEResult:
    """Square classes of Nr on E = {g : phi(K) ∩ g O g^-1 = phi(B)}.

    Picks the lexicographically least representative as the base embedding
    y0; every representative y gets an intertwiner z with y0 z = z y, and
    the class set is the union of Nm(K^*) Nr(z) over representatives (the
    class of Nr(z) is constant on unit orbits, so no deduplication is
    needed for the class set).
    """
    if B.kind != RAM:
        raise ValueError("Nr(E) classes are computed for ramified K only")
    if N is None:
        N = default_precision(B, O)
    reps = enumerate_embeddings(B, O, N, sections=sections)
    if not reps:
        raise ValueError("empty embedding set")
    p = O.p
    alg = O.coord_algebra(N)
    y0 = reps[0].y
    nm_classes = B.norm_classes()
    out = set(nm_classes)
    witnesses = []
    seen_cls: set[SquareClass] = set()
    for sol in reps:
        z, v = _plane_min_norm(y0, sol.y, O, N)
        nr = alg.norm(_expand_mod(O, z, N))
        unit = (nr // p ** v) % p
        cls = SquareClass(v % 2, 0 if legendre_symbol(unit, p) == 1 else 1)
        if cls not in seen_cls:
            seen_cls.add(cls)
            witnesses.append((sol.y, z, v))
            out |= {cls * c for c in nm_classes}
    return NrEResult(frozenset(out), tuple(witnesses), N, y0)


# ---------------------------------------------------------------------------
# closed forms


def embed_exists_cf(n: int, i: int, kind: str, a_ramified: bool, q: int,
                    match: bool | None = None) -> bool:
    """Closed-form existence of an optimal embedding of the conductor-i
    order in the quadratic algebra of the given kind into a local order
    with invariants (e, n): e = 0 standard for n >= 2, hereditary for
    n = 1.  For kind 'ram' and n >= 3, match says whether the field agrees
    with the order's distinguished ramified extension.  Returns True iff
    embeddings exist; the six obstruction cases are tested in order.
    """
    if kind not in (SPLIT, UNRAM, RAM):
        raise ValueError(f"unknown kind {kind!r}")
    if kind == SPLIT and a_ramified:
        raise ValueError("Q_p x Q_p does not embed in a division algebra")
    if kind == RAM and n >= 3 and match is None:
        raise ValueError("ramified kind with n >= 3 needs match flag")
    is_k = kind == RAM and n >= 3 and bool(match)
    if a_ramified and n < 2 * i:
        return False                                            # (1)
    if a_ramified and n == 2 * i and kind == RAM:
        return False                                            # (2)
    if not a_ramified and n == 2 * i + 1 and kind == UNRAM:
        return False                                            # (3)
    if (not a_ramified and n == 2 * i + 1 and n >= 3
            and kind == RAM and is_k and q == 3):
        return False                                            # (4)
    if n == 2 * i + 2 and kind in (SPLIT, UNRAM):
        return False                                            # (5)
    if n >= 2 * i + 3 and not is_k:
        return False                                            # (6)
    return True


def local_criterion(n: int, i: int, a_split: bool, q: int) -> bool:
    """The per-prime selectivity condition at a prime with e = 0 and K
    ramified: (i) n >= 2i+3, (ii) n = 2i+1 split with residue field of
    size 5, (iii) n = 2i+1 ramified with residue field of size 3."""
    if n >= 2 * i + 3:
        return True
    if n == 2 * i + 1 and a_split and q == 5:
        return True
    if n == 2 * i + 1 and not a_split and q == 3:
        return True
    return False


def reduce_pair(B: LocalQuadraticOrder, O: StandardBassOrder):
    """Apply (B, O) -> (M(B), M^2(O)) until i = 1 or n < 3; returns
    (B~, O~, steps).  The norm classes of the translate sets agree across
    the reduction."""
    if not isinstance(O, StandardBassOrder):
        raise ValueError("reduction applies to e = 0 standard forms")
    i, n = B.i, O.n
    k = 0
    cur_B, cur_O = B, O
    while cur_B.i > 1 and cur_O.n >= 3:
        cur_B = cur_B.shallower()
        nn = cur_O.n - 2
        if nn >= 2:
            cur_O = StandardBassOrder(O.p, O.split, nn, O.alpha, O.beta,
                                      O.eps, O.pi)
        else:
            cur_O = HereditaryOrder(O.p, O.split, O.eps, O.pi)
        k += 1
    return cur_B, cur_O, k
