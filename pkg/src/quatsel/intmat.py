"""Small exact linear algebra helpers: integer HNF, kernels, lattice ops,
and linear solves over Z/p^N.  Everything here is for 4-ish dimensional
problems; clarity over asymptotics."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite form of the lattice spanned by the given integer rows.

    Returns a basis (list of rows) with positive pivots, entries above each
    pivot reduced into [0, pivot); zero rows dropped.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    basis: list[list[int]] = []
    for row in mat:
        row = list(row)
        for b in basis:
            j = next(i for i, x in enumerate(b) if x)
            if row[j]:
                if row[j] % b[j] == 0:
                    q = row[j] // b[j]
                    for k in range(ncols):
                        row[k] -= q * b[k]
                else:
                    g, s, t = _xgcd(b[j], row[j])
                    u, v = b[j] // g, row[j] // g
                    for k in range(ncols):
                        bk, rk = b[k], row[k]
                        b[k] = s * bk + t * rk
                        row[k] = -v * bk + u * rk
        if any(row):
            basis.append(row)
            basis.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    # normalize signs and reduce above pivots
    for i in range(len(basis) - 1, -1, -1):
        j = next(k for k, x in enumerate(basis[i]) if x)
        if basis[i][j] < 0:
            basis[i] = [-x for x in basis[i]]
        for i2 in range(i):
            if basis[i2][j]:
                q = basis[i2][j] // basis[i][j]
                basis[i2] = [a - q * b for a, b in zip(basis[i2], basis[i])]
    return basis


def in_lattice(basis: list[list[int]], vec: list[int]) -> bool:
    return solve_lattice(basis, vec) is not None


def solve_lattice(basis: list[list[int]], vec) -> list | None:
    """Integer coefficients expressing vec in the HNF basis, or None.

    Accepts Fraction entries in vec; returns Fraction coefficients then
    (still requiring an exact representation in the Q-span)."""
    vec = [Fraction(x) for x in vec]
    coeffs = []
    for b in basis:
        j = next(i for i, x in enumerate(b) if x)
        if vec[j] == 0:
            coeffs.append(Fraction(0))
            continue
        q = vec[j] / b[j]
        coeffs.append(q)
        vec = [v - q * x for v, x in zip(vec, b)]
    if any(vec):
        return None
    if all(c.denominator == 1 for c in coeffs):
        return [int(c) for c in coeffs]
    return None


def int_kernel(mat: list[list[int]]) -> list[list[int]]:
    """Basis of {x in Z^n : x @ mat = 0} (row vectors), via HNF bookkeeping."""
    n = len(mat)
    if n == 0:
        return []
    ncols = len(mat[0])
    # augment with identity and run the same elimination
    work = [list(mat[i]) + [0] * i + [1] + [0] * (n - 1 - i) for i in range(n)]
    basis: list[list[int]] = []
    kernel: list[list[int]] = []
    for row in work:
        for b in basis:
            j = next(i for i, x in enumerate(b[:ncols]) if x)
            if row[j]:
                if row[j] % b[j] == 0:
                    q = row[j] // b[j]
                    row[:] = [a - q * c for a, c in zip(row, b)]
                else:
                    g, s, t = _xgcd(b[j], row[j])
                    u, v = b[j] // g, row[j] // g
                    for k in range(len(row)):
                        bk, rk = b[k], row[k]
                        b[k] = s * bk + t * rk
                        row[k] = -v * bk + u * rk
        if any(row[:ncols]):
            basis.append(row)
        else:
            kernel.append(row[ncols:])
    return hnf_rows(kernel)


def lattice_intersection(b1: list[list[int]], b2: list[list[int]]) -> list[list[int]]:
    """HNF basis of the intersection of two integer row lattices."""
    stacked = [list(r) for r in b1] + [list(r) for r in b2]
    ker = int_kernel(stacked)
    n1 = len(b1)
    out = []
    for k in ker:
        v = [sum(k[i] * b1[i][j] for i in range(n1)) for j in range(len(b1[0]))]
        out.append(v)
    return hnf_rows(out)


def det_int(mat: list[list[int]]) -> int:
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    a = [list(map(int, r)) for r in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def lattice_index(sup: list[list[int]], sub: list[list[int]]) -> Fraction:
    """Generalized index [sup : sub] = |det(sub)| / |det(sup)| for full-rank
    row lattices in the same dimension."""
    return Fraction(abs(det_int(sub)), abs(det_int(sup)))


# ---------------------------------------------------------------------------
# Z/p^N linear algebra


def nullspace_mod(mat: list[list[int]], p: int, N: int) -> list[list[int]]:
    """Generators of {x in (Z/p^N)^n : x @ mat ≡ 0 mod p^N} as an integer
    lattice basis (includes the trivial p^N e_i directions implicitly;
    returned rows are reduced mod p^N and nonzero)."""
    q = p ** N
    n = len(mat)
    ncols = len(mat[0]) if n else 0
    rows = [list(r) for r in mat]
    # kernel over Z of [mat | q*I_cols] projected to the x-part
    ext = [r[:] for r in rows]
    for j in range(ncols):
        ext.append([q if k == j else 0 for k in range(ncols)])
    ker = int_kernel(ext)
    out = []
    for k in ker:
        v = [c % q for c in k[:n]]
        if any(v):
            out.append(v)
    return hnf_rows(out + [[q if k == j else 0 for k in range(n)]
                           for j in range(n)])


def solve_mod(mat: list[list[int]], rhs: list[int], p: int, N: int) -> list[int] | None:
    """One x with x @ mat ≡ rhs (mod p^N), or None."""
    q = p ** N
    n = len(mat)
    ncols = len(mat[0])
    ext = [list(mat[i]) + [0] * n for i in range(n)]
    for i in range(n):
        ext[i][ncols + i] = 1
    for j in range(ncols):
        ext.append([q if k == j else 0 for k in range(ncols)] + [0] * n)
    basis = hnf_rows(ext)
    target = [r % q for r in rhs]
    coeffs = solve_lattice([b[:ncols] for b in basis if any(b[:ncols])], target)
    if coeffs is None:
        return None
    x = [0] * n
    nz = [b for b in basis if any(b[:ncols])]
    for c, b in zip(coeffs, nz):
        for i in range(n):
            x[i] += c * b[ncols + i]
    return [v % q for v in x]
