"""Exact integer and rational linear algebra used throughout the package.

Matrices are lists of lists of Python ints (arbitrary precision) unless a
function explicitly works on numpy arrays.  numpy is used only where the
result is provably exact: mod-p elimination in int64, and float64 matrix
products whose every intermediate value stays below 2**53.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

Mat = list[list[int]]
Vec = list[int]

# Primes just below 2**31 so that products of two residues fit in int64.
MODP_PRIMES: tuple[int, ...] = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
    2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
    2147483423, 2147483399, 2147483353, 2147483323, 2147483269,
    2147483249, 2147483237, 2147483179, 2147483171, 2147483137,
)

_FLOAT_EXACT_LIMIT = 2**53


def mat_identity(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_transpose(a: Sequence[Sequence[int]]) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def mat_abs_max(a: Sequence[Sequence[int]]) -> int:
    m = 0
    for row in a:
        for x in row:
            if x < 0:
                x = -x
            if x > m:
                m = x
    return m


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Mat:
    """Exact matrix product, using float64 BLAS when provably lossless."""
    n, k = len(a), len(a[0]) if a else 0
    if not a or not b:
        return []
    m = len(b[0])
    amax, bmax = mat_abs_max(a), mat_abs_max(b)
    if amax and bmax and amax * bmax * k < _FLOAT_EXACT_LIMIT:
        prod = np.array(a, dtype=np.float64) @ np.array(b, dtype=np.float64)
        return [[int(x) for x in row] for row in prod]
    bt = mat_transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vec:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v: Sequence[int], a: Sequence[Sequence[int]]) -> Vec:
    n = len(a[0])
    out = [0] * n
    for c, row in zip(v, a):
        if c:
            for j, x in enumerate(row):
                out[j] += c * x
    return out


def dot(v: Sequence[int], w: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(v, w))


# ---------------------------------------------------------------------------
# Hermite normal form

def hnf_row(a: Sequence[Sequence[int]], with_transform: bool = False):
    """Row-style Hermite normal form.

    Returns (H, pivots) or (H, pivots, U) with U unimodular, U*A = (H padded
    with zero rows).  H contains only the nonzero rows, pivots the pivot
    column of each row.  Pivot entries are positive and entries above each
    pivot are reduced into [0, pivot).
    """
    rows = [list(r) for r in a]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    u = mat_identity(nrows) if with_transform else None
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        piv = None
        best = None
        for i in range(r, nrows):
            x = rows[i][c]
            if x != 0 and (best is None or abs(x) < best):
                best = abs(x)
                piv = i
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        if u is not None:
            u[r], u[piv] = u[piv], u[r]
        # Euclidean elimination below the pivot.
        while True:
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c] == 0:
                    continue
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if u is not None:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                if rows[i][c] != 0:
                    done = False
                    if abs(rows[i][c]) < abs(rows[r][c]):
                        rows[r], rows[i] = rows[i], rows[r]
                        if u is not None:
                            u[r], u[i] = u[i], u[r]
            if done:
                break
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                if u is not None:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    h = rows[:r]
    if with_transform:
        return h, pivots, u
    return h, pivots


def left_kernel(a: Sequence[Sequence[int]]) -> Mat:
    """Saturated basis of {x : x*A = 0}, in row HNF."""
    if not a:
        return []
    h, pivots, u = hnf_row(a, with_transform=True)
    ker = u[len(h):]
    if not ker:
        return []
    kh, _ = hnf_row(ker)
    return kh


def right_kernel(a: Sequence[Sequence[int]]) -> Mat:
    """Saturated basis of {x : A*x = 0}, as rows, in row HNF."""
    return left_kernel(mat_transpose(a))


def same_row_span(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """Whether two integer row families generate the same subgroup of Z^n."""
    ha, _ = hnf_row(a)
    hb, _ = hnf_row(b)
    return ha == hb


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def saturate_row_span(rows: Sequence[Sequence[int]]) -> Mat:
    """Saturation of the row span: {x in Z^n : x in Q-span(rows)}, in row HNF.

    Only primes dividing the HNF pivot product can divide the index, so the
    p-adic densification loop runs over those primes alone.
    """
    h, pivots = hnf_row(rows)
    if not h:
        return []
    cand = 1
    for i, c in enumerate(pivots):
        cand *= h[i][c]
    for p in prime_factors(cand):
        while True:
            null = modp_kernel(_as_modp(mat_transpose(h), p), p)
            if null.shape[0] == 0:
                break
            new_rows = list(h)
            for cvec in null:
                combo = [0] * len(h[0])
                for ci, row in zip(cvec.tolist(), h):
                    if ci:
                        for j, x in enumerate(row):
                            combo[j] += ci * x
                if any(v % p for v in combo):
                    raise ArithmeticError("mod-p kernel did not lift to a divisible row")
                new_rows.append([v // p for v in combo])
            h, pivots = hnf_row(new_rows)
    return h


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(a: Sequence[Sequence[int]], with_transform: bool = False):
    """Smith normal form.  Returns divisors, or (divisors, U, V) with U*A*V = D.

    Divisors are nonnegative, in divisibility order, padded with zeros up to
    min(nrows, ncols).
    """
    m = [list(r) for r in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    u = mat_identity(nrows) if with_transform else None
    v = mat_identity(ncols) if with_transform else None

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        m[dst] = [x - q * y for x, y in zip(m[dst], m[src])]
        if u is not None:
            u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in m:
            row[dst] -= q * row[src]
        if v is not None:
            for row in v:
                row[dst] -= q * row[src]

    t = 0
    size = min(nrows, ncols)
    while t < size:
        # Locate a smallest nonzero entry in the remaining block.
        piv = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = m[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        clean = False
        while not clean:
            clean = True
            for i in range(t + 1, nrows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, q)
                    if m[i][t]:
                        swap_rows(t, i)
                        clean = False
            for j in range(t + 1, ncols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, q)
                    if m[t][j]:
                        swap_cols(t, j)
                        clean = False
        # Ensure divisibility of the remaining block by the pivot.
        p = m[t][t]
        bad = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if m[i][j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, -1)
            continue
        t += 1

    divisors = [abs(m[i][i]) for i in range(size)]
    # Normalize signs in the transforms so U*A*V has nonnegative diagonal.
    if with_transform:
        for i in range(size):
            if m[i][i] < 0:
                u[i] = [-x for x in u[i]]
        return divisors, u, v
    return divisors


# ---------------------------------------------------------------------------
# Rank, determinant, characteristic polynomial

def rank_exact(a: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    m = [list(r) for r in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            if row[c] == 0:
                # Still rescale for Bareiss consistency.
                for j in range(c + 1, ncols):
                    row[j] = row[j] * pr[c] // prev
                continue
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (row[j] * pr[c] - f * pr[j]) // prev
            row[c] = 0
        prev = pr[c]
        rank += 1
        if rank == nrows:
            break
    return rank


def det_bareiss(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = None
            for i in range(k + 1, n):
                if m[i][k]:
                    piv = i
                    break
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly(a: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(xI - A), highest degree first, by Berkowitz.

    Division-free and exact; A must be square.
    """
    n = len(a)
    if n == 0:
        return [1]
    # Berkowitz: iteratively build the coefficient vector.
    coeffs = [1, -a[0][0]]
    for k in range(1, n):
        # Principal submatrix of size k+1; R = row, C = column, M = interior.
        mk = [row[:k] for row in a[:k]]
        rrow = a[k][:k]
        ccol = [a[i][k] for i in range(k)]
        akk = a[k][k]
        # Toeplitz column: [1, -akk, -R*C, -R*M*C, -R*M^2*C, ...]
        toep = [1, -akk]
        vec = ccol
        for _ in range(k):
            toep.append(-dot(rrow, vec))
            vec = mat_vec(mk, vec)
        new = [0] * (k + 2)
        for i, c in enumerate(coeffs):
            for j, t in enumerate(toep):
                if i + j <= k + 1:
                    new[i + j] += c * t
        # Truncation: toeplitz product keeps degree k+2 terms.
        coeffs = new
    return coeffs


def descartes_sign_counts(coeffs: Sequence[int]) -> tuple[int, int, int]:
    """(positive, negative, zero) root counts of a real-rooted polynomial.

    coeffs are highest degree first.  Exact by Descartes' rule, which is an
    equality for polynomials with all roots real.
    """
    n = len(coeffs) - 1
    zero = 0
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        zero += 1
        cs.pop()
    signs = [1 if c > 0 else -1 for c in cs if c != 0]
    pos = sum(1 for x, y in zip(signs, signs[1:]) if x != y)
    neg = n - zero - pos
    return pos, neg, zero


# ---------------------------------------------------------------------------
# Rational solving

def solve_rational(a: Sequence[Sequence[int]], rhs: Sequence[Sequence[int]]):
    """Solve A*X = B exactly over Q; A square nonsingular.

    rhs is given column-wise as a matrix B (list of rows).  Returns X as a
    list of rows of Fractions, or None if A is singular.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(x) for x in brow]
         for row, brow in zip(a, rhs)]
    w = len(rhs[0]) if rhs else 0
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:n + w] for row in m]


def inv_rational(a: Sequence[Sequence[int]]):
    """Exact inverse of a nonsingular integer matrix, as Fractions."""
    n = len(a)
    return solve_rational(a, mat_identity(n))


def rational_row_space_kernel(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix (rows), by elimination."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Mod-p linear algebra (numpy, int64; p < 2**31 keeps products in range)

def _as_modp(a, p: int) -> np.ndarray:
    arr = np.asarray(a, dtype=object) if not isinstance(a, np.ndarray) else a
    if isinstance(arr, np.ndarray) and arr.dtype != object:
        return np.mod(arr.astype(np.int64), p)
    return np.array([[int(x) % p for x in row] for row in a], dtype=np.int64)


def modp_eliminate(a, p: int):
    """Row-reduce a copy of A mod p; returns (reduced, pivot_columns)."""
    m = _as_modp(a, p)
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        rest = np.nonzero(m[:, c])[0]
        rest = rest[rest != r]
        if rest.size:
            m[rest] = (m[rest] - np.outer(m[rest, c], m[r])) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def modp_rank(a, p: int) -> int:
    return len(modp_eliminate(a, p)[1])


def modp_kernel(a, p: int) -> np.ndarray:
    """Basis (rows) of the right kernel of A mod p."""
    m, pivots = modp_eliminate(a, p)
    ncols = m.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(m[i, fc])) % p
    return basis


def modp_solve_matrix(a, b, p: int):
    """Solve A*X = B mod p for square A; returns X or None if singular."""
    a = _as_modp(a, p)
    b = _as_modp(b, p)
    n = a.shape[0]
    m = np.concatenate([a, b], axis=1)
    r = 0
    for c in range(n):
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            return None
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        rest = np.nonzero(m[:, c])[0]
        rest = rest[rest != r]
        if rest.size:
            m[rest] = (m[rest] - np.outer(m[rest, c], m[r])) % p
        r += 1
    return m[:, n:]


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    g, x = _inv_mod(m1 % m2, m2)
    assert g == 1
    t = ((r2 - r1) * x) % m2
    return r1 + m1 * t, m1 * m2


def _inv_mod(a: int, m: int) -> tuple[int, int]:
    g, x, _ = _xgcd(a % m, m)
    return g, x % m


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def symmetric_mod(x: int, m: int) -> int:
    x %= m
    if 2 * x > m:
        x -= m
    return x


def crt_reconstruct_int_matrix(residue_fn, verify_fn, max_primes: int = 18):
    """Reconstruct an integer matrix from mod-p images, verifying exactly.

    residue_fn(p) returns the matrix mod p as a numpy array (or None to skip
    the prime).  After each new prime the symmetric-range CRT candidate is
    tested with verify_fn(candidate_rows); the first verified candidate is
    returned.  Returns None if no candidate verifies.
    """
    acc = None
    mod = 1
    last = None
    for p in MODP_PRIMES[:max_primes]:
        res = residue_fn(p)
        if res is None:
            continue
        res = np.mod(res, p).astype(object)
        if acc is None:
            acc, mod = res, p
        else:
            g, inv = _inv_mod(mod % p, p)
            delta = (res - (acc % p)) % p
            acc = acc + (delta * inv % p) * mod
            mod *= p
        cand = [[symmetric_mod(int(x), mod) for x in row] for row in acc]
        if cand == last:
            continue
        last = cand
        if verify_fn(cand):
            return cand
    return None


# ---------------------------------------------------------------------------
# Misc

def floor_sqrt_fraction(x: Fraction) -> int:
    """floor(sqrt(x)) for a nonnegative rational x."""
    if x < 0:
        raise ValueError("negative radicand")
    n, d = x.numerator, x.denominator
    return isqrt(n * d) // d


def gcd_vector(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
