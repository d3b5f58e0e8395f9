"""Exact integer-lattice linear algebra.

Normal forms, radical quotients, signatures, discriminant groups, unimodular
gluing, and definite short-vector enumeration.  All computations are exact;
floating point is never used for a result, only (elsewhere) for provably
lossless integer work.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _intlinalg as la
from ._intlinalg import Mat
from .errors import (
    DegenerateLatticeError,
    IndefiniteLatticeError,
    InvalidGlueError,
    WrongSymmetryError,
)

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"


class IntegerLattice:
    """Finitely generated free abelian group with an integer Gram matrix."""

    __slots__ = ("rank", "gram", "symmetry", "label", "_np")

    def __init__(self, gram: Sequence[Sequence[int]], symmetry: str = SYMMETRIC,
                 label: Optional[str] = None):
        g = [[int(x) for x in row] for row in gram]
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("gram matrix must be square")
        if symmetry not in (SYMMETRIC, ANTISYMMETRIC):
            raise ValueError(f"unknown symmetry {symmetry!r}")
        sign = 1 if symmetry == SYMMETRIC else -1
        for i in range(n):
            for j in range(i, n):
                if g[i][j] != sign * g[j][i]:
                    raise ValueError("gram matrix does not match its symmetry flag")
        self.rank = n
        self.gram = g
        self.symmetry = symmetry
        self.label = label
        self._np = None

    def np_gram(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array(self.gram, dtype=np.int64) if self.rank else np.zeros((0, 0), dtype=np.int64)
        return self._np

    def pairing(self, v: Sequence[int], w: Sequence[int]) -> int:
        return la.dot(la.vec_mat(list(v), self.gram), list(w))

    def norm(self, v: Sequence[int]) -> int:
        return self.pairing(v, v)

    def is_symmetric(self) -> bool:
        return self.symmetry == SYMMETRIC

    def relabel(self, label: str) -> "IntegerLattice":
        return IntegerLattice(self.gram, self.symmetry, label)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntegerLattice) and self.gram == other.gram
                and self.symmetry == other.symmetry)

    def __repr__(self) -> str:
        name = self.label or "lattice"
        return f"<{name}: rank {self.rank}, {self.symmetry}>"


@dataclass(frozen=True)
class DiscriminantData:
    """Elementary divisors (> 1, in divisibility order) of L*/L and the group order."""

    elementary_divisors: tuple[int, ...]
    group_order: int

    def is_trivial(self) -> bool:
        return self.group_order == 1

    def is_cyclic(self) -> bool:
        return len(self.elementary_divisors) <= 1


@dataclass
class GlueSpec:
    """Orthogonal components plus rational glue vectors in their combined basis."""

    components: list[IntegerLattice]
    glue_vectors: list[list[Fraction]] = field(default_factory=list)

    def total_rank(self) -> int:
        return sum(c.rank for c in self.components)

    def combined_gram(self) -> Mat:
        n = self.total_rank()
        g = [[0] * n for _ in range(n)]
        off = 0
        for c in self.components:
            for i in range(c.rank):
                for j in range(c.rank):
                    g[off + i][off + j] = c.gram[i][j]
            off += c.rank
        return g

    def symmetry(self) -> str:
        kinds = {c.symmetry for c in self.components}
        if len(kinds) != 1:
            raise InvalidGlueError("components mix symmetric and antisymmetric pairings")
        return kinds.pop()


# ---------------------------------------------------------------------------
# Normal forms

def smith_normal_form(m: Sequence[Sequence[int]]):
    """Smith divisors plus the unimodular transform pair (U, V) with U*M*V diagonal."""
    divisors, u, v = la.smith_normal_form(m, with_transform=True)
    return divisors, (u, v)


def hermite_normal_form(m: Sequence[Sequence[int]]) -> Mat:
    h, _ = la.hnf_row(m)
    return h


# ---------------------------------------------------------------------------
# Radical quotient

def radical_quotient(lattice: IntegerLattice, kernel_rows: Optional[Mat] = None):
    """Quotient by the kernel of the pairing.

    Returns (quotient, projection, representatives): projection is a
    rank x quotient-rank integer matrix whose row i gives the class of old
    basis vector e_i in the quotient basis; representatives lifts the quotient
    basis back (representatives * projection = identity).  The quotient basis
    is saturated and deterministic (HNF of the kernel, then either a
    coordinate subsection certified by a unimodular minor or an SNF basis
    completion).
    """
    g = lattice.gram
    n = lattice.rank
    if kernel_rows is None:
        kernel_rows = la.right_kernel(g)
    else:
        prod = la.mat_mul(kernel_rows, g)
        if any(x for row in prod for x in row):
            raise ValueError("supplied kernel rows are not in the radical")
        kernel_rows, _ = la.hnf_row(kernel_rows)
    r = len(kernel_rows)
    if r == 0:
        ident = la.mat_identity(n)
        return IntegerLattice(g, lattice.symmetry, lattice.label), ident, ident

    k = kernel_rows
    # Fast path: find r coordinates T on which the kernel has a unimodular minor.
    _, pivots = la.hnf_row(k)
    sub = [[row[c] for c in pivots] for row in k]
    if len(pivots) == r and abs(la.det_bareiss(sub)) == 1:
        t_cols = list(pivots)
        s_cols = [c for c in range(n) if c not in set(t_cols)]
        x = la.solve_rational(sub, la.mat_identity(r))
        x_int = [[int(v) for v in row] for row in x]
        m = la.mat_mul(x_int, [[row[c] for c in s_cols] for row in k])
        proj = []
        t_index = {c: i for i, c in enumerate(t_cols)}
        for i in range(n):
            if i in t_index:
                proj.append([-v for v in m[t_index[i]]])
            else:
                proj.append([1 if s_cols[j] == i else 0 for j in range(len(s_cols))])
        qgram = [[g[a][b] for b in s_cols] for a in s_cols]
        reps = [[1 if j == c else 0 for j in range(n)] for c in s_cols]
    else:
        # General path: complete the saturated kernel to a basis via SNF.
        divisors, u, v = la.smith_normal_form(k, with_transform=True)
        if any(dv != 1 for dv in divisors[:r]):
            raise DegenerateLatticeError("kernel of the pairing is not saturated")
        w = la.solve_rational(v, la.mat_identity(n))
        reps = [[int(x) for x in row] for row in w][r:]
        qgram = la.mat_mul(la.mat_mul(reps, g), la.mat_transpose(reps))
        proj = [row[r:] for row in v]
    quotient = IntegerLattice(qgram, lattice.symmetry, lattice.label)
    return quotient, proj, reps


# ---------------------------------------------------------------------------
# Signature, parity, discriminant

def signature(lattice: IntegerLattice) -> tuple[int, int]:
    """Counts of positive and negative eigenvalues, exactly.

    Uses the integer characteristic polynomial and Descartes' rule of signs,
    which is exact for the real-rooted charpoly of a symmetric matrix.
    """
    if not lattice.is_symmetric():
        raise WrongSymmetryError("signature requires a symmetric pairing")
    if lattice.rank == 0:
        return 0, 0
    pos, neg, _zero = la.descartes_sign_counts(la.charpoly(lattice.gram))
    return pos, neg


def is_even(lattice: IntegerLattice) -> bool:
    """Whether every vector has even self-pairing (diagonal test)."""
    if not lattice.is_symmetric():
        raise WrongSymmetryError("parity requires a symmetric pairing")
    return all(lattice.gram[i][i] % 2 == 0 for i in range(lattice.rank))


def determinant(lattice: IntegerLattice) -> int:
    return la.det_bareiss(lattice.gram)


def discriminant(lattice: IntegerLattice) -> DiscriminantData:
    """Elementary divisors of coker(L -> L*), for nondegenerate L."""
    divisors = la.smith_normal_form(lattice.gram)
    if any(dv == 0 for dv in divisors):
        raise DegenerateLatticeError("discriminant requires a nondegenerate pairing")
    nontrivial = tuple(dv for dv in divisors if dv > 1)
    order = 1
    for dv in divisors:
        order *= dv
    return DiscriminantData(nontrivial, order)


def discriminant_group_generators(lattice: IntegerLattice) -> list[tuple[list[Fraction], int]]:
    """Generators of L*/L as rational vectors in basis coordinates, with orders."""
    divisors, (u, v) = smith_normal_form(lattice.gram)
    if any(dv == 0 for dv in divisors):
        raise DegenerateLatticeError("degenerate pairing has no discriminant group")
    gens = []
    for i, dv in enumerate(divisors):
        if dv > 1:
            vec = [Fraction(v[row][i], dv) for row in range(lattice.rank)]
            gens.append((vec, dv))
    return gens


def discriminant_is_cyclic_of_order(lattice: IntegerLattice, d: int) -> bool:
    """Exact certificate that L*/L is cyclic of order d, feasible at large rank.

    Verifies (a) d * G^{-1} is integral (so the exponent divides d), via CRT
    reconstruction checked exactly, and (b) for each prime p | d the p-part is
    cyclic of the right order, via mod-p kernel dimension and an exact
    non-divisibility check.  Avoids a full Smith normal form.
    """
    g = lattice.gram
    n = lattice.rank
    gnp = lattice.np_gram()
    dd = int(d)

    def residue(p):
        if dd % p == 0:
            return None
        inv = la.modp_solve_matrix(gnp, dd * np.eye(n, dtype=np.int64), p)
        return inv

    def verify(candidate):
        prod = la.mat_mul(g, candidate)
        return all(prod[i][j] == (dd if i == j else 0) for i in range(n) for j in range(n))

    x = la.crt_reconstruct_int_matrix(residue, verify)
    if x is None:
        return False
    # Exponent divides d; now pin each p-part.
    for p, v in _factorize(dd):
        if n - la.modp_rank(gnp, p) != 1:
            return False
        if v > 1:
            # The unique p-divisor must be exactly p^v: (d/p) * G^{-1} must be
            # non-integral, i.e. X is not divisible by p.
            if all(val % p == 0 for row in x for val in row):
                return False
    return True


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            out.append((p, v))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def pfaffian_square_check(lattice: IntegerLattice) -> bool:
    """For antisymmetric nondegenerate L, det(Gram) is a perfect square."""
    if lattice.is_symmetric():
        raise WrongSymmetryError("pfaffian check requires an antisymmetric pairing")
    det = la.det_bareiss(lattice.gram)
    if det < 0:
        return False
    r = la.floor_sqrt_fraction(Fraction(det))
    return r * r == det


# ---------------------------------------------------------------------------
# Gluing

def glue_with_basis(spec: GlueSpec):
    """Glued overlattice plus the rational basis rows expressing it in the
    orthogonal-sum coordinates."""
    g0 = spec.combined_gram()
    n = spec.total_rank()
    sym = spec.symmetry()
    # Integrality of all pairings among generators.
    for gv in spec.glue_vectors:
        if len(gv) != n:
            raise InvalidGlueError("glue vector of wrong length")
        pair_with_lattice = [sum(Fraction(g0[i][j]) * gv[j] for j in range(n)) for i in range(n)]
        if any(x.denominator != 1 for x in pair_with_lattice):
            raise InvalidGlueError("glue vector pairs non-integrally with a component vector")
    for a in spec.glue_vectors:
        for b in spec.glue_vectors:
            val = sum(a[i] * Fraction(g0[i][j]) * b[j] for i in range(n) for j in range(n))
            if val.denominator != 1:
                raise InvalidGlueError("glue vectors pair non-integrally with each other")
    # Common denominator, then HNF of all generators.
    den = 1
    for gv in spec.glue_vectors:
        for x in gv:
            den = den * x.denominator // _gcd(den, x.denominator)
    rows: Mat = [[den if i == j else 0 for j in range(n)] for i in range(n)]
    for gv in spec.glue_vectors:
        rows.append([int(x * den) for x in gv])
    h, _ = la.hnf_row(rows)
    if len(h) != n:
        raise InvalidGlueError("glued generators do not span the rational span")
    basis = [[Fraction(x, den) for x in row] for row in h]
    gram = []
    for brow in basis:
        tmp = [sum(brow[i] * g0[i][j] for i in range(n)) for j in range(n)]
        gram.append([sum(tmp[j] * bcol[j] for j in range(n)) for bcol in basis])
    if any(x.denominator != 1 for row in gram for x in row):
        raise InvalidGlueError("glued lattice has a non-integral pairing")
    glued = IntegerLattice([[int(x) for x in row] for row in gram], sym)
    return glued, basis


def glue(spec: GlueSpec) -> IntegerLattice:
    return glue_with_basis(spec)[0]


def glue_index(spec: GlueSpec, glued: IntegerLattice) -> int:
    """Index of the orthogonal sum inside the glued lattice."""
    d0 = la.det_bareiss(spec.combined_gram())
    d1 = la.det_bareiss(glued.gram)
    if d1 == 0:
        raise DegenerateLatticeError("glued lattice is degenerate")
    ratio = Fraction(d0, d1)
    idx = la.floor_sqrt_fraction(ratio)
    if idx * idx != ratio:
        raise InvalidGlueError("determinant ratio is not a perfect square")
    return idx


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Short vectors (definite lattices)

def definiteness(lattice: IntegerLattice) -> int:
    """+1 positive definite, -1 negative definite, 0 indefinite or degenerate."""
    if lattice.rank == 0:
        return 1
    pos, neg = signature(lattice)
    if pos == lattice.rank:
        return 1
    if neg == lattice.rank:
        return -1
    return 0


def short_vectors(lattice: IntegerLattice, norm: int) -> list[tuple[int, ...]]:
    """All v with v.v == norm in a definite lattice, lexicographically sorted."""
    sign = definiteness(lattice)
    if sign == 0:
        raise IndefiniteLatticeError(
            "short_vectors requires a definite lattice; use bounded_box_vectors")
    if norm == 0:
        return [tuple([0] * lattice.rank)]
    if sign * norm < 0:
        return []
    g = lattice.gram if sign > 0 else [[-x for x in row] for row in lattice.gram]
    target = norm if sign > 0 else -norm
    found = _fincke_pohst(g, target)
    return sorted(found)


def _fincke_pohst(g: Mat, target: int) -> list[tuple[int, ...]]:
    """Exact enumeration of {v : v^T G v == target} for positive definite G."""
    n = len(g)
    d, mu = _ldl(g)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            if remaining == 0:
                out.append(tuple(x))
            return
        center = sum(mu[i][j] * x[j] for j in range(i + 1, n))
        bound = remaining / d[i]
        s = la.floor_sqrt_fraction(bound)
        # candidates t with d_i*(t + center)^2 <= remaining
        lo = -s - 1
        while d[i] * (Fraction(lo) + center) ** 2 > remaining:
            lo += 1
        hi = s + 1
        while d[i] * (Fraction(hi) + center) ** 2 > remaining:
            hi -= 1
        for t in range(lo, hi + 1):
            x[i] = t
            used = d[i] * (Fraction(t) + center) ** 2
            rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, Fraction(target))
    return out


def _ldl(g: Mat) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Rational LDL^T with unit upper-triangular factor: q(x) = sum d_i (x_i + sum_{j>i} mu_ij x_j)^2."""
    n = len(g)
    a = [[Fraction(g[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i] - sum(d[k] * mu[k][i] * mu[k][i] for k in range(i))
        if d[i] <= 0:
            raise IndefiniteLatticeError("matrix is not positive definite")
        for j in range(i + 1, n):
            val = a[i][j] - sum(d[k] * mu[k][i] * mu[k][j] for k in range(i))
            mu[i][j] = val / d[i]
    return d, mu


# ---------------------------------------------------------------------------
# Size reduction (deterministic, exact; improves box coverage on any Gram)

def size_reduce_gram(gram: Mat, max_sweeps: int = 32) -> tuple[Mat, Mat]:
    """Integral size-reduction sweeps on a Gram matrix.

    Returns (reduced_gram, U) with U unimodular and reduced = U * gram * U^T.
    Purely Gram-based; reduces |G_ij| against nonzero diagonal entries.
    """
    n = len(gram)
    g = [list(row) for row in gram]
    u = la.mat_identity(n)

    def potential() -> int:
        return sum(abs(x) for row in g for x in row)

    for _ in range(max_sweeps):
        before = potential()
        for j in range(n):
            if g[j][j] == 0:
                continue
            for i in range(n):
                if i == j:
                    continue
                q = _round_nearest(g[i][j], g[j][j])
                if q:
                    # b_i <- b_i - q b_j
                    for t in range(n):
                        g[i][t] -= q * g[j][t]
                    for t in range(n):
                        g[t][i] -= q * g[t][j]
                    for t in range(n):
                        u[i][t] -= q * u[j][t]
        if potential() >= before:
            break
    return g, u


def _round_nearest(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if b > 0 else -1
    return q


# ---------------------------------------------------------------------------
# Serialization

def lattice_to_json(lattice: IntegerLattice) -> dict:
    flat = [x for row in lattice.gram for x in row]
    return {
        "rank": lattice.rank,
        "symmetry": lattice.symmetry,
        "gram": flat,
        "label": lattice.label,
    }


def lattice_from_json(obj: dict) -> IntegerLattice:
    rank = int(obj["rank"])
    flat = [int(x) for x in obj["gram"]]
    if len(flat) != rank * rank:
        raise ValueError("gram array has wrong length")
    gram = [flat[i * rank:(i + 1) * rank] for i in range(rank)]
    return IntegerLattice(gram, obj.get("symmetry", SYMMETRIC), obj.get("label"))


def dumps_canonical(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace variance, no floats."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)
