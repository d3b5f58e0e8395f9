"""Cyclotomic reductions of the primitive Fermat lattice and hermitian forms.

The reduction tensors the integer lattice with Z[zeta_d] along the last k
coordinate actions; its Z[zeta_d]-valued pairing collects the integer
pairings against the action orbit with zeta-power weights.  For k = 1 the
pairing on monomial generators follows the four-case table, corrected by the
zeta-power twists that monomial representatives pick up across the diagonal
coset (the bare table, taken literally with `0 otherwise', presents a form of
the wrong rank; consistency of both readings is reported, not assumed).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

from . import _intlinalg as la
from .exact_algebra import CyclotomicElement, euler_phi
from .errors import DegenerateLatticeError, VerificationError
from .fermat_homology import PrimitiveFermatLattice, monomial_pairing

H_PLUS = "h_plus"
H_MINUS = "h_minus"
RAW = "raw"


class HermitianLattice:
    """Hermitian Gram matrix over Z[zeta_d] on a chosen generator basis."""

    def __init__(self, d: int, gram: list[list[CyclotomicElement]], form_kind: str,
                 scaling: int = 1, basis_labels: Optional[list] = None,
                 excluded: bool = False, parity_consistent: bool = True):
        self.d = d
        self.rank = len(gram)
        self.gram = gram
        self.form_kind = form_kind
        self.scaling = scaling
        self.basis_labels = basis_labels
        self.excluded = excluded
        self.parity_consistent = parity_consistent
        for i in range(self.rank):
            for j in range(self.rank):
                if gram[i][j].conj() != gram[j][i]:
                    raise VerificationError("gram matrix is not hermitian")

    def determinant(self) -> CyclotomicElement:
        return _field_det(self.d, self.gram)

    def det_norm(self) -> Fraction:
        return self.determinant().norm()

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "rank": self.rank,
            "gram": [[[int(c) for c in entry.integral_coords()] for entry in row]
                     for row in self.gram],
            "form_kind": self.form_kind,
            "scaling": self.scaling,
            "excluded": self.excluded,
        }


def cor23_rank(d: int, m: int) -> int:
    """((d-1)^(m+2) + (-1)^(m+1)) / d, the rank of the character reduction."""
    num = (d - 1) ** (m + 2) + (-1) ** (m + 1)
    if num % d:
        raise VerificationError("reduction rank formula is not integral")
    return num // d


def expected_sign(n: int) -> int:
    """The table sign variant carried by ambient parity: h+ for even n."""
    return 1 if n % 2 == 0 else -1


# ---------------------------------------------------------------------------
# Monomial-generator pairings

def hermitian_table_entry(d: int, K: Sequence[int], L: Sequence[int],
                          sign: int) -> CyclotomicElement:
    """The displayed four-case h_sign value, taken literally (no coset twists)."""
    zeta = CyclotomicElement.zeta(d)
    zbar = zeta.conj()
    one = CyclotomicElement.one(d)
    s = -sign
    diff = tuple((a - b) % d for a, b in zip(K, L))
    if all(e == 0 for e in diff):
        return (one + s * zeta) * (one + s * zbar)
    if all(e in (0, 1) for e in diff):
        return (-1) ** sum(diff) * (one + s * zbar)
    neg = tuple((-e) % d for e in diff)
    if all(e in (0, 1) for e in neg):
        return (-1) ** sum(neg) * (one + s * zeta)
    return CyclotomicElement.zero(d)


def reduction_entry(d: int, n: int, K: Sequence[int], L: Sequence[int]) -> CyclotomicElement:
    """(u^K . u^L)_1 = sum_i (u^K . u_{n+1}^i u^L) zeta^i on generators
    K, L in (Z/d)^(n+1), from the intersection pairing of monomial classes."""
    out = CyclotomicElement.zero(d)
    K2 = tuple(K) + (0,)
    for i in range(d):
        L2 = tuple(L) + (i,)
        c = monomial_pairing(d, n, K2, L2)
        if c:
            out = out + CyclotomicElement.zeta(d, i) * c
    return out


def hermitian_gram(d: int, n: int, sign: int) -> HermitianLattice:
    """The hermitian form h+ (sign=+1) or h- (sign=-1) on the spanning
    monomials K in (Z/d)^(n+1), reduced to a deterministic pivot basis.

    For the parity-matching sign (h+ when n is even, h- when n is odd) this is
    the reduction pairing, normalized so the diagonal equals
    (1 -/+ zeta)(1 -/+ zbar); its rank obeys the reduction rank formula.  The
    opposite-parity variant is not known to be well defined; it is returned as
    the literal table on its own pivot basis and tagged parity_consistent=False.
    """
    if d < 3:
        raise ValueError("need d >= 3")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    gens = sorted(itertools.product(range(d), repeat=n + 1))
    if sign == expected_sign(n):
        full = [[reduction_entry(d, n, K, L) for L in gens] for K in gens]
        full, scale = _parity_normalize(d, n, full)
        selected = _pivot_columns(d, full)
        gram = [[full[i][j] for j in selected] for i in selected]
        h = HermitianLattice(d, gram, H_PLUS if sign > 0 else H_MINUS,
                             scaling=scale,
                             basis_labels=[gens[i] for i in selected])
        if h.rank != cor23_rank(d, n - 1):
            raise VerificationError(
                f"hermitian rank {h.rank} disagrees with the formula {cor23_rank(d, n - 1)}")
        return h
    full = [[hermitian_table_entry(d, K, L, sign) for L in gens] for K in gens]
    selected = _pivot_columns(d, full)
    gram = [[full[i][j] for j in selected] for i in selected]
    return HermitianLattice(d, gram, H_PLUS if sign > 0 else H_MINUS,
                            basis_labels=[gens[i] for i in selected],
                            parity_consistent=False)


def off_parity_consistency_report(d: int, n: int) -> dict:
    """Diagnostics for the opposite-parity table variant, whose
    well-definedness is not established: literal rank versus reduction rank."""
    sign = -expected_sign(n)
    h = hermitian_gram(d, n, sign)
    expected = cor23_rank(d, n - 1)
    return {
        "d": d,
        "n": n,
        "sign": sign,
        "literal_table_rank": h.rank,
        "reduction_rank": expected,
        "consistent": h.rank == expected,
    }


def _parity_normalize(d: int, n: int, gram: list[list[CyclotomicElement]]):
    """Make the raw reduction pairing hermitian with canonical positive diagonal.

    Odd ambient parity is skew-hermitian and is multiplied by the purely
    imaginary unit (1+zeta)(1-zeta)^{-1}; a global sign then pins the diagonal
    to (1 -/+ zeta)(1 -/+ zbar) > 0.  Returns (gram, scale) where scale clears
    any denominators the normalization introduced (expected 1).
    """
    if not gram:
        return gram, 1
    if n % 2 == 1:
        zeta = CyclotomicElement.zeta(d)
        mu = (1 + zeta) * (1 - zeta).inverse()
        gram = [[mu * e for e in row] for row in gram]
    diag = next((gram[i][i] for i in range(len(gram)) if gram[i][i]), None)
    if diag is not None and diag.trace() < 0:
        gram = [[-e for e in row] for row in gram]
    scale = 1
    for row in gram:
        for e in row:
            for c in e.coords:
                den = c.denominator if isinstance(c, Fraction) else 1
                scale = scale * den // _gcd(scale, den)
    if scale != 1:
        gram = [[e * scale for e in row] for row in gram]
    return gram, scale


def _pivot_columns(d: int, matrix: list[list[CyclotomicElement]]) -> list[int]:
    """Lexicographically first maximal set of Q(zeta)-independent columns."""
    n = len(matrix)
    echelon: list[tuple[int, list[CyclotomicElement]]] = []
    selected: list[int] = []
    for j in range(n):
        col = [matrix[i][j] for i in range(n)]
        for pivot_row, vec in echelon:
            if col[pivot_row]:
                factor = col[pivot_row] * vec[pivot_row].inverse()
                col = [a - factor * b for a, b in zip(col, vec)]
        lead = next((i for i, x in enumerate(col) if x), None)
        if lead is not None:
            echelon.append((lead, col))
            selected.append(j)
    return selected


def _field_det(d: int, gram: list[list[CyclotomicElement]]) -> CyclotomicElement:
    n = len(gram)
    if n == 0:
        return CyclotomicElement.one(d)
    m = [row[:] for row in gram]
    det = CyclotomicElement.one(d)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return CyclotomicElement.zero(d)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


# ---------------------------------------------------------------------------
# Character reduction of the primitive lattice

def chi_form_on_vectors(prim: PrimitiveFermatLattice, k: int,
                        vectors: la.Mat) -> list[list[CyclotomicElement]]:
    """The Z[zeta_d]-valued pairing sum_{i in (Z/d)^k} (a . T^i b) zeta^{|i|}
    on the given lattice vectors, where T runs over the last k mu-actions."""
    d, n = prim.d, prim.n
    if not 1 <= k <= n + 1:
        raise ValueError("k out of range")
    g = prim.lattice.gram
    names = [f"u_{i}" for i in range(n + 2 - k, n + 2)]
    mats = [prim.action(name) for name in names]
    powers = []
    for m in mats:
        pw = [la.mat_identity(prim.lattice.rank)]
        for _ in range(d - 1):
            pw.append(la.mat_mul(pw[-1], m))
        powers.append(pw)
    coeff: dict[int, la.Mat] = {}
    vg = la.mat_mul(vectors, g)
    vt = la.mat_transpose(vectors)
    for exps in itertools.product(range(d), repeat=k):
        m = None
        for pw, e in zip(powers, exps):
            m = pw[e] if m is None else la.mat_mul(m, pw[e])
        block = la.mat_mul(vg, la.mat_mul(la.mat_transpose(m), vt))
        s = sum(exps) % d
        if s in coeff:
            coeff[s] = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(coeff[s], block)]
        else:
            coeff[s] = block
    nrows = len(vectors)
    zetas = [CyclotomicElement.zeta(d, s) for s in range(d)]
    out = []
    for i in range(nrows):
        row = []
        for j in range(nrows):
            val = CyclotomicElement.zero(d)
            for s, mat in coeff.items():
                if mat[i][j]:
                    val = val + zetas[s] * mat[i][j]
            row.append(val)
        out.append(row)
    return out


def chi_form_on_classes(prim: PrimitiveFermatLattice, k: int,
                        classes: Sequence[Sequence[int]]) -> list[list[CyclotomicElement]]:
    """The reduction pairing on monomial classes (exponent tuples of length
    n+2, taken modulo the diagonal)."""
    vectors = [prim.class_image(c) for c in classes]
    return chi_form_on_vectors(prim, k, vectors)


def chi_reduce(prim: PrimitiveFermatLattice, k: int) -> HermitianLattice:
    """Tensor the primitive lattice with Z[zeta_d] along the last k coordinate
    actions; hermitian Gram on a deterministic pivot basis of the generators.

    Odd ambient parity is normalized by the imaginary unit as in
    hermitian_gram, with any rescaling reported in `scaling`.  k divisible by
    d falls outside the rank-formula hypothesis and is tagged excluded.
    """
    d, n = prim.d, prim.n
    raw = chi_form_on_vectors(prim, k, la.mat_identity(prim.lattice.rank))
    raw, scaling = _parity_normalize(d, n, raw)
    selected = _pivot_columns(d, raw)
    gram = [[raw[i][j] for j in selected] for i in selected]
    h = HermitianLattice(d, gram,
                         H_PLUS if n % 2 == 0 else H_MINUS,
                         scaling=scaling,
                         basis_labels=selected,
                         excluded=(k % d == 0))
    if k % d != 0 and h.rank != cor23_rank(d, n - k):
        raise VerificationError(
            f"reduction rank {h.rank} disagrees with the formula {cor23_rank(d, n - k)}")
    return h


# ---------------------------------------------------------------------------
# Signature and cross-k comparison

def hermitian_signature(h: HermitianLattice) -> tuple[int, int]:
    """Signature (p, q) of the hermitian form, exactly.

    Computed as the signature of the rational trace form on the restriction of
    scalars (for phi(d) = 2 this is the realification [[A, -B], [B, A]]),
    divided by phi(d).  For phi(d) > 2 the embeddings are averaged; a
    disagreement between embeddings fails the divisibility check and raises.
    """
    d = h.d
    phi = euler_phi(d)
    r = h.rank
    zs = [CyclotomicElement.zeta(d, s) for s in range(phi)]
    size = r * phi
    entries: list[list[Fraction]] = [[Fraction(0)] * size for _ in range(size)]
    for i in range(r):
        for j in range(r):
            hij = h.gram[i][j]
            if not hij:
                continue
            for s in range(phi):
                for t in range(phi):
                    entries[i * phi + s][j * phi + t] = (zs[s] * zs[t].conj() * hij).trace()
    den = 1
    for row in entries:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    int_mat = [[int(x * den) for x in row] for row in entries]
    pos, neg, zero = la.descartes_sign_counts(la.charpoly(int_mat))
    if zero:
        raise DegenerateLatticeError("hermitian form is degenerate")
    if pos % phi or neg % phi:
        raise VerificationError("signature differs across complex embeddings")
    return pos // phi, neg // phi


def signatures_agree_up_to_sign(s1: tuple[int, int], s2: tuple[int, int]) -> bool:
    """Whether two signatures agree up to the overall sign of the form."""
    return s1 == s2 or s1 == (s2[1], s2[0])


def det_norms_agree_up_to_ramified(n1: Fraction, n2: Fraction, d: int) -> bool:
    """Whether two determinant norms differ by a power of the primes over d.

    Unit determinant changes leave the norm fixed; rescaling by the ramified
    prime (1 - zeta_d) multiplies it by a divisor power of d.  This is the
    sharpest norm-level equality the reduction models satisfy across k.
    """
    if n1 == 0 or n2 == 0:
        return n1 == n2
    ratio = Fraction(n1) / Fraction(n2)
    num, den = abs(ratio.numerator), ratio.denominator
    for p in la.prime_factors(d):
        while num % p == 0:
            num //= p
        while den % p == 0:
            den //= p
    return num == 1 and den == 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Euclidean echelon over Z[zeta_d] (norm-Euclidean conductors)

def _cyclo_divmod(a: CyclotomicElement, b: CyclotomicElement):
    """Division with remainder in Z[zeta_d], N(r) < N(b), by coordinate
    rounding of the field quotient with a small neighbor search."""
    q_field = a * b.inverse()
    base = [Fraction(c) for c in q_field.coords]
    rounded = [int(c + Fraction(1, 2)) if c >= 0 else -int(-c + Fraction(1, 2))
               for c in base]
    nb = b.norm()
    best = None
    for offsets in itertools.product((0, -1, 1), repeat=len(base)):
        q = CyclotomicElement(a.d, [r + o for r, o in zip(rounded, offsets)])
        r = a - q * b
        nr = r.norm()
        if nr < nb:
            return q, r
        if best is None or nr < best[0]:
            best = (nr, q, r)
    raise ArithmeticError("division with remainder failed; conductor not norm-Euclidean?")


def cyclotomic_row_echelon(d: int, rows: list[list[CyclotomicElement]]):
    """Deterministic echelon basis of the Z[zeta_d]-row span (Euclidean HNF).

    Valid for norm-Euclidean conductors (all d used here); returns the
    nonzero echelon rows.
    """
    work = [row[:] for row in rows if any(row)]
    ncols = len(rows[0]) if rows else 0
    out: list[list[CyclotomicElement]] = []
    for c in range(ncols):
        active = [r for r in work if r[c]]
        if not active:
            continue
        while True:
            active.sort(key=lambda r: r[c].norm())
            piv = active[0]
            done = True
            for r in active[1:]:
                q, rem = _cyclo_divmod(r[c], piv[c])
                if q:
                    for j in range(ncols):
                        r[j] = r[j] - q * piv[j]
                if r[c]:
                    done = False
            active = [piv] + [r for r in active[1:] if r[c]]
            if done or len(active) == 1:
                break
        out.append(active[0])
        work = [r for r in work if not r[c] or r is active[0]]
        work.remove(active[0])
        # Reduce the pivot column out of the remaining rows.
        for r in work:
            if r[c]:
                q, _ = _cyclo_divmod(r[c], active[0][c])
                for j in range(ncols):
                    r[j] = r[j] - q * active[0][j]
        work = [r for r in work if any(r)]
    return out
