"""Diagonal (simplex-criterion) stability tests for homogeneous forms.

A degree-d form in m variables is semistable for the diagonal torus in the
given coordinates iff the barycenter (d/m, ..., d/m) lies in the convex hull
of its exponent vectors, and stable iff the hull moreover has full dimension
inside the degree hyperplane and contains the barycenter in its interior.
All decisions are exact rational LP feasibility with re-checkable
certificates: convex coefficients, or an integer one-parameter-subgroup
weight vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from . import _intlinalg as la
from ._simplex import OPTIMAL, solve_lp
from .errors import EmptyFormError


@dataclass(frozen=True)
class HomogeneousForm:
    """Degree-d form in m variables as a map exponent-vector -> coefficient."""

    m: int
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, coeff in self.terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.m or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            if sum(exps) != self.degree:
                raise ValueError(f"exponents {exps} do not sum to the degree")
            clean[exps] = clean.get(exps, Fraction(0)) + coeff
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "degree": self.degree,
            "terms": [{"exponents": list(e), "coeff": str(c)}
                      for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HomogeneousForm":
        terms = {tuple(t["exponents"]): Fraction(t["coeff"]) for t in obj["terms"]}
        return cls(int(obj["m"]), int(obj["degree"]), terms)

    @classmethod
    def fermat(cls, m: int, degree: int) -> "HomogeneousForm":
        terms = {}
        for i in range(m):
            e = [0] * m
            e[i] = degree
            terms[tuple(e)] = Fraction(1)
        return cls(m, degree, terms)


def exponent_points(form: HomogeneousForm) -> list[tuple[int, ...]]:
    """Deduplicated exponent vectors of the monomials in the form, lex order."""
    if form.is_zero():
        raise EmptyFormError("the zero form has no exponent points")
    return sorted(form.terms.keys())


def barycenter(form: HomogeneousForm) -> list[Fraction]:
    return [Fraction(form.degree, form.m)] * form.m


def is_semistable_diagonal(form: HomogeneousForm) -> tuple[bool, dict]:
    """Barycenter membership in the hull of exponent points, with certificate.

    True: certificate carries exact convex coefficients.  False: certificate
    carries an integer weight vector w with sum(w) = 0 and w.p > 0 for every
    exponent point p (a destabilizing diagonal one-parameter subgroup in the
    given coordinates).
    """
    points = exponent_points(form)
    b = barycenter(form)
    res = _membership_lp(points, b, form.m)
    if res.status == OPTIMAL:
        lam = res.x[:len(points)]
        return True, {"lambda": [str(v) for v in lam],
                      "points": [list(p) for p in points]}
    weights = _separating_weights(points, b, res.duals, form.m)
    return False, {"separating_weights": weights,
                   "points": [list(p) for p in points]}


def is_stable_diagonal(form: HomogeneousForm) -> tuple[bool, dict]:
    """Barycenter interiority inside the degree hyperplane, with certificate.

    Interior means interior relative to the ambient hyperplane {sum x = d}:
    the affine span of the points must be the full hyperplane and the
    barycenter must admit a convex expression with all coefficients strictly
    positive (equivalently it avoids every supporting hyperplane).
    """
    points = exponent_points(form)
    b = barycenter(form)
    m = form.m
    rank = _affine_rank(points)
    if rank < m - 1:
        return False, {"affine_rank": rank, "required": m - 1,
                       "points": [list(p) for p in points]}
    res = _interior_lp(points, b, m)
    if res.status == OPTIMAL and res.objective is not None and -res.objective > 0:
        lam = [res.x[j] + (-res.objective) for j in range(len(points))]
        cert = {"lambda": [str(v) for v in lam], "margin": str(-res.objective),
                "points": [list(p) for p in points]}
        return True, cert
    support = _supporting_weights(points, b, res, m)
    return False, {"supporting_weights": support,
                   "points": [list(p) for p in points]}


def cone_extend(form: HomogeneousForm) -> HomogeneousForm:
    """The form plus X_{m+1}^d, in m+1 variables."""
    terms = {exps + (0,): c for exps, c in form.terms.items()}
    apex = (0,) * form.m + (form.degree,)
    terms[apex] = terms.get(apex, Fraction(0)) + 1
    return HomogeneousForm(form.m + 1, form.degree, terms)


def verify_semistable_certificate(form: HomogeneousForm, flag: bool, cert: dict) -> bool:
    """Exact re-check of a semistability certificate."""
    points = exponent_points(form)
    b = barycenter(form)
    if flag:
        lam = [Fraction(s) for s in cert["lambda"]]
        if len(lam) != len(points) or any(v < 0 for v in lam):
            return False
        if sum(lam) != 1:
            return False
        for i in range(form.m):
            if sum(l * p[i] for l, p in zip(lam, points)) != b[i]:
                return False
        return True
    w = cert["separating_weights"]
    if sum(w) != 0 or all(x == 0 for x in w):
        return False
    return all(sum(wi * pi for wi, pi in zip(w, p)) > 0 for p in points)


def verify_stable_certificate(form: HomogeneousForm, flag: bool, cert: dict) -> bool:
    """Exact re-check of a stability certificate."""
    points = exponent_points(form)
    b = barycenter(form)
    if flag:
        lam = [Fraction(s) for s in cert["lambda"]]
        if len(lam) != len(points) or any(v <= 0 for v in lam):
            return False
        if sum(lam) != 1:
            return False
        for i in range(form.m):
            if sum(l * p[i] for l, p in zip(lam, points)) != b[i]:
                return False
        return _affine_rank(points) == form.m - 1
    if "affine_rank" in cert:
        return _affine_rank(points) == cert["affine_rank"] < form.m - 1
    w = cert["supporting_weights"]
    if all(x == 0 for x in w):
        return False
    vals = [sum(Fraction(wi) * (pi - bi) for wi, pi, bi in zip(w, p, b)) for p in points]
    return all(v <= 0 for v in vals) and any(v < 0 for v in vals)


# ---------------------------------------------------------------------------
# LP plumbing

def _membership_lp(points, b, m):
    ncols = len(points)
    rows = [[Fraction(p[i]) for p in points] for i in range(m)]
    rows.append([Fraction(1)] * ncols)
    rhs = list(b) + [Fraction(1)]
    cost = [Fraction(0)] * ncols
    return solve_lp(rows, rhs, cost)


def _interior_lp(points, b, m):
    """max t st sum (mu_i + t) p_i = b, sum(mu_i + t) = 1, mu >= 0, t free."""
    npts = len(points)
    s = [sum(Fraction(p[i]) for p in points) for i in range(m)]
    rows = []
    for i in range(m):
        rows.append([Fraction(p[i]) for p in points] + [s[i], -s[i]])
    rows.append([Fraction(1)] * npts + [Fraction(npts), Fraction(-npts)])
    rhs = list(b) + [Fraction(1)]
    cost = [Fraction(0)] * npts + [Fraction(-1), Fraction(1)]
    return solve_lp(rows, rhs, cost)


def _separating_weights(points, b, farkas, m):
    """Integer weight vector from a Farkas dual: w.(p - b) < 0 for all p,
    flipped and normalized to sum zero and positive values on points."""
    y = farkas[:m]
    w = [-v for v in y]
    # Shift by a constant (allowed on the degree hyperplane) to zero the sum.
    shift = Fraction(sum(w), m)
    w = [v - shift for v in w]
    den = 1
    for v in w:
        den = den * v.denominator // _gcd(den, v.denominator)
    wi = [int(v * den) for v in w]
    g = 0
    for v in wi:
        g = _gcd(g, abs(v))
    if g > 1:
        wi = [v // g for v in wi]
    return wi


def _supporting_weights(points, b, res, m):
    """Integer weights w with w.(p - b) <= 0 on all points, < 0 on some."""
    if res.duals is not None:
        y = res.duals[:m]
        w = [Fraction(v) for v in y]
        vals = [sum(wi * (Fraction(pi) - bi) for wi, pi, bi in zip(w, p, b)) for p in points]
        if any(v for v in vals) and all(v <= 0 for v in vals):
            return _normalize_weights(w, m)
        if any(v for v in vals) and all(v >= 0 for v in vals):
            return _normalize_weights([-v for v in w], m)
    # Fallback: search supporting functionals through subsets of points.
    for size in range(1, m):
        for subset in itertools.combinations(range(len(points)), size):
            w = _functional_through(points, subset, b, m)
            if w is None:
                continue
            vals = [sum(wi * (Fraction(pi) - bi) for wi, pi, bi in zip(w, p, b))
                    for p in points]
            if any(v for v in vals):
                if all(v <= 0 for v in vals):
                    return _normalize_weights(w, m)
                if all(v >= 0 for v in vals):
                    return _normalize_weights([-v for v in w], m)
    raise ArithmeticError("no supporting functional found for a boundary barycenter")


def _functional_through(points, subset, b, m):
    """A functional vanishing on {p - b : p in subset} and on (1,...,1)."""
    rows = [[Fraction(points[i][j]) - b[j] for j in range(m)] for i in subset]
    rows.append([Fraction(1)] * m)
    ker = la.rational_row_space_kernel(rows)
    if not ker:
        return None
    return ker[0]


def _normalize_weights(w, m):
    shift = Fraction(sum(Fraction(v) for v in w), m)
    w = [Fraction(v) - shift for v in w]
    den = 1
    for v in w:
        den = den * v.denominator // _gcd(den, v.denominator)
    wi = [int(v * den) for v in w]
    g = 0
    for v in wi:
        g = _gcd(g, abs(v))
    if g > 1:
        wi = [v // g for v in wi]
    return wi


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    rows = [[p[i] - p0[i] for i in range(len(p0))] for p in points[1:]]
    return la.rank_exact(rows)


def directional_depth_oracle(form: HomogeneousForm) -> bool:
    """Independent interiority oracle: positive directional depth of the
    barycenter along all coordinate-difference directions, each via its own
    exact LP.  Used to cross-check is_stable_diagonal."""
    points = exponent_points(form)
    b = barycenter(form)
    m = form.m
    if _affine_rank(points) < m - 1:
        return False
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            # max s subject to b + s(e_i - e_j) in hull
            npts = len(points)
            rows = []
            for t in range(m):
                u = Fraction(1) if t == i else (Fraction(-1) if t == j else Fraction(0))
                rows.append([Fraction(p[t]) for p in points] + [-u])
            rows.append([Fraction(1)] * npts + [Fraction(0)])
            rhs = list(b) + [Fraction(1)]
            cost = [Fraction(0)] * npts + [Fraction(-1)]
            res = solve_lp(rows, rhs, cost)
            if res.status != OPTIMAL or res.objective is None or -res.objective <= 0:
                return False
    return True


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
