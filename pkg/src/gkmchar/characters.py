"""The character map and its combinatorics: polarized expansions, partition
counts, the multiplicity formula, hull checks and the independent
exact-division route to the same character.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import NotPrimitive, dot, is_primitive, primitive_part, \
    vadd, vneg, vscale, vsub
from .laurent import LaurentPoly, NotDivisible, RationalChar, divide_exact
from .graphs import GkmAction, KClass, SymplecticClass


class NotGeneric(ValueError):
    """Some edge weight pairs to zero with the chosen direction."""


class TruncationOverflow(RuntimeError):
    """Polarized expansion exceeded the configured term budget."""


class InternalDivisionFailure(RuntimeError):
    """Exact division failed where polynomiality guarantees it; either a bug
    or an invalid input class."""


@dataclass(frozen=True)
class Polarization:
    """Per-vertex data attached to a generic direction xi.

    For each vertex, pos_edges lists the edge ids at the vertex whose weight
    pairs positively with xi (one per unoriented edge); sigma counts those
    that point *into* the vertex; prefix is the sum of their weights over the
    incoming ones, i.e. the monomial shift of the polarized expansion.
    two_delta / two_delta_sharp store twice the half-sums, keeping everything
    integral.
    """

    action: GkmAction
    xi: tuple
    pos_edges: dict         # vertex -> list of eids
    sigma: dict             # vertex -> int
    two_delta: dict         # vertex -> weight (2*delta_p)
    two_delta_sharp: dict   # vertex -> weight (2*delta_p^#)

    def sign(self, v) -> int:
        return -1 if self.sigma[v] % 2 else 1

    def shift(self, v):
        """delta^# - delta: always an integer vector."""
        diff = vsub(self.two_delta_sharp[v], self.two_delta[v])
        assert all(x % 2 == 0 for x in diff)
        return tuple(x // 2 for x in diff)

    def prefix(self, v):
        """Exponent of the monomial prefactor, -(delta^# - delta)."""
        return vneg(self.shift(v))

    def pos_weights(self, v):
        return [self.action.axial[e] for e in self.pos_edges[v]]


def polarize(action: GkmAction, xi) -> Polarization:
    """Split the edges at each vertex by the sign of their xi-pairing."""
    xi = tuple(xi)
    if not is_primitive(xi):
        raise NotPrimitive(f"{xi} is not primitive")
    pos_edges = {v: [] for v in action.vertices}
    sigma = {v: 0 for v in action.vertices}
    for e in action.edges:
        pairing = dot(action.axial[e.eid], xi)
        if pairing == 0:
            raise NotGeneric(f"edge {e.src}->{e.dst} pairs to zero with {xi}")
        if pairing > 0:
            pos_edges[e.src].append(e.eid)
            pos_edges[e.dst].append(e.eid)
            sigma[e.dst] += 1
    two_delta = {}
    two_delta_sharp = {}
    for v in action.vertices:
        assert len(pos_edges[v]) == action.d
        td = (0,) * action.n
        tds = (0,) * action.n
        for eid in pos_edges[v]:
            w = action.axial[eid]
            td = vadd(td, w)
            sgn = 1 if action.edges[eid].src == v else -1
            tds = vadd(tds, vscale(w, sgn))
        two_delta[v] = td
        two_delta_sharp[v] = tds
    return Polarization(action=action, xi=xi, pos_edges=pos_edges,
                        sigma=sigma, two_delta=two_delta,
                        two_delta_sharp=two_delta_sharp)


def kostant_count(weights, target, xi=None) -> int:
    """Number of ways to write target as a non-negative integer combination
    of the given weights.

    All weights must pair positively with some direction xi; if xi is not
    supplied a simple search tries to find one.  The count is computed by a
    memoized recursion over the weight list, bounded by the xi-pairing.
    """
    weights = [tuple(w) for w in weights]
    target = tuple(target)
    if xi is None:
        xi = _find_positive_direction(weights)
    else:
        xi = tuple(xi)
    pairings = [dot(w, xi) for w in weights]
    if any(p <= 0 for p in pairings):
        raise NotGeneric("every weight must pair positively with xi")

    @lru_cache(maxsize=None)
    def count(j, v):
        if j == 0:
            return 1 if all(x == 0 for x in v) else 0
        w, pw = weights[j - 1], pairings[j - 1]
        total = 0
        rem = v
        while dot(rem, xi) >= 0:
            total += count(j - 1, rem)
            rem = vsub(rem, w)
        return total

    return count(len(weights), target)


def _find_positive_direction(weights):
    if not weights:
        return None  # never consulted: the recursion ends immediately
    n = len(weights[0])
    candidates = [tuple(sum(w[i] for w in weights) for i in range(n))]
    span = range(-3, 4)
    if n <= 4:
        from itertools import product
        candidates += [c for c in product(span, repeat=n)]
    for xi in candidates:
        if xi and any(x != 0 for x in xi) and all(dot(w, xi) > 0 for w in weights):
            return xi
    raise NotGeneric("could not find a direction positive on all weights")


def multiplicity(sym: SymplecticClass, pol: Polarization, alpha) -> int:
    """Coefficient of x^alpha in the character, by the signed partition-count
    sum over vertices."""
    alpha = tuple(alpha)
    total = 0
    for v in pol.action.vertices:
        arg = vadd(vsub(alpha, sym.alphas[v]), pol.shift(v))
        n_v = kostant_count(pol.pos_weights(v), arg, pol.xi)
        total += pol.sign(v) * n_v
    return total


@dataclass(frozen=True)
class CharacterResult:
    poly: LaurentPoly
    hull_vertices: tuple = ()


DEFAULT_TERM_BUDGET = 500_000


def character_expand(f: KClass, pol: Polarization,
                     term_budget: int = DEFAULT_TERM_BUDGET) -> CharacterResult:
    """Exact character via the polarized geometric-series expansion.

    Each vertex contributes sign * x^prefix * f_v * product over its
    positive edges of a geometric series in the edge weight.  The xi-pairing
    of every monomial of the result is bounded above by the base pairings of
    the opposite polarization, which makes the truncation exact.
    """
    action = pol.action
    xi = pol.xi
    pol_neg = polarize(action, vneg(xi))
    b_max = None
    for v in action.vertices:
        pref = pol_neg.prefix(v)
        for mu in f[v].terms:
            val = dot(vadd(mu, pref), xi)
            if b_max is None or val > b_max:
                b_max = val
    total = LaurentPoly.zero(action.n)
    if b_max is None:
        return CharacterResult(poly=total)
    for v in action.vertices:
        base = f[v].shift(pol.prefix(v))
        base = base.filter_terms(lambda e: dot(e, xi) <= b_max)
        acc = base
        for w in pol.pos_weights(v):
            pw = dot(w, xi)
            out = {}
            for e, c in acc.terms.items():
                budget = b_max - dot(e, xi)
                exp = e
                k = 0
                while k * pw <= budget:
                    out[exp] = out.get(exp, 0) + c
                    exp = vadd(exp, w)
                    k += 1
                    if len(out) > term_budget:
                        raise TruncationOverflow(
                            f"expansion exceeded {term_budget} terms")
            acc = LaurentPoly(action.n, out)
        total = total + acc * pol.sign(v)
    return CharacterResult(poly=total)


def localization_terms(f: KClass) -> dict:
    """The per-vertex rational summands of the localized character sum."""
    action = f.action
    return {v: RationalChar(f[v], tuple(action.out_weights(v)))
            for v in action.vertices}


def character_oracle(f: KClass) -> LaurentPoly:
    """Character by the independent exact-division route.

    The localized sum is assembled over a common denominator of binomials
    in pairwise independent primitive directions, then each factor is
    stripped by exact division.  No polarization is involved.
    """
    action = f.action
    n = action.n
    # direction classes: canonical primitive vector -> lcm of multiplicities
    lcms: dict = {}
    for e in action.geometric_edges():
        prim, mult = primitive_part(action.axial[e.eid])
        prim = _canonical_sign(prim)
        lcms[prim] = math.lcm(lcms.get(prim, 1), mult)
    directions = sorted(lcms)
    numerator = LaurentPoly.zero(n)
    for v in action.vertices:
        cof = LaurentPoly.one(n)
        used = {}
        for w in action.out_weights(v):
            prim, mult = primitive_part(w)
            cprim = _canonical_sign(prim)
            sign = 1 if prim == cprim else -1
            used[cprim] = (sign, mult)
        for prim in directions:
            big = lcms[prim]
            if prim not in used:
                cof = cof * _binomial(n, vscale(prim, big))
            else:
                sign, mult = used[prim]
                cof = cof * _partial_geometric(n, prim, mult, big, sign)
        numerator = numerator + f[v] * cof
    result = numerator
    for prim in directions:
        try:
            result = divide_exact(result, vscale(prim, lcms[prim]))
        except NotDivisible as exc:
            raise InternalDivisionFailure(
                f"division by the {prim} factor failed; "
                "the input is not a compatible class") from exc
    return result


def _canonical_sign(prim):
    for x in prim:
        if x != 0:
            return prim if x > 0 else vneg(prim)
    raise ValueError("zero vector")


def _binomial(n, gamma):
    return LaurentPoly(n, {(0,) * n: 1, tuple(gamma): -1})


def _partial_geometric(n, prim, mult, big, sign):
    """(1 - x^{big*prim}) / (1 - x^{sign*mult*prim}) as a polynomial."""
    step = vscale(prim, mult)
    q = big // mult
    terms = {}
    for i in range(q):
        terms[vscale(step, i)] = 1
    quo = LaurentPoly(n, terms)
    if sign == 1:
        return quo
    # dividing by 1 - x^{-m a} flips sign and shifts by x^{m a}
    return -quo.shift(step)


# ---------------------------------------------------------------------------
# exact convex hull checks


def in_convex_hull(point, points) -> bool:
    """Exact rational membership of point in the convex hull of points.

    Small-scale enumeration of simplex subsets of at most n+1 points; each
    candidate system is solved over the rationals.
    """
    from itertools import combinations

    point = tuple(point)
    pts = [tuple(p) for p in points]
    if point in pts:
        return True
    n = len(point)
    for size in range(1, min(len(pts), n + 1) + 1):
        for subset in combinations(pts, size):
            if _convex_combination(point, subset):
                return True
    return False


def _convex_combination(point, subset):
    """Solve sum(l_i * p_i) = point, sum(l_i) = 1, l_i >= 0 exactly."""
    n = len(point)
    m = len(subset)
    # rows: n coordinate equations plus the affine one
    a = [[Fraction(subset[j][i]) for j in range(m)] for i in range(n)]
    a.append([Fraction(1)] * m)
    b = [Fraction(point[i]) for i in range(n)] + [Fraction(1)]
    sol = _solve_exact(a, b, m)
    return sol is not None and all(x >= 0 for x in sol)


def _solve_exact(a, b, m):
    """Gaussian elimination for a possibly overdetermined rational system."""
    rows = [row[:] + [rhs] for row, rhs in zip(a, b)]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][m] != 0:
            return None  # inconsistent
    # free variables are set to zero; verify the candidate directly
    sol = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        sol[c] = rows[i][m]
    for row, rhs in zip(a, b):
        if sum(x * s for x, s in zip(row, sol)) != rhs:
            return None
    return sol


def hull_vertices(points):
    """Points that are vertices of the convex hull of the collection."""
    pts = []
    for p in points:
        p = tuple(p)
        if p not in pts:
            pts.append(p)
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        if not others or not in_convex_hull(p, others):
            out.append(p)
    return out


@dataclass(frozen=True)
class HullReport:
    ok: bool
    hull_vertices: tuple
    support_violations: tuple   # weights outside the hull
    coeff_violations: tuple     # (vertex weight, coefficient != 1)


def hull_report(sym: SymplecticClass, char: CharacterResult) -> HullReport:
    """Check support containment in the weight hull and multiplicity one at
    its vertices."""
    alphas = list(sym.alphas.values())
    verts = tuple(hull_vertices(alphas))
    support_bad = tuple(mu for mu in sorted(char.poly.terms)
                        if not in_convex_hull(mu, alphas))
    coeff_bad = tuple((v, char.poly.coeff(v)) for v in verts
                      if char.poly.coeff(v) != 1)
    return HullReport(ok=not support_bad and not coeff_bad,
                      hull_vertices=verts,
                      support_violations=support_bad,
                      coeff_violations=coeff_bad)
