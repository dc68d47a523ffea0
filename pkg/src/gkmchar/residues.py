"""Regularized residues along a circle subgroup.

A rational character with binomial denominators is rewritten in coordinates
adapted to the circle direction xi; the inner/outer contour integrals become
coefficient extractions from one-sided geometric-series expansions, and
their difference is a Laurent polynomial supported on the annihilator
lattice of xi.  A numeric fiber-averaging oracle cross-checks the symbolic
route at torus points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import BasisChange, complete_to_basis, dot, vadd, vscale, \
    weight_from_basis, weight_in_basis
from .laurent import LaurentPoly, RationalChar, eval_numeric
from .characters import NotGeneric


@dataclass(frozen=True)
class ZForm:
    """A rational character in (y, z) coordinates with z along xi.

    numer holds (coeff, beta, k) triples, one per numerator monomial;
    factors holds (beta_i, k_i) per denominator binomial, all k_i nonzero.
    """

    basis: BasisChange
    numer: tuple            # ((coeff, beta, k), ...)
    factors: tuple          # ((beta_i, k_i), ...)

    @property
    def n(self):
        return self.basis.n


def to_z_form(f: RationalChar, xi) -> ZForm:
    """Rewrite f in a basis with xi last; exact and invertible."""
    basis = complete_to_basis(xi)
    factors = []
    for g in f.denominator:
        beta, k = weight_in_basis(g, basis)
        if k == 0:
            raise NotGeneric(
                f"denominator weight {g} pairs to zero with {tuple(xi)}")
        factors.append((beta, k))
    numer = []
    for exp, c in sorted(f.numerator.terms.items()):
        beta, k = weight_in_basis(exp, basis)
        numer.append((c, beta, k))
    return ZForm(basis=basis, numer=tuple(numer), factors=tuple(factors))


def from_z_form(z: ZForm) -> RationalChar:
    """Round-trip back to the original coordinates."""
    n = z.n
    terms = {}
    for c, beta, k in z.numer:
        exp = weight_from_basis(beta, k, z.basis)
        terms[exp] = terms.get(exp, 0) + c
    den = tuple(weight_from_basis(beta, k, z.basis) for beta, k in z.factors)
    return RationalChar(LaurentPoly(n, terms), den)


def res_half(z: ZForm, side: str) -> LaurentPoly:
    """One contour's worth of residue, as a polynomial in the y-variables.

    side "minus" extracts the z^0 coefficient of the expansion valid inside
    the unit circle; side "plus" is the outer contour, obtained by the
    substitution z -> 1/z which reduces it to the inner machinery with all
    z-degrees negated.
    """
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    flip = -1 if side == "plus" else 1
    m = z.n - 1
    out: dict = {}
    factors = [(beta, flip * k) for beta, k in z.factors]
    for c, beta, k in z.numer:
        _accumulate_inner(out, c, beta, flip * k, factors, m)
    return LaurentPoly(m, out)


def _accumulate_inner(out, coeff, beta, k, factors, m):
    """z^0 coefficient of the inner expansion of one numerator monomial.

    Inside the unit circle each factor (1 - a*z^s) with s > 0 expands as
    sum_l a^l z^{s*l}; with s < 0 it contributes -a^{-(l+1)} z^{|s|*(l+1)}
    after clearing the negative power, shifting the effective z-degree of
    the monomial by sum of |s| over the negative factors.
    """
    neg = [(beta_i, -k_i) for beta_i, k_i in factors if k_i < 0]
    pos = [(beta_i, k_i) for beta_i, k_i in factors if k_i > 0]
    base_k = k + sum(s for _, s in neg)
    target = -base_k
    if target < 0:
        return
    sign = -1 if len(neg) % 2 else 1
    steps = [s for _, s in neg] + [s for _, s in pos]
    betas = [beta_i for beta_i, _ in neg] + [beta_i for beta_i, _ in pos]
    negcount = len(neg)

    def recurse(idx, remaining, acc_beta):
        if idx == len(steps):
            if remaining == 0:
                key = acc_beta
                nc = out.get(key, 0) + sign * coeff
                if nc:
                    out[key] = nc
                else:
                    del out[key]
            return
        s = steps[idx]
        b = betas[idx]
        lmax = remaining // s
        for l in range(lmax + 1):
            if idx < negcount:
                nb = vadd(acc_beta, vscale(b, -(l + 1)))
            else:
                nb = vadd(acc_beta, vscale(b, l))
            recurse(idx + 1, remaining - l * s, nb)

    start = tuple(beta)
    if not steps:
        if target == 0:
            nc = out.get(start, 0) + sign * coeff
            if nc:
                out[start] = nc
            else:
                del out[start]
        return
    recurse(0, target, start)


@dataclass(frozen=True)
class ResidueValue:
    """Inner/outer coefficient extractions re-embedded into Z^n.

    All exponents pair to zero with xi; total = plus - minus is the
    regularized residue.
    """

    plus: LaurentPoly
    minus: LaurentPoly
    total: LaurentPoly


def res_T(f: RationalChar, xi) -> ResidueValue:
    """Regularized circle residue of a rational character.

    The sign convention follows the orientation fixed by xi: replacing xi
    by -xi negates the result.
    """
    xi = tuple(xi)
    z = to_z_form(f, xi)
    plus_y = res_half(z, "plus")
    minus_y = res_half(z, "minus")
    plus = _embed(plus_y, z.basis)
    minus = _embed(minus_y, z.basis)
    return ResidueValue(plus=plus, minus=minus, total=plus - minus)


def _embed(p: LaurentPoly, basis: BasisChange) -> LaurentPoly:
    """Map y-exponents back into Z^n along the annihilator of xi.

    Canonical despite the non-canonical basis completion: every y-monomial
    produced by the extraction is an integer combination of the original
    weights whose z-degrees cancel.
    """
    n = basis.n
    terms = {}
    for beta, c in p.terms.items():
        exp = weight_from_basis(beta, 0, basis)
        terms[exp] = terms.get(exp, 0) + c
    return LaurentPoly(n, terms)


def fiber_average_numeric(f: RationalChar, alpha, xi, point) -> complex:
    """Average of f over the fiber of the quotient map above a point.

    alpha cuts out the subtorus the push-forward starts from; the fiber over
    the class of `point` in the quotient by the circle of xi consists of
    |alpha(xi)| shifts of the point along xi, and the push-forward evaluates
    as their mean.
    """
    alpha = tuple(alpha)
    xi = tuple(xi)
    k = dot(alpha, xi)
    if k == 0:
        raise NotGeneric(f"{alpha} pairs to zero with {xi}")
    order = abs(k)
    pairing = sum(Fraction(a) * t for a, t in zip(alpha, point))
    total = 0j
    for j in range(order):
        t = (j - pairing) / k
        lift = tuple(p + t * x for p, x in zip(point, xi))
        total += eval_numeric(f, lift)
    return total / order
