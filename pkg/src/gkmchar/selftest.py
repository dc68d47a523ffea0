"""Deterministic randomized self-test batteries over all modules.

Each battery draws its cases from a seeded generator, so two runs with the
same seed produce byte-identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .lattice import complete_to_basis, det, dot, primitive_part, vneg, \
    weight_from_basis, weight_in_basis
from .laurent import LaurentPoly, NotDivisible, RationalChar, \
    congruent_mod_edge, divide_exact, eval_numeric
from .graphs import KClass
from .characters import character_expand, character_oracle, hull_report, \
    localization_terms, multiplicity, polarize
from .residues import fiber_average_numeric, res_T, res_half, to_z_form
from .reduction import chi_reduced, edge_compat_check, moment_map, \
    qr_check, wall_crossing_check
from .randomgen import random_class, random_generic_xi, \
    random_pole_free_point, random_ring_element, random_symplectic, \
    random_vertex_star, random_zero_regular_xi, standard_fixtures


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})"
                                           if self.detail else "")


def run_selftest(seed: int, corrupt: bool = False) -> list[CheckResult]:
    rng = random.Random(seed)
    fixtures = standard_fixtures()
    results = [
        _check_lattice(rng),
        _check_division(rng),
        _check_characters(rng, fixtures),
        _check_numeric_localization(rng, fixtures),
        _check_hull_and_multiplicity(rng, fixtures),
        _check_residue_vanishing(rng, fixtures),
        _check_fiber_average(rng),
        _check_walls(rng, fixtures),
        _check_qr(rng, fixtures),
        _check_edge_compat(rng, fixtures),
    ]
    if corrupt:
        results.append(_check_corrupted(fixtures))
    return results


def _check_lattice(rng) -> CheckResult:
    for _ in range(50):
        n = rng.randint(1, 4)
        xi = tuple(rng.randint(-9, 9) for _ in range(n))
        if all(x == 0 for x in xi):
            continue
        xi, _ = primitive_part(xi)
        basis = complete_to_basis(xi)
        if abs(det(basis.matrix)) != 1 or basis.xi != xi:
            return CheckResult("lattice basis completion", False,
                               f"bad completion for {xi}")
        for _ in range(20):
            alpha = tuple(rng.randint(-9, 9) for _ in range(n))
            beta, k = weight_in_basis(alpha, basis)
            if k != dot(alpha, xi):
                return CheckResult("lattice basis completion", False,
                                   "pairing mismatch")
            if weight_from_basis(beta, k, basis) != alpha:
                return CheckResult("lattice basis completion", False,
                                   "round trip failed")
    return CheckResult("lattice basis completion and round trip", True)


def _check_division(rng) -> CheckResult:
    for _ in range(60):
        n = rng.randint(1, 3)
        gamma = tuple(rng.randint(-2, 2) for _ in range(n))
        if all(x == 0 for x in gamma):
            continue
        q = random_ring_element(n, rng, terms=4, exp_bound=2)
        one_minus = LaurentPoly(n, {(0,) * n: 1, gamma: -1})
        p = q * one_minus
        try:
            back = divide_exact(p, gamma)
        except NotDivisible:
            return CheckResult("exact division", False,
                               f"divisible product rejected for {gamma}")
        if back * one_minus != p:
            return CheckResult("exact division", False, "round trip failed")
        if not congruent_mod_edge(p, LaurentPoly.zero(n), gamma):
            return CheckResult("exact division", False,
                               "congruence disagrees with division")
    return CheckResult("exact division round trip and congruence", True)


def _check_characters(rng, fixtures) -> CheckResult:
    for name, (action, sym) in fixtures.items():
        for _ in range(3):
            f = random_class(action, sym, rng)
            polys = set()
            for _ in range(3):
                xi = random_generic_xi(action, rng)
                polys.add(character_expand(f, polarize(action, xi)).poly)
            if len(polys) != 1:
                return CheckResult("character polynomiality", False,
                                   f"direction dependence on {name}")
            if character_oracle(f) != polys.pop():
                return CheckResult(
                    "character polynomiality", False,
                    f"division route disagrees with expansion on {name}")
    return CheckResult("character: expansion equals division route, "
                       "direction independent", True)


def _check_numeric_localization(rng, fixtures) -> CheckResult:
    worst = 0.0
    for name, (action, sym) in fixtures.items():
        f = random_class(action, sym, rng)
        chi = character_oracle(f)
        terms = list(localization_terms(f).values())
        for _ in range(5):
            pt = random_pole_free_point(terms, action.n, rng)
            raw = sum(eval_numeric(t, pt) for t in terms)
            err = abs(raw - eval_numeric(chi, pt))
            worst = max(worst, err)
            if err > 1e-6:
                return CheckResult("numeric localization", False,
                                   f"error {err:.2e} on {name}")
    return CheckResult("numeric localization agreement", True,
                       f"max error {worst:.2e}")


def _check_hull_and_multiplicity(rng, fixtures) -> CheckResult:
    for name, (action, sym) in fixtures.items():
        s2 = random_symplectic(action, sym, rng)
        xi = random_generic_xi(action, rng)
        pol = polarize(action, xi)
        char = character_expand(s2.base, pol)
        report = hull_report(s2, char)
        if not report.ok:
            return CheckResult("hull containment / extremal weights", False,
                               f"violated on {name}")
        for mu in list(sorted(char.poly.terms))[:6]:
            if multiplicity(s2, pol, mu) != char.poly.coeff(mu):
                return CheckResult(
                    "hull containment / extremal weights", False,
                    f"partition-count multiplicity mismatch on {name}")
    return CheckResult("hull containment, extremal weights, "
                       "partition-count multiplicities", True)


def _check_residue_vanishing(rng, fixtures) -> CheckResult:
    # per-monomial vanishing laws on random one-vertex stars
    for _ in range(40):
        star, xi = random_vertex_star(rng.choice([2, 3]),
                                      rng.randint(1, 3), rng)
        z = to_z_form(star, xi)
        neg = sum(-k for _, k in z.factors if k < 0)
        pos = sum(k for _, k in z.factors if k > 0)
        for c, beta, k in z.numer:
            mono = replace(z, numer=((c, beta, k),))
            if k > neg and not res_half(mono, "minus").is_zero():
                return CheckResult("residue vanishing laws", False,
                                   "inner contour should vanish")
            if k < pos and not res_half(mono, "plus").is_zero():
                return CheckResult("residue vanishing laws", False,
                                   "outer contour should vanish")
    # total residue vanishing on the fixtures
    for name, (action, sym) in fixtures.items():
        f = random_class(action, sym, rng)
        xi = random_generic_xi(action, rng)
        total = LaurentPoly.zero(action.n)
        for term in localization_terms(f).values():
            total = total + res_T(term, xi).total
        if not total.is_zero():
            return CheckResult("residue vanishing laws", False,
                               f"nonzero total residue on {name}")
    return CheckResult("residue vanishing laws and total-residue "
                       "cancellation", True)


def _check_fiber_average(rng) -> CheckResult:
    worst = 0.0
    for _ in range(10):
        star, xi = random_vertex_star(2, rng.randint(2, 3), rng)
        rv = res_T(star, xi)
        pt = random_pole_free_point([star], 2, rng)
        lhs = eval_numeric(rv.total, pt)
        rhs = 0j
        for j, w in enumerate(star.denominator):
            rest = tuple(u for i, u in enumerate(star.denominator) if i != j)
            hat = RationalChar(star.numerator, rest)
            sign = 1 if dot(w, xi) < 0 else -1
            rhs += sign * fiber_average_numeric(hat, w, xi, pt)
        err = abs(lhs - rhs)
        worst = max(worst, err)
        if err > 1e-6:
            return CheckResult("residue vs fiber averaging", False,
                               f"error {err:.2e}")
    return CheckResult("residue equals signed fiber-average sum", True,
                       f"max error {worst:.2e}")


def _check_walls(rng, fixtures) -> CheckResult:
    for name, (action, sym) in fixtures.items():
        f = random_class(action, sym, rng)
        xi = random_generic_xi(action, rng)
        mm = moment_map(action, xi)
        crits = mm.critical_values()
        levels = [crits[0] - 1] + \
            [(a + b) / 2 for a, b in zip(crits, crits[1:])] + [crits[-1] + 1]
        chis = [chi_reduced(f, mm, c).value for c in levels]
        if not chis[-1].is_zero() or not chis[0].is_zero():
            return CheckResult("wall crossing", False,
                               f"boundary chambers nonzero on {name}")
        for i in range(len(crits)):
            res = wall_crossing_check(f, mm, levels[i], levels[i + 1])
            if not res.ok:
                return CheckResult("wall crossing", False,
                                   f"wall identity fails on {name}")
            if chis[i] - chis[i + 1] != res.residue:
                return CheckResult("wall crossing", False,
                                   f"telescoping fails on {name}")
        # chamber independence: same chamber, same character
        mid = levels[len(levels) // 2]
        eps = (crits[-1] - crits[0]) / 1000
        a = chi_reduced(f, mm, mid).value
        b = chi_reduced(f, mm, mid + eps).value
        if a != b:
            return CheckResult("wall crossing", False,
                               f"chamber dependence on {name}")
    return CheckResult("chamber independence, telescoping, wall crossing",
                       True)


def _check_qr(rng, fixtures) -> CheckResult:
    for name, (action, sym) in fixtures.items():
        for _ in range(2):
            s2 = random_symplectic(action, sym, rng)
            try:
                xi = random_zero_regular_xi(s2, rng, attempts=100)
            except ValueError:
                continue
            res = qr_check(s2, xi)
            if not res.ok:
                return CheckResult("invariant part equals reduced character",
                                   False, f"mismatch on {name} at {xi}")
    return CheckResult("invariant part equals reduced character", True)


def _check_edge_compat(rng, fixtures) -> CheckResult:
    worst = 0.0
    for name, (action, sym) in fixtures.items():
        f = random_class(action, sym, rng)
        for e in action.geometric_edges():
            res = edge_compat_check(f, e.eid, samples=4,
                                    rng=random.Random(rng.randrange(2**30)))
            worst = max(worst, res.max_error)
            if not res.ok:
                return CheckResult("edge compatibility of localized classes",
                                   False, f"edge {e.src}->{e.dst} on {name}")
    return CheckResult("edge compatibility of localized classes", True,
                       f"max error {worst:.2e}")


def _check_corrupted(fixtures) -> CheckResult:
    """Deliberately break a class value; the compatibility check must fire."""
    action, sym = fixtures["proj2"]
    values = dict(sym.base.values)
    values["P1"] = values["P1"] + LaurentPoly.monomial((0, 1))
    from .graphs import class_violations
    violations = class_violations(action, values)
    if violations:
        return CheckResult(
            "injected corruption", False,
            "edge compatibility congruence violated: " + str(violations[0]))
    return CheckResult("injected corruption", False,
                       "corruption escaped the compatibility check")
