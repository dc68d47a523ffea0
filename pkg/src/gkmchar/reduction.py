"""Graph-side reduction at a circle subgroup: moment maps, crossing sets,
reduced characters by per-vertex residues, wall crossing and the check that
reducing before or after quantizing gives the same answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .lattice import dot, is_primitive, NotPrimitive, vscale
from .laurent import LaurentPoly, PoleAtPoint, RationalChar, eval_numeric
from .graphs import GkmAction, KClass, SymplecticClass
from .characters import NotGeneric, Polarization, character_expand, \
    localization_terms, polarize
from .residues import res_T


class CycleError(ValueError):
    """The xi-orientation of the graph has a directed cycle, so no moment
    map exists."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"oriented cycle: {' -> '.join(map(str, self.cycle))}")


class NotRegular(ValueError):
    """The level c hits a critical value."""


class WrongWallCount(ValueError):
    """The interval (c, c') does not contain exactly one critical vertex."""


class ZeroNotRegular(ValueError):
    """Some vertex weight pairs to zero with xi, so zero is a critical
    level of the symplectic moment map."""


@dataclass(frozen=True)
class MomentMap:
    action: GkmAction
    xi: tuple
    phi: dict               # vertex -> Fraction

    def critical_values(self):
        return sorted(self.phi.values())


def moment_map(action: GkmAction, xi, phi=None) -> MomentMap:
    """Construct (or validate) a vertex function increasing along the
    xi-positive orientation.

    Without explicit values, vertices get their longest-path rank in the
    oriented graph, perturbed by the vertex index to make all values
    distinct.  Explicit values are validated against the same monotonicity
    condition.
    """
    xi = tuple(xi)
    succ = {v: [] for v in action.vertices}
    for e in action.edges:
        pairing = dot(action.axial[e.eid], xi)
        if pairing == 0:
            raise NotGeneric(f"edge {e.src}->{e.dst} pairs to zero with {xi}")
        if pairing > 0:
            succ[e.src].append(e.dst)
    order = _toposort(action.vertices, succ)
    if phi is None:
        rank = {v: 0 for v in action.vertices}
        for v in order:
            for w in succ[v]:
                rank[w] = max(rank[w], rank[v] + 1)
        nv = len(action.vertices)
        phi = {v: Fraction(rank[v]) + Fraction(i, 2 * nv)
               for i, v in enumerate(action.vertices)}
    else:
        phi = {v: Fraction(x) for v, x in phi.items()}
    mm = MomentMap(action=action, xi=xi, phi=phi)
    _validate_moment(mm)
    return mm


def _toposort(vertices, succ):
    state = {v: 0 for v in vertices}
    order = []
    for start in vertices:
        if state[start]:
            continue
        stack = [(start, iter(succ[start]))]
        path = [start]
        state[start] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = 2
                order.append(v)
                stack.pop()
                path.pop()
                continue
            if state[nxt] == 1:
                cycle = path[path.index(nxt):] + [nxt]
                raise CycleError(cycle)
            if state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    order.reverse()
    return order


def _validate_moment(mm: MomentMap):
    values = list(mm.phi.values())
    if len(set(values)) != len(values):
        raise ValueError("critical values are not distinct")
    for e in mm.action.edges:
        pairing = dot(mm.action.axial[e.eid], mm.xi)
        if (mm.phi[e.dst] - mm.phi[e.src]) * pairing <= 0:
            raise ValueError(
                f"phi does not increase along edge {e.src}->{e.dst}")


def symplectic_moment_map(sym: SymplecticClass, xi) -> MomentMap:
    """phi(p) = alpha_p(xi), perturbed to break ties between non-adjacent
    vertices; the perturbation is below 1/2 so edge monotonicity and the
    regularity of integer levels survive."""
    xi = tuple(xi)
    action = sym.action
    nv = len(action.vertices)
    phi = {v: Fraction(dot(sym.alphas[v], xi)) + Fraction(i, 2 * (nv + 1))
           for i, v in enumerate(action.vertices)}
    return moment_map(action, xi, phi)


@dataclass(frozen=True)
class CrossingSet:
    c: Fraction
    edges: tuple            # oriented edge ids crossing the level


def crossing_set(mm: MomentMap, c) -> CrossingSet:
    c = Fraction(c)
    if c in mm.phi.values():
        bad = next(v for v in mm.phi if mm.phi[v] == c)
        raise NotRegular(f"level {c} hits the critical value at {bad}")
    eids = tuple(e.eid for e in mm.action.edges
                 if mm.phi[e.dst] > c > mm.phi[e.src])
    return CrossingSet(c=c, edges=eids)


@dataclass(frozen=True)
class ReducedCharacter:
    value: LaurentPoly      # supported on the annihilator lattice of xi


def chi_reduced(f: KClass, mm: MomentMap, c) -> ReducedCharacter:
    """Sum of vertex residues above the level: the reduced character."""
    c = Fraction(c)
    crossing_set(mm, c)  # regularity check
    terms = localization_terms(f)
    total = LaurentPoly.zero(f.action.n)
    for v in f.action.vertices:
        if mm.phi[v] > c:
            total = total + res_T(terms[v], mm.xi).total
    return ReducedCharacter(value=total)


@dataclass(frozen=True)
class WallCrossingResult:
    ok: bool
    vertex: str
    delta: LaurentPoly      # chi_c - chi_c'
    residue: LaurentPoly    # vertex residue at the crossed wall


def wall_crossing_check(f: KClass, mm: MomentMap, c, cp) -> WallCrossingResult:
    """The drop in the reduced character across a single wall equals the
    residue of the crossed vertex's localized summand."""
    c, cp = Fraction(c), Fraction(cp)
    if c > cp:
        c, cp = cp, c
    between = [v for v in f.action.vertices if c < mm.phi[v] < cp]
    if len(between) != 1:
        raise WrongWallCount(
            f"{len(between)} critical values in ({c}, {cp}), expected 1")
    p = between[0]
    delta = chi_reduced(f, mm, c).value - chi_reduced(f, mm, cp).value
    residue = res_T(localization_terms(f)[p], mm.xi).total
    return WallCrossingResult(ok=delta == residue, vertex=p,
                              delta=delta, residue=residue)


@dataclass(frozen=True)
class EdgeCompatResult:
    ok: bool
    max_error: float
    samples: int


def edge_compat_check(f: KClass, eid: int, samples: int = 10,
                      rng=None, tol: float = 1e-6,
                      max_denominator: int = 10_000) -> EdgeCompatResult:
    """Numeric check that the two localized hat-classes of an edge agree on
    the edge's subtorus.

    Sample points have an integer pairing with the edge weight; points too
    close to a pole of either side are rejected and retried.
    """
    rng = rng or random.Random(0)
    action = f.action
    e = action.edge(eid)
    ebar = action.edge(e.bar)
    gamma = action.axial[eid]
    hat_e = RationalChar(
        f[e.src], tuple(action.axial[x.eid] for x in action.out_edges(e.src)
                        if x.eid != eid))
    hat_ebar = RationalChar(
        f[ebar.src], tuple(action.axial[x.eid]
                           for x in action.out_edges(ebar.src)
                           if x.eid != e.bar))
    gg = dot(gamma, gamma)
    max_err = 0.0
    done = 0
    attempts = 0
    while done < samples:
        attempts += 1
        if attempts > 50 * samples:
            raise PoleAtPoint("could not find enough pole-free sample points")
        raw = [Fraction(rng.randrange(max_denominator), max_denominator)
               for _ in range(action.n)]
        # project onto {gamma(theta) integer}: shift along gamma/|gamma|^2
        excess = sum(Fraction(g) * t for g, t in zip(gamma, raw)) \
            - rng.randrange(0, max(abs(x) for x in gamma) + 1)
        point = tuple((t - excess * Fraction(g, gg)) % 1
                      for g, t in zip(gamma, raw))
        try:
            a = eval_numeric(hat_e, point)
            b = eval_numeric(hat_ebar, point)
        except PoleAtPoint:
            continue
        max_err = max(max_err, abs(a - b))
        done += 1
    return EdgeCompatResult(ok=max_err < tol, max_error=max_err,
                            samples=samples)


@dataclass(frozen=True)
class QrResult:
    ok: bool
    invariant_part: LaurentPoly
    reduced: LaurentPoly


def qr_check(sym: SymplecticClass, xi) -> QrResult:
    """Reduce-then-quantize versus quantize-then-restrict, bit exactly.

    The invariant part keeps the character monomials whose xi-pairing is
    zero; the reduced character sums vertex residues above the zero level
    of the symplectic moment map.
    """
    xi = tuple(xi)
    if not is_primitive(xi):
        raise NotPrimitive(f"{xi} is not primitive")
    for v in sym.action.vertices:
        if dot(sym.alphas[v], xi) == 0:
            raise ZeroNotRegular(
                f"alpha_{v} pairs to zero with {xi}; zero is critical")
    pol = polarize(sym.action, xi)
    chi = character_expand(sym.base, pol).poly
    invariant = chi.filter_terms(lambda e: dot(e, xi) == 0)
    mm = symplectic_moment_map(sym, xi)
    reduced = chi_reduced(sym.base, mm, 0).value
    return QrResult(ok=invariant == reduced, invariant_part=invariant,
                    reduced=reduced)
