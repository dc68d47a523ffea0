"""Graphs with a torus action: validation of the labeling axioms, classes
attached to vertices, symplectic (monomial) classes and example generators.

Edges are stored oriented, in pairs swapped by a fixed-point-free involution
`bar`; the weight of the reversed edge is minus the weight of the edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import dot, primitive_part, vadd, vneg, vscale, vsub
from .laurent import LaurentPoly, congruent_mod_edge, reduce_mod_weight


@dataclass(frozen=True)
class Violation:
    code: str        # E_INVOLUTION, E_VALENCE, E_ORIENT, E_GKM, E_COMPAT, ...
    where: str       # offending vertex / edge description
    detail: str = ""

    def __str__(self):
        msg = f"{self.code} at {self.where}"
        return f"{msg}: {self.detail}" if self.detail else msg


class ValidationError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Edge:
    eid: int
    src: str
    dst: str
    bar: int


@dataclass(frozen=True)
class GkmAction:
    """A validated d-valent graph labeled by weights in Z^n."""

    n: int
    d: int
    vertices: tuple
    edges: tuple            # tuple of Edge
    axial: dict             # eid -> weight tuple

    def edge(self, eid) -> Edge:
        return self.edges[eid]

    def weight(self, eid):
        return self.axial[eid]

    def out_edges(self, v):
        return [e for e in self.edges if e.src == v]

    def out_weights(self, v):
        return [self.axial[e.eid] for e in self.edges if e.src == v]

    def geometric_edges(self):
        """One representative per unoriented edge (the one with eid < bar)."""
        return [e for e in self.edges if e.eid < e.bar]


def action_violations(n, vertices, edge_pairs):
    """Check the labeling axioms on raw data; return a list of Violations.

    edge_pairs is a list of (src, dst, alpha_fwd, alpha_rev); alpha_rev may
    be None, meaning -alpha_fwd.
    """
    violations = []
    vset = set(vertices)
    out_count = {v: 0 for v in vertices}
    out_w = {v: [] for v in vertices}
    resolved = []
    for idx, (src, dst, fwd, rev) in enumerate(edge_pairs):
        label = f"edge#{idx} {src}->{dst}"
        if src not in vset or dst not in vset:
            violations.append(Violation("E_INVOLUTION", label, "unknown vertex"))
            continue
        if src == dst:
            violations.append(Violation("E_INVOLUTION", label,
                                        "loop edge has no free involution"))
            continue
        fwd = tuple(fwd)
        if len(fwd) != n:
            violations.append(Violation("E_ORIENT", label,
                                        f"weight length {len(fwd)} != {n}"))
            continue
        rev = vneg(fwd) if rev is None else tuple(rev)
        if rev != vneg(fwd):
            violations.append(Violation(
                "E_ORIENT", label,
                "reversed-edge weight is not minus the forward weight"))
            continue
        resolved.append((src, dst, fwd, rev, label))
        out_count[src] += 1
        out_count[dst] += 1
        out_w[src].append((fwd, label))
        out_w[dst].append((rev, label))
    if violations:
        return violations

    counts = set(out_count.values())
    if len(counts) != 1:
        for v, c in out_count.items():
            violations.append(Violation("E_VALENCE", str(v),
                                        f"valence {c}, graph is not regular"))
        return violations

    for v in vertices:
        ws = out_w[v]
        for i in range(len(ws)):
            if all(x == 0 for x in ws[i][0]):
                violations.append(Violation("E_GKM", str(v),
                                            f"zero weight on {ws[i][1]}"))
                continue
            for j in range(i + 1, len(ws)):
                if _proportional(ws[i][0], ws[j][0]):
                    violations.append(Violation(
                        "E_GKM", str(v),
                        f"proportional weights on {ws[i][1]} and {ws[j][1]}"))
    if violations:
        return violations

    # independence-condition compatibility across each edge: the weight
    # multisets at the two endpoints must agree modulo Z*alpha_e
    for src, dst, fwd, rev, label in resolved:
        if not _compat_across(out_w[src], out_w[dst], fwd):
            violations.append(Violation(
                "E_COMPAT", label,
                "endpoint weight multisets differ modulo the edge weight"))
    return violations


def _proportional(a, b):
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i] * b[j] - a[j] * b[i] != 0:
                return False
    return True


def _compat_across(ws_p, ws_q, gamma):
    gg = dot(gamma, gamma)
    def residues(ws):
        out = {}
        for w, _ in ws:
            r = reduce_mod_weight(w, gamma, gg)
            out[r] = out.get(r, 0) + 1
        return out
    return residues(ws_p) == residues(ws_q)


def validate_action(n, vertices, edge_pairs) -> GkmAction:
    """Build a GkmAction from raw data, raising ValidationError on failure.

    edge_pairs as in action_violations.  Each pair contributes two oriented
    edges related by the bar involution.
    """
    violations = action_violations(n, vertices, edge_pairs)
    if violations:
        raise ValidationError(violations)
    edges = []
    axial = {}
    for src, dst, fwd, rev in ((s, d, tuple(f), r) for s, d, f, r in edge_pairs):
        rev = vneg(fwd) if rev is None else tuple(rev)
        a = len(edges)
        edges.append(Edge(a, src, dst, a + 1))
        edges.append(Edge(a + 1, dst, src, a))
        axial[a] = fwd
        axial[a + 1] = rev
    vertices = tuple(vertices)
    d = sum(1 for e in edges if e.src == vertices[0])
    return GkmAction(n=n, d=d, vertices=vertices,
                     edges=tuple(edges), axial=axial)


@dataclass(frozen=True)
class KClass:
    """Vertex-indexed ring elements compatible across every edge."""

    action: GkmAction
    values: dict            # vertex -> LaurentPoly

    def __getitem__(self, v) -> LaurentPoly:
        return self.values[v]

    def __add__(self, other):
        assert self.action is other.action
        return KClass(self.action,
                      {v: self.values[v] + other.values[v]
                       for v in self.action.vertices})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return KClass(self.action,
                          {v: self.values[v] * other
                           for v in self.action.vertices})
        assert self.action is other.action
        return KClass(self.action,
                      {v: self.values[v] * other.values[v]
                       for v in self.action.vertices})

    __rmul__ = __mul__


def class_violations(action: GkmAction, values) -> list:
    out = []
    for e in action.geometric_edges():
        if not congruent_mod_edge(values[e.src], values[e.dst],
                                  action.axial[e.eid]):
            out.append(Violation(
                "E_COMPAT", f"edge {e.src}->{e.dst}",
                "vertex values are not congruent modulo the edge weight"))
    return out


def validate_class(action: GkmAction, values) -> KClass:
    values = {v: p for v, p in values.items()}
    missing = [v for v in action.vertices if v not in values]
    if missing:
        raise ValidationError([Violation("E_COMPAT", str(v), "missing value")
                               for v in missing])
    violations = class_violations(action, values)
    if violations:
        raise ValidationError(violations)
    return KClass(action, values)


def constant_class(action: GkmAction, c=1) -> KClass:
    p = LaurentPoly.constant(action.n, c)
    return KClass(action, {v: p for v in action.vertices})


@dataclass(frozen=True)
class SymplecticClass:
    """Monomial class x^{alpha_p} whose edge increments are positive."""

    action: GkmAction
    alphas: dict            # vertex -> weight
    m: dict                 # eid -> positive integer multiple

    @property
    def base(self) -> KClass:
        return KClass(self.action,
                      {v: LaurentPoly.monomial(a)
                       for v, a in self.alphas.items()})


def symplectic_class(action: GkmAction, alphas) -> SymplecticClass:
    """Check alpha_{t(e)} - alpha_{i(e)} = m_e * alpha_e with m_e > 0."""
    violations = []
    m = {}
    for e in action.edges:
        diff = vsub(alphas[e.dst], alphas[e.src])
        w = action.axial[e.eid]
        me = _integer_multiple(diff, w)
        label = f"edge {e.src}->{e.dst}"
        if me is None:
            violations.append(Violation("E_NOT_MULTIPLE", label,
                                        f"{diff} is not an integer multiple of {w}"))
        elif me <= 0:
            violations.append(Violation("E_NONPOSITIVE", label,
                                        f"multiple {me} is not positive"))
        else:
            m[e.eid] = me
    if violations:
        raise ValidationError(violations)
    sym = SymplecticClass(action, {v: tuple(a) for v, a in alphas.items()}, m)
    # a symplectic class is in particular a valid class
    bad = class_violations(action, sym.base.values)
    if bad:
        raise ValidationError(bad)
    return sym


def _integer_multiple(diff, w):
    """m with diff == m*w, or None."""
    pivot = next((i for i, x in enumerate(w) if x != 0), None)
    if pivot is None:
        return None
    if diff[pivot] % w[pivot] != 0:
        return None
    m = diff[pivot] // w[pivot]
    return m if diff == vscale(w, m) else None


# ---------------------------------------------------------------------------
# example generators


def gen_projective(n: int):
    """Complete graph on n+1 vertices modeling projective n-space.

    Edge P_i -> P_j carries eps_j - eps_i (eps_0 = 0); the default
    symplectic class is alpha_{P_k} = eps_k.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = [(0,) * n] + [tuple(int(i == k) for i in range(n))
                        for k in range(n)]
    vertices = [f"P{i}" for i in range(n + 1)]
    pairs = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            pairs.append((vertices[i], vertices[j],
                          vsub(eps[j], eps[i]), None))
    action = validate_action(n, vertices, pairs)
    sym = symplectic_class(action, {vertices[k]: eps[k]
                                    for k in range(n + 1)})
    return action, sym


def gen_cp1_in_plane():
    """Two vertices joined by an edge of weight (1,0) inside a 2-torus.

    Default symplectic class alpha_p = (-1,0), alpha_q = (1,0).
    """
    action = validate_action(2, ["p", "q"], [("p", "q", (1, 0), None)])
    sym = symplectic_class(action, {"p": (-1, 0), "q": (1, 0)})
    return action, sym


def gen_hirzebruch(k: int, a: int = 1, b: int = 1):
    """Quadrilateral graph of a Hirzebruch-type trapezoid.

    Vertices at (0,0), (a,0), (a,b), (0,b+k*a); edge weights are the
    primitive directions of the trapezoid sides, so the corner coordinates
    form a symplectic class with edge multiples given by lattice lengths.
    """
    if a < 1 or b < 1 or k < 0:
        raise ValueError("need a, b >= 1 and k >= 0")
    corners = {
        "A": (0, 0),
        "B": (a, 0),
        "C": (a, b),
        "D": (0, b + k * a),
    }
    sides = [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")]
    pairs = []
    for u, v in sides:
        w, _ = primitive_part(vsub(corners[v], corners[u]))
        pairs.append((u, v, w, None))
    action = validate_action(2, list(corners), pairs)
    sym = symplectic_class(action, corners)
    return action, sym


def gen_product(a1: GkmAction, sym1: SymplecticClass,
                a2: GkmAction, sym2: SymplecticClass):
    """Product action: vertex pairs, edge weights embedded side by side."""
    n = a1.n + a2.n
    vertices = [f"{u}|{v}" for u in a1.vertices for v in a2.vertices]
    pairs = []
    for e in a1.geometric_edges():
        w = a1.axial[e.eid] + (0,) * a2.n
        for v in a2.vertices:
            pairs.append((f"{e.src}|{v}", f"{e.dst}|{v}", w, None))
    for e in a2.geometric_edges():
        w = (0,) * a1.n + a2.axial[e.eid]
        for u in a1.vertices:
            pairs.append((f"{u}|{e.src}", f"{u}|{e.dst}", w, None))
    action = validate_action(n, vertices, pairs)
    alphas = {f"{u}|{v}": sym1.alphas[u] + sym2.alphas[v]
              for u in a1.vertices for v in a2.vertices}
    sym = symplectic_class(action, alphas)
    return action, sym


# ---------------------------------------------------------------------------
# file format


def load_graph_data(doc):
    """Parse the JSON graph document into (GkmAction, named raw classes).

    Schema: {"n": int, "vertices": [str], "edges": [{"from", "to",
    "alpha": [int]}], "classes": {name: {vertex: [{"coeff": int,
    "exp": [int]}]}}}.  Reverse edges are implied with -alpha.
    """
    n = int(doc["n"])
    vertices = [str(v) for v in doc["vertices"]]
    pairs = [(str(e["from"]), str(e["to"]), tuple(int(x) for x in e["alpha"]),
              None)
             for e in doc.get("edges", [])]
    action = validate_action(n, vertices, pairs)
    classes = {}
    for name, valmap in doc.get("classes", {}).items():
        values = {}
        for v, terms in valmap.items():
            acc = {}
            for t in terms:
                exp = tuple(int(x) for x in t["exp"])
                acc[exp] = acc.get(exp, 0) + int(t["coeff"])
            values[str(v)] = LaurentPoly(n, acc)
        classes[name] = values
    return action, classes


def load_graph_file(path):
    with open(path) as fh:
        return load_graph_data(json.load(fh))


def graph_to_data(action: GkmAction, classes=None):
    doc = {
        "n": action.n,
        "vertices": list(action.vertices),
        "edges": [{"from": e.src, "to": e.dst,
                   "alpha": list(action.axial[e.eid])}
                  for e in action.geometric_edges()],
    }
    if classes:
        doc["classes"] = {
            name: {v: [{"coeff": c, "exp": list(exp)}
                       for exp, c in sorted(p.terms.items())]
                   for v, p in values.items()}
            for name, values in classes.items()
        }
    return doc
