"""Walk through the character computation on small graph fixtures.

Builds the two-vertex fixture and the projective plane, computes the
character by the polarized expansion and by the exact-division route, and
prints the multiplicity table and the weight-hull report.
"""

from gkmchar import (character_expand, character_oracle, gen_cp1_in_plane,
                     gen_projective, hull_report, multiplicity, polarize,
                     render_poly)


def show(name, action, sym, xi):
    print(f"== {name} ==")
    pol = polarize(action, xi)
    char = character_expand(sym.base, pol)
    print(f"character (expansion, xi={xi}):  {render_poly(char.poly)}")
    print(f"character (exact division):      "
          f"{render_poly(character_oracle(sym.base))}")
    report = hull_report(sym, char)
    print(f"hull vertices: {sorted(report.hull_vertices)}  "
          f"(containment {'ok' if report.ok else 'VIOLATED'})")
    print("multiplicities near the hull:")
    for mu in sorted(char.poly.terms):
        print(f"  x^{mu}: coefficient {char.poly.coeff(mu)}, "
              f"formula {multiplicity(sym, pol, mu)}")
    print()


def main():
    action, sym = gen_cp1_in_plane()
    show("two vertices in a 2-torus", action, sym, (1, 0))

    action, sym = gen_projective(2)
    show("projective plane", action, sym, (1, 2))

    action, sym = gen_projective(3)
    show("projective 3-space", action, sym, (1, 2, 5))


if __name__ == "__main__":
    main()
