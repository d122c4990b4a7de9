"""Recompute the worked examples that the test suite freezes and print them."""
import argparse

from uag.finalg import SEMIGROUP_LANGUAGE, chain_semilattice, cyclic_group, rectangular_band, residue_ring
from uag.geometry import coordinate_algebra, irreducible_components, is_equational_domain, solve
from uag.linear import NAT_LANGUAGE, FGAbelianGroup, coordinate_group_rank, minimal_equivalent_prefix, solve_over_N, sub_oplus, system_to_matrix
from uag.symbolic import UnarSystem, bicyclic_noetherian_witness, solve_free_unar
from uag.terms import Language, render, system


def show(title, value):
    print(f"{title:<44} {value}")


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    l2 = chain_semilattice(2)
    plane = solve(system(SEMIGROUP_LANGUAGE, "x,y", "x = x", "y = y"), l2)
    show("L2 plane components", [c.points for c in irreducible_components(plane)])
    show("coordinate semilattice of the L2 plane", sorted(render(t) for t in coordinate_algebra(plane).witnesses))
    rb = rectangular_band(2, 2)
    show("RB(2,2) solutions of x*y = y", len(solve(system(SEMIGROUP_LANGUAGE, "x,y", "x*y = y"), rb)))
    show("equational domain: Z2 group", is_equational_domain(cyclic_group(2)))
    show("equational domain: F2 field", is_equational_domain(residue_ring(2, with_one=True)))
    show("equational domain: F3 field", is_equational_domain(residue_ring(3, with_one=True)))

    rows = [[2 * i + 1, 2 * i + 2] for i in range(11)]
    show("prefix of {(2i+1)x + (2i+2)y = 0}", minimal_equivalent_prefix(rows))
    show("Sub+(Z^2 + Z_8 + Z_3 + Z_3)", sorted(map(str, sub_oplus(FGAbelianGroup.parse("Z^2 + Z_8 + Z_3 + Z_3")))))
    show("N solutions of 2x + 3y + 5z = 5", solve_over_N(system(NAT_LANGUAGE, "x,y,z", "2x + 3y + 5z = 5")))

    lattice = system(Language.of(add=2, neg=1, zero=0), "x,y,z,u", "2x + z = y + u", "x + u = 3y + z")
    rows = system_to_matrix(lattice)
    show("{2x+z = y+u, x+u = 3y+z}: lattice rows", rows)
    show("  coordinate group rank over Z", coordinate_group_rank(rows, 4))
    p = (4, 3, 0, 5)
    ok = all(sum(c * v for c, v in zip(r, p)) == 0 for r in rows)
    show("  (4,3,0,5) is a natural solution", ok)

    unar = Language.of(f=1)
    res = solve_free_unar(UnarSystem.from_system(system(unar, "x,y", "f(f(x)) = y", "f(f(f(f(f(y))))) = x")))
    show("free unar {f^2(x) = y, f^5(y) = x}", res.witness)
    res = solve_free_unar(UnarSystem.from_system(system(unar, "x,y", "f(x) = f(f(y))")))
    show("free unar {f(x) = f^2(y)} rank", res.rank)
    w = bicyclic_noetherian_witness(3)
    show("bicyclic x^i y^i z at (b, a, b^3a^3)", [str(v) for v in w.values])


if __name__ == "__main__":
    main()
