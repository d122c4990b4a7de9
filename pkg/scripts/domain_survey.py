"""Equational-domain and co-domain status of small built-in algebras."""
import argparse

from uag.config import Limits
from uag.errors import ResourceLimit
from uag.finalg import chain_semilattice, cyclic_group, left_zero, rectangular_band, residue_ring
from uag.geometry import co_domain_scan, is_equational_domain


def algebras():
    yield from (chain_semilattice(k) for k in (2, 3))
    yield from (left_zero(k) for k in (2, 3))
    yield rectangular_band(2, 2)
    yield from (cyclic_group(k) for k in (2, 3, 4, 5))
    yield from (residue_ring(k, with_one=True) for k in (2, 3, 5))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=2, help="largest dimension for the co-domain scan")
    ap.add_argument("--elem-cap", type=int, default=100_000)
    args = ap.parse_args()
    limits = Limits(elem_cap=args.elem_cap)
    print(f"{'algebra':<10} {'e.d.':<8} {'reducible set found (n <= %d)' % args.n_max}")
    for a in algebras():
        try:
            ed = str(is_equational_domain(a, limits)).lower()
        except ResourceLimit:
            ed = "unknown"
        try:
            rep = co_domain_scan(a, args.n_max, limits)
            found = f"dimension {rep.dimension} ({rep.source})" if rep.found else "none"
        except ResourceLimit:
            found = "unknown"
        print(f"{a.name:<10} {ed:<8} {found}")


if __name__ == "__main__":
    main()
