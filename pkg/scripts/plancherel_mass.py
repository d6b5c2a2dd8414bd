#!/usr/bin/env python3
"""Scan the (k, r) grid and report the total Plancherel mass.

For every graph with q >= 2 the continuous density on [0, tau/2] plus the
k > r atom must integrate to 1 (the squared norm of the point mass at the
origin).  Prints one line per grid point with the measured split.
"""

import itertools

from symgraph import GraphParams, gauss_legendre_adaptive, plancherel_density


def main() -> None:
    print(f"{'k':>2} {'r':>2} {'q':>3} {'continuous':>12} {'atom':>10} {'total':>12}")
    for k, r in itertools.product((2, 3, 4, 5), repeat=2):
        params = GraphParams(k, r)
        if params.q < 2:
            print(f"{k:>2} {r:>2} {params.q:>3} {'(degenerate)':>12}")
            continue
        value, err = gauss_legendre_adaptive(
            lambda lams: plancherel_density(params, lams), 0.0, params.tau / 2, 1e-10
        )
        atom = 0.0
        if k > r:
            # |H delta_o|^2 = 1, weighted by the atom mass (k - r)/k
            atom = (k - r) / k
        print(f"{k:>2} {r:>2} {params.q:>3} {value:12.9f} {atom:10.6f} {value + atom:12.9f}"
              f"   (quadrature error {err:.1e})")


if __name__ == "__main__":
    main()
