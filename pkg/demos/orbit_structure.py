"""Symplectic orbit structure of half-integer characteristics.

The group Sp(2g, F_2) acts on theta characteristics by an affine-linear rule
that preserves parity.  This script computes the orbit partition from the
generators: the even and odd parity classes each form a single orbit, and at
genus 2 the action on ordered same-parity pairs is doubly transitive."""

from thetalab import count_parity, orbits

for g in (1, 2, 3):
    even, odd = count_parity(g)
    rep = orbits(g, 1)
    print(f"g={g}: {even} even + {odd} odd characteristics, "
          f"orbit sizes {rep['orbit_sizes']}, "
          f"parity classes single orbits: {rep['parity_classes_single_orbits']}")

print()
rep = orbits(2, 2)
print(f"g=2, ordered distinct same-parity pairs: orbit sizes {rep['orbit_sizes']}")
print(f"even pairs single orbit: {rep['even_pairs_single_orbit']}")
print(f"odd pairs single orbit:  {rep['odd_pairs_single_orbit']}")
