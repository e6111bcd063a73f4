# Braid orbits of generating triples in the binary polyhedral groups.
from collections import Counter

from painleve6.braid import build_binary_polyhedral, count_generating_triples, enumerate_orbits, hall_count

for kind in ("tetrahedral", "octahedral", "icosahedral"):
    g = build_binary_polyhedral(kind)
    n = count_generating_triples(g)
    print(f"{kind}: order {g.order}, {len(g.conjugacy_classes)} classes, "
          f"{n} generating triples up to conjugation, {hall_count(g)} ordered")

# Each orbit of the pure braid group gives a candidate algebraic solution;
# its size is the number of branches and Riemann-Hurwitz gives the genus.
g = build_binary_polyhedral("icosahedral")
orbits = enumerate_orbits(g)
stats = Counter((o.branches, o.genus) for o in orbits)
print("icosahedral orbits (branches, genus): count")
for key, count in sorted(stats.items()):
    print(f"  {key}: {count}")

big = max(orbits, key=lambda o: o.branches)
print("largest orbit:", big.branches, "branches, genus", big.genus)
print("cycle types:", big.cycle_types())
