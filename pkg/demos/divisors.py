"""Find a divisor witness and print the subsemigroup and surjection.

Run with: python3 demos/divisors.py
"""
from finsemi.constructions import named_small
from finsemi.core import direct_product
from finsemi.morphisms import divides, divisor_witness

S = direct_product(named_small("N2_1"), named_small("R2"))
w = divisor_witness(named_small("N2_l"), S)
print("N2_l divides N2_1 x R2 via the subsemigroup")
print("  {" + ", ".join(S.label(x) for x in w.elements) + "}")
print("mapped onto N2_l by", w.mapping.describe())

print()
names = ("N2_1", "N2_l", "N2_r", "L2", "R2")
print("divides?".ljust(8), *(n.ljust(5) for n in names))
for a in names:
    row = ("yes" if divides(named_small(a), named_small(b)) else "-" for b in names)
    print(a.ljust(8), *(c.ljust(5) for c in row))
