"""x^8 = x^12 separates L(C2) from L(C3).

Run with: python3 demos/separating_identity.py
"""
from finsemi.constructions import l_coset_semigroup, l_flat
from finsemi.groups import cyclic
from finsemi.identities import satisfies, separating_identity, var

x = var(0)
ident = separating_identity(x ** 2, x ** 6, 6)
print("identity:", ident)
for n in (2, 3, 4, 6):
    for name, build in (("L", l_coset_semigroup), ("Lflat", l_flat)):
        result = satisfies(build(cyclic(n)), ident)
        print(f"  {name}(C{n}): {'holds' if result else 'fails'}")
