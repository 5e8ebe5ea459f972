"""Build a few coset semigroups and print their Green structure.

Run with: python3 demos/coset_semigroups.py
"""
from finsemi.constructions import l_coset_semigroup, l_flat, r_coset_semigroup
from finsemi.core import idempotents
from finsemi.green import RELATIONS, class_counts
from finsemi.groups import cyclic, symmetric, all_subgroups


def show(name, t):
    c = class_counts(t)
    counts = " ".join(f"{r}={c[r]}" for r in RELATIONS)
    print(f"{name:<22} n={t.n:<3} idempotents={len(idempotents(t)):<2} {counts}")


show("L(C2)", l_coset_semigroup(cyclic(2)))
show("L(C6,{0,3})", l_coset_semigroup(cyclic(6), [0, 3]))
show("R(C6,{0,3})", r_coset_semigroup(cyclic(6), [0, 3]))
show("Lflat(C6,{0,3})", l_flat(cyclic(6), [0, 3]))

# one row per subgroup of S3; the R-class count tracks the index
S3 = symmetric(3)
for H in all_subgroups(S3):
    show(f"L(S3, {H!r})", l_coset_semigroup(S3, H))
