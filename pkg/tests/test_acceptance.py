"""The ten acceptance criteria, each checked exactly.

A summary line per criterion ("AC<n> PASS|FAIL <title>") is printed at the
end of the pytest run by the hook in conftest.py.
"""
import time

import numpy as np
import pytest

import oracles
from finsemi.constructions import (
    ReesSpec,
    l_coset_semigroup,
    l_flat,
    named_small,
    rees_matrix,
)
from finsemi.core import (
    direct_product,
    group_elements,
    has_central_idempotents,
    idempotents,
    is_ideal,
    is_nilsemigroup,
    is_right_ideal,
    verify_associativity,
)
from finsemi.corpus import corpus
from finsemi.green import RELATIONS, class_counts, green_classes
from finsemi.groups import (
    all_subgroups,
    conjugate_subgroup,
    cyclic,
    is_normal,
    parse_cycles,
    subgroup_generated,
    symmetric,
    trivial_subgroup,
)
from finsemi.identities import gr_pseudoidentity_holds, satisfies, separating_identity, var
from finsemi.lemmas import c_out_replica, central_replica, s4_square_closure
from finsemi.morphisms import (
    conjugation_iso,
    divides,
    divisor_witness,
    embeds,
    is_homomorphism,
    is_isomorphism,
    is_onto,
    phi_subgroups,
    quotient_attachment_map,
    rightleft_witness,
    verify_subdirect,
)
from finsemi.sapir import factors_upto, gamma_power, is_square_free, vk_table

N21, N2L, N2R = (named_small(n) for n in ("N2_1", "N2_l", "N2_r"))


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def counts_tuple(t):
    c = class_counts(t)
    return tuple(c[r] for r in RELATIONS)


@pytest.mark.acceptance(1, "order <= 3 corpus: Gr S ideal equivalences, zero exceptions, < 60 s")
def test_ac1_grsideal_corpus():
    with Timer() as clock:
        tables = corpus(3)
        exceptions = []
        for t in tables:
            gr = group_elements(t)
            n1, nl, nr = divides(N21, t), divides(N2L, t), divides(N2R, t)
            right = gr_pseudoidentity_holds(t) == is_right_ideal(t, gr) == (not (n1 or nl))
            both = is_ideal(t, gr) == (not (n1 or nl or nr))
            if not (right and both):
                exceptions.append(t.product.tolist())
    print(f"AC1: {len(tables)} tables, {len(exceptions)} exceptions, {clock.seconds:.2f}s")
    assert len(tables) == 1 + 8 + 113
    assert exceptions == []
    assert clock.seconds < 60


@pytest.mark.acceptance(2, "N2_l divides N2_1 x R2 with an explicit witness, < 1 s")
def test_ac2_pdivisor():
    S = direct_product(N21, named_small("R2"))
    with Timer() as clock:
        w = divisor_witness(N2L, S)
    assert w is not None
    print("AC2: subsemigroup {" + ", ".join(S.label(x) for x in w.elements) + "}")
    print("AC2: onto N2_l: " + w.mapping.describe())
    assert is_homomorphism(w.mapping) and is_onto(w.mapping)
    # independent check of the witness
    assert oracles.closure(S.product.tolist(), w.generators) == set(w.elements)
    sub = oracles.restrict(S.product.tolist(), w.elements)
    assert oracles.is_hom(sub, N2L.product.tolist(), w.mapping.image_of.tolist())
    assert clock.seconds < 1


@pytest.mark.acceptance(3, "order <= 3 corpus: premise implies central idempotents, zero exceptions")
def test_ac3_central():
    exceptions, premise = [], 0
    for t in corpus(3):
        ok = not (divides(N2L, t) or divides(N2R, t) or embeds(named_small("R2"), t) or embeds(named_small("L2"), t))
        if ok:
            premise += 1
            if not has_central_idempotents(t):
                exceptions.append(t.product.tolist())
    print(f"AC3: {premise} tables satisfy the premise, {len(exceptions)} exceptions")
    assert premise > 0 and exceptions == []


@pytest.mark.acceptance(4, "Green structure of the constructions, exact, < 1 s")
def test_ac4_green_structure():
    with Timer() as clock:
        lz6 = l_coset_semigroup(cyclic(6), [0, 3])
        l2 = l_coset_semigroup(cyclic(2))
        flat = l_flat(cyclic(6), [0, 3])
        spec = ReesSpec(cyclic(2), 2, 2, ((0, 0), (0, 0)))
        rees = rees_matrix(spec)
        got = (counts_tuple(lz6), counts_tuple(l2), len(idempotents(flat)))
        R = green_classes(rees, "R").class_of
        L = green_classes(rees, "L").class_of
    assert got == ((4, 2, 2, 4, 2), (3, 2, 2, 3, 2), 2)
    # brute-force agreement on the two coset semigroups
    for t in (lz6, l2):
        for rel in RELATIONS:
            assert oracles.as_blocks(green_classes(t, rel).class_of.tolist()) == oracles.green(t.product.tolist(), rel)
    # Rees elements are (i, g, lam) in lexicographic order
    i_of = np.arange(rees.n) // (2 * 2)
    lam_of = np.arange(rees.n) % 2
    same = lambda a, b: np.array_equal(a[:, None] == a[None, :], b[:, None] == b[None, :])
    assert same(R, i_of) and same(L, lam_of)
    print(f"AC4: counts {got}, Rees R by i and L by lambda, {clock.seconds:.3f}s")
    assert clock.seconds < 1


@pytest.mark.acceptance(5, "constructed maps are homomorphisms for Z2, Z3, Z6, S3; subdirect family in S3, < 10 s")
def test_ac5_maps():
    checked = 0
    with Timer() as clock:
        for G in (cyclic(2), cyclic(3), cyclic(6), symmetric(3)):
            subs = all_subgroups(G)
            for flat in (False, True):
                for H in subs:
                    for K in subs:
                        if H <= K:
                            m = phi_subgroups(G, H, K, flat=flat)
                            assert is_homomorphism(m) and is_onto(m)
                            checked += 1
                    for y in range(G.order):
                        assert is_isomorphism(conjugation_iso(G, H, y, flat=flat))
                        checked += 1
                    if is_normal(G, H):
                        m = quotient_attachment_map(G, H, flat=flat)
                        assert is_homomorphism(m) and is_onto(m)
                        checked += 1
            w = rightleft_witness(G)
            assert is_homomorphism(w.mapping) and is_onto(w.mapping)
            checked += 1
        S3 = symmetric(3)
        H = subgroup_generated(S3, [S3.elements.index(parse_cycles("(12)", 3))])
        conj = {conjugate_subgroup(S3, H, y) for y in range(S3.order)}
        for flat in (False, True):
            maps = [phi_subgroups(S3, trivial_subgroup(S3), K, flat=flat) for K in conj]
            assert verify_subdirect(maps[0].source, maps)
    print(f"AC5: {checked} maps verified, subdirect over {len(conj)} conjugates, {clock.seconds:.2f}s")
    assert clock.seconds < 10


@pytest.mark.acceptance(6, "x^8 = x^12 holds in L(Z2), Lflat(Z2) and fails in L(Z3), Lflat(Z3), < 1 s")
def test_ac6_difference():
    x = var(0)
    with Timer() as clock:
        ident = separating_identity(x ** 2, x ** 6, 6)
        results = [satisfies(build(cyclic(n)), ident) for n in (2, 3) for build in (l_coset_semigroup, l_flat)]
    assert (ident.lhs.letters, ident.rhs.letters) == ((0,) * 8, (0,) * 12)
    assert results == [True, True, False, False]
    for n, expect in ((2, True), (3, False)):
        for build in (l_coset_semigroup, l_flat):
            assert oracles.identity_holds(build(cyclic(n)).product.tolist(), [0] * 8, [0] * 12) is expect
    print(f"AC6: {ident} -> {results}, {clock.seconds:.3f}s")
    assert clock.seconds < 1


@pytest.mark.acceptance(7, "N2_1 x S3 closure: (a, h(123)) meet 2 R-classes and 2 L-classes, < 1 s")
def test_ac7_c_out_replica():
    with Timer() as clock:
        r = c_out_replica()
    P = r.table.product.tolist()
    fam = set(r.left_family)
    r_count = sum(1 for b in oracles.green(P, "R") if b & fam)
    l_count = sum(1 for b in oracles.green(P, "L") if b & fam)
    print(f"AC7: closure of {r.table.n}; (a, h(123)) meet {r_count} R-classes and {l_count} L-classes")
    assert clock.seconds < 1
    assert r_count == 2
    # Left multiplication by (e, (12)) sends (a, (123)) to (a, (12)(123)) and back,
    # so this family shares a single L-class; the count of 2 is not reachable.
    assert l_count == 2


@pytest.mark.acceptance(8, "quotient chain S1 -> S2 -> S3 ends isomorphic to Lflat(S3, H'), < 10 s")
def test_ac8_central_replica():
    with Timer() as clock:
        r = central_replica()
    assert is_isomorphism(r.mapping)
    target = l_flat(symmetric(3), r.stabilizer)
    assert np.array_equal(r.mapping.target.product, target.product)
    assert oracles.is_hom(r.S3.product.tolist(), target.product.tolist(), r.mapping.image_of.tolist())
    assert sorted(r.mapping.image_of.tolist()) == list(range(target.n))
    print(f"AC8: |S1|={r.S1.n} |S2|={r.S2.n} |S3|={r.S3.n}, H'={r.stabilizer!r}, {clock.seconds:.2f}s")
    assert clock.seconds < 10


@pytest.mark.acceptance(9, "k=1 square-free words up to m=4 and the L=8 factor semigroup, < 60 s")
def test_ac9_sapir():
    with Timer() as clock:
        prev = None
        for m in range(1, 5):
            w = gamma_power(1, m)
            assert len(w) == 8 ** m
            assert is_square_free(w)
            if prev is not None:
                assert np.array_equal(w[: len(prev)], prev)
            prev = w
        fs = factors_upto(1, 8)
        t = vk_table(fs)
        assert verify_associativity(t)
        assert is_nilsemigroup(t)
        assert (np.diag(t.product) == 0).all()
        assert green_classes(t, "J").class_count == t.n
    print(f"AC9: |gamma^4| = {len(prev)}, V table of {t.n} elements, {clock.seconds:.2f}s")
    assert clock.seconds < 60


@pytest.mark.acceptance(10, "S4 x S4 closure of order 576 with full Green analysis, < 10 s")
def test_ac10_scale():
    with Timer() as clock:
        cl = s4_square_closure()
        t = cl.table
        c = class_counts(t)
        parts = {rel: green_classes(t, rel).class_of for rel in RELATIONS}
    assert t.n == 576
    assert c["J"] <= c["D"] <= min(c["R"], c["L"])
    assert c["H"] >= max(c["R"], c["L"])
    for fine, coarse in (("H", "R"), ("H", "L"), ("R", "D"), ("L", "D"), ("D", "J")):
        pairs = set(zip(parts[fine].tolist(), parts[coarse].tolist()))
        assert len(pairs) == c[fine]
    assert np.array_equal(parts["D"], parts["J"])
    print(f"AC10: order {t.n}, counts {c}, {clock.seconds:.2f}s")
    assert clock.seconds < 10
