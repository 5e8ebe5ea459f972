"""Named finite checks of the coset-attachment and divisor results.

Each scenario runs a deterministic, exhaustive check and returns a report
with witnesses on failure.  ``verify_lemma(name)`` is the entry point used by
the command line.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import sapir
from .constructions import (
    ReesSpec,
    l_coset_semigroup,
    l_flat,
    named_small,
    rees_index,
    rees_matrix,
)
from .core import (
    CayleyTable,
    GeneratorDomain,
    close_generators,
    direct_product,
    group_elements,
    has_central_idempotents,
    is_ideal,
    is_nilsemigroup,
    is_right_ideal,
    quotient_by_partition,
    rees_quotient,
    verify_associativity,
)
from .corpus import corpus
from .errors import UnknownLemma
from .green import (
    class_counts,
    clifford_decomposition,
    green_classes,
    is_completely_regular,
    is_completely_simple,
)
from .groups import (
    FiniteGroup,
    all_subgroups,
    cyclic,
    intersect,
    is_normal,
    left_cosets,
    coset_lookup,
    right_cosets,
    subgroup_generated,
    symmetric,
    resolve_element,
)
from .identities import (
    global_index_period,
    gr_pseudoidentity_holds,
    parse_word,
    periodicity_identity,
    satisfies,
    separating_identity,
)
from .morphisms import (
    Mapping,
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


@dataclass
class LemmaReport:
    name: str
    passed: bool = True
    lines: list[str] = field(default_factory=list)

    def note(self, text: str) -> None:
        self.lines.append(text)

    def require(self, ok: bool, text: str) -> bool:
        if not ok:
            self.passed = False
            self.lines.append("FAIL " + text)
        return ok

    def render(self) -> str:
        head = f"{self.name}: {'PASS' if self.passed else 'FAIL'}"
        return "\n".join([head] + ["  " + x for x in self.lines])


def small_groups() -> list[FiniteGroup]:
    return [cyclic(2), cyclic(3), cyclic(6), symmetric(3)]


# ---------------------------------------------------------------- divisor lemmas

def grsideal_row(t: CayleyTable) -> dict[str, bool]:
    """All the predicates tied together by the Gr S ideal lemma and its corollary."""
    gr = group_elements(t)
    n1 = divides(named_small("N2_1"), t)
    nl = divides(named_small("N2_l"), t)
    nr = divides(named_small("N2_r"), t)
    return {
        "pseudo": gr_pseudoidentity_holds(t),
        "right_ideal": is_right_ideal(t, gr),
        "ideal": is_ideal(t, gr),
        "no_right_divisor": not (n1 or nl),
        "no_divisor": not (n1 or nl or nr),
    }


def check_grsideal(tables=None) -> LemmaReport:
    rep = LemmaReport("grSideal")
    tables = corpus(3) if tables is None else tables
    bad = 0
    for i, t in enumerate(tables):
        row = grsideal_row(t)
        ok = row["pseudo"] == row["right_ideal"] == row["no_right_divisor"] and row["ideal"] == row["no_divisor"]
        if not ok:
            bad += 1
            rep.require(False, f"table #{i} {t.product.tolist()}: {row}")
    rep.note(f"{len(tables)} tables checked, {bad} exceptions")
    return rep


def check_pdivisor() -> LemmaReport:
    rep = LemmaReport("pdivisor")
    S = direct_product(named_small("N2_1"), named_small("R2"))
    T = named_small("N2_l")
    w = divisor_witness(T, S)
    if rep.require(w is not None, "no divisor found"):
        rep.require(is_homomorphism(w.mapping) and is_onto(w.mapping), "witness map is not an onto homomorphism")
        rep.note("subsemigroup: {" + ", ".join(S.label(x) for x in w.elements) + "}")
        rep.note("generated by: " + ", ".join(S.label(x) for x in w.generators))
        rep.note("onto N2_l: " + w.mapping.describe())
    return rep


def central_premise(t: CayleyTable) -> bool:
    """No N2_l / N2_r divisor and no copy of L2 or R2."""
    return not (
        divides(named_small("N2_l"), t)
        or divides(named_small("N2_r"), t)
        or embeds(named_small("L2"), t)
        or embeds(named_small("R2"), t)
    )


def check_central(tables=None) -> LemmaReport:
    rep = LemmaReport("central")
    tables = corpus(3) if tables is None else tables
    premise = 0
    for i, t in enumerate(tables):
        if central_premise(t):
            premise += 1
            rep.require(has_central_idempotents(t), f"table #{i} {t.product.tolist()} has non-central idempotents")
    rep.note(f"{len(tables)} tables, {premise} satisfy the premise")
    return rep


def check_clifford(tables=None) -> LemmaReport:
    rep = LemmaReport("clifford")
    if tables is None:
        tables = list(corpus(3)) + [l_coset_semigroup(G) for G in small_groups()]
    cr = 0
    for i, t in enumerate(tables):
        m, k = global_index_period(t)
        crv = satisfies(t, periodicity_identity(1, k))
        if not rep.require(crv == is_completely_regular(t), f"table #{i}: x = x^(k+1) disagrees with complete regularity"):
            continue
        if not crv:
            continue
        cr += 1
        dec = clifford_decomposition(t)
        rep.require(all(is_completely_simple(c) for c in dec.components), f"table #{i}: component not completely simple")
    rep.note(f"{cr} completely regular tables decomposed")
    return rep


def rees_key_check(spec: ReesSpec) -> tuple[bool, bool]:
    """(R-classes match i, L-classes match lambda) for the Rees matrix table."""
    t = rees_matrix(spec)
    i_of = np.array([rees_index_inverse(spec, x)[0] for x in range(t.n)])
    l_of = np.array([rees_index_inverse(spec, x)[2] for x in range(t.n)])
    R = green_classes(t, "R").class_of
    L = green_classes(t, "L").class_of
    same = lambda a, b: bool(np.array_equal(a[:, None] == a[None, :], b[:, None] == b[None, :]))
    return same(R, i_of), same(L, l_of)


def rees_index_inverse(spec: ReesSpec, x: int) -> tuple[int, int, int]:
    i, rest = divmod(int(x), spec.group.order * spec.Lam)
    g, lam = divmod(rest, spec.Lam)
    assert rees_index(spec, i, g, lam) == x
    return i, g, lam


def check_rees_green() -> LemmaReport:
    rep = LemmaReport("rees-green")
    S3 = symmetric(3)
    specs = [
        ReesSpec(cyclic(2), 2, 2, [[0, 0], [0, 0]]),
        ReesSpec(cyclic(2), 2, 2, [[0, 0], [0, 1]]),
        ReesSpec(cyclic(3), 3, 2, [[0, 0, 0], [0, 1, 2]]),
        ReesSpec(S3, 2, 2, [[0, 0], [0, resolve_element(S3, "(12)")]]),
    ]
    for spec in specs:
        r_ok, l_ok = rees_key_check(spec)
        t = rees_matrix(spec)
        label = f"M({spec.group.name}; {spec.I}, {spec.Lam})"
        rep.require(r_ok and l_ok, f"{label}: classes not keyed by indices")
        rep.require(is_completely_simple(t), f"{label}: not completely simple")
        counts = class_counts(t)
        rep.require(counts["R"] == spec.I and counts["L"] == spec.Lam and counts["D"] == 1, f"{label}: counts {counts}")
    rep.note(f"{len(specs)} Rees matrix tables checked")
    return rep


# ---------------------------------------------------------------- coset attachment maps

def check_subgroups() -> LemmaReport:
    rep = LemmaReport("subgroups")
    count = 0
    for G in small_groups():
        subs = all_subgroups(G)
        for H, K in itertools.product(subs, subs):
            if not H <= K:
                continue
            for flat in (False, True):
                m = phi_subgroups(G, H, K, flat=flat)
                count += 1
                rep.require(is_homomorphism(m) and is_onto(m), f"{G.name} {H!r} <= {K!r} flat={flat}")
    rep.note(f"{count} maps checked")
    return rep


def check_conjugate() -> LemmaReport:
    rep = LemmaReport("conjugate")
    count = 0
    for G in small_groups():
        for H in all_subgroups(G):
            for y in range(G.order):
                for flat in (False, True):
                    m = conjugation_iso(G, H, y, flat=flat)
                    count += 1
                    rep.require(is_isomorphism(m), f"{G.name} {H!r} y={G.label(y)} flat={flat}")
    rep.note(f"{count} isomorphisms checked")
    return rep


def subdirect_maps(G: FiniteGroup, family, flat: bool) -> tuple[CayleyTable, list[Mapping]]:
    N = intersect(*family)
    maps = [phi_subgroups(G, N, H, flat=flat) for H in family]
    return maps[0].source, maps


def check_intersection() -> LemmaReport:
    rep = LemmaReport("intersection")
    count = 0
    for G in small_groups():
        subs = all_subgroups(G)
        for A, B in itertools.combinations(subs, 2):
            for flat in (False, True):
                S, maps = subdirect_maps(G, [A, B], flat)
                count += 1
                rep.require(verify_subdirect(S, maps), f"{G.name} {A!r} & {B!r} flat={flat}")
    S3 = symmetric(3)
    conj = [subgroup_generated(S3, [resolve_element(S3, c)]) for c in ("(12)", "(13)")]
    S, maps = subdirect_maps(S3, conj, flat=False)
    rep.require(S.n == 12 and verify_subdirect(S, maps), "L(S3) from the conjugates <(12)>, <(13)>")
    rep.note(f"{count + 1} families checked")
    return rep


def check_quotient() -> LemmaReport:
    rep = LemmaReport("quotient")
    count = 0
    for G in small_groups():
        for N in all_subgroups(G):
            if not is_normal(G, N):
                continue
            for flat in (False, True):
                m = quotient_attachment_map(G, N, flat=flat)
                count += 1
                rep.require(is_homomorphism(m) and is_onto(m), f"{G.name} N={N!r} flat={flat}")
    rep.note(f"{count} maps checked")
    return rep


def check_right_left() -> LemmaReport:
    rep = LemmaReport("right-left")
    for G in (cyclic(2), cyclic(3), symmetric(3)):
        w = rightleft_witness(G)
        g = G.order
        rep.require(w.table.n == g + g * g + g, f"{G.name}: |T| = {w.table.n}")
        rep.require(is_homomorphism(w.mapping) and is_onto(w.mapping), f"{G.name}: map is not an onto homomorphism")
        rep.note(f"{G.name}: |T| = {w.table.n} onto R-flat of size {w.mapping.target.n}")
    return rep


def check_difference() -> LemmaReport:
    rep = LemmaReport("difference")
    ident = separating_identity(parse_word("x^2"), parse_word("x^6"), 6)
    rep.note(f"identity: {ident}")
    for G, expect in ((cyclic(2), True), (cyclic(3), False)):
        for build in (l_coset_semigroup, l_flat):
            t = build(G)
            rep.require(satisfies(t, ident) == expect, f"{build.__name__}({G.name}) should {'satisfy' if expect else 'fail'} it")
    return rep


# ---------------------------------------------------------------- replicas of two constructions

@dataclass
class COutReplica:
    table: CayleyTable
    elements: list               # (N2_1 element, S3 element) pairs
    left_family: list[int]       # (a, h y) for h in H
    right_family: list[int]      # (a, y h) for h in H
    r_classes_left: int          # R-classes met by (a, h y)
    l_classes_left: int          # L-classes met by (a, h y)
    r_classes_right: int
    l_classes_right: int


def c_out_replica() -> COutReplica:
    """Close {(e,(12)), (a,(123))} inside N2_1 x S3 and count classes over (a, hy) and (a, yh).

    Right multiplication cannot move between the (a, hy) since H meets
    y^-1 H y trivially, so they lie in |H| R-classes.  Left multiplication by
    (e, h) does move between them, so they share one L-class; the mirror
    family (a, yh) is the one spread over |H| L-classes.
    """
    N = named_small("N2_1")
    G = symmetric(3)
    e, a = 0, 1
    h0, y = resolve_element(G, "(12)"), resolve_element(G, "(123)")
    dom = GeneratorDomain(
        [(e, h0), (a, y)],
        lambda u, v: (N.mul(u[0], v[0]), G.mul(u[1], v[1])),
        lambda u: f"({N.label(u[0])},{G.label(u[1])})",
    )
    cl = close_generators(dom)
    H = subgroup_generated(G, [h0]).members
    left = [cl.index[(a, G.mul(h, y))] for h in H]
    right = [cl.index[(a, G.mul(y, h))] for h in H]
    R = green_classes(cl.table, "R").class_of
    L = green_classes(cl.table, "L").class_of
    count = lambda cls, xs: len({int(cls[x]) for x in xs})
    return COutReplica(cl.table, cl.elements, left, right,
                       count(R, left), count(L, left), count(R, right), count(L, right))


def check_c_out_replica() -> LemmaReport:
    rep = LemmaReport("c-out-replica")
    r = c_out_replica()
    lab = lambda xs: ", ".join(r.table.label(x) for x in xs)
    rep.note(f"closure has {r.table.n} elements")
    rep.note(f"(a, hy): {lab(r.left_family)} -> {r.r_classes_left} R-classes, {r.l_classes_left} L-class(es)")
    rep.note(f"(a, yh): {lab(r.right_family)} -> {r.r_classes_right} R-class(es), {r.l_classes_right} L-classes")
    rep.require(r.r_classes_left == 2, "the (a, hy) should meet 2 R-classes")
    rep.require(r.l_classes_right == 2, "the (a, yh) should meet 2 L-classes")
    return rep


@dataclass
class CentralReplica:
    S1: CayleyTable
    S2: CayleyTable
    S3: CayleyTable
    stabilizer: object       # the subgroup H' = {h : h a = a} of G
    mapping: Mapping         # S3 -> l_flat(G, H')


def central_replica(G: FiniteGroup | None = None, H=None, K=None) -> CentralReplica:
    """G acting on a nil part generated by one element a with Ha = a = aK.

    Elements: ('g', p); ('n1', i, j) standing for p a q with p in the i-th left
    coset of H and q in the j-th right coset of K; ('n2', i, d, j) for
    p a x a q with K x H the d-th double coset; and ('0',).
    """
    G = symmetric(3) if G is None else G
    H = subgroup_generated(G, [resolve_element(G, "(12)")]) if H is None else H
    K = subgroup_generated(G, [resolve_element(G, "(13)")]) if K is None else K
    lc, rc = left_cosets(G, H), right_cosets(G, K)
    lw, rw = coset_lookup(G, lc), coset_lookup(G, rc)
    double: dict[int, int] = {}
    dcosets = []
    for x in range(G.order):
        if x in double:
            continue
        block = sorted({G.mul(G.mul(k, x), h) for k in K.members for h in H.members})
        for y in block:
            double[y] = len(dcosets)
        dcosets.append(block)
    lrep = [c[0] for c in lc]
    rrep = [c[0] for c in rc]

    def mul(u, v):
        if u[0] == "0" or v[0] == "0":
            return ("0",)
        if u[0] == "g" and v[0] == "g":
            return ("g", G.mul(u[1], v[1]))
        if u[0] == "g":
            return (v[0], int(lw[G.mul(u[1], lrep[v[1]])]), *v[2:])
        if v[0] == "g":
            return (*u[:-1], int(rw[G.mul(rrep[u[-1]], v[1])]))
        if u[0] == "n1" and v[0] == "n1":
            return ("n2", u[1], double[G.mul(rrep[u[2]], lrep[v[1]])], v[2])
        return ("0",)

    def label(x):
        if x[0] == "g":
            return G.label(x[1])
        if x[0] == "0":
            return "0"
        return x[0] + ":" + ".".join(map(str, x[1:]))

    a = ("n1", int(lw[G.identity]), int(rw[G.identity]))
    gens = [("g", g) for g in (G.table.generators or range(G.order))] + [a]
    cl = close_generators(GeneratorDomain(gens, mul, label))
    S1 = cl.table
    nil = [i for i, x in enumerate(cl.elements) if x[0] != "g"]
    # J2 = X X with X = S1^1 a S1^1 (everything but G): products using a twice
    J2 = sorted(set(S1.product[np.ix_(nil, nil)].ravel().tolist()))
    S2 = rees_quotient(S1, J2)
    dropped = set(J2)
    keep = [i for i in range(S1.n) if i not in dropped]
    # rho on S2: {0}, each {g}, and each g a G (all n1 elements over one left coset)
    keys = []
    for i in keep:
        x = cl.elements[i]
        keys.append(("g", x[1]) if x[0] == "g" else ("coset", x[1]))
    keys.append(("0",))
    ids = _class_ids(keys)
    S3 = quotient_by_partition(S2, np.array(ids))
    cls_of = dict(zip(keys, ids))
    abar = cls_of[("coset", a[1])]
    stab = subgroup_generated(G, [h for h in range(G.order) if S3.mul(cls_of[("g", h)], abar) == abar])
    target = l_flat(G, stab)
    where = coset_lookup(G, left_cosets(G, stab))
    image = [0] * S3.n
    for key, q in cls_of.items():
        if key[0] == "g":
            image[q] = key[1]
        elif key[0] == "coset":
            image[q] = G.order + int(where[lrep[key[1]]])
        else:
            image[q] = target.n - 1
    return CentralReplica(S1, S2, S3, stab, Mapping(S3, target, image))


def _class_ids(keys) -> list[int]:
    seen: dict = {}
    return [seen.setdefault(k, len(seen)) for k in keys]


def check_central_replica() -> LemmaReport:
    rep = LemmaReport("central-replica")
    r = central_replica()
    rep.note(f"|S1| = {r.S1.n}, |S2| = {r.S2.n}, |S3| = {r.S3.n}, H' = {r.stabilizer!r}")
    rep.require(verify_associativity(r.S1), "S1 is not associative")
    rep.require(is_isomorphism(r.mapping), "S3 is not isomorphic to L-flat(G, H') under the coset map")
    return rep


# ---------------------------------------------------------------- square-free words

def check_sapir_squarefree(k: int = 1, max_m: int = 4, L: int = 8) -> LemmaReport:
    rep = LemmaReport("sapir-squarefree")
    r = sapir.order_r(k)
    prev = None
    for m in range(1, max_m + 1):
        w = sapir.gamma_power(k, m)
        rep.require(len(w) == r ** m, f"|gamma^{m}| = {len(w)}")
        wit = sapir.square_witness(w)
        rep.require(wit is None, f"gamma^{m} contains a square at {wit}")
        if prev is not None:
            rep.require(np.array_equal(w[: len(prev)], prev), f"gamma^{m - 1} is not a prefix of gamma^{m}")
        prev = w
    fs = sapir.factors_upto(k, L)
    t = sapir.vk_table(fs)
    rep.note(f"k={k}: gamma^m square-free for m <= {max_m}; V table with L={L} has {t.n} elements (stable at m={fs.stabilized_at})")
    rep.require(verify_associativity(t), "V table is not associative")
    rep.require(is_nilsemigroup(t), "V table is not nil")
    rep.require(bool((np.diag(t.product) == 0).all()), "some u.u is non-zero")
    rep.require(green_classes(t, "J").class_count == t.n, "J-classes are not trivial")
    return rep


# ---------------------------------------------------------------- scale

def s4_square_closure(pairs=None):
    """Close three generator pairs inside S4 x S4 (576 elements when they generate everything)."""
    G = symmetric(4)
    if pairs is None:
        pairs = [("(12)", "(123)"), ("(1234)", "(12)"), ("(123)", "(1234)")]
    gens = [(resolve_element(G, p), resolve_element(G, q)) for p, q in pairs]
    dom = GeneratorDomain(gens, lambda x, y: (G.mul(x[0], y[0]), G.mul(x[1], y[1])),
                          lambda x: f"({G.label(x[0])},{G.label(x[1])})")
    return close_generators(dom)


LEMMAS = {
    "grSideal": check_grsideal,
    "pdivisor": check_pdivisor,
    "central": check_central,
    "clifford": check_clifford,
    "rees-green": check_rees_green,
    "subgroups": check_subgroups,
    "conjugate": check_conjugate,
    "intersection": check_intersection,
    "quotient": check_quotient,
    "right-left": check_right_left,
    "difference": check_difference,
    "c-out-replica": check_c_out_replica,
    "central-replica": check_central_replica,
    "sapir-squarefree": check_sapir_squarefree,
}


def verify_lemma(name: str) -> LemmaReport:
    try:
        check = LEMMAS[name]
    except KeyError:
        raise UnknownLemma(f"unknown scenario {name!r}; known: {', '.join(LEMMAS)}") from None
    return check()
