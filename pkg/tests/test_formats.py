import itertools

import numpy as np
import pytest
from hypothesis import given, settings

import oracles
from strategies import transformation_semigroups
from finsemi.constructions import l_coset_semigroup, l_flat, named_small, r_coset_semigroup, rees_matrix, ReesSpec
from finsemi.corpus import associative_tables, canonical_form, corpus
from finsemi.errors import BadFile, CapExceeded, ParseError
from finsemi.groups import cyclic, symmetric
from finsemi.language import parse_construction, parse_group, parse_subgroup
from finsemi.morphisms import dual_table, find_isomorphism
from finsemi.sapir import factors_upto, vk_table
from finsemi.sgfile import format_sg, parse_sg, read_sg, write_sg


class TestSgFile:
    def test_format(self):
        assert format_sg(named_small("N2_1")) == "3\n0 1 2\n1 2 2\n2 2 2\n#labels e a 0\n#gens 0 1\n"

    def test_round_trip_on_disk(self, tmp_path):
        t = l_flat(cyclic(6), [0, 3])
        path = tmp_path / "t.sg"
        write_sg(t, path)
        back = read_sg(path)
        assert back == t and list(back.labels) == list(t.labels) and list(back.generators) == list(t.generators)
        assert format_sg(back) == path.read_text()

    def test_sparse_rows(self):
        t = vk_table(factors_upto(1, 2))
        assert parse_sg(format_sg(t)) == t

    def test_without_metadata(self):
        t = parse_sg("2\n0 0\n1 1\n")
        assert t.labels is None or list(t.labels) == ["0", "1"]
        assert t.product.tolist() == [[0, 0], [1, 1]]

    @pytest.mark.parametrize("text", [
        "",
        "two\n0 0\n0 0\n",
        "2\n0 0\n",
        "2\n0 0 0\n0 0\n",
        "2\n0 2\n0 0\n",
        "2\n1 0\n0 0\n",          # not associative
        "2\n0 0\n1 1\n#gens 0\n",  # generators do not generate
        "2\n0 0\n1 1\n#labels p\n",
        "2\n0 x\n1 1\n",
    ])
    def test_bad_files(self, text):
        with pytest.raises(BadFile):
            parse_sg(text)

    def test_unchecked(self):
        t = parse_sg("2\n1 0\n0 0\n", check=False)
        assert t.product.tolist() == [[1, 0], [0, 0]]

    @settings(max_examples=40, deadline=None)
    @given(transformation_semigroups())
    def test_round_trip(self, t):
        assert parse_sg(format_sg(t)) == t
        assert format_sg(parse_sg(format_sg(t))) == format_sg(t)


class TestLanguage:
    def test_groups(self):
        assert parse_group("C6").order == 6
        assert parse_group("S3").order == 6
        assert parse_group("C2*C3").order == 6
        assert parse_group("Z4").order == 4

    def test_subgroups(self):
        G = symmetric(3)
        assert parse_subgroup(G, "<(12)>").order == 2
        assert parse_subgroup(cyclic(6), "{0,3}").members == (0, 3)
        with pytest.raises(ParseError):
            parse_subgroup(cyclic(6), "{0,1}")

    @pytest.mark.parametrize("text,size", [
        ("L(C2)", 4),
        ("N2_1", 3),
        ("Lflat(C6,{0,3})", 10),
        ("R(C6,{0,3})", 9),
        ("Rflat(S3,<(12)>)", 10),
        ("LflatFull(C2)", 4),
        ("N2_1 x R2", 6),
        ("N2_1 × R2", 6),
        ("Rees(C2,2,2,[[0,0],[0,0]])", 8),
        ("dual(N2_l)", 3),
        ("monoid(N2)", 3),
        ("S3", 6),
    ])
    def test_sizes(self, text, size):
        assert parse_construction(text).n == size

    def test_meaning(self):
        assert parse_construction("L(C6,{0,3})") == l_coset_semigroup(cyclic(6), [0, 3])
        assert parse_construction("R(C2)") == r_coset_semigroup(cyclic(2))
        assert find_isomorphism(parse_construction("dual(N2_l)"), named_small("N2_r")) is not None
        S3 = symmetric(3)
        spec = ReesSpec(S3, 2, 1, ((0, list(S3.table.labels).index("(12)")),))
        assert parse_construction("Rees(S3,2,1,[[e,(12)]])") == rees_matrix(spec)

    @pytest.mark.parametrize("text", ["", "L(C2", "Q8", "L(C2,{1})", "Rees(C2,2,2,[[0]])", "N2_1 x", "C0"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_construction(text)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            parse_construction("S4 x S4", cap=100)


class TestCorpus:
    def test_counts(self):
        assert [len(associative_tables(n)) for n in (1, 2, 3)] == [1, 8, 113]
        assert len(corpus(3)) == 122
        assert len(corpus(3, up_to_isomorphism=True)) == 1 + 5 + 24

    def test_all_associative_against_oracle(self):
        found = set()
        for P in itertools.product(range(3), repeat=9):
            rows = [list(P[0:3]), list(P[3:6]), list(P[6:9])]
            if oracles.is_associative(rows):
                found.add(tuple(P))
        assert {tuple(np.asarray(P).ravel().tolist()) for P in associative_tables(3)} == found

    def test_canonical_form_is_invariant(self):
        t = l_flat(cyclic(2))
        perm = np.array([3, 0, 4, 1, 2])
        inv = np.argsort(perm)
        P = inv[t.product[np.ix_(perm, perm)]]
        assert canonical_form(P) == canonical_form(t.product)
        assert canonical_form(dual_table(named_small("N2_l")).product) == canonical_form(named_small("N2_r").product)
