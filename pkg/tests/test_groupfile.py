"""The line-based group file format: parsing, errors, and round-trips."""
from __future__ import annotations

import pytest

from commprobe.catalog import builtin_automorphisms, builtin_group, catalog_names
from commprobe.errors import GroupFileError
from commprobe.groupfile import format_group_file, parse_group_file
from commprobe.probability import commuting_probability


S3_PERM = """
# A permutation group on three points.
perm 3
gen (1 2 3)
gen (1 2)
"""

Z4_TABLE = """
table 4
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
"""

E9_WITH_AUT = """
perm 6
gen (1 2 3)
gen (4 5 6)
aut swap
g1 -> g2
g2 -> g1
"""


class TestParsePerm:
    def test_s3(self):
        G, auts = parse_group_file(S3_PERM)
        assert G.order == 6
        assert auts == {}
        assert commuting_probability(G).numerator == 1

    def test_comments_and_blanks_ignored(self):
        noisy = "# leading\n\nperm 3\n# mid\ngen (1 2 3)\n\ngen (1 2)\n# trailing\n"
        G, _ = parse_group_file(noisy)
        assert G.order == 6

    def test_trivial_group(self):
        G, _ = parse_group_file("perm 1\n")
        assert G.order == 1


class TestParseTable:
    def test_z4(self):
        G, auts = parse_group_file(Z4_TABLE)
        assert G.order == 4
        assert G.element_order(1) == 4
        assert auts == {}

    def test_bad_row_width(self):
        with pytest.raises(GroupFileError) as info:
            parse_group_file("table 3\n0 1 2\n1 2\n2 0 1\n")
        assert info.value.line == 3

    def test_bad_entry(self):
        with pytest.raises(GroupFileError):
            parse_group_file("table 2\n0 x\n1 0\n")

    def test_non_group_table(self):
        with pytest.raises(GroupFileError):
            parse_group_file("table 2\n1 1\n1 1\n")


class TestParseAut:
    def test_e9_swap(self):
        G, auts = parse_group_file(E9_WITH_AUT)
        assert G.order == 9
        assert set(auts) == {"swap"}
        phi = auts["swap"]
        assert phi.order == 2

    def test_inverse_word(self):
        text = "perm 5\ngen (1 2 3 4 5)\naut invert\ng1 -> g1^-1\n"
        G, auts = parse_group_file(text)
        phi = auts["invert"]
        assert phi.mapping[1] == G.inv_elem(1)

    def test_word_with_product(self):
        text = "perm 3\ngen (1 2 3)\naut square\ng1 -> g1 g1\n"
        G, auts = parse_group_file(text)
        phi = auts["square"]
        gen = G.generators[0]
        assert phi.mapping[gen] == G.mul_elems(gen, gen)

    def test_identity_image(self):
        # x -> 1 is not injective, so it must be rejected as an automorphism.
        text = "perm 3\ngen (1 2 3)\naut collapse\ng1 -> 1\n"
        with pytest.raises(GroupFileError):
            parse_group_file(text)

    def test_missing_image_line(self):
        text = "perm 6\ngen (1 2 3)\ngen (1 2)\naut partial\ng1 -> g1\n"
        with pytest.raises(GroupFileError):
            parse_group_file(text)

    def test_non_automorphism_rejected_with_line(self):
        text = "perm 6\ngen (1 2 3)\ngen (1 2)\naut bad\ng1 -> g2\ng2 -> g1\n"
        with pytest.raises(GroupFileError):
            parse_group_file(text)

    def test_duplicate_name_rejected(self):
        text = E9_WITH_AUT + "aut swap\ng1 -> g2\ng2 -> g1\n"
        with pytest.raises(GroupFileError):
            parse_group_file(text)


class TestErrors:
    def test_empty_file(self):
        with pytest.raises(GroupFileError):
            parse_group_file("")

    def test_unknown_header(self):
        with pytest.raises(GroupFileError) as info:
            parse_group_file("matrix 3\n")
        assert info.value.line == 1

    def test_bad_cycle_token(self):
        with pytest.raises(GroupFileError):
            parse_group_file("perm 3\ngen (1 2 x)\n")

    def test_point_out_of_range(self):
        with pytest.raises(GroupFileError):
            parse_group_file("perm 3\ngen (1 4)\n")

    def test_error_has_line_number(self):
        with pytest.raises(GroupFileError) as info:
            parse_group_file("perm 3\ngen (1 2 3)\ngen (9 9)\n")
        assert info.value.line == 3


class TestFormatRoundTrip:
    @pytest.mark.parametrize("name", ["S3", "Q8", "E9", "Heis27", "Z12", "SL23", "E27"])
    def test_catalog_round_trip(self, name):
        G = builtin_group(name)
        auts = builtin_automorphisms(name)
        text = format_group_file(G, auts)
        H, parsed_auts = parse_group_file(text)
        assert H.order == G.order
        assert commuting_probability(H) == commuting_probability(G)
        assert set(parsed_auts) == set(auts)
        # Orders of the parsed automorphisms survive the trip.
        for key in auts:
            assert parsed_auts[key].order == auts[key].order

    def test_table_group_round_trip(self):
        G, _ = parse_group_file(Z4_TABLE)
        text = format_group_file(G, {})
        H, _ = parse_group_file(text)
        assert H.order == 4
        assert sorted(H.element_orders().tolist()) == sorted(G.element_orders().tolist())

    def test_format_is_stable(self):
        G = builtin_group("E9")
        auts = builtin_automorphisms("E9")
        once = format_group_file(G, auts)
        twice = format_group_file(*parse_group_file(once))
        assert once == twice
