import pytest

from conftest import (FIG1_NCIS_SRC, FIG1_ORDER_SRC, FIG2_NCIS_SRC,
                      ONE_ELEMENT_SRC, idx)
from oracles import oracle_glb, oracle_lub
from ordalg import (Algebra, BinTable, ClassTag, ParseError, Universe,
                    build_algebra, common_lower_bounds, join, leq,
                    parse_algebra, partial_meet, section, serialize_algebra,
                    validate_join_semilattice)


# --- parsing ---------------------------------------------------------------

def test_parse_fig1_order_only(fig1_order):
    assert fig1_order.n == 5
    assert fig1_order.label(fig1_order.top) == "1"
    assert fig1_order.class_tag == ClassTag.JSL
    a, b, c = idx(fig1_order, "a", "b", "c")
    assert join(fig1_order, a, b) == b
    assert join(fig1_order, a, c) == fig1_order.top


def test_parse_fig1_full(fig1):
    assert fig1.class_tag == ClassTag.NCIS
    assert fig1.name == "fig1"
    assert fig1.imp is not None and fig1.meet is not None


def test_parse_one_element(one_element):
    assert one_element.n == 1
    assert one_element.join.values == ((0,),)
    assert one_element.top == 0


def test_parse_bowtie_completion_rejected():
    src = ("algebra\nelements: p q u v 1\norder:\n"
           "  p < u\n  p < v\n  q < u\n  q < v\n  u < 1\n  v < 1\nend\n")
    with pytest.raises(ParseError, match=r"no least upper bound for \(p,q\)"):
        parse_algebra(src)


def test_parse_bowtie_without_top_rejected():
    src = "algebra\nelements: p q u v\norder:\n  p < u\n  p < v\n  q < u\n  q < v\nend\n"
    with pytest.raises(ParseError, match="no unique top"):
        parse_algebra(src)


def test_parse_duplicate_label():
    with pytest.raises(ParseError, match="duplicate label 'a'") as err:
        parse_algebra("algebra\nelements: a b a\nend\n")
    assert err.value.line == 2
    assert err.value.col == 15


def test_parse_reserved_label():
    with pytest.raises(ParseError, match="label may not be"):
        parse_algebra("algebra\nelements: a - 1\nend\n")


def test_parse_non_commutative_join():
    src = ("algebra\nelements: a b 1\nop join:\n"
           "  a a 1\n  b b 1\n  1 1 1\nend\n")
    with pytest.raises(ParseError, match="join-commutative"):
        parse_algebra(src)


def test_parse_join_from_table_only():
    src = ("algebra\nelements: a b 1\nop join:\n"
           "  a 1 1\n  1 b 1\n  1 1 1\nend\n")
    alg = parse_algebra(src)
    a, b = idx(alg, "a", "b")
    assert leq(alg, a, alg.top) and not leq(alg, a, b)


def test_parse_order_join_mismatch():
    src = ("algebra\nelements: a b 1\norder:\n  a < b\n  b < 1\n"
           "op join:\n  a 1 1\n  1 b 1\n  1 1 1\nend\n")
    with pytest.raises(ParseError, match="does not match the order"):
        parse_algebra(src)


def test_parse_meet_domain_mismatch():
    src = FIG1_NCIS_SRC.replace("  a a - - a", "  a a a - a")
    with pytest.raises(ParseError, match=r"meet table domain mismatch at \(a,c\)"):
        parse_algebra(src)


def test_parse_meet_value_mismatch():
    src = FIG1_NCIS_SRC.replace("  a b - - b", "  b b - - b")
    with pytest.raises(ParseError, match="does not match the greatest lower bound"):
        parse_algebra(src)


def test_parse_unknown_element_position():
    with pytest.raises(ParseError) as err:
        parse_algebra("algebra\nelements: a 1\norder:\n  a < z\nend\n")
    assert err.value.line == 4 and err.value.col == 7


def test_parse_text_after_end():
    with pytest.raises(ParseError, match="text after 'end'"):
        parse_algebra(ONE_ELEMENT_SRC + "junk\n")


def test_parse_missing_elements():
    with pytest.raises(ParseError, match="missing 'elements:'"):
        parse_algebra("algebra\nend\n")


def test_parse_undef_in_total_table():
    src = FIG1_NCIS_SRC.replace("  1 1 c d 1\n  a 1 c d 1", "  1 1 - d 1\n  a 1 c d 1")
    with pytest.raises(ParseError, match="not allowed in total table"):
        parse_algebra(src)


def test_parse_comments_and_blank_lines(fig1):
    src = FIG1_NCIS_SRC.replace("algebra\n", "algebra   # the fig1 example\n\n")
    src = src.replace("op imp:", "# arrow block next\nop imp:")
    assert parse_algebra(src) == fig1


# --- serialization round-trips ----------------------------------------------

@pytest.mark.parametrize("src", [FIG1_ORDER_SRC, FIG1_NCIS_SRC, FIG2_NCIS_SRC,
                                 ONE_ELEMENT_SRC])
def test_serialize_parse_roundtrip(src):
    alg = parse_algebra(src)
    text = serialize_algebra(alg)
    again = parse_algebra(text)
    assert again == alg
    assert serialize_algebra(again) == text


# --- basic operations --------------------------------------------------------

def test_leq_examples(fig1):
    a, b, c = idx(fig1, "a", "b", "c")
    assert leq(fig1, a, b)
    assert not leq(fig1, a, c)
    assert all(leq(fig1, x, fig1.top) for x in range(fig1.n))


def test_join_examples(fig2):
    a, b, c = idx(fig2, "a", "b", "c")
    assert join(fig2, a, b) == fig2.top
    assert join(fig2, a, c) == c
    assert all(join(fig2, x, x) == x for x in range(fig2.n))


def test_common_lower_bounds_examples(fig1, fig2):
    a1, c1 = idx(fig1, "a", "c")
    assert common_lower_bounds(fig1, a1, c1) == frozenset()
    a2, b2, z2 = idx(fig2, "a", "b", "0")
    assert common_lower_bounds(fig2, a2, b2) == frozenset({z2})
    for x in range(fig1.n):
        clb = common_lower_bounds(fig1, x, x)
        assert x in clb
        assert clb == fig1.downsets[x]


def test_partial_meet_examples(fig1, fig2):
    a2, b2, c2, d2, z2 = idx(fig2, "a", "b", "c", "d", "0")
    assert partial_meet(fig2, a2, b2) == z2
    assert partial_meet(fig2, c2, d2) is None
    a1, d1 = idx(fig1, "a", "d")
    assert partial_meet(fig1, a1, d1) is None


def test_partial_meet_matches_oracle(fig1, fig2):
    for alg in (fig1, fig2):
        for x in range(alg.n):
            for y in range(alg.n):
                assert partial_meet(alg, x, y) == oracle_glb(alg.leq, x, y)


def test_section_examples(fig1, fig2):
    a1 = idx(fig1, "a")
    assert section(fig1, a1) == idx(fig1, "a", "b", "1")
    d2 = idx(fig2, "d")
    assert section(fig2, d2) == idx(fig2, "d", "1")
    assert section(fig1, fig1.top) == (fig1.top,)


def test_join_is_lub_against_oracle(fig1, fig2):
    for alg in (fig1, fig2):
        for x in range(alg.n):
            for y in range(alg.n):
                assert alg.join.values[x][y] == oracle_lub(alg.leq, x, y)


# --- join-semilattice validation ---------------------------------------------

def test_validate_jsl_passes(fig1, fig2, one_element):
    for alg in (fig1, fig2, one_element):
        assert validate_join_semilattice(alg).ok


def test_validate_jsl_three_chain():
    alg = parse_algebra("algebra\nelements: 0 a 1\norder:\n  0 < a\n  a < 1\nend\n")
    assert validate_join_semilattice(alg).ok


def test_validate_jsl_commutativity_failure():
    universe = Universe(("a", "b", "1"), 2)
    lq = ((True, False, True), (False, True, True), (False, False, True))
    jv = BinTable.from_rows([[0, 0, 2], [1, 1, 2], [2, 2, 2]], total=True)
    rep = validate_join_semilattice(Algebra(universe, lq, jv))
    assert not rep.ok
    assert rep.axiom == "join-commutative"
    assert rep.witness == ("a", "b")


def test_build_algebra_infers_tags(fig1_order):
    alg = build_algebra(["x", "1"], order_pairs=[(0, 1)])
    assert alg.class_tag == ClassTag.JSL
    assert fig1_order.class_tag == ClassTag.JSL


def test_universe_rejects_bad_labels():
    from ordalg import StructureError
    with pytest.raises(StructureError):
        Universe(("a", "a"), 0)
    with pytest.raises(StructureError):
        Universe(("-",), 0)
    with pytest.raises(StructureError):
        Universe(("",), 0)


def test_parse_non_associative_join():
    # three atoms below the top, with a v b = c but a v c = 1
    src = ("algebra\nelements: a b c 1\nop join:\n"
           "  a c 1 1\n  c b 1 1\n  1 1 c 1\n  1 1 1 1\nend\n")
    with pytest.raises(ParseError, match="join-associative"):
        parse_algebra(src)


def test_partial_meet_not_unique_is_an_error():
    # hand-built relation where p, q are common lower bounds of u, v without
    # a greatest one; only reachable through the raw constructor
    from ordalg import StructureError, partial_meet
    labels = ("p", "q", "u", "v", "1")
    lq = (
        (True, False, True, True, True),
        (False, True, True, True, True),
        (False, False, True, False, True),
        (False, False, False, True, True),
        (False, False, False, False, True),
    )
    jv = BinTable.from_rows([[0, 4, 2, 3, 4],
                             [4, 1, 2, 3, 4],
                             [2, 2, 2, 4, 4],
                             [3, 3, 4, 3, 4],
                             [4, 4, 4, 4, 4]], total=True)
    alg = Algebra(Universe(labels, 4), lq, jv)
    with pytest.raises(StructureError, match=r"meet not unique for \(u,v\)"):
        partial_meet(alg, 2, 3)
