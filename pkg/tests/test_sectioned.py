import pytest

from conftest import idx, labs
from oracles import oracle_pseudocomplement
from ordalg import (build_algebra, pseudocomplement_in_section, section,
                    section_report, section_shape_report, validate_sectioned)


@pytest.fixture(scope="module")
def m3():
    # diamond: three incomparable atoms between bottom and top
    return build_algebra(["0", "p", "q", "r", "1"],
                         order_pairs=[(0, 1), (0, 2), (0, 3),
                                      (1, 4), (2, 4), (3, 4)])


def test_pseudocomplement_fig2_examples(fig2):
    z, a, b = idx(fig2, "0", "a", "b")
    assert pseudocomplement_in_section(fig2, z, a) == b
    assert pseudocomplement_in_section(fig2, z, fig2.top) == z


def test_pseudocomplement_of_base_is_top(fig1, fig2):
    for alg in (fig1, fig2):
        for x in range(alg.n):
            assert pseudocomplement_in_section(alg, x, x) == alg.top


def test_pseudocomplement_matches_oracle(fig1, fig2):
    for alg in (fig1, fig2):
        for base in range(alg.n):
            for y in section(alg, base):
                assert pseudocomplement_in_section(alg, base, y) == \
                    oracle_pseudocomplement(alg.leq, base, y)


def test_pseudocomplement_precondition(fig1):
    a, c = idx(fig1, "a", "c")
    with pytest.raises(ValueError, match="does not lie below"):
        pseudocomplement_in_section(fig1, a, c)


def test_validate_sectioned_passes(fig1, fig2, one_element):
    for alg in (fig1, fig2, one_element):
        assert validate_sectioned(alg).ok


def test_validate_sectioned_m3_fails(m3):
    rep = validate_sectioned(m3)
    assert not rep.ok
    assert rep.axiom == "(b)"
    assert rep.witness == ("0", "p")
    # the oracle agrees that p has no pseudocomplement over base 0
    assert oracle_pseudocomplement(m3.leq, 0, 1) is None


def test_section_report(fig1, m3):
    a = idx(fig1, "a")
    rep = section_report(fig1, a)
    assert rep.is_lattice and rep.failure_witness is None
    assert dict(rep.pseudocomplements)[idx(fig1, "b")] == a
    bad = section_report(m3, 0)
    assert bad.is_lattice and bad.failure_witness == (0, 1)


def test_shape_fig2_base_bottom_is_pentagon(fig2):
    shape = section_shape_report(fig2, idx(fig2, "0"))
    assert not shape.modular
    assert not shape.distributive
    assert shape.witness_kind == "N5"
    assert labs(fig2, shape.witness) == ("0", "a", "c", "b", "1")


def test_shape_chains_are_distributive(fig1, fig2):
    shape = section_shape_report(fig1, idx(fig1, "a"))
    assert shape.distributive and shape.modular and shape.witness is None
    shape = section_shape_report(fig2, idx(fig2, "d"))
    assert shape.distributive and shape.modular


def test_shape_m3_is_modular_not_distributive(m3):
    shape = section_shape_report(m3, 0)
    assert shape.modular and not shape.distributive
    assert shape.witness_kind == "M3"
    assert labs(m3, shape.witness) == ("0", "p", "q", "r", "1")


def test_pseudocomplement_antitone(fig1, fig2):
    # base <= u <= v implies pc(v) <= pc(u)
    from ordalg import leq
    for alg in (fig1, fig2):
        for base in range(alg.n):
            sec = section(alg, base)
            for u in sec:
                for v in sec:
                    if not leq(alg, u, v):
                        continue
                    pu = pseudocomplement_in_section(alg, base, u)
                    pv = pseudocomplement_in_section(alg, base, v)
                    assert leq(alg, pv, pu)


def test_pseudocomplement_double_negation(fig1, fig2):
    from ordalg import leq
    for alg in (fig1, fig2):
        for base in range(alg.n):
            for y in section(alg, base):
                pc = pseudocomplement_in_section(alg, base, y)
                pcpc = pseudocomplement_in_section(alg, base, pc)
                assert leq(alg, y, pcpc)


def test_pseudocomplement_meet_law(fig1, fig2):
    from ordalg import partial_meet
    for alg in (fig1, fig2):
        for base in range(alg.n):
            for y in section(alg, base):
                pc = pseudocomplement_in_section(alg, base, y)
                assert partial_meet(alg, y, pc) == base
