from __future__ import annotations

import pytest

from helpers import exceptional, family, grassmannians, space
from schubert_rigidity.hasse import conjugate, diagram_automorphisms, dual, get_chss
from schubert_rigidity.partitions import Partition, cell_of_partition
from schubert_rigidity.rigidity import (
    check_h1,
    check_h2,
    closed_form_hplus,
    closed_form_variants,
    components,
    hplus_catalog,
    hplus_elements,
    verdict,
)
from schubert_rigidity.roots import add, sub
from schubert_rigidity.schubert import classify

CLASSICAL = (list(grassmannians(7)) + family("B", "1", range(2, 6)) + family("C", "n", range(3, 7))
             + family("D", "1", range(4, 7)) + family("D", "n", range(4, 8)))


def test_components_partition_each_grade():
    x = space("A6", 3)
    J = (1, 5)
    comps = components(x, J)
    union = 0
    for c in comps:
        assert union & c.members == 0
        union |= c.members
        assert c.members >> x.g1_index[c.highest] & 1
        assert c.members >> x.g1_index[c.lowest] & 1
    assert union == x.full_mask


@pytest.mark.parametrize("x", CLASSICAL, ids=lambda x: x.label)
def test_closed_forms_match_brute_force(x):
    for e in hplus_catalog(x):
        if e.verdict is None:
            continue
        variants = closed_form_variants(x, e.descriptor)
        assert variants["stated_list"] == e.verdict.h_plus
        if "orthogonal" in variants:
            assert variants["orthogonal"] == e.verdict.h_plus


def test_spin_section_statement_differs_only_on_the_known_class():
    # The statement "a = 0 => H+ iff J != {n-2}" also admits a = 0, n-1 in J, |J| = 2, where H1 fails.
    for x in family("D", "n", range(4, 9)):
        n = x.rank
        for e in hplus_catalog(x):
            if e.verdict is None:
                continue
            d = e.descriptor
            got = closed_form_variants(x, d)["case_analysis"]
            if got != e.verdict.h_plus:
                assert d.a == 0 and n - 1 in d.J and len(d.J) == 2 and got and not e.verdict.h1


def test_symplectic_section_statement_agrees():
    for x in family("C", "n", range(3, 8)):
        for e in hplus_catalog(x):
            if e.verdict is not None:
                assert closed_form_variants(x, e.descriptor)["case_analysis"] == e.verdict.h_plus


@pytest.mark.parametrize("x", CLASSICAL + exceptional(), ids=lambda x: x.label)
def test_hplus_closed_under_duality(x):
    hp = {e.element.delta_w for e in hplus_elements(x)}
    assert {dual(x, e.element).delta_w for e in hplus_elements(x)} == hp


@pytest.mark.parametrize("x", list(grassmannians(7)) + family("D", "n", range(4, 8)), ids=lambda x: x.label)
def test_hplus_closed_under_conjugation(x):
    for phi in diagram_automorphisms(x.rs):
        y = get_chss(x.lie_type, phi[x.node - 1])
        target = {e.element.delta_w for e in hplus_elements(y)}
        assert {conjugate(x, e.element, phi)[1].delta_w for e in hplus_elements(x)} == target


def test_odd_quadrics_have_no_hplus_cells():
    for x in family("B", "1", range(2, 7)):
        assert hplus_elements(x) == []


def test_negative_control_gr36():
    x = space("A5", 3)
    w = cell_of_partition(Partition.parse(3, 6, "2"))
    d = classify(x, w)
    assert d.key() == (1, (1, 4))
    assert not verdict(x, w, d).h_plus


@pytest.mark.parametrize("x,count", [(exceptional()[0], 6), (exceptional()[1], 12)], ids=["E6", "E7"])
def test_exceptional_counts(x, count):
    assert len(hplus_elements(x)) == count
    with pytest.raises(ValueError):
        closed_form_variants(x, hplus_elements(x)[0].descriptor)


def test_h1_witness_shape():
    # B3/P1 (a, J) = (1, {2}): H1 fails with a simple-root witness.
    x = space("B3", 1)
    e = next(e for e in hplus_catalog(x) if e.descriptor.key() == (1, (2,)))
    ok, wit = check_h1(x, e.element)
    assert not ok
    for beta, gamma in wit:
        assert sum(beta) == 1 and beta[1] == 1
        assert x.rs.is_root(add(gamma, beta)) and not x.rs.is_root(sub(gamma, beta))


def test_h2_trivial_on_smooth_cells():
    x = space("A6", 3)
    for e in hplus_catalog(x):
        if e.verdict is not None and e.descriptor.smooth:
            assert check_h2(x, e.element) == (True, ())


def test_improper_cells_rejected():
    x = space("A3", 2)
    point = hplus_catalog(x)[0].element
    with pytest.raises(ValueError):
        check_h1(x, point)
    with pytest.raises(ValueError):
        check_h2(x, point)
    with pytest.raises(ValueError):
        closed_form_variants(x, classify(x, point))


def test_closed_form_entry_point():
    x = space("C4", 4)
    for e in hplus_elements(x):
        assert closed_form_hplus(x, e.descriptor)
