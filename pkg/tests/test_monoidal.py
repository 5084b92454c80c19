import dataclasses

import pytest
from hypothesis import given, strategies as st

from tensorrest import examples as ex
from tensorrest.fincat import LawReport
from tensorrest.monoidal import (NotBraided, canonical_subunit, check_duality,
                                 check_interchange_exhaustive, check_lemma_subunit_swap,
                                 check_monoidal_laws, check_semilattice_laws, enumerate_subunits,
                                 identity_restricts, is_firm, is_tensor_total, isub_semilattice,
                                 semilattice_isomorphism, subunit_leq, subunit_meet,
                                 tensor_restricts, top_subunit)

from conftest import SEMILATTICES, base


def test_bundled_bases_satisfy_monoidal_laws(base_name):
    C, M = base(base_name)
    assert check_monoidal_laws(C, M).ok


@pytest.mark.parametrize("name", ["chain3", "finset2", "Z3", "diamond"])
def test_reduced_interchange_agrees_with_exhaustive(name):
    C, M = base(name)
    assert check_interchange_exhaustive(C, M).ok


def test_finpar_satisfies_monoidal_laws():
    C, M, R, K = ex.finpar(2)
    assert check_monoidal_laws(C, M).ok


def test_wrong_braiding_breaks_a_hexagon():
    C, M = ex.cyclic_group_category(3)
    bad = dataclasses.replace(M, sigma={(0, 0): 1})
    rep = check_monoidal_laws(C, bad)
    assert {"hexagon-1", "hexagon-2"} <= rep.axioms()


def test_mutated_tensor_is_caught():
    C, M = base("finset2")
    tm = dict(M.tensor_mor)
    key = next(k for k, v in tm.items() if not C.is_identity(v) and C.dom[v] == C.cod[v])
    others = [h for h in C.hom(C.dom[tm[key]], C.cod[tm[key]]) if h != tm[key]]
    tm[key] = others[0]
    assert not check_monoidal_laws(C, dataclasses.replace(M, tensor_mor=tm)).ok


def test_non_strict_but_lawful_structure():
    # Z/2 with both unitors the generator: still a monoidal category
    C, M = ex.cyclic_group_category(2)
    twisted = dataclasses.replace(M, lam=(1,), rho=(1,))
    assert check_monoidal_laws(C, twisted).ok
    assert not twisted.is_strict(C) and M.is_strict(C)


@pytest.mark.parametrize("name,count", [("chain1", 1), ("chain3", 3), ("diamond", 4), ("bool2", 6),
                                        ("finset1", 2), ("finset2", 2), ("Z2", 1), ("Z3", 1)])
def test_subunit_counts(name, count):
    C, M = base(name)
    assert len(enumerate_subunits(C, M)) == count


def test_subunits_are_canonical_and_split(base_name):
    C, M = base(base_name)
    for u in enumerate_subunits(C, M):
        assert C.cod[u.mono] == M.unit and C.dom[u.mono] == u.obj
        found, m = canonical_subunit(C, M, u.mono)
        assert found == u and C.is_identity(m)
        collapse = C.compose(M.rho[u.obj], M.mor(C.identity[u.obj], u.mono))
        assert C.compose(collapse, u.split) == C.identity[u.obj]
        assert C.compose(u.split, collapse) == C.identity[C.dom[collapse]]
    assert check_lemma_subunit_swap(C, M).ok
    assert is_firm(C, M)


def test_isub_of_a_semilattice_is_the_semilattice():
    for name in SEMILATTICES:
        L = ex.named_semilattice(name)
        C, M = ex.from_semilattice(L)
        I = isub_semilattice(C, M)
        assert check_semilattice_laws(I).ok
        assert semilattice_isomorphism(I, L) is not None


def test_isub_of_finite_sets_is_two_element_chain():
    C, M = base("finset2")
    assert semilattice_isomorphism(isub_semilattice(C, M), ex.chain(2)) is not None


def test_meet_and_order_in_three_chain():
    C, M = base("chain3")
    bottom, mid, top = enumerate_subunits(C, M)
    assert top == top_subunit(C, M)
    assert subunit_meet(C, M, mid, top) == mid
    assert subunit_meet(C, M, bottom, mid) == bottom
    assert subunit_leq(C, M, bottom, mid) and not subunit_leq(C, M, top, mid)


def test_firmness_needs_a_braiding():
    C, M = base("chain2")
    with pytest.raises(NotBraided):
        is_firm(C, dataclasses.replace(M, sigma=None))


def test_tensor_restriction_in_three_chain():
    C, M = base("chain3")
    bottom, mid, top = enumerate_subunits(C, M)
    a_to_1 = C.hom(1, 2)[0]
    one = C.identity[2]
    assert tensor_restricts(C, M, a_to_1, mid) is not None
    assert tensor_restricts(C, M, one, mid) is None
    assert identity_restricts(C, M, 1, mid) and not identity_restricts(C, M, 2, mid)
    assert is_tensor_total(C, M, a_to_1) and is_tensor_total(C, M, one)


def test_duals():
    C, M = base("chain3")
    assert check_duality(C, M, 2, 2) is not None
    assert check_duality(C, M, 1, 1) is None
    C, M = base("Z3")
    assert check_duality(C, M, 0, 0) is not None


@st.composite
def intersection_closed_families(draw):
    sets = draw(st.lists(st.frozensets(st.integers(0, 3)), min_size=0, max_size=4))
    fam = {frozenset(range(4))} | set(sets)
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                if a & b not in fam:
                    fam.add(a & b)
                    changed = True
    els = sorted(fam, key=lambda s: (len(s), sorted(s)))
    idx = {s: i for i, s in enumerate(els)}
    return ex.Semilattice(tuple(els), tuple(tuple(idx[a & b] for b in els) for a in els),
                          idx[frozenset(range(4))])


@given(intersection_closed_families())
def test_random_semilattices_give_lawful_firm_bases(L):
    C, M = ex.from_semilattice(L)
    assert check_monoidal_laws(C, M).ok
    assert is_firm(C, M) and check_lemma_subunit_swap(C, M).ok
    assert semilattice_isomorphism(isub_semilattice(C, M), L) is not None


def test_report_is_sorted_and_deduplicated():
    from tensorrest.fincat import Violation
    rep = LawReport([Violation("b", (2,)), Violation("a", (1,), 3, None), Violation("b", (2,))])
    assert [v.axiom for v in rep] == ["a", "b"]
