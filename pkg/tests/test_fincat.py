import random

import pytest
from hypothesis import given, strategies as st

from tensorrest.examples import chain, finpar, from_semilattice
from tensorrest.fincat import (FinCategory, Functor, MalformedTables, SearchBudgetExceeded,
                               Structure, StructureFlags, check_category_laws, check_functor,
                               find_isomorphism, identity_functor, is_epi, is_iso, is_mono)
from tensorrest.restriction import RestrictionData

from conftest import scon


def arrow():
    # 0 --f--> 1 with identities 0 and 1
    return FinCategory(2, [0, 1, 0], [0, 1, 1], [0, 1],
                       {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2})


def broken_associativity():
    # f: 0->1, g: 1->2, h: 2->3, gf, hg and two parallel maps u, v: 0->3
    ids = [0, 1, 2, 3]
    f, g, h, hg, gf, u, v = 4, 5, 6, 7, 8, 9, 10
    dom = [0, 1, 2, 3, 0, 1, 2, 1, 0, 0, 0]
    cod = [0, 1, 2, 3, 1, 2, 3, 3, 2, 3, 3]
    comp = {}
    for m in range(11):
        comp[(ids[cod[m]], m)] = m
        comp[(m, ids[dom[m]])] = m
    comp[(g, f)] = gf
    comp[(h, g)] = hg
    comp[(h, gf)] = u
    comp[(hg, f)] = v
    return FinCategory(4, dom, cod, ids, comp)


def test_terminal_and_arrow_are_categories():
    C = FinCategory(1, [0], [0], [0], {(0, 0): 0})
    assert check_category_laws(C).ok
    assert check_category_laws(arrow()).ok


def test_single_associativity_failure_is_reported_once():
    rep = check_category_laws(broken_associativity())
    assert len(rep) == 1
    v = rep.violations[0]
    assert v.axiom == "associativity" and v.morphisms == (6, 5, 4)
    assert {v.lhs, v.rhs} == {9, 10}


def test_missing_and_badly_typed_composites():
    A = arrow()
    comp = dict(A.composition)
    del comp[(2, 0)]
    assert check_category_laws(FinCategory(2, A.dom, A.cod, A.identity, comp)).axioms() == {"compose-missing"}
    comp = dict(A.composition)
    comp[(2, 0)] = 0
    assert "compose-type" in check_category_laws(FinCategory(2, A.dom, A.cod, A.identity, comp)).axioms()


def test_malformed_tables():
    with pytest.raises(MalformedTables):
        FinCategory(1, [0, 1], [0, 0], [0], {})
    with pytest.raises(MalformedTables):
        FinCategory(1, [0], [0], [3], {})


def test_mono_epi_iso():
    A = arrow()
    assert is_mono(A, 2) and is_epi(A, 2) and is_iso(A, 2) is None
    C, M, R, K = finpar(2)
    assert all(is_iso(C, i) == i for i in C.identity)


def test_isomorphism_search_positive_and_negative():
    C, M = from_semilattice(chain(3))
    F, G = find_isomorphism(C, C)
    assert check_functor(F).ok and F.then(G).mor_map == tuple(C.morphisms)
    D, _ = from_semilattice(chain(2))
    assert find_isomorphism(C, D) is None
    S = scon("chain3")
    assert find_isomorphism(S.carrier, S.carrier, node_limit=10**6) is not None


def test_isomorphism_search_budget():
    S = scon("bool2")
    with pytest.raises(SearchBudgetExceeded):
        find_isomorphism(S.carrier, S.carrier, node_limit=3)


def test_structure_flags_require_structure():
    C, M = from_semilattice(chain(2))
    with pytest.raises(ValueError):
        find_isomorphism(C, C, StructureFlags(restriction=True))


def test_restriction_preservation_distinguishes():
    # same underlying category, different restriction structures
    C, M = from_semilattice(chain(1))
    X = Structure(C, restriction=RestrictionData((0,)))
    assert find_isomorphism(X, X, StructureFlags(restriction=True)) is not None


def _permuted(C: FinCategory, rng: random.Random):
    op = list(C.objects)
    rng.shuffle(op)
    mp = list(C.morphisms)
    rng.shuffle(mp)
    dom = [0] * C.n_morphisms
    cod = [0] * C.n_morphisms
    for f in C.morphisms:
        dom[mp[f]] = op[C.dom[f]]
        cod[mp[f]] = op[C.cod[f]]
    ids = [0] * C.n_objects
    for a in C.objects:
        ids[op[a]] = mp[C.identity[a]]
    comp = {(mp[g], mp[f]): mp[h] for (g, f), h in C.composition.items()}
    return FinCategory(C.n_objects, dom, cod, ids, comp), Functor(C, None, tuple(op), tuple(mp))


@given(st.sampled_from(["chain2", "chain3", "diamond", "finset2", "bool1"]), st.integers(0, 10**6))
def test_relabelled_category_is_isomorphic_and_reports_agree(name, seed):
    X = scon(name).carrier
    Y, _ = _permuted(X, random.Random(seed))
    assert check_category_laws(Y).ok
    found = find_isomorphism(X, Y)
    assert found is not None
    F, G = found
    assert check_functor(F).ok and check_functor(G).ok
    assert F.is_bijective() and G.then(F).mor_map == tuple(Y.morphisms)


def test_identity_functor():
    C, _ = from_semilattice(chain(3))
    assert check_functor(identity_functor(C)).ok
