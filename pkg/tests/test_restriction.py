import pytest

from tensorrest import examples as ex
from tensorrest.monoidal import semilattice_isomorphism
from tensorrest.restriction import (RestrictionData, check_BR_axioms, check_CR_axioms,
                                    check_monoidal_restriction, check_R_axioms, check_RR_axioms,
                                    check_restriction_lemmas, check_scalar_lemmas,
                                    is_inverse_category, is_restriction_total,
                                    restriction_idempotents, restriction_inverse, scalar_mult,
                                    total_subcategory, trivial_restriction)
from tensorrest.fincat import check_category_laws
from tensorrest.monoidal import check_monoidal_laws
from tensorrest.sconstr import PrerequisiteFailed, derived_range_from_birestriction

from conftest import scon

LABELS = ex.finpar_labels(2)


def mor(values_dom_cod):
    return LABELS.index(values_dom_cod)


def test_depressing_downsets_is_a_restriction_category():
    for name in ("chain3", "diamond", "bool2"):
        C, M, R = ex.depressing_downsets(ex.named_semilattice(name))
        assert check_R_axioms(C, R).ok
        assert check_monoidal_restriction(C, M, R).ok
        assert check_restriction_lemmas(C, R).ok


def test_finpar_restriction_and_range():
    C, M, R, K = ex.finpar(2)
    assert check_R_axioms(C, R).ok
    assert check_RR_axioms(C, R, K).ok
    assert check_monoidal_restriction(C, M, R).ok
    cr = check_CR_axioms(C, K)
    assert cr.axioms() == {"CR4"}
    assert check_restriction_lemmas(C, R).ok


def test_finpar_restriction_of_a_partial_map():
    C, M, R, K = ex.finpar(2)
    f = mor((2, 2, (1, -1)))  # defined only at the first element
    assert R.bar[f] == mor((2, 2, (0, -1)))
    assert K.hat[f] == mor((2, 2, (-1, 1)))


def test_r1_mutation_is_caught():
    C, M, R, K = ex.finpar(2)
    f = mor((2, 2, (1, -1)))
    bar = list(R.bar)
    bar[f] = mor((2, 2, (-1, -1)))  # too small: f after it is nowhere defined
    rep = check_R_axioms(C, RestrictionData(bar))
    assert "R1" in rep.axioms()
    assert [v.morphisms for v in rep.by_axiom("R1")] == [(f,)]


def test_restriction_idempotents_of_finpar_are_subsets():
    C, M, R, K = ex.finpar(2)
    O = restriction_idempotents(C, R, 2)
    assert O.size == 4
    assert O.labels[O.top] == C.identity[2]


def test_total_subcategory_of_finpar_is_finset():
    C, M, R, K = ex.finpar(2)
    T = total_subcategory(C, R, M)
    D, DM = ex.finset_monoidal(2)
    assert T.category.n_morphisms == D.n_morphisms
    assert check_category_laws(T.category).ok
    assert check_monoidal_laws(T.category, T.monoidal).ok
    assert all(is_restriction_total(C, R, f) for f in T.embedding)


def test_restriction_inverse_in_s_of_three_chain():
    S = scon("chain3")
    X, R = S.carrier, S.restriction
    # [a, id_a] : 1 -> a and [a, a -> 1] : a -> 1
    a = 1
    mid = next(i for i, u in enumerate(S.subunits) if u.obj == a)
    C = S.base
    f = S.index[(mid, C.identity[a], 2)]
    g = S.index[(mid, C.hom(a, 2)[0], a)]
    assert restriction_inverse(X, R, f) == g
    assert restriction_inverse(X, R, g) == f
    assert not is_inverse_category(X, R)


def test_scalar_action_in_s_of_three_chain():
    S = scon("chain3")
    X, XM, R = S.carrier, S.monoidal, S.restriction
    C = S.base
    mid = next(i for i, u in enumerate(S.subunits) if u.obj == 1)
    e_a = S.index[(mid, C.hom(1, 2)[0], 2)]  # scalar witnessed by a
    assert R.bar[e_a] == e_a
    assert scalar_mult(X, XM, e_a, X.identity[2]) == e_a
    assert check_scalar_lemmas(X, XM, R).ok


def test_trivial_restriction_is_lawful():
    C, M = ex.from_semilattice(ex.chain(3))
    R = trivial_restriction(C)
    assert check_R_axioms(C, R).ok and check_monoidal_restriction(C, M, R).ok
    assert restriction_idempotents(C, R, 0).size == 1


def test_birestriction_gives_range():
    S = scon("chain3")
    X, R, K = S.carrier, S.restriction, S.corestriction
    assert check_BR_axioms(X, R, K).ok
    assert derived_range_from_birestriction(X, R, K) == K
    C, M, PR, PK = ex.finpar(2)
    with pytest.raises(PrerequisiteFailed) as err:
        derived_range_from_birestriction(C, PR, PK)
    assert err.value.suite == "CR"


def test_o_of_s_objects_matches_isub():
    S = scon("finset2")
    X, R = S.carrier, S.restriction
    for a in X.objects:
        O = restriction_idempotents(X, R, a)
        assert O.size == len(S.subunits)
    assert semilattice_isomorphism(restriction_idempotents(X, R, 2), ex.chain(2)) is not None
