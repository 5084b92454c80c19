import pytest

from tensorrest import examples as ex
from tensorrest.fincat import check_category_laws
from tensorrest.monoidal import check_monoidal_laws, check_semilattice_laws
from tensorrest.restriction import check_R_axioms, check_RR_axioms


@pytest.mark.parametrize("k,size", [(0, 2), (1, 3), (2, 6)])
def test_boolean_ideal_counts(k, size):
    L = ex.boolean_ideal_semilattice(k)
    assert L.size == size
    assert check_semilattice_laws(L).ok
    assert L.labels[0] == ()  # the empty downset is the bottom


def test_named_semilattices():
    assert ex.named_semilattice("chain4").size == 4
    assert ex.named_semilattice("diamond").size == 4
    with pytest.raises(ValueError):
        ex.named_semilattice("lattice")
    with pytest.raises(ValueError):
        ex.chain(0)


@pytest.mark.parametrize("name,morphisms", [("chain1", 1), ("chain3", 6), ("diamond", 9)])
def test_thin_categories(name, morphisms):
    C, M = ex.from_semilattice(ex.named_semilattice(name))
    assert C.n_morphisms == morphisms
    assert check_category_laws(C).ok and check_monoidal_laws(C, M).ok


def test_depressing_downsets_three_chain():
    C, M, R = ex.depressing_downsets(ex.chain(3))
    assert C.n_morphisms == 22
    assert check_R_axioms(C, R).ok and check_monoidal_laws(C, M).ok


def test_homset_top():
    L = ex.chain(3)
    assert ex.homset_top(L, 2, 0) == 0
    assert ex.homset_top(L, 0, 0) == 2
    assert ex.homset_top(L, 1, 1) == 2
    D = ex.diamond()
    # (1,0) meet s <= (0,1) forces s in {(0,0),(0,1)}; top of those is (0,1)
    assert ex.homset_top(D, 2, 1) == 1


@pytest.mark.parametrize("n,count", [(1, 3), (2, 11)])
def test_finset_sizes(n, count):
    C, M = ex.finset_monoidal(n)
    assert C.n_morphisms == count == sum(b ** a for a in range(n + 1) for b in range(n + 1))
    assert check_category_laws(C).ok and check_monoidal_laws(C, M).ok


def test_finpar_sizes_and_laws():
    C, M, R, K = ex.finpar(2)
    # sum over a, b <= 2 of (b + 1) ** a
    assert C.n_morphisms == sum((b + 1) ** a for a in range(3) for b in range(3))
    assert check_category_laws(C).ok and check_monoidal_laws(C, M).ok
    assert check_R_axioms(C, R).ok and check_RR_axioms(C, R, K).ok
    labels = ex.finpar_labels(2)
    assert len(labels) == C.n_morphisms
    for f, (a, b, vals) in enumerate(labels):
        assert (C.dom[f], C.cod[f]) == (a, b)


def test_finpar_budget():
    with pytest.raises(ex.SizeBudgetExceeded):
        ex.finpar(3, max_morphisms=100)
    with pytest.raises(ValueError):
        ex.finpar(0)


def test_cyclic_groups():
    for n in (1, 2, 5):
        C, M = ex.cyclic_group_category(n)
        assert C.n_morphisms == n
        assert all(C.inverse(f) is not None for f in C.morphisms)
        assert check_monoidal_laws(C, M).ok
    C, _ = ex.terminal_category()
    assert C.n_morphisms == 1
