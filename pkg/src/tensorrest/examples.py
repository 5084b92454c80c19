"""Generators for the bundled example categories.

Semilattices become thin monoidal categories with meet as tensor.  Finite
sets and partial functions use the skeletal encoding 0..n with the product
of i in A and j in B stored as i*|B| + j, which makes the associator and
unitors identities.  Products larger than ``n_max`` are left undefined.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Optional, Sequence

from .fincat import FinCategory, LawReport, Violation
from .monoidal import MonoidalData, Semilattice, check_semilattice_laws
from .restriction import CorestrictionData, RestrictionData

DEFAULT_MAX_MORPHISMS = 20_000


class SizeBudgetExceeded(ValueError):
    pass


# --------------------------------------------------------------- semilattices


def chain(n: int) -> Semilattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    if n < 1:
        raise ValueError("a chain needs at least one element")
    r = range(n)
    return Semilattice(tuple(r), tuple(tuple(min(i, j) for j in r) for i in r), n - 1)


def diamond() -> Semilattice:
    """The product of two 2-element chains."""
    els = ((0, 0), (0, 1), (1, 0), (1, 1))
    meet = tuple(tuple(els.index((min(a[0], b[0]), min(a[1], b[1]))) for b in els) for a in els)
    return Semilattice(els, meet, 3)


def boolean_ideal_semilattice(k: int) -> Semilattice:
    """Downward-closed subsets of the Boolean algebra on k atoms, meet = intersection."""
    if k < 0:
        raise ValueError("k must be non-negative")
    algebra = range(2 ** k)
    downsets = []
    for bits in range(2 ** len(algebra)):
        members = frozenset(x for x in algebra if bits >> x & 1)
        if all(y in members for x in members for y in algebra if y & x == y):
            downsets.append(members)
    downsets.sort(key=lambda d: (len(d), sorted(d)))
    idx = {d: i for i, d in enumerate(downsets)}
    meet = tuple(tuple(idx[a & b] for b in downsets) for a in downsets)
    labels = tuple(tuple(sorted(d)) for d in downsets)
    return Semilattice(labels, meet, idx[frozenset(algebra)])


def named_semilattice(name: str) -> Semilattice:
    """chainN, diamond or boolN."""
    if name.startswith("chain"):
        return chain(int(name[5:]))
    if name == "diamond":
        return diamond()
    if name.startswith("bool"):
        return boolean_ideal_semilattice(int(name[4:]))
    raise ValueError(f"unknown semilattice {name!r}")


def _check_semilattice(L: Semilattice):
    bad = check_semilattice_laws(L)
    if not bad.ok:
        raise ValueError(f"not a meet-semilattice with top: {bad.violations[0].describe()}")


def _strict_coherence(C: FinCategory, tensor_obj: dict, unit: int, braid: Optional[Callable]):
    ids = C.identity
    lam = tuple(ids[a] for a in C.objects)
    alpha = {}
    for a, b, c in product(C.objects, repeat=3):
        ab = tensor_obj.get((a, b))
        bc = tensor_obj.get((b, c))
        if ab is None or bc is None:
            continue
        x = tensor_obj.get((a, bc))
        if x is not None and tensor_obj.get((ab, c)) == x:
            alpha[(a, b, c)] = ids[x]
    sigma = {}
    for a, b in product(C.objects, repeat=2):
        if (a, b) in tensor_obj and (b, a) in tensor_obj:
            sigma[(a, b)] = braid(a, b)
    return lam, lam, alpha, sigma


def _category(objects: int, labels: Sequence[tuple], compose: Callable,
              identity: Callable) -> tuple[FinCategory, dict]:
    """Build tables from labelled morphisms (dom, cod, data)."""
    index = {lab: i for i, lab in enumerate(labels)}
    dom = [lab[0] for lab in labels]
    cod = [lab[1] for lab in labels]
    ids = [index[identity(a)] for a in range(objects)]
    by_dom: dict = {}
    for i, lab in enumerate(labels):
        by_dom.setdefault(lab[0], []).append(i)
    comp = {}
    for i, f in enumerate(labels):
        for j in by_dom.get(f[1], ()):
            comp[(j, i)] = index[compose(labels[j], f)]
    return FinCategory(objects, dom, cod, ids, comp), index


def from_semilattice(L: Semilattice) -> tuple[FinCategory, MonoidalData]:
    """Thin category of L with tensor = meet, unit = top, trivial coherence."""
    _check_semilattice(L)
    n = L.size
    labels = [(x, y, None) for x in range(n) for y in range(n) if L.leq(x, y)]
    C, index = _category(n, labels, lambda g, f: (f[0], g[1], None), lambda a: (a, a, None))
    tobj = {(a, b): L.meet[a][b] for a in range(n) for b in range(n)}
    tmor = {}
    for f, g in product(labels, repeat=2):
        tmor[(index[f], index[g])] = index[(L.meet[f[0]][g[0]], L.meet[f[1]][g[1]], None)]
    lam, rho, alpha, sigma = _strict_coherence(C, tobj, L.top, lambda a, b: C.identity[L.meet[a][b]])
    return C, MonoidalData(L.top, tobj, tmor, lam, rho, alpha, sigma)


def depressing_downsets(L: Semilattice) -> tuple[FinCategory, MonoidalData, RestrictionData]:
    """Morphisms x -> y are elements s with x meet s <= y.

    Composition is meet, identities are the top, and the restriction of
    s: x -> y is s: x -> x.
    """
    _check_semilattice(L)
    n, m, top = L.size, L.meet, L.top
    labels = [(x, y, s) for x in range(n) for y in range(n) for s in range(n) if L.leq(m[x][s], y)]
    C, index = _category(n, labels, lambda g, f: (f[0], g[1], m[f[2]][g[2]]), lambda a: (a, a, top))
    tobj = {(a, b): m[a][b] for a in range(n) for b in range(n)}
    tmor = {}
    for f, g in product(labels, repeat=2):
        tmor[(index[f], index[g])] = index[(m[f[0]][g[0]], m[f[1]][g[1]], m[f[2]][g[2]])]
    lam, rho, alpha, sigma = _strict_coherence(C, tobj, top, lambda a, b: C.identity[m[a][b]])
    bar = tuple(index[(x, x, s)] for (x, y, s) in labels)
    return C, MonoidalData(top, tobj, tmor, lam, rho, alpha, sigma), RestrictionData(bar)


def homset_top(L: Semilattice, x: int, y: int) -> Optional[int]:
    """Greatest s with x meet s <= y, if the hom-set x -> y has a top element."""
    cands = [s for s in range(L.size) if L.leq(L.meet[x][s], y)]
    for s in cands:
        if all(L.leq(t, s) for t in cands):
            return s
    return None


# ------------------------------------------------------------ sets and maps


def _functions(n_max: int, partial: bool, max_morphisms: int):
    labels = []
    lo = -1 if partial else 0
    for a in range(n_max + 1):
        for b in range(n_max + 1):
            count = (b - lo) ** a
            if len(labels) + count > max_morphisms:
                raise SizeBudgetExceeded(
                    f"more than {max_morphisms} morphisms for n_max={n_max}")
            for vals in product(range(lo, b), repeat=a):
                labels.append((a, b, vals))
    return labels


def _function_category(n_max: int, partial: bool, max_morphisms: int):
    if n_max < 1:
        raise ValueError("n_max must be at least 1 so the unit object exists")
    labels = _functions(n_max, partial, max_morphisms)

    def compose(g, f):
        return (f[0], g[1], tuple(-1 if v < 0 else g[2][v] for v in f[2]))

    C, index = _category(n_max + 1, labels, compose, lambda a: (a, a, tuple(range(a))))
    tobj = {(a, b): a * b for a in C.objects for b in C.objects if a * b <= n_max}
    tmor = {}
    for f, g in product(labels, repeat=2):
        if (f[0], g[0]) not in tobj or (f[1], g[1]) not in tobj:
            continue
        d = g[1]
        vals = tuple(-1 if u < 0 or v < 0 else u * d + v for u in f[2] for v in g[2])
        tmor[(index[f], index[g])] = index[(f[0] * g[0], f[1] * g[1], vals)]

    def braid(a, b):
        vals = [0] * (a * b)
        for i in range(a):
            for j in range(b):
                vals[i * b + j] = j * a + i
        return index[(a * b, a * b, tuple(vals))]

    lam, rho, alpha, sigma = _strict_coherence(C, tobj, 1, braid)
    return C, MonoidalData(1, tobj, tmor, lam, rho, alpha, sigma), labels, index


def finpar(n_max: int, max_morphisms: int = DEFAULT_MAX_MORPHISMS):
    """Partial functions between {0..k} for k <= n_max.

    Returns (category, monoidal data, restriction, range).  Restriction is the
    partial identity on the domain of definition, range the partial identity
    on the image.
    """
    C, M, labels, index = _function_category(n_max, True, max_morphisms)
    bar = tuple(index[(a, a, tuple(i if v >= 0 else -1 for i, v in enumerate(vals)))]
                for a, b, vals in labels)
    hat = tuple(index[(b, b, tuple(j if j in vals else -1 for j in range(b)))]
                for a, b, vals in labels)
    return C, M, RestrictionData(bar), CorestrictionData(hat)


def finset_monoidal(n_max: int = 2, max_morphisms: int = DEFAULT_MAX_MORPHISMS):
    """Total functions between {0..k} for k <= n_max, cartesian tensor."""
    C, M, _, _ = _function_category(n_max, False, max_morphisms)
    return C, M


def finpar_labels(n_max: int, partial: bool = True) -> list:
    """(dom, cod, values) for each MorId of finpar / finset_monoidal; -1 means undefined."""
    return _functions(n_max, partial, DEFAULT_MAX_MORPHISMS)


# ------------------------------------------------------------------- groups


def cyclic_group_category(n: int) -> tuple[FinCategory, MonoidalData]:
    """Z/n as a one-object category, tensor = addition, trivial braiding."""
    if n < 1:
        raise ValueError("n must be positive")
    comp = {(g, f): (g + f) % n for g in range(n) for f in range(n)}
    C = FinCategory(1, [0] * n, [0] * n, [0], comp)
    return C, MonoidalData(0, {(0, 0): 0}, dict(comp), (0,), (0,), {(0, 0, 0): 0}, {(0, 0): 0})


def terminal_category() -> tuple[FinCategory, MonoidalData]:
    return cyclic_group_category(1)


# ---------------------------------------------------------------- zero maps


def free_zero_check(n_max: int = 2, scat=None) -> LawReport:
    """In the S-construction on finite sets, maps witnessed by the empty subunit are zero maps.

    Checks that each [empty, !] absorbs composition on both sides and that the
    zero map is the only map from a nonempty set into the empty set.  ``scat`` may be passed to check a modified build.
    """
    from .sconstr import build_s_construction

    if scat is None:
        scat = build_s_construction(*finset_monoidal(n_max))
    X = scat.carrier
    empty = [i for i, u in enumerate(scat.subunits) if u.obj == 0]
    out = []
    if len(empty) != 1:
        return LawReport([Violation("zero-subunit", (), len(empty), 1)])
    zero = {}
    for m in X.morphisms:
        p = scat.pairs[m]
        if p.subunit == empty[0]:
            zero[(X.dom[m], X.cod[m])] = m
    for x in X.objects:
        # hom(0, 0) also holds the identity, so only nonempty domains see a single map
        expected = {X.identity[0], zero.get((0, 0))} if x == 0 else {zero.get((x, 0))}
        if set(X.hom(x, 0)) != expected:
            out.append(Violation("terminal", (x,), len(X.hom(x, 0)), len(expected)))
        for y in X.objects:
            if (x, y) not in zero:
                out.append(Violation("zero-missing", (x, y)))
    for (x, y), z in zero.items():
        for g in X.out_of(y):
            lhs, rhs = X.compose(g, z), zero.get((x, X.cod[g]))
            if lhs != rhs:
                out.append(Violation("zero-left", (g, z), lhs, rhs))
        for f in X.into(x):
            lhs, rhs = X.compose(z, f), zero.get((X.dom[f], y))
            if lhs != rhs:
                out.append(Violation("zero-right", (z, f), lhs, rhs))
    return LawReport(out)

