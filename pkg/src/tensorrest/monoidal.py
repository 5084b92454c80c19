"""Monoidal data on a finite category, subunits and the semilattice they form.

Conventions: lam[A]: I(x)A -> A, rho[A]: A(x)I -> A,
alpha[A,B,C]: A(x)(B(x)C) -> (A(x)B)(x)C, sigma[A,B]: A(x)B -> B(x)A.

The tensor tables may be partial (some generators truncate products that
would leave the finite object set).  Every law is checked on the instances
where all the tensors involved are defined.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .fincat import FinCategory, LawReport, MalformedTables, MorId, ObjId, Violation, is_mono


class NotFirm(ValueError):
    pass


class NotBraided(ValueError):
    pass


@dataclass(frozen=True)
class MonoidalData:
    unit: ObjId
    tensor_obj: dict
    tensor_mor: dict
    lam: tuple
    rho: tuple
    alpha: dict
    sigma: Optional[dict] = None
    _cache: dict = field(init=False, default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "rho", tuple(self.rho))

    def obj(self, a: ObjId, b: ObjId) -> Optional[ObjId]:
        return self.tensor_obj.get((a, b))

    def mor(self, f: MorId, g: MorId) -> Optional[MorId]:
        return self.tensor_mor.get((f, g))

    @property
    def braided(self) -> bool:
        return self.sigma is not None

    def coherence_components(self) -> dict:
        out = {}
        for a, m in enumerate(self.lam):
            out[("lambda", (a,))] = m
        for a, m in enumerate(self.rho):
            out[("rho", (a,))] = m
        for k, m in self.alpha.items():
            out[("alpha", tuple(k))] = m
        for k, m in (self.sigma or {}).items():
            out[("sigma", tuple(k))] = m
        return out

    def is_strict(self, C: FinCategory) -> bool:
        """lambda, rho and alpha all have identity components."""
        return (all(C.is_identity(m) for m in self.lam)
                and all(C.is_identity(m) for m in self.rho)
                and all(C.is_identity(m) for m in self.alpha.values()))


def _cached(M: MonoidalData, C: FinCategory, key: str, fn):
    slot = M._cache.get(key)
    if slot is not None and slot[0] is C:
        return slot[1]
    val = fn()
    M._cache[key] = (C, val)
    return val


class _Ops:
    """Composite builders where None means 'undefined somewhere'."""

    def __init__(self, C: FinCategory, M: MonoidalData):
        self.C, self.M = C, M

    def c(self, *ms):
        if any(m is None for m in ms):
            return None
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.C.composition.get((g, out))
            if out is None:
                return None
        return out

    def t(self, f, g):
        if f is None or g is None:
            return None
        return self.M.tensor_mor.get((f, g))

    def ob(self, a, b):
        if a is None or b is None:
            return None
        return self.M.tensor_obj.get((a, b))

    def id(self, a):
        return None if a is None else self.C.identity[a]

    def inv(self, f):
        return None if f is None else self.C.inverse(f)

    def alpha(self, a, b, c):
        if None in (a, b, c):
            return None
        return self.M.alpha.get((a, b, c))

    def sigma(self, a, b):
        if a is None or b is None or self.M.sigma is None:
            return None
        return self.M.sigma.get((a, b))


def _validate_shape(C: FinCategory, M: MonoidalData):
    n = C.n_objects
    if not 0 <= M.unit < n:
        raise MalformedTables("unit out of range")
    if len(M.lam) != n or len(M.rho) != n:
        raise MalformedTables("lambda/rho must have one component per object")
    for a in C.objects:
        if M.obj(M.unit, a) is None or M.obj(a, M.unit) is None:
            raise MalformedTables(f"tensor with the unit undefined at object {a}")
    for (a, b), c in M.tensor_obj.items():
        if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
            raise MalformedTables("tensor_obj entry out of range")
    m = C.n_morphisms
    for (f, g), h in M.tensor_mor.items():
        if not (0 <= f < m and 0 <= g < m and 0 <= h < m):
            raise MalformedTables("tensor_mor entry out of range")
    comps = list(M.lam) + list(M.rho) + list(M.alpha.values()) + list((M.sigma or {}).values())
    for x in comps:
        if not 0 <= x < m:
            raise MalformedTables("coherence component out of range")


def check_monoidal_laws(C: FinCategory, M: MonoidalData) -> LawReport:
    """Bifunctoriality, naturality and coherence (triangle, pentagon, hexagons).

    Bifunctoriality is checked as functoriality in each variable separately
    plus the two-way factorisation of f(x)g, which together are equivalent
    to the full interchange law.  Naturality is likewise checked one
    variable at a time.
    """
    _validate_shape(C, M)
    o = _Ops(C, M)
    out: list[Violation] = []
    V = Violation

    # typing and definedness of the morphism tensor
    for f in C.morphisms:
        for g in C.morphisms:
            da = o.ob(C.dom[f], C.dom[g])
            cb = o.ob(C.cod[f], C.cod[g])
            h = o.t(f, g)
            if da is None or cb is None:
                if h is not None:
                    out.append(V("tensor-defined", (f, g), h, None))
                continue
            if h is None:
                out.append(V("tensor-missing", (f, g), None, None))
            elif C.dom[h] != da or C.cod[h] != cb:
                out.append(V("tensor-type", (f, g), h, None))
    if out:
        return LawReport(out)

    for a in C.objects:
        for b in C.objects:
            ab = o.ob(a, b)
            if ab is None:
                continue
            lhs = o.t(C.identity[a], C.identity[b])
            if lhs != C.identity[ab]:
                out.append(V("tensor-identity", (C.identity[a], C.identity[b]), lhs, C.identity[ab]))

    for g, f in C.composable_pairs():
        gf = C.composition[(g, f)]
        for x in C.objects:
            i = C.identity[x]
            lhs, rhs = o.t(gf, i), o.c(o.t(g, i), o.t(f, i))
            if lhs is not None and rhs is not None and lhs != rhs:
                out.append(V("tensor-functor-left", (g, f, i), lhs, rhs))
            lhs, rhs = o.t(i, gf), o.c(o.t(i, g), o.t(i, f))
            if lhs is not None and rhs is not None and lhs != rhs:
                out.append(V("tensor-functor-right", (i, g, f), lhs, rhs))

    for (f, g), h in M.tensor_mor.items():
        ia, ib = C.identity[C.dom[f]], C.identity[C.dom[g]]
        ja, jb = C.identity[C.cod[f]], C.identity[C.cod[g]]
        r1 = o.c(o.t(f, jb), o.t(ia, g))
        r2 = o.c(o.t(ja, g), o.t(f, ib))
        if r1 is not None and r1 != h:
            out.append(V("interchange", (f, g), h, r1))
        if r2 is not None and r2 != h:
            out.append(V("interchange", (f, g), h, r2))

    # coherence components: typing and invertibility
    I = M.unit
    def expect(name, key, m, d, c):
        if m is None:
            out.append(V(name + "-missing", key, None, None))
            return
        if C.dom[m] != d or C.cod[m] != c:
            out.append(V(name + "-type", key, m, None))
        elif C.inverse(m) is None:
            out.append(V(name + "-iso", key, m, None))

    for a in C.objects:
        expect("lambda", (a,), M.lam[a], o.ob(I, a), a)
        expect("rho", (a,), M.rho[a], o.ob(a, I), a)
    for a, b, c in product(C.objects, repeat=3):
        src, tgt = o.ob(a, o.ob(b, c)), o.ob(o.ob(a, b), c)
        if src is None or tgt is None:
            if (a, b, c) in M.alpha and src is None:
                out.append(V("alpha-defined", (a, b, c), M.alpha[(a, b, c)], None))
            continue
        expect("alpha", (a, b, c), M.alpha.get((a, b, c)), src, tgt)
    if M.sigma is not None:
        for a, b in product(C.objects, repeat=2):
            src, tgt = o.ob(a, b), o.ob(b, a)
            if src is None or tgt is None:
                continue
            expect("sigma", (a, b), M.sigma.get((a, b)), src, tgt)
    if out:
        return LawReport(out)

    # naturality
    for f in C.morphisms:
        a, b = C.dom[f], C.cod[f]
        lhs = o.c(M.lam[b], o.t(C.identity[I], f))
        rhs = o.c(f, M.lam[a])
        if lhs != rhs:
            out.append(V("lambda-natural", (f,), lhs, rhs))
        lhs = o.c(M.rho[b], o.t(f, C.identity[I]))
        rhs = o.c(f, M.rho[a])
        if lhs != rhs:
            out.append(V("rho-natural", (f,), lhs, rhs))
        for x, y in product(C.objects, repeat=2):
            ix, iy = C.identity[x], C.identity[y]
            # alpha natural in each variable
            for pos in range(3):
                if pos == 0:
                    trip_a, trip_b, fs = (a, x, y), (b, x, y), (f, ix, iy)
                elif pos == 1:
                    trip_a, trip_b, fs = (x, a, y), (x, b, y), (ix, f, iy)
                else:
                    trip_a, trip_b, fs = (x, y, a), (x, y, b), (ix, iy, f)
                left = o.t(fs[0], o.t(fs[1], fs[2]))
                right = o.t(o.t(fs[0], fs[1]), fs[2])
                al_a, al_b = o.alpha(*trip_a), o.alpha(*trip_b)
                lhs, rhs = o.c(al_b, left), o.c(right, al_a)
                if lhs is None or rhs is None:
                    continue
                if lhs != rhs:
                    out.append(V("alpha-natural", (f, x, y, pos), lhs, rhs))
        if M.sigma is not None:
            for x in C.objects:
                ix = C.identity[x]
                lhs = o.c(o.sigma(b, x), o.t(f, ix))
                rhs = o.c(o.t(ix, f), o.sigma(a, x))
                if lhs is not None and rhs is not None and lhs != rhs:
                    out.append(V("sigma-natural", (f, x, 0), lhs, rhs))
                lhs = o.c(o.sigma(x, b), o.t(ix, f))
                rhs = o.c(o.t(f, ix), o.sigma(x, a))
                if lhs is not None and rhs is not None and lhs != rhs:
                    out.append(V("sigma-natural", (f, x, 1), lhs, rhs))

    # triangle
    for a, b in product(C.objects, repeat=2):
        lhs = o.c(o.t(M.rho[a], o.id(b)), o.alpha(a, I, b))
        rhs = o.t(o.id(a), M.lam[b])
        if lhs is not None and rhs is not None and lhs != rhs:
            out.append(V("triangle", (a, b), lhs, rhs))

    # pentagon
    for a, b, c, d in product(C.objects, repeat=4):
        lhs = o.c(o.alpha(o.ob(a, b), c, d), o.alpha(a, b, o.ob(c, d)))
        rhs = o.c(o.t(o.alpha(a, b, c), o.id(d)), o.alpha(a, o.ob(b, c), d),
                  o.t(o.id(a), o.alpha(b, c, d)))
        if lhs is not None and rhs is not None and lhs != rhs:
            out.append(V("pentagon", (a, b, c, d), lhs, rhs))

    # hexagons
    if M.sigma is not None:
        for a, b, c in product(C.objects, repeat=3):
            lhs = o.c(o.inv(o.alpha(b, c, a)), o.sigma(a, o.ob(b, c)), o.inv(o.alpha(a, b, c)))
            rhs = o.c(o.t(o.id(b), o.sigma(a, c)), o.inv(o.alpha(b, a, c)),
                      o.t(o.sigma(a, b), o.id(c)))
            if lhs is not None and rhs is not None and lhs != rhs:
                out.append(V("hexagon-1", (a, b, c), lhs, rhs))
            lhs = o.c(o.alpha(c, a, b), o.sigma(o.ob(a, b), c), o.alpha(a, b, c))
            rhs = o.c(o.t(o.sigma(a, c), o.id(b)), o.alpha(a, c, b), o.t(o.id(a), o.sigma(b, c)))
            if lhs is not None and rhs is not None and lhs != rhs:
                out.append(V("hexagon-2", (a, b, c), lhs, rhs))
    return LawReport(out)


def check_interchange_exhaustive(C: FinCategory, M: MonoidalData) -> LawReport:
    """(g'f')(x)(gf) = (g'(x)g)(f'(x)f) over all pairs of composable pairs."""
    o = _Ops(C, M)
    pairs = list(C.composable_pairs())
    out = []
    for g1, f1 in pairs:
        for g2, f2 in pairs:
            lhs = o.t(C.composition[(g1, f1)], C.composition[(g2, f2)])
            rhs = o.c(o.t(g1, g2), o.t(f1, f2))
            if lhs is not None and rhs is not None and lhs != rhs:
                out.append(Violation("interchange", (g1, f1, g2, f2), lhs, rhs))
    return LawReport(out)


# ------------------------------------------------------------------ subunits


@dataclass(frozen=True)
class Subunit:
    """Canonical representative of a subunit class: mono S -> I and its split S -> S(x)S."""

    mono: MorId
    obj: ObjId
    split: MorId


def _subunit_condition(C: FinCategory, M: MonoidalData, s: MorId) -> bool:
    h = M.mor(s, C.identity[C.dom[s]])
    return h is not None and C.inverse(h) is not None


def enumerate_subunits(C: FinCategory, M: MonoidalData) -> list[Subunit]:
    """One canonical subunit per class, in increasing MorId order."""
    return _cached(M, C, "subunits", lambda: _enumerate_subunits(C, M))


def _enumerate_subunits(C, M):
    monos = [s for s in C.into(M.unit) if is_mono(C, s) and _subunit_condition(C, M, s)]
    seen: set[MorId] = set()
    out = []
    for s in monos:  # increasing MorId, so the first of each class is canonical
        if s in seen:
            continue
        a = C.dom[s]
        for x in C.objects:
            for m in C.hom(x, a):
                if C.inverse(m) is not None:
                    seen.add(C.compose(s, m))
        S = C.dom[s]
        collapse = C.compose(M.rho[S], M.mor(C.identity[S], s))
        split = C.inverse(collapse)
        if split is None:
            raise MalformedTables(f"subunit {s}: S(x)s is not invertible")
        out.append(Subunit(s, S, split))
    return out


def canonical_subunit(C: FinCategory, M: MonoidalData, mono: MorId) -> Optional[tuple[Subunit, MorId]]:
    """(canonical u, iso m) with mono == u after m, or None if mono is no subunit."""
    d = C.dom[mono]
    for u in enumerate_subunits(C, M):
        for m in C.hom(d, u.obj):
            if C.compose(u.mono, m) == mono and C.inverse(m) is not None:
                return u, m
    return None


def subunit_index(C: FinCategory, M: MonoidalData) -> dict:
    return _cached(M, C, "subunit_index",
                   lambda: {u.mono: i for i, u in enumerate(enumerate_subunits(C, M))})


def check_lemma_subunit_swap(C: FinCategory, M: MonoidalData) -> LawReport:
    """For each subunit s: lambda_S (s(x)S) == rho_S (S(x)s)."""
    out = []
    for u in enumerate_subunits(C, M):
        S, i = u.obj, C.identity[u.obj]
        lhs = C.compose(M.lam[S], M.mor(u.mono, i))
        rhs = C.compose(M.rho[S], M.mor(i, u.mono))
        if lhs != rhs:
            out.append(Violation("subunit-swap", (u.mono,), lhs, rhs))
    return LawReport(out)


def firm_violations(C: FinCategory, M: MonoidalData) -> LawReport:
    if M.sigma is None:
        raise NotBraided("firmness is only defined here for braided data")
    subs = enumerate_subunits(C, M)
    out = []
    for s in subs:
        for t in subs:
            h = M.mor(s.mono, C.identity[t.obj])
            if h is None or not is_mono(C, h):
                out.append(Violation("firm", (s.mono, t.mono), h, None))
    return LawReport(out)


def is_firm(C: FinCategory, M: MonoidalData) -> bool:
    return _cached(M, C, "firm", lambda: firm_violations(C, M).ok)


def subunit_meet(C: FinCategory, M: MonoidalData, s: Subunit, t: Subunit) -> Subunit:
    if not is_firm(C, M):
        raise NotFirm("subunit meets need a firm category")
    m = C.compose(M.lam[M.unit], M.mor(s.mono, t.mono))
    found = canonical_subunit(C, M, m)
    if found is None:
        raise NotFirm(f"meet of {s.mono} and {t.mono} is not a subunit")
    return found[0]


def subunit_leq(C: FinCategory, M: MonoidalData, s: Subunit, t: Subunit) -> bool:
    return any(C.compose(t.mono, m) == s.mono for m in C.hom(s.obj, t.obj))


def top_subunit(C: FinCategory, M: MonoidalData) -> Subunit:
    return canonical_subunit(C, M, C.identity[M.unit])[0]


# --------------------------------------------------------------- semilattices


@dataclass(frozen=True)
class Semilattice:
    """A finite meet-semilattice with top: labels plus a meet table."""

    labels: tuple
    meet: tuple
    top: int

    @property
    def size(self) -> int:
        return len(self.labels)

    def leq(self, i: int, j: int) -> bool:
        return self.meet[i][j] == i

    def index(self, label) -> int:
        return self.labels.index(label)


def check_semilattice_laws(L: Semilattice) -> LawReport:
    n, out = L.size, []
    r = range(n)
    for i in r:
        if L.meet[i][i] != i:
            out.append(Violation("idempotent", (i,), L.meet[i][i], i))
        if L.meet[i][L.top] != i:
            out.append(Violation("top", (i,), L.meet[i][L.top], i))
        for j in r:
            if L.meet[i][j] != L.meet[j][i]:
                out.append(Violation("commutative", (i, j), L.meet[i][j], L.meet[j][i]))
            for k in r:
                a, b = L.meet[L.meet[i][j]][k], L.meet[i][L.meet[j][k]]
                if a != b:
                    out.append(Violation("associative", (i, j, k), a, b))
    return LawReport(out)


def semilattice_isomorphism(L1: Semilattice, L2: Semilattice) -> Optional[tuple]:
    """A meet- and top-preserving bijection as a tuple, or None (backtracking)."""
    n = L1.size
    if n != L2.size:
        return None
    down1 = [sum(L1.leq(j, i) for j in range(n)) for i in range(n)]
    down2 = [sum(L2.leq(j, i) for j in range(n)) for i in range(n)]
    if sorted(down1) != sorted(down2):
        return None
    order = sorted(range(n), key=lambda i: (down1[i], i))
    img = [-1] * n
    used = [False] * n

    def consistent(i):
        for j in range(n):
            if img[j] < 0:
                continue
            m = L1.meet[i][j]
            if img[m] >= 0 and img[m] != L2.meet[img[i]][img[j]]:
                return False
        return True

    def go(k):
        if k == n:
            if img[L1.top] != L2.top:
                return False
            return all(img[L1.meet[i][j]] == L2.meet[img[i]][img[j]]
                       for i in range(n) for j in range(n))
        i = order[k]
        for c in range(n):
            if used[c] or down2[c] != down1[i]:
                continue
            img[i], used[c] = c, True
            if consistent(i) and go(k + 1):
                return True
            img[i], used[c] = -1, False
        return False

    return tuple(img) if go(0) else None


def isub_semilattice(C: FinCategory, M: MonoidalData) -> Semilattice:
    subs = enumerate_subunits(C, M)
    idx = {u.mono: i for i, u in enumerate(subs)}
    meet = tuple(tuple(idx[subunit_meet(C, M, s, t).mono] for t in subs) for s in subs)
    return Semilattice(tuple(u.mono for u in subs), meet, idx[top_subunit(C, M).mono])


# ------------------------------------------------------ restricting along subunits


def _collapse(C: FinCategory, M: MonoidalData, b: ObjId, s: Subunit) -> Optional[MorId]:
    """rho_B after (B (x) s) : B(x)S -> B."""
    h = M.mor(C.identity[b], s.mono)
    if h is None:
        return None
    return C.compose(M.rho[b], h)


def tensor_restricts(C: FinCategory, M: MonoidalData, f: MorId, s: Subunit) -> Optional[MorId]:
    """A map g: A -> B(x)S with collapse after g == f, or None."""
    b = C.cod[f]
    bs = M.obj(b, s.obj)
    r = _collapse(C, M, b, s)
    if bs is None or r is None:
        return None
    for g in C.hom(C.dom[f], bs):
        if C.compose(r, g) == f:
            return g
    return None


def identity_restricts(C: FinCategory, M: MonoidalData, a: ObjId, s: Subunit) -> bool:
    r = _collapse(C, M, a, s)
    return r is not None and C.inverse(r) is not None


def is_tensor_total(C: FinCategory, M: MonoidalData, f: MorId) -> bool:
    a = C.dom[f]
    for s in enumerate_subunits(C, M):
        if tensor_restricts(C, M, f, s) is not None and not identity_restricts(C, M, a, s):
            return False
    return True


def check_duality(C: FinCategory, M: MonoidalData, a: ObjId, a_star: ObjId) -> Optional[tuple[MorId, MorId]]:
    """(unit map, counit map) satisfying both snake equations, or None."""
    o = _Ops(C, M)
    I = M.unit
    sa, as_ = o.ob(a_star, a), o.ob(a, a_star)
    if sa is None or as_ is None:
        return None
    ia, ib = C.identity[a], C.identity[a_star]
    for eta in C.hom(I, sa):
        for eps in C.hom(as_, I):
            snake1 = o.c(M.lam[a], o.t(eps, ia), o.alpha(a, a_star, a), o.t(ia, eta),
                         o.inv(M.rho[a]))
            if snake1 != ia:
                continue
            snake2 = o.c(M.rho[a_star], o.t(ib, eps), o.inv(o.alpha(a_star, a, a_star)),
                         o.t(eta, ib), o.inv(M.lam[a_star]))
            if snake2 == ib:
                return eta, eps
    return None

