"""The subunit construction on a firm strict braided monoidal category.

A morphism A -> B of the construction is a class of pairs (s, f) with s a
subunit S -> I and f: A(x)S -> B in the base, two pairs being identified when
their subunits differ by an isomorphism m and the base maps differ by A(x)m.
Each class is stored once, under the canonical subunit of its subobject class.

Also here: the tensor-restriction axioms and their witnesses, the
factorisation into a restriction isomorphism followed by a total map, and the
two round trips between a category and the construction applied to it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .fincat import (FinCategory, Functor, LawReport, MorId, ObjId, Structure, StructureFlags,
                     Violation, check_category_laws, structure_preserved)
from .monoidal import (MonoidalData, NotBraided, NotFirm, Subunit, canonical_subunit,
                       check_monoidal_laws, enumerate_subunits, firm_violations, is_firm,
                       is_tensor_total, subunit_leq)
from .restriction import (CorestrictionData, RestrictionData, TotalSubcategory, check_BR_axioms,
                          check_CR_axioms, check_monoidal_restriction, check_R_axioms,
                          check_RR_axioms, restriction_idempotents, restriction_inverse,
                          scalar_mult, total_subcategory)


class NotStrict(ValueError):
    pass


class NotASubunit(ValueError):
    pass


class PrerequisiteFailed(ValueError):
    def __init__(self, suite: str, report: LawReport):
        super().__init__(f"prerequisite suite {suite!r} failed with {len(report)} violations")
        self.suite = suite
        self.report = report


@dataclass(frozen=True)
class SPair:
    subunit: int  # index into SCategory.subunits
    under: MorId  # base map source(x)S -> target
    source: ObjId
    target: ObjId


@dataclass
class SCategory:
    base: FinCategory
    base_monoidal: MonoidalData
    subunits: list
    pairs: tuple
    index: dict
    carrier: FinCategory
    monoidal: MonoidalData
    restriction: RestrictionData
    corestriction: CorestrictionData
    top: int
    _canon: dict = field(default_factory=dict, repr=False)

    def structure(self, corestriction: bool = True) -> Structure:
        return Structure(self.carrier, self.monoidal, self.restriction,
                         self.corestriction if corestriction else None)

    def pair(self, m: MorId) -> SPair:
        return self.pairs[m]

    def canonical(self, mono: MorId, under: MorId, source: ObjId) -> MorId:
        return _canon_index(self.base, self.base_monoidal, self.subunits, self.index,
                            self._canon, mono, under, source)

    def lift(self, f: MorId) -> MorId:
        """The class of (id_I, f rho) for a base map f."""
        C, M = self.base, self.base_monoidal
        a = C.dom[f]
        return self.canonical(C.identity[M.unit], C.compose(f, M.rho[a]), a)

    def subunit_morphism(self, i: int) -> MorId:
        """The subunit of the construction corresponding to base subunit i."""
        return self.lift(self.subunits[i].mono)


def _canonical_or_raise(C, M, mono):
    found = canonical_subunit(C, M, mono)
    if found is None:
        raise NotASubunit(f"morphism {mono} is not a subunit")
    u, m = found
    return u, m, C.inverse(m)


def _canon_index(C, M, subunits, index, memo, mono, under, source):
    key = (mono, under, source)
    hit = memo.get(key)
    if hit is not None:
        return hit
    u, m, m_inv = _canonical_or_raise(C, M, mono)
    a_m_inv = M.mor(C.identity[source], m_inv)
    if a_m_inv is None:
        raise NotStrict(f"tensor of object {source} with a subunit is undefined")
    h = C.compose(under, a_m_inv)
    pos = subunits.index(u)
    out = index[(pos, h, source)]
    memo[key] = out
    return out


def canonicalize_pair(C: FinCategory, M: MonoidalData, mono: MorId, under: MorId,
                      source: ObjId) -> tuple[Subunit, MorId]:
    """Rewrite (mono, under) to (canonical subunit u, under after source(x)m^-1)."""
    u, m, m_inv = _canonical_or_raise(C, M, mono)
    return u, C.compose(under, M.mor(C.identity[source], m_inv))


def build_s_construction(C: FinCategory, M: MonoidalData) -> SCategory:
    if M.sigma is None:
        raise NotBraided("the construction needs a braiding")
    if not M.is_strict(C):
        raise NotStrict("lambda, rho and alpha must have identity components")
    if not is_firm(C, M):
        bad = firm_violations(C, M).violations
        raise NotFirm("not firm" + (f": {bad[0].describe()}" if bad else ""))
    subs = enumerate_subunits(C, M)
    I = M.unit

    pairs = []
    for i, u in enumerate(subs):
        for f in C.morphisms:
            for a in C.objects:
                if M.obj(a, u.obj) == C.dom[f]:
                    pairs.append(SPair(i, f, a, C.cod[f]))
    index = {(p.subunit, p.under, p.source): k for k, p in enumerate(pairs)}
    memo: dict = {}

    def canon(mono, under, source):
        return _canon_index(C, M, subs, index, memo, mono, under, source)

    meet_mono = [[C.compose(M.lam[I], M.mor(s.mono, t.mono)) for t in subs] for s in subs]
    top = subs.index(canonical_subunit(C, M, C.identity[I])[0])

    ident = [canon(C.identity[I], M.rho[a], a) for a in C.objects]
    by_source: dict = {}
    for k, p in enumerate(pairs):
        by_source.setdefault(p.source, []).append(k)
    comp = {}
    for k, p in enumerate(pairs):
        s = subs[p.subunit]
        for l in by_source.get(p.target, ()):
            q = pairs[l]
            t = subs[q.subunit]
            f_t = M.mor(p.under, C.identity[t.obj])
            comp[(l, k)] = canon(meet_mono[p.subunit][q.subunit], C.compose(q.under, f_t), p.source)

    bar, hat = [], []
    for p in pairs:
        u = subs[p.subunit]
        bar.append(index[(p.subunit, C.compose(M.rho[p.source], M.mor(C.identity[p.source], u.mono)),
                          p.source)])
        hat.append(index[(p.subunit, C.compose(M.rho[p.target], M.mor(C.identity[p.target], u.mono)),
                          p.target)])

    tmor = {}
    for k, p in enumerate(pairs):
        s = subs[p.subunit]
        for l, q in enumerate(pairs):
            ac = M.obj(p.source, q.source)
            bd = M.obj(p.target, q.target)
            if ac is None or bd is None:
                continue
            t = subs[q.subunit]
            swap = M.sigma.get((q.source, s.obj))
            fg = M.mor(p.under, q.under)
            if swap is None or fg is None:
                continue
            mid = M.mor(M.mor(C.identity[p.source], swap), C.identity[t.obj])
            if mid is None:
                continue
            tmor[(k, l)] = canon(meet_mono[p.subunit][q.subunit], C.compose(fg, mid), ac)

    carrier = FinCategory(C.n_objects, [p.source for p in pairs], [p.target for p in pairs],
                          ident, comp)

    def lift(f):
        return canon(C.identity[I], C.compose(f, M.rho[C.dom[f]]), C.dom[f])

    SM = MonoidalData(I, dict(M.tensor_obj), tmor,
                      tuple(lift(m) for m in M.lam), tuple(lift(m) for m in M.rho),
                      {k: lift(m) for k, m in M.alpha.items()},
                      {k: lift(m) for k, m in M.sigma.items()})
    return SCategory(C, M, list(subs), tuple(pairs), index, carrier, SM,
                     RestrictionData(bar), CorestrictionData(hat), top, memo)


# ------------------------------------------------------------------- points


def tensor_restriction_points(C: FinCategory, M: MonoidalData, R: RestrictionData,
                              x: ObjId) -> list[MorId]:
    """Maps d: I -> x that are restriction isos with tensor-total restriction inverse."""
    out = []
    for d in C.hom(M.unit, x):
        inv = restriction_inverse(C, R, d)
        if inv is not None and is_tensor_total(C, M, inv):
            out.append(d)
    return out


def restriction_subunit_points(C: FinCategory, M: MonoidalData, R: RestrictionData,
                               s: Subunit) -> list[MorId]:
    """Maps d: I -> S with rest(d) == s after d."""
    return [d for d in C.hom(M.unit, s.obj) if R.bar[d] == C.compose(s.mono, d)]


def _points_for_mono(C, M, R, mono):
    return [d for d in C.hom(M.unit, C.dom[mono]) if R.bar[d] == C.compose(mono, d)]


def _maximal(C, R, points):
    for d in points:
        if all(p == C.compose(d, R.bar[p]) for p in points):
            return d
    return None


def maximal_restriction_subunit_point(C: FinCategory, M: MonoidalData, R: RestrictionData,
                                      s: Subunit) -> Optional[MorId]:
    """The point d_s with d == d_s after rest(d) for every restriction-subunit point d."""
    return _maximal(C, R, restriction_subunit_points(C, M, R, s))


def check_point_lemmas(C: FinCategory, M: MonoidalData, R: RestrictionData) -> LawReport:
    """Properties of restriction-subunit points and their tensor products."""
    out = []
    I = M.unit
    lam_inv = C.inverse(M.lam[I])
    subs = enumerate_subunits(C, M)
    pts = {u.mono: restriction_subunit_points(C, M, R, u) for u in subs}
    maxi = {}
    for u in subs:
        for d in pts[u.mono]:
            want = C.compose(R.bar[d], u.mono)
            got = restriction_inverse(C, R, d)
            if got != want:
                out.append(Violation("point-restriction-inverse", (d,), got, want))
        m = _maximal(C, R, pts[u.mono])
        if m is None:
            out.append(Violation("point-maximal-exists", (u.mono,)))
        maxi[u.mono] = m
    for s, t in product(subs, repeat=2):
        mono = C.compose(M.lam[I], M.mor(s.mono, t.mono))
        for d in pts[s.mono]:
            for e in pts[t.mono]:
                p = C.compose(M.mor(d, e), lam_inv)
                if R.bar[p] != C.compose(mono, p):
                    out.append(Violation("point-tensor", (d, e), R.bar[p], C.compose(mono, p)))
        ds, dt = maxi[s.mono], maxi[t.mono]
        if ds is None or dt is None:
            continue
        p = C.compose(M.mor(ds, dt), lam_inv)
        if _maximal(C, R, _points_for_mono(C, M, R, mono)) != p:
            out.append(Violation("point-tensor-maximal", (ds, dt), p, None))
    return LawReport(out)


# ------------------------------------------------------------ TR axioms


@dataclass
class AxiomResult:
    violations: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class TRReport:
    results: dict

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results.values())

    @property
    def report(self) -> LawReport:
        return LawReport(v for r in self.results.values() for v in r.violations)

    def failed(self) -> list[str]:
        return [k for k, r in self.results.items() if not r.ok]

    def __getitem__(self, axiom: str) -> AxiomResult:
        return self.results[axiom]


def tr_prerequisites(C: FinCategory, M: MonoidalData, R: RestrictionData) -> list[tuple[str, LawReport]]:
    out = [("category", check_category_laws(C))]
    if not out[-1][1].ok:
        return out
    out.append(("monoidal", check_monoidal_laws(C, M)))
    out.append(("R", check_R_axioms(C, R)))
    if not out[-1][1].ok or not out[-2][1].ok:
        return out
    out.append(("monrest", check_monoidal_restriction(C, M, R)))
    if M.sigma is None:
        out.append(("firm", LawReport([Violation("braiding-missing", ())])))
    else:
        out.append(("firm", firm_violations(C, M)))
    return out


def _require_prerequisites(C, M, R):
    for suite, rep in tr_prerequisites(C, M, R):
        if not rep.ok:
            raise PrerequisiteFailed(suite, rep)


def check_TR_axioms(C: FinCategory, M: MonoidalData, R: RestrictionData) -> TRReport:
    """Check the seven tensor-restriction axioms, recording witnesses.

    Uniqueness of the scalar in the last axiom is checked among scalars whose
    restriction equals the restriction of the target point.
    """
    _require_prerequisites(C, M, R)
    I, bar, cp = M.unit, R.bar, C.compose
    subs = enumerate_subunits(C, M)
    res = {k: AxiomResult() for k in ("TR1", "TR2", "TR3", "TR4", "TR5", "TR6", "TR7")}
    points = {x: tensor_restriction_points(C, M, R, x) for x in C.objects}
    scalars = C.hom(I, I)
    o_i = [e for e in scalars if bar[e] == e]

    for e in o_i:
        wit = None
        for u in subs:
            for d in points[u.obj]:
                if cp(u.mono, d) == e:
                    wit = (e, u.mono, d)
                    break
            if wit:
                break
        if wit:
            res["TR1"].witnesses.append(wit)
        else:
            res["TR1"].violations.append(Violation("TR1", (e,)))

    for u in subs:
        ds = [d for d in points[u.obj] if cp(u.mono, d) == bar[d]]
        if ds:
            res["TR2"].witnesses.append((u.mono, ds[0]))
        else:
            res["TR2"].violations.append(Violation("TR2", (u.mono,)))

    for x in C.objects:
        ix = C.identity[x]
        action = {e: scalar_mult(C, M, e, ix) for e in o_i}
        for f in C.hom(x, x):
            if bar[f] != f:
                continue
            es = [e for e in o_i if action[e] == f]
            if len(es) == 1:
                res["TR3"].witnesses.append((f, es[0]))
            else:
                res["TR3"].violations.append(
                    Violation("TR3", (f,), es[0] if es else None, es[1] if len(es) > 1 else None))

    for f in C.morphisms:
        if not is_tensor_total(C, M, f):
            continue
        x = C.dom[f]
        cands = [g for g in C.hom(x, C.cod[f])
                 if bar[g] == C.identity[x] and cp(g, bar[f]) == f]
        if len(cands) == 1:
            res["TR4"].witnesses.append((f, cands[0]))
        else:
            res["TR4"].violations.append(
                Violation("TR4", (f,), cands[0] if cands else None,
                          cands[1] if len(cands) > 1 else None))

    for x in C.objects:
        for d in points[x]:
            for u in subs:
                for f in C.hom(I, u.obj):
                    sf = cp(u.mono, f)
                    for g in C.hom(x, I):
                        if cp(g, d) != sf:
                            continue
                        ms = [m for m in C.hom(x, u.obj) if cp(m, d) == f and cp(u.mono, m) == g]
                        if len(ms) == 1:
                            res["TR5"].witnesses.append((d, u.mono, f, g, ms[0]))
                        else:
                            res["TR5"].violations.append(
                                Violation("TR5", (d, u.mono, f, g), ms[0] if ms else None,
                                          ms[1] if len(ms) > 1 else None))

    lam_inv = C.inverse(M.lam[I])
    for x, y in product(C.objects, repeat=2):
        xy = M.obj(x, y)
        if xy is None:
            continue
        for d in points[x]:
            for e in points[y]:
                p = cp(M.mor(d, e), lam_inv)
                if p in points[xy]:
                    res["TR6"].witnesses.append((d, e, p))
                else:
                    res["TR6"].violations.append(Violation("TR6", (d, e), p, None))

    for x in C.objects:
        for d in points[x]:
            for d2 in points[x]:
                ms = [m for m in scalars if cp(d, m) == d2 and bar[m] == bar[d2]]
                if len(ms) == 1:
                    res["TR7"].witnesses.append((d, d2, ms[0]))
                else:
                    res["TR7"].violations.append(
                        Violation("TR7", (d, d2), ms[0] if ms else None,
                                  ms[1] if len(ms) > 1 else None))
    return TRReport(res)


@dataclass(frozen=True)
class TRWitness:
    scalar: MorId  # restriction idempotent scalar acting as rest(f)
    subunit: Subunit  # least subunit the scalar factors through
    point: MorId  # I -> S with subunit after point == scalar
    total_part: MorId  # total map X(x)S -> Y


def _ordered(seq, rng: Optional[random.Random]):
    seq = list(seq)
    if rng is not None:
        rng.shuffle(seq)
    return seq


def _unique(cands: list, what: str):
    if len(cands) != 1:
        raise ValueError(f"expected exactly one {what}, found {len(cands)}")
    return cands[0]


def tr_witnesses(C: FinCategory, M: MonoidalData, R: RestrictionData, f: MorId,
                 rng: Optional[random.Random] = None) -> TRWitness:
    """Decompose f as T(f) (X(x)d) rho^-1 with T(f) built from a total map.

    ``rng`` shuffles the candidate search order; the result must not depend on it.
    """
    I, bar, cp = M.unit, R.bar, C.compose
    x, y = C.dom[f], C.cod[f]
    ix = C.identity[x]
    o_i = [e for e in C.hom(I, I) if bar[e] == e]
    e = _unique([e for e in _ordered(o_i, rng) if scalar_mult(C, M, e, ix) == bar[f]],
                "scalar acting as the restriction")
    subs = enumerate_subunits(C, M)
    through = [u for u in _ordered(subs, rng) if any(cp(u.mono, d) == e for d in C.hom(I, u.obj))]
    least = _unique([u for u in through if all(subunit_leq(C, M, u, v) for v in through)],
                    "least subunit")
    d = _unique([d for d in _ordered(C.hom(I, least.obj), rng) if cp(least.mono, d) == e],
                "mediating point")
    g = M.mor(f, C.identity[least.obj])
    k = _unique([k for k in _ordered(C.hom(C.dom[g], C.cod[g]), rng)
                 if bar[k] == C.identity[C.dom[g]] and cp(k, bar[g]) == g], "total part")
    tf = C.comp(M.rho[y], M.mor(C.identity[y], least.mono), k)
    if C.comp(tf, M.mor(ix, d), C.inverse(M.rho[x])) != f:
        raise ValueError(f"decomposition of {f} does not recompose")
    return TRWitness(e, least, d, tf)


# -------------------------------------------------------- factorisation


def em_factorize(S: SCategory, m: MorId) -> tuple[MorId, MorId]:
    """m = total after restriction-iso, via [s, id] : A -> A(x)S and [1, f]."""
    p = S.pairs[m]
    C, M = S.base, S.base_monoidal
    u = S.subunits[p.subunit]
    e = S.index[(p.subunit, C.identity[M.obj(p.source, u.obj)], p.source)]
    return e, S.lift(p.under)


def in_left_class(S: SCategory, m: MorId) -> bool:
    """Restriction isos whose codomain has the form B(x)S for their own subunit S."""
    X = S.carrier
    if restriction_inverse(X, S.restriction, m) is None:
        return False
    s = S.subunits[S.pairs[m].subunit].obj
    return any(S.base_monoidal.obj(b, s) == X.cod[m] for b in X.objects)


def check_factorisation(S: SCategory) -> LawReport:
    """Factorisations recompose and every commuting square has exactly one diagonal."""
    X, R = S.carrier, S.restriction
    out = []
    for m in X.morphisms:
        e, t = em_factorize(S, m)
        if X.compose(t, e) != m:
            out.append(Violation("factor-recompose", (m,), X.compose(t, e), m))
        if not in_left_class(S, e):
            out.append(Violation("factor-left-class", (m, e)))
        if R.bar[t] != X.identity[X.dom[t]]:
            out.append(Violation("factor-right-total", (m, t)))
    lefts = [e for e in X.morphisms if in_left_class(S, e)]
    rights = [k for k in X.morphisms if R.bar[k] == X.identity[X.dom[k]]]
    for e in lefts:
        a, b = X.dom[e], X.cod[e]
        for k in rights:
            c, d = X.dom[k], X.cod[k]
            for g in X.hom(a, c):
                kg = X.compose(k, g)
                for h in X.hom(b, d):
                    if X.compose(h, e) != kg:
                        continue
                    fills = [u for u in X.hom(b, c)
                             if X.compose(u, e) == g and X.compose(k, u) == h]
                    if len(fills) != 1:
                        out.append(Violation("fill-in", (e, k, g, h), len(fills), 1))
    return LawReport(out)


def check_restriction_iso_criterion(S: SCategory) -> LawReport:
    """[s, f] has a restriction inverse iff (f(x)S)(A(x)split) is a base isomorphism."""
    C, M, X = S.base, S.base_monoidal, S.carrier
    out = []
    for m in X.morphisms:
        p = S.pairs[m]
        u = S.subunits[p.subunit]
        base = C.compose(M.mor(p.under, C.identity[u.obj]), M.mor(C.identity[p.source], u.split))
        lhs = C.inverse(base) is not None
        rhs = restriction_inverse(X, S.restriction, m) is not None
        if lhs != rhs:
            out.append(Violation("restriction-iso-criterion", (m,), int(lhs), int(rhs)))
    return LawReport(out)


# ---------------------------------------------------- O(A) and subunits


def check_o_isub(S: SCategory) -> LawReport:
    """Each O(A) of the construction matches the base subunits via [s, A(x)s] -> s.

    The map must be a bijection carrying composition to subunit meet.
    """
    X, R = S.carrier, S.restriction
    out = []
    meet = _meet_table(S)
    for a in X.objects:
        O = restriction_idempotents(X, R, a)
        img = {e: S.pairs[e].subunit for e in O.labels}
        if sorted(img.values()) != list(range(len(S.subunits))):
            out.append(Violation("O(A)-bijection", (a,), len(set(img.values())), len(S.subunits)))
        for e in O.labels:
            for d in O.labels:
                lhs, rhs = img[X.compose(e, d)], meet[img[e]][img[d]]
                if lhs != rhs:
                    out.append(Violation("O(A)-meet", (a, e, d), lhs, rhs))
    return LawReport(out)


def _meet_table(S: SCategory) -> list:
    C, M = S.base, S.base_monoidal
    I = M.unit
    pos = {u.mono: i for i, u in enumerate(S.subunits)}
    return [[pos[canonical_subunit(C, M, C.compose(M.lam[I], M.mor(s.mono, t.mono)))[0].mono]
             for t in S.subunits] for s in S.subunits]


def check_isub_lift(S: SCategory) -> LawReport:
    """s -> [1, s] is an isomorphism of subunit semilattices."""
    X, XM = S.carrier, S.monoidal
    out = []
    theirs = enumerate_subunits(X, XM)
    pos = {u.mono: i for i, u in enumerate(theirs)}
    img = [pos.get(canonical_subunit(X, XM, S.subunit_morphism(i))[0].mono)
           for i in range(len(S.subunits))]
    if sorted(img) != list(range(len(theirs))):
        out.append(Violation("ISub-bijection", (), len(set(img)), len(theirs)))
        return LawReport(out)
    base_meet = _meet_table(S)
    I = XM.unit
    for i, j in product(range(len(S.subunits)), repeat=2):
        s, t = theirs[img[i]], theirs[img[j]]
        m = canonical_subunit(X, XM, X.compose(XM.lam[I], XM.mor(s.mono, t.mono)))[0].mono
        if pos[m] != img[base_meet[i][j]]:
            out.append(Violation("ISub-meet", (i, j), pos[m], img[base_meet[i][j]]))
    return LawReport(out)


def check_oi_isub(C: FinCategory, M: MonoidalData, R: RestrictionData) -> LawReport:
    """In a tensor-restriction category, e -> least subunit through e is O(I) = ISub."""
    out = []
    subs = enumerate_subunits(C, M)
    I = M.unit
    O = restriction_idempotents(C, R, I)
    img = {e: tr_witnesses(C, M, R, e).subunit.mono for e in O.labels}
    if sorted(img.values()) != sorted(u.mono for u in subs):
        out.append(Violation("O(I)-bijection", (), len(set(img.values())), len(subs)))
    for e in O.labels:
        for d in O.labels:
            s = next(u for u in subs if u.mono == img[e])
            t = next(u for u in subs if u.mono == img[d])
            rhs = canonical_subunit(C, M, C.compose(M.lam[I], M.mor(s.mono, t.mono)))[0].mono
            lhs = img[C.compose(e, d)]
            if lhs != rhs:
                out.append(Violation("O(I)-meet", (e, d), lhs, rhs))
    return LawReport(out)


# ------------------------------------------------------------ round trips


@dataclass(frozen=True)
class IsoCertificate:
    forward: Functor
    backward: Functor
    checks: tuple  # (equation, instances checked, LawReport)

    @property
    def ok(self) -> bool:
        return all(rep.ok for _, _, rep in self.checks)

    def failures(self) -> LawReport:
        return LawReport(v for _, _, rep in self.checks for v in rep)


def certify_isomorphism(F: Functor, G: Functor, X: Structure, Y: Structure,
                        flags: StructureFlags, extra: tuple = ()) -> IsoCertificate:
    """Re-check that F and G are mutually inverse and preserve the flagged structure."""
    checks = []
    checks.append(("F preserves structure", X.category.n_morphisms, structure_preserved(F, X, Y, flags)))
    checks.append(("G preserves structure", Y.category.n_morphisms, structure_preserved(G, Y, X, flags)))
    gf = [Violation("GF=id", (f,), G(F(f)), f) for f in X.category.morphisms if G(F(f)) != f]
    gf += [Violation("GF=id-object", (a,), G.on_object(F.on_object(a)), a)
           for a in X.category.objects if G.on_object(F.on_object(a)) != a]
    fg = [Violation("FG=id", (g,), F(G(g)), g) for g in Y.category.morphisms if F(G(g)) != g]
    fg += [Violation("FG=id-object", (b,), F.on_object(G.on_object(b)), b)
           for b in Y.category.objects if F.on_object(G.on_object(b)) != b]
    checks.append(("G after F is the identity", X.category.n_morphisms, LawReport(gf)))
    checks.append(("F after G is the identity", Y.category.n_morphisms, LawReport(fg)))
    checks.extend(extra)
    return IsoCertificate(F, G, tuple(checks))


def _subunit_images(F: Functor, X: Structure, Y: Structure) -> LawReport:
    """F carries subunit classes of X bijectively onto those of Y."""
    sx = enumerate_subunits(X.category, X.monoidal)
    sy = enumerate_subunits(Y.category, Y.monoidal)
    imgs = set()
    out = []
    for u in sx:
        found = canonical_subunit(Y.category, Y.monoidal, F(u.mono))
        if found is None:
            out.append(Violation("subunit-image", (u.mono,), F(u.mono), None))
        else:
            imgs.add(found[0].mono)
    if imgs != {v.mono for v in sy}:
        out.append(Violation("subunit-bijection", (), len(imgs), len(sy)))
    return LawReport(out)


def roundtrip_TS(C: FinCategory, M: MonoidalData) -> IsoCertificate:
    """Isomorphism between C and the total maps of its construction, f -> [1, f]."""
    S = build_s_construction(C, M)
    T = total_subcategory(S.carrier, S.restriction, S.monoidal)
    fwd = tuple(T.index_of[S.lift(f)] for f in C.morphisms)
    top = S.subunits[S.top]
    I = M.unit
    m_top = next(m for m in C.hom(I, top.obj) if C.compose(top.mono, m) == C.identity[I])
    bwd = []
    for t in T.category.morphisms:
        p = S.pairs[T.embedding[t]]
        if p.subunit != S.top:
            raise ValueError(f"total map {t} is not witnessed by the top subunit")
        g = C.comp(p.under, M.mor(C.identity[p.source], m_top), C.inverse(M.rho[p.source]))
        bwd.append(g)
    F = Functor(C, T.category, tuple(C.objects), fwd)
    G = Functor(T.category, C, tuple(C.objects), tuple(bwd))
    X = Structure(C, M)
    Y = Structure(T.category, T.monoidal)
    sub = ("subunits correspond", len(enumerate_subunits(C, M)), _subunit_images(F, X, Y))
    return certify_isomorphism(F, G, X, Y, StructureFlags(monoidal=True), (sub,))


def roundtrip_ST(C: FinCategory, M: MonoidalData, R: RestrictionData) -> IsoCertificate:
    """Isomorphism between a tensor-restriction category X and S[T[X]].

    f goes to the class of (s_f, T(f)) from its witnesses; in the other
    direction [s, f] goes to f (A(x)d_s) rho^-1 with d_s the maximal
    restriction-subunit point of s.
    """
    tr = check_TR_axioms(C, M, R)
    if not tr.ok:
        raise PrerequisiteFailed("TR", tr.report)
    T = total_subcategory(C, R, M)
    S = build_s_construction(T.category, T.monoidal)
    sub_pos = {T.embedding[u.mono]: i for i, u in enumerate(S.subunits)}
    fwd = []
    for f in C.morphisms:
        w = tr_witnesses(C, M, R, f)
        key = (sub_pos[w.subunit.mono], T.index_of[w.total_part], C.dom[f])
        fwd.append(S.index[key])
    chosen = {}
    for i, u in enumerate(S.subunits):
        s = T.embedding[u.mono]
        chosen[i] = _maximal(C, R, _points_for_mono(C, M, R, s))
        if chosen[i] is None:
            raise ValueError(f"subunit {s} has no maximal restriction-subunit point")
    bwd = []
    for p in S.pairs:
        a = p.source
        bwd.append(C.comp(T.embedding[p.under], M.mor(C.identity[a], chosen[p.subunit]),
                          C.inverse(M.rho[a])))
    F = Functor(C, S.carrier, tuple(C.objects), tuple(fwd))
    G = Functor(S.carrier, C, tuple(C.objects), tuple(bwd))
    X = Structure(C, M, R)
    Y = S.structure(corestriction=False)
    sub = ("subunits correspond", len(enumerate_subunits(C, M)), _subunit_images(F, X, Y))
    return certify_isomorphism(F, G, X, Y, StructureFlags(monoidal=True, restriction=True), (sub,))


# -------------------------------------------------------- functoriality


def check_monoidal_functor(F: Functor, MX: MonoidalData, MY: MonoidalData) -> LawReport:
    return structure_preserved(F, Structure(F.source, MX), Structure(F.target, MY),
                               StructureFlags(monoidal=True))


def s_on_functor(F: Functor, SX: SCategory, SY: SCategory) -> Functor:
    """[s, f] -> [F s, F f] for a strict monoidal functor preserving subunits."""
    rep = check_monoidal_functor(F, SX.base_monoidal, SY.base_monoidal)
    if not rep.ok:
        raise ValueError(f"not a strict monoidal functor: {rep.violations[0].describe()}")
    mors = []
    for p in SX.pairs:
        u = SX.subunits[p.subunit]
        mors.append(SY.canonical(F(u.mono), F(p.under), F.on_object(p.source)))
    return Functor(SX.carrier, SY.carrier, F.obj_map, tuple(mors))


def t_on_functor(G: Functor, RX: RestrictionData, RY: RestrictionData,
                 TX: TotalSubcategory, TY: TotalSubcategory) -> Functor:
    """A restriction functor restricted to total maps."""
    for f in G.source.morphisms:
        if G(RX.bar[f]) != RY.bar[G(f)]:
            raise ValueError(f"functor does not preserve the restriction of {f}")
    mors = tuple(TY.index_of[G(f)] for f in TX.embedding)
    return Functor(TX.category, TY.category, G.obj_map, mors)


def derived_range_from_birestriction(C: FinCategory, R: RestrictionData,
                                     K: CorestrictionData) -> CorestrictionData:
    """A birestriction structure's corestriction serves as a range operator."""
    for suite, rep in (("R", check_R_axioms(C, R)), ("CR", check_CR_axioms(C, K)),
                       ("BR", check_BR_axioms(C, R, K))):
        if not rep.ok:
            raise PrerequisiteFailed(suite, rep)
    rep = check_RR_axioms(C, R, K)
    if not rep.ok:
        raise PrerequisiteFailed("RR", rep)
    return K


def check_s_lemmas(S: SCategory) -> LawReport:
    """Structural facts about the construction: subunits are [1, s], totals are [1, f]."""
    X, XM = S.carrier, S.monoidal
    out = []
    lifted = sorted(canonical_subunit(X, XM, S.subunit_morphism(i))[0].mono
                    for i in range(len(S.subunits)))
    ours = sorted(u.mono for u in enumerate_subunits(X, XM))
    if lifted != ours:
        out.append(Violation("subunits-are-lifts", (), len(lifted), len(ours)))
    for m in X.morphisms:
        total = S.restriction.bar[m] == X.identity[X.dom[m]]
        if total != (S.pairs[m].subunit == S.top):
            out.append(Violation("total-iff-top", (m,), int(total), S.pairs[m].subunit))
    return LawReport(out)
