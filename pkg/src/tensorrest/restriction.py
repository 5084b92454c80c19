"""Restriction, corestriction and range structure on finite categories."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fincat import FinCategory, LawReport, MalformedTables, MorId, ObjId, Violation, is_mono
from .monoidal import MonoidalData, Semilattice


@dataclass(frozen=True)
class RestrictionData:
    """bar[f] is the restriction of f, an endomorphism of dom f."""

    bar: tuple

    def __post_init__(self):
        object.__setattr__(self, "bar", tuple(self.bar))

    def __getitem__(self, f: MorId) -> MorId:
        return self.bar[f]


@dataclass(frozen=True)
class CorestrictionData:
    """hat[f] is the corestriction (or range) of f, an endomorphism of cod f."""

    hat: tuple

    def __post_init__(self):
        object.__setattr__(self, "hat", tuple(self.hat))

    def __getitem__(self, f: MorId) -> MorId:
        return self.hat[f]


def trivial_restriction(C: FinCategory) -> RestrictionData:
    return RestrictionData(tuple(C.identity[C.dom[f]] for f in C.morphisms))


def _typed(C: FinCategory, table: tuple, at_cod: bool, tag: str) -> list[Violation]:
    if len(table) != C.n_morphisms:
        raise MalformedTables(f"{tag} table has the wrong length")
    out = []
    for f in C.morphisms:
        e = table[f]
        if not 0 <= e < C.n_morphisms:
            raise MalformedTables(f"{tag} entry out of range")
        x = C.cod[f] if at_cod else C.dom[f]
        if C.dom[e] != x or C.cod[e] != x:
            out.append(Violation(tag + "-type", (f,), e, None))
    return out


def check_R_axioms(C: FinCategory, R: RestrictionData) -> LawReport:
    bar, cp = R.bar, C.compose
    out = _typed(C, bar, False, "R")
    if out:
        return LawReport(out)
    for f in C.morphisms:
        lhs = cp(f, bar[f])
        if lhs != f:
            out.append(Violation("R1", (f,), lhs, f))
    for a in C.objects:
        fs = C.out_of(a)
        for f in fs:
            for g in fs:
                lhs, rhs = cp(bar[f], bar[g]), cp(bar[g], bar[f])
                if lhs != rhs:
                    out.append(Violation("R2", (f, g), lhs, rhs))
                lhs, rhs = bar[cp(g, bar[f])], cp(bar[g], bar[f])
                if lhs != rhs:
                    out.append(Violation("R3", (f, g), lhs, rhs))
    for g, f in C.composable_pairs():
        lhs = cp(bar[g], f)
        rhs = cp(f, bar[cp(g, f)])
        if lhs != rhs:
            out.append(Violation("R4", (f, g), lhs, rhs))
    return LawReport(out)


def check_CR_axioms(C: FinCategory, K: CorestrictionData) -> LawReport:
    hat, cp = K.hat, C.compose
    out = _typed(C, hat, True, "CR")
    if out:
        return LawReport(out)
    for f in C.morphisms:
        lhs = cp(hat[f], f)
        if lhs != f:
            out.append(Violation("CR1", (f,), lhs, f))
    for b in C.objects:
        fs = C.into(b)
        for f in fs:
            for g in fs:
                lhs, rhs = cp(hat[f], hat[g]), cp(hat[g], hat[f])
                if lhs != rhs:
                    out.append(Violation("CR2", (f, g), lhs, rhs))
                lhs, rhs = hat[cp(hat[g], f)], cp(hat[g], hat[f])
                if lhs != rhs:
                    out.append(Violation("CR3", (f, g), lhs, rhs))
    for g, f in C.composable_pairs():
        lhs = cp(g, hat[f])
        rhs = cp(hat[cp(g, f)], g)
        if lhs != rhs:
            out.append(Violation("CR4", (f, g), lhs, rhs))
    return LawReport(out)


def check_RR_axioms(C: FinCategory, R: RestrictionData, K: CorestrictionData) -> LawReport:
    """Range axioms for a range operator K on top of restriction R."""
    bar, hat, cp = R.bar, K.hat, C.compose
    out = _typed(C, hat, True, "RR")
    if out:
        return LawReport(out)
    for f in C.morphisms:
        if bar[hat[f]] != hat[f]:
            out.append(Violation("RR1", (f,), bar[hat[f]], hat[f]))
        lhs = cp(hat[f], f)
        if lhs != f:
            out.append(Violation("RR2", (f,), lhs, f))
    for g, f in C.composable_pairs():
        lhs, rhs = hat[cp(bar[g], f)], cp(bar[g], hat[f])
        if lhs != rhs:
            out.append(Violation("RR3", (f, g), lhs, rhs))
        lhs, rhs = hat[cp(g, hat[f])], hat[cp(g, f)]
        if lhs != rhs:
            out.append(Violation("RR4", (f, g), lhs, rhs))
    return LawReport(out)


def check_BR_axioms(C: FinCategory, R: RestrictionData, K: CorestrictionData) -> LawReport:
    bar, hat = R.bar, K.hat
    out = []
    for f in C.morphisms:
        if hat[bar[f]] != bar[f]:
            out.append(Violation("BR1", (f,), hat[bar[f]], bar[f]))
        if bar[hat[f]] != hat[f]:
            out.append(Violation("BR2", (f,), bar[hat[f]], hat[f]))
    return LawReport(out)


def check_restriction_lemmas(C: FinCategory, R: RestrictionData) -> LawReport:
    """Standard consequences: idempotence, rest(g f) = rest(rest(g) f), monos are total."""
    bar, cp = R.bar, C.compose
    out = []
    for f in C.morphisms:
        if bar[bar[f]] != bar[f]:
            out.append(Violation("bar-idempotent", (f,), bar[bar[f]], bar[f]))
        if cp(bar[f], bar[f]) != bar[f]:
            out.append(Violation("bar-is-idempotent", (f,), cp(bar[f], bar[f]), bar[f]))
        if is_mono(C, f) and bar[f] != C.identity[C.dom[f]]:
            out.append(Violation("mono-total", (f,), bar[f], C.identity[C.dom[f]]))
    for g, f in C.composable_pairs():
        lhs, rhs = bar[cp(g, f)], bar[cp(bar[g], f)]
        if lhs != rhs:
            out.append(Violation("bar-composite", (f, g), lhs, rhs))
    return LawReport(out)


def restriction_idempotents(C: FinCategory, R: RestrictionData, a: ObjId) -> Semilattice:
    """O(a): maps e: a -> a with rest(e) == e, meet by composition, top id."""
    es = tuple(e for e in C.hom(a, a) if R.bar[e] == e)
    idx = {e: i for i, e in enumerate(es)}
    meet = tuple(tuple(idx[C.compose(e, d)] for d in es) for e in es)
    return Semilattice(es, meet, idx[C.identity[a]])


def is_restriction_total(C: FinCategory, R: RestrictionData, f: MorId) -> bool:
    return R.bar[f] == C.identity[C.dom[f]]


@dataclass(frozen=True)
class TotalSubcategory:
    """Wide subcategory of total maps with its embedding into the ambient category."""

    category: FinCategory
    embedding: tuple
    index_of: dict
    monoidal: Optional[MonoidalData] = None

    def embed(self, f: MorId) -> MorId:
        return self.embedding[f]


def total_subcategory(C: FinCategory, R: RestrictionData,
                      M: Optional[MonoidalData] = None) -> TotalSubcategory:
    """Total maps in increasing MorId order; monoidal data is inherited when given."""
    emb = tuple(f for f in C.morphisms if is_restriction_total(C, R, f))
    idx = {f: i for i, f in enumerate(emb)}
    comp = {}
    for i, f in enumerate(emb):
        for g in C.out_of(C.cod[f]):
            if g in idx:
                comp[(idx[g], i)] = idx[C.compose(g, f)]
    T = FinCategory(C.n_objects, [C.dom[f] for f in emb], [C.cod[f] for f in emb],
                    [idx[i] for i in C.identity], comp)
    TM = None
    if M is not None:
        tmor = {}
        for (f, g), h in M.tensor_mor.items():
            if f in idx and g in idx:
                if h not in idx:
                    raise MalformedTables("tensor of total maps is not total")
                tmor[(idx[f], idx[g])] = idx[h]
        try:
            TM = MonoidalData(
                M.unit, dict(M.tensor_obj), tmor,
                tuple(idx[m] for m in M.lam), tuple(idx[m] for m in M.rho),
                {k: idx[m] for k, m in M.alpha.items()},
                None if M.sigma is None else {k: idx[m] for k, m in M.sigma.items()})
        except KeyError:
            raise MalformedTables("a coherence component is not total") from None
    return TotalSubcategory(T, emb, idx, TM)


def restriction_inverse(C: FinCategory, R: RestrictionData, f: MorId) -> Optional[MorId]:
    bar = R.bar
    for g in C.hom(C.cod[f], C.dom[f]):
        if C.compose(g, f) == bar[f] and C.compose(f, g) == bar[g]:
            return g
    return None


def is_inverse_category(C: FinCategory, R: RestrictionData) -> bool:
    return all(restriction_inverse(C, R, f) is not None for f in C.morphisms)


def check_monoidal_restriction(C: FinCategory, M: MonoidalData, R: RestrictionData) -> LawReport:
    """rest(f (x) g) == rest(f) (x) rest(g) wherever the tensor is defined."""
    bar = R.bar
    out = []
    for (f, g), h in M.tensor_mor.items():
        rhs = M.mor(bar[f], bar[g])
        if bar[h] != rhs:
            out.append(Violation("monoidal-restriction", (f, g), bar[h], rhs))
    return LawReport(out)


def scalar_mult(C: FinCategory, M: MonoidalData, a: MorId, f: MorId) -> MorId:
    """a . f = lambda_B (a (x) f) lambda_A^-1 for a scalar a: I -> I."""
    I = M.unit
    if C.dom[a] != I or C.cod[a] != I:
        raise ValueError(f"{a} is not a scalar")
    t = M.mor(a, f)
    lam_inv = C.inverse(M.lam[C.dom[f]])
    if t is None or lam_inv is None:
        raise MalformedTables("scalar action undefined")
    return C.comp(M.lam[C.cod[f]], t, lam_inv)


def check_scalar_lemmas(C: FinCategory, M: MonoidalData, R: RestrictionData) -> LawReport:
    """Restriction of scalars and the action of O(I) on each O(X)."""
    I, bar, cp = M.unit, R.bar, C.compose
    out = []
    scalars = C.hom(I, I)
    for s in scalars:
        for t in scalars:
            lhs, rhs = bar[cp(s, t)], cp(bar[s], bar[t])
            if lhs != rhs:
                out.append(Violation("scalar-bar-multiplicative", (s, t), lhs, rhs))
    oi = [e for e in scalars if bar[e] == e]
    for e in oi:
        if bar[e] != e:
            out.append(Violation("scalar-bar-fixes-O(I)", (e,), bar[e], e))
    for x in C.objects:
        ix = C.identity[x]
        top = scalar_mult(C, M, C.identity[I], ix)
        if top != ix:
            out.append(Violation("action-top", (x,), top, ix))
        for e in oi:
            ex = scalar_mult(C, M, e, ix)
            if bar[ex] != ex:
                out.append(Violation("action-lands-in-O(X)", (e, x), bar[ex], ex))
            for d in oi:
                lhs = scalar_mult(C, M, cp(e, d), ix)
                rhs = cp(ex, scalar_mult(C, M, d, ix))
                if lhs != rhs:
                    out.append(Violation("action-meet", (e, d, x), lhs, rhs))
    return LawReport(out)
