"""Finite categories stored as explicit tables.

Objects and morphisms are dense integer indices.  ``compose(g, f)`` is the
composite that applies ``f`` first, i.e. g after f.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Optional

ObjId = int
MorId = int


class MalformedTables(ValueError):
    """Index tables are out of range or inconsistent in size."""


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Violation:
    axiom: str
    morphisms: tuple
    lhs: Optional[int] = None
    rhs: Optional[int] = None

    def describe(self) -> str:
        return f"{self.axiom} {self.morphisms} lhs={self.lhs} rhs={self.rhs}"


class LawReport:
    """Sorted collection of law violations.  Empty means the laws hold."""

    def __init__(self, violations: Iterable[Violation] = ()):
        self.violations: list[Violation] = sorted(set(violations), key=_vkey)

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __bool__(self) -> bool:
        return bool(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def by_axiom(self, axiom: str) -> list[Violation]:
        return [v for v in self.violations if v.axiom == axiom]

    def __add__(self, other: "LawReport") -> "LawReport":
        return LawReport(self.violations + other.violations)

    def __repr__(self) -> str:
        return f"LawReport({len(self.violations)} violations)"


def _vkey(v: Violation):
    none = -1
    return (v.axiom, tuple(v.morphisms), none if v.lhs is None else v.lhs,
            none if v.rhs is None else v.rhs)


@dataclass(frozen=True)
class FinCategory:
    """A finite category: dom/cod/identity arrays plus a partial composition table.

    ``composition`` maps ``(g, f)`` to the composite g after f and is expected to
    be defined exactly on the composable pairs (cod f == dom g).
    """

    n_objects: int
    dom: tuple
    cod: tuple
    identity: tuple
    composition: dict
    _cache: dict = field(init=False, default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        object.__setattr__(self, "identity", tuple(self.identity))
        n, m = self.n_objects, len(self.dom)
        if n < 0 or len(self.cod) != m or len(self.identity) != n:
            raise MalformedTables("table lengths disagree")
        for x in self.dom + self.cod:
            if not 0 <= x < n:
                raise MalformedTables(f"object index {x} out of range")
        for i in self.identity:
            if not 0 <= i < m:
                raise MalformedTables(f"identity index {i} out of range")
        for (g, f), h in self.composition.items():
            if not (0 <= g < m and 0 <= f < m and 0 <= h < m):
                raise MalformedTables(f"composition entry {(g, f)} -> {h} out of range")

    @property
    def n_morphisms(self) -> int:
        return len(self.dom)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def morphisms(self) -> range:
        return range(len(self.dom))

    def compose(self, g: MorId, f: MorId) -> MorId:
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise ValueError(f"morphisms {g} and {f} are not composable") from None

    def comp(self, *ms: MorId) -> MorId:
        """Right-to-left composite: ``comp(h, g, f)`` is h after g after f."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.compose(g, out)
        return out

    def is_identity(self, f: MorId) -> bool:
        return self.identity[self.dom[f]] == f

    @cached_property
    def _homs(self) -> dict:
        table = defaultdict(list)
        for f in self.morphisms:
            table[(self.dom[f], self.cod[f])].append(f)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def _out(self) -> tuple:
        out = [[] for _ in self.objects]
        for f in self.morphisms:
            out[self.dom[f]].append(f)
        return tuple(tuple(x) for x in out)

    @cached_property
    def _into(self) -> tuple:
        into = [[] for _ in self.objects]
        for f in self.morphisms:
            into[self.cod[f]].append(f)
        return tuple(tuple(x) for x in into)

    def hom(self, a: ObjId, b: ObjId) -> tuple:
        return self._homs.get((a, b), ())

    def out_of(self, a: ObjId) -> tuple:
        return self._out[a]

    def into(self, b: ObjId) -> tuple:
        return self._into[b]

    def composable_pairs(self) -> Iterator[tuple[MorId, MorId]]:
        """All (g, f) with cod f == dom g."""
        for f in self.morphisms:
            for g in self._out[self.cod[f]]:
                yield g, f

    def inverse(self, f: MorId) -> Optional[MorId]:
        memo = self._cache.setdefault("inverse", {})
        if f not in memo:
            memo[f] = _find_inverse(self, f)
        return memo[f]

    def hom_profile(self) -> tuple:
        return tuple(tuple(len(self.hom(a, b)) for b in self.objects) for a in self.objects)


def _find_inverse(C: FinCategory, f: MorId) -> Optional[MorId]:
    a, b = C.dom[f], C.cod[f]
    for g in C.hom(b, a):
        if C.compose(g, f) == C.identity[a] and C.compose(f, g) == C.identity[b]:
            return g
    return None


def check_category_laws(C: FinCategory) -> LawReport:
    """Typing, totality on composable pairs, unit and associativity laws."""
    out = []
    for a in C.objects:
        i = C.identity[a]
        if C.dom[i] != a or C.cod[i] != a:
            out.append(Violation("identity-type", (i,), C.dom[i], C.cod[i]))
    for (g, f), h in C.composition.items():
        if C.cod[f] != C.dom[g]:
            out.append(Violation("compose-not-composable", (g, f), h, None))
        elif C.dom[h] != C.dom[f] or C.cod[h] != C.cod[g]:
            out.append(Violation("compose-type", (g, f), h, None))
    for g, f in C.composable_pairs():
        if (g, f) not in C.composition:
            out.append(Violation("compose-missing", (g, f), None, None))
    if any(v.axiom in ("identity-type", "compose-missing") for v in out):
        return LawReport(out)
    comp = C.composition
    for f in C.morphisms:
        l = comp[(C.identity[C.cod[f]], f)]
        if l != f:
            out.append(Violation("left-unit", (f,), l, f))
        r = comp[(f, C.identity[C.dom[f]])]
        if r != f:
            out.append(Violation("right-unit", (f,), r, f))
    for f in C.morphisms:
        for g in C.out_of(C.cod[f]):
            gf = comp[(g, f)]
            for h in C.out_of(C.cod[g]):
                lhs = comp.get((h, gf))
                rhs = comp.get((comp[(h, g)], f))
                if lhs != rhs:
                    out.append(Violation("associativity", (h, g, f), lhs, rhs))
    return LawReport(out)


def is_mono(C: FinCategory, f: MorId) -> bool:
    a = C.dom[f]
    for x in C.objects:
        seen = set()
        for g in C.hom(x, a):
            h = C.compose(f, g)
            if h in seen:
                return False
            seen.add(h)
    return True


def is_epi(C: FinCategory, f: MorId) -> bool:
    b = C.cod[f]
    for x in C.objects:
        seen = set()
        for g in C.hom(b, x):
            h = C.compose(g, f)
            if h in seen:
                return False
            seen.add(h)
    return True


def is_iso(C: FinCategory, f: MorId) -> Optional[MorId]:
    """The two-sided inverse of ``f`` or None."""
    return C.inverse(f)


# ---------------------------------------------------------------- functors


@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: tuple
    mor_map: tuple

    def __call__(self, f: MorId) -> MorId:
        return self.mor_map[f]

    def on_object(self, a: ObjId) -> ObjId:
        return self.obj_map[a]

    def then(self, G: "Functor") -> "Functor":
        """G after self."""
        return Functor(self.source, G.target,
                       tuple(G.obj_map[x] for x in self.obj_map),
                       tuple(G.mor_map[f] for f in self.mor_map))

    def is_bijective(self) -> bool:
        return (sorted(self.obj_map) == list(self.target.objects)
                and sorted(self.mor_map) == list(self.target.morphisms))


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, tuple(C.objects), tuple(C.morphisms))


def check_functor(F: Functor) -> LawReport:
    C, D = F.source, F.target
    out = []
    if len(F.obj_map) != C.n_objects or len(F.mor_map) != C.n_morphisms:
        raise MalformedTables("functor tables have the wrong size")
    for f in C.morphisms:
        g = F.mor_map[f]
        if D.dom[g] != F.obj_map[C.dom[f]] or D.cod[g] != F.obj_map[C.cod[f]]:
            out.append(Violation("functor-type", (f,), g, None))
    for a in C.objects:
        if F.mor_map[C.identity[a]] != D.identity[F.obj_map[a]]:
            out.append(Violation("functor-identity", (C.identity[a],),
                                 F.mor_map[C.identity[a]], D.identity[F.obj_map[a]]))
    if out:
        return LawReport(out)
    for g, f in C.composable_pairs():
        lhs = F.mor_map[C.compose(g, f)]
        rhs = D.compose(F.mor_map[g], F.mor_map[f])
        if lhs != rhs:
            out.append(Violation("functor-compose", (g, f), lhs, rhs))
    return LawReport(out)


# ------------------------------------------------------ structured isomorphism


@dataclass(frozen=True)
class StructureFlags:
    monoidal: bool = False
    restriction: bool = False
    corestriction: bool = False

    @classmethod
    def parse(cls, text: str) -> "StructureFlags":
        names = {t.strip() for t in text.split(",") if t.strip()}
        unknown = names - {"monoidal", "restriction", "corestriction"}
        if unknown:
            raise ValueError(f"unknown structure flags: {sorted(unknown)}")
        return cls(**{n: True for n in names})


@dataclass(frozen=True)
class Structure:
    """A category with whichever extra structure it carries.

    ``monoidal`` is a MonoidalData, ``restriction``/``corestriction`` are
    tuples indexed by MorId.  Kept untyped here to avoid import cycles.
    """

    category: FinCategory
    monoidal: Any = None
    restriction: Any = None
    corestriction: Any = None


def _as_structure(x) -> Structure:
    return x if isinstance(x, Structure) else Structure(x)


def _bar_table(r) -> Optional[tuple]:
    if r is None:
        return None
    return tuple(getattr(r, "bar", r))


def _hat_table(r) -> Optional[tuple]:
    if r is None:
        return None
    return tuple(getattr(r, "hat", r))


def find_isomorphism(X, Y, flags: StructureFlags = StructureFlags(),
                     node_limit: int = 200_000) -> Optional[tuple[Functor, Functor]]:
    """Search for an isomorphism X -> Y preserving the flagged structure.

    Returns the pair (F, F inverse) or None.  Candidates are tried lowest
    index first after colour refinement, so the answer is deterministic.
    """
    X, Y = _as_structure(X), _as_structure(Y)
    for flag, attr in (("monoidal", "monoidal"), ("restriction", "restriction"),
                       ("corestriction", "corestriction")):
        if getattr(flags, flag) and (getattr(X, attr) is None or getattr(Y, attr) is None):
            raise ValueError(f"{flag} preservation requested but structure is missing")
    C, D = X.category, Y.category
    if C.n_objects != D.n_objects or C.n_morphisms != D.n_morphisms:
        return None
    if sorted(sum(C.hom_profile(), ())) != sorted(sum(D.hom_profile(), ())):
        return None
    search = _IsoSearch(X, Y, flags, node_limit)
    found = search.run()
    if found is None:
        return None
    objs, mors = found
    F = Functor(C, D, tuple(objs), tuple(mors))
    inv_o = [0] * D.n_objects
    for a, b in enumerate(objs):
        inv_o[b] = a
    inv_m = [0] * D.n_morphisms
    for f, g in enumerate(mors):
        inv_m[g] = f
    return F, Functor(D, C, tuple(inv_o), tuple(inv_m))


class _Tables:
    """Operations of one side of an isomorphism search, with None for undefined."""

    def __init__(self, S: Structure, flags: StructureFlags):
        self.C = S.category
        self.bar = _bar_table(S.restriction) if flags.restriction else None
        self.hat = _hat_table(S.corestriction) if flags.corestriction else None
        M = S.monoidal if flags.monoidal else None
        self.M = M
        if M is not None:
            self.tobj = dict(M.tensor_obj)
            self.tmor = dict(M.tensor_mor)
            self.unit = M.unit
            self.coh = M.coherence_components()
        else:
            self.tobj, self.tmor, self.unit, self.coh = {}, {}, None, {}
        self.rows = defaultdict(list)
        self.cols = defaultdict(list)
        for (x, y), h in self.tmor.items():
            self.rows[x].append(((x, y), h))
            self.cols[y].append(((x, y), h))


def _refine(A: _Tables, B: _Tables):
    """Joint colour refinement of morphisms and objects of both sides."""

    def initial(T: _Tables):
        C = T.C
        oc = [(len(C.out_of(a)), len(C.into(a)), len(C.hom(a, a)), a == T.unit) for a in C.objects]
        coh_role = defaultdict(list)
        for key, m in T.coh.items():
            coh_role[m].append(key[0])
        mc = []
        for f in C.morphisms:
            mc.append((C.is_identity(f), C.dom[f] == C.cod[f],
                       None if T.bar is None else (T.bar[f] == f, T.bar[f] == C.identity[C.dom[f]]),
                       None if T.hat is None else (T.hat[f] == f,),
                       tuple(sorted(coh_role.get(f, ())))))
        return oc, mc

    def relabel(sigs_a, sigs_b):
        palette = {s: i for i, s in enumerate(sorted(set(sigs_a) | set(sigs_b), key=repr))}
        return [palette[s] for s in sigs_a], [palette[s] for s in sigs_b]

    oa, ma = initial(A)
    ob, mb = initial(B)
    oa, ob = relabel(oa, ob)
    ma, mb = relabel(ma, mb)

    def step(T: _Tables, oc, mc):
        C = T.C
        msig = []
        for f in C.morphisms:
            post = sorted((mc[g], mc[C.composition[(g, f)]]) for g in C.out_of(C.cod[f]))
            pre = sorted((mc[h], mc[C.composition[(f, h)]]) for h in C.into(C.dom[f]))
            extra = []
            if T.bar is not None:
                extra.append(mc[T.bar[f]])
            if T.hat is not None:
                extra.append(mc[T.hat[f]])
            if T.M is not None:
                extra.append(tuple(sorted((mc[g], mc[h]) for (x, g), h in _tensor_row(T, f))))
                extra.append(tuple(sorted((mc[g], mc[h]) for (g, x), h in _tensor_col(T, f))))
            msig.append((mc[f], oc[C.dom[f]], oc[C.cod[f]], tuple(post), tuple(pre), tuple(extra)))
        osig = []
        for a in C.objects:
            extra = ()
            if T.M is not None:
                extra = tuple(sorted((oc[b], oc[c]) for (x, b), c in T.tobj.items() if x == a))
            osig.append((oc[a], tuple(sorted(mc[f] for f in C.out_of(a))),
                         tuple(sorted(mc[f] for f in C.into(a))), mc[C.identity[a]], extra))
        return osig, msig

    for _ in range(len(ma) + len(oa) + 2):
        osa, msa = step(A, oa, ma)
        osb, msb = step(B, ob, mb)
        noa, nob = relabel(osa, osb)
        nma, nmb = relabel(msa, msb)
        if (len(set(noa)) == len(set(oa)) and len(set(nma)) == len(set(ma))
                and len(set(nob)) == len(set(ob)) and len(set(nmb)) == len(set(mb))):
            oa, ob, ma, mb = noa, nob, nma, nmb
            break
        oa, ob, ma, mb = noa, nob, nma, nmb
    return oa, ma, ob, mb


def _tensor_row(T: _Tables, f):
    return T.rows.get(f, ())


def _tensor_col(T: _Tables, f):
    return T.cols.get(f, ())


class _IsoSearch:
    def __init__(self, X: Structure, Y: Structure, flags: StructureFlags, node_limit: int):
        self.A = _Tables(X, flags)
        self.B = _Tables(Y, flags)
        self.flags = flags
        self.node_limit = node_limit
        self.nodes = 0

    def run(self):
        A, B = self.A, self.B
        oa, ma, ob, mb = _refine(A, B)
        if sorted(oa) != sorted(ob) or sorted(ma) != sorted(mb):
            return None
        self.oa, self.ma, self.ob, self.mb = oa, ma, ob, mb
        C, D = A.C, B.C
        self.obj = [-1] * C.n_objects
        self.obj_used = [False] * D.n_objects
        self.mor = [-1] * C.n_morphisms
        self.mor_used = [False] * D.n_morphisms
        # morphisms of D grouped by colour and hom-set for candidate lists
        self.cand = defaultdict(list)
        for g in D.morphisms:
            self.cand[(mb[g], D.dom[g], D.cod[g])].append(g)
        return self._objects(0)

    def _objects(self, a):
        C, D = self.A.C, self.B.C
        if a == C.n_objects:
            if self.flags.monoidal:
                if self.A.unit is not None and self.obj[self.A.unit] != self.B.unit:
                    return None
                for (x, y), z in self.A.tobj.items():
                    if self.B.tobj.get((self.obj[x], self.obj[y])) != self.obj[z]:
                        return None
                if len(self.A.tobj) != len(self.B.tobj):
                    return None
            trail = []
            ok = all(self._assign(C.identity[x], D.identity[self.obj[x]], trail) for x in C.objects)
            if ok:
                res = self._morphisms()
                if res is not None:
                    return res
            self._undo(trail)
            return None
        for b in D.objects:
            if self.obj_used[b] or self.ob[b] != self.oa[a]:
                continue
            self._tick()
            self.obj[a] = b
            self.obj_used[b] = True
            res = self._objects(a + 1)
            if res is not None:
                return res
            self.obj[a] = -1
            self.obj_used[b] = False
        return None

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise SearchBudgetExceeded(f"isomorphism search exceeded {self.node_limit} nodes")

    def _candidates(self, f):
        C = self.A.C
        key = (self.ma[f], self.obj[C.dom[f]], self.obj[C.cod[f]])
        return [g for g in self.cand.get(key, ()) if not self.mor_used[g]]

    def _morphisms(self):
        C = self.A.C
        free = [f for f in C.morphisms if self.mor[f] < 0]
        if not free:
            return list(self.obj), list(self.mor)
        best, best_c = None, None
        for f in free:
            c = self._candidates(f)
            if best_c is None or len(c) < len(best_c):
                best, best_c = f, c
                if len(c) <= 1:
                    break
        for g in best_c:
            self._tick()
            trail = []
            if self._assign(best, g, trail):
                res = self._morphisms()
                if res is not None:
                    return res
            self._undo(trail)
        return None

    def _undo(self, trail):
        for f in reversed(trail):
            self.mor_used[self.mor[f]] = False
            self.mor[f] = -1
        trail.clear()

    def _assign(self, f0, g0, trail) -> bool:
        """Assign f0 -> g0 and propagate forced values; False on conflict."""
        A, B = self.A, self.B
        C, D = A.C, B.C
        work = [(f0, g0)]
        while work:
            f, g = work.pop()
            cur = self.mor[f]
            if cur >= 0:
                if cur != g:
                    return False
                continue
            if (self.mor_used[g] or self.ma[f] != self.mb[g]
                    or D.dom[g] != self.obj[C.dom[f]] or D.cod[g] != self.obj[C.cod[f]]):
                return False
            self.mor[f] = g
            self.mor_used[g] = True
            trail.append(f)
            for k in C.out_of(C.cod[f]):
                gk = self.mor[k]
                if gk >= 0:
                    work.append((C.composition[(k, f)], D.composition[(gk, g)]))
            for h in C.into(C.dom[f]):
                gh = self.mor[h]
                if gh >= 0:
                    work.append((C.composition[(f, h)], D.composition[(g, gh)]))
            if A.bar is not None:
                work.append((A.bar[f], B.bar[g]))
            if A.hat is not None:
                work.append((A.hat[f], B.hat[g]))
            if A.M is not None:
                for (x, y), h in _tensor_row(A, f):
                    gy = self.mor[y]
                    if gy >= 0:
                        t = B.tmor.get((g, gy))
                        if t is None:
                            return False
                        work.append((h, t))
                for (x, y), h in _tensor_col(A, f):
                    gx = self.mor[x]
                    if gx >= 0:
                        t = B.tmor.get((gx, g))
                        if t is None:
                            return False
                        work.append((h, t))
        return True


def structure_preserved(F: Functor, X, Y, flags: StructureFlags) -> LawReport:
    """Check that a functor preserves the flagged structure exactly."""
    X, Y = _as_structure(X), _as_structure(Y)
    out = list(check_functor(F))
    if flags.restriction:
        bx, by = _bar_table(X.restriction), _bar_table(Y.restriction)
        for f in X.category.morphisms:
            if F(bx[f]) != by[F(f)]:
                out.append(Violation("preserve-restriction", (f,), F(bx[f]), by[F(f)]))
    if flags.corestriction:
        hx, hy = _hat_table(X.corestriction), _hat_table(Y.corestriction)
        for f in X.category.morphisms:
            if F(hx[f]) != hy[F(f)]:
                out.append(Violation("preserve-corestriction", (f,), F(hx[f]), hy[F(f)]))
    if flags.monoidal:
        MX, MY = X.monoidal, Y.monoidal
        if F.on_object(MX.unit) != MY.unit:
            out.append(Violation("preserve-unit", (), F.on_object(MX.unit), MY.unit))
        for (a, b), c in MX.tensor_obj.items():
            d = MY.tensor_obj.get((F.on_object(a), F.on_object(b)))
            if d != F.on_object(c):
                out.append(Violation("preserve-tensor-obj", (a, b), F.on_object(c), d))
        for (f, g), h in MX.tensor_mor.items():
            k = MY.tensor_mor.get((F(f), F(g)))
            if k != F(h):
                out.append(Violation("preserve-tensor-mor", (f, g), F(h), k))
        cy = MY.coherence_components()
        for key, m in MX.coherence_components().items():
            name, objs = key
            ykey = (name, tuple(F.on_object(o) for o in objs))
            if cy.get(ykey) != F(m):
                out.append(Violation("preserve-" + name, (m,), F(m), cy.get(ykey)))
    return LawReport(out)

