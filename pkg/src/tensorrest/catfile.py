"""Plain-text category files.

One statement per line, ``#`` starts a comment::

    format 1
    flags monoidal braided restriction corestriction
    object A
    morphism f : A -> B
    compose g f = h          # h is g after f
    unit I
    tensor_obj A B = C
    tensor_mor f g = h
    lambda A = f
    rho A = f
    alpha A B C = f          # A(x)(B(x)C) -> (A(x)B)(x)C
    sigma A B = f
    restrict f = g
    corestrict f = g

Identities are not declared; each object's identity is the endomorphism
that acts as a unit in the composition table.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .fincat import FinCategory, MalformedTables, Structure
from .monoidal import MonoidalData
from .restriction import CorestrictionData, RestrictionData

FLAGS = ("monoidal", "braided", "restriction", "corestriction")
_NAME = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.'\-]*\Z")


class DocumentError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col, self.message = line, col, message


class ParseError(DocumentError):
    pass


class DanglingReference(ParseError):
    pass


class DuplicateDeclaration(ParseError):
    pass


class IncompleteComposition(ParseError):
    pass


class IncompleteSection(ParseError):
    pass


@dataclass(frozen=True)
class CategoryDocument:
    structure: Structure
    obj_names: tuple
    mor_names: tuple

    @property
    def category(self) -> FinCategory:
        return self.structure.category

    def flags(self) -> tuple:
        S = self.structure
        out = []
        if S.monoidal is not None:
            out.append("monoidal")
            if S.monoidal.sigma is not None:
                out.append("braided")
        if S.restriction is not None:
            out.append("restriction")
        if S.corestriction is not None:
            out.append("corestriction")
        return tuple(out)

    def content(self) -> dict:
        """Name-level content, independent of index order."""
        S, C = self.structure, self.structure.category
        o, m = self.obj_names, self.mor_names
        out = {
            "flags": self.flags(),
            "objects": frozenset(o),
            "morphisms": frozenset((m[f], o[C.dom[f]], o[C.cod[f]]) for f in C.morphisms),
            "compose": frozenset((m[g], m[f], m[h]) for (g, f), h in C.composition.items()),
        }
        M = S.monoidal
        if M is not None:
            out["unit"] = o[M.unit]
            out["tensor_obj"] = frozenset((o[a], o[b], o[c]) for (a, b), c in M.tensor_obj.items())
            out["tensor_mor"] = frozenset((m[f], m[g], m[h]) for (f, g), h in M.tensor_mor.items())
            out["lambda"] = frozenset((o[a], m[f]) for a, f in enumerate(M.lam))
            out["rho"] = frozenset((o[a], m[f]) for a, f in enumerate(M.rho))
            out["alpha"] = frozenset((o[a], o[b], o[c], m[f]) for (a, b, c), f in M.alpha.items())
            if M.sigma is not None:
                out["sigma"] = frozenset((o[a], o[b], m[f]) for (a, b), f in M.sigma.items())
        if S.restriction is not None:
            out["restrict"] = frozenset((m[f], m[g]) for f, g in enumerate(S.restriction.bar))
        if S.corestriction is not None:
            out["corestrict"] = frozenset((m[f], m[g]) for f, g in enumerate(S.corestriction.hat))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, CategoryDocument) and self.content() == other.content()

    def __hash__(self):
        return hash(len(self.obj_names))


def document_from(structure, obj_names=None, mor_names=None) -> CategoryDocument:
    if isinstance(structure, FinCategory):
        structure = Structure(structure)
    C = structure.category
    obj_names = tuple(obj_names or (f"o{i}" for i in C.objects))
    mor_names = tuple(mor_names or (f"m{i}" for i in C.morphisms))
    return CategoryDocument(structure, obj_names, mor_names)


def _natural_key(name: str):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", name)]


# ------------------------------------------------------------------ serialize

HEADER = ("# finite category file, one statement per line\n"
          "# \"compose g f = h\" means h = g after f: f is applied first\n")


def serialize(doc: CategoryDocument) -> str:
    S, C = doc.structure, doc.category
    o, m = doc.obj_names, doc.mor_names
    ok, mk = (lambda a: _natural_key(o[a])), (lambda f: _natural_key(m[f]))
    lines = [HEADER.rstrip("\n"), "format 1"]
    flags = doc.flags()
    if flags:
        lines.append("flags " + " ".join(flags))
    for a in sorted(C.objects, key=ok):
        lines.append(f"object {o[a]}")
    for f in sorted(C.morphisms, key=mk):
        lines.append(f"morphism {m[f]} : {o[C.dom[f]]} -> {o[C.cod[f]]}")
    for (g, f) in sorted(C.composition, key=lambda k: (mk(k[0]), mk(k[1]))):
        lines.append(f"compose {m[g]} {m[f]} = {m[C.composition[(g, f)]]}")
    M = S.monoidal
    if M is not None:
        lines.append(f"unit {o[M.unit]}")
        for (a, b) in sorted(M.tensor_obj, key=lambda k: (ok(k[0]), ok(k[1]))):
            lines.append(f"tensor_obj {o[a]} {o[b]} = {o[M.tensor_obj[(a, b)]]}")
        for (f, g) in sorted(M.tensor_mor, key=lambda k: (mk(k[0]), mk(k[1]))):
            lines.append(f"tensor_mor {m[f]} {m[g]} = {m[M.tensor_mor[(f, g)]]}")
        for a in sorted(C.objects, key=ok):
            lines.append(f"lambda {o[a]} = {m[M.lam[a]]}")
        for a in sorted(C.objects, key=ok):
            lines.append(f"rho {o[a]} = {m[M.rho[a]]}")
        for k in sorted(M.alpha, key=lambda k: tuple(ok(x) for x in k)):
            lines.append(f"alpha {o[k[0]]} {o[k[1]]} {o[k[2]]} = {m[M.alpha[k]]}")
        if M.sigma is not None:
            for k in sorted(M.sigma, key=lambda k: tuple(ok(x) for x in k)):
                lines.append(f"sigma {o[k[0]]} {o[k[1]]} = {m[M.sigma[k]]}")
    if S.restriction is not None:
        for f in sorted(C.morphisms, key=mk):
            lines.append(f"restrict {m[f]} = {m[S.restriction.bar[f]]}")
    if S.corestriction is not None:
        for f in sorted(C.morphisms, key=mk):
            lines.append(f"corestrict {m[f]} = {m[S.corestriction.hat[f]]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------- parse

_SHAPES = {
    # keyword: (argument kinds before "=", kind after "=" or None, flag needed)
    "object": (("new_obj",), None, None),
    "morphism": None,  # special syntax
    "compose": (("mor", "mor"), "mor", None),
    "unit": (("obj",), None, "monoidal"),
    "tensor_obj": (("obj", "obj"), "obj", "monoidal"),
    "tensor_mor": (("mor", "mor"), "mor", "monoidal"),
    "lambda": (("obj",), "mor", "monoidal"),
    "rho": (("obj",), "mor", "monoidal"),
    "alpha": (("obj", "obj", "obj"), "mor", "monoidal"),
    "sigma": (("obj", "obj"), "mor", "braided"),
    "restrict": (("mor",), "mor", "restriction"),
    "corestrict": (("mor",), "mor", "corestriction"),
}


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.objs: dict = {}
        self.mors: dict = {}
        self.dom: list = []
        self.cod: list = []
        self.flags: Optional[set] = None
        self.tables: dict = {k: {} for k in _SHAPES if k not in ("object", "morphism")}
        self.where: dict = {}
        self.last_line = max(1, len(self.lines))

    def tokens(self, lineno: int, raw: str):
        body = raw.split("#", 1)[0]
        return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]

    def run(self) -> CategoryDocument:
        for i, raw in enumerate(self.lines, start=1):
            toks = self.tokens(i, raw)
            if toks:
                self.statement(i, toks)
        return self.finish()

    def name(self, line, tok, col, kind):
        if not _NAME.match(tok):
            raise ParseError(line, col, f"invalid name {tok!r}")
        table = self.objs if kind == "obj" else self.mors
        if tok not in table:
            what = "object" if kind == "obj" else "morphism"
            raise DanglingReference(line, col, f"undeclared {what} {tok!r}")
        return table[tok]

    def statement(self, line: int, toks: list):
        kw, col = toks[0]
        if kw == "format":
            if len(toks) != 2 or toks[1][0] != "1":
                raise ParseError(line, toks[1][1] if len(toks) > 1 else col,
                                 "unsupported format version")
            return
        if kw == "flags":
            if self.flags is not None:
                raise DuplicateDeclaration(line, col, "flags declared twice")
            if self.objs:
                raise ParseError(line, col, "flags must precede declarations")
            fl = set()
            for t, c in toks[1:]:
                if t not in FLAGS:
                    raise ParseError(line, c, f"unknown flag {t!r}")
                fl.add(t)
            if "braided" in fl and "monoidal" not in fl:
                raise ParseError(line, col, "braided needs monoidal")
            self.flags = fl
            return
        if kw == "object":
            if len(toks) != 2:
                raise ParseError(line, col, "expected: object NAME")
            t, c = toks[1]
            if not _NAME.match(t):
                raise ParseError(line, c, f"invalid name {t!r}")
            if t in self.objs:
                raise DuplicateDeclaration(line, c, f"object {t!r} declared twice")
            self.objs[t] = len(self.objs)
            return
        if kw == "morphism":
            shape = [x[0] for x in toks]
            if len(toks) != 6 or shape[2] != ":" or shape[4] != "->":
                raise ParseError(line, col, "expected: morphism NAME : DOM -> COD")
            t, c = toks[1]
            if not _NAME.match(t):
                raise ParseError(line, c, f"invalid name {t!r}")
            if t in self.mors:
                raise DuplicateDeclaration(line, c, f"morphism {t!r} declared twice")
            d = self.name(line, toks[3][0], toks[3][1], "obj")
            e = self.name(line, toks[5][0], toks[5][1], "obj")
            self.mors[t] = len(self.mors)
            self.dom.append(d)
            self.cod.append(e)
            return
        if kw not in _SHAPES:
            raise ParseError(line, col, f"unknown statement {kw!r}")
        args, result, flag = _SHAPES[kw]
        if flag is not None and flag not in (self.flags or set()):
            raise ParseError(line, col, f"{kw!r} needs the {flag!r} flag")
        n = len(args)
        expect = 1 + n + (2 if result else 0)
        if len(toks) != expect or (result and toks[1 + n][0] != "="):
            form = " ".join([kw] + [a.upper() for a in args] + (["=", result.upper()] if result else []))
            raise ParseError(line, col, f"expected: {form}")
        vals = tuple(self.name(line, toks[1 + i][0], toks[1 + i][1], args[i]) for i in range(n))
        out = None
        if result:
            t, c = toks[2 + n]
            out = self.name(line, t, c, result)
        table = self.tables[kw]
        key = vals if kw != "unit" else ()
        if key in table:
            raise DuplicateDeclaration(line, col, f"{kw} {' '.join(x[0] for x in toks[1:1 + n])} given twice")
        if kw == "compose":
            g, f = vals
            if self.cod[f] != self.dom[g]:
                raise ParseError(line, col, "compose: morphisms are not composable")
            if self.dom[out] != self.dom[f] or self.cod[out] != self.cod[g]:
                raise ParseError(line, toks[-1][1], "compose: result has the wrong type")
        table[key] = vals[0] if kw == "unit" else out
        self.where[(kw, key)] = (line, col)

    def finish(self) -> CategoryDocument:
        end = self.last_line + 1
        flags = self.flags or set()
        nobj, nmor = len(self.objs), len(self.mors)
        comp = self.tables["compose"]
        obj_names = tuple(sorted(self.objs, key=self.objs.get))
        mor_names = tuple(sorted(self.mors, key=self.mors.get))
        for f in range(nmor):
            for g in range(nmor):
                if self.cod[f] == self.dom[g] and (g, f) not in comp:
                    raise IncompleteComposition(
                        end, 1, f"missing compose {mor_names[g]} {mor_names[f]}")
        ident = []
        for a in range(nobj):
            found = None
            for e in range(nmor):
                if self.dom[e] != a or self.cod[e] != a:
                    continue
                if all(comp[(e, f)] == f for f in range(nmor) if self.cod[f] == a) and \
                        all(comp[(g, e)] == g for g in range(nmor) if self.dom[g] == a):
                    found = e
                    break
            if found is None:
                raise IncompleteSection(end, 1, f"object {obj_names[a]} has no identity")
            ident.append(found)
        try:
            C = FinCategory(nobj, self.dom, self.cod, ident, dict(comp))
        except MalformedTables as exc:
            raise ParseError(end, 1, str(exc)) from None
        M = R = K = None
        if "monoidal" in flags:
            M = self._monoidal(C, flags, obj_names, mor_names, end)
        if "restriction" in flags:
            R = RestrictionData(self._total("restrict", nmor, mor_names, end))
        if "corestriction" in flags:
            K = CorestrictionData(self._total("corestrict", nmor, mor_names, end))
        return CategoryDocument(Structure(C, M, R, K), obj_names, mor_names)

    def _total(self, kw, nmor, names, end):
        t = self.tables[kw]
        for f in range(nmor):
            if (f,) not in t:
                raise IncompleteSection(end, 1, f"missing {kw} {names[f]}")
        return tuple(t[(f,)] for f in range(nmor))

    def _monoidal(self, C, flags, on, mn, end) -> MonoidalData:
        T = self.tables
        if () not in T["unit"]:
            raise IncompleteSection(end, 1, "monoidal flag without unit")
        unit = T["unit"][()]
        tobj = dict(T["tensor_obj"])
        tmor = dict(T["tensor_mor"])
        for a in C.objects:
            for kw in ("lambda", "rho"):
                if (a,) not in T[kw]:
                    raise IncompleteSection(end, 1, f"missing {kw} {on[a]}")
        for f, g in product(C.morphisms, repeat=2):
            if ((C.dom[f], C.dom[g]) in tobj and (C.cod[f], C.cod[g]) in tobj
                    and (f, g) not in tmor):
                raise IncompleteSection(end, 1, f"missing tensor_mor {mn[f]} {mn[g]}")
        for a, b, c in product(C.objects, repeat=3):
            bc, ab = tobj.get((b, c)), tobj.get((a, b))
            if bc is None or ab is None:
                continue
            if (a, bc) in tobj and (ab, c) in tobj and (a, b, c) not in T["alpha"]:
                raise IncompleteSection(end, 1, f"missing alpha {on[a]} {on[b]} {on[c]}")
        sigma = None
        if "braided" in flags:
            sigma = {}
            for a, b in product(C.objects, repeat=2):
                if (a, b) in tobj and (b, a) in tobj:
                    if (a, b) not in T["sigma"]:
                        raise IncompleteSection(end, 1, f"missing sigma {on[a]} {on[b]}")
            sigma = dict(T["sigma"])
        lam = tuple(T["lambda"][(a,)] for a in C.objects)
        rho = tuple(T["rho"][(a,)] for a in C.objects)
        return MonoidalData(unit, tobj, tmor, lam, rho, dict(T["alpha"]), sigma)


def parse(text: str) -> CategoryDocument:
    """Parse a category file; raises the first error found with its line and column."""
    return _Parser(text).run()


def read_file(path) -> CategoryDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_file(path, doc: CategoryDocument) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))
