"""Command line front end.

Exit codes: 0 when checks pass or an isomorphism is found, 1 when
violations are reported or no isomorphism exists, 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import examples as ex
from .catfile import CategoryDocument, DocumentError, document_from, read_file, serialize
from .fincat import (LawReport, MalformedTables, SearchBudgetExceeded, Structure,
                     StructureFlags, Violation, check_category_laws, find_isomorphism)
from .monoidal import (NotBraided, NotFirm, check_monoidal_laws, enumerate_subunits,
                       firm_violations, isub_semilattice)
from .restriction import (check_BR_axioms, check_CR_axioms, check_monoidal_restriction,
                          check_R_axioms, check_RR_axioms, total_subcategory)
from .sconstr import (NotStrict, PrerequisiteFailed, build_s_construction, check_TR_axioms,
                      roundtrip_ST, roundtrip_TS)

SUITES = ("category", "monoidal", "firm", "R", "CR", "RR", "BR", "monrest", "TR")


class InputError(Exception):
    pass


@dataclass
class SuiteResult:
    suite: str
    violations: list
    note: str = ""
    seconds: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class ReportDocument:
    source: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self, doc: CategoryDocument, timing: bool = False) -> str:
        names = doc.mor_names
        lines = [f"file: {self.source}"]
        for r in self.results:
            lines.append("")
            lines.append(f"suite: {r.suite}")
            lines.append(f"status: {'pass' if r.passed else 'fail'}")
            lines.append(f"violations: {len(r.violations)}")
            if r.note:
                lines.append(f"note: {r.note}")
            if timing and r.seconds is not None:
                lines.append(f"seconds: {r.seconds:.3f}")
            for v in r.violations:
                args = ",".join(str(x) for x in v.morphisms)
                lines.append(f"violation: {v.axiom} args={args} lhs={_name(names, v.lhs)} "
                             f"rhs={_name(names, v.rhs)}")
        return "\n".join(lines) + "\n"

    def to_json(self, doc: CategoryDocument, timing: bool = False) -> str:
        names = doc.mor_names
        data = {"file": self.source, "suites": []}
        for r in self.results:
            entry = {"suite": r.suite, "status": "pass" if r.passed else "fail",
                     "violations": [{"axiom": v.axiom, "args": list(v.morphisms),
                                     "lhs": _name(names, v.lhs), "rhs": _name(names, v.rhs)}
                                    for v in r.violations]}
            if r.note:
                entry["note"] = r.note
            if timing and r.seconds is not None:
                entry["seconds"] = round(r.seconds, 3)
            data["suites"].append(entry)
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _name(names, x) -> str:
    if x is None:
        return "-"
    if isinstance(x, int) and 0 <= x < len(names):
        return names[x]
    return str(x)


def applicable_suites(S: Structure) -> list[str]:
    out = ["category"]
    if S.monoidal is not None:
        out.append("monoidal")
        if S.monoidal.sigma is not None:
            out.append("firm")
    if S.restriction is not None:
        out.append("R")
    if S.corestriction is not None:
        out.append("CR")
        if S.restriction is not None:
            out += ["RR", "BR"]
    if S.monoidal is not None and S.restriction is not None:
        out.append("monrest")
        if S.monoidal.sigma is not None:
            out.append("TR")
    return out


def run_suite(S: Structure, suite: str) -> SuiteResult:
    C, M, R, K = S.category, S.monoidal, S.restriction, S.corestriction
    need = {"monoidal": [M], "firm": [M], "R": [R], "CR": [K], "RR": [R, K], "BR": [R, K],
            "monrest": [M, R], "TR": [M, R]}
    if any(x is None for x in need.get(suite, [])):
        raise InputError(f"suite {suite!r} needs structure the file does not declare")
    t0 = time.perf_counter()
    note = ""
    if suite == "category":
        rep = check_category_laws(C)
    elif suite == "monoidal":
        rep = check_monoidal_laws(C, M)
    elif suite == "firm":
        try:
            rep = firm_violations(C, M)
        except NotBraided as exc:
            raise InputError(str(exc)) from None
    elif suite == "R":
        rep = check_R_axioms(C, R)
    elif suite == "CR":
        rep = check_CR_axioms(C, K)
    elif suite == "RR":
        rep = check_RR_axioms(C, R, K)
    elif suite == "BR":
        rep = check_BR_axioms(C, R, K)
    elif suite == "monrest":
        rep = check_monoidal_restriction(C, M, R)
    elif suite == "TR":
        try:
            tr = check_TR_axioms(C, M, R)
            rep = tr.report
            note = "failed axioms: " + (",".join(tr.failed()) or "none")
        except PrerequisiteFailed as exc:
            rep = LawReport([Violation("prerequisite-" + exc.suite, (), len(exc.report), 0)])
            note = f"prerequisite suite {exc.suite} failed"
    else:
        raise InputError(f"unknown suite {suite!r}")
    return SuiteResult(suite, list(rep), note, time.perf_counter() - t0)


def _load(path: str) -> CategoryDocument:
    try:
        return read_file(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    doc = _load(args.file)
    S = doc.structure
    suites = applicable_suites(S) if args.suite == "all" else [args.suite]
    report = ReportDocument(args.file, [run_suite(S, s) for s in suites])
    text = report.to_json(doc, args.timing) if args.json else report.render(doc, args.timing)
    sys.stdout.write(text)
    return 0 if report.passed else 1


def _monoidal_or_fail(doc: CategoryDocument):
    if doc.structure.monoidal is None:
        raise InputError("the file declares no monoidal structure")
    return doc.category, doc.structure.monoidal


def cmd_subunits(args) -> int:
    doc = _load(args.file)
    C, M = _monoidal_or_fail(doc)
    names = doc.mor_names
    subs = enumerate_subunits(C, M)
    lines = [f"subunits: {len(subs)}"]
    for u in subs:
        lines.append(f"subunit: {names[u.mono]} : {doc.obj_names[u.obj]} split={names[u.split]}")
    try:
        L = isub_semilattice(C, M)
    except (NotFirm, NotBraided) as exc:
        lines.append(f"meet: unavailable ({exc})")
    else:
        for i, a in enumerate(L.labels):
            row = " ".join(names[L.labels[L.meet[i][j]]] for j in range(L.size))
            lines.append(f"meet {names[a]}: {row}")
        lines.append(f"top: {names[L.labels[L.top]]}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_sconstruct(args) -> int:
    doc = _load(args.file)
    C, M = _monoidal_or_fail(doc)
    try:
        S = build_s_construction(C, M)
    except (NotStrict, NotFirm, NotBraided) as exc:
        raise InputError(str(exc)) from None
    _emit(serialize(document_from(S.structure())), args.output)
    return 0


def cmd_total(args) -> int:
    doc = _load(args.file)
    S = doc.structure
    if S.restriction is None:
        raise InputError("the file declares no restriction structure")
    T = total_subcategory(S.category, S.restriction, S.monoidal)
    names = tuple(doc.mor_names[f] for f in T.embedding)
    out = document_from(Structure(T.category, T.monoidal), doc.obj_names, names)
    _emit(serialize(out), args.output)
    return 0


def cmd_iso(args) -> int:
    a, b = _load(args.first), _load(args.second)
    try:
        flags = StructureFlags.parse(args.preserve or "")
        found = find_isomorphism(a.structure, b.structure, flags, node_limit=args.node_limit)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except SearchBudgetExceeded as exc:
        sys.stdout.write(f"UNKNOWN: {exc}\n")
        return 1
    if found is None:
        sys.stdout.write("NONE\n")
        return 1
    F, _ = found
    lines = ["FOUND"]
    for x in a.category.objects:
        lines.append(f"object {a.obj_names[x]} -> {b.obj_names[F.on_object(x)]}")
    for f in a.category.morphisms:
        lines.append(f"morphism {a.mor_names[f]} -> {b.mor_names[F(f)]}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def example_structure(name: str, param: Optional[str]) -> Structure:
    if name == "semilattice":
        return Structure(*ex.from_semilattice(ex.named_semilattice(param or "chain3")))
    if name == "depressing":
        C, M, R = ex.depressing_downsets(ex.named_semilattice(param or "chain3"))
        return Structure(C, M, R)
    if name == "finpar":
        return Structure(*ex.finpar(int(param or 2)))
    if name == "finset":
        return Structure(*ex.finset_monoidal(int(param or 2)))
    if name == "cyclic":
        return Structure(*ex.cyclic_group_category(int(param or 2)))
    if name == "terminal":
        return Structure(*ex.terminal_category())
    if name == "trivial-restriction":
        from .restriction import trivial_restriction
        C, M = ex.from_semilattice(ex.named_semilattice(param or "chain3"))
        return Structure(C, M, trivial_restriction(C))
    raise InputError(f"unknown example {name!r}")


EXAMPLES = ("semilattice", "depressing", "finpar", "finset", "cyclic", "terminal",
            "trivial-restriction")


def cmd_example(args) -> int:
    try:
        S = example_structure(args.name, args.param)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(serialize(document_from(S)), args.output)
    return 0


def cmd_roundtrip(args) -> int:
    doc = _load(args.file)
    S = doc.structure
    try:
        if args.direction == "TS":
            C, M = _monoidal_or_fail(doc)
            cert = roundtrip_TS(C, M)
        else:
            if S.monoidal is None or S.restriction is None:
                raise InputError("the ST direction needs monoidal and restriction structure")
            cert = roundtrip_ST(S.category, S.monoidal, S.restriction)
    except PrerequisiteFailed as exc:
        sys.stdout.write(f"direction: {args.direction}\nstatus: fail\nnote: {exc}\n")
        return 1
    except (NotStrict, NotFirm, NotBraided) as exc:
        raise InputError(str(exc)) from None
    lines = [f"direction: {args.direction}", f"status: {'pass' if cert.ok else 'fail'}"]
    for eq, n, rep in cert.checks:
        lines.append(f"check: {eq} | instances={n} | failures={len(rep)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if cert.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tensorrest",
                                description="Check and build finite tensor-restriction categories.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run law suites on a category file")
    c.add_argument("file")
    c.add_argument("--suite", default="all", choices=SUITES + ("all",))
    c.add_argument("--json", action="store_true")
    c.add_argument("--timing", action="store_true", help="include per-suite timings")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("subunits", help="list canonical subunits and their meets")
    s.add_argument("file")
    s.set_defaults(func=cmd_subunits)

    s = sub.add_parser("sconstruct", help="write the subunit construction of a file")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sconstruct)

    t = sub.add_parser("total", help="write the subcategory of total maps")
    t.add_argument("file")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_total)

    i = sub.add_parser("iso", help="search for a structure-preserving isomorphism")
    i.add_argument("first")
    i.add_argument("second")
    i.add_argument("--preserve", default="")
    i.add_argument("--node-limit", type=int, default=200_000)
    i.set_defaults(func=cmd_iso)

    e = sub.add_parser("example", help="write a bundled example")
    e.add_argument("name", choices=EXAMPLES)
    e.add_argument("--param")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_example)

    r = sub.add_parser("roundtrip", help="certify one of the two round-trip isomorphisms")
    r.add_argument("file")
    r.add_argument("--direction", choices=("TS", "ST"), required=True)
    r.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (InputError, MalformedTables) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
