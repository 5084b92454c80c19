from pathlib import Path

import pytest

from tensorrest import examples as ex
from tensorrest.catfile import (DanglingReference, DuplicateDeclaration, IncompleteComposition,
                                IncompleteSection, ParseError, document_from, parse, read_file,
                                serialize, write_file)
from tensorrest.cli import EXAMPLES, example_structure
from tensorrest.fincat import Structure
from tensorrest.restriction import check_R_axioms

from conftest import scon

GOLDEN = Path(__file__).parent / "golden"

ARROW = """\
format 1
object a
object b
morphism ida : a -> a
morphism f : a -> b
morphism idb : b -> b
compose ida ida = ida
compose f ida = f
compose idb f = f
compose idb idb = idb
"""


@pytest.mark.parametrize("name,param", [(n, None) for n in EXAMPLES] + [
    ("semilattice", "diamond"), ("depressing", "bool2"), ("finset", "1"), ("cyclic", "3")])
def test_round_trip_on_generator_outputs(name, param):
    doc = document_from(example_structure(name, param))
    text = serialize(doc)
    again = parse(text)
    assert again == doc
    assert serialize(again) == text


def test_round_trip_on_construction():
    doc = document_from(scon("diamond").structure())
    assert parse(serialize(doc)) == doc


def test_golden_files_are_stable():
    chain3 = document_from(Structure(*ex.from_semilattice(ex.chain(3))))
    assert serialize(chain3) == (GOLDEN / "chain3.cat").read_text()
    s = scon("chain3")
    assert serialize(document_from(s.structure())) == (GOLDEN / "s_chain3.cat").read_text()


def test_golden_construction_loads_with_structure():
    doc = read_file(GOLDEN / "s_chain3.cat")
    assert doc.category.n_morphisms == 22
    assert doc.flags() == ("monoidal", "braided", "restriction", "corestriction")
    assert check_R_axioms(doc.category, doc.structure.restriction).ok


def test_identities_are_inferred_and_names_kept(tmp_path):
    doc = parse(ARROW)
    C = doc.category
    assert [doc.mor_names[i] for i in C.identity] == ["ida", "idb"]
    path = tmp_path / "arrow.cat"
    write_file(path, doc)
    assert read_file(path) == doc
    assert "morphism f : a -> b" in path.read_text()


def test_comments_and_blank_lines_are_ignored():
    text = "# leading\n\n" + ARROW.replace("object b", "object b   # trailing")
    assert parse(text) == parse(ARROW)


def error_at(text, kind):
    with pytest.raises(kind) as err:
        parse(text)
    return err.value.line, err.value.col


def test_duplicate_object():
    assert error_at(ARROW.replace("object b", "object a"), DuplicateDeclaration) == (3, 8)


def test_dangling_reference():
    text = ARROW.replace("compose f ida = f", "compose g ida = f")
    assert error_at(text, DanglingReference) == (8, 9)


def test_incomplete_composition():
    text = ARROW.replace("compose idb f = f\n", "")
    line, _ = error_at(text, IncompleteComposition)
    assert line == len(text.splitlines()) + 1


def test_wrong_typed_composite():
    text = ARROW.replace("compose f ida = f", "compose f ida = ida")
    assert error_at(text, ParseError) == (8, 17)


def test_not_composable():
    text = ARROW.replace("compose idb f = f", "compose f idb = f")
    assert error_at(text, ParseError)[0] == 9


def test_bad_syntax_and_flags():
    assert error_at(ARROW.replace("morphism f : a -> b", "morphism f a -> b"), ParseError)[0] == 5
    assert error_at("format 2\n", ParseError) == (1, 8)
    assert error_at("format 1\nflags braided\n", ParseError)[0] == 2
    assert error_at("format 1\nflags shiny\n", ParseError) == (2, 7)
    assert error_at(ARROW + "unit a\n", ParseError)[0] == 11
    assert error_at(ARROW + "frobnicate a\n", ParseError) == (11, 1)
    assert error_at("object x y\n", ParseError)[0] == 1


def test_incomplete_monoidal_section():
    text = ARROW.replace("format 1", "format 1\nflags monoidal")
    with pytest.raises(IncompleteSection):
        parse(text)


def test_missing_restriction_entry():
    doc = document_from(Structure(*ex.depressing_downsets(ex.chain(2))))
    lines = [l for l in serialize(doc).splitlines() if not l.startswith("restrict m3 ")]
    with pytest.raises(IncompleteSection):
        parse("\n".join(lines) + "\n")


def test_relabelled_document_serializes_in_natural_order():
    C, M = ex.from_semilattice(ex.chain(2))
    names = ("x10", "x9")
    doc = document_from(Structure(C, M), obj_names=names)
    text = serialize(doc)
    assert text.index("object x9") < text.index("object x10")
    assert parse(text) == doc
