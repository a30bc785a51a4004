"""Group description files: parsing, validation, and error reporting."""

import pytest

from geoshift import FormatError, UnknownLetter, parse_group_file, parse_group_text

FREE = """\
name: F2
family: free
rank: 2
generators:
  letters: [a, a^-1, b, b^-1]
  inverses: {a: a^-1, a^-1: a, b: b^-1, b^-1: b}
"""


def test_parse_free():
    spec = parse_group_text(FREE)
    assert spec.name == "F2"
    assert spec.family == "free"
    assert spec.base.letters == ("a", "a^-1", "b", "b^-1")
    assert spec.element(["a", "a^-1"]).is_identity()


def test_parse_file_matches_text(tmp_path):
    p = tmp_path / "f.grp"
    p.write_text(FREE)
    spec = parse_group_file(p)
    assert spec.name == "F2"
    assert spec.base.letters == parse_group_text(FREE).base.letters


@pytest.mark.parametrize("path,name,family", [
    ("groups/f2.grp", "F2", "free"),
    ("groups/psl2z.grp", "PSL2Z", "free_product"),
    ("groups/s3.grp", "S3", "finite_table"),
    ("groups/genus2.grp", "Genus2", "dehn"),
])
def test_shipped_files_load(path, name, family):
    spec = parse_group_file(path)
    assert spec.name == name
    assert spec.family == family


def test_shipped_gensets_resolve(f2):
    star = f2.resolve("Sstar_ab")
    assert star.name == "Sstar_ab"
    assert len(star.letters) == 6
    ab = star.elements[star.letters.index("ab")]
    assert ab == f2.element(["a", "b"])


def test_base_set_resolves_by_name_and_none(f2):
    assert f2.resolve(None).letters == f2.resolve("S").letters
    assert f2.resolve(None).is_base


@pytest.mark.parametrize("text,fragment", [
    ("not: [valid", "YAML"),
    ("[1, 2]", "mapping"),
    (FREE.replace("rank: 2", "rank: 3"), "letters"),
    (FREE.replace("family: free", "family: nonsense"), "family"),
    (FREE.replace("b^-1: b}", "b^-1: a}"), "involution"),
    (FREE.replace("{a: a^-1, a^-1: a, ", "{"), "no inverse"),
    (FREE.replace("[a, a^-1, b, b^-1]", "[a, a^-1, b, b]"), "distinct"),
])
def test_malformed_inputs(text, fragment):
    with pytest.raises(FormatError) as err:
        parse_group_text(text)
    assert fragment.lower() in str(err.value).lower()


def test_genset_with_unknown_letter_rejected():
    text = FREE + """\
gensets:
  T:
    letters: [a, a^-1, q]
    inverses: {a: a^-1, a^-1: a, q: q}
    words: {q: [z, z]}
"""
    with pytest.raises(UnknownLetter):
        parse_group_text(text)


def test_genset_letter_resolving_to_identity_rejected():
    text = FREE + """\
gensets:
  T:
    letters: [a, a^-1, q, q^-1]
    inverses: {a: a^-1, a^-1: a, q: q^-1, q^-1: q}
    words: {q: [a, a^-1], q^-1: [a, a^-1]}
"""
    with pytest.raises(FormatError):
        parse_group_text(text)
