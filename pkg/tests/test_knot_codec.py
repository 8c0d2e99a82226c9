import pytest
from hypothesis import given
from hypothesis import strategies as st

from dkt.errors import ParseError, ValidationError
from dkt.knot_codec import (
    CATALOG_NAMES,
    BraidWord,
    PDCode,
    SeifertDirect,
    braid_to_pd,
    catalog,
    catalog_diagram,
    format_braid,
    format_pd,
    format_seifert_text,
    mirror,
    parse_braid,
    parse_pd,
    parse_seifert_text,
    smn_pd,
)
from oracles import LEFT_TREFOIL_JONES, crossing_signs, jones

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


def test_trefoil_pd_round_trip():
    pd = parse_pd(TREFOIL)
    assert pd.crossings == ((1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3))
    assert parse_pd(format_pd(pd)) == pd
    assert pd.arc_count == 6


def test_trefoil_pd_is_left_handed():
    pd = parse_pd(TREFOIL)
    assert list(pd.signs()) == crossing_signs(pd.crossings) == [-1, -1, -1]
    assert pd.writhe() == -3
    assert jones(pd.crossings) == LEFT_TREFOIL_JONES


@pytest.mark.parametrize(
    "text, pos",
    [
        ("X(1,4,2,5) Y(3,6,4,1)", 11),
        ("X(1,4,2) X(3,6,4,1)", 0),
        ("X(1,4,2,5) X(3,a,4,1)", 11),
        ("", 0),
    ],
)
def test_pd_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_pd(text)
    assert e.value.position == pos


def test_pd_rejects_broken_edges():
    with pytest.raises(ValidationError):
        PDCode(((1, 2, 3, 4),))


def test_braid_parsing():
    b = parse_braid("1 1 1")
    assert (b.strands, b.letters) == (2, (1, 1, 1))
    assert parse_braid("3: 1, -2, 1, -2").letters == (1, -2, 1, -2)
    assert parse_braid(format_braid(b)) == b


def test_braid_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_braid("1 x 1")
    assert e.value.position == 2


@pytest.mark.parametrize("text", ["1 -1", "3: 1", "1 1", "3: 1 1 -2 -2"])
def test_multi_component_closures_are_rejected(text):
    with pytest.raises(ValidationError, match="component"):
        parse_braid(text)


def test_braid_letter_range():
    with pytest.raises(ValidationError):
        BraidWord(2, (2,))
    with pytest.raises(ValidationError):
        BraidWord(3, (0, 1, 2))


def test_braid_closure_of_right_trefoil():
    pd = braid_to_pd(parse_braid("1 1 1"))
    assert list(pd.signs()) == [1, 1, 1]
    assert jones(pd.crossings) == LEFT_TREFOIL_JONES.subs("t", 1 / __import__("sympy").Symbol("t"))


def test_seifert_text_round_trip():
    s = parse_seifert_text("1; 1 1 0 1")
    assert s.matrix.tolist() == [[1, 1], [0, 1]]
    assert parse_seifert_text(format_seifert_text(s)) == s


@pytest.mark.parametrize("text", ["1 1 0 1", "x; 1", "1; 1 1 0", "1; 1 1 0 z"])
def test_seifert_text_errors(text):
    with pytest.raises(ParseError):
        parse_seifert_text(text)


nonzero = st.integers(-3, 3).filter(bool)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=10))
def test_braid_mirror_is_an_involution(letters):
    try:
        b = BraidWord(3, tuple(letters))
    except ValidationError:
        return
    assert mirror(mirror(b)) == b
    pd = braid_to_pd(b)
    assert mirror(mirror(pd)) == pd
    assert list(mirror(pd).signs()) == [-s for s in pd.signs()]


@given(nonzero, nonzero)
def test_smn_mirror_matches_diagram_signs(m, n):
    pd = smn_pd(m, n)
    assert list(pd.signs()) == crossing_signs(pd.crossings)
    assert sorted(mirror(pd).signs()) == sorted(smn_pd(-m, -n).signs())


def test_seifert_mirror():
    s = catalog("3_1L")
    assert mirror(s).matrix == -s.matrix.T
    assert mirror(mirror(s)) == s


def test_smn_diagram_of_s11_is_left_trefoil():
    assert jones(smn_pd(1, 1).crossings) == LEFT_TREFOIL_JONES
    with pytest.raises(ValidationError):
        smn_pd(0, 0)


def test_catalog():
    assert isinstance(catalog("3_1L"), SeifertDirect)
    assert catalog("S(2, -3)").matrix.tolist() == [[2, 1], [0, -3]]
    assert isinstance(catalog("3_1L#3_1R"), BraidWord)
    assert "4_1" in CATALOG_NAMES
    with pytest.raises(KeyError):
        catalog("9_42")
    with pytest.raises(KeyError):
        catalog_diagram("nope")
    assert jones(catalog_diagram("3_1L").crossings) == LEFT_TREFOIL_JONES


def test_arity_and_component_errors():
    with pytest.raises(ParseError):
        parse_pd("X(1,2,3)")
    with pytest.raises(ValidationError):
        parse_pd("X(1,1,2,2) X(3,3,4,4)")
    with pytest.raises(ValidationError):
        parse_braid("")


def test_braid_mirror_flips_letters():
    assert mirror(parse_braid("1 1 1")).letters == (-1, -1, -1)
    assert mirror(catalog("3_1L")).matrix.tolist() == [[-1, 0], [-1, -1]]
