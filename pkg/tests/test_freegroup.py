"""Words, group-ring arithmetic, parsing, and canonical printing."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constrep.freegroup import (
    GroupRingElement,
    ParseError,
    Word,
    averaging_element,
    format_element,
    generator,
    parse_element,
    reduce_letters,
    unit,
)


def test_reduce_cancels_adjacent_inverses():
    assert reduce_letters([("u", 1), ("u", -1), ("v", 1)]) == (("v", 1),)
    assert reduce_letters([("u", 1), ("v", 1), ("v", -1), ("u", 1)]) == (
        ("u", 1),
        ("u", 1),
    )
    assert reduce_letters([("u", 1), ("u", -1)]) == ()


def test_word_multiplication_reduces():
    uv = Word([("u", 1), ("v", 1)])
    w = uv * Word([("v", -1), ("u", 1)])
    assert w == Word([("u", 1), ("u", 1)])
    assert str(w) == "u^2"


def test_word_inverse():
    w = Word([("u", 1), ("v", -1)])
    assert w.inverse() == Word([("v", 1), ("u", -1)])
    assert (w * w.inverse()).is_identity
    assert (w.inverse() * w).is_identity


def test_word_generator_sums():
    w = Word([("u", 1), ("u", 1), ("v", -1)])
    assert w.generator_sums() == (2, -1)
    assert Word.identity().generator_sums() == (0, 0)


def test_word_string_forms():
    assert str(Word.identity()) == "1"
    assert str(Word([("u", 1)])) == "u"
    assert str(Word([("v", -1), ("v", -1)])) == "v^-2"
    assert str(Word([("u", 1), ("v", -1), ("u", 1)])) == "u*v^-1*u"


def test_square_of_generator_plus_inverse():
    # hand oracle: (u + u^-1)^2 = u^2 + 2 + u^-2
    u = generator("u")
    a = u + generator("u", -1)
    expected = (
        generator("u") * generator("u")
        + GroupRingElement.from_scalar(2.0)
        + generator("u", -1) * generator("u", -1)
    )
    assert a * a == expected


def test_averaging_element_is_self_adjoint():
    x = averaging_element()
    assert x.adjoint() == x
    assert x.coefficient_l1() == 4.0


def test_adjoint_reverses_products():
    u = generator("u")
    v = generator("v")
    a = 2.0 * u + (1 + 2j) * v
    b = u * v - unit()
    assert (a * b).adjoint() == b.adjoint() * a.adjoint()


def test_scalar_and_ring_arithmetic():
    u = generator("u")
    assert (u - u) == GroupRingElement.zero()
    assert 0.0 * u == GroupRingElement.zero()
    assert (u + u) == 2.0 * u
    assert (u**3) == u * u * u
    assert (u**0) == unit()


def test_parse_examples():
    u = generator("u")
    v = generator("v")
    inv_u = generator("u", -1)
    inv_v = generator("v", -1)
    assert parse_element("u") == u
    assert parse_element("2*u*v^-1 - i*u") == 2.0 * (u * inv_v) - 1j * u
    assert parse_element("u + u^-1 + v + v^-1") == averaging_element()
    assert parse_element("1") == unit()
    assert parse_element("-3") == GroupRingElement.from_scalar(-3.0)
    assert parse_element("(1+2i)*v") == (1 + 2j) * v
    assert parse_element("(1.5e-3 - 2i) * u^2") == (1.5e-3 - 2j) * (u * u)
    assert parse_element("i") == GroupRingElement.from_scalar(1j)
    assert parse_element("u*v*u^-2") == u * v * (inv_u**2)


def test_parse_whitespace_and_signs():
    assert parse_element(" - u + v ") == -generator("u") + generator("v")
    assert parse_element("+u") == generator("u")
    assert parse_element("2 - 1") == unit()


@pytest.mark.parametrize(
    "text",
    [
        "",
        "2u",
        "u^",
        "u^x",
        "* u",
        "u +",
        "w",
        "u^999999999999",
        "(1+2i",
        "2**u",
        "i*",
    ],
)
def test_parse_rejects_malformed_input(text):
    with pytest.raises(ParseError):
        parse_element(text)


def test_parse_error_carries_position():
    try:
        parse_element("u + w")
    except ParseError as err:
        assert err.position == 4
    else:  # pragma: no cover
        pytest.fail("expected ParseError")


def test_format_canonical_order():
    x = averaging_element()
    assert format_element(x) == "u + u^-1 + v + v^-1"
    assert format_element(GroupRingElement.zero()) == "0"
    assert format_element(unit()) == "1.0"


def test_format_coefficient_styles():
    u = generator("u")
    v = generator("v")
    assert format_element(-u) == "-u"
    assert format_element(2.0 * u - 3.0 * v) == "2.0*u - 3.0*v"
    assert format_element(1j * u) == "i*u"
    assert format_element(-1j * u) == "-i*u"
    assert format_element((1 + 2j) * u) == "(1.0+2.0i)*u"
    assert format_element(u * v - unit()) == "-1.0 + u*v"


# --------------------------------------------------------------------------
# property tests
# --------------------------------------------------------------------------

_letters = st.lists(
    st.tuples(st.sampled_from(["u", "v"]), st.sampled_from([1, -1])), max_size=6
)
_words = _letters.map(Word)
_coeffs = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=8.0, allow_nan=False, allow_infinity=False
)
_elements = st.dictionaries(_words, _coeffs, max_size=5).map(GroupRingElement)


def _terms_close(a, b, tol=1e-9):
    words = set(a.terms) | set(b.terms)
    return all(
        abs(a.terms.get(w, 0.0) - b.terms.get(w, 0.0)) <= tol for w in words
    )


@settings(deadline=None)
@given(_elements)
def test_print_parse_round_trip(a):
    assert parse_element(format_element(a)) == a


@settings(deadline=None)
@given(_elements, _elements, _elements)
def test_multiplication_associates(a, b, c):
    assert _terms_close((a * b) * c, a * (b * c))


@settings(deadline=None)
@given(_elements, _elements)
def test_adjoint_is_antimultiplicative(a, b):
    assert _terms_close((a * b).adjoint(), b.adjoint() * a.adjoint(), tol=1e-12)


@settings(deadline=None)
@given(_elements)
def test_adjoint_is_involutive(a):
    assert a.adjoint().adjoint() == a
    assert a.adjoint().coefficient_l1() == a.coefficient_l1()


@settings(deadline=None)
@given(_elements, _elements)
def test_addition_commutes(a, b):
    assert a + b == b + a
    assert a - a == GroupRingElement.zero()
