import pytest

from kazhdan.presentations import (PresentationError, free_group_spec,
                                   parse_presentation, presentation)

RONAN_G1 = """
name: ronan G1
gens: a b c
rel: a^3
rel: b^3
rel: c^3
rel: (a*b)^2 = b*a
rel: (b*c)^2 = c*b
rel: (c*a)^2 = a*c
"""


def test_ronan_g1_shape():
    spec = parse_presentation(RONAN_G1)
    assert spec.name == "ronan G1"
    assert spec.symmetric_size == 6          # 3 generator pairs
    assert len(spec.relators) == 6
    alphabet = spec.alphabet
    a, ainv = alphabet.index("a"), alphabet.index("A")
    assert alphabet.inv[a] == ainv
    # a^3 is stored literally, (ab)^2 = ba as abab a' b'
    assert spec.relators[0] == (a, a, a)
    b = alphabet.index("b")
    binv = alphabet.inv[b]
    assert spec.relators[3] == (a, b, a, b, ainv, binv)


def test_free_group_spec():
    spec = free_group_spec(2)
    assert spec.symmetric_size == 4
    assert spec.relators == ()


def test_unknown_symbol_rejected():
    with pytest.raises(PresentationError, match="unknown symbol"):
        parse_presentation("gens: a b\nrel: a*d\n")


def test_empty_generators_rejected():
    with pytest.raises(PresentationError, match="empty generator"):
        parse_presentation("rel: a^2\n")


def test_involutions_are_self_paired():
    spec = parse_presentation("gens: s t\ninvolutions: s t\nrel: (s*t)^3\n")
    assert spec.symmetric_size == 2
    assert spec.alphabet.inv == (0, 1)


def test_involution_must_be_generator():
    with pytest.raises(PresentationError):
        parse_presentation("gens: s\ninvolutions: t\n")


def test_negative_powers_and_primes():
    spec = parse_presentation("gens: x\nrel: x^-2 = x\n")
    alphabet = spec.alphabet
    xi = alphabet.inv[alphabet.index("x")]
    x = alphabet.index("x")
    # x^-2 * x^-1 freely reduced
    assert spec.relators[0] == (xi, xi, xi)
    spec2 = parse_presentation("gens: x\nrel: x'*x'*x'\n")
    assert spec2.relators[0] == spec.relators[0]


def test_roundtrip_serialization():
    spec = parse_presentation(RONAN_G1)
    again = parse_presentation(spec.to_text())
    assert again.alphabet == spec.alphabet
    assert again.relators == spec.relators


def test_suggested_radius_heuristic():
    # longest relator 6 < 4*2 and not < 4*1
    spec = parse_presentation(RONAN_G1)
    assert spec.max_relator_length() == 6
    assert spec.suggested_radius() == 2
    tri = presentation(["x", "y", "z"], ["x*y*z"])
    assert tri.suggested_radius() == 1


def test_comments_and_blank_lines():
    spec = parse_presentation("# header\ngens: a\n\nrel: a^3  # cube\n")
    assert spec.symmetric_size == 2
    assert len(spec.relators) == 1
