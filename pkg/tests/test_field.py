import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeunital.field import (
    GF,
    FieldError,
    evaluate_poly,
    field_of_order,
    find_factor,
    gf8,
    is_irreducible,
    make_field,
    parse_field,
    subfield_embed,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64]


def naive_gf2_mul(a, b, modulus_bits, deg):
    """Shift-and-add multiplication in GF(2)[X]/(m), independent of the field tables."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus_bits
    return r


def test_gf8_against_shift_and_add():
    F = gf8()
    for a in range(8):
        for b in range(8):
            assert F.mul(a, b) == naive_gf2_mul(a, b, 0b1011, 3)
            assert F.add(a, b) == a ^ b


def test_gf8_powers_of_gamma():
    F = gf8()
    g = F.gen
    # gamma^3 = gamma + 1, gamma^6 = gamma^2 + 1, gamma^7 = 1
    assert F.pow(g, 3) == F.add(g, 1)
    assert F.pow(g, 6) == F.add(F.mul(g, g), 1)
    assert F.pow(g, 7) == 1
    assert sorted(F.pow(g, k) for k in range(7)) == list(range(1, 8))
    assert F.format(F.pow(g, 6)) == "g^6"


def test_gf8_trace():
    F = gf8()
    g = F.gen
    assert F.trace(F.pow(g, 6)) == 1
    assert sum(F.trace(x) for x in F.elements()) == 4
    for x in F.elements():
        assert F.trace(x) == F.add(F.add(x, F.frob(x)), F.frob(x, 2))


def test_reducible_modulus_names_factor():
    with pytest.raises(FieldError, match=r"X \+ 1|1 \+ X|X\+1"):
        GF(2, 2, (1, 0, 1))
    assert find_factor([1, 0, 1], 2) is not None
    assert is_irreducible([1, 1, 0, 1], 2)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive_small(q):
    F = field_of_order(q)
    els = list(F.elements())
    assert len(els) == q
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
        # Frobenius is additive and has order e
        assert F.frob(a, F.e) == a
    if q <= 16:
        for a in els:
            for b in els:
                assert F.mul(a, b) == F.vec_mul(a, b)
                assert F.add(a, b) == F.vec_add(a, b)
                assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([9, 27, 64]), st.data())
def test_ring_laws(q, data):
    F = field_of_order(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        gf8().inv(0)


def test_mixed_field_elements():
    a = gf8().element(3)
    b = field_of_order(9).element(3)
    with pytest.raises(FieldError):
        a + b
    assert (a * a.inverse()).value == 1


def test_parse_field_roundtrip():
    for q in ORDERS:
        F = field_of_order(q)
        assert parse_field(F.spec_string()) == F
        assert parse_field(str(q)) == F
    with pytest.raises(FieldError):
        parse_field("GF(6)")
    with pytest.raises(FieldError):
        parse_field("banana")


def test_subfield_embedding_is_homomorphism():
    for small, big in [(8, 64), (4, 16), (4, 64), (3, 27), (2, 8)]:
        S, B = field_of_order(small), field_of_order(big)
        img = subfield_embed(S, B)
        assert img is not None and len(set(img)) == small
        for a in S.elements():
            for b in S.elements():
                assert img[S.add(a, b)] == B.add(img[a], img[b])
                assert img[S.mul(a, b)] == B.mul(img[a], img[b])
    assert subfield_embed(gf8(), field_of_order(16)) is None
    assert subfield_embed(field_of_order(9), field_of_order(27)) is None


def test_evaluate_poly_roots_of_v3_v2_1():
    F = gf8()
    roots = [x for x in F.elements() if evaluate_poly(F, (1, 0, 1, 1), x) == 0]
    assert len(roots) == 3
    # roots are closed under Frobenius
    assert sorted(F.frob(r) for r in roots) == sorted(roots)


def test_make_field_cached():
    assert make_field(2, 3, (1, 1, 0, 1)) is make_field(2, 3, (1, 1, 0, 1))
