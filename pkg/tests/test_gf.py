import random

import pytest

from curvemul import gf
from curvemul.gf import (FieldTower, Polynomial, prime_field, extension,
                         canonical_extension, find_irreducible, embed, lift,
                         decode_element, LevelMismatchError, NotInSubfieldError)

from invariants import check_field_axioms, check_fermat

F2 = prime_field(2)
F3 = prime_field(3)
F4 = canonical_extension(F2, 2)
F8 = canonical_extension(F2, 3)
F9 = canonical_extension(F3, 2)
F16 = canonical_extension(F4, 2)


def test_find_irreducible_small_cases():
    assert find_irreducible(F2, 2).coeffs == (1, 1, 1)        # t^2+t+1
    assert find_irreducible(F2, 3).coeffs == (1, 1, 0, 1)     # t^3+t+1, lex-first
    assert find_irreducible(F3, 2).coeffs == (1, 0, 1)        # t^2+1, -1 a non-residue


def test_find_irreducible_deterministic():
    a = find_irreducible(F4, 3)
    b = find_irreducible(F4, 3)
    assert a == b and a.coeffs == b.coeffs


def test_find_irreducible_lex_first():
    # nothing smaller by encoding is irreducible
    t = find_irreducible(F2, 3)
    enc = sum(c * 2 ** i for i, c in enumerate(t.coeffs[:-1]))
    for k in range(enc):
        cand = gf._raw_from_int(F2, k, 3) + [1]
        assert not gf.is_irreducible_raw(F2, cand)


def test_f4_multiplication_forced_by_modulus():
    t = F4.from_index(2)
    assert t * t == t + 1


def test_inverse_axiom_exhaustive():
    for F in (F4, F8, F9):
        for a in F:
            if a:
                assert a * a.inverse() == F.one()


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        F8.zero().inverse()


def test_frobenius_orbit_f8():
    t = F8.from_index(2)
    assert t.frobenius() == t ** 2
    assert t.frobenius(3) == t
    # orbit enumerated exhaustively: length divides 3
    for x in F8:
        orbit = {x}
        y = x.frobenius()
        while y != x:
            orbit.add(y)
            y = y.frobenius()
        assert len(orbit) in (1, 3)


def test_level_mismatch():
    with pytest.raises(LevelMismatchError):
        F4.from_index(1) + F8.from_index(1)


def test_embed_and_lift():
    one = F4.one()
    assert embed(one, F16) == F16.one()
    for a in F4:
        for b in F4:
            assert embed(a + b, F16) == embed(a, F16) + embed(b, F16)
            assert embed(a * b, F16) == embed(a, F16) * embed(b, F16)
    for a in F4:
        e = embed(a, F16)
        assert e ** 4 == e               # lands in the Frobenius fixed field
        assert lift(e) == a


def test_lift_outside_subfield():
    gen = F16.from_index(4)  # the generator of F16 over F4
    with pytest.raises(NotInSubfieldError):
        lift(gen)


def test_axioms_random_sweep():
    rng = random.Random(20240801)
    for F in (F2, F3, F4, F8, F9, F16,
              canonical_extension(prime_field(5), 2),
              canonical_extension(F2, 8),
              canonical_extension(prime_field(5), 4),   # 625
              canonical_extension(F4, 4)):              # 256
        check_field_axioms(F, rng, triples=1000)


def test_fermat_exhaustive():
    for F in (F2, F3, F4, F8, F9, F16, canonical_extension(prime_field(7), 2),
              canonical_extension(F4, 4)):
        check_fermat(F)


def test_irreducible_counts_necklace():
    for q, F in ((2, F2), (3, F3), (4, F4)):
        for d in range(1, 7):
            assert gf.count_irreducibles(F, d) == gf.necklace_count(q, d), (q, d)


def test_polynomial_arithmetic():
    x = Polynomial(F4, [0, 1])
    p = (x + 1) * (x + F4.from_index(2))
    q, r = divmod(p, x + 1)
    assert r.is_zero() and q == x + F4.from_index(2)
    assert p.gcd(x + 1).degree == 1
    assert p(F4.from_index(3)) == (F4.from_index(3) + 1) * (F4.from_index(3) + F4.from_index(2))


def test_polynomial_eval_in_extension():
    pi = find_irreducible(F2, 2)
    root = next(x for x in F4 if not pi(x))
    assert pi(root) == F4.zero()
    assert root.val == (0, 1)  # the canonical generator is its first root


def test_element_encoding_round_trip():
    for F in (F2, F4, F16):
        for x in F:
            assert decode_element(F, x.encode()) == x
            assert F.from_index(x.index) == x


def test_scalar_and_coercion():
    assert F4.scalar(3).index == 1  # 3 mod 2
    assert F9.scalar(4) == F9.one() + F9.one() + F9.one() + F9.one()
    assert F4.from_index(2) * 1 == F4.from_index(2)


def test_tower_construction_and_validation():
    tw = FieldTower.canonical(4, 4)
    assert tw.q == 4 and tw.n == 4 and tw.ext_field.size == 256
    with pytest.raises(ValueError):
        FieldTower(4, None, find_irreducible(F2, 2))  # 4 is not prime
    with pytest.raises(ValueError):
        FieldTower(2, Polynomial(F2, [1, 0, 1]), find_irreducible(F4, 2))  # t^2+1 reducible


def test_tower_equality_and_serialization():
    a = FieldTower.canonical(4, 2)
    b = FieldTower.canonical(4, 2)
    assert a == b and hash(a) == hash(b)
    assert a.base_poly.encode() == [1, 1, 1]


def test_interning():
    assert canonical_extension(F2, 2) is F4
    assert extension(F2, (1, 1, 1)) is F4
