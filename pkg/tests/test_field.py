import itertools

import pytest

from modinv.field import GF, ModulusMismatch, fp_add, fp_inv, fp_mul, is_prime


@pytest.mark.parametrize("p,a,b,expected", [(3, 2, 2, 1), (5, 0, 4, 4), (3, 1, 2, 0)])
def test_add(p, a, b, expected):
    F = GF(p)
    assert fp_add(F(a), F(b)) == F(expected)


@pytest.mark.parametrize("p,a,b,expected", [(5, 2, 3, 1), (3, 0, 2, 0)])
def test_mul(p, a, b, expected):
    F = GF(p)
    assert fp_mul(F(a), F(b)) == F(expected)


def test_mul_identity():
    F = GF(3)
    for x in F:
        assert fp_mul(F(1), x) == x


@pytest.mark.parametrize("p,a,expected", [(5, 2, 3), (3, 2, 2), (3, 1, 1)])
def test_inv(p, a, expected):
    F = GF(p)
    assert fp_inv(F(a)) == F(expected)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        fp_inv(GF(5)(0))


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        GF(3)(1) + GF(5)(1)


@pytest.mark.parametrize("bad", [1, 4, 9, 1 << 17, 65537 * 2])
def test_rejects_non_primes_and_large_moduli(bad):
    with pytest.raises(ValueError):
        GF(bad)


def test_values_are_reduced():
    assert GF(5)(-1).value == 4
    assert GF(3)(7).value == 1


@pytest.mark.parametrize("p", [3, 5])
def test_field_axioms_exhaustive(p):
    F = GF(p)
    elems = list(F)
    for a, b, c in itertools.product(elems, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a, b in itertools.product(elems, repeat=2):
        assert a + b == b + a and a * b == b * a


@pytest.mark.parametrize("p", [3, 5])
def test_inverses_and_fermat_exhaustive(p):
    F = GF(p)
    for a in F:
        assert a**p == a
        if a:
            assert fp_mul(a, fp_inv(a)) == F(1)


def test_primitive_roots():
    assert GF(3).primitive_root == 2
    assert GF(5).primitive_root == 2
    assert GF(7).primitive_root == 3
    assert not is_prime(91) and is_prime(97)
