import pytest

from zpinv import AmbientMismatchError, FpScalar, is_prime

PRIMES = (2, 3, 5, 7)


@pytest.mark.parametrize("p", PRIMES)
def test_field_axioms_exhaustive(p):
    elems = [FpScalar(v, p) for v in range(p)]
    zero, one = elems[0], elems[1 % p]
    for a in elems:
        assert a + zero == a
        assert a * one == a
        assert a + (-a) == zero
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            for c in elems:
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p", PRIMES)
def test_inverses_exhaustive(p):
    one = FpScalar(1, p)
    for v in range(1, p):
        a = FpScalar(v, p)
        assert a * a.inverse() == one
        assert a / a == one
        assert a ** (p - 1) == one  # Fermat
    with pytest.raises(ZeroDivisionError):
        FpScalar(0, p).inverse()


@pytest.mark.parametrize("p", PRIMES)
def test_power_sum_is_minus_one(p):
    # sum of ell^(p-1) over the whole field: p-1 ones
    total = sum((FpScalar(ell, p) ** (p - 1) for ell in range(p)), FpScalar(0, p))
    assert total == FpScalar(-1, p)


def test_values_reduced():
    assert FpScalar(7, 5).value == 2
    assert FpScalar(-1, 5).value == 4
    assert int(FpScalar(12, 7)) == 5
    assert not FpScalar(0, 3)
    assert FpScalar(2, 3)


def test_int_mixing():
    a = FpScalar(2, 5)
    assert a + 4 == FpScalar(1, 5)
    assert 4 + a == FpScalar(1, 5)
    assert a - 3 == FpScalar(4, 5)
    assert 3 - a == FpScalar(1, 5)
    assert 2 * a == FpScalar(4, 5)
    assert a == 7


def test_prime_validation():
    for bad in (0, 1, 4, 6, 9, 65537):
        with pytest.raises(ValueError):
            FpScalar(1, bad)
    assert is_prime(65521)
    assert not is_prime(65520)


def test_cross_field_mix_rejected():
    with pytest.raises(AmbientMismatchError):
        FpScalar(1, 3) + FpScalar(1, 5)
    with pytest.raises(AmbientMismatchError):
        FpScalar(1, 3) * FpScalar(1, 7)
