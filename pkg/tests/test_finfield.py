import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trevex.finfield import (BinaryField, ExtensionField, PrimeField,
                             field_for_order, find_irreducible, gf2_irreducible,
                             gf2_mul, gfp_mulmod, gfp_poly_eval, is_prime,
                             next_prime)

MERSENNE61 = (1 << 61) - 1


def trial_division_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def naive_gf2_irreducible(poly: int) -> bool:
    """Exhaustive factor search, independent of the fast test."""
    l = poly.bit_length() - 1
    for div in range(2, 1 << ((l // 2) + 1)):
        rem = poly
        while rem.bit_length() >= div.bit_length():
            rem ^= div << (rem.bit_length() - div.bit_length())
        if rem == 0:
            return False
    return True


class TestPrimes:
    def test_next_prime_examples(self):
        assert next_prime(2) == 2
        assert next_prime(1700) == 1709
        assert next_prime(100) == 101

    def test_against_trial_division(self):
        for n in range(2, 2000):
            assert is_prime(n) == trial_division_prime(n), n

    def test_overflow_guard(self):
        with pytest.raises(OverflowError):
            next_prime(MERSENNE61 + 1)

    def test_bad_input(self):
        with pytest.raises(ValueError):
            next_prime(1)


class TestPrimeField:
    def test_not_prime_rejected(self):
        with pytest.raises(ValueError):
            PrimeField(100)

    def test_identity(self, rng):
        f = PrimeField(MERSENNE61)
        for _ in range(100):
            a = rng.randrange(f.p)
            assert gfp_mulmod(a, 1, f) == a

    def test_minus_one_squared(self):
        for p in (5, 101, 1709, MERSENNE61):
            f = PrimeField(p)
            assert gfp_mulmod(p - 1, p - 1, f) == 1

    def test_wide_reference_near_limit(self):
        f = PrimeField(MERSENNE61)
        a, b = (1 << 60) + 1, (1 << 60) + 2
        assert gfp_mulmod(a, b, f) == (a * b) % MERSENNE61

    def test_poly_eval_constant(self, rng):
        f = PrimeField(101)
        for _ in range(20):
            c, x = rng.randrange(101), rng.randrange(101)
            assert gfp_poly_eval([c], x, f) == c

    def test_poly_eval_hand(self):
        assert gfp_poly_eval([1, 1], 3, PrimeField(5)) == 4

    def test_poly_eval_vs_power_sum(self, rng):
        f = PrimeField(1709)
        for _ in range(50):
            coeffs = [rng.randrange(f.p) for _ in range(7)]
            x = rng.randrange(f.p)
            want = sum(c * pow(x, j, f.p) for j, c in enumerate(coeffs)) % f.p
            assert gfp_poly_eval(coeffs, x, f) == want

    def test_empty_coeffs(self):
        with pytest.raises(ValueError):
            gfp_poly_eval([], 1, PrimeField(5))


class TestFindIrreducible:
    def test_degree_2(self):
        assert find_irreducible(2).poly == 0b111

    def test_degree_3(self):
        assert find_irreducible(3).poly == 0b1011

    def test_degree_8_pentanomial(self):
        # no irreducible degree-8 trinomial exists; cross-check exhaustively
        for a in range(1, 8):
            assert not naive_gf2_irreducible((1 << 8) | (1 << a) | 1)
        poly = find_irreducible(8).poly
        assert bin(poly).count("1") == 5
        assert naive_gf2_irreducible(poly)

    def test_deterministic(self):
        for l in (1, 2, 3, 8, 16, 50, 64):
            assert find_irreducible(l).poly == find_irreducible(l).poly

    def test_independent_irreducibility(self):
        for l in range(1, 17):
            poly = find_irreducible(l).poly
            assert poly.bit_length() == l + 1
            assert naive_gf2_irreducible(poly), bin(poly)

    def test_smallest_trinomial(self):
        for l in (2, 3, 5, 16):
            poly = find_irreducible(l).poly
            for a in range(1, l):
                cand = (1 << l) | (1 << a) | 1
                if cand >= poly:
                    break
                assert not gf2_irreducible(cand)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            find_irreducible(0)
        with pytest.raises(ValueError):
            find_irreducible(65)


class TestBinaryField:
    def test_identity(self, rng):
        f = find_irreducible(16)
        for _ in range(100):
            a = rng.randrange(1 << 16)
            assert gf2_mul(a, 1, f) == a

    def test_gf8_hand_product(self):
        f = BinaryField(3, 0b1011)
        assert gf2_mul(0b110, 0b011, f) == 0b001

    def test_multiplicative_order(self, rng):
        for l in (3, 8, 16):
            f = find_irreducible(l)
            for _ in range(25):
                a = rng.randrange(1, 1 << l)
                assert f.pow(a, (1 << l) - 1) == 1

    def test_axioms(self, rng):
        for l in (3, 8, 16):
            f = find_irreducible(l)
            for _ in range(200):
                a, b, c = (rng.randrange(1 << l) for _ in range(3))
                assert f.mul(a, b) == f.mul(b, a)
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)

    def test_poly_eval_vs_power_sum(self, rng):
        f = find_irreducible(8)
        for _ in range(50):
            coeffs = [rng.randrange(256) for _ in range(5)]
            x = rng.randrange(256)
            want = 0
            for j, c in enumerate(coeffs):
                want ^= f.mul(c, f.pow(x, j))
            assert f.poly_eval(coeffs, x) == want

    def test_bad_poly_degree(self):
        with pytest.raises(ValueError):
            BinaryField(3, 0b111)


class TestExtensionField:
    def test_order(self):
        assert ExtensionField(3, 2).order == 9

    def test_axioms(self, rng):
        f = ExtensionField(3, 2)
        zero, one = 0, 1
        for _ in range(300):
            a, b, c = (rng.randrange(9) for _ in range(3))
            assert f.mul(a, b) == f.mul(b, a)
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(a, one) == a
            assert f.add(a, zero) == a

    def test_multiplicative_order(self):
        f = ExtensionField(3, 2)
        for a in range(1, 9):
            acc = 1
            for _ in range(8):
                acc = f.mul(acc, a)
            assert acc == 1

    def test_rejects_k1(self):
        with pytest.raises(ValueError):
            ExtensionField(3, 1)


class TestFieldForOrder:
    def test_dispatch(self):
        assert isinstance(field_for_order(101), PrimeField)
        assert isinstance(field_for_order(16), BinaryField)
        assert isinstance(field_for_order(9), ExtensionField)

    def test_orders(self):
        for t in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27):
            assert field_for_order(t).order == t

    def test_not_prime_power(self):
        with pytest.raises(ValueError):
            field_for_order(6)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=2, max_value=64))
    def test_small_orders(self, t):
        is_pp = any(t == p ** k for p in range(2, t + 1)
                    if trial_division_prime(p) for k in range(1, 7))
        if is_pp:
            assert field_for_order(t).order == t
        else:
            with pytest.raises(ValueError):
                field_for_order(t)
