"""Tests for scalar arithmetic over T and T[i]."""
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supertropical.errors import BadScalar
from supertropical.semiring import (
    EPS,
    I,
    ONE,
    ZERO,
    SuperScalar,
    format_ext_real,
    format_scalar,
    is_eps,
    is_ghost,
    is_max_plus,
    magnitude,
    parse_scalar,
    scalar,
    scalar_token,
    super_add,
    super_mul,
    trop_add,
    trop_mul,
)

ext_reals = st.one_of(st.just(EPS), st.integers(-20, 20).map(float))
scalars = st.builds(SuperScalar, ext_reals, ext_reals)


class TestMaxPlus:
    def test_trop_add(self):
        assert trop_add(3.0, 5.0) == 5.0
        assert trop_add(EPS, 7.0) == 7.0
        assert trop_add(-2.0, -2.0) == -2.0

    def test_trop_mul(self):
        assert trop_mul(3.0, 5.0) == 8.0
        assert trop_mul(EPS, 7.0) == EPS
        assert trop_mul(0.0, -4.0) == -4.0

    @given(ext_reals, ext_reals, ext_reals)
    def test_distributive(self, a, b, c):
        assert trop_mul(a, trop_add(b, c)) == trop_add(trop_mul(a, b), trop_mul(a, c))


class TestSuperScalar:
    def test_add_example(self):
        assert super_add(scalar(1, 0), scalar(2)) == scalar(2, 0)

    def test_i_squared_is_one(self):
        assert super_mul(I, I) == ONE
        assert super_mul(I, I) == SuperScalar(0.0, EPS)

    def test_mul_examples(self):
        assert super_mul(scalar(1, 0), scalar(2)) == scalar(3, 2)
        assert super_mul(scalar(2, 2), scalar(5, 1)) == scalar(7, 7)

    def test_operators(self):
        assert scalar(1, 0) + scalar(2) == scalar(2, 0)
        assert scalar(1, 0) * scalar(2) == scalar(3, 2)

    def test_predicates(self):
        assert is_eps(ZERO)
        assert not is_eps(scalar(3))
        assert not is_eps(scalar(EPS, 3))
        assert is_ghost(scalar(2, 2))
        assert is_ghost(ZERO)
        assert not is_ghost(scalar(2, 3))
        assert is_max_plus(scalar(4))
        assert not is_max_plus(I)
        assert magnitude(scalar(1, 6)) == 6.0

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_rejects_non_extended_reals(self, bad):
        with pytest.raises(ValueError):
            SuperScalar(bad, EPS)

    @given(scalars, scalars, scalars)
    def test_semiring_laws(self, x, y, z):
        assert super_add(x, y) == super_add(y, x)
        assert super_add(super_add(x, y), z) == super_add(x, super_add(y, z))
        assert super_add(x, x) == x
        assert super_add(x, ZERO) == x
        assert super_mul(x, y) == super_mul(y, x)
        assert super_mul(super_mul(x, y), z) == super_mul(x, super_mul(y, z))
        assert super_mul(x, ONE) == x
        assert super_mul(x, ZERO) == ZERO
        assert super_mul(x, super_add(y, z)) == super_add(super_mul(x, y), super_mul(x, z))

    @given(scalars, scalars)
    def test_no_zero_divisors(self, x, y):
        if not is_eps(x) and not is_eps(y):
            assert not is_eps(super_mul(x, y))

    @given(ext_reals, scalars)
    def test_ghost_ideal_absorbs(self, a, y):
        ghost = SuperScalar(a, a)
        assert is_ghost(super_mul(ghost, y))
        assert is_ghost(super_add(ghost, SuperScalar(y.re, y.re)))


class TestScalarText:
    def test_parse_forms(self):
        assert parse_scalar("eps") == ZERO
        assert parse_scalar(3) == scalar(3)
        assert parse_scalar(-1.5) == scalar(-1.5)
        assert parse_scalar([3, 3]) == scalar(3, 3)
        assert parse_scalar(["eps", 0]) == I

    @pytest.mark.parametrize("token", ["inf", True, None, [1], [1, 2, 3], {"re": 1}, float("inf")])
    def test_parse_rejects(self, token):
        with pytest.raises(BadScalar):
            parse_scalar(token, where="entries.0.0")

    def test_bad_scalar_message_carries_location(self):
        with pytest.raises(BadScalar, match=r"at entries\.1\.2"):
            parse_scalar("x", where="entries.1.2")

    def test_tokens(self):
        assert scalar_token(ZERO) == "eps"
        assert scalar_token(scalar(4)) == 4
        assert scalar_token(scalar(0.5)) == 0.5
        assert scalar_token(scalar(3, 3)) == [3, 3]
        assert format_scalar(scalar(EPS, 1)) == "[eps,1]"
        assert format_scalar(scalar(-2)) == "-2"
        assert format_ext_real(EPS) == "eps"
        assert format_ext_real(2.5) == "2.5"
