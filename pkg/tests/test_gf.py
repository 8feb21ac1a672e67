"""
有限域测试

测试域的构造校验、运算表、元素文本格式与域公理。
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.exceptions import (
    DegreeMismatch, FieldMismatch, NonPrimeCharacteristic, ParseError, ReducibleModulus,
    TooLarge, ZeroInverse
)
from algebra.gf import (
    FieldSpec, enumerate_elements, field_from_order, field_make, is_irreducible, smallest_irreducible
)


class TestFieldConstruction:
    """域构造测试"""

    def test_prime_field(self):
        """测试素域"""
        f = field_make(5)
        assert f.q == 5
        assert f.modulus == (0, 1)
        assert [int(x) for x in f.elements()] == [0, 1, 2, 3, 4]

    def test_default_modulus_is_smallest_irreducible(self):
        """测试默认模多项式选取字典序最小的不可约多项式"""
        assert smallest_irreducible(2, 2) == (1, 1, 1)
        assert smallest_irreducible(2, 3) == (1, 0, 1, 1)
        assert field_make(2, 2).describe() == {"p": 2, "l": 2, "modulus": [1, 1, 1]}

    def test_field_is_cached(self):
        """测试同参数返回同一实例"""
        assert field_make(3, 2) is field_make(3, 2)

    def test_non_prime_characteristic(self):
        """测试非素数特征"""
        with pytest.raises(NonPrimeCharacteristic) as exc_info:
            field_make(4)
        assert exc_info.value.details == {"p": 4}

    def test_reducible_modulus(self):
        """测试可约模多项式"""
        with pytest.raises(ReducibleModulus):
            field_make(2, 2, [1, 0, 1])

    def test_degree_mismatch(self):
        """测试模多项式次数错误"""
        with pytest.raises(DegreeMismatch):
            field_make(2, 2, [1, 1])
        with pytest.raises(DegreeMismatch):
            FieldSpec(2, 2, [1, 1, 0])

    def test_field_from_order(self):
        """测试按阶构造"""
        f = field_from_order(9)
        assert (f.p, f.l) == (3, 2)
        assert field_from_order(7).q == 7

    def test_field_from_order_not_prime_power(self):
        """测试非素数幂的阶"""
        with pytest.raises(NonPrimeCharacteristic):
            field_from_order(6)
        with pytest.raises(NonPrimeCharacteristic):
            field_from_order(1)

    def test_field_too_large(self):
        """测试超出运算表上限"""
        with pytest.raises(TooLarge):
            field_from_order(2048)

    def test_irreducibility(self):
        """测试不可约判定"""
        assert is_irreducible((1, 1, 1), 2)
        assert not is_irreducible((0, 0, 1), 2)
        assert is_irreducible((1, 0, 1), 3)


class TestFieldArithmetic:
    """域运算测试"""

    def setup_method(self):
        """设置测试"""
        self.gf4 = field_make(2, 2)
        self.gf5 = field_make(5)

    def test_extension_multiplication(self):
        """测试扩域乘法：x·x = x + 1"""
        assert self.gf4.mul(2, 2) == 3
        assert self.gf4.inv(2) == 3
        assert self.gf4.add(2, 3) == 1

    def test_vectorized_operations(self):
        """测试运算表作用于数组"""
        codes = np.arange(4)
        assert list(self.gf4.add(codes, codes)) == [0, 0, 0, 0]
        assert list(self.gf4.mul(codes, 1)) == [0, 1, 2, 3]

    def test_zero_inverse(self):
        """测试零元求逆"""
        with pytest.raises(ZeroInverse):
            self.gf5.inv(0)
        with pytest.raises(ZeroInverse):
            self.gf5.zero.inverse()

    def test_scalar_operations(self):
        """测试元素运算"""
        two, four = self.gf5.element(2), self.gf5.element(4)
        assert two + four == 1
        assert two - four == 3
        assert two * four == 3
        assert two ** -1 == 3
        assert self.gf5.element(3) / two == 4
        assert -two == 3

    def test_scalar_field_mismatch(self):
        """测试不同域的元素运算"""
        with pytest.raises(FieldMismatch):
            field_make(2).one + field_make(3).one

    def test_scalar_is_immutable(self):
        """测试元素不可变"""
        x = self.gf5.one
        with pytest.raises(AttributeError):
            x.code = 3

    def test_enumerate_elements(self):
        """测试元素枚举顺序"""
        assert [str(x) for x in enumerate_elements(self.gf4)] == ["0:0", "1:0", "0:1", "1:1"]


class TestScalarText:
    """元素文本格式测试"""

    def test_prime_field_text(self):
        """测试素域文本"""
        f = field_make(7)
        assert f.parse_scalar(" 6 ") == 6
        assert f.format_scalar(6) == "6"

    def test_extension_field_text(self):
        """测试扩域文本：系数低次在前"""
        f = field_make(2, 2)
        assert f.parse_scalar("1:1") == 3
        assert f.parse_scalar("0:1") == 2
        assert f.format_scalar(3) == "1:1"

    @pytest.mark.parametrize("text", ["7", "-1", "abc", "1.5"])
    def test_invalid_prime_text(self, text):
        """测试非法素域文本"""
        with pytest.raises(ParseError):
            field_make(7).parse_scalar(text)

    def test_invalid_extension_text(self):
        """测试非法扩域文本"""
        f = field_make(2, 2)
        with pytest.raises(ParseError):
            f.parse_scalar("2:0")
        with pytest.raises(DegreeMismatch):
            f.parse_scalar("1:0:1")


ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25]


@st.composite
def field_and_codes(draw):
    f = field_from_order(draw(st.sampled_from(ORDERS)))
    codes = st.integers(min_value=0, max_value=f.q - 1)
    return f, draw(codes), draw(codes), draw(codes)


class TestFieldAxioms:
    """域公理的性质测试"""

    @settings(max_examples=200, deadline=None)
    @given(field_and_codes())
    def test_ring_laws(self, data):
        """测试结合律、交换律与分配律"""
        f, x, y, z = data
        assert f.add(f.add(x, y), z) == f.add(x, f.add(y, z))
        assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
        assert f.mul(x, y) == f.mul(y, x)
        assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))

    @settings(max_examples=200, deadline=None)
    @given(field_and_codes())
    def test_inverses(self, data):
        """测试加法逆与乘法逆"""
        f, x, _, _ = data
        assert f.add(x, f.neg(x)) == 0
        if x:
            assert f.mul(x, f.inv(x)) == 1

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from(ORDERS))
    def test_text_roundtrip(self, q):
        """测试元素文本往返"""
        f = field_from_order(q)
        for code in range(f.q):
            assert f.parse_scalar(f.format_scalar(code)) == code
