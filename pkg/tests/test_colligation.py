"""
Colligation 与传递函数测试
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.colligation import (
    Colligation, circ, transfer, transfer_agree, transfer_conjugation_invariance, transfer_sweep
)
from algebra.exceptions import BlockMismatch, Singular, SingularPencil
from algebra.gf import field_make
from algebra.linalg import Mat, random_invertible

GF2 = field_make(2)
GF3 = field_make(3)
GF4 = field_make(2, 2)


class TestColligation:
    """colligation 构造测试"""

    def test_blocks(self):
        """测试分块"""
        g = Colligation(1, Mat(GF3, [[1, 2, 0], [0, 1, 1], [0, 0, 1]]))
        assert g.inner == 2
        assert g.a.shape == (1, 1)
        assert g.b.shape == (1, 2)
        assert g.c.shape == (2, 1)
        assert g.d.shape == (2, 2)

    def test_singular(self):
        """测试不可逆矩阵"""
        with pytest.raises(Singular):
            Colligation(1, Mat(GF2, [[1, 1], [1, 1]]))

    def test_outer_size_too_large(self):
        """测试外部尺寸超过矩阵尺寸"""
        with pytest.raises(BlockMismatch):
            Colligation(3, Mat.identity(GF2, 2))

    def test_circ_outer_mismatch(self):
        """测试外部尺寸不同"""
        with pytest.raises(BlockMismatch):
            circ(Colligation.identity(GF2, 1, 1), Colligation.identity(GF2, 2, 0))

    def test_circ_with_trivial(self):
        """测试与内部尺寸为 0 的单位 colligation 相乘"""
        g = Colligation(1, Mat(GF3, [[1, 1], [1, 2]]))
        assert circ(g, Colligation.identity(GF3, 1, 0)) == g

    def test_conjugator_size(self):
        """测试共轭矩阵尺寸"""
        g = Colligation.identity(GF2, 1, 2)
        with pytest.raises(BlockMismatch):
            g.conjugate(Mat.identity(GF2, 1))


class TestTransfer:
    """传递函数测试"""

    def test_explicit_values(self):
        """测试 χ(λ) = a + λ·b·(1 − λ·d)^{-1}·c 的具体取值"""
        g = Colligation(1, Mat(GF3, [[1, 1], [1, 2]]))
        assert transfer(g, 0) == Mat(GF3, [[1]])
        assert transfer(g, 1) == Mat(GF3, [[0]])
        with pytest.raises(SingularPencil) as exc_info:
            transfer(g, 2)
        assert exc_info.value.details == {"lambda": "2"}

    def test_sweep_marks_poles(self):
        """测试遍历时奇异点为 None"""
        g = Colligation(1, Mat(GF2, [[0, 1], [1, 1]]))
        values = transfer_sweep(g)
        assert [int(lam) for lam, _ in values] == [0, 1]
        assert values[0][1] == Mat(GF2, [[0]])
        assert values[1][1] is None

    def test_no_inner_space(self):
        """测试内部尺寸为 0 时传递函数为常数 a"""
        g = Colligation(2, Mat(GF4, [[1, 2], [0, 3]]))
        for _, value in transfer_sweep(g):
            assert value == g.a


@st.composite
def colligation_pair(draw):
    field = draw(st.sampled_from([GF2, GF3, GF4]))
    rng = np.random.default_rng(draw(st.integers(min_value=0, max_value=2 ** 32 - 1)))
    m = draw(st.integers(min_value=1, max_value=2))
    g = Colligation.random(field, m, draw(st.integers(min_value=0, max_value=3)), rng)
    h = Colligation.random(field, m, draw(st.integers(min_value=0, max_value=3)), rng)
    return g, h, rng


class TestTransferProperties:
    """传递函数的性质测试"""

    @settings(max_examples=60, deadline=None)
    @given(colligation_pair())
    def test_multiplicativity(self, data):
        """测试 χ_{g∘h}(λ) = χ_g(λ)·χ_h(λ)"""
        g, h, _ = data
        product = circ(g, h)
        assert product.inner == g.inner + h.inner
        for (_, x), (_, y), (_, z) in zip(transfer_sweep(g), transfer_sweep(h), transfer_sweep(product)):
            if x is not None and y is not None:
                assert z == x @ y

    @settings(max_examples=60, deadline=None)
    @given(colligation_pair())
    def test_conjugation_and_padding(self, data):
        """测试共轭与补齐不改变传递函数"""
        g, _, rng = data
        h = random_invertible(g.field, g.inner, rng)
        assert transfer_conjugation_invariance(g, h)
        assert transfer_agree(g, g.pad(2))
