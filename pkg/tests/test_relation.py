"""
线性关系测试

测试不变量、复合、伪逆与枚举。
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.exceptions import DimMismatch, FieldMismatch
from algebra.gf import field_make
from algebra.linalg import Mat, count_subspaces, kernel, random_matrix
from algebra.relation import LinRel, enumerate_relations, rel_compose

GF2 = field_make(2)
GF3 = field_make(3)


def random_relation(field, m, n, rng):
    """由随机个数的随机向量张成的 F^m ⇉ F^n"""
    rows = int(rng.integers(0, m + n + 1))
    return LinRel.from_rows(field, m, n, random_matrix(field, rows, m + n, rng).data)


@st.composite
def composable_pair(draw):
    """(Q, P)：P: F^m ⇉ F^k，Q: F^k ⇉ F^n，各维数不超过 3"""
    rng = np.random.default_rng(draw(st.integers(min_value=0, max_value=2 ** 32 - 1)))
    field = draw(st.sampled_from([GF2, GF3]))
    m, k, n = (draw(st.integers(min_value=0, max_value=3)) for _ in range(3))
    return random_relation(field, k, n, rng), random_relation(field, m, k, rng)


@st.composite
def operator(draw):
    rng = np.random.default_rng(draw(st.integers(min_value=0, max_value=2 ** 32 - 1)))
    field = draw(st.sampled_from([GF2, GF3]))
    rows, cols = draw(st.integers(0, 3)), draw(st.integers(0, 3))
    return random_matrix(field, rows, cols, rng)


class TestRelationInvariants:
    """不变量测试"""

    def test_graph(self):
        """测试算子的图像"""
        t = Mat(GF3, [[1, 2]])  # F^2 -> F^1
        rel = LinRel.graph(t)
        assert (rel.m, rel.n, rel.dim) == (2, 1, 2)
        assert rel.is_graph()
        assert rel.ker.dim == 1
        assert rel.ker.contains([1, 1])
        assert rel.indef.dim == 0
        assert rel.rk == 1

    def test_zero_and_full(self):
        """测试零关系与全关系"""
        zero = LinRel.zero(GF2, 1, 1)
        full = LinRel.full(GF2, 1, 1)
        assert (zero.ker.dim, zero.indef.dim, zero.dom.dim, zero.im.dim, zero.rk) == (0, 0, 0, 0, 0)
        assert (full.ker.dim, full.indef.dim, full.dom.dim, full.im.dim, full.rk) == (1, 1, 1, 1, 0)

    def test_invariants_tuple(self):
        """测试不变量五元组"""
        rel = LinRel.from_rows(GF2, 1, 2, [[0, 1, 0]])
        inv = rel.invariants()
        assert inv.indef.dim == 1
        assert inv.ker.dim == 0
        assert inv.dom.dim == 0
        assert inv.rk == 0

    def test_wrong_ambient(self):
        """测试子空间维数与关系尺寸不一致"""
        with pytest.raises(DimMismatch):
            LinRel(1, 1, LinRel.full(GF2, 1, 2).space)


class TestComposition:
    """复合测试"""

    def test_identity_is_neutral(self):
        """测试恒等关系"""
        rel = LinRel.from_rows(GF3, 2, 1, [[1, 1, 0], [0, 0, 1]])
        assert LinRel.identity(GF3, 1) @ rel == rel
        assert rel @ LinRel.identity(GF3, 2) == rel

    def test_graph_composition(self):
        """测试算子图像的复合等于矩阵乘积的图像"""
        s = Mat(GF3, [[1, 2], [0, 1]])
        t = Mat(GF3, [[2, 1]])
        assert LinRel.graph(t) @ LinRel.graph(s) == LinRel.graph(t @ s)

    def test_dim_mismatch(self):
        """测试不可复合的尺寸"""
        with pytest.raises(DimMismatch):
            rel_compose(LinRel.zero(GF2, 2, 1), LinRel.zero(GF2, 1, 1))

    def test_field_mismatch(self):
        """测试不同域的关系"""
        with pytest.raises(FieldMismatch):
            LinRel.zero(GF2, 1, 1) @ LinRel.zero(GF3, 1, 1)

    def test_pseudoinverse_of_injective_graph(self):
        """测试单射算子：P□·P = 1"""
        rel = LinRel.graph(Mat(GF2, [[1], [0]]))
        assert rel.pseudoinverse() @ rel == LinRel.identity(GF2, 1)
        assert rel.pseudoinverse().pseudoinverse() == rel

    def test_indef_of_composition(self):
        """测试 indef(QP) = dim(indef P ∩ dom Q) − dim(indef P ∩ ker Q) + dim indef Q"""
        relations = list(enumerate_relations(1, 1, GF3))
        for q, p in itertools.product(relations, repeat=2):
            expected = (p.indef & q.dom).dim - (p.indef & q.ker).dim + q.indef.dim
            assert (q @ p).indef.dim == expected

    def test_associativity(self):
        """测试复合结合律"""
        first = list(enumerate_relations(1, 2, GF2))
        second = list(enumerate_relations(2, 1, GF2))
        third = list(enumerate_relations(1, 1, GF2))
        for r, q, p in itertools.product(third, second[:8], first[:8]):
            assert (r @ q) @ p == r @ (q @ p)

    def test_pseudoinverse_reverses_order(self):
        """测试 (QP)□ = P□Q□"""
        for q, p in itertools.product(enumerate_relations(1, 1, GF2), repeat=2):
            assert (q @ p).pseudoinverse() == p.pseudoinverse() @ q.pseudoinverse()


class TestRandomRelations:
    """维数不超过 3 的随机关系，F_2 与 F_3"""

    @settings(max_examples=80, deadline=None)
    @given(composable_pair())
    def test_indef_of_composition(self, pair):
        """测试 indef(QP) 的维数公式"""
        q, p = pair
        expected = (p.indef & q.dom).dim - (p.indef & q.ker).dim + q.indef.dim
        assert (q @ p).indef.dim == expected

    @settings(max_examples=80, deadline=None)
    @given(composable_pair())
    def test_pseudoinverse_reverses_order(self, pair):
        """测试 (QP)□ = P□Q□"""
        q, p = pair
        assert (q @ p).pseudoinverse() == p.pseudoinverse() @ q.pseudoinverse()

    @settings(max_examples=80, deadline=None)
    @given(operator())
    def test_graph_rank(self, t):
        """测试 rk(graph T) = rank T，且 ker 为 T 的零空间"""
        rel = LinRel.graph(t)
        assert rel.rk == t.rank()
        assert rel.indef.dim == 0
        assert rel.ker == kernel(t)
        assert rel.is_graph()


class TestEnumeration:
    """关系枚举测试"""

    @pytest.mark.parametrize("m,n,field", [(1, 1, GF2), (1, 1, GF3), (2, 1, GF2)])
    def test_count(self, m, n, field):
        """测试关系个数等于 F^(m+n) 的子空间个数"""
        relations = list(enumerate_relations(m, n, field))
        assert len(relations) == count_subspaces(m + n, field.q)
        assert len(set(relations)) == len(relations)

    def test_transform_preserves_invariant_dims(self):
        """测试 GL 作用保持不变量维数"""
        s = Mat(GF3, [[2]])
        r = Mat(GF3, [[0, 1], [1, 0]])
        for rel in enumerate_relations(1, 2, GF3):
            moved = rel.transform(s, r)
            assert (moved.ker.dim, moved.indef.dim, moved.rk) == (rel.ker.dim, rel.indef.dim, rel.rk)
