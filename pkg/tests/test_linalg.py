"""
有限域矩阵与子空间测试
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.exceptions import DimMismatch, FieldMismatch, LayoutInconsistent, Singular, TooLarge
from algebra.gf import field_make
from algebra.linalg import (
    BlockLayout, Mat, Subspace, block_assemble, block_diag, count_subspaces, enumerate_gl,
    enumerate_subspaces, gaussian_binomial, kernel, random_invertible, random_matrix, rref,
    solve_affine
)

GF2 = field_make(2)
GF3 = field_make(3)
GF4 = field_make(2, 2)


class TestMat:
    """矩阵运算测试"""

    def test_inverse(self):
        """测试求逆"""
        a = Mat(GF2, [[1, 1], [0, 1]])
        assert a.inverse() == a
        assert a @ a.inverse() == Mat.identity(GF2, 2)

    def test_singular(self):
        """测试奇异矩阵"""
        with pytest.raises(Singular):
            Mat(GF2, [[1, 1], [1, 1]]).inverse()

    def test_non_square_inverse(self):
        """测试非方阵求逆"""
        with pytest.raises(DimMismatch):
            Mat(GF2, [[1, 0]]).inverse()

    def test_dimension_mismatch(self):
        """测试乘法维数不匹配"""
        with pytest.raises(DimMismatch):
            Mat.identity(GF2, 2) @ Mat.identity(GF2, 3)

    def test_field_mismatch(self):
        """测试不同域的矩阵"""
        with pytest.raises(FieldMismatch):
            Mat.identity(GF2, 2) @ Mat.identity(GF3, 2)
        with pytest.raises(FieldMismatch):
            Mat(GF2, [[2]])

    def test_extension_field_product(self):
        """测试扩域矩阵乘法"""
        x = Mat(GF4, [[2]])
        assert (x @ x).data[0, 0] == 3

    def test_rref(self):
        """测试行最简形"""
        result = rref(Mat(GF3, [[1, 1, 0], [1, 0, 2], [2, 1, 2]]))
        assert result.rank == 2
        assert result.pivots == [0, 1]
        assert result.reduced.tolist() == [["1", "0", "2"], ["0", "1", "1"], ["0", "0", "0"]]

    def test_tolist_and_entry(self):
        """测试文本导出与元素访问"""
        a = Mat.from_rows(GF4, [[0, 3], [2, 1]])
        assert a.tolist() == [["0:0", "1:1"], ["0:1", "1:0"]]
        assert a[1, 0] == 2

    def test_ragged_rows(self):
        """测试行长度不一致"""
        with pytest.raises(DimMismatch):
            Mat.from_rows(GF2, [[1, 0], [1]])


class TestLinearSystems:
    """线性方程组测试"""

    def test_kernel(self):
        """测试零空间"""
        ker = kernel(Mat(GF2, [[1, 1]]))
        assert ker.dim == 1
        assert ker.contains([1, 1])

    def test_solve_affine(self):
        """测试相容方程组"""
        a = Mat(GF3, [[1, 1]])
        solution = solve_affine(a, [2])
        assert solution is not None
        assert a @ solution.particular == Mat(GF3, [[2]])
        assert solution.nullspace.dim == 1

    def test_inconsistent_system(self):
        """测试不相容方程组"""
        assert solve_affine(Mat(GF2, [[0, 0]]), [1]) is None


class TestSubspace:
    """子空间测试"""

    def test_canonical_basis(self):
        """测试不同生成组给出同一子空间"""
        s = Subspace(GF3, 2, [[2, 1], [1, 2]])
        t = Subspace(GF3, 2, [[1, 2]])
        assert s == t
        assert s.basis.tolist() == [["1", "2"]]

    def test_sum_and_intersection(self):
        """测试和与交"""
        x = Subspace(GF2, 2, [[1, 0]])
        d = Subspace(GF2, 2, [[1, 1]])
        assert (x + d) == Subspace.full(GF2, 2)
        assert (x & d).dim == 0
        assert (x & (x + d)) == x

    def test_containment(self):
        """测试包含关系"""
        x = Subspace(GF2, 3, [[1, 0, 1]])
        assert x <= Subspace(GF2, 3, [[1, 0, 0], [0, 0, 1]])
        assert not x.contains([1, 0, 0])
        with pytest.raises(DimMismatch):
            x.contains([1, 0])

    def test_zero_dimensional_ambient(self):
        """测试零维空间"""
        s = Subspace.zero(GF2, 0)
        assert s.dim == 0
        assert s == Subspace.full(GF2, 0)

    def test_extend_basis(self):
        """测试扩充为全空间的基"""
        s = Subspace(GF3, 3, [[1, 1, 0]])
        basis = s.extend_basis()
        assert basis.shape == (3, 3)
        assert basis.is_invertible()
        assert basis.tolist()[0] == ["1", "1", "0"]

    def test_extend_basis_zero_ambient(self):
        """测试零维空间的基是 0×0 矩阵"""
        basis = Subspace.zero(GF2, 0).extend_basis(candidates=np.zeros((0, 0), dtype=np.int64))
        assert basis.shape == (0, 0)

    def test_vectors(self):
        """测试子空间元素枚举"""
        assert len(Subspace(GF3, 2, [[1, 2]]).vectors()) == 3


class TestEnumeration:
    """子空间与 GL 枚举测试"""

    @pytest.mark.parametrize("n,k,q,expected", [
        (2, 1, 2, 3), (4, 2, 2, 35), (3, 1, 3, 13), (3, 0, 5, 1), (2, 3, 2, 0)
    ])
    def test_gaussian_binomial(self, n, k, q, expected):
        """测试高斯二项式系数"""
        assert gaussian_binomial(n, k, q) == expected

    @pytest.mark.parametrize("field,n", [(GF2, 3), (GF3, 2), (GF4, 2)])
    def test_enumerate_subspaces(self, field, n):
        """测试子空间枚举无重复且个数正确"""
        spaces = list(enumerate_subspaces(n, field))
        assert len(spaces) == count_subspaces(n, field.q)
        assert len(set(spaces)) == len(spaces)

    def test_enumerate_gl(self):
        """测试 GL(n, q) 的阶"""
        assert len(list(enumerate_gl(GF2, 2))) == 6
        assert len(list(enumerate_gl(GF3, 2))) == 48
        group = list(enumerate_gl(GF2, 3))
        assert len(group) == 168
        assert len({g.key() for g in group}) == 168

    def test_enumerate_gl_too_large(self):
        """测试枚举规模上限"""
        with pytest.raises(TooLarge):
            next(enumerate_gl(GF2, 5))


class TestBlockAssembly:
    """分块拼装测试"""

    def test_block_diag(self):
        """测试分块对角矩阵"""
        a = Mat(GF2, [[0, 1], [1, 0]])
        d = block_diag(GF2, 1, a, 0)
        assert d.tolist() == [["1", "0", "0"], ["0", "0", "1"], ["0", "1", "0"]]

    def test_grid_mismatch(self):
        """测试格子与块尺寸不一致"""
        with pytest.raises(LayoutInconsistent):
            block_assemble(GF2, BlockLayout([1, 1], [1], [["identity"]]))

    def test_identity_cell_not_square(self):
        """测试非方阵的单位格"""
        with pytest.raises(LayoutInconsistent):
            block_assemble(GF2, BlockLayout([1], [2], [["identity"]]))

    def test_cell_shape(self):
        """测试格内矩阵形状"""
        with pytest.raises(LayoutInconsistent):
            block_assemble(GF2, BlockLayout([2], [2], [[Mat.identity(GF2, 1)]]))


class TestRandomMatrices:
    """随机矩阵的性质测试"""

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32 - 1), st.integers(min_value=1, max_value=4),
           st.sampled_from([2, 3, 4, 5]))
    def test_inverse_property(self, seed, n, q):
        """测试 A·A⁻¹ = A⁻¹·A = 1"""
        field = GF4 if q == 4 else field_make(q)
        a = random_invertible(field, n, np.random.default_rng(seed))
        assert a @ a.inverse() == Mat.identity(field, n)
        assert a.inverse() @ a == Mat.identity(field, n)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32 - 1), st.integers(min_value=1, max_value=4),
           st.integers(min_value=1, max_value=4))
    def test_rank_nullity(self, seed, rows, cols):
        """测试秩与零空间维数之和等于列数"""
        a = random_matrix(GF3, rows, cols, np.random.default_rng(seed))
        assert a.rank() + kernel(a).dim == cols
        for v in kernel(a).basis.data:
            assert not (a @ Mat(GF3, v.reshape(-1, 1))).data.any()
