"""
Colligation 与传递函数

colligation 是 (m+n)×(m+n) 可逆分块矩阵 g = (a b; c d)，其中 a 为 m×m。
∘ 乘法把两个 colligation 的内部空间直和起来，传递函数
χ_g(λ) = a + λ·b·(1 − λ·d)^{-1}·c 在每个使 1 − λ·d 可逆的 λ 上相乘。
"""

from typing import List, Optional, Tuple

import numpy as np

from .exceptions import BlockMismatch, FieldMismatch, Singular, SingularPencil
from .gf import FieldSpec, Scalar, ScalarLike
from .linalg import BlockLayout, Mat, block_assemble, block_diag, random_invertible


class Colligation:
    """分块矩阵 (a b; c d)，外部尺寸 m，内部尺寸 inner"""

    def __init__(self, m: int, mat: Mat, check_invertible: bool = True):
        if m < 0 or not mat.is_square or mat.rows < m:
            raise BlockMismatch(f"cannot split {mat.shape} with outer size {m}")
        if check_invertible and not mat.is_invertible():
            raise Singular("colligation matrix is not invertible")
        self.m = m
        self.mat = mat

    @property
    def field(self) -> FieldSpec:
        return self.mat.field

    @property
    def inner(self) -> int:
        return self.mat.rows - self.m

    @property
    def a(self) -> Mat:
        return self.mat.block(0, self.m, 0, self.m)

    @property
    def b(self) -> Mat:
        return self.mat.block(0, self.m, self.m, self.mat.cols)

    @property
    def c(self) -> Mat:
        return self.mat.block(self.m, self.mat.rows, 0, self.m)

    @property
    def d(self) -> Mat:
        return self.mat.block(self.m, self.mat.rows, self.m, self.mat.cols)

    @classmethod
    def identity(cls, field: FieldSpec, m: int, inner: int) -> "Colligation":
        return cls(m, Mat.identity(field, m + inner), check_invertible=False)

    @classmethod
    def random(cls, field: FieldSpec, m: int, inner: int, rng: np.random.Generator) -> "Colligation":
        return cls(m, random_invertible(field, m + inner, rng), check_invertible=False)

    def pad(self, k: int) -> "Colligation":
        """diag(g, 1_k) 代表同一个共轭类"""
        return Colligation(self.m, block_diag(self.field, self.mat, k), check_invertible=False)

    def conjugate(self, h: Mat) -> "Colligation":
        """diag(1_m, h)·g·diag(1_m, h)^{-1}"""
        if h.shape != (self.inner, self.inner):
            raise BlockMismatch(f"conjugator {h.shape} does not match inner size {self.inner}")
        outer = block_diag(self.field, self.m, h)
        return Colligation(self.m, outer @ self.mat @ outer.inverse(), check_invertible=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Colligation):
            return NotImplemented
        return self.m == other.m and self.mat == other.mat

    def __repr__(self) -> str:
        return f"Colligation(m={self.m}, inner={self.inner})"


def circ(g: Colligation, h: Colligation) -> Colligation:
    """
    ∘ 乘法

    结果分块为 (ap b aq; cp d cq; r 0 t)，内部尺寸为 g.inner + h.inner。

    Raises:
        BlockMismatch: 外部尺寸不同
    """
    if g.m != h.m:
        raise BlockMismatch(f"outer sizes differ: {g.m} vs {h.m}")
    if g.field != h.field:
        raise FieldMismatch(f"{g.field!r} vs {h.field!r}")
    f, m, n1, n2 = g.field, g.m, g.inner, h.inner
    sizes = [m, n1, n2]
    left = block_assemble(f, BlockLayout(sizes, sizes, [
        [g.a, g.b, None],
        [g.c, g.d, None],
        [None, None, "identity"],
    ]))
    right = block_assemble(f, BlockLayout(sizes, sizes, [
        [h.a, None, h.b],
        [None, "identity", None],
        [h.c, None, h.d],
    ]))
    return Colligation(m, left @ right, check_invertible=False)


def transfer(g: Colligation, lam: ScalarLike) -> Mat:
    """
    传递函数 χ_g(λ) = a + λ·b·(1 − λ·d)^{-1}·c

    Raises:
        SingularPencil: 1 − λ·d 不可逆
    """
    f = g.field
    lam = f.element(lam)
    pencil = Mat.identity(f, g.inner) - g.d.scale(lam)
    try:
        resolvent = pencil.inverse()
    except Singular:
        raise SingularPencil(f"1 - lambda*d is singular at lambda={lam}", str(lam))
    return g.a + (g.b @ resolvent @ g.c).scale(lam)


def transfer_sweep(g: Colligation) -> List[Tuple[Scalar, Optional[Mat]]]:
    """遍历 F_q 的全部 λ；奇异点给出 None"""
    values = []
    for lam in g.field.elements():
        try:
            values.append((lam, transfer(g, lam)))
        except SingularPencil:
            values.append((lam, None))
    return values


def transfer_agree(g: Colligation, h: Colligation) -> bool:
    """在两者都可取值的每个 λ 上传递函数相等"""
    for (_, x), (_, y) in zip(transfer_sweep(g), transfer_sweep(h)):
        if x is not None and y is not None and x != y:
            return False
    return True


def transfer_conjugation_invariance(g: Colligation, h: Mat) -> bool:
    """共轭不改变传递函数，也不改变奇异点集合"""
    conjugated = g.conjugate(h)
    for (_, x), (_, y) in zip(transfer_sweep(g), transfer_sweep(conjugated)):
        if (x is None) != (y is None):
            return False
        if x is not None and x != y:
            return False
    return True
