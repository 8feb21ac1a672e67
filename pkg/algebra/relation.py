"""
线性关系范畴

线性关系 P: V ⇉ W 是 V ⊕ W 的子空间，坐标顺序为（源 | 目标）。
复合通过三重直和中的子空间求交再投影得到；五个不变量按需计算并缓存。
"""

from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from .exceptions import DimMismatch, FieldMismatch
from .gf import FieldSpec
from .linalg import Mat, Subspace, enumerate_subspaces


class RelInvariants(NamedTuple):
    ker: Subspace
    im: Subspace
    dom: Subspace
    indef: Subspace
    rk: int


class LinRel:
    """线性关系 F^m ⇉ F^n"""

    def __init__(self, m: int, n: int, space: Subspace):
        if space.ambient != m + n:
            raise DimMismatch(f"relation space lives in F^{space.ambient}, expected F^{m + n}")
        self.m = m
        self.n = n
        self.space = space

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    @property
    def src_dim(self) -> int:
        return self.m

    @property
    def tgt_dim(self) -> int:
        return self.n

    @property
    def dim(self) -> int:
        return self.space.dim

    # ---- 构造 ----

    @classmethod
    def from_rows(cls, field: FieldSpec, m: int, n: int, rows) -> "LinRel":
        return cls(m, n, Subspace(field, m + n, rows))

    @classmethod
    def graph(cls, t: Mat) -> "LinRel":
        """算子 T: F^m → F^n（n×m 矩阵）的图像 {(v, Tv)}"""
        n, m = t.shape
        rows = np.hstack([np.eye(m, dtype=np.int64), t.data.T])
        return cls(m, n, Subspace(t.field, m + n, rows))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "LinRel":
        return cls.graph(Mat.identity(field, n))

    @classmethod
    def zero(cls, field: FieldSpec, m: int, n: int) -> "LinRel":
        return cls(m, n, Subspace.zero(field, m + n))

    @classmethod
    def full(cls, field: FieldSpec, m: int, n: int) -> "LinRel":
        return cls(m, n, Subspace.full(field, m + n))

    # ---- 不变量 ----

    @property
    def _src_cols(self):
        return list(range(self.m))

    @property
    def _tgt_cols(self):
        return list(range(self.m, self.m + self.n))

    @cached_property
    def ker(self) -> Subspace:
        """ker P = P ∩ (V ⊕ 0)，在 V 中读取"""
        axis = Subspace.full(self.field, self.m).embed(self.m + self.n, self._src_cols)
        return (self.space & axis).project(self._src_cols)

    @cached_property
    def indef(self) -> Subspace:
        """indef P = P ∩ (0 ⊕ W)，在 W 中读取"""
        axis = Subspace.full(self.field, self.n).embed(self.m + self.n, self._tgt_cols)
        return (self.space & axis).project(self._tgt_cols)

    @cached_property
    def dom(self) -> Subspace:
        return self.space.project(self._src_cols)

    @cached_property
    def im(self) -> Subspace:
        return self.space.project(self._tgt_cols)

    @property
    def rk(self) -> int:
        return self.dim - self.ker.dim - self.indef.dim

    def invariants(self) -> RelInvariants:
        return RelInvariants(self.ker, self.im, self.dom, self.indef, self.rk)

    # ---- 运算 ----

    def compose(self, other: "LinRel") -> "LinRel":
        """self ∘ other：先 other 后 self"""
        return rel_compose(self, other)

    def __matmul__(self, other: "LinRel") -> "LinRel":
        return rel_compose(self, other)

    def pseudoinverse(self) -> "LinRel":
        """P^□：交换两组坐标"""
        data = self.space.basis.data
        swapped = np.hstack([data[:, self.m:], data[:, :self.m]])
        return LinRel(self.n, self.m, Subspace(self.field, self.m + self.n, swapped))

    def transform(self, s: Mat, r: Mat) -> "LinRel":
        """(v, w) ↦ (S·v, R·w)，S ∈ GL(m)，R ∈ GL(n)"""
        if s.shape != (self.m, self.m) or r.shape != (self.n, self.n):
            raise DimMismatch(f"transform needs {self.m}x{self.m} and {self.n}x{self.n}")
        data = self.space.basis.data
        f = self.field
        moved = np.hstack([f.matmul(data[:, :self.m], s.data.T), f.matmul(data[:, self.m:], r.data.T)])
        return LinRel(self.m, self.n, Subspace(f, self.m + self.n, moved))

    def is_graph(self) -> bool:
        return self.indef.dim == 0 and self.dom.dim == self.m

    # ---- 比较 ----

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinRel):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.space == other.space

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.space))

    def __repr__(self) -> str:
        return f"LinRel({self.m}->{self.n}, basis={self.space.basis.tolist()})"


def rel_compose(q: LinRel, p: LinRel) -> LinRel:
    """
    线性关系复合 QP

    在 V ⊕ W ⊕ Y 中求 (P ⊕ Y) ∩ (V ⊕ Q)，再投影到 V ⊕ Y。

    Raises:
        DimMismatch: p 的目标维数与 q 的源维数不等
    """
    if p.n != q.m:
        raise DimMismatch(f"cannot compose {q.m}->{q.n} after {p.m}->{p.n}", {"p_target": p.n, "q_source": q.m})
    if p.field != q.field:
        raise FieldMismatch(f"{p.field!r} vs {q.field!r}")
    field = p.field
    m, k, n = p.m, p.n, q.n
    total = m + k + n
    left = p.space.embed(total, range(m + k)) + Subspace.full(field, n).embed(total, range(m + k, total))
    right = Subspace.full(field, m).embed(total, range(m)) + q.space.embed(total, range(m, total))
    meet = left & right
    cols = list(range(m)) + list(range(m + k, total))
    return LinRel(m, n, meet.project(cols))


def rel_invariants(p: LinRel) -> RelInvariants:
    return p.invariants()


def rel_pseudoinverse(p: LinRel) -> LinRel:
    return p.pseudoinverse()


def enumerate_relations(m: int, n: int, field: FieldSpec) -> Iterator[LinRel]:
    """F^m ⇉ F^n 的全部线性关系，每个恰好一次"""
    for space in enumerate_subspaces(m + n, field):
        yield LinRel(m, n, space)
