"""
双陪集范畴

对象是整数对 α = (α_-, α_+)，态射 β → α 以不变量对 (χ, η) 存储，
其中 χ: F^|β| ⇉ F^|α| 是特征线性关系，η ≥ 0。窗口（Window）是态射的有限截断
矩阵代表，仅用于矩阵路径的交叉验证。

κ 表约定：κ[i][j] 统计 0-1 代表矩阵中从源块 j 到目标块 i 的单位对应个数，
行和给出目标尺寸 (N_-, |α|, N_+)，列和给出源尺寸 (M_-, |β|, M_+)。
于是 rk χ = κ22，dim ker χ = κ12，dim indef χ = κ21，η = κ31，η* = κ13。
"""

import dataclasses
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, model_validator

from .exceptions import (
    DimMismatch, FieldMismatch, InvariantViolation, NotComparable, NotComposable, Singular
)
from .gf import FieldSpec
from .linalg import (
    BlockLayout, Mat, Subspace, block_assemble, block_diag, kernel, random_invertible,
    random_matrix, solve_affine
)
from .relation import LinRel, enumerate_relations

logger = structlog.get_logger(__name__)


class ObjectA(BaseModel):
    """范畴的对象 α = (α_-, α_+)，α_- ≤ α_+"""

    model_config = ConfigDict(frozen=True)

    lo: int
    hi: int

    @model_validator(mode="after")
    def validate_order(self):
        if self.lo > self.hi:
            raise ValueError(f"object requires lo <= hi, got ({self.lo}, {self.hi})")
        return self

    @classmethod
    def of(cls, lo: int, hi: int) -> "ObjectA":
        return cls(lo=lo, hi=hi)

    @property
    def size(self) -> int:
        return self.hi - self.lo

    def shift(self, m: int) -> "ObjectA":
        return ObjectA(lo=self.lo + m, hi=self.hi + m)

    def __str__(self) -> str:
        return f"({self.lo},{self.hi})"


def precedes(b: ObjectA, a: ObjectA) -> bool:
    """b ≺ a 当且仅当 α_- ≤ β_- 且 β_+ ≤ α_+"""
    return a.lo <= b.lo and b.hi <= a.hi


class Window:
    """
    截断矩阵代表

    mat 的行按 (N_-, |α|, N_+) 分块（目标），列按 (M_-, |β|, M_+) 分块（源）。
    """

    def __init__(
        self,
        alpha: ObjectA,
        beta: ObjectA,
        n_minus: int,
        n_plus: int,
        m_minus: int,
        m_plus: int,
        mat: Mat,
        check_invertible: bool = True,
    ):
        if min(n_minus, n_plus, m_minus, m_plus) < 0:
            raise DimMismatch("window paddings must be non-negative")
        if n_minus - alpha.lo != m_minus - beta.lo or n_plus + alpha.hi != m_plus + beta.hi:
            raise DimMismatch(
                "window sizes violate block compatibility",
                {"sizes": [n_minus, alpha.size, n_plus, m_minus, beta.size, m_plus],
                 "alpha": [alpha.lo, alpha.hi], "beta": [beta.lo, beta.hi]}
            )
        expected = (n_minus + alpha.size + n_plus, m_minus + beta.size + m_plus)
        if mat.shape != expected:
            raise DimMismatch(f"window matrix has shape {mat.shape}, expected {expected}")
        if check_invertible and not mat.is_invertible():
            raise Singular("window matrix is not invertible")
        self.alpha = alpha
        self.beta = beta
        self.n_minus = n_minus
        self.n_plus = n_plus
        self.m_minus = m_minus
        self.m_plus = m_plus
        self.mat = mat

    @property
    def field(self) -> FieldSpec:
        return self.mat.field

    @property
    def row_split(self) -> Tuple[int, int, int]:
        return self.n_minus, self.alpha.size, self.n_plus

    @property
    def col_split(self) -> Tuple[int, int, int]:
        return self.m_minus, self.beta.size, self.m_plus

    def blocks(self) -> List[List[Mat]]:
        """3×3 分块 a_ij"""
        r = np.cumsum([0, *self.row_split])
        c = np.cumsum([0, *self.col_split])
        return [[self.mat.block(r[i], r[i + 1], c[j], c[j + 1]) for j in range(3)] for i in range(3)]

    def inverse(self) -> "Window":
        """逆矩阵窗口，实现对合 𝔞 ↦ 𝔞*"""
        return Window(
            self.beta, self.alpha, self.m_minus, self.m_plus, self.n_minus, self.n_plus,
            self.mat.inverse(), check_invertible=False
        )

    def pad(self, extra_minus: int, extra_plus: int) -> "Window":
        return pad(self, extra_minus, extra_plus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Window):
            return NotImplemented
        return (
            self.alpha == other.alpha and self.beta == other.beta
            and self.row_split == other.row_split and self.col_split == other.col_split
            and self.mat == other.mat
        )

    def __repr__(self) -> str:
        return (f"Window({self.beta}->{self.alpha}, {self.n_minus} {self.alpha.size} {self.n_plus} / "
                f"{self.m_minus} {self.beta.size} {self.m_plus})")


def eta_lower_bound(alpha: ObjectA, beta: ObjectA, chi: LinRel) -> int:
    """η 的下界 β_- − α_- + dim ker χ − dim indef χ"""
    return beta.lo - alpha.lo + chi.ker.dim - chi.indef.dim


class Coset:
    """态射 β → α，以 (χ, η) 存储"""

    def __init__(self, alpha: ObjectA, beta: ObjectA, chi: LinRel, eta: int):
        if chi.m != beta.size or chi.n != alpha.size:
            raise DimMismatch(
                f"characteristic relation {chi.m}->{chi.n} does not fit {beta}->{alpha}"
            )
        if eta < 0:
            raise InvariantViolation(f"eta must be non-negative, got {eta}")
        bound = eta_lower_bound(alpha, beta, chi)
        if eta < bound:
            raise InvariantViolation(
                f"eta={eta} is below the lower bound {bound}",
                {"eta": eta, "bound": bound}
            )
        self.alpha = alpha
        self.beta = beta
        self.chi = chi
        self.eta = int(eta)

    @property
    def field(self) -> FieldSpec:
        return self.chi.field

    @property
    def eta_star(self) -> int:
        """η(𝔞*) = η + dim indef − dim ker − β_- + α_-"""
        return self.eta + self.chi.indef.dim - self.chi.ker.dim - self.beta.lo + self.alpha.lo

    @property
    def xi(self) -> int:
        return self.eta + self.chi.indef.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coset):
            return NotImplemented
        return (self.alpha, self.beta, self.eta) == (other.alpha, other.beta, other.eta) and self.chi == other.chi

    def __hash__(self) -> int:
        return hash((self.alpha, self.beta, self.chi, self.eta))

    def __repr__(self) -> str:
        return f"Coset({self.beta}->{self.alpha}, chi={self.chi.space.basis.tolist()}, eta={self.eta})"


# ---- 矩阵路径 ----

def coset_from_window(w: Window) -> Coset:
    """
    从窗口读出 (χ, η)

    χ = {(v, a21·y + a22·v) : a31·y + a32·v = 0}，η = rank a31。
    """
    f = w.field
    (_, _, _), (a21, a22, _), (a31, a32, _) = w.blocks()
    m_minus, b = w.m_minus, w.beta.size
    constraint = Mat(f, np.hstack([a31.data, a32.data]))
    solutions = kernel(constraint).basis.data
    ys, vs = solutions[:, :m_minus], solutions[:, m_minus:]
    ws = f.add(f.matmul(ys, a21.data.T), f.matmul(vs, a22.data.T))
    chi = LinRel(b, w.alpha.size, Subspace(f, b + w.alpha.size, np.hstack([vs, ws])))
    return Coset(w.alpha, w.beta, chi, a31.rank())


def window_xi(w: Window) -> int:
    """rank [a21; a31]，应与 ξ = η + dim indef χ 一致"""
    (_, _, _), (a21, _, _), (a31, _, _) = w.blocks()
    return Mat(w.field, np.vstack([a21.data, a31.data])).rank()


def pad(w: Window, extra_minus: int, extra_plus: int) -> Window:
    """diag(1_μ, A, 1_ν) 给出同一个双陪集"""
    if extra_minus < 0 or extra_plus < 0:
        raise DimMismatch("padding sizes must be non-negative")
    if extra_minus == 0 and extra_plus == 0:
        return w
    return Window(
        w.alpha, w.beta,
        w.n_minus + extra_minus, w.n_plus + extra_plus,
        w.m_minus + extra_minus, w.m_plus + extra_plus,
        block_diag(w.field, extra_minus, w.mat, extra_plus),
        check_invertible=False,
    )


def star_matrix(a: Window, b: Window) -> Window:
    """
    矩阵路径的 ⋆ 乘法

    先把 A 的源尺寸与 B 的目标尺寸补齐到 (M_-, M_+)，再计算 A°·B◊。

    Raises:
        NotComposable: a 的源对象不等于 b 的目标对象
    """
    if a.beta != b.alpha:
        raise NotComposable(f"cannot compose {a.beta}->{a.alpha} after {b.beta}->{b.alpha}")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    f = a.field
    big_minus = max(a.m_minus, b.n_minus)
    big_plus = max(a.m_plus, b.n_plus)
    a = pad(a, big_minus - a.m_minus, big_plus - a.m_plus)
    b = pad(b, big_minus - b.n_minus, big_plus - b.n_plus)

    a_circ = block_diag(f, big_minus, a.mat, big_plus)
    (b11, b12, b13), (b21, b22, b23), (b31, b32, b33) = b.blocks()
    mid = a.beta.size
    b_lozenge = block_assemble(f, BlockLayout(
        [big_minus, big_minus, mid, big_plus, big_plus],
        [b.m_minus, big_minus, b.beta.size, big_plus, b.m_plus],
        [
            [b11, None, b12, None, b13],
            [None, "identity", None, None, None],
            [b21, None, b22, None, b23],
            [None, None, None, "identity", None],
            [b31, None, b32, None, b33],
        ],
    ))
    return Window(
        a.alpha, b.beta,
        big_minus + a.n_minus, a.n_plus + big_plus,
        b.m_minus + big_minus, big_plus + b.m_plus,
        a_circ @ b_lozenge,
        check_invertible=False,
    )


# ---- 不变量路径 ----

def star(a: Coset, b: Coset) -> Coset:
    """
    不变量路径的 ⋆ 乘法

    χ = χ(a)·χ(b)，η = η(a) + η(b) + dim indef χ(b) − dim(indef χ(b) ∩ dom χ(a))。
    """
    if a.beta != b.alpha:
        raise NotComposable(f"cannot compose {a.beta}->{a.alpha} after {b.beta}->{b.alpha}")
    indef_b = b.chi.indef
    correction = indef_b.dim - (indef_b & a.chi.dom).dim
    return Coset(a.alpha, b.beta, a.chi @ b.chi, a.eta + b.eta + correction)


def involute(c: Coset) -> Coset:
    return Coset(c.beta, c.alpha, c.chi.pseudoinverse(), c.eta_star)


def xi(c: Coset) -> int:
    return c.xi


# ---- 结构性态射 ----

def identity_window(alpha: ObjectA, field: FieldSpec) -> Window:
    return Window(alpha, alpha, 0, 0, 0, 0, Mat.identity(field, alpha.size), check_invertible=False)


def identity_coset(alpha: ObjectA, field: FieldSpec) -> Coset:
    return Coset(alpha, alpha, LinRel.identity(field, alpha.size), 0)


def zeta_window(alpha: ObjectA, k: int, field: FieldSpec) -> Window:
    """中心元 ζ_α^k 的窗口：块 (k, |α|, k) 上的反对角单位阵"""
    if k < 0:
        raise DimMismatch(f"k must be non-negative, got {k}")
    a = alpha.size
    mat = block_assemble(field, BlockLayout(
        [k, a, k], [k, a, k],
        [[None, None, "identity"], [None, "identity", None], ["identity", None, None]],
    ))
    return Window(alpha, alpha, k, k, k, k, mat, check_invertible=False)


def zeta(alpha: ObjectA, k: int, field: FieldSpec) -> Coset:
    if k < 0:
        raise DimMismatch(f"k must be non-negative, got {k}")
    return Coset(alpha, alpha, LinRel.identity(field, alpha.size), k)


def lambda_window(alpha: ObjectA, beta: ObjectA, field: FieldSpec) -> Window:
    """β ≺ α 时的单位窗口 β → α"""
    if not precedes(beta, alpha):
        raise NotComparable(f"{beta} does not precede {alpha}")
    return Window(
        alpha, beta, 0, 0, beta.lo - alpha.lo, alpha.hi - beta.hi,
        Mat.identity(field, alpha.size), check_invertible=False
    )


class OrderedMorphisms(NamedTuple):
    lam: Coset
    mu: Coset
    theta: Coset


def lambda_mu_theta(alpha: ObjectA, beta: ObjectA, field: FieldSpec) -> OrderedMorphisms:
    """λ: β → α，μ = λ*，θ = λ⋆μ"""
    lam = coset_from_window(lambda_window(alpha, beta, field))
    mu = involute(lam)
    return OrderedMorphisms(lam, mu, star(lam, mu))


def shift_morphism(delta: ObjectA, m: int, field: FieldSpec) -> Coset:
    """δ → δ+m，χ 为恒等关系，η = max(0, −m)"""
    return Coset(delta.shift(m), delta, LinRel.identity(field, delta.size), max(0, -m))


def embed_endomorphism(p: Coset, alpha: ObjectA) -> Coset:
    """End(β) → End(α)：p ↦ λ⋆p⋆μ"""
    if p.alpha != p.beta:
        raise NotComposable(f"{p.beta}->{p.alpha} is not an endomorphism")
    lam, mu, _ = lambda_mu_theta(alpha, p.beta, p.field)
    return star(star(lam, p), mu)


# ---- κ 表与标准形 ----

@dataclass(frozen=True)
class KappaTable:
    """
    3×3 块尺寸表；κ[i][j] 从源块 j 指向目标块 i

    给出 alpha/beta 时还要求中间行和为 |α|、中间列和为 |β|，且两侧补齐满足块相容条件；
    负侧条件即 κ13 = κ21 + κ31 − κ12 + α_- − β_-。
    """

    k: Tuple[Tuple[int, int, int], ...]
    n_minus: int
    n_plus: int
    m_minus: int
    m_plus: int
    alpha: Optional[ObjectA] = dataclasses.field(default=None, compare=False)
    beta: Optional[ObjectA] = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        k = self.k
        if len(k) != 3 or any(len(row) != 3 for row in k):
            raise InvariantViolation("kappa table must be 3x3")
        if any(x < 0 for row in k for x in row):
            raise InvariantViolation("kappa entries must be non-negative", {"k": [list(r) for r in k]})
        rows = [sum(row) for row in k]
        cols = [sum(k[i][j] for i in range(3)) for j in range(3)]
        if (rows[0], rows[2]) != (self.n_minus, self.n_plus) or (cols[0], cols[2]) != (self.m_minus, self.m_plus):
            raise InvariantViolation(
                "kappa sums do not match the window sizes",
                {"rows": rows, "cols": cols,
                 "sizes": [self.n_minus, self.n_plus, self.m_minus, self.m_plus]}
            )
        if self.alpha is not None and rows[1] != self.alpha.size:
            raise InvariantViolation(
                f"middle row sum {rows[1]} does not match |alpha|={self.alpha.size}", {"rows": rows}
            )
        if self.beta is not None and cols[1] != self.beta.size:
            raise InvariantViolation(
                f"middle column sum {cols[1]} does not match |beta|={self.beta.size}", {"cols": cols}
            )
        if self.alpha is not None and self.beta is not None:
            alpha, beta = self.alpha, self.beta
            if self.n_minus - alpha.lo != self.m_minus - beta.lo or self.n_plus + alpha.hi != self.m_plus + beta.hi:
                raise InvariantViolation(
                    "kappa table violates block compatibility",
                    {"k": [list(r) for r in k], "alpha": [alpha.lo, alpha.hi], "beta": [beta.lo, beta.hi]}
                )

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        """一基下标：table[2, 1] 即 κ21"""
        i, j = ij
        return self.k[i - 1][j - 1]

    @property
    def a_size(self) -> int:
        return sum(self.k[1])

    @property
    def b_size(self) -> int:
        return sum(row[1] for row in self.k)

    @property
    def row_sums(self) -> List[int]:
        return [sum(row) for row in self.k]

    @property
    def col_sums(self) -> List[int]:
        return [sum(self.k[i][j] for i in range(3)) for j in range(3)]

    def transpose(self) -> "KappaTable":
        kt = tuple(tuple(self.k[j][i] for j in range(3)) for i in range(3))
        return KappaTable(kt, self.m_minus, self.m_plus, self.n_minus, self.n_plus, self.beta, self.alpha)

    def tolist(self) -> List[List[int]]:
        return [list(row) for row in self.k]


def cone_contains(alpha: ObjectA, beta: ObjectA, k21: int, k22: int, k31: int, k12: int) -> bool:
    """角值 (κ21, κ22, κ31, κ12) 是否落在锥 Δ 内"""
    if min(k21, k22, k31, k12) < 0:
        return False
    if k12 + k22 > beta.size or k21 + k22 > alpha.size:
        return False
    return k21 + k31 - k12 >= beta.lo - alpha.lo


def kappa_from_corners(alpha: ObjectA, beta: ObjectA, k21: int, k22: int, k31: int, k12: int) -> KappaTable:
    """
    由四个角值补全 κ 表（κ11 = κ33 = 0 的最小尺寸）

    Raises:
        InvariantViolation: 角值不在锥 Δ 内
    """
    k11, k33 = 0, 0
    k32 = beta.size - k12 - k22
    k23 = alpha.size - k21 - k22
    k13 = k21 + k31 - k12 - beta.lo + alpha.lo
    entries = ((k11, k12, k13), (k21, k22, k23), (k31, k32, k33))
    if min(k21, k22, k31, k12) < 0 or min(k13, k23, k32) < 0:
        raise InvariantViolation(
            "corner values lie outside the cone",
            {"corners": [k21, k22, k31, k12], "k": [list(r) for r in entries]}
        )
    return KappaTable(entries, k12 + k13, k31 + k32, k21 + k31, k13 + k23, alpha, beta)


def canonical_kappa(c: Coset) -> KappaTable:
    chi = c.chi
    return kappa_from_corners(c.alpha, c.beta, chi.indef.dim, chi.rk, c.eta, chi.ker.dim)


def kappa_tables(n_minus: int, a: int, n_plus: int, m_minus: int, b: int, m_plus: int) -> List[KappaTable]:
    """给定行和 (N_-, |α|, N_+) 与列和 (M_-, |β|, M_+) 的全部 κ 表"""
    if n_minus + a + n_plus != m_minus + b + m_plus:
        return []
    tables = []
    for k22 in range(min(a, b) + 1):
        for k12 in range(b - k22 + 1):
            for k21 in range(a - k22 + 1):
                for k31 in range(m_minus - k21 + 1):
                    k32 = b - k12 - k22
                    k23 = a - k21 - k22
                    k11 = m_minus - k21 - k31
                    k13 = n_minus - k11 - k12
                    k33 = n_plus - k31 - k32
                    if min(k13, k33) < 0:
                        continue
                    entries = ((k11, k12, k13), (k21, k22, k23), (k31, k32, k33))
                    tables.append(KappaTable(entries, n_minus, n_plus, m_minus, m_plus))
    return tables


def j_kappa(table: KappaTable, field: FieldSpec) -> Mat:
    """
    0-1 标准代表 J_κ

    行块按 (i, j) 排列，列块按 (j, i) 排列，二者相同时放单位阵。
    """
    k = table.k
    row_keys = [(i, j) for i in range(3) for j in range(3)]
    col_keys = [(i, j) for j in range(3) for i in range(3)]
    cells = [["identity" if rk == ck else None for ck in col_keys] for rk in row_keys]
    return block_assemble(field, BlockLayout(
        [k[i][j] for i, j in row_keys], [k[i][j] for i, j in col_keys], cells
    ))


def j_kappa_window(table: KappaTable, alpha: ObjectA, beta: ObjectA, field: FieldSpec) -> Window:
    if table.a_size != alpha.size or table.b_size != beta.size:
        raise DimMismatch(
            f"kappa table sizes {table.a_size}/{table.b_size} do not match {alpha}/{beta}"
        )
    if (table.alpha is not None and table.alpha != alpha) or (table.beta is not None and table.beta != beta):
        raise DimMismatch(f"kappa table was built for {table.beta}->{table.alpha}, not {beta}->{alpha}")
    return Window(
        alpha, beta, table.n_minus, table.n_plus, table.m_minus, table.m_plus,
        j_kappa(table, field), check_invertible=False
    )


def canonical_window(c: Coset) -> Window:
    """
    (χ, η) 的标准窗口 diag(1, R, 1)·J_κ·diag(1, S, 1)^{-1}

    S 的列依次为 ker χ 的基、dom χ 中 ker 的补、其余；R 的列依次为 indef χ 的基、
    与 S 的第二组列配对的向量、其余。所有补全都按行最简形顺序贪心选取。
    """
    f = c.field
    table = canonical_kappa(c)
    chi = c.chi
    b, a = c.beta.size, c.alpha.size
    k12, k22 = table[1, 2], table[2, 2]

    s_rows = chi.ker.extend_basis(candidates=chi.dom.basis.data)
    paired_src = s_rows.data[k12:k12 + k22]

    basis = chi.space.basis.data
    src_part = Mat(f, basis[:, :b].T)
    paired_tgt = []
    for d in paired_src:
        solution = solve_affine(src_part, Mat(f, d.reshape(-1, 1)))
        if solution is None:
            raise InvariantViolation("domain vector has no partner in the relation")
        coeffs = solution.particular.data.T
        paired_tgt.append(f.matmul(coeffs, basis[:, b:])[0])
    r_rows = chi.indef.extend_basis(candidates=paired_tgt)

    s_mat = Mat(f, s_rows.data.T)
    r_mat = Mat(f, r_rows.data.T)
    if s_mat.shape != (b, b) or r_mat.shape != (a, a):
        raise InvariantViolation("basis adaptation did not produce square matrices")

    left = block_diag(f, table.n_minus, r_mat, table.n_plus)
    right = block_diag(f, table.m_minus, s_mat, table.m_plus).inverse()
    logger.debug("Canonical window built", kappa=table.tolist())
    return Window(
        c.alpha, c.beta, table.n_minus, table.n_plus, table.m_minus, table.m_plus,
        left @ j_kappa(table, f) @ right, check_invertible=False
    )


# ---- 测度与枚举 ----

def measure_weight(c: Coset) -> int:
    """点质量的指数（底为 q）：β_- − η − dim indef χ"""
    return c.beta.lo - c.eta - c.chi.indef.dim


def measure_projections(c: Coset) -> Tuple[int, int]:
    """投影到 β 侧与 α 侧的指数：(β_- − η, α_- − η*)"""
    return c.beta.lo - c.eta, c.alpha.lo - c.eta_star


def enumerate_cosets(beta: ObjectA, alpha: ObjectA, eta_max: int, field: FieldSpec) -> List[Coset]:
    """全部 (χ, η)，η 从下界（截断到 0）取到 eta_max"""
    result = []
    for chi in enumerate_relations(beta.size, alpha.size, field):
        low = max(0, eta_lower_bound(alpha, beta, chi))
        for eta in range(low, eta_max + 1):
            result.append(Coset(alpha, beta, chi, eta))
    return result


# ---- 子群 Q̃ 的生成元 ----

class GeneratorFamily(Enum):
    """Q̃ 的四类生成元"""
    SCALE = "scale"
    PHI = "phi"
    THETA = "theta"
    PSI = "psi"


def in_q_group(mat: Mat, minus: int, mid: int, plus: int) -> bool:
    """mat 是否属于分块 (minus, mid, plus) 下的截断子群 Q̃"""
    n = minus + mid + plus
    if mat.shape != (n, n):
        return False
    d = mat.data
    lo, hi = minus, minus + mid
    if d[lo:, :lo].any() or d[hi:, lo:hi].any():
        return False
    if not np.array_equal(d[lo:hi, lo:hi], np.eye(mid, dtype=np.int64)):
        return False
    return mat.is_invertible()


def q_generator(
    family: GeneratorFamily, minus: int, mid: int, plus: int, field: FieldSpec, rng: np.random.Generator
) -> Mat:
    """从指定生成元族中随机取一个元素"""
    cells: List[List[object]] = [
        [None, None, None], [None, "identity", None], [None, None, None]
    ]
    if family is GeneratorFamily.SCALE:
        cells[0][0] = random_invertible(field, minus, rng)
        cells[2][2] = random_invertible(field, plus, rng)
    else:
        cells[0][0], cells[2][2] = "identity", "identity"
        if family is GeneratorFamily.PHI:
            cells[0][1] = random_matrix(field, minus, mid, rng)
        elif family is GeneratorFamily.THETA:
            cells[0][2] = random_matrix(field, minus, plus, rng)
        else:
            cells[1][2] = random_matrix(field, mid, plus, rng)
    sizes = [minus, mid, plus]
    return block_assemble(field, BlockLayout(sizes, sizes, cells))


def _elementary(field: FieldSpec, n: int, i: int, j: int, code: int) -> Mat:
    data = np.eye(n, dtype=np.int64)
    data[i, j] = code
    return Mat(field, data)


def q_generators(minus: int, mid: int, plus: int, field: FieldSpec, include_middle: bool = False) -> List[Mat]:
    """
    Q̃ 的初等生成元集合

    对角块内取全部初等变换，φ、θ、ψ 位置取单个非零元。
    include_middle 时加入中间块的 GL(|α|)，得到的是更大的块对角扩张群。
    """
    n = minus + mid + plus
    blocks = {"minus": range(0, minus), "mid": range(minus, minus + mid), "plus": range(minus + mid, n)}
    nonzero = list(field.nonzero_codes())
    gens = []

    diagonal = ["minus", "plus"] + (["mid"] if include_middle else [])
    for name in diagonal:
        idx = blocks[name]
        for i, j in itertools.product(idx, idx):
            for c in nonzero:
                if i != j:
                    gens.append(_elementary(field, n, i, j, c))
                elif c != 1:
                    gens.append(_elementary(field, n, i, i, c))

    for rows, cols in (("minus", "mid"), ("minus", "plus"), ("mid", "plus")):
        for i, j in itertools.product(blocks[rows], blocks[cols]):
            for c in nonzero:
                gens.append(_elementary(field, n, i, j, c))
    return gens


# ---- 图示 ----

def render_diagram(c: Coset) -> str:
    """
    两行图示

    上行是源 β 的格位，下行是目标 α 的格位，格位 x 对应整数轴上的 x+1。
    ● 标记 ker（上行）与 indef（下行），中间行用 │ ╲ ╱ 连接配对的格位，
    其后是 η 个 ⊘。
    """
    table = canonical_kappa(c)
    k12, k21, k22 = table[1, 2], table[2, 1], table[2, 2]
    alpha, beta = c.alpha, c.beta
    origin = min(alpha.lo, beta.lo)
    width = 2 * (max(alpha.hi, beta.hi) - origin)

    def slot(lo: int, j: int) -> int:
        return 2 * (lo + j - origin)

    upper = [" "] * width
    lower = [" "] * width
    middle = [" "] * width
    for j in range(beta.size):
        upper[slot(beta.lo, j)] = "●" if j < k12 else "○"
    for i in range(alpha.size):
        lower[slot(alpha.lo, i)] = "●" if i < k21 else "○"

    offset = (alpha.lo + k21) - (beta.lo + k12)
    stroke = "│" if offset == 0 else ("╲" if offset > 0 else "╱")
    for s in range(k22):
        src = slot(beta.lo, k12 + s)
        tgt = slot(alpha.lo, k21 + s)
        middle[(src + tgt) // 2] = stroke

    mid_line = "".join(middle).rstrip()
    if c.eta:
        mid_line = mid_line + (" " if mid_line else "") + "⊘" * c.eta
    return "\n".join(["".join(upper).rstrip(), mid_line, "".join(lower).rstrip()])
