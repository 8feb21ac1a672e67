"""
有限域上的稠密矩阵与子空间

矩阵内部保存为元素编码的 int64 数组，所有四则运算都通过 FieldSpec 的运算表完成。
子空间在构造时即化为行最简形（RREF），因此子空间相等可以直接比较基矩阵。
"""

import itertools
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Union

import numpy as np

from .exceptions import DimMismatch, FieldMismatch, LayoutInconsistent, Singular, TooLarge
from .gf import FieldSpec, Scalar, ScalarLike

# enumerate_subspaces 的规模上限（q^n）
SUBSPACE_LIMIT = 1 << 20
# enumerate_gl 的规模上限（q^(n²)）
GL_LIMIT = 1 << 16


class Mat:
    """F_q 上的矩阵（不可变）"""

    __slots__ = ("field", "data", "_key")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise DimMismatch(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise FieldMismatch(f"matrix entries out of range for {field!r}")
        arr.setflags(write=False)
        self.field = field
        self.data = arr
        self._key = None

    # ---- 构造 ----

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Mat":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[ScalarLike]], cols: Optional[int] = None) -> "Mat":
        """由元素行构造矩阵；空矩阵需给出列数"""
        codes = [[field.element(x).code for x in row] for row in rows]
        if not codes:
            return cls.zeros(field, 0, cols or 0)
        width = len(codes[0])
        if any(len(row) != width for row in codes) or (cols is not None and cols != width):
            raise DimMismatch("ragged matrix rows", {"widths": [len(r) for r in codes]})
        return cls(field, codes)

    @classmethod
    def column(cls, field: FieldSpec, values: Sequence[ScalarLike]) -> "Mat":
        return cls(field, np.array([field.element(x).code for x in values], dtype=np.int64).reshape(-1, 1))

    # ---- 基本属性 ----

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.data[i, j])

    def __getitem__(self, idx):
        if isinstance(idx, tuple) and all(isinstance(i, (int, np.integer)) for i in idx):
            return self.entry(*idx)
        if isinstance(idx, (int, np.integer)):
            return Mat(self.field, self.data[idx].reshape(1, -1))
        sub = self.data[idx]
        if sub.ndim != 2:
            raise DimMismatch("index with slices to take a submatrix")
        return Mat(self.field, sub)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat(self.field, self.data[r0:r1, c0:c1])

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.data.T)

    # ---- 运算 ----

    def _same_field(self, other: "Mat") -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{other.field!r} vs {self.field!r}")

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimMismatch(f"cannot add {self.shape} and {other.shape}")
        return Mat(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Mat(self.field, self.field.sub(self.data, other.data))

    def __neg__(self) -> "Mat":
        return Mat(self.field, self.field.neg(self.data))

    def scale(self, s: ScalarLike) -> "Mat":
        code = self.field.element(s).code
        return Mat(self.field, self.field.mul(self.data, code))

    def rank(self) -> int:
        return rref(self).rank

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def inverse(self) -> "Mat":
        return mat_inv(self)

    def is_zero(self) -> bool:
        return not self.data.any()

    # ---- 比较与序列化 ----

    def key(self) -> bytes:
        """矩阵的规范字节编码（用作哈希表键）"""
        if self._key is None:
            self._key = bytes(str(self.shape), "ascii") + self.data.astype(np.uint16).tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.field, self.key()))

    def tolist(self) -> List[List[str]]:
        """以元素文本形式导出各行"""
        return [[self.field.format_scalar(c) for c in row] for row in self.data]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(row) for row in self.tolist())
        return f"Mat[{self.rows}x{self.cols}]({body})"


def hstack(field: FieldSpec, mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise DimMismatch("nothing to stack")
    if len({m.rows for m in mats}) != 1:
        raise DimMismatch("hstack needs equal row counts", {"rows": [m.rows for m in mats]})
    return Mat(field, np.hstack([m.data for m in mats]))


def vstack(field: FieldSpec, mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise DimMismatch("nothing to stack")
    if len({m.cols for m in mats}) != 1:
        raise DimMismatch("vstack needs equal column counts", {"cols": [m.cols for m in mats]})
    return Mat(field, np.vstack([m.data for m in mats]))


def mat_mul(a: Mat, b: Mat) -> Mat:
    """精确矩阵乘法"""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if a.cols != b.rows:
        raise DimMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return Mat(a.field, a.field.matmul(a.data, b.data))


class RrefResult(NamedTuple):
    reduced: Mat
    pivots: List[int]
    rank: int


def _rref_codes(field: FieldSpec, data: np.ndarray):
    m = np.array(data, dtype=np.int64)
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = field.mul(m[r], field.inv(m[r, c]))
        factors = m[:, c].copy()
        factors[r] = 0
        m = field.sub(m, field.mul(factors[:, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    return m, pivots


def rref(a: Mat) -> RrefResult:
    """行最简形；零行保留在底部"""
    reduced, pivots = _rref_codes(a.field, a.data)
    return RrefResult(Mat(a.field, reduced), pivots, len(pivots))


def mat_inv(a: Mat) -> Mat:
    """
    矩阵求逆

    Raises:
        DimMismatch: 非方阵
        Singular: 矩阵不可逆
    """
    if not a.is_square:
        raise DimMismatch(f"cannot invert non-square {a.shape}")
    n = a.rows
    augmented = np.hstack([a.data, np.eye(n, dtype=np.int64)])
    reduced, pivots = _rref_codes(a.field, augmented)
    if pivots[:n] != list(range(n)):
        raise Singular(f"matrix of size {n} is singular", {"rank": sum(1 for p in pivots if p < n)})
    return Mat(a.field, reduced[:, n:])


def kernel(a: Mat) -> "Subspace":
    """零空间 {x : a·x = 0}，作为 F^cols 的子空间"""
    field = a.field
    reduced, pivots = _rref_codes(field, a.data)
    free = [c for c in range(a.cols) if c not in pivots]
    vectors = np.zeros((len(free), a.cols), dtype=np.int64)
    if free:
        vectors[np.arange(len(free)), free] = 1
        if pivots:
            vectors[:, pivots] = field.neg(reduced[:len(pivots)][:, free].T)
    return Subspace(field, a.cols, vectors)


class AffineSolution(NamedTuple):
    particular: Mat
    nullspace: "Subspace"


def solve_affine(a: Mat, b: Union[Mat, Sequence[ScalarLike]]) -> Optional[AffineSolution]:
    """
    解线性方程组 a·x = b

    Returns:
        不相容时返回 None，否则返回特解与零空间
    """
    field = a.field
    if not isinstance(b, Mat):
        b = Mat.column(field, b)
    if b.shape != (a.rows, 1):
        raise DimMismatch(f"right-hand side {b.shape} does not match {a.shape}")
    augmented = np.hstack([a.data, b.data])
    reduced, pivots = _rref_codes(field, augmented)
    if a.cols in pivots:
        return None
    x = np.zeros((a.cols, 1), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c, 0] = reduced[i, a.cols]
    return AffineSolution(Mat(field, x), kernel(a))


Cell = Union[str, Mat, None]


@dataclass(frozen=True)
class BlockLayout:
    """分块布局：cells[i][j] 为 "zero"、"identity"、None（零）或给定矩阵"""

    row_blocks: Sequence[int]
    col_blocks: Sequence[int]
    cells: Sequence[Sequence[Cell]]


def block_assemble(field: FieldSpec, layout: BlockLayout) -> Mat:
    """按布局逐格拼装矩阵"""
    rows, cols = list(layout.row_blocks), list(layout.col_blocks)
    if any(h < 0 for h in rows) or any(w < 0 for w in cols):
        raise LayoutInconsistent("negative block size", {"rows": rows, "cols": cols})
    if len(layout.cells) != len(rows) or any(len(line) != len(cols) for line in layout.cells):
        raise LayoutInconsistent("cell grid does not match block grid", {"rows": rows, "cols": cols})
    r_off = np.concatenate([[0], np.cumsum(rows)]).astype(int)
    c_off = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    out = np.zeros((r_off[-1], c_off[-1]), dtype=np.int64)
    for i, line in enumerate(layout.cells):
        for j, cell in enumerate(line):
            h, w = rows[i], cols[j]
            if cell is None or (isinstance(cell, str) and cell == "zero"):
                continue
            if isinstance(cell, str) and cell == "identity":
                if h != w:
                    raise LayoutInconsistent(f"identity cell ({i},{j}) is {h}x{w}")
                out[r_off[i]:r_off[i + 1], c_off[j]:c_off[j + 1]] = np.eye(h, dtype=np.int64)
            elif isinstance(cell, Mat):
                if cell.field != field:
                    raise FieldMismatch(f"cell ({i},{j}) lives in {cell.field!r}")
                if cell.shape != (h, w):
                    raise LayoutInconsistent(
                        f"cell ({i},{j}) has shape {cell.shape}, expected {(h, w)}"
                    )
                out[r_off[i]:r_off[i + 1], c_off[j]:c_off[j + 1]] = cell.data
            else:
                raise LayoutInconsistent(f"unknown cell specification {cell!r}")
    return Mat(field, out)


def block_diag(field: FieldSpec, *parts: Union[Mat, int]) -> Mat:
    """分块对角矩阵；整数 k 表示 1_k"""
    mats = [Mat.identity(field, p) if isinstance(p, int) else p for p in parts]
    rows = [m.rows for m in mats]
    cols = [m.cols for m in mats]
    cells = [[mats[i] if i == j else None for j in range(len(mats))] for i in range(len(mats))]
    return block_assemble(field, BlockLayout(rows, cols, cells))


def all_vectors(field: FieldSpec, n: int) -> np.ndarray:
    """F_q^n 的全部向量（编码数组，按字典序）"""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(field.q), repeat=n)), dtype=np.int64)


class Subspace:
    """F_q^n 的子空间，基为去掉零行的行最简形"""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient: int, vectors=None):
        data = np.zeros((0, ambient), dtype=np.int64) if vectors is None else np.array(vectors, dtype=np.int64)
        if data.size == 0 and (data.ndim != 2 or data.shape[1] != ambient):
            data = np.zeros((0, ambient), dtype=np.int64)
        if data.ndim != 2 or data.shape[1] != ambient:
            raise DimMismatch(f"vectors of shape {data.shape} do not live in F^{ambient}")
        reduced, pivots = _rref_codes(field, data)
        self.field = field
        self.ambient = ambient
        self.basis = Mat(field, reduced[:len(pivots)])
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field: FieldSpec, vectors, ambient: int) -> "Subspace":
        if isinstance(vectors, Mat):
            vectors = vectors.data
        return cls(field, ambient, vectors)

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient)

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, np.eye(ambient, dtype=np.int64))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _check(self, other: "Subspace") -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
        if other.ambient != self.ambient:
            raise DimMismatch(f"ambient F^{other.ambient} vs F^{self.ambient}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient, np.vstack([self.basis.data, other.basis.data]))

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        stacked = np.vstack([self.basis.data, other.basis.data])
        relations = kernel(Mat(self.field, stacked.T))
        coeffs = relations.basis.data[:, :self.dim]
        return Subspace(self.field, self.ambient, self.field.matmul(coeffs, self.basis.data))

    def contains(self, v) -> bool:
        vec = np.array(v.data if isinstance(v, Mat) else v, dtype=np.int64).reshape(-1)
        if vec.shape[0] != self.ambient:
            raise DimMismatch(f"vector of length {vec.shape[0]} is not in F^{self.ambient}")
        if self.dim == 0:
            return not vec.any()
        coeffs = vec[list(self.pivots)]
        residual = self.field.sub(vec, self.field.matmul(coeffs[None, :], self.basis.data)[0])
        return not residual.any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(row) for row in self.basis.data)

    def project(self, cols: Sequence[int]) -> "Subspace":
        """坐标投影到 cols 指定的坐标"""
        return Subspace(self.field, len(cols), self.basis.data[:, list(cols)])

    def embed(self, ambient: int, cols: Sequence[int]) -> "Subspace":
        """把坐标放到更大空间的 cols 位置上"""
        if len(cols) != self.ambient:
            raise DimMismatch(f"{len(cols)} target columns for F^{self.ambient}")
        data = np.zeros((self.dim, ambient), dtype=np.int64)
        data[:, list(cols)] = self.basis.data
        return Subspace(self.field, ambient, data)

    def vectors(self) -> np.ndarray:
        """子空间的全部元素（编码数组）"""
        coeffs = all_vectors(self.field, self.dim)
        if self.dim == 0:
            return np.zeros((1, self.ambient), dtype=np.int64)
        return self.field.matmul(coeffs, self.basis.data)

    def extend_basis(self, candidates=None) -> Mat:
        """
        扩充为全空间的一组基

        先取本子空间的基，再依次尝试 candidates 与单位向量，
        凡能增加维数者即加入。返回 n×n 矩阵，各行为基向量。
        """
        rows = [row for row in self.basis.data]
        pool = [] if candidates is None else [np.asarray(c, dtype=np.int64).reshape(-1) for c in candidates]
        pool.extend(np.eye(self.ambient, dtype=np.int64))
        current = self
        for vec in pool:
            if current.dim == self.ambient:
                break
            if not current.contains(vec):
                rows.append(vec)
                current = Subspace(self.field, self.ambient, np.vstack(rows))
        return Mat(self.field, np.array(rows, dtype=np.int64).reshape(len(rows), self.ambient))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.field, self.ambient, self.basis.key()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, basis={self.basis.tolist()})"


def span(field: FieldSpec, vectors, ambient: int) -> Subspace:
    return Subspace.span(field, vectors, ambient)


def sub_sum(s: Subspace, t: Subspace) -> Subspace:
    return s + t


def sub_intersect(s: Subspace, t: Subspace) -> Subspace:
    return s & t


def sub_contains(s: Subspace, v) -> bool:
    return s.contains(v)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """高斯二项式系数：F_q^n 中 k 维子空间的个数"""
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def enumerate_subspaces(n: int, field: FieldSpec) -> Iterator[Subspace]:
    """
    枚举 F_q^n 的全部子空间

    按维数、主元集合（组合序）和自由位置填充（字典序）依次生成，每个子空间恰好一次。

    Raises:
        TooLarge: q^n 超过上限
    """
    if field.q ** n > SUBSPACE_LIMIT:
        raise TooLarge(f"q^n = {field.q ** n} exceeds {SUBSPACE_LIMIT}", SUBSPACE_LIMIT)
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
            for filling in itertools.product(range(field.q), repeat=len(free)):
                data = np.zeros((k, n), dtype=np.int64)
                for i, p in enumerate(pivots):
                    data[i, p] = 1
                for (i, c), value in zip(free, filling):
                    data[i, c] = value
                yield Subspace(field, n, data)


def enumerate_gl(field: FieldSpec, n: int, limit: int = GL_LIMIT) -> Iterator[Mat]:
    """
    逐行扩充枚举 GL(n, F_q)

    每一行取自不在前面各行张成空间中的向量，顺序确定。
    """
    if field.q ** (n * n) > limit:
        raise TooLarge(f"q^(n^2) = {field.q ** (n * n)} exceeds {limit}", limit)
    vectors = all_vectors(field, n)
    scalars = np.arange(field.q, dtype=np.int64)

    def extend(rows: List[np.ndarray], span_keys: set, span_elems: np.ndarray):
        if len(rows) == n:
            yield Mat(field, np.array(rows, dtype=np.int64).reshape(n, n))
            return
        for vec in vectors:
            if vec.tobytes() in span_keys:
                continue
            shifted = field.mul(scalars[:, None], vec[None, :])
            grown = field.add(span_elems[:, None, :], shifted[None, :, :]).reshape(-1, n)
            yield from extend(rows + [vec], {row.tobytes() for row in grown}, grown)

    zero = np.zeros((1, n), dtype=np.int64)
    yield from extend([], {zero[0].tobytes()}, zero)


def random_matrix(field: FieldSpec, rows: int, cols: int, rng: np.random.Generator) -> Mat:
    return Mat(field, rng.integers(0, field.q, size=(rows, cols), dtype=np.int64))


def random_invertible(field: FieldSpec, n: int, rng: np.random.Generator) -> Mat:
    """均匀随机的可逆矩阵（拒绝采样）"""
    while True:
        candidate = random_matrix(field, n, n, rng)
        if candidate.is_invertible():
            return candidate
