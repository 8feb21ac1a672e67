"""
输入数据模型定义

包含域、线性关系、陪集的 JSON 形式，命令行配置，以及矩阵、窗口、colligation 的文本格式解析。
使用 Pydantic 进行数据验证，格式错误统一转换为 ParseError。
"""

import json
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from algebra.colligation import Colligation
from algebra.coset import Coset, ObjectA, Window
from algebra.exceptions import ParseError
from algebra.gf import FieldSpec, field_make
from algebra.linalg import Mat
from algebra.relation import LinRel


class FieldPayload(BaseModel):
    """有限域的 JSON 形式"""

    p: int = Field(2, ge=2, description="素数特征")
    l: int = Field(1, ge=1, description="扩张次数")
    modulus: Optional[List[int]] = Field(None, description="模多项式系数（低次在前）")

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={"example": {"p": 2, "l": 2, "modulus": [1, 1, 1]}}
    )

    def to_field(self) -> FieldSpec:
        return field_make(self.p, self.l, self.modulus)

    @classmethod
    def from_field(cls, field: FieldSpec) -> "FieldPayload":
        return cls(**field.describe())


class LinRelPayload(BaseModel):
    """线性关系的 JSON 形式，basis 各行为行最简形"""

    m: int = Field(..., ge=0, description="源空间维数")
    n: int = Field(..., ge=0, description="目标空间维数")
    basis: List[List[str]] = Field(default_factory=list, description="基向量（元素文本形式）")

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={"example": {"m": 1, "n": 1, "basis": [["1", "1"]]}}
    )

    @field_validator("basis", mode="before")
    @classmethod
    def stringify_entries(cls, v):
        if isinstance(v, list):
            return [[str(x) for x in row] if isinstance(row, list) else row for row in v]
        return v

    def to_relation(self, field: FieldSpec) -> LinRel:
        width = self.m + self.n
        if any(len(row) != width for row in self.basis):
            raise ParseError(f"relation basis rows must have {width} entries")
        rows = [[field.parse_scalar(x) for x in row] for row in self.basis]
        return LinRel.from_rows(field, self.m, self.n, rows if rows else None)

    @classmethod
    def from_relation(cls, rel: LinRel) -> "LinRelPayload":
        return cls(m=rel.m, n=rel.n, basis=rel.space.basis.tolist())


class CosetPayload(BaseModel):
    """陪集 (χ, η) 的 JSON 形式"""

    alpha: Tuple[int, int] = Field(..., description="目标对象 (α_-, α_+)")
    beta: Tuple[int, int] = Field(..., description="源对象 (β_-, β_+)")
    chi: LinRelPayload = Field(..., description="特征关系")
    eta: int = Field(..., ge=0, description="η")
    field: FieldPayload = Field(default_factory=FieldPayload, description="有限域")

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "alpha": [0, 1],
                "beta": [0, 1],
                "chi": {"m": 1, "n": 1, "basis": [["1", "1"]]},
                "eta": 0,
                "field": {"p": 2, "l": 1, "modulus": [0, 1]}
            }
        }
    )

    def to_coset(self) -> Coset:
        field = self.field.to_field()
        try:
            alpha = ObjectA.of(*self.alpha)
            beta = ObjectA.of(*self.beta)
        except ValidationError as e:
            raise ParseError(f"invalid object: {e.errors()[0]['msg']}")
        return Coset(alpha, beta, self.chi.to_relation(field), self.eta)

    @classmethod
    def from_coset(cls, c: Coset) -> "CosetPayload":
        return cls(
            alpha=(c.alpha.lo, c.alpha.hi),
            beta=(c.beta.lo, c.beta.hi),
            chi=LinRelPayload.from_relation(c.chi),
            eta=c.eta,
            field=FieldPayload.from_field(c.field),
        )


class CliConfig(BaseModel):
    """验证后的命令配置，分派前构造"""

    field: FieldPayload = Field(default_factory=FieldPayload)
    seed: int = Field(0, ge=0)
    trials: int = Field(200, ge=0)
    output: Literal["text", "json"] = "text"
    path: Literal["matrix", "invariant", "both"] = "invariant"
    command: str = Field(..., min_length=1, description="子命令，如 'coset star'")
    payload: Dict[str, Any] = Field(default_factory=dict, description="子命令参数")

    model_config = ConfigDict(extra="forbid")


def load_coset_json(text: str) -> Coset:
    """
    从 JSON 文本解析陪集

    Raises:
        ParseError: JSON 格式或字段错误
    """
    try:
        payload = CosetPayload.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", text[:80])
    except ValidationError as e:
        raise ParseError(f"invalid coset: {e.errors()[0]['msg']}", text[:80])
    return payload.to_coset()


def load_relation_json(text: str, field: FieldSpec) -> LinRel:
    try:
        payload = LinRelPayload.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", text[:80])
    except ValidationError as e:
        raise ParseError(f"invalid relation: {e.errors()[0]['msg']}", text[:80])
    return payload.to_relation(field)


# ---- 文本格式 ----

def parse_matrix_text(text: str, field: FieldSpec, cols: Optional[int] = None) -> Mat:
    """
    解析矩阵文本：行以 ';' 或换行分隔，元素以空白分隔

    Args:
        text: 矩阵文本，例如 "1 0; 1 1"
        field: 元素所在的域
        cols: 空矩阵的列数

    Raises:
        ParseError: 元素无法解析或行长度不一致
    """
    rows = [line.split() for line in text.replace("\n", ";").split(";")]
    rows = [row for row in rows if row]
    codes = [[field.parse_scalar(x) for x in row] for row in rows]
    if codes and any(len(row) != len(codes[0]) for row in codes):
        raise ParseError("ragged matrix rows", text[:80])
    if not codes:
        return Mat.zeros(field, 0, cols or 0)
    return Mat(field, codes)


def format_matrix_text(mat: Mat) -> str:
    return "; ".join(" ".join(row) for row in mat.tolist())


def _header_ints(parts: List[str], source: str) -> List[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise ParseError("window header entries must be integers", source)


def parse_window_text(text: str, field: FieldSpec) -> Window:
    """
    解析窗口文本

    首行为 "N- |a| N+ / M- |b| M+"，可带后缀 "@ α_- β_-"；省略时 α_- = 0，
    β_- = M_- − N_- + α_-。其余各行为矩阵文本。

    Raises:
        ParseError: 头部或矩阵格式错误
        DimMismatch: 尺寸违反块相容条件
        Singular: 矩阵不可逆
    """
    lines = [line for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty window text")
    header, body = lines[0], "\n".join(lines[1:])
    anchor = None
    if "@" in header:
        header, suffix = header.split("@", 1)
        anchor = _header_ints(suffix.split(), lines[0])
        if len(anchor) != 2:
            raise ParseError("window anchor must be '@ alpha_minus beta_minus'", lines[0])
    if header.count("/") != 1:
        raise ParseError("window header must look like 'N- |a| N+ / M- |b| M+'", lines[0])
    left, right = header.split("/")
    rows = _header_ints(left.split(), lines[0])
    cols = _header_ints(right.split(), lines[0])
    if len(rows) != 3 or len(cols) != 3 or min(rows + cols) < 0:
        raise ParseError("window header needs three non-negative sizes on each side", lines[0])
    n_minus, a, n_plus = rows
    m_minus, b, m_plus = cols

    if anchor is None:
        alpha_lo = 0
        beta_lo = m_minus - n_minus + alpha_lo
    else:
        alpha_lo, beta_lo = anchor
    alpha = ObjectA.of(alpha_lo, alpha_lo + a)
    beta = ObjectA.of(beta_lo, beta_lo + b)

    mat = parse_matrix_text(body, field, cols=m_minus + b + m_plus)
    return Window(alpha, beta, n_minus, n_plus, m_minus, m_plus, mat)


def format_window_text(w: Window) -> str:
    n_minus, a, n_plus = w.row_split
    m_minus, b, m_plus = w.col_split
    header = f"{n_minus} {a} {n_plus} / {m_minus} {b} {m_plus} @ {w.alpha.lo} {w.beta.lo}"
    body = "\n".join(" ".join(row) for row in w.mat.tolist())
    return header + ("\n" + body if body else "")


def parse_colligation_text(text: str, field: FieldSpec) -> Colligation:
    """
    解析 colligation 文本：首行 "m n" 声明外部与内部尺寸，其余为矩阵

    Raises:
        ParseError: 头部格式或矩阵尺寸错误
    """
    lines = [line for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty colligation text")
    sizes = lines[0].split()
    try:
        m, n = (int(x) for x in sizes)
    except ValueError:
        raise ParseError("colligation header must be 'm n'", lines[0])
    if m < 0 or n < 0:
        raise ParseError("colligation sizes must be non-negative", lines[0])
    mat = parse_matrix_text("\n".join(lines[1:]), field, cols=m + n)
    if mat.shape != (m + n, m + n):
        raise ParseError(f"colligation matrix must be {m + n}x{m + n}, got {mat.shape}", lines[0])
    return Colligation(m, mat)


def parse_object(text: str) -> ObjectA:
    """解析 "lo,hi" 形式的对象"""
    try:
        lo, hi = (int(x) for x in text.split(","))
        return ObjectA.of(lo, hi)
    except (ValueError, ValidationError):
        raise ParseError(f"object must be 'lo,hi' with lo <= hi, got '{text}'", text)
