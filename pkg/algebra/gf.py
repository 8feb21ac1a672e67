"""
有限域 GF(p^l) 运算

元素采用多项式表示（系数低次在前）。内部用整数编码 code = Σ c_i·p^i
作为索引，加法、乘法、取负和求逆均通过构造时预先计算的 numpy 表完成，
因此同一套接口既可作用于单个元素，也可作用于整块矩阵。
"""

import itertools
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from .exceptions import (
    DegreeMismatch, FieldMismatch, NonPrimeCharacteristic, ParseError,
    ReducibleModulus, TooLarge, ZeroInverse
)

logger = structlog.get_logger(__name__)

# 运算表大小为 q×q
MAX_ORDER = 1024

ScalarLike = Union["Scalar", int, Sequence[int]]


def is_prime(n: int) -> bool:
    """试除法判断素数"""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    """多项式 a 对首一多项式 m 取余（系数低次在前）"""
    rem = [c % p for c in a]
    deg_m = len(m) - 1
    for shift in range(len(rem) - 1 - deg_m, -1, -1):
        lead = rem[shift + deg_m]
        if lead:
            for i, c in enumerate(m):
                rem[shift + i] = (rem[shift + i] - lead * c) % p
    return rem[:deg_m]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """
    试除法判断首一多项式在 Z_p 上不可约

    只需检查次数不超过 l/2 的全部首一多项式。
    """
    degree = len(modulus) - 1
    if degree <= 1:
        return degree == 1
    for d in range(1, degree // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            divisor = list(lower) + [1]
            if not any(_poly_mod(modulus, divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, l: int) -> Tuple[int, ...]:
    """按系数（低次在前）字典序选取最小的 l 次首一不可约多项式"""
    for lower in itertools.product(range(p), repeat=l):
        candidate = tuple(lower) + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise ReducibleModulus(())  # pragma: no cover - 任意次数都存在不可约多项式


class FieldSpec:
    """有限域 F_q，q = p^l"""

    def __init__(self, p: int, l: int, modulus: Sequence[int]):
        """
        初始化并校验有限域

        Args:
            p: 特征（素数）
            l: 扩张次数
            modulus: l 次首一不可约多项式的系数，长度 l+1，低次在前

        Raises:
            NonPrimeCharacteristic: p 不是素数
            DegreeMismatch: 模多项式次数不是 l 或不是首一
            ReducibleModulus: 模多项式可约
            TooLarge: q 超出运算表上限
        """
        if not is_prime(p):
            raise NonPrimeCharacteristic(p)
        if l < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {l}", {"l": l})
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != l + 1 or modulus[-1] != 1:
            raise DegreeMismatch(
                f"modulus must be monic of degree {l}",
                {"modulus": list(modulus), "l": l}
            )
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(modulus)
        q = p ** l
        if q > MAX_ORDER:
            raise TooLarge(f"field order {q} exceeds {MAX_ORDER}", MAX_ORDER)

        self.p = p
        self.l = l
        self.modulus = modulus
        self.q = q
        self._build_tables()

    def _build_tables(self) -> None:
        p, l, q = self.p, self.l, self.q
        codes = np.arange(q, dtype=np.int64)
        powers = p ** np.arange(l, dtype=np.int64)
        coeffs = (codes[:, None] // powers[None, :]) % p

        self._coeffs = coeffs
        self._add = (((coeffs[:, None, :] + coeffs[None, :, :]) % p) * powers).sum(axis=2)
        self._neg = ((-coeffs % p) * powers).sum(axis=1)

        # shifted[a, i] = a·x^i 的系数
        shifted = np.zeros((q, l, l), dtype=np.int64)
        current = coeffs.copy()
        low = np.array(self.modulus[:l], dtype=np.int64)
        for i in range(l):
            shifted[:, i, :] = current
            top = current[:, l - 1].copy()
            current = np.roll(current, 1, axis=1)
            current[:, 0] = 0
            current = (current - top[:, None] * low[None, :]) % p
        products = np.einsum("bi,aij->abj", coeffs, shifted) % p
        self._mul = (products * powers).sum(axis=2)

        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = np.argmax(self._mul[1:] == 1, axis=1)
        self._inv = inv

        for table in (self._add, self._neg, self._mul, self._inv):
            table.setflags(write=False)

    # ---- 编码层面的运算（支持 numpy 数组） ----

    def add(self, x, y):
        return self._add[x, y]

    def sub(self, x, y):
        return self._add[x, self._neg[y]]

    def neg(self, x):
        return self._neg[x]

    def mul(self, x, y):
        return self._mul[x, y]

    def inv(self, x):
        if np.any(np.asarray(x) == 0):
            raise ZeroInverse()
        return self._inv[x]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """编码矩阵乘法"""
        if self.l == 1:
            return (a @ b) % self.p
        result = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for k in range(a.shape[1]):
            result = self._add[result, self._mul[a[:, k][:, None], b[k, :][None, :]]]
        return result

    # ---- 元素 ----

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, 1)

    def coeffs(self, code: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self._coeffs[code])

    def code_of(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.l:
            raise DegreeMismatch(
                f"element has {len(coeffs)} coefficients, field degree is {self.l}",
                {"coeffs": list(coeffs)}
            )
        return int(sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    def element(self, value: ScalarLike) -> "Scalar":
        """将整数编码、系数序列或 Scalar 转为本域元素"""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            code = int(value)
            if not 0 <= code < self.q:
                raise ParseError(f"element code {code} out of range for {self!r}")
            return Scalar(self, code)
        return Scalar(self, self.code_of(value))

    def elements(self) -> List["Scalar"]:
        return [Scalar(self, code) for code in range(self.q)]

    def nonzero_codes(self) -> range:
        return range(1, self.q)

    # ---- 文本形式 ----

    def format_scalar(self, code: int) -> str:
        """素域输出整数余数，扩域输出以 ':' 连接的系数（低次在前）"""
        if self.l == 1:
            return str(int(code))
        return ":".join(str(c) for c in self.coeffs(int(code)))

    def parse_scalar(self, text: str) -> int:
        """解析元素文本，返回编码"""
        text = text.strip()
        try:
            if ":" in text:
                coeffs = [int(part) for part in text.split(":")]
                if any(not 0 <= c < self.p for c in coeffs):
                    raise ParseError(f"coefficient out of range in '{text}'", text)
                return self.code_of(coeffs)
            value = int(text)
        except ValueError:
            raise ParseError(f"cannot parse scalar '{text}'", text)
        if not 0 <= value < self.p:
            raise ParseError(f"residue {value} out of range [0, {self.p})", text)
        return value

    def describe(self) -> dict:
        return {"p": self.p, "l": self.l, "modulus": list(self.modulus)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.l, self.modulus) == (other.p, other.l, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.l, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})" if self.l == 1 else f"GF({self.p}^{self.l}; {list(self.modulus)})"


class Scalar:
    """有限域元素（不可变）"""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _coerce(self, other: ScalarLike) -> int:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.field.element(int(other) % self.field.p).code
        return NotImplemented

    def __add__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.code, code))

    __radd__ = __add__

    def __sub__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.code, code))

    def __rsub__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(code, self.code))

    def __mul__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.code, code))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.code))

    def inverse(self) -> "Scalar":
        if self.code == 0:
            raise ZeroInverse()
        return Scalar(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return self * Scalar(self.field, code).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = Scalar(self.field, 1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.code))

    def __int__(self) -> int:
        return self.code

    def __str__(self) -> str:
        return self.field.format_scalar(self.code)

    def __repr__(self) -> str:
        return f"Scalar({self}, {self.field!r})"


@lru_cache(maxsize=None)
def _cached_field(p: int, l: int, modulus: Optional[Tuple[int, ...]]) -> FieldSpec:
    if not is_prime(p):
        raise NonPrimeCharacteristic(p)
    if l < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {l}", {"l": l})
    if modulus is None:
        if p ** l > MAX_ORDER:
            raise TooLarge(f"field order {p ** l} exceeds {MAX_ORDER}", MAX_ORDER)
        modulus = smallest_irreducible(p, l)
    field = FieldSpec(p, l, modulus)
    logger.debug("Field constructed", q=field.q, modulus=list(field.modulus))
    return field


def field_make(p: int, l: int = 1, modulus: Optional[Iterable[int]] = None) -> FieldSpec:
    """
    构造有限域

    Args:
        p: 素数特征
        l: 扩张次数
        modulus: 可选的模多项式系数（低次在前）；省略时选取字典序最小的不可约多项式

    Returns:
        FieldSpec: 校验通过的有限域（同参数调用返回同一实例）
    """
    return _cached_field(int(p), int(l), tuple(int(c) for c in modulus) if modulus is not None else None)


def field_from_order(q: int) -> FieldSpec:
    """按阶 q = p^l 构造有限域"""
    for p in range(2, q + 1):
        if q % p == 0:
            l, rest = 0, q
            while rest % p == 0:
                rest //= p
                l += 1
            if rest != 1 or not is_prime(p):
                break
            return field_make(p, l)
    raise NonPrimeCharacteristic(q)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()


def enumerate_elements(field: FieldSpec) -> List[Scalar]:
    """按编码顺序枚举全部元素：0, 1, …（系数向量自高次起的字典序）"""
    return field.elements()
