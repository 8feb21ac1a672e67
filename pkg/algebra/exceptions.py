"""
代数运算异常类定义

所有有限域、线性代数、线性关系与双陪集运算抛出的具名异常。
"""

from typing import Any, Dict, Optional


class DcosetError(Exception):
    """双陪集工具包基础异常类"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}


class NonPrimeCharacteristic(DcosetError):
    """特征不是素数"""
    def __init__(self, p: int):
        super().__init__(f"characteristic {p} is not prime", {"p": p})
        self.p = p


class ReducibleModulus(DcosetError):
    """模多项式可约"""
    def __init__(self, modulus: Any):
        super().__init__(f"modulus {list(modulus)} is reducible", {"modulus": list(modulus)})
        self.modulus = modulus


class DegreeMismatch(DcosetError):
    """模多项式次数与扩张次数不一致，或不是首一多项式"""
    pass


class FieldMismatch(DcosetError):
    """参与运算的元素属于不同的域"""
    pass


class ZeroInverse(DcosetError):
    """零元素求逆"""
    def __init__(self, message: str = "zero has no multiplicative inverse"):
        super().__init__(message)


class DimMismatch(DcosetError):
    """维数不匹配"""
    pass


class Singular(DcosetError):
    """矩阵不可逆"""
    pass


class LayoutInconsistent(DcosetError):
    """分块布局与单元尺寸不一致"""
    pass


class TooLarge(DcosetError):
    """穷举规模超出上限"""
    def __init__(self, message: str, limit: Optional[int] = None):
        super().__init__(message, {"limit": limit} if limit is not None else None)
        self.limit = limit


class NotComposable(DcosetError):
    """态射不可复合"""
    pass


class NotComparable(DcosetError):
    """对象在偏序下不可比较"""
    pass


class InvariantViolation(DcosetError):
    """不变量 (χ, η) 违反不等式约束"""
    pass


class BlockMismatch(DcosetError):
    """colligation 的分块尺寸不一致"""
    pass


class SingularPencil(DcosetError):
    """1 - λd 不可逆"""
    def __init__(self, message: str, lam: Optional[str] = None):
        super().__init__(message, {"lambda": lam} if lam is not None else None)
        self.lam = lam


class ParseError(DcosetError):
    """输入文本或 JSON 格式错误"""
    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(message, {"source": source} if source else None)
        self.source = source


class CheckFailure(DcosetError):
    """定理验证失败"""
    pass


class ConfigError(DcosetError, ValueError):
    """配置文件或检查参数无效"""
    pass
