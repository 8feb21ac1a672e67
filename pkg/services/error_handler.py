"""
统一错误处理系统

把代数异常、配置验证异常和未知异常统一分类，生成错误响应并给出进程退出码。
"""

import traceback
from datetime import datetime
from enum import Enum, IntEnum
from typing import Any, Dict, Optional, Tuple, Type

from pydantic import ValidationError

from algebra.exceptions import (
    BlockMismatch, CheckFailure, ConfigError, DegreeMismatch, DimMismatch, FieldMismatch,
    InvariantViolation, LayoutInconsistent, NonPrimeCharacteristic, NotComparable, NotComposable,
    ParseError, ReducibleModulus, Singular, SingularPencil, TooLarge, ZeroInverse
)
from models.responses import ErrorResponse
from services.logging import get_logger

logger = get_logger(__name__)


class ErrorCategory(Enum):
    """错误分类"""
    VALIDATION = "validation"
    DOMAIN = "domain"
    CHECK = "check"
    INTERNAL = "internal"


class ExitCode(IntEnum):
    """进程退出码"""
    OK = 0
    CHECK_FAILED = 1
    INPUT_ERROR = 2
    DOMAIN_ERROR = 3


class ErrorCode(Enum):
    """标准错误代码"""
    # 输入与验证错误
    PARSE_ERROR = "PARSE_ERROR"
    NON_PRIME_CHARACTERISTIC = "NON_PRIME_CHARACTERISTIC"
    REDUCIBLE_MODULUS = "REDUCIBLE_MODULUS"
    DEGREE_MISMATCH = "DEGREE_MISMATCH"
    FIELD_MISMATCH = "FIELD_MISMATCH"
    DIM_MISMATCH = "DIM_MISMATCH"
    LAYOUT_INCONSISTENT = "LAYOUT_INCONSISTENT"
    TOO_LARGE = "TOO_LARGE"
    VALIDATION_ERROR = "VALIDATION_ERROR"
    FILE_NOT_FOUND = "FILE_NOT_FOUND"

    # 代数运算错误
    SINGULAR = "SINGULAR"
    ZERO_INVERSE = "ZERO_INVERSE"
    NOT_COMPOSABLE = "NOT_COMPOSABLE"
    NOT_COMPARABLE = "NOT_COMPARABLE"
    INVARIANT_VIOLATION = "INVARIANT_VIOLATION"
    BLOCK_MISMATCH = "BLOCK_MISMATCH"
    SINGULAR_PENCIL = "SINGULAR_PENCIL"

    # 验证失败与内部错误
    CHECK_FAILURE = "CHECK_FAILURE"
    INTERNAL_ERROR = "INTERNAL_ERROR"


class ErrorHandler:
    """统一错误处理器"""

    def __init__(self):
        self.error_mappings = self._setup_error_mappings()

    def _setup_error_mappings(self) -> Dict[Type[Exception], Dict[str, Any]]:
        """设置错误映射；按插入顺序匹配，子类必须排在父类之前"""

        def validation(code: ErrorCode, message: str) -> Dict[str, Any]:
            return {
                "category": ErrorCategory.VALIDATION,
                "get_code": lambda e: code.value,
                "get_message": lambda e: f"{message}: {str(e)}",
                "exit_code": ExitCode.INPUT_ERROR,
            }

        def domain(code: ErrorCode, message: str) -> Dict[str, Any]:
            return {
                "category": ErrorCategory.DOMAIN,
                "get_code": lambda e: code.value,
                "get_message": lambda e: f"{message}: {str(e)}",
                "exit_code": ExitCode.DOMAIN_ERROR,
            }

        return {
            # 输入错误
            ParseError: validation(ErrorCode.PARSE_ERROR, "输入格式错误"),
            NonPrimeCharacteristic: validation(ErrorCode.NON_PRIME_CHARACTERISTIC, "特征不是素数"),
            ReducibleModulus: validation(ErrorCode.REDUCIBLE_MODULUS, "模多项式可约"),
            DegreeMismatch: validation(ErrorCode.DEGREE_MISMATCH, "次数不匹配"),
            FieldMismatch: validation(ErrorCode.FIELD_MISMATCH, "域不一致"),
            DimMismatch: validation(ErrorCode.DIM_MISMATCH, "维数不匹配"),
            LayoutInconsistent: validation(ErrorCode.LAYOUT_INCONSISTENT, "分块布局不一致"),
            TooLarge: validation(ErrorCode.TOO_LARGE, "规模超出上限"),

            # 代数运算错误
            Singular: domain(ErrorCode.SINGULAR, "矩阵不可逆"),
            ZeroInverse: domain(ErrorCode.ZERO_INVERSE, "零元素无逆"),
            NotComposable: domain(ErrorCode.NOT_COMPOSABLE, "态射不可复合"),
            NotComparable: domain(ErrorCode.NOT_COMPARABLE, "对象不可比较"),
            InvariantViolation: domain(ErrorCode.INVARIANT_VIOLATION, "不变量约束不满足"),
            BlockMismatch: domain(ErrorCode.BLOCK_MISMATCH, "分块尺寸不一致"),
            SingularPencil: domain(ErrorCode.SINGULAR_PENCIL, "传递函数在该点无定义"),

            CheckFailure: {
                "category": ErrorCategory.CHECK,
                "get_code": lambda e: ErrorCode.CHECK_FAILURE.value,
                "get_message": lambda e: f"验证失败: {str(e)}",
                "exit_code": ExitCode.CHECK_FAILED,
            },

            ConfigError: validation(ErrorCode.VALIDATION_ERROR, "参数验证失败"),
            ValidationError: {
                "category": ErrorCategory.VALIDATION,
                "get_code": lambda e: ErrorCode.VALIDATION_ERROR.value,
                "get_message": lambda e: "数据验证失败",
                "exit_code": ExitCode.INPUT_ERROR,
            },
            FileNotFoundError: validation(ErrorCode.FILE_NOT_FOUND, "文件未找到"),
        }

    def handle_exception(
        self,
        exc: Exception,
        command: Optional[str] = None,
        include_traceback: bool = False
    ) -> Tuple[ErrorResponse, int]:
        """
        处理异常并返回统一格式的响应和退出码

        Args:
            exc: 捕获的异常
            command: 出错的子命令
            include_traceback: 是否在响应中包含堆栈

        Returns:
            Tuple[ErrorResponse, int]: 错误响应与退出码
        """
        error_info = self._get_error_info(exc)
        self._log_error(exc, error_info, command)

        error_details: Dict[str, Any] = {"timestamp": error_info["timestamp"]}
        if command:
            error_details["command"] = command

        if isinstance(exc, ValidationError):
            error_details["validation_errors"] = [
                {"loc": list(err["loc"]), "msg": err["msg"]} for err in exc.errors()
            ]
        elif getattr(exc, "details", None):
            error_details.update(exc.details)

        if include_traceback:
            error_details["traceback"] = "".join(
                traceback.format_exception(type(exc), exc, exc.__traceback__)
            )

        error_response = ErrorResponse(
            error={
                "code": error_info["code"],
                "message": error_info["message"],
                "category": error_info["category"].value,
                "details": error_details
            }
        )
        return error_response, int(error_info["exit_code"])

    def _get_error_info(self, exc: Exception) -> Dict[str, Any]:
        """获取错误信息"""
        mapping = None
        for error_type, error_mapping in self.error_mappings.items():
            if isinstance(exc, error_type):
                mapping = error_mapping
                break

        if mapping:
            return {
                "category": mapping["category"],
                "code": mapping["get_code"](exc),
                "message": mapping["get_message"](exc),
                "exit_code": mapping["exit_code"],
                "timestamp": datetime.now().isoformat()
            }

        # 未知错误的默认处理
        return {
            "category": ErrorCategory.INTERNAL,
            "code": ErrorCode.INTERNAL_ERROR.value,
            "message": f"内部错误: {type(exc).__name__}: {str(exc)}",
            "exit_code": ExitCode.CHECK_FAILED,
            "timestamp": datetime.now().isoformat()
        }

    def _log_error(self, exc: Exception, error_info: Dict[str, Any], command: Optional[str]):
        """记录错误日志：输入与运算错误记为 warning，其余记为 error"""
        log_context = {
            "error_code": error_info["code"],
            "error_category": error_info["category"].value,
            "exit_code": int(error_info["exit_code"]),
            "command": command or "",
            "exception_type": type(exc).__name__,
            "exception_message": str(exc)
        }

        if error_info["exit_code"] in (ExitCode.INPUT_ERROR, ExitCode.DOMAIN_ERROR):
            logger.warning(f"Command failed: {error_info['message']}", **log_context)
        else:
            logger.error(
                f"Command failed: {error_info['message']}",
                **log_context,
                exc_info=error_info["category"] is ErrorCategory.INTERNAL
            )


# 全局错误处理器实例
error_handler = ErrorHandler()


def create_error_response(
    code: str,
    message: str,
    category: ErrorCategory = ErrorCategory.INTERNAL,
    details: Dict[str, Any] = None
) -> ErrorResponse:
    """创建标准错误响应"""
    return ErrorResponse(
        error={
            "code": code,
            "message": message,
            "category": category.value,
            "details": details or {}
        }
    )
