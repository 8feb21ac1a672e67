"""
结构化日志系统

structlog 处理器链、运行上下文（run_id 与当前检查名）以及验证检查的耗时统计。
日志只写 stderr 或日志文件；stdout 留给命令输出。
"""

import logging
import sys
import time
import uuid
from contextvars import ContextVar
from datetime import datetime
from functools import wraps
from typing import Any, Dict, List, Optional

import structlog
from structlog.stdlib import LoggerFactory

run_id_var: ContextVar[str] = ContextVar('run_id', default='')
check_var: ContextVar[str] = ContextVar('check', default='')


class RunTracker:
    """记录一次验证运行中各检查的耗时与结果"""

    def __init__(self):
        self.active_checks: Dict[str, Dict[str, Any]] = {}
        self.completed: List[Dict[str, Any]] = []

    def start_check(self, name: str, parameters: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        info = {
            "check": name,
            "parameters": dict(parameters or {}),
            "started_at": datetime.now().isoformat(),
            "start_time": time.perf_counter(),
        }
        self.active_checks[name] = info
        return info

    def end_check(self, name: str, failures: int, error: Optional[str] = None) -> Dict[str, Any]:
        """
        结束一项检查

        Args:
            name: 检查名称
            failures: 失败次数
            error: 检查因异常中止时的消息

        Returns:
            Dict[str, Any]: 完整记录；检查未开始时为空字典
        """
        info = self.active_checks.pop(name, None)
        if info is None:
            return {}
        info["duration"] = time.perf_counter() - info["start_time"]
        info["failures"] = failures
        info["error"] = error
        info["passed"] = failures == 0 and error is None
        self.completed.append(info)
        return info

    def summary(self) -> Dict[str, Any]:
        passed = [c for c in self.completed if c["passed"]]
        return {
            "checks": len(self.completed),
            "passed": len(passed),
            "failed": len(self.completed) - len(passed),
            "total_duration": sum(c["duration"] for c in self.completed),
            "by_check": {c["check"]: round(c["duration"], 6) for c in self.completed},
        }

    def reset(self):
        self.active_checks = {}
        self.completed = []


def add_run_context(logger, method_name, event_dict):
    """把 run_id 与当前检查名写入每条日志"""
    for key, var in (("run_id", run_id_var), ("check", check_var)):
        value = var.get('')
        if value:
            event_dict[key] = value
    return event_dict


def _processors(json_format: bool) -> list:
    renderer = (
        structlog.processors.JSONRenderer(ensure_ascii=False)
        if json_format else structlog.dev.ConsoleRenderer(colors=False)
    )
    return [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", key="timestamp"),
        add_run_context,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        renderer,
    ]


def configure_logging(
    log_level: str = "WARNING",
    log_file: Optional[str] = None,
    json_format: bool = False,
    cache_loggers: bool = True,
):
    """
    配置结构化日志

    每次调用都会替换根日志器的处理器，命令行每次运行重新配置。
    加载配置之前先以 cache_loggers=False 调用一次：此阶段的日志也写到 stderr，
    且日志器不会缓存这份临时配置。
    """
    structlog.configure(
        processors=_processors(json_format),
        context_class=dict,
        logger_factory=LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=cache_loggers,
    )

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format="%(message)s",
        handlers=handlers,
        force=True,
    )


def get_logger(name: str = None) -> structlog.stdlib.BoundLogger:
    return structlog.get_logger(name)


def set_run_context(run_id: str = None, check: str = None) -> str:
    """设置运行上下文，未给出 run_id 时生成一个 12 位的新 ID"""
    run_id = run_id or uuid.uuid4().hex[:12]
    run_id_var.set(run_id)
    if check:
        check_var.set(check)
    return run_id


def clear_run_context():
    run_id_var.set('')
    check_var.set('')


def log_performance(func_name: str = None):
    """
    记录函数耗时的装饰器

    返回值带 trials/failures 属性（如 CheckReport）时一并记录。
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger(func_name or func.__name__)
            start = time.perf_counter()
            logger.info("Function started", function=func.__name__)
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(
                    "Function failed",
                    function=func.__name__,
                    duration=time.perf_counter() - start,
                    error=str(e),
                    error_type=type(e).__name__,
                    success=False,
                )
                raise

            outcome = {k: getattr(result, k) for k in ("trials", "failures") if hasattr(result, k)}
            logger.info(
                "Function completed",
                function=func.__name__,
                duration=time.perf_counter() - start,
                success=True,
                **outcome,
            )
            return result

        return wrapper

    return decorator


run_tracker = RunTracker()
