"""
日志系统测试

测试结构化日志、运行上下文和检查耗时统计。
"""

import logging

import pytest
from unittest.mock import patch

from services.logging import (
    RunTracker, add_run_context, clear_run_context, configure_logging, get_logger,
    log_performance, run_tracker, set_run_context
)


class TestRunTracker:
    """检查追踪器测试"""

    def setup_method(self):
        """设置测试"""
        self.tracker = RunTracker()

    def test_start_and_end(self):
        """测试开始与结束追踪"""
        info = self.tracker.start_check("cone", {"q": 2})
        assert info["check"] == "cone"
        assert "cone" in self.tracker.active_checks

        result = self.tracker.end_check("cone", failures=0)

        assert result["passed"] is True
        assert result["duration"] >= 0
        assert "cone" not in self.tracker.active_checks
        assert len(self.tracker.completed) == 1

    def test_failures_and_errors(self):
        """测试失败与异常结束"""
        self.tracker.start_check("iso")
        assert self.tracker.end_check("iso", failures=2)["passed"] is False
        self.tracker.start_check("assoc")
        assert self.tracker.end_check("assoc", failures=0, error="TooLarge")["passed"] is False

    def test_end_unknown_check(self):
        """测试结束未开始的检查"""
        assert self.tracker.end_check("missing", 0) == {}

    def test_summary(self):
        """测试汇总"""
        for name, failures in (("cone", 0), ("iso", 1)):
            self.tracker.start_check(name)
            self.tracker.end_check(name, failures)

        summary = self.tracker.summary()

        assert summary["checks"] == 2
        assert summary["passed"] == 1
        assert summary["failed"] == 1
        assert set(summary["by_check"]) == {"cone", "iso"}

    def test_reset(self):
        """测试重置"""
        self.tracker.start_check("cone")
        self.tracker.reset()
        assert self.tracker.active_checks == {}
        assert self.tracker.completed == []

    def test_global_instance(self):
        """测试全局实例"""
        assert isinstance(run_tracker, RunTracker)


class TestRunContext:
    """运行上下文测试"""

    def teardown_method(self):
        clear_run_context()

    def test_set_and_clear(self):
        """测试设置与清除上下文"""
        run_id = set_run_context(check="cone")
        assert len(run_id) == 12

        event = add_run_context(None, "info", {"event": "x"})
        assert event == {"event": "x", "run_id": run_id, "check": "cone"}

        clear_run_context()
        assert add_run_context(None, "info", {"event": "x"}) == {"event": "x"}

    def test_explicit_run_id(self):
        """测试指定运行 ID"""
        assert set_run_context("abc") == "abc"
        assert add_run_context(None, "info", {})["run_id"] == "abc"


class TestConfigureLogging:
    """日志配置测试"""

    def test_level_and_stderr(self):
        """测试日志级别与 stderr 输出"""
        configure_logging(log_level="ERROR")
        root = logging.getLogger()
        assert root.level == logging.ERROR
        assert any(
            isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
            for h in root.handlers
        )

    def test_log_file(self, tmp_path):
        """测试写入日志文件"""
        log_file = tmp_path / "dcoset.log"
        configure_logging(log_level="INFO", log_file=str(log_file), json_format=True)

        get_logger("test").info("Check finished", check="cone")
        for handler in logging.getLogger().handlers:
            handler.flush()

        content = log_file.read_text(encoding="utf-8")
        assert '"event": "Check finished"' in content
        assert '"check": "cone"' in content

        configure_logging(log_level="WARNING")


class TestLogPerformance:
    """性能日志装饰器测试"""

    def test_success(self):
        """测试正常返回"""
        @log_performance("demo")
        def add(a, b):
            return a + b

        with patch("services.logging.get_logger") as mock_get_logger:
            assert add(1, 2) == 3

        logger = mock_get_logger.return_value
        assert logger.info.call_count == 2
        assert logger.info.call_args.kwargs["success"] is True

    def test_failure(self):
        """测试异常时记录并重新抛出"""
        @log_performance()
        def fail():
            raise ValueError("boom")

        with patch("services.logging.get_logger") as mock_get_logger:
            with pytest.raises(ValueError):
                fail()

        kwargs = mock_get_logger.return_value.error.call_args.kwargs
        assert kwargs["error_type"] == "ValueError"
        assert kwargs["success"] is False
