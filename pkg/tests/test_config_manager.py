"""
配置管理器单元测试
"""

import json

import pytest
import yaml
from unittest.mock import patch

from algebra.exceptions import ConfigError
import config.manager as manager_module
from config.manager import ConfigManager, get_config_manager, get_current_config, init_config
from config.models import AppConfig


class TestConfigManager:
    """ConfigManager 测试类"""

    def setup_method(self):
        """每个测试方法前的设置"""
        self.manager = ConfigManager()

    def test_init_without_config_path(self):
        """测试不指定配置文件路径的初始化"""
        assert self.manager._config_path is None
        assert self.manager._config is None

    def test_load_config_without_file(self):
        """测试不指定文件时加载默认配置"""
        config = self.manager.load_config()
        assert isinstance(config, AppConfig)
        assert config.field.p == 2
        assert config.run.trials == 200
        assert config.log.level == "WARNING"

    def test_load_config_file_not_found(self, tmp_path):
        """测试配置文件不存在"""
        with pytest.raises(FileNotFoundError) as exc_info:
            self.manager.load_config(str(tmp_path / "missing.yaml"))
        assert "配置文件不存在" in str(exc_info.value)

    def test_load_yaml_config(self, tmp_path):
        """测试加载 YAML 配置文件并与默认值合并"""
        path = tmp_path / "config.yaml"
        path.write_text(yaml.dump({"field": {"p": 3}, "verify": {"eta_max": 2}}), encoding="utf-8")

        config = self.manager.load_config(str(path))

        assert config.field.p == 3
        assert config.field.l == 1
        assert config.verify.eta_max == 2
        assert config.verify.completeness_sizes == [1, 1, 1, 1, 1, 1]

    def test_load_json_config(self, tmp_path):
        """测试加载 JSON 配置文件"""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"field": {"p": 2, "l": 2, "modulus": [1, 1, 1]}}), encoding="utf-8")

        config = self.manager.load_config(str(path))

        assert config.field.l == 2
        assert config.field.modulus == [1, 1, 1]

    def test_invalid_yaml(self, tmp_path):
        """测试 YAML 格式错误"""
        path = tmp_path / "config.yaml"
        path.write_text("field: [unclosed", encoding="utf-8")
        with pytest.raises(ConfigError) as exc_info:
            self.manager.load_config(str(path))
        assert "YAML 格式错误" in str(exc_info.value)

    def test_unsupported_suffix(self, tmp_path):
        """测试不支持的文件格式"""
        path = tmp_path / "config.toml"
        path.write_text("[field]\n", encoding="utf-8")
        with pytest.raises(ConfigError) as exc_info:
            self.manager.load_config(str(path))
        assert "不支持的配置文件格式" in str(exc_info.value)

    def test_validation_failure(self, tmp_path):
        """测试配置验证失败"""
        path = tmp_path / "config.yaml"
        path.write_text(yaml.dump({"verify": {"completeness_sizes": [1, 1, 1]}}), encoding="utf-8")
        with pytest.raises(ConfigError) as exc_info:
            self.manager.load_config(str(path))
        assert "配置验证失败" in str(exc_info.value)

    def test_unknown_section(self, tmp_path):
        """测试额外字段被拒绝"""
        path = tmp_path / "config.yaml"
        path.write_text(yaml.dump({"server": {"port": 8000}}), encoding="utf-8")
        with pytest.raises(ConfigError):
            self.manager.load_config(str(path))

    def test_merge_configs(self):
        """测试嵌套合并不修改默认配置"""
        default = {"field": {"p": 2, "l": 1}, "run": {"seed": 0}}
        merged = self.manager._merge_configs(default, {"field": {"p": 5}, "run": 1})
        assert merged == {"field": {"p": 5, "l": 1}, "run": 1}
        assert default["field"]["p"] == 2

    def test_get_config_before_load(self):
        """测试未加载时获取配置"""
        with pytest.raises(RuntimeError):
            self.manager.get_config()

    def test_section_getters(self):
        """测试各配置段的获取"""
        self.manager.load_config()
        assert self.manager.get_field_config() == {"p": 2, "l": 1, "modulus": None}
        assert self.manager.get_run_config()["path"] == "invariant"
        assert self.manager.get_verify_config()["bruteforce_limit"] == 65536
        assert self.manager.get_log_config()["file_path"] is None


class TestBusinessRules:
    """业务规则验证测试"""

    def test_default_config_is_valid(self):
        """测试默认配置通过验证"""
        manager = ConfigManager()
        manager.load_config()
        assert manager.validate_config()

    def test_field_too_large(self, tmp_path):
        """测试域的阶超出运算表上限"""
        path = tmp_path / "config.yaml"
        path.write_text(yaml.dump({"field": {"p": 2, "l": 8}}), encoding="utf-8")
        manager = ConfigManager(str(path))
        manager.load_config()
        with patch("algebra.gf.MAX_ORDER", 16):
            assert not manager.validate_config()

    def test_missing_log_directory(self, tmp_path):
        """测试日志目录不存在"""
        path = tmp_path / "config.yaml"
        log_file = tmp_path / "nope" / "dcoset.log"
        path.write_text(yaml.dump({"log": {"file_path": str(log_file)}}), encoding="utf-8")
        manager = ConfigManager(str(path))
        manager.load_config()
        assert not manager.validate_config()

    def test_reducible_modulus(self, tmp_path):
        """测试可约模多项式"""
        path = tmp_path / "config.yaml"
        path.write_text(yaml.dump({"field": {"p": 2, "l": 2, "modulus": [1, 0, 1]}}), encoding="utf-8")
        manager = ConfigManager(str(path))
        config = manager.load_config()
        violations = manager.rule_violations(config)
        assert len(violations) == 1
        assert "reducible" in violations[0]

    def test_completeness_budget_only_warns(self):
        """测试枚举规模超限只记警告"""
        manager = ConfigManager()
        config = manager.load_config()
        config = config.model_copy(update={"field": config.field.model_copy(update={"p": 5})})
        with patch("config.manager.logger") as mock_logger:
            assert manager.rule_violations(config) == []
        assert mock_logger.warning.call_count == 1

    def test_validate_without_config(self):
        """测试未加载配置时验证失败"""
        assert not ConfigManager().validate_config()


class TestSaveConfig:
    """配置保存测试"""

    def setup_method(self):
        """设置测试"""
        self.manager = ConfigManager()
        self.manager.load_config()

    @pytest.mark.parametrize("fmt,suffix", [("yaml", ".yaml"), ("json", ".json")])
    def test_save_and_reload(self, tmp_path, fmt, suffix):
        """测试保存后重新加载得到相同配置"""
        path = tmp_path / "out" / f"config{suffix}"
        self.manager.save_config(str(path), format=fmt)

        reloaded = ConfigManager(str(path)).load_config()
        assert reloaded.model_dump() == self.manager.get_config().model_dump()

    def test_unsupported_format(self, tmp_path):
        """测试不支持的保存格式"""
        with pytest.raises(ConfigError):
            self.manager.save_config(str(tmp_path / "config.ini"), format="ini")


class TestGlobalConfig:
    """全局配置函数测试"""

    def setup_method(self):
        """重置全局实例"""
        manager_module._global_config_manager = None

    def teardown_method(self):
        manager_module._global_config_manager = None

    def test_singleton(self):
        """测试全局管理器单例"""
        assert get_config_manager() is get_config_manager()

    def test_init_and_get(self, tmp_path):
        """测试初始化与获取全局配置"""
        path = tmp_path / "config.yaml"
        path.write_text(yaml.dump({"run": {"seed": 9}}), encoding="utf-8")
        config = init_config(str(path))
        assert config.run.seed == 9
        assert get_current_config() is config
