"""
配置管理器

按 默认值 < 配置文件 < 环境变量 的顺序构造 AppConfig；命令行覆盖由 cli.app 在此之后应用。
"""

import json
import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import yaml

from algebra import gf
from algebra.exceptions import ConfigError, DcosetError
from services.logging import get_logger

from .models import AppConfig, get_default_config, validate_config_dict

logger = get_logger(__name__)


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        return yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML 格式错误: {e}")


def _read_json(path: Path) -> Dict[str, Any]:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"JSON 格式错误: {e}")


_READERS: Dict[str, Callable[[Path], Dict[str, Any]]] = {
    ".yaml": _read_yaml,
    ".yml": _read_yaml,
    ".json": _read_json,
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigManager:
    """配置管理器类"""

    def __init__(self, config_path: Optional[str] = None):
        """
        Args:
            config_path: 配置文件路径，为 None 时只用默认值与环境变量
        """
        self._config: Optional[AppConfig] = None
        self._config_path = config_path
        self._default_config = get_default_config()

    def load_config(self, config_path: Optional[str] = None) -> AppConfig:
        """
        加载配置

        Args:
            config_path: 配置文件路径，覆盖初始化时的路径

        Returns:
            AppConfig: 验证后的配置

        Raises:
            FileNotFoundError: 配置文件不存在
            ConfigError: 文件格式不支持、解析失败或验证失败
        """
        if config_path:
            self._config_path = config_path

        if not self._config_path:
            logger.debug("未指定配置文件，使用默认配置")
            self._config = validate_config_dict(self._default_config)
            return self._config

        path = Path(self._config_path)
        if not path.exists():
            raise FileNotFoundError(f"配置文件不存在: {self._config_path}")

        try:
            reader = _READERS.get(path.suffix.lower())
            if reader is None:
                raise ConfigError(f"不支持的配置文件格式: {path.suffix}")
            self._config = validate_config_dict(self._merge_configs(self._default_config, reader(path)))
        except Exception as e:
            raise ConfigError(f"加载配置文件失败 {self._config_path}: {e}") from e

        logger.debug("成功加载配置文件", path=self._config_path, q=self._config.field.p ** self._config.field.l)
        return self._config

    def _merge_configs(self, default: Dict[str, Any], file_config: Dict[str, Any]) -> Dict[str, Any]:
        """文件值逐段覆盖默认值，不修改 default"""
        return _deep_merge(default, file_config)

    def get_config(self) -> AppConfig:
        """
        Raises:
            RuntimeError: 配置未加载
        """
        if self._config is None:
            raise RuntimeError("配置未加载，请先调用 load_config()")
        return self._config

    def get_field_config(self) -> Dict[str, Any]:
        return self.get_config().field.model_dump()

    def get_run_config(self) -> Dict[str, Any]:
        return self.get_config().run.model_dump()

    def get_verify_config(self) -> Dict[str, Any]:
        return self.get_config().verify.model_dump()

    def get_log_config(self) -> Dict[str, Any]:
        return self.get_config().log.model_dump()

    def validate_config(self) -> bool:
        """检查验证模型之外的规则；未加载或不满足时返回 False"""
        try:
            return not self.rule_violations(self.get_config())
        except Exception as e:
            logger.error("配置验证失败", error=str(e))
            return False

    def rule_violations(self, config: AppConfig) -> List[str]:
        """
        返回不满足的业务规则

        域的阶必须在运算表上限之内且模多项式可用；日志文件目录必须存在。
        完备性检查的枚举规模超过 bruteforce_limit 只记警告，其他检查仍可运行。
        """
        violations: List[str] = []
        q = config.field.p ** config.field.l
        if q > gf.MAX_ORDER:
            violations.append(f"field order {q} exceeds {gf.MAX_ORDER}")
        else:
            try:
                gf.field_make(config.field.p, config.field.l, config.field.modulus)
            except DcosetError as e:
                violations.append(str(e))

        if config.log.file_path:
            log_dir = os.path.dirname(config.log.file_path)
            if log_dir and not os.path.isdir(log_dir):
                violations.append(f"log directory does not exist: {log_dir}")

        n = sum(config.verify.completeness_sizes[:3])
        if q ** (n * n) > config.verify.bruteforce_limit:
            logger.warning("完备性检查的枚举规模超出上限", q=q, n=n, limit=config.verify.bruteforce_limit)

        for violation in violations:
            logger.warning("配置不满足业务规则", rule=violation)
        return violations

    def reload_config(self) -> AppConfig:
        return self.load_config()

    def save_config(self, output_path: str, format: str = 'yaml') -> None:
        """
        保存当前配置

        Args:
            output_path: 输出文件路径，父目录不存在时创建
            format: 'yaml' 或 'json'

        Raises:
            RuntimeError: 配置未加载
            ConfigError: 不支持的格式
        """
        data = self.get_config().model_dump()
        fmt = format.lower()
        if fmt == 'yaml':
            text = yaml.safe_dump(data, default_flow_style=False, allow_unicode=True, sort_keys=False)
        elif fmt == 'json':
            text = json.dumps(data, indent=2, ensure_ascii=False)
        else:
            raise ConfigError(f"不支持的格式: {format}")

        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.debug("配置已保存", path=output_path, format=fmt)


# 全局配置管理器实例
_global_config_manager: Optional[ConfigManager] = None


def get_config_manager() -> ConfigManager:
    global _global_config_manager
    if _global_config_manager is None:
        _global_config_manager = ConfigManager()
    return _global_config_manager


def init_config(config_path: Optional[str] = None) -> AppConfig:
    """加载全局配置"""
    return get_config_manager().load_config(config_path)


def get_current_config() -> AppConfig:
    return get_config_manager().get_config()
