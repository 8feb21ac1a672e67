"""
配置数据模型和验证

基于 Pydantic 的配置模型，提供数据验证和类型检查功能。
环境变量（前缀 DCOSET_，嵌套分隔符 __）优先于配置文件中的值，
例如 DCOSET_FIELD__P=3 会覆盖 field.p。
"""

from typing import Any, Dict, List, Literal, Optional, Tuple, Type

from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from algebra.exceptions import ConfigError


class FieldConfig(BaseModel):
    """有限域配置"""
    p: int = Field(2, ge=2, description="素数特征")
    l: int = Field(1, ge=1, le=8, description="扩张次数")
    modulus: Optional[List[int]] = Field(None, description="模多项式系数（低次在前），为空则自动选取")

    @model_validator(mode="after")
    def validate_modulus(self):
        if self.modulus is not None and len(self.modulus) != self.l + 1:
            raise ValueError(f"模多项式系数个数必须是 l+1 = {self.l + 1}")
        return self


class RunConfig(BaseModel):
    """运行参数"""
    seed: int = Field(0, ge=0, description="根随机种子")
    trials: int = Field(200, ge=0, description="随机检查的试验次数")
    output: Literal["text", "json"] = Field("text", description="输出格式")
    path: Literal["matrix", "invariant", "both"] = Field("invariant", description="⋆ 乘法的计算路径")


class VerifyConfig(BaseModel):
    """验证检查的规模预算"""
    max_block: int = Field(2, ge=0, le=4, description="随机窗口中 |α| 的上限")
    max_pad: int = Field(2, ge=0, le=4, description="随机窗口的额外补齐上限")
    eta_max: int = Field(1, ge=0, le=4, description="穷举陪集时 η 的上限")
    structure_max_size: int = Field(2, ge=0, le=3, description="结构检查中对象尺寸上限")
    k_max: int = Field(2, ge=0, le=4, description="ζ 的指数上限")
    colligation_m: int = Field(2, ge=1, le=4, description="colligation 外部尺寸上限")
    colligation_inner: int = Field(3, ge=0, le=6, description="colligation 内部尺寸上限")
    completeness_sizes: List[int] = Field(
        default=[1, 1, 1, 1, 1, 1],
        description="完备性检查的截断尺寸 N- |a| N+ M- |b| M+"
    )
    bruteforce_limit: int = Field(65536, ge=1, description="q^(N²) 的上限")

    @field_validator('completeness_sizes')
    @classmethod
    def validate_sizes(cls, v):
        if len(v) != 6 or any(x < 0 for x in v):
            raise ValueError("completeness_sizes 必须是 6 个非负整数")
        if v[0] + v[1] + v[2] != v[3] + v[4] + v[5]:
            raise ValueError("completeness_sizes 的行总数与列总数必须相等")
        return v


class LogConfig(BaseModel):
    """日志配置"""
    level: str = Field("WARNING", description="日志级别")
    json_format: bool = Field(False, description="是否输出 JSON 格式日志")
    file_path: Optional[str] = Field(None, description="日志文件路径")

    @field_validator('level')
    @classmethod
    def validate_level(cls, v):
        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if v.upper() not in valid_levels:
            raise ValueError(f"日志级别必须是 {valid_levels} 中的一个")
        return v.upper()


class AppConfig(BaseSettings):
    """应用程序完整配置"""
    field: FieldConfig = FieldConfig()
    run: RunConfig = RunConfig()
    verify: VerifyConfig = VerifyConfig()
    log: LogConfig = LogConfig()

    model_config = SettingsConfigDict(
        env_prefix="DCOSET_",
        env_nested_delimiter="__",
        extra="forbid",  # 禁止额外字段
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # 环境变量覆盖文件值
        return env_settings, init_settings


def validate_config_dict(config_dict: Dict[str, Any]) -> AppConfig:
    """
    验证配置字典并返回 AppConfig 实例

    Args:
        config_dict: 配置字典

    Returns:
        AppConfig: 验证后的配置对象

    Raises:
        ConfigError: 配置验证失败
    """
    try:
        return AppConfig(**config_dict)
    except Exception as e:
        raise ConfigError(f"配置验证失败: {str(e)}") from e


def get_default_config() -> Dict[str, Any]:
    """
    获取默认配置

    Returns:
        Dict[str, Any]: 默认配置字典
    """
    return {
        "field": {
            "p": 2,
            "l": 1,
            "modulus": None
        },
        "run": {
            "seed": 0,
            "trials": 200,
            "output": "text",
            "path": "invariant"
        },
        "verify": {
            "max_block": 2,
            "max_pad": 2,
            "eta_max": 1,
            "structure_max_size": 2,
            "k_max": 2,
            "colligation_m": 2,
            "colligation_inner": 3,
            "completeness_sizes": [1, 1, 1, 1, 1, 1],
            "bruteforce_limit": 65536
        },
        "log": {
            "level": "WARNING",
            "json_format": False,
            "file_path": None
        }
    }
