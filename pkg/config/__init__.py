"""配置包：配置模型与配置管理器"""

from .models import (
    FieldConfig,
    RunConfig,
    VerifyConfig,
    LogConfig,
    AppConfig,
    validate_config_dict,
    get_default_config
)

from .manager import (
    ConfigManager,
    get_config_manager,
    init_config,
    get_current_config
)

__all__ = [
    # Models
    'FieldConfig',
    'RunConfig',
    'VerifyConfig',
    'LogConfig',
    'AppConfig',
    'validate_config_dict',
    'get_default_config',

    # Manager
    'ConfigManager',
    'get_config_manager',
    'init_config',
    'get_current_config'
]
