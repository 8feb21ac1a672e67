"""
服务包

包含日志、错误处理和定理验证相关的服务。
"""
