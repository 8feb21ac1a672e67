"""
命令行包

包含参数解析与子命令实现。
"""

from .app import build_parser, main

__all__ = [
    "build_parser",
    "main"
]
