"""
数据模型包

包含输入解析和输出序列化的数据模型定义。
"""

from .requests import (
    FieldPayload, LinRelPayload, CosetPayload, CliConfig,
    load_coset_json, load_relation_json,
    parse_matrix_text, format_matrix_text,
    parse_window_text, format_window_text,
    parse_colligation_text, parse_object
)
from .responses import (
    CheckReport, ErrorResponse, KappaResponse, VerifyResponse,
    dump_json, format_report_text, format_reports_text
)

__all__ = [
    "FieldPayload",
    "LinRelPayload",
    "CosetPayload",
    "CliConfig",
    "load_coset_json",
    "load_relation_json",
    "parse_matrix_text",
    "format_matrix_text",
    "parse_window_text",
    "format_window_text",
    "parse_colligation_text",
    "parse_object",
    "CheckReport",
    "ErrorResponse",
    "KappaResponse",
    "VerifyResponse",
    "dump_json",
    "format_report_text",
    "format_reports_text"
]
