"""
输出数据模型定义

包含验证报告、错误响应，以及陪集、κ 表、窗口的序列化输出。
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

MAX_WITNESSES = 3


class CheckReport(BaseModel):
    """单项验证检查的报告"""

    name: str = Field(description="检查名称")
    trials: int = Field(0, ge=0, description="试验次数")
    failures: int = Field(0, ge=0, description="失败次数")
    seed: int = Field(0, ge=0, description="根随机种子")
    elapsed: float = Field(0.0, ge=0.0, description="耗时（秒）")
    witnesses: List[Dict[str, Any]] = Field(default_factory=list, description="至多 3 个失败输入")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="检查参数与统计量")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "name": "completeness",
                "trials": 168,
                "failures": 0,
                "seed": 0,
                "elapsed": 0.42,
                "witnesses": [],
                "parameters": {"q": 2, "sizes": [1, 1, 1, 1, 1, 1], "orbits": 6}
            }
        }
    )

    @model_validator(mode="after")
    def validate_witnesses(self):
        if len(self.witnesses) > MAX_WITNESSES:
            raise ValueError(f"at most {MAX_WITNESSES} witnesses are kept")
        if (self.failures > 0) != bool(self.witnesses):
            raise ValueError("witnesses must be present exactly when failures > 0")
        return self

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def merge(self, other: "CheckReport") -> "CheckReport":
        """合并同一检查的两份报告"""
        return CheckReport(
            name=self.name,
            trials=self.trials + other.trials,
            failures=self.failures + other.failures,
            seed=self.seed,
            elapsed=self.elapsed + other.elapsed,
            witnesses=(self.witnesses + other.witnesses)[:MAX_WITNESSES],
            parameters={**other.parameters, **self.parameters},
        )


class ErrorResponse(BaseModel):
    """错误响应模型"""

    success: bool = Field(False, description="命令是否成功")
    error: Dict[str, Any] = Field(description="错误详情")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "success": False,
                "error": {
                    "code": "NOT_COMPOSABLE",
                    "message": "cannot compose (0,1)->(0,1) after (0,2)->(0,2)",
                    "category": "domain",
                    "details": {"command": "coset star"}
                }
            }
        }
    )


class KappaResponse(BaseModel):
    """κ 表与标准窗口"""

    kappa: List[List[int]]
    sizes: List[int] = Field(description="N- |a| N+ M- |b| M+")
    window: str = Field(description="窗口文本")


class VerifyResponse(BaseModel):
    """验证命令的汇总输出"""

    passed: bool
    reports: List[CheckReport]


def dump_json(model: BaseModel, exclude: Optional[Dict[str, Any]] = None) -> str:
    """稳定的 JSON 输出，键顺序固定"""
    return json.dumps(model.model_dump(mode="json", exclude=exclude), ensure_ascii=False, sort_keys=True)


def format_report_text(report: CheckReport) -> str:
    status = "PASS" if report.passed else "FAIL"
    params = " ".join(f"{k}={v}" for k, v in sorted(report.parameters.items()))
    line = f"[{status}] {report.name}: trials={report.trials} failures={report.failures} seed={report.seed}"
    if params:
        line += f" {params}"
    for witness in report.witnesses:
        line += "\n    witness: " + json.dumps(witness, ensure_ascii=False, sort_keys=True)
    return line


def format_reports_text(reports: List[CheckReport]) -> str:
    passed = sum(1 for r in reports if r.passed)
    lines = [format_report_text(r) for r in reports]
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines)
