"""
命令行入口

解析参数、加载配置（默认值 < 配置文件 < 环境变量 < 命令行）、配置日志、分派子命令，
并把异常转换为统一的错误输出和退出码。
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Tuple

from algebra.gf import FieldSpec, field_from_order, field_make
from config.manager import ConfigManager
from config.models import AppConfig, FieldConfig, LogConfig, RunConfig, VerifyConfig
from models.requests import CliConfig, FieldPayload
from models.responses import dump_json
from services.error_handler import error_handler
from services.logging import configure_logging, get_logger
from services.verify import CHECK_NAMES

from .commands import COMMANDS, CommandResult

logger = get_logger(__name__)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _common_options() -> argparse.ArgumentParser:
    """全局选项；既可写在子命令之前，也可写在之后"""
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=str, help="配置文件路径（YAML 或 JSON）")
    common.add_argument("--p", type=int, help="素数特征")
    common.add_argument("--l", type=int, help="扩张次数")
    common.add_argument("--modulus", type=_int_list, help="模多项式系数，低次在前，逗号分隔")
    common.add_argument("--q", type=int, help="域的阶 q = p^l（同时设定 p 与 l）")
    common.add_argument("--seed", type=int, help="根随机种子")
    common.add_argument("--trials", type=int, help="随机检查的试验次数")
    common.add_argument("--output", choices=["text", "json"], help="输出格式")
    common.add_argument("--path", choices=["matrix", "invariant", "both"], help="⋆ 乘法的计算路径")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="日志级别（覆盖配置）")
    return common


def build_parser() -> argparse.ArgumentParser:
    """构造子命令树"""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="dcoset", description="有限域上的双陪集范畴工具包", parents=[common]
    )
    groups = parser.add_subparsers(dest="group", required=True)

    field = groups.add_parser("field", parents=[common], help="显示有限域")
    field.set_defaults(command="field")

    rel = groups.add_parser("rel", help="线性关系").add_subparsers(dest="action", required=True)
    compose = rel.add_parser("compose", parents=[common], help="复合 QP")
    compose.add_argument("relation_q", metavar="Q", help="关系 Q 的 JSON 文件（- 表示标准输入）")
    compose.add_argument("relation_p", metavar="P", help="关系 P 的 JSON 文件")
    compose.set_defaults(command="rel compose")
    for action, text in (("inv", "伪逆"), ("invariants", "ker / dom / im / indef / rank")):
        sub = rel.add_parser(action, parents=[common], help=text)
        sub.add_argument("relation", metavar="P", help="关系的 JSON 文件（- 表示标准输入）")
        sub.set_defaults(command=f"rel {action}")

    coset = groups.add_parser("coset", help="双陪集").add_subparsers(dest="action", required=True)
    chi = coset.add_parser("chi", parents=[common], help="从窗口读出 (χ, η)")
    chi.add_argument("window", nargs="?", default="-", help="窗口文本文件（默认标准输入）")
    chi.set_defaults(command="coset chi")

    star = coset.add_parser("star", parents=[common], help="⋆ 乘法")
    star.add_argument("a", help="左因子：窗口文本或陪集 JSON")
    star.add_argument("b", help="右因子：窗口文本或陪集 JSON")
    star.add_argument("--show-window", action="store_true", help="同时输出乘积窗口（矩阵路径）")
    star.set_defaults(command="coset star")

    for action, text in (("canon", "κ 表与标准窗口"), ("diagram", "两行图示"), ("weight", "测度指数")):
        sub = coset.add_parser(action, parents=[common], help=text)
        sub.add_argument("coset", nargs="?", default="-", help="陪集 JSON 文件（默认标准输入）")
        sub.set_defaults(command=f"coset {action}")

    enum = coset.add_parser("enum", parents=[common], help="枚举 β → α 的陪集")
    enum.add_argument("--alpha", required=True, help="目标对象 lo,hi")
    enum.add_argument("--beta", required=True, help="源对象 lo,hi")
    enum.add_argument("--eta-max", type=int, default=1, help="η 的上限")
    enum.set_defaults(command="coset enum")

    coll = groups.add_parser("colligation", help="colligation").add_subparsers(dest="action", required=True)
    circ = coll.add_parser("circ", parents=[common], help="∘ 乘法")
    circ.add_argument("g", help="colligation 文本文件")
    circ.add_argument("h", help="colligation 文本文件")
    circ.set_defaults(command="colligation circ")
    transfer = coll.add_parser("transfer", parents=[common], help="传递函数")
    transfer.add_argument("g", help="colligation 文本文件（- 表示标准输入）")
    point = transfer.add_mutually_exclusive_group(required=True)
    point.add_argument("--lam", help="λ 的元素文本")
    point.add_argument("--sweep", action="store_true", help="遍历整个域")
    transfer.set_defaults(command="colligation transfer")

    verify = groups.add_parser("verify", parents=[common], help="运行定理验证")
    verify.add_argument("checks", nargs="*", default=[], metavar="CHECK",
                        help=f"检查名称：{', '.join(CHECK_NAMES)} 或 all；为空时空通过")
    verify.add_argument("--sizes", type=_int_list, help="完备性检查的截断尺寸 N- |a| N+ M- |b| M+")
    verify.set_defaults(command="verify")

    return parser


_GLOBAL_KEYS = {"config", "p", "l", "modulus", "q", "seed", "trials", "output", "path", "log_level",
                "group", "action", "command", "sizes"}


def apply_overrides(config: AppConfig, args: argparse.Namespace) -> AppConfig:
    """命令行参数覆盖配置；各子配置重新验证"""
    values = vars(args)

    field_values = config.field.model_dump()
    if "q" in values:
        resolved = field_from_order(values["q"])
        field_values.update({"p": resolved.p, "l": resolved.l, "modulus": None})
    for key in ("p", "l", "modulus"):
        if key in values:
            field_values[key] = values[key]

    run_values = config.run.model_dump()
    run_values.update({k: values[k] for k in ("seed", "trials", "output", "path") if k in values})

    verify_values = config.verify.model_dump()
    if values.get("sizes") is not None:
        verify_values["completeness_sizes"] = values["sizes"]

    log_values = config.log.model_dump()
    if "log_level" in values:
        log_values["level"] = values["log_level"]

    return config.model_copy(update={
        "field": FieldConfig.model_validate(field_values),
        "run": RunConfig.model_validate(run_values),
        "verify": VerifyConfig.model_validate(verify_values),
        "log": LogConfig.model_validate(log_values),
    })


def build_cli_config(config: AppConfig, args: argparse.Namespace) -> Tuple[CliConfig, FieldSpec]:
    payload: Dict[str, Any] = {k: v for k, v in vars(args).items() if k not in _GLOBAL_KEYS}
    cli_config = CliConfig(
        field=FieldPayload(**config.field.model_dump()),
        seed=config.run.seed,
        trials=config.run.trials,
        output=config.run.output,
        path=config.run.path,
        command=args.command,
        payload=payload,
    )
    return cli_config, field_make(config.field.p, config.field.l, config.field.modulus)


def _emit_error(response, output: str) -> None:
    if output == "json":
        print(dump_json(response), file=sys.stderr)
    else:
        error = response.error
        print(f"error: {error['code']}: {error['message']}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """
    命令行主函数

    Returns:
        int: 退出码（0 成功，1 验证失败，2 输入错误，3 运算错误）
    """
    args = build_parser().parse_args(argv)
    command = args.command
    output = getattr(args, "output", "text")
    configure_logging(cache_loggers=False)

    try:
        config = ConfigManager(getattr(args, "config", None)).load_config()
        config = apply_overrides(config, args)
        output = config.run.output
        configure_logging(
            log_level=config.log.level,
            log_file=config.log.file_path,
            json_format=config.log.json_format,
        )
        cli_config, field = build_cli_config(config, args)
        logger.debug("Dispatching command", command=command, q=field.q, seed=cli_config.seed)

        result: CommandResult = COMMANDS[command](cli_config, config, field)
    except Exception as e:
        response, exit_code = error_handler.handle_exception(e, command=command)
        _emit_error(response, output)
        return exit_code

    if result.output:
        print(result.output)
    return result.exit_code
