"""
子命令实现

每个处理函数接收已验证的 CliConfig、应用配置和有限域，返回输出文本与退出码。
输出只写 stdout；日志写 stderr。
"""

import json
import sys
from pathlib import Path
from typing import Callable, Dict, NamedTuple, Union

from algebra.colligation import circ, transfer, transfer_sweep
from algebra.coset import (
    Coset, Window, canonical_kappa, canonical_window, coset_from_window, enumerate_cosets,
    measure_projections, measure_weight, render_diagram, star, star_matrix
)
from algebra.exceptions import CheckFailure
from algebra.gf import FieldSpec
from algebra.relation import LinRel
from config.models import AppConfig
from models.requests import (
    CliConfig, CosetPayload, LinRelPayload, format_matrix_text, format_window_text,
    load_coset_json, load_relation_json, parse_colligation_text, parse_object, parse_window_text
)
from models.responses import (
    KappaResponse, VerifyResponse, dump_json, format_reports_text
)
from services.logging import get_logger
from services.verify import run_checks

logger = get_logger(__name__)


class CommandResult(NamedTuple):
    output: str
    exit_code: int = 0


def read_source(source: str) -> str:
    """'-' 表示标准输入，否则读取文件"""
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text(encoding="utf-8")


# ---- 输出格式 ----

def format_relation_text(rel: LinRel) -> str:
    lines = [f"relation {rel.m} -> {rel.n}, dim {rel.dim}"]
    lines.extend("  " + " ".join(row) for row in rel.space.basis.tolist())
    return "\n".join(lines)


def format_coset_text(c: Coset) -> str:
    chi = c.chi
    return "\n".join([
        f"coset {c.beta} -> {c.alpha}",
        f"chi: {chi.m} -> {chi.n}, dim {chi.dim}, ker {chi.ker.dim}, indef {chi.indef.dim}, rank {chi.rk}",
        *("  " + " ".join(row) for row in chi.space.basis.tolist()),
        f"eta: {c.eta}",
    ])


def render_coset(c: Coset, cfg: CliConfig) -> str:
    if cfg.output == "json":
        return dump_json(CosetPayload.from_coset(c))
    return format_coset_text(c)


def render_relation(rel: LinRel, cfg: CliConfig) -> str:
    if cfg.output == "json":
        return dump_json(LinRelPayload.from_relation(rel))
    return format_relation_text(rel)


def _load_morphism(text: str, field: FieldSpec) -> Union[Window, Coset]:
    """JSON 按陪集解析，其余按窗口文本解析"""
    if text.lstrip().startswith("{"):
        return load_coset_json(text)
    return parse_window_text(text, field)


def _as_window(x: Union[Window, Coset]) -> Window:
    return x if isinstance(x, Window) else canonical_window(x)


def _as_coset(x: Union[Window, Coset]) -> Coset:
    return coset_from_window(x) if isinstance(x, Window) else x


# ---- field ----

def cmd_field(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    elements = [str(x) for x in field.elements()]
    if cfg.output == "json":
        return CommandResult(json.dumps({**field.describe(), "q": field.q, "elements": elements}, sort_keys=True))
    return CommandResult(f"{field!r} modulus={list(field.modulus)}\nelements: {' '.join(elements)}")


# ---- rel ----

def cmd_rel_compose(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    q_rel = load_relation_json(read_source(cfg.payload["relation_q"]), field)
    p_rel = load_relation_json(read_source(cfg.payload["relation_p"]), field)
    return CommandResult(render_relation(q_rel @ p_rel, cfg))


def cmd_rel_inv(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    rel = load_relation_json(read_source(cfg.payload["relation"]), field)
    return CommandResult(render_relation(rel.pseudoinverse(), cfg))


def cmd_rel_invariants(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    rel = load_relation_json(read_source(cfg.payload["relation"]), field)
    inv = rel.invariants()
    if cfg.output == "json":
        return CommandResult(json.dumps({
            "ker": inv.ker.basis.tolist(), "im": inv.im.basis.tolist(), "dom": inv.dom.basis.tolist(),
            "indef": inv.indef.basis.tolist(), "rk": inv.rk
        }, sort_keys=True))
    lines = []
    for name in ("ker", "dom", "im", "indef"):
        space = getattr(inv, name)
        lines.append(f"{name}: dim {space.dim}")
        lines.extend("  " + " ".join(row) for row in space.basis.tolist())
    lines.append(f"rank: {inv.rk}")
    return CommandResult("\n".join(lines))


# ---- coset ----

def cmd_coset_chi(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    w = parse_window_text(read_source(cfg.payload["window"]), field)
    return CommandResult(render_coset(coset_from_window(w), cfg))


def cmd_star(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    """
    ⋆ 乘法，可选矩阵路径、不变量路径或两者

    Raises:
        NotComposable: 源对象与目标对象不一致
        CheckFailure: --path both 时两条路径结果不同
    """
    a = _load_morphism(read_source(cfg.payload["a"]), field)
    b = _load_morphism(read_source(cfg.payload["b"]), field)

    product_window = None
    if cfg.path in ("matrix", "both"):
        product_window = star_matrix(_as_window(a), _as_window(b))
        result = coset_from_window(product_window)
    if cfg.path in ("invariant", "both"):
        via_invariants = star(_as_coset(a), _as_coset(b))
        if cfg.path == "both" and via_invariants != result:
            raise CheckFailure(
                "matrix path and invariant path disagree",
                {"matrix": repr(result), "invariant": repr(via_invariants)}
            )
        result = via_invariants

    output = render_coset(result, cfg)
    if cfg.payload.get("show_window") and product_window is not None and cfg.output == "text":
        output += "\nwindow:\n" + format_window_text(product_window)
    return CommandResult(output)


def cmd_canon(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    """κ 表与标准窗口；读回标准窗口必须得到原陪集"""
    c = load_coset_json(read_source(cfg.payload["coset"]))
    table = canonical_kappa(c)
    w = canonical_window(c)
    if coset_from_window(w) != c:
        raise CheckFailure("canonical window does not reproduce the coset", {"kappa": table.tolist()})
    sizes = [table.n_minus, table.a_size, table.n_plus, table.m_minus, table.b_size, table.m_plus]
    if cfg.output == "json":
        return CommandResult(dump_json(KappaResponse(kappa=table.tolist(), sizes=sizes, window=format_window_text(w))))
    lines = ["kappa:"]
    lines.extend("  " + " ".join(str(x) for x in row) for row in table.tolist())
    lines.append("window:")
    lines.append(format_window_text(w))
    return CommandResult("\n".join(lines))


def cmd_diagram(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    c = load_coset_json(read_source(cfg.payload["coset"]))
    return CommandResult(render_diagram(c))


def cmd_coset_enum(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    alpha = parse_object(cfg.payload["alpha"])
    beta = parse_object(cfg.payload["beta"])
    cosets = enumerate_cosets(beta, alpha, cfg.payload["eta_max"], field)
    if cfg.output == "json":
        return CommandResult("\n".join(dump_json(CosetPayload.from_coset(c)) for c in cosets))
    blocks = [format_coset_text(c) for c in cosets]
    blocks.append(f"{len(cosets)} cosets")
    return CommandResult("\n\n".join(blocks))


def cmd_coset_weight(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    c = load_coset_json(read_source(cfg.payload["coset"]))
    weight = measure_weight(c)
    to_beta, to_alpha = measure_projections(c)
    if cfg.output == "json":
        return CommandResult(json.dumps(
            {"q": c.field.q, "weight": weight, "projection_beta": to_beta, "projection_alpha": to_alpha},
            sort_keys=True
        ))
    q = c.field.q
    return CommandResult(f"weight: {q}^{weight}\nprojection to beta: {q}^{to_beta}\nprojection to alpha: {q}^{to_alpha}")


# ---- colligation ----

def cmd_circ(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    g = parse_colligation_text(read_source(cfg.payload["g"]), field)
    h = parse_colligation_text(read_source(cfg.payload["h"]), field)
    product = circ(g, h)
    return CommandResult(f"{product.m} {product.inner}\n" + "\n".join(" ".join(r) for r in product.mat.tolist()))


def cmd_transfer(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    """单点求值或遍历整个域；遍历时奇异点只标记，不中断"""
    g = parse_colligation_text(read_source(cfg.payload["g"]), field)
    if not cfg.payload.get("sweep"):
        value = transfer(g, field.parse_scalar(cfg.payload["lam"]))
        return CommandResult(format_matrix_text(value))
    lines = []
    singular = 0
    for lam, value in transfer_sweep(g):
        if value is None:
            singular += 1
            lines.append(f"{lam}: singular")
        else:
            lines.append(f"{lam}: {format_matrix_text(value)}")
    if singular:
        logger.info("Singular pencil points skipped", count=singular)
    return CommandResult("\n".join(lines))


# ---- verify ----

def cmd_verify(cfg: CliConfig, config: AppConfig, field: FieldSpec) -> CommandResult:
    """运行所选检查；全部通过时退出码为 0，否则为 1"""
    reports = run_checks(cfg.payload.get("checks", []), config, field)
    passed = all(r.passed for r in reports)
    if cfg.output == "json":
        output = dump_json(VerifyResponse(passed=passed, reports=reports), exclude={"reports": {"__all__": {"elapsed"}}})
    else:
        output = format_reports_text(reports)
    return CommandResult(output, 0 if passed else 1)


COMMANDS: Dict[str, Callable[[CliConfig, AppConfig, FieldSpec], CommandResult]] = {
    "field": cmd_field,
    "rel compose": cmd_rel_compose,
    "rel inv": cmd_rel_inv,
    "rel invariants": cmd_rel_invariants,
    "coset chi": cmd_coset_chi,
    "coset star": cmd_star,
    "coset canon": cmd_canon,
    "coset diagram": cmd_diagram,
    "coset enum": cmd_coset_enum,
    "coset weight": cmd_coset_weight,
    "colligation circ": cmd_circ,
    "colligation transfer": cmd_transfer,
    "verify": cmd_verify,
}
