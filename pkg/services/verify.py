"""
定理验证服务

以确定性的随机试验和穷举检查执行双陪集范畴的全部性质：⋆ 乘法的良定义性与结合律、
矩阵路径与不变量路径的一致性、暴力轨道枚举的完备性、中心元与序结构、colligation 传递函数、
锥 Δ 以及有限域与线性关系的基础性质。数学上的失败只记入报告，不抛出异常。
"""

import itertools
import time
from collections import Counter, deque
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from algebra.colligation import (
    Colligation, circ, transfer, transfer_agree, transfer_conjugation_invariance, transfer_sweep
)
from algebra.coset import (
    Coset, GeneratorFamily, ObjectA, Window, canonical_kappa, canonical_window, cone_contains,
    coset_from_window, embed_endomorphism, enumerate_cosets, identity_coset, in_q_group, involute,
    j_kappa_window, kappa_from_corners, kappa_tables, lambda_mu_theta, pad, precedes, q_generator,
    q_generators, shift_morphism, star, star_matrix, window_xi, zeta, zeta_window
)
from algebra.exceptions import ConfigError, DcosetError, InvariantViolation, TooLarge
from algebra.gf import FieldSpec
from algebra.linalg import (
    Mat, count_subspaces, enumerate_gl, enumerate_subspaces, gaussian_binomial, random_invertible
)
from algebra.relation import LinRel, enumerate_relations
from config.models import AppConfig
from models.requests import format_matrix_text, format_window_text
from models.responses import MAX_WITNESSES, CheckReport
from services.logging import clear_run_context, get_logger, log_performance, run_tracker, set_run_context

logger = get_logger(__name__)

EXHAUSTIVE_FIELD_ORDER = 16
MAX_UNIT_RELATIONS = 12

CHECK_NAMES = (
    "well-defined", "assoc", "iso", "completeness", "structure", "colligation", "cone", "foundations"
)


class _Tally:
    """累计试验次数、失败次数与失败样例"""

    def __init__(self, name: str, seed: int, parameters: Optional[Dict[str, Any]] = None):
        self.name = name
        self.seed = seed
        self.parameters = dict(parameters or {})
        self.trials = 0
        self.failures = 0
        self.witnesses: List[Dict[str, Any]] = []
        self._start = time.perf_counter()

    def expect(self, ok: bool, witness: Callable[[], Dict[str, Any]]) -> bool:
        if not ok:
            self.fail(witness())
        return ok

    def fail(self, witness: Dict[str, Any]) -> None:
        self.failures += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)
        logger.debug("Check failed", check=self.name, witness=witness)

    def guard(self, body: Callable[[], None], witness: Callable[[], Dict[str, Any]]) -> None:
        """执行一次试验；运算异常记为失败"""
        self.trials += 1
        try:
            body()
        except DcosetError as e:
            self.fail({**witness(), "error": type(e).__name__, "message": str(e)})

    def report(self) -> CheckReport:
        return CheckReport(
            name=self.name,
            trials=self.trials,
            failures=self.failures,
            seed=self.seed,
            elapsed=time.perf_counter() - self._start,
            witnesses=self.witnesses,
            parameters=self.parameters,
        )


# ---- 随机输入 ----

def _streams(seed: int, count: int) -> List[np.random.Generator]:
    """每次试验独立的随机流，单个样例可按 (seed, index) 单独复现"""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def random_object(rng: np.random.Generator, max_block: int, spread: int = 2) -> ObjectA:
    lo = int(rng.integers(-spread, spread + 1))
    return ObjectA.of(lo, lo + int(rng.integers(0, max_block + 1)))


def random_window(
    alpha: ObjectA, beta: ObjectA, field: FieldSpec, rng: np.random.Generator, max_pad: int
) -> Window:
    """β → α 的随机窗口，补齐尺寸取满足块相容条件的最小值再加随机余量"""
    shift_minus = beta.lo - alpha.lo
    shift_plus = alpha.hi - beta.hi
    n_minus = max(0, -shift_minus) + int(rng.integers(0, max_pad + 1))
    n_plus = max(0, -shift_plus) + int(rng.integers(0, max_pad + 1))
    m_minus, m_plus = n_minus + shift_minus, n_plus + shift_plus
    size = n_minus + alpha.size + n_plus
    return Window(
        alpha, beta, n_minus, n_plus, m_minus, m_plus,
        random_invertible(field, size, rng), check_invertible=False
    )


def _with_mat(w: Window, mat: Mat) -> Window:
    return Window(w.alpha, w.beta, w.n_minus, w.n_plus, w.m_minus, w.m_plus, mat, check_invertible=False)


def small_objects(max_size: int, los: Sequence[int] = (0, 1)) -> List[ObjectA]:
    return [ObjectA.of(lo, lo + s) for s in range(max_size + 1) for lo in los]


def _coset_witness(*cosets: Coset) -> Dict[str, Any]:
    return {
        f"c{i}": {"beta": str(c.beta), "alpha": str(c.alpha), "chi": c.chi.space.basis.tolist(), "eta": c.eta}
        for i, c in enumerate(cosets)
    }


# ---- ⋆ 乘法的良定义性 ----

@log_performance("verify.well_defined")
def check_well_definedness(
    field: FieldSpec, trials: int = 200, seed: int = 0, max_block: int = 2, max_pad: int = 2
) -> CheckReport:
    """
    用四类生成元扰动窗口，检查 ⋆ 乘积的双陪集不变

    每次试验依次用四类随机生成元乘 A 的左右两侧与 B 的左右两侧，比较 (χ, η)。
    对 A·Φ 与 Φ·B 还检查显式分解：
    (A·Φ)⋆B = (A⋆B)·Γ，A⋆(Φ·B) = Δ·(A⋆B)，其中 Γ、Δ 属于乘积对应分块下的 Q̃。
    参数中的 <family>_trials 是各类生成元实际完成的试验数。
    """
    tally = _Tally("well-defined", seed, {"q": field.q, "max_block": max_block, "max_pad": max_pad})
    families = list(GeneratorFamily)
    completed: Counter = Counter()

    for index, rng in enumerate(_streams(seed, trials)):
        alpha, beta, gamma = (random_object(rng, max_block) for _ in range(3))
        a = random_window(alpha, beta, field, rng, max_pad)
        b = random_window(beta, gamma, field, rng, max_pad)
        extra = (int(rng.integers(0, 2)), int(rng.integers(0, 2)))
        current = {"family": None}

        def witness(a=a, b=b, index=index, current=current):
            family = current["family"]
            return {"trial": index, "family": family.value if family else None,
                    "a": format_window_text(a), "b": format_window_text(b)}

        def body(a=a, b=b, extra=extra, rng=rng, current=current, witness=witness):
            base = star_matrix(a, b)
            expected = coset_from_window(base)
            padded = coset_from_window(star_matrix(pad(a, *extra), b))
            tally.expect(padded == expected, lambda: {
                **witness(), "side": "padded", **_coset_witness(expected, padded)
            })
            for family in families:
                current["family"] = family
                _perturb_with_family(tally, family, a, b, base, expected, rng, witness)
                completed[family] += 1

        tally.guard(body, witness)

    for family in families:
        tally.parameters[f"{family.value}_trials"] = completed[family]
    return tally.report()


def _perturb_with_family(
    tally: _Tally,
    family: GeneratorFamily,
    a: Window,
    b: Window,
    base: Window,
    expected: Coset,
    rng: np.random.Generator,
    witness: Callable[[], Dict[str, Any]],
) -> None:
    field = a.field
    phi_a_right = q_generator(family, *a.col_split, field, rng)
    phi_a_left = q_generator(family, *a.row_split, field, rng)
    phi_b_left = q_generator(family, *b.row_split, field, rng)
    phi_b_right = q_generator(family, *b.col_split, field, rng)

    perturbed = {
        "a_right": star_matrix(_with_mat(a, a.mat @ phi_a_right), b),
        "a_left": star_matrix(_with_mat(a, phi_a_left @ a.mat), b),
        "b_left": star_matrix(a, _with_mat(b, phi_b_left @ b.mat)),
        "b_right": star_matrix(a, _with_mat(b, b.mat @ phi_b_right)),
    }
    for side, product in perturbed.items():
        got = coset_from_window(product)
        tally.expect(got == expected, lambda side=side, got=got: {
            **witness(), "side": side, **_coset_witness(expected, got)
        })

    gamma_mat = base.mat.inverse() @ perturbed["a_right"].mat
    tally.expect(in_q_group(gamma_mat, *base.col_split), lambda: {
        **witness(), "side": "a_right", "gamma": format_matrix_text(gamma_mat)
    })
    delta_mat = perturbed["b_left"].mat @ base.mat.inverse()
    tally.expect(in_q_group(delta_mat, *base.row_split), lambda: {
        **witness(), "side": "b_left", "delta": format_matrix_text(delta_mat)
    })

    if phi_a_right == Mat.identity(field, phi_a_right.rows):
        tally.expect(perturbed["a_right"] == base, lambda: {**witness(), "side": "identity"})


# ---- 结合律 ----

@log_performance("verify.associativity")
def check_associativity(
    field: FieldSpec,
    mode: str = "exhaustive",
    objects: Optional[Sequence[ObjectA]] = None,
    eta_max: int = 1,
    trials: int = 200,
    seed: int = 0,
    max_block: int = 2,
    max_pad: int = 2,
) -> CheckReport:
    """
    (𝔞⋆𝔟)⋆𝔠 = 𝔞⋆(𝔟⋆𝔠)

    exhaustive 模式遍历 objects 中全部对象链上 η ≤ eta_max 的陪集三元组（不变量路径）；
    random 模式比较随机窗口的两种结合顺序（矩阵路径），并与不变量路径对照。
    """
    if mode not in ("exhaustive", "random"):
        raise ConfigError(f"unknown associativity mode: {mode}")
    tally = _Tally("assoc", seed, {"q": field.q, "mode": mode})

    if mode == "exhaustive":
        objects = list(objects) if objects is not None else [ObjectA.of(0, 1), ObjectA.of(1, 2)]
        tally.parameters.update({"objects": [str(o) for o in objects], "eta_max": eta_max})
        homs: Dict[Tuple[ObjectA, ObjectA], List[Coset]] = {}

        def hom(src: ObjectA, tgt: ObjectA) -> List[Coset]:
            if (src, tgt) not in homs:
                homs[(src, tgt)] = enumerate_cosets(src, tgt, eta_max, field)
            return homs[(src, tgt)]

        products: Dict[Tuple[Coset, Coset], Coset] = {}

        def cached_star(x: Coset, y: Coset) -> Coset:
            if (x, y) not in products:
                products[(x, y)] = star(x, y)
            return products[(x, y)]

        for delta, gamma, beta, alpha in itertools.product(objects, repeat=4):
            for a, b, c in itertools.product(hom(beta, alpha), hom(gamma, beta), hom(delta, gamma)):
                def body(a=a, b=b, c=c):
                    left = star(cached_star(a, b), c)
                    right = star(a, cached_star(b, c))
                    tally.expect(left == right, lambda: _coset_witness(a, b, c, left, right))

                tally.guard(body, lambda a=a, b=b, c=c: _coset_witness(a, b, c))
        return tally.report()

    tally.parameters.update({"max_block": max_block, "max_pad": max_pad})
    for index, rng in enumerate(_streams(seed, trials)):
        alpha, beta, gamma, delta = (random_object(rng, max_block) for _ in range(4))
        a = random_window(alpha, beta, field, rng, max_pad)
        b = random_window(beta, gamma, field, rng, max_pad)
        c = random_window(gamma, delta, field, rng, max_pad)

        def witness(a=a, b=b, c=c, index=index):
            return {"trial": index, "a": format_window_text(a), "b": format_window_text(b),
                    "c": format_window_text(c)}

        def body(a=a, b=b, c=c):
            left = coset_from_window(star_matrix(star_matrix(a, b), c))
            right = coset_from_window(star_matrix(a, star_matrix(b, c)))
            ca, cb, cc = (coset_from_window(w) for w in (a, b, c))
            invariant = star(star(ca, cb), cc)
            tally.expect(left == right == invariant, lambda: {
                **witness(), **_coset_witness(left, right, invariant)
            })

        tally.guard(body, witness)
    return tally.report()


# ---- 矩阵路径与不变量路径 ----

def xi_correction(a: Coset, b: Coset) -> int:
    """ξ(𝔞⋆𝔟) = ξ(𝔞) + ξ(𝔟) − dim(ker χ(𝔞) ∩ indef χ(𝔟)) 中的修正项"""
    return (a.chi.ker & b.chi.indef).dim


@log_performance("verify.isomorphism")
def check_isomorphism(
    field: FieldSpec,
    trials: int = 200,
    seed: int = 0,
    max_block: int = 2,
    max_pad: int = 2,
    objects: Optional[Sequence[ObjectA]] = None,
    eta_max: int = 1,
) -> CheckReport:
    """
    矩阵路径与不变量路径给出相同的 (χ, η)

    随机窗口对上比较两条路径，并检查 ξ 的窗口值、逆矩阵实现的对合；
    在枚举的陪集对上检查 ξ 形式与 η 形式的修正项一致。
    """
    tally = _Tally("iso", seed, {"q": field.q, "max_block": max_block, "max_pad": max_pad})

    for index, rng in enumerate(_streams(seed, trials)):
        alpha, beta, gamma = (random_object(rng, max_block) for _ in range(3))
        a = random_window(alpha, beta, field, rng, max_pad)
        b = random_window(beta, gamma, field, rng, max_pad)

        def witness(a=a, b=b, index=index):
            return {"trial": index, "a": format_window_text(a), "b": format_window_text(b)}

        def body(a=a, b=b):
            product = star_matrix(a, b)
            via_matrix = coset_from_window(product)
            ca, cb = coset_from_window(a), coset_from_window(b)
            via_invariants = star(ca, cb)
            tally.expect(via_matrix == via_invariants, lambda: {
                **witness(), **_coset_witness(via_matrix, via_invariants)
            })
            tally.expect(window_xi(product) == via_matrix.xi, lambda: {
                **witness(), "window_xi": window_xi(product), "xi": via_matrix.xi
            })
            tally.expect(coset_from_window(a.inverse()) == involute(ca), lambda: {
                **witness(), "side": "involution"
            })

        tally.guard(body, witness)

    objects = list(objects) if objects is not None else small_objects(1)
    for beta, alpha, gamma in itertools.product(objects, repeat=3):
        for a, b in itertools.product(
            enumerate_cosets(beta, alpha, eta_max, field), enumerate_cosets(gamma, beta, eta_max, field)
        ):
            def body(a=a, b=b):
                product = star(a, b)
                expected = a.xi + b.xi - xi_correction(a, b)
                tally.expect(product.xi == expected, lambda: {
                    **_coset_witness(a, b, product), "expected_xi": expected
                })

            tally.guard(body, lambda a=a, b=b: _coset_witness(a, b))

    return tally.report()


# ---- 完备性：暴力轨道枚举 ----

def _orbits(elements: Iterable[Mat], left: List[Mat], right: List[Mat]) -> Tuple[Dict[bytes, int], List[Mat]]:
    """
    在 left·g·right 作用下对群元素做广度优先搜索

    Returns:
        元素键到轨道编号的映射，以及各轨道的代表元
    """
    orbit_of: Dict[bytes, int] = {}
    representatives: List[Mat] = []
    for g in elements:
        if g.key() in orbit_of:
            continue
        orbit_id = len(representatives)
        representatives.append(g)
        orbit_of[g.key()] = orbit_id
        queue = deque([g])
        while queue:
            x = queue.popleft()
            for y in itertools.chain((h @ x for h in left), (x @ h for h in right)):
                if y.key() not in orbit_of:
                    orbit_of[y.key()] = orbit_id
                    queue.append(y)
    return orbit_of, representatives


def _count_relations(a: int, b: int, field: FieldSpec) -> Counter:
    """按 (dim ker, dim indef, rk) 统计 F^b ⇉ F^a 的关系个数"""
    return Counter((r.ker.dim, r.indef.dim, r.rk) for r in enumerate_relations(b, a, field))


@log_performance("verify.completeness")
def check_completeness_bruteforce(
    field: FieldSpec,
    sizes: Sequence[int] = (1, 1, 1, 1, 1, 1),
    bruteforce_limit: int = 65536,
) -> CheckReport:
    """
    用轨道枚举验证 (χ, η) 是完全不变量

    细轨道：左右分别由 Q̃ 生成元作用（中间块为单位阵），轨道与可实现的 (χ, η) 一一对应，
    个数为各 κ 表对应的关系个数之和。
    粗轨道：再加入中间块的 GL，轨道与 κ 表一一对应，每个 J_κ 落在不同轨道。

    Raises:
        TooLarge: q^(N²) 超过 bruteforce_limit
    """
    n_minus, a, n_plus, m_minus, b, m_plus = (int(x) for x in sizes)
    if n_minus + a + n_plus != m_minus + b + m_plus:
        raise ConfigError("row and column sizes must have the same total")
    n = n_minus + a + n_plus
    if field.q ** (n * n) > bruteforce_limit:
        raise TooLarge(f"q^(N^2) = {field.q ** (n * n)} exceeds {bruteforce_limit}", bruteforce_limit)

    alpha = ObjectA.of(0, a)
    beta_lo = m_minus - n_minus + alpha.lo
    beta = ObjectA.of(beta_lo, beta_lo + b)
    tally = _Tally("completeness", 0, {"q": field.q, "sizes": [n_minus, a, n_plus, m_minus, b, m_plus]})

    def window(g: Mat) -> Window:
        return Window(alpha, beta, n_minus, n_plus, m_minus, m_plus, g, check_invertible=False)

    elements = list(enumerate_gl(field, n, limit=bruteforce_limit))
    invariants = {g.key(): coset_from_window(window(g)) for g in elements}
    tables = kappa_tables(n_minus, a, n_plus, m_minus, b, m_plus)
    relation_counts = _count_relations(a, b, field)
    expected_fine = sum(relation_counts[(t[1, 2], t[2, 1], t[2, 2])] for t in tables)

    # 细轨道
    fine_of, fine_reps = _orbits(
        elements,
        q_generators(n_minus, a, n_plus, field),
        q_generators(m_minus, b, m_plus, field),
    )
    tally.trials += len(elements)
    orbit_value: Dict[int, Coset] = {}
    for g in elements:
        orbit_id, value = fine_of[g.key()], invariants[g.key()]
        seen = orbit_value.setdefault(orbit_id, value)
        tally.expect(seen == value, lambda g=g, seen=seen, value=value: {
            "orbit": orbit_id, "g": format_matrix_text(g), **_coset_witness(seen, value)
        })
    tally.expect(len(set(orbit_value.values())) == len(fine_reps), lambda: {
        "reason": "distinct orbits share (chi, eta)", "orbits": len(fine_reps)
    })
    tally.expect(len(fine_reps) == expected_fine, lambda: {
        "reason": "fine orbit count", "orbits": len(fine_reps), "expected": expected_fine
    })

    # 粗轨道
    coarse_of, coarse_reps = _orbits(
        elements,
        q_generators(n_minus, a, n_plus, field, include_middle=True),
        q_generators(m_minus, b, m_plus, field, include_middle=True),
    )

    def corners(c: Coset) -> Tuple[int, int, int, int]:
        return c.chi.ker.dim, c.chi.indef.dim, c.chi.rk, c.eta

    coarse_value: Dict[int, Tuple[int, int, int, int]] = {}
    for g in elements:
        orbit_id, value = coarse_of[g.key()], corners(invariants[g.key()])
        seen = coarse_value.setdefault(orbit_id, value)
        tally.expect(seen == value, lambda g=g, seen=seen, value=value: {
            "orbit": orbit_id, "g": format_matrix_text(g), "corners": [list(seen), list(value)]
        })
    tally.expect(len(set(coarse_value.values())) == len(coarse_reps), lambda: {
        "reason": "distinct coarse orbits share corners", "orbits": len(coarse_reps)
    })
    tally.expect(len(coarse_reps) == len(tables), lambda: {
        "reason": "coarse orbit count", "orbits": len(coarse_reps), "expected": len(tables)
    })
    j_orbits = {coarse_of[j_kappa_window(t, alpha, beta, field).mat.key()] for t in tables}
    tally.expect(len(j_orbits) == len(tables), lambda: {
        "reason": "canonical representatives share an orbit", "tables": len(tables)
    })

    if alpha == beta and (n_minus, n_plus) == (m_minus, m_plus):
        identity = invariants[Mat.identity(field, n).key()]
        tally.expect(identity == identity_coset(alpha, field), lambda: {
            "reason": "identity orbit", **_coset_witness(identity)
        })

    tally.parameters.update({
        "elements": len(elements),
        "orbits": len(fine_reps),
        "expected_orbits": expected_fine,
        "kappa_tables": len(tables),
        "coarse_orbits": len(coarse_reps),
    })
    logger.info("Orbit enumeration finished", **tally.parameters)
    return tally.report()


# ---- 中心元、序结构与对合 ----

@log_performance("verify.structure")
def check_structure(field: FieldSpec, max_size: int = 2, k_max: int = 2, eta_max: int = 1) -> CheckReport:
    """ζ 的中心性与乘法、λ/μ/θ 恒等式、平移态射、自同态嵌入与对合的反同态性"""
    tally = _Tally("structure", 0, {"q": field.q, "max_size": max_size, "k_max": k_max})
    objects = small_objects(max_size)
    small = small_objects(min(max_size, 1))
    tally.parameters["centrality_max_size"] = max(o.size for o in objects)

    # ζ
    for alpha in objects:
        for k in range(k_max + 1):
            def body(alpha=alpha, k=k):
                z = zeta(alpha, k, field)
                w = {"object": str(alpha), "k": k}
                tally.expect(coset_from_window(zeta_window(alpha, k, field)) == z,
                             lambda: {**w, "reason": "zeta window"})
                tally.expect(involute(z) == z, lambda: {**w, "reason": "zeta self-adjoint"})
                if k == 0:
                    tally.expect(z == identity_coset(alpha, field), lambda: {**w, "reason": "zeta^0 is the unit"})
                for m in range(k_max + 1):
                    tally.expect(star(z, zeta(alpha, m, field)) == zeta(alpha, k + m, field),
                                 lambda m=m: {**w, "l": m, "reason": "zeta product"})
                    window_product = star_matrix(zeta_window(alpha, k, field), zeta_window(alpha, m, field))
                    tally.expect(coset_from_window(window_product) == zeta(alpha, k + m, field),
                                 lambda m=m: {**w, "l": m, "reason": "zeta window product"})

            tally.guard(body, lambda alpha=alpha, k=k: {"object": str(alpha), "k": k})

    for alpha, beta in itertools.product(objects, repeat=2):
        for c in enumerate_cosets(beta, alpha, eta_max, field):
            for k in range(k_max + 1):
                def body(c=c, k=k):
                    left = star(zeta(c.alpha, k, field), c)
                    right = star(c, zeta(c.beta, k, field))
                    tally.expect(left == right, lambda: {**_coset_witness(c, left, right), "k": k})

                tally.guard(body, lambda c=c, k=k: {**_coset_witness(c), "k": k})

    # λ / μ / θ
    for alpha, beta in itertools.product(objects, repeat=2):
        if not precedes(beta, alpha):
            continue

        def body(alpha=alpha, beta=beta):
            lam, mu, theta = lambda_mu_theta(alpha, beta, field)
            w = {"alpha": str(alpha), "beta": str(beta)}
            tally.expect(star(lam, mu) == theta, lambda: {**w, "reason": "lambda*mu = theta"})
            tally.expect(star(mu, lam) == identity_coset(beta, field), lambda: {**w, "reason": "mu*lambda = 1"})
            tally.expect(star(theta, theta) == theta, lambda: {**w, "reason": "theta idempotent"})
            tally.expect(involute(lam) == mu, lambda: {**w, "reason": "lambda* = mu"})
            tally.expect(involute(theta) == theta, lambda: {**w, "reason": "theta* = theta"})

        tally.guard(body, lambda alpha=alpha, beta=beta: {"alpha": str(alpha), "beta": str(beta)})

    # γ ≺ β ≺ α 的链
    chains = 0
    for alpha, beta, gamma in itertools.product(objects, repeat=3):
        if not (precedes(gamma, beta) and precedes(beta, alpha)):
            continue
        chains += 1

        def body(alpha=alpha, beta=beta, gamma=gamma):
            outer = lambda_mu_theta(alpha, beta, field)
            inner = lambda_mu_theta(beta, gamma, field)
            whole = lambda_mu_theta(alpha, gamma, field)
            w = {"alpha": str(alpha), "beta": str(beta), "gamma": str(gamma)}
            tally.expect(star(outer.lam, inner.lam) == whole.lam, lambda: {**w, "reason": "lambda chain"})
            tally.expect(star(inner.mu, outer.mu) == whole.mu, lambda: {**w, "reason": "mu chain"})
            tally.expect(star(outer.theta, whole.theta) == whole.theta, lambda: {**w, "reason": "theta chain"})
            tally.expect(star(whole.theta, outer.theta) == whole.theta,
                         lambda: {**w, "reason": "theta chain reversed"})

        tally.guard(body, lambda alpha=alpha, beta=beta, gamma=gamma: {
            "alpha": str(alpha), "beta": str(beta), "gamma": str(gamma)
        })
    tally.parameters["chains"] = chains

    # 平移态射
    for delta in small:
        for m in range(-k_max, k_max + 1):
            def body(delta=delta, m=m):
                r = shift_morphism(delta, m, field)
                w = {"delta": str(delta), "m": m}
                tally.expect(star(involute(r), r) == zeta(delta, abs(m), field),
                             lambda: {**w, "reason": "r* r"})
                tally.expect(star(r, involute(r)) == zeta(delta.shift(m), abs(m), field),
                             lambda: {**w, "reason": "r r*"})

            tally.guard(body, lambda delta=delta, m=m: {"delta": str(delta), "m": m})

    # End(β) → End(α) 的半群嵌入
    for alpha, beta in itertools.product(small, repeat=2):
        if not precedes(beta, alpha) or alpha == beta:
            continue
        endos = enumerate_cosets(beta, beta, eta_max, field)
        for p, r in itertools.product(endos, repeat=2):
            def body(p=p, r=r, alpha=alpha):
                left = embed_endomorphism(star(p, r), alpha)
                right = star(embed_endomorphism(p, alpha), embed_endomorphism(r, alpha))
                tally.expect(left == right, lambda: {**_coset_witness(p, r, left, right), "alpha": str(alpha)})

            tally.guard(body, lambda p=p, r=r: _coset_witness(p, r))

    # 对合
    for gamma, beta, alpha in itertools.product(small, repeat=3):
        for a, b in itertools.product(
            enumerate_cosets(beta, alpha, eta_max, field), enumerate_cosets(gamma, beta, eta_max, field)
        ):
            def body(a=a, b=b):
                tally.expect(involute(star(a, b)) == star(involute(b), involute(a)),
                             lambda: {**_coset_witness(a, b), "reason": "anti-homomorphism"})
                tally.expect(involute(involute(a)) == a, lambda: {**_coset_witness(a), "reason": "involutive"})

            tally.guard(body, lambda a=a, b=b: _coset_witness(a, b))

    return tally.report()


# ---- colligation ----

@log_performance("verify.colligation")
def check_colligation(
    field: FieldSpec, m_max: int = 2, inner_max: int = 3, trials: int = 200, seed: int = 0
) -> CheckReport:
    """χ_{g∘h}(λ) = χ_g(λ)·χ_h(λ)，以及共轭、补齐不改变传递函数"""
    tally = _Tally("colligation", seed, {"q": field.q, "m": m_max, "inner": inner_max})

    for index, rng in enumerate(_streams(seed, trials)):
        m = int(rng.integers(1, m_max + 1))
        g = Colligation.random(field, m, int(rng.integers(0, inner_max + 1)), rng)
        h = Colligation.random(field, m, int(rng.integers(0, inner_max + 1)), rng)
        conjugator = random_invertible(field, g.inner, rng)
        extra = int(rng.integers(0, 3))

        def witness(g=g, h=h, index=index):
            return {"trial": index, "m": g.m, "g": format_matrix_text(g.mat), "h": format_matrix_text(h.mat)}

        def body(g=g, h=h, conjugator=conjugator, extra=extra):
            product = circ(g, h)
            for (lam, x), (_, y), (_, z) in zip(transfer_sweep(g), transfer_sweep(h), transfer_sweep(product)):
                if x is None or y is None:
                    tally.expect(z is None, lambda lam=lam: {**witness(), "lambda": str(lam),
                                                             "reason": "product defined at a pole"})
                else:
                    tally.expect(z is not None and z == x @ y, lambda lam=lam: {
                        **witness(), "lambda": str(lam), "reason": "multiplicativity"
                    })
            tally.expect(transfer(g, 0) == g.a, lambda: {**witness(), "reason": "lambda = 0"})
            tally.expect(transfer_conjugation_invariance(g, conjugator),
                         lambda: {**witness(), "reason": "conjugation"})
            tally.expect(transfer_agree(g, g.pad(extra)), lambda: {**witness(), "reason": "padding"})

        tally.guard(body, witness)

    return tally.report()


# ---- 锥 Δ ----

@log_performance("verify.cone")
def check_cone(
    field: FieldSpec,
    max_size: int = 2,
    eta_slack: int = 2,
    roundtrip_size: Optional[int] = None,
    roundtrip_eta: int = 2,
) -> CheckReport:
    """
    κ 补全与 η 下界的精确二分，以及标准窗口的往返

    对 |α|, |β| ≤ max_size 与每组角值 (κ21, κ22, κ31, κ12)，η 取到下界 + eta_slack：
    η 不低于下界时补全成功且各项非负，否则必然失败。
    往返对 |α|, |β| ≤ roundtrip_size（默认同 max_size）、η ≤ roundtrip_eta 的全部陪集穷举。
    """
    roundtrip_size = max_size if roundtrip_size is None else roundtrip_size
    tally = _Tally("cone", 0, {
        "q": field.q, "max_size": max_size, "eta_slack": eta_slack,
        "roundtrip_size": roundtrip_size, "roundtrip_eta": roundtrip_eta,
    })
    alphas = [ObjectA.of(0, a) for a in range(max_size + 1)]
    betas = [ObjectA.of(lo, lo + b) for b in range(max_size + 1) for lo in (-1, 0, 1)]

    for alpha, beta in itertools.product(alphas, betas):
        for k22 in range(min(alpha.size, beta.size) + 1):
            for k12, k21 in itertools.product(range(beta.size - k22 + 1), range(alpha.size - k22 + 1)):
                bound = beta.lo - alpha.lo + k12 - k21
                for eta in range(0, max(bound, 0) + eta_slack + 1):
                    def body(alpha=alpha, beta=beta, k21=k21, k22=k22, eta=eta, k12=k12, bound=bound):
                        w = {"alpha": str(alpha), "beta": str(beta), "corners": [k21, k22, eta, k12]}
                        admissible = eta >= bound
                        tally.expect(cone_contains(alpha, beta, k21, k22, eta, k12) == admissible,
                                     lambda: {**w, "reason": "cone membership"})
                        try:
                            table = kappa_from_corners(alpha, beta, k21, k22, eta, k12)
                        except InvariantViolation:
                            tally.expect(not admissible, lambda: {**w, "reason": "completion failed"})
                            return
                        tally.expect(admissible, lambda: {**w, "reason": "completion below the bound"})
                        tally.expect(
                            table.a_size == alpha.size and table.b_size == beta.size
                            and min(x for row in table.k for x in row) >= 0,
                            lambda: {**w, "kappa": table.tolist()}
                        )

                    tally.guard(body, lambda alpha=alpha, beta=beta, k21=k21, k22=k22, eta=eta, k12=k12: {
                        "alpha": str(alpha), "beta": str(beta), "corners": [k21, k22, eta, k12]
                    })

    roundtrips = 0
    for alpha, beta in itertools.product(alphas[:roundtrip_size + 1], betas):
        if beta.size > roundtrip_size:
            continue
        for c in enumerate_cosets(beta, alpha, roundtrip_eta, field):
            def body(c=c):
                w = canonical_window(c)
                tally.expect(coset_from_window(w) == c, lambda: {**_coset_witness(c), "window": format_window_text(w)})
                table = canonical_kappa(c)
                j = coset_from_window(j_kappa_window(table, c.alpha, c.beta, field))
                tally.expect(
                    (j.chi.ker.dim, j.chi.indef.dim, j.chi.rk, j.eta)
                    == (c.chi.ker.dim, c.chi.indef.dim, c.chi.rk, c.eta),
                    lambda: {**_coset_witness(c, j), "kappa": table.tolist()}
                )

            tally.guard(body, lambda c=c: _coset_witness(c))
            roundtrips += 1

    tally.parameters["roundtrips"] = roundtrips
    return tally.report()


# ---- 基础性质 ----

@log_performance("verify.foundations")
def check_foundations(field: FieldSpec, max_dim: Optional[int] = None) -> CheckReport:
    """域公理、子空间个数与高斯二项式、线性关系复合的结合律与 indef 公式、伪逆的反序"""
    tally = _Tally("foundations", 0, {"q": field.q})

    # 域公理：在编码表上整体向量化检查，大域改为固定种子抽样
    codes = np.arange(field.q, dtype=np.int64)
    if field.q <= EXHAUSTIVE_FIELD_ORDER:
        x, y, z = np.meshgrid(codes, codes, codes, indexing="ij")
    else:
        x, y, z = np.random.default_rng(0).integers(0, field.q, size=(3, 4096))
    nonzero = codes[1:]
    axioms = {
        "add_assoc": field.add(field.add(x, y), z) == field.add(x, field.add(y, z)),
        "mul_assoc": field.mul(field.mul(x, y), z) == field.mul(x, field.mul(y, z)),
        "add_comm": field.add(x, y) == field.add(y, x),
        "mul_comm": field.mul(x, y) == field.mul(y, x),
        "distributive": field.mul(x, field.add(y, z)) == field.add(field.mul(x, y), field.mul(x, z)),
        "add_identity": field.add(codes, 0) == codes,
        "mul_identity": field.mul(codes, 1) == codes,
        "add_inverse": field.add(codes, field.neg(codes)) == 0,
        "mul_inverse": field.mul(nonzero, field.inv(nonzero)) == 1,
    }
    for name, holds in axioms.items():
        tally.trials += int(holds.size)
        tally.expect(bool(np.all(holds)), lambda name=name: {"axiom": name})

    # 子空间个数
    if max_dim is None:
        max_dim = 4 if field.q <= 3 else 2
    for n in range(max_dim + 1):
        def body(n=n):
            dims = Counter(s.dim for s in enumerate_subspaces(n, field))
            for k in range(n + 1):
                tally.expect(dims[k] == gaussian_binomial(n, k, field.q), lambda k=k: {
                    "n": n, "k": k, "count": dims[k], "expected": gaussian_binomial(n, k, field.q)
                })
            tally.expect(sum(dims.values()) == count_subspaces(n, field.q), lambda: {"n": n})

        tally.guard(body, lambda n=n: {"n": n})

    # 线性关系：q ≤ 9 时恰为全部 F ⇉ F 关系
    relations = list(itertools.islice(enumerate_relations(1, 1, field), MAX_UNIT_RELATIONS))
    products: Dict[Tuple[LinRel, LinRel], LinRel] = {}
    for q_rel, p_rel in itertools.product(relations, repeat=2):
        products[(q_rel, p_rel)] = q_rel @ p_rel

    def rel_witness(*rels: LinRel) -> Dict[str, Any]:
        return {f"r{i}": r.space.basis.tolist() for i, r in enumerate(rels)}

    for r, q_rel, p_rel in itertools.product(relations, repeat=3):
        def body(r=r, q_rel=q_rel, p_rel=p_rel):
            tally.expect(r @ products[(q_rel, p_rel)] == products[(r, q_rel)] @ p_rel,
                         lambda: rel_witness(r, q_rel, p_rel))

        tally.guard(body, lambda r=r, q_rel=q_rel, p_rel=p_rel: rel_witness(r, q_rel, p_rel))

    for q_rel, p_rel in itertools.product(relations, repeat=2):
        def body(q_rel=q_rel, p_rel=p_rel):
            composite = products[(q_rel, p_rel)]
            expected = (
                (p_rel.indef & q_rel.dom).dim - (p_rel.indef & q_rel.ker).dim + q_rel.indef.dim
            )
            tally.expect(composite.indef.dim == expected, lambda: {
                **rel_witness(q_rel, p_rel), "reason": "indef of composition"
            })
            tally.expect(composite.pseudoinverse() == p_rel.pseudoinverse() @ q_rel.pseudoinverse(), lambda: {
                **rel_witness(q_rel, p_rel), "reason": "pseudoinverse reverses order"
            })

        tally.guard(body, lambda q_rel=q_rel, p_rel=p_rel: rel_witness(q_rel, p_rel))

    return tally.report()


# ---- 汇总 ----

def _run_one(name: str, field: FieldSpec, config: AppConfig) -> CheckReport:
    verify, run = config.verify, config.run
    if name == "well-defined":
        return check_well_definedness(field, run.trials, run.seed, verify.max_block, verify.max_pad)
    if name == "assoc":
        exhaustive = check_associativity(field, "exhaustive", eta_max=verify.eta_max)
        randomized = check_associativity(
            field, "random", trials=run.trials, seed=run.seed,
            max_block=verify.max_block, max_pad=verify.max_pad
        )
        return exhaustive.merge(randomized)
    if name == "iso":
        return check_isomorphism(field, run.trials, run.seed, verify.max_block, verify.max_pad,
                                 eta_max=verify.eta_max)
    if name == "completeness":
        return check_completeness_bruteforce(field, verify.completeness_sizes, verify.bruteforce_limit)
    if name == "structure":
        return check_structure(field, verify.structure_max_size, verify.k_max, verify.eta_max)
    if name == "colligation":
        return check_colligation(field, verify.colligation_m, verify.colligation_inner, run.trials, run.seed)
    if name == "cone":
        return check_cone(field, verify.max_block)
    if name == "foundations":
        return check_foundations(field)
    raise ConfigError(f"unknown check: {name}")


def run_checks(selector: Sequence[str], config: AppConfig, field: FieldSpec) -> List[CheckReport]:
    """
    按选择器依次执行检查

    Args:
        selector: 检查名称列表，"all" 表示全部；空列表为空通过
        config: 应用配置（种子、试验次数与规模预算）
        field: 有限域

    Returns:
        List[CheckReport]: 各检查的报告

    Raises:
        ConfigError: 未知的检查名称
        TooLarge: 暴力枚举规模超限
    """
    names: List[str] = []
    for item in selector:
        for name in (CHECK_NAMES if item == "all" else (item,)):
            if name not in CHECK_NAMES:
                raise ConfigError(f"unknown check: {name}")
            if name not in names:
                names.append(name)

    run_id = set_run_context()
    run_tracker.reset()
    reports = []
    try:
        for name in names:
            set_run_context(run_id, check=name)
            run_tracker.start_check(name, {"q": field.q, "seed": config.run.seed})
            try:
                report = _run_one(name, field, config)
            except Exception as e:
                run_tracker.end_check(name, 0, error=str(e))
                raise
            run_tracker.end_check(name, report.failures)
            reports.append(report)
        logger.info("Verification finished", **run_tracker.summary())
    finally:
        clear_run_context()
    return reports
