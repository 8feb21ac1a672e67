"""
定理验证服务测试

各检查在小规模参数下运行并应全部通过；另测试报告的确定性、失败的记录方式与检查选择器。
"""

from unittest.mock import patch

import pytest

from algebra.coset import GeneratorFamily, ObjectA, enumerate_cosets
from algebra.exceptions import Singular, TooLarge
from algebra.gf import field_make
from config.models import AppConfig, RunConfig
from models.responses import CheckReport
from services.verify import (
    CHECK_NAMES, _Tally, check_associativity, check_colligation, check_completeness_bruteforce,
    check_cone, check_foundations, check_isomorphism, check_structure, check_well_definedness,
    run_checks
)

GF2 = field_make(2)
GF4 = field_make(2, 2)


def without_elapsed(report: CheckReport) -> dict:
    return report.model_dump(exclude={"elapsed"})


class TestRandomizedChecks:
    """随机试验类检查"""

    def test_well_definedness(self):
        """测试 ⋆ 乘法的良定义性"""
        report = check_well_definedness(GF2, trials=12, seed=3, max_block=1, max_pad=1)
        assert report.passed, report.witnesses
        assert report.trials == 12

    def test_every_family_in_every_trial(self):
        """测试每次试验都用到四类生成元"""
        report = check_well_definedness(field_make(3), trials=5, seed=8, max_block=2, max_pad=1)
        assert report.passed, report.witnesses
        for family in GeneratorFamily:
            assert report.parameters[f"{family.value}_trials"] == 5

    def test_family_recorded_in_witness(self):
        """测试失败样例记录出错时的生成元类别"""
        with patch("services.verify.in_q_group", return_value=False):
            report = check_well_definedness(GF2, trials=1, seed=0, max_block=1, max_pad=0)
        assert report.failures == 2 * len(GeneratorFamily)
        assert [w["family"] for w in report.witnesses] == ["scale", "scale", "phi"]

    def test_well_definedness_extension_field(self):
        """测试扩域上的良定义性"""
        report = check_well_definedness(GF4, trials=6, seed=1, max_block=1, max_pad=1)
        assert report.passed, report.witnesses

    def test_reports_are_deterministic(self):
        """测试同一种子给出相同报告"""
        first = check_isomorphism(GF2, trials=8, seed=11, max_block=1, max_pad=1, objects=[])
        second = check_isomorphism(GF2, trials=8, seed=11, max_block=1, max_pad=1, objects=[])
        assert without_elapsed(first) == without_elapsed(second)

    def test_random_associativity(self):
        """测试矩阵路径的结合律"""
        report = check_associativity(GF2, "random", trials=10, seed=5, max_block=1, max_pad=1)
        assert report.passed, report.witnesses
        assert report.parameters["mode"] == "random"

    def test_unknown_associativity_mode(self):
        """测试未知模式"""
        with pytest.raises(ValueError):
            check_associativity(GF2, "sideways")

    def test_colligation(self):
        """测试传递函数的乘法性"""
        report = check_colligation(GF2, m_max=1, inner_max=2, trials=10, seed=0)
        assert report.passed, report.witnesses


class TestExhaustiveChecks:
    """穷举类检查"""

    def test_exhaustive_associativity(self):
        """测试 Hom((0,1),(0,1)) 上的结合律"""
        report = check_associativity(GF2, "exhaustive", objects=[ObjectA.of(0, 1)], eta_max=1)
        assert report.passed, report.witnesses
        assert report.trials == 9 ** 3

    def test_isomorphism(self):
        """测试两条路径一致与 ξ 的修正项"""
        report = check_isomorphism(GF2, trials=10, seed=2, max_block=1, max_pad=1,
                                   objects=[ObjectA.of(0, 1)], eta_max=1)
        assert report.passed, report.witnesses
        assert report.trials == 10 + 9 * 9

    def test_structure(self):
        """测试中心元、λ/μ/θ、平移态射与对合"""
        report = check_structure(GF2, max_size=1, k_max=1, eta_max=1)
        assert report.passed, report.witnesses
        assert report.parameters["chains"] == 10

    def test_structure_objects_of_size_two(self):
        """测试 ζ 的中心性与 λ/μ/θ 链覆盖 |α| = 2 的对象"""
        report = check_structure(GF2, max_size=2, k_max=1, eta_max=0)
        assert report.passed, report.witnesses
        assert report.parameters["centrality_max_size"] == 2
        assert report.parameters["chains"] == 28

    def test_cone(self):
        """测试锥 Δ 的二分与标准窗口往返"""
        report = check_cone(GF2, max_size=1)
        assert report.passed, report.witnesses
        assert report.trials > 0
        assert report.parameters["roundtrip_size"] == 1

    def test_cone_roundtrip_at_size_two(self):
        """测试 |α|, |β| ≤ 2、η ≤ 2 的标准窗口往返穷举（含空对象）"""
        report = check_cone(GF2, max_size=2)
        assert report.passed, report.witnesses
        alphas = [ObjectA.of(0, a) for a in range(3)]
        betas = [ObjectA.of(lo, lo + b) for b in range(3) for lo in (-1, 0, 1)]
        expected = sum(len(enumerate_cosets(b, a, 2, GF2)) for a in alphas for b in betas)
        assert report.parameters["roundtrips"] == expected
        assert report.parameters["roundtrip_eta"] == 2

    @pytest.mark.parametrize("field", [GF2, GF4, field_make(3)])
    def test_foundations(self, field):
        """测试域公理、子空间计数与关系复合"""
        report = check_foundations(field, max_dim=2)
        assert report.passed, report.witnesses

    def test_foundations_sampled_field(self):
        """测试大域时的抽样分支"""
        report = check_foundations(field_make(17), max_dim=1)
        assert report.passed, report.witnesses


class TestCompleteness:
    """暴力轨道枚举"""

    def test_smallest_window(self):
        """测试 q=2、尺寸全为 1 时的轨道个数"""
        report = check_completeness_bruteforce(GF2, (1, 1, 1, 1, 1, 1))
        assert report.passed, report.witnesses
        assert report.parameters["elements"] == 168
        assert report.parameters["orbits"] == 6
        assert report.parameters["expected_orbits"] == 6
        assert report.parameters["kappa_tables"] == 6
        assert report.parameters["coarse_orbits"] == 6

    def test_shifted_window(self):
        """测试源对象与目标对象不同的截断"""
        report = check_completeness_bruteforce(GF2, (0, 1, 1, 1, 1, 0))
        assert report.passed, report.witnesses
        assert report.parameters["orbits"] == report.parameters["expected_orbits"]

    def test_too_large(self):
        """测试枚举规模上限"""
        with pytest.raises(TooLarge):
            check_completeness_bruteforce(GF2, (1, 1, 1, 1, 1, 1), bruteforce_limit=100)

    def test_unbalanced_sizes(self):
        """测试行列总数不等"""
        with pytest.raises(ValueError):
            check_completeness_bruteforce(GF2, (1, 1, 1, 1, 1, 0))


class TestTally:
    """失败记录测试"""

    def test_failures_are_recorded_not_raised(self):
        """测试运算异常记为失败"""
        tally = _Tally("demo", 0)

        def body():
            raise Singular("boom")

        for index in range(5):
            tally.guard(body, lambda index=index: {"trial": index})
        report = tally.report()
        assert report.trials == 5
        assert report.failures == 5
        assert len(report.witnesses) == 3
        assert report.witnesses[0] == {"trial": 0, "error": "Singular", "message": "boom"}
        assert not report.passed

    def test_expect(self):
        """测试 expect 只在失败时构造样例"""
        tally = _Tally("demo", 0)
        assert tally.expect(True, lambda: pytest.fail("witness built for a success"))
        assert not tally.expect(False, lambda: {"x": 1})
        assert tally.report().failures == 1


class TestRunChecks:
    """检查选择器测试"""

    def setup_method(self):
        """设置测试"""
        self.config = AppConfig().model_copy(update={"run": RunConfig(trials=3)})

    def test_empty_selector(self):
        """测试空选择器"""
        assert run_checks([], self.config, GF2) == []

    def test_unknown_check(self):
        """测试未知检查名称"""
        with pytest.raises(ValueError):
            run_checks(["bogus"], self.config, GF2)

    def test_duplicates_are_removed(self):
        """测试重复名称只运行一次"""
        reports = run_checks(["foundations", "foundations"], self.config, GF2)
        assert [r.name for r in reports] == ["foundations"]

    def test_tracker_records_each_run(self):
        """测试每次运行重新统计检查耗时"""
        from services.logging import run_tracker

        run_checks(["foundations"], self.config, GF2)
        run_checks(["foundations"], self.config, GF2)
        summary = run_tracker.summary()
        assert summary["checks"] == 1
        assert summary["by_check"].keys() == {"foundations"}

    def test_all_expands_in_order(self):
        """测试 all 按固定顺序展开"""
        def fake(name, field, config):
            return CheckReport(name=name, trials=1)

        with patch("services.verify._run_one", side_effect=fake) as mock_run:
            reports = run_checks(["cone", "all"], self.config, GF2)

        assert [r.name for r in reports] == ["cone"] + [n for n in CHECK_NAMES if n != "cone"]
        assert mock_run.call_count == len(CHECK_NAMES)
