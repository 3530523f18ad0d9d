"""The generator and the property machinery itself."""

import pytest

from ptq import LamEnv, Strategy, infer_lambda_box, lam_alpha_eq, lam_str
from ptq.harness import (
    check_completeness,
    check_measure,
    check_readback,
    check_simulation,
    check_soundness,
    check_typing,
    gen_typed_term,
    run_property,
    self_test_fault_injection,
)
from ptq.machine import RuleTag


class TestGenerator:
    def test_deterministic(self):
        for size in range(7):
            for seed in (0, 3, 99):
                a, ta = gen_typed_term(size, seed)
                b, tb = gen_typed_term(size, seed)
                assert lam_alpha_eq(a, b) and ta == tb

    def test_seed_changes_output(self):
        outs = {lam_str(gen_typed_term(5, seed)[0]) for seed in range(30)}
        assert len(outs) > 10

    def test_closed_and_well_typed(self):
        for size in range(7):
            for seed in range(8):
                m, ty = gen_typed_term(size, seed)
                assert infer_lambda_box(LamEnv(), m) == ty

    def test_size_bound(self):
        from ptq.harness import _count_apps

        for size in range(7):
            for seed in range(8):
                m, _ = gen_typed_term(size, seed)
                assert _count_apps(m) <= size

    def test_binder_names_distinct_on_path(self):
        # nested binders never reuse a name, keeping examples readable
        from ptq.lam import App, Lam

        def check(m, bound):
            if isinstance(m, Lam):
                assert m.x not in bound
                check(m.body, bound | {m.x})
            elif isinstance(m, App):
                check(m.fn, bound)
                check(m.arg, bound)

        for seed in range(10):
            m, _ = gen_typed_term(6, seed)
            check(m, set())


class TestProperties:
    @pytest.mark.parametrize(
        "check",
        [
            check_completeness,
            check_soundness,
            check_simulation,
            check_typing,
            check_readback,
            check_measure,
        ],
    )
    def test_passes_on_generated_terms(self, check):
        for seed in range(6):
            m, _ = gen_typed_term(4, seed + 50)
            for strategy in (Strategy.CBN, Strategy.CBV):
                report = check(m, strategy, 4, seed + 50)
                assert report.ok, report.failures

    def test_report_replayability(self):
        reports = run_property("completeness", 10, 4, 77)
        for r in reports:
            m, _ = gen_typed_term(r.size, r.seed)
            assert lam_str(m) == r.instance

    def test_report_shape(self):
        reports = run_property("typing", 4, 3, 5)
        d = reports[0].to_dict()
        assert set(d) == {
            "property", "size", "seed", "instance", "ok", "failures", "steps",
        }


class TestFaultInjection:
    def test_broken_machine_is_caught(self):
        assert self_test_fault_injection()

    def test_disabled_rule_fails_completeness(self):
        # find one instance whose run needs KPair and watch it fail
        for seed in range(40):
            m, _ = gen_typed_term(4, seed)
            report = check_completeness(
                m, Strategy.CBN, disable={RuleTag.KPAIR}
            )
            if not report.ok:
                return
        pytest.fail("no instance exercised the disabled rule")
