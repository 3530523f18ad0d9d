"""By-name, by-value, and CPS translations."""

import pytest

from ptq import (
    Arrow,
    Base,
    EvalOrder,
    LamEnv,
    Pairing,
    PtqType,
    ReservedBaseType,
    Strategy,
    TypeEnv,
    UncurriedNeedsPairs,
    alpha_eq,
    aux_translate,
    bracket_list,
    infer_lambda_box,
    infer_ptq,
    is_value,
    lam_alpha_eq,
    lam_str,
    parse_lam,
    parse_term,
    parse_type,
    plotkin_translate,
    ptq_translate,
    ptq_translate_e,
    readback,
    term_str,
    translate_type,
)

A, B, X = Base("A"), Base("B"), Base("X")
CBN, CBV = Strategy.CBN, Strategy.CBV


def L(s):
    return parse_lam(s)


def T(s):
    return parse_term(s)


class TestByName:
    def test_variable(self):
        assert alpha_eq(ptq_translate(L("x"), CBN, {"x": A}), T("x"))

    def test_lambda(self):
        got = ptq_translate(L(r"\x:A. x"), CBN)
        assert alpha_eq(got, T(r"\(x:A, k:A). k ; x"))

    def test_application(self):
        env = {"x": parse_type("A -> B"), "y": A}
        got = ptq_translate(L("x y"), CBN, env)
        assert alpha_eq(got, T(r"\k:B. <y, k> ; x"))

    def test_nested(self):
        env = {"f": parse_type("A -> A -> B"), "a": A}
        got = ptq_translate(L("f a a"), CBN, env)
        assert alpha_eq(got, T(r"\k:B. <a, k> ; (\k:A -> B. <a, k> ; f)"))

    def test_typing(self, corpus):
        for m, ty, _, _ in corpus[:60]:
            got = infer_ptq(TypeEnv(), ptq_translate(m, CBN))
            assert got == PtqType("p", ty)


class TestByValue:
    def test_variable(self):
        got = ptq_translate(L("x"), CBV, {"x": A})
        assert alpha_eq(got, T("%k:A. k ; x"))

    def test_lambda(self):
        got = ptq_translate(L(r"\x:A. x"), CBV)
        assert alpha_eq(got, T(r"%k:A -> A. k ; (\(x:A, k:A). (%k:A. k ; x) ! k)"))

    def test_application(self):
        env = {"x": parse_type("A -> B"), "y": A}
        got = ptq_translate(L("x y"), CBV, env)
        want = T(r"%k:B. (%k:A. k ; y) ! (\z:A. (%k:A -> B. k ; x) ! <z, k>)")
        assert alpha_eq(got, want)

    def test_typing(self, corpus):
        for m, ty, _, _ in corpus[:60]:
            got = infer_ptq(TypeEnv(), ptq_translate(m, CBV))
            assert got == PtqType("q", ty)

    def test_value_shape(self, corpus):
        # on a value, the by-value translation is the jump that feeds the
        # auxiliary image straight to the continuation
        from ptq.syntax import KVar, PApp, QLam

        for m, ty, _, _ in corpus[:60]:
            if not is_value(m):
                continue
            q = ptq_translate(m, CBV)
            assert isinstance(q, QLam)
            assert isinstance(q.body, PApp)
            assert alpha_eq(q.body.proof, aux_translate(m, CBV))
            assert isinstance(q.body.test, KVar)


class TestETranslations:
    def test_value_forms(self):
        env = {"y": A}
        assert alpha_eq(ptq_translate_e(L("y"), CBN, env), T("* ; y"))
        got = ptq_translate_e(L("y"), CBV, env)
        assert alpha_eq(got, T("* ; y"))

    def test_cbn_application(self):
        env = {"x": parse_type("A -> B"), "y": A}
        got = ptq_translate_e(L("x y"), CBN, env)
        assert alpha_eq(got, T("<y, *> ; x"))

    def test_cbv_application_of_value(self):
        env = {"y": A}
        got = ptq_translate_e(L(r"(\x:A. x) y"), CBV, env)
        assert alpha_eq(got, T(r"<y, *> ; (\(x:A, k:A). (%k:A. k ; x) ! k)"))

    def test_cbv_non_value_argument(self):
        # the inner application evaluates first, under a test waiting for it
        env = {"f": parse_type("A -> A"), "y": A}
        got = ptq_translate_e(L(r"f (f y)"), CBV, env)
        assert lam_alpha_eq(readback(got), L(r"f (f y)"))
        inner = ptq_translate_e(L("f y"), CBV, env)
        assert lam_alpha_eq(readback(inner), L("f y"))

    def test_control_normal(self, corpus):
        from ptq import classify, RuleTag

        for m, _, _, _ in corpus[:80]:
            for strat in (CBN, CBV):
                u = ptq_translate_e(m, strat)
                assert classify(u) in (None, RuleTag.BETA)

    def test_readback_identity(self, corpus):
        for m, _, _, _ in corpus[:80]:
            for strat in (CBN, CBV):
                assert lam_alpha_eq(readback(ptq_translate(m, strat)), m)
                assert lam_alpha_eq(readback(ptq_translate_e(m, strat)), m)


class TestBracketList:
    def test_empty(self):
        assert alpha_eq(bracket_list([]), T("*"))

    def test_nesting(self):
        got = bracket_list([T("x"), T("y"), T("z")])
        assert alpha_eq(got, T("<x, <y, <z, *>>>"))


class TestSubstitutionFact:
    def test_cbn(self):
        # cbn(M[N/x]) = cbn(M)[cbn(N)/x]
        from ptq import lam_subst, subst_pvar

        env = {"y": A}
        M = L(r"\w:A. x")
        N = L("y")
        lhs = ptq_translate(lam_subst(M, "x", N), CBN, env)
        rhs = subst_pvar(ptq_translate(M, CBN, {"x": A, "y": A}), "x", ptq_translate(N, CBN, env))
        assert alpha_eq(lhs, rhs)

    def test_cbv_uses_aux_image(self):
        # cbv(M[V/x]) = cbv(M)[auxcbv(V)/x], values only
        from ptq import lam_subst, subst_pvar

        env = {"y": A}
        M = L(r"\w:A. x")
        V = L(r"\z:A. z")
        lhs = ptq_translate(lam_subst(M, "x", V), CBV, env)
        rhs = subst_pvar(
            ptq_translate(M, CBV, {"x": Arrow(A, A), "y": A}),
            "x",
            aux_translate(V, CBV),
        )
        assert alpha_eq(lhs, rhs)


class TestTypeTranslations:
    def test_cbn_types(self):
        # X* = (X -> o) -> o; (A -> B)* = ((A* -> B*) -> o) -> o
        o = Base("o")
        assert translate_type(X, CBN) == Arrow(Arrow(X, o), o)
        ab = translate_type(Arrow(A, B), CBN)
        a_star, b_star = translate_type(A, CBN), translate_type(B, CBN)
        assert ab == Arrow(Arrow(Arrow(a_star, b_star), o), o)

    def test_cbv_types(self):
        # X° = X; (A -> B)° = A° -> B*; T* = (T° -> o) -> o
        o = Base("o")
        assert translate_type(X, CBV, "circ") == X
        ab = translate_type(Arrow(A, B), CBV, "circ")
        assert ab == Arrow(A, Arrow(Arrow(B, o), o))

    def test_source_with_o_rejected(self):
        with pytest.raises(ReservedBaseType):
            translate_type(Arrow(Base("o"), X), CBN)


class TestPlotkin:
    def test_cbn_shape(self):
        got = plotkin_translate(L("x"), CBN, env={"x": X})
        assert lam_alpha_eq(got, L("x"))

    def test_cbv_var_shape(self):
        got = plotkin_translate(L("x"), CBV, env={"x": X})
        assert lam_alpha_eq(got, L(r"\k:X -> o. k x"))

    def test_typing(self, corpus):
        for m, ty, _, _ in corpus[:60]:
            for strat in (CBN, CBV):
                out = plotkin_translate(m, strat)
                want = translate_type(ty, strat, "star")
                assert infer_lambda_box(LamEnv(), out) == want

    def test_orders_differ(self):
        env = {"f": parse_type("X -> X"), "g": parse_type("X -> X"), "y": X}
        m = L("f (g y)")
        fn_first = plotkin_translate(m, CBV, EvalOrder.FUNCTION_FIRST, env=env)
        arg_first = plotkin_translate(m, CBV, EvalOrder.ARGUMENT_FIRST, env=env)
        assert not lam_alpha_eq(fn_first, arg_first)

    def test_cbn_ignores_order(self):
        env = {"f": parse_type("X -> X"), "y": X}
        m = L("f y")
        a = plotkin_translate(m, CBN, EvalOrder.FUNCTION_FIRST, env=env)
        b = plotkin_translate(m, CBN, EvalOrder.ARGUMENT_FIRST, env=env)
        assert lam_alpha_eq(a, b)

    def test_uncurried_uses_pairs(self):
        got = plotkin_translate(L(r"\x:X. x"), CBN, pairing=Pairing.UNCURRIED)
        assert "(" in lam_str(got) and "," in lam_str(got)

    def test_uncurried_needs_pair_grammar(self):
        with pytest.raises(UncurriedNeedsPairs):
            plotkin_translate(
                L(r"\x:X. x"), CBN, pairing=Pairing.UNCURRIED, target_grammar="plain"
            )
