"""
Two ways to compile the lambda calculus
=======================================

The by-name translation makes every argument a suspension; the by-value
translation makes every term a jump that grabs its test. Both land in
the same target calculus, and both type on the nose.
"""

from ptq import (
    Strategy,
    check_judgment,
    infer_ptq,
    lam_str,
    parse_lam,
    parse_type,
    term_str,
    type_str,
    TypeEnv,
)
from ptq.translate import (
    plotkin_translate,
    ptq_translate,
    ptq_translate_e,
    translate_type,
)

A = parse_type("A")
env = {"x": parse_type("A -> B"), "y": A}

# ---------------------------------------------------------------------------
# By name: an application x y becomes "push the suspended argument, then
# run the function". The suspension wrapper is the whole cost of laziness.

m = parse_lam("x y")
img_n = ptq_translate(m, Strategy.CBN, env)
print("source:      ", lam_str(m))
print("by name:     ", term_str(img_n))

tenv = TypeEnv().extend("x", env["x"]).extend("y", A)
print("types as:    ", infer_ptq(tenv, img_n))

# ---------------------------------------------------------------------------
# By value: even a variable first announces itself to the current test.
# Values translate through an auxiliary map that strips that wrapper.

idf = parse_lam(r"\x:A. x")
img_v = ptq_translate(idf, Strategy.CBV)
print()
print("source:      ", lam_str(idf))
print("by value:    ", term_str(img_v))
print("types as:    ", infer_ptq(TypeEnv(), img_v))

# ---------------------------------------------------------------------------
# Whole computations: pair the image with the empty test and you get a
# machine-ready start state.

u = ptq_translate_e(parse_lam(r"(\x:A. x) y"), Strategy.CBV, {"y": A})
print()
print("computation: ", term_str(u))

# ---------------------------------------------------------------------------
# The same sources admit the classical continuation-passing reading into
# plain lambda terms with an answer type o. Types double up: a by-name A
# becomes (A° -> o) -> o at every argument position.

cps_n = plotkin_translate(m, Strategy.CBN, env=env)
cps_v = plotkin_translate(idf, Strategy.CBV)
print()
print("cps by name: ", lam_str(cps_n))
print("cps by value:", lam_str(cps_v))
print("value type:  ", type_str(translate_type(parse_type("A -> A"), Strategy.CBV, "star")))
