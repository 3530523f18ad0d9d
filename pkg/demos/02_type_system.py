"""
Typing the four sorts
=====================

Judgments carry a program context, at most one test hypothesis, and a
claim. This script checks a few by hand and shows what failure looks
like.
"""

from ptq import (
    check_judgment,
    infer_ptq,
    judgment_str,
    parse_judgment,
    parse_term,
    parse_type,
    TypeEnv,
)
from ptq.errors import PtqError

# A judgment in concrete syntax: program hypotheses before |-, the
# subject and its claim after. Roles ride along with the types, so pA
# reads "program of type A". Compound carriers take parens: p(A -> B).

j = parse_judgment(r"x:pA |- (\k:A. k ; x) : pA")
print("judgment:", judgment_str(j))
print("checks:  ", check_judgment(j).ok)

# Tests get the one extra hypothesis, written between |> and |-. A pair
# pushes a program onto the test, which is exactly an arrow introduction
# on the consumer side: with y:A and k expecting a B, <y, k> expects an
# A -> B.

good = parse_judgment("y:pA |> k:tB |- <y, k> : t(A -> B)")
bad = parse_judgment("y:pA |> k:tA |- <y, k> : tA")
print()
res = check_judgment(good)
print(judgment_str(good), "->", res.ok)
res = check_judgment(bad)
print(judgment_str(bad), "->", res.ok, "|", res.error)

# Inference works directly on terms. The TypeEnv holds the program
# hypotheses; the anchor slot holds the test hypothesis, either a named
# k or the empty test.

env = TypeEnv().extend("x", parse_type("A"))
print()
print("infer x:         ", infer_ptq(env, parse_term("x")))
print("infer %k:A. k;x: ", infer_ptq(env, parse_term("%k:A. k ; x")))

# Computations carry no type of their own; inference just confirms that
# the test and the program meet at the same type, and returns a bare ok.

anchored = env.with_anchor("star", parse_type("A"))
u = parse_term(r"<x, *> ; \(y:A, k:A). k ; y")
print("computation:     ", infer_ptq(anchored, u))

# And a genuine failure: the function below wants its argument at an
# arrow type, but x is a base A.

wrong = parse_term(r"<x, *> ; \(y:A -> A, k:A -> A). k ; y")
try:
    infer_ptq(env.with_anchor("star", parse_type("A -> A")), wrong)
except PtqError as exc:
    print("rejected:        ", f"{type(exc).__name__}: {exc}")
