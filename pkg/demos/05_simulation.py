"""
The machine tracks the lambda calculus step for step
====================================================

Reduce a source term with the reference evaluator, reduce its image with
the machine, and watch the readbacks stay in sync: control steps are
silent, each Beta lands exactly one source step later.
"""

from ptq import (
    EvalOrder,
    RuleTag,
    Strategy,
    classify,
    lam_alpha_eq,
    lam_str,
    normalize,
    parse_lam,
    parse_type,
    readback,
    step_lambda,
    term_str,
)
from ptq.translate import ptq_translate_e

# A two-redex source term over a free variable z of base type A.

src = r"(\x:A. x) ((\y:A. y) z)"
m = parse_lam(src)
ENV = {"z": parse_type("A")}

# By value, argument first: the inner redex fires before the outer one.

print("source:", src)
chain = [m]
cur = m
while True:
    nxt = step_lambda(cur, Strategy.CBV, EvalOrder.ARGUMENT_FIRST)
    if nxt is None:
        break
    chain.append(nxt)
    cur = nxt
for i, t in enumerate(chain):
    print(f"  source step {i}: {lam_str(t)}")

# Now the machine side. Start from the computation image and log the
# readback after every step; the Beta steps should walk the same chain.

u = ptq_translate_e(m, Strategy.CBV, ENV)
print()
print("image:", term_str(u))

run = normalize(u)
pos = 0
print(f"  readback 0: {lam_str(readback(u))}   (source step {pos})")
for s in run.trace.steps:
    rb = lam_str(readback(s.term))
    if s.rule is RuleTag.BETA:
        pos += 1
        print(f"  [{s.rule.value:5}] {rb}   (source step {pos})")
    else:
        print(f"  [{s.rule.value:5}] {rb}   (unchanged)")

# The final readback is the evaluator's normal form.

agree = lam_alpha_eq(readback(run.trace.final), chain[-1])
print()
print("normal forms agree:", agree)

# The correspondence is per step, not just at the end: from the image of
# any intermediate source term, the machine reaches the image of the next
# one. classify() is None exactly when the source is stuck.

probe = chain[1]
img = ptq_translate_e(probe, Strategy.CBV, ENV)
print("intermediate image:", term_str(img))
print("machine can move:  ", classify(img) is not None)
print("source can move:   ", step_lambda(probe, Strategy.CBV, EvalOrder.ARGUMENT_FIRST) is not None)
