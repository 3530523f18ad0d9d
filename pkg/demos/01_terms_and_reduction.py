"""
Terms of the four sorts, and what the machine does with them
============================================================

A quick tour: parse a few terms, look at their structure, then run the
lazy machine and watch each rule fire.
"""

from ptq import classify, normalize, parse_term, sort_of, term_str

# ---------------------------------------------------------------------------
# The four sorts share one grammar. Programs are variables, functions that
# take an argument together with a continuation, or suspended computations.

p1 = parse_term("x")
p2 = parse_term(r"\(x:A, k:B). k ; x")
p3 = parse_term(r"\k:A. k ; y")
print("programs:", term_str(p1), "|", term_str(p2), "|", term_str(p3))
print("sorts:   ", sort_of(p1), sort_of(p2), sort_of(p3))

# Tests are the consumers: the empty test *, pairs that push an argument,
# and abstractions that bind the next program to a name.

t1 = parse_term("*")
t2 = parse_term("<y, *>")
t3 = parse_term(r"\x:A. * ; x")
print("tests:   ", term_str(t1), "|", term_str(t2), "|", term_str(t3))

# A jump grabs the current test under the name k; a computation is a test
# applied to a program, or a jump fired at a test.

q = parse_term("%k:A. k ; x")
u = parse_term("* ; x")
print("jump:    ", term_str(q), "   computation:", term_str(u))

# ---------------------------------------------------------------------------
# Reduction. classify() names the rule a computation will take next, or
# None when it is normal. normalize() runs to the end and keeps the trace.

steps_demo = parse_term(r"<y, *> ; \(x:A, k:A). (%k:A. k ; x) ! k")
print()
print("start:", term_str(steps_demo))
print("next rule:", classify(steps_demo).value)

result = normalize(steps_demo)
for step in result.trace.steps:
    print(f"  [{step.rule.value}] {term_str(step.term)}")
print("normal form:", term_str(result.trace.final))

# Beta consumed the pair and handed y to the function body; the jump then
# fired its suspended computation at the saved test. Two steps, done.

# ---------------------------------------------------------------------------
# Control steps never touch a function body. This run only reshuffles
# tests before it reaches the Beta redex.

u2 = parse_term(r"* ; \k:A -> A. <y, k> ; (\(x:A, k:A). k ; x)")
result2 = normalize(u2)
print()
print("start:", term_str(u2))
for step in result2.trace.steps:
    print(f"  [{step.rule.value}] {term_str(step.term)}")
print("normal form:", term_str(result2.trace.final))
