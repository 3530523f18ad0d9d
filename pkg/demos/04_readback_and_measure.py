"""
Reading terms back, and counting steps before running them
==========================================================

Readback maps every term to a lambda term with a hole standing in for
the missing test. The measure interprets terms as number functions and
predicts, exactly, how many bookkeeping steps the machine spends before
its first real call.
"""

from ptq import (
    Strategy,
    control_length,
    control_prefix,
    identity,
    lam_str,
    measure,
    normalize,
    parse_lam,
    parse_term,
    parse_type,
    readback,
    term_str,
)
from ptq.translate import ptq_translate_e

# ---------------------------------------------------------------------------
# Readback. The empty test becomes the hole; a pair applies the hole to
# its program first, then feeds the result outward.

for src in ["*", "<y, *>", "<y, <z, *>>", r"\k:A. <y, k> ; x", "%k:A. k ; x"]:
    t = parse_term(src)
    print(f"{src:24} ~> {lam_str(readback(t))}")

# Translating and reading back is the identity on the source, which is
# why the machine's answers can be stated in source terms at all.

m = parse_lam(r"(\x:A. x) y")
u = ptq_translate_e(m, Strategy.CBV, {"y": parse_type("A")})
print()
print("source:  ", lam_str(m))
print("image:   ", term_str(u))
print("readback:", lam_str(readback(u)))

# ---------------------------------------------------------------------------
# The measure. Computations denote functionals (N -> N) -> N; feeding the
# identity counts rule applications. One more than the control steps the
# machine will actually take, so the two are in lockstep.

u1 = parse_term(r"* ; \k:A. (k ; x)")
print()
print("term:          ", term_str(u1))
print("measure at id: ", measure(u1)(identity))
print("control length:", control_length(u1))

stopped, n = control_prefix(u1)
print(f"machine agrees: {n} control step(s), stopping at {term_str(stopped)}")

# The prediction stays exact on bigger starts: translate a redex, pair it
# with the empty test, and compare.

start = parse_term(r"* ; \k:A -> A. <y, k> ; (\(x:A, k:A). k ; x)")
predicted = control_length(start)
stopped, taken = control_prefix(start)
print()
print("start:          ", term_str(start))
print("predicted/taken:", predicted, "/", taken)
print("first Beta at:  ", term_str(stopped))

run = normalize(start)
print("full run:       ", [s.rule.value for s in run.trace.steps])
