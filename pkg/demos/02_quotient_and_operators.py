"""Build a small quotient complex and look at its operators.

Run with ``python demos/02_quotient_and_operators.py``.
"""

from pgl3zeta.complex import continuation_counts, validate
from pgl3zeta.ingest import build_quotient, search_presentation
from pgl3zeta.operators import build_H, build_L, build_pi, build_T, hecke_relations, trace_comparison

pres = search_presentation(2, seed=0)
c = build_quotient(pres)
print(c)
print("counting axioms hold:", validate(c).ok)
print("continuations per edge:", sorted(set(continuation_counts(c).forward.values())))

T = build_T(c)
print(f"T is {T.rows}x{T.cols} with column sums {sorted(set(T.col_sums()))}")

pi1 = build_pi(c, 1)
print("pi1 =", pi1.to_dense())

rel = hecke_relations(c, 10)
print("A_n recurrence and commutation hold:", rel.hard_ok)

h = build_H(c, 10)
print("rational form stabilizes:", h.stabilizes)
print("degree 0..2 coefficients:", [m.to_dense() for m in h.derived])

# Closed segments at a vertex need not close smoothly, so the traces differ.
tc = trace_comparison(c, 6)
print("tr T^n:", tc.trace_T)
print("tr A_n:", tc.trace_A)

L = build_L(c).L
print("column sums of L:", sorted(set(L.col_sums())))
