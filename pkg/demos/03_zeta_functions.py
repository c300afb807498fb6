"""Zeta polynomials, the Euler product check and the power certificates.

Run with ``python demos/03_zeta_functions.py``.
"""

from pgl3zeta.enumeration import enumerate_gallery_loops, enumerate_geodesic_loops
from pgl3zeta.ingest import build_quotient, search_presentation
from pgl3zeta.operators import build_L, build_T
from pgl3zeta.zeta import trace_powers, zeta_report

c = build_quotient(search_presentation(2, seed=0))
rep = zeta_report(c, order=8)
print("Z1 =", rep.Z1)
print("Z2 =", rep.Z2)
print("D  =", rep.D)

# det(1 - uT) against the product over primitive closed geodesics
geo = enumerate_geodesic_loops(c, 8, trace_T=trace_powers(build_T(c), 8))
print("Euler product agrees with Z1 mod u^9:", geo.euler_product(8) == rep.Z1.truncate(9))
print(geo.table.to_csv())

# Flat strips of chambers against the traces of L
L = build_L(c).L
gal = enumerate_gallery_loops(c, 2, trace_L=trace_powers(L, 2))
for n in (1, 2):
    print(f"length {3 * n}: {gal.gallery_sum[n]} strips, tr L^{n} = {gal.trace_L[n]}")

for cert in (rep.edge_certificate, rep.zeta_certificate):
    if cert.found:
        print(f"{cert.subject} * R = D^{cert.exponent}")
    else:
        print(f"{cert.subject}: no power of D is divisible by it; leftover factor {cert.residual}")

print("degree of Z1:", rep.degree.observed_degree, "edges:", rep.degree.edges)
print("findings:")
for d in rep.discrepancies:
    print("  -", d)
