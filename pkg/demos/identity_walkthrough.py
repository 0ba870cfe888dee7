"""Walk through the derivative identity for K_f and the four bounds on it.

Run with ``python3 demos/identity_walkthrough.py``.
"""

from __future__ import annotations

import math

from gaconvex import CATALOG, InequalityParams, kf_lhs
from gaconvex.ineq import theorem_bound

f = CATALOG["u^2"]
params = InequalityParams(a=1.0, b=4.0, x=2.0, theta=1.5, lam=1 / 3, alpha=1.0, m=0.5, q=2.0)

# K_f from Hadamard fractional integrals, then from the derivative form.
decomp = kf_lhs(f, params)
print(f"function {f.name} with {params}")
print(f"  boundary term       {decomp.boundary_term: .15f}")
print(f"  fractional term     {decomp.fractional_term: .15f}")
print(f"  K_f by definition   {decomp.lhs_direct: .15f}")
print(f"  K_f by identity     {decomp.rhs_identity: .15f}")
print(f"  difference          {abs(decomp.lhs_direct - decomp.rhs_identity):.2e}")

# Each bound is a different way to control |K_f| through |f'|^q.
print("\nbounds on |K_f|")
for n in (5, 6, 7, 8):
    bound = theorem_bound(n, f, params)
    print(f"  bound {n}: {bound:.6f}   slack {bound - abs(decomp.lhs_direct):.6f}")

# Near lambda = 0 the identity still holds and the boundary term loses its endpoint values.
for lam in (0.0, 1e-6, 0.5, 1.0):
    d = kf_lhs(f, params.replace(lam=lam))
    print(f"lambda={lam:<6g} K_f={d.lhs_direct: .12f}  gap={abs(d.lhs_direct - d.rhs_identity):.1e}")

assert math.isclose(decomp.lhs_direct, decomp.rhs_identity, rel_tol=1e-9)
