"""Simpson, midpoint, trapezoid and Ostrowski corollaries on a few functions.

The midpoint case at theta = 1, m = 1 is also checked against a separate
Gauss--Jacobi evaluation of the classical closed forms.
"""

from __future__ import annotations

import math

from gaconvex import CATALOG, InequalityParams, Statement, corollary, hh_chain
from gaconvex.ineq import remark_holder_rhs, remark_lhs, remark_pm_rhs

base = InequalityParams(a=1.0, b=2.0, x=1.0, theta=0.75, lam=0.0, alpha=1.0, m=1.0, q=2.0)

print("Hermite--Hadamard chain (left <= middle <= right)")
for name in ("u", "u^2", "ln(u)", "exp(u/4)"):
    left, middle, right = hh_chain(CATALOG[name], base.a, base.b, base.theta)
    print(f"  {name:<9} {left:.10f} <= {middle:.10f} <= {right:.10f}")

print("\ncorollaries, lhs vs rhs")
for name in ("u^2", "u^3", "exp(u/4)"):
    f = CATALOG[name]
    for family in ("simpson", "midpoint", "trapezoid", "ostrowski"):
        for n in (5, 8):
            rec = corollary(f"{family}{n}", f, base)
            print(f"  {name:<9} {rec.statement.value:<11} lhs={rec.lhs:.3e} "
                  f"rhs={rec.rhs:.3e} {rec.verdict.value}")

print("\nmidpoint reduction at theta = 1, m = 1")
f = CATALOG["u^3"]
p = base.replace(theta=1.0, x=math.sqrt(base.a * base.b))
for statement, classical in ((Statement.midpoint5, remark_pm_rhs),
                             (Statement.midpoint6, remark_holder_rhs)):
    rec = corollary(statement, f, p)
    direct = classical(f, p.a, p.b, p.alpha, p.q)
    print(f"  {statement.value:<10} corollary {rec.rhs:.12f}  classical {direct:.12f}")
print(f"  shared lhs {remark_lhs(f, p.a, p.b):.12f}")
