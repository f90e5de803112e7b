r"""
Painleve VI for W_n and the Toda flow
-------------------------------------
:math:`W_n = (t-1)R_n/(2n+\alpha+\beta+\gamma+1) + 1` solves Painleve VI with
parameters fixed by :math:`\alpha, \beta, \gamma, n`.  Two numerical
derivatives are needed, so the residuals sit at roughly half the working
precision of the sigma-form check.
"""
from jacobi_pvi import Family, PrecisionContext, pvi_constants, pvi_residual, toda_residual
from jacobi_pvi.painleve import W_value

fam = Family("1.5", "2", "0.5", PrecisionContext(60), n_max=5)
ctx = fam.ctx

#%%
# The PVI constants for n = 2.
print([ctx.format(m, 10) for m in pvi_constants(2, fam.alpha, fam.beta, fam.gamma).mu])

#%%
# W_n across the default t-grid.
for t in ("-0.25", "-0.5", "-1", "-2", "-5"):
    print(t, [ctx.format(W_value(n, fam.solve(t), fam), 12) for n in range(4)])

#%%
# PVI residuals. Points where W_n meets a pole of the equation would be
# reported as skipped; none occur here.
for n in range(5):
    r = pvi_residual(n, "-0.5", fam)
    print(n, r.status, ctx.format(r.normalized_residual, 3), ctx.format(r.tolerance, 3))

#%%
# The recurrence coefficients evolve in t by a Toda-type system.
for n in range(4):
    t1, t2 = toda_residual(n, "-0.5", fam)
    print(n, ctx.format(t1.normalized_residual, 3), t2.status, ctx.format(t2.normalized_residual, 3))
