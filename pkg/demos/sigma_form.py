r"""
The sigma form along t
----------------------
:math:`H_n(t) = t(t-1)\,\frac{d}{dt}\ln D_n(t)` can be computed without numerical
differentiation from the ladder quantities :math:`R_j` and :math:`r^*_n`.
After a shift by :math:`d_1 t + d_2` it satisfies the Jimbo-Miwa-Okamoto
sigma form of Painleve VI; here we watch the residual fall with precision.
"""
from jacobi_pvi import Family, PrecisionContext, sigma_residual
from jacobi_pvi.painleve import sigma_values

#%%
# A family keeps alpha, beta, gamma fixed and lets t vary.
fam = Family("2", "1", "-0.5", PrecisionContext(50), n_max=4)
for t in ("-0.25", "-0.5", "-1", "-2", "-5"):
    Ht, Ht1, Ht2 = sigma_values(2, t, fam)
    print(t, fam.ctx.format(Ht, 20), fam.ctx.format(Ht1, 20), fam.ctx.format(Ht2.value, 20))

#%%
# Residuals next to the finite-difference error budget they are judged against.
for n in range(1, 5):
    r = sigma_residual(n, "-1", fam)
    print(n, fam.ctx.format(r.normalized_residual, 3), fam.ctx.format(r.derivative_error_budget, 3), r.passed)

#%%
# Raising the precision drives the residual down with it: no plateau, so the
# identity is exact and all of the residual is numerical error.
for digits in (40, 60, 80, 100):
    fam_d = Family("2", "1", "-0.5", PrecisionContext(digits), n_max=3)
    print(digits, fam_d.ctx.format(sigma_residual(3, "-1", fam_d).normalized_residual, 3))
