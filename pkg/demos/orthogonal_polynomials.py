r"""
Orthogonal polynomials for a deformed Jacobi weight
---------------------------------------------------
The weight :math:`w(x) = (x-t)^\gamma x^\alpha (1-x)^\beta` on :math:`[0, 1]`
with :math:`t < 0` is smooth apart from the usual endpoint factors, so its
moments, recurrence coefficients and Hankel determinants can be computed to
any precision.  This walk-through builds them two independent ways.
"""
from jacobi_pvi import WeightParams, build_recurrence, hankel_det, moment_table, norms_product, zeros_in_unit_interval

params = WeightParams.create("1.5", "2", "0.5", "-0.5", digits=50)
ctx = params.ctx

#%%
# Moments come from a closed form (a Beta function times a 2F1) or from
# Gauss-Jacobi quadrature of the smooth factor. The two agree to working precision.
closed = moment_table(params, 6, "closed_form").mu
quad = moment_table(params, 6, "quadrature").mu
for k, (a, b) in enumerate(zip(closed, quad)):
    print(k, ctx.format(a, 30), ctx.format(abs(a - b), 3))

#%%
# The three-term recurrence from the Stieltjes procedure, next to the one
# read off a Cholesky factorization of the Hankel moment matrix.
stieltjes = build_recurrence(params, 6, "stieltjes")
cholesky = build_recurrence(params, 6, "cholesky")
print("quadrature nodes used:", stieltjes.rule_size)
for n in range(7):
    print(n, ctx.format(stieltjes.alpha_rec[n], 25), ctx.format(stieltjes.alpha_rec[n] - cholesky.alpha_rec[n], 3))

#%%
# The product of the norms h_0 ... h_{n-1} is the Hankel determinant D_n.
with ctx.local():
    for n in range(1, 6):
        print(n, ctx.format(norms_product(n, stieltjes), 25), ctx.format(norms_product(n, stieltjes) / hankel_det(n, params) - 1, 3))

#%%
# Every zero of P_n sits inside (0, 1), as it must for a positive weight.
print(all(zeros_in_unit_interval(n, stieltjes) for n in range(1, 7)))
