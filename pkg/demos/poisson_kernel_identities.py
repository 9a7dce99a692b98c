"""The Poisson kernel and the spectral identities behind the solver.

Two identities everything else rests on:

  * the Poisson kernel's Gegenbauer series equals its closed form,
        sum_l r^l (lam+l)/lam C_l(t) = (1-r^2)/(1-2rt+r^2)^{(n+1)/2};
  * convolution with a zonal kernel is a per-degree multiplication,
        (f*g)-hat(l) = lam/(lam+l) f-hat(l) g-hat(l),
    checked against direct quadrature of the sphere integral.
"""

import numpy as np

from spherepde import (
    ZonalSpectrum,
    convolve,
    gauss_gegenbauer_rule,
    inner,
    laplace_beltrami,
    make_context,
    poisson_kernel,
    poisson_kernel_spectrum,
    synthesize,
)
from spherepde.geometry import surface_measure


def convolution_by_quadrature(n, f, g, alpha_t, m=80):
    """(f*g)(alpha_t) straight from the sphere integral.

    Zonal reduction in two steps: the polar angle theta of the integration
    variable and the azimuthal-like angle gamma between the tangential
    parts, each with the Gauss rule for its sine-power weight.
    """
    r1 = gauss_gegenbauer_rule((n - 1) / 2.0, m)                 # cos(theta)
    r2 = gauss_gegenbauer_rule((n - 2) / 2.0, m)                 # cos(gamma)
    sa = np.sqrt(max(0.0, 1.0 - alpha_t * alpha_t))
    st = np.sqrt(np.clip(1.0 - r1.nodes ** 2, 0.0, None))
    arg = (alpha_t * r1.nodes)[:, None] + (sa * st)[:, None] * r2.nodes[None, :]
    gv = np.asarray(g(np.clip(arg, -1, 1).ravel())).reshape(arg.shape)
    inner_vals = gv @ r2.weights
    total = np.sum(r1.weights * f(r1.nodes) * inner_vals)
    return total * surface_measure(n - 2) / surface_measure(n)


n = 4
ctx = make_context(n)

print(f"Poisson kernel on S^{n}: series vs closed form")
print(f"  {'r':>5} {'t':>6} {'series':>18} {'closed':>18}")
for r in (0.3, 0.7, 0.9):
    spec = poisson_kernel_spectrum(ctx, r, 400)
    for t in (-0.5, 0.8):
        print(f"  {r:5.2f} {t:6.2f} {synthesize(spec, t):18.14f} "
              f"{poisson_kernel(ctx, r, t):18.14f}")

rng = np.random.default_rng(3)
f = ZonalSpectrum(ctx, rng.standard_normal(9) / (1 + np.arange(9.0)))
g = ZonalSpectrum(ctx, rng.standard_normal(9) / (1 + np.arange(9.0)))
spec = convolve(f, g)

print("\nconvolution theorem: coefficient formula vs sphere quadrature")
print(f"  {'t':>6} {'spectral':>18} {'quadrature':>18}")
for t in (-0.6, 0.0, 0.5):
    direct = convolution_by_quadrature(
        n, lambda x: synthesize(f, x), lambda x: synthesize(g, x), t)
    print(f"  {t:6.2f} {synthesize(spec, t):18.14f} {direct:18.14f}")

lhs = inner(laplace_beltrami(f), g)
rhs = inner(f, laplace_beltrami(g))
print(f"\nself-adjointness of the Laplace-Beltrami operator:")
print(f"  <Lf, g> = {lhs:.15f}")
print(f"  <f, Lg> = {rhs:.15f}")
