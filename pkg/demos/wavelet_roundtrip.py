"""Continuous zonal wavelet analysis: admissibility, transform, inversion.

Poisson wavelets g^d satisfy the admissibility condition

    int_0^infty |g_rho^d-hat(l)|^2 drho/rho = ((lam+l)/lam)^2,

making them their own reconstruction family.  This script checks the
condition numerically, transforms a random zero-mean signal, and measures
the inversion error as the discretised scale grid [rho_min, rho_max] is
refined and widened - the truncation error is measured, not assumed.
"""

import numpy as np

from spherepde import (
    ZonalSpectrum,
    check_admissibility,
    make_context,
    make_scale_grid,
    poisson_wavelet,
    roundtrip_error,
    wavelet_transform,
)

n, d = 3, 1
ctx = make_context(n)
psi = poisson_wavelet(ctx, d)

print(f"Poisson wavelet order d = {d} on S^{n}")
rep = check_admissibility(psi, psi, 8)
print("\nadmissibility integrals (target ((lam+l)/lam)^2):")
for l in range(9):
    print(f"  l = {l}: integral = {np.real(rep.integral[l]):18.12f}   "
          f"target = {rep.target[l]:10.4f}   deviation = {np.real(rep.deviation[l]):+.2e}")

rng = np.random.default_rng(11)
coeffs = rng.standard_normal(25)
coeffs[0] = 0.0
f = ZonalSpectrum(ctx, coeffs)

grid = make_scale_grid()      # rho in [1e-4, 50], 400 log-uniform nodes
W = wavelet_transform(psi, f, grid)
energy = np.sum(np.abs(W.coeffs) ** 2, axis=1)
peak = grid.nodes[np.argmax(energy)]
print(f"\ntransform of a 24-mode random signal: scale-energy peak near rho = {peak:.3f}")
print("(each degree l concentrates near rho = 1/l for the order-1 family)")

print("\nmeasured inversion error under grid refinement:")
print(f"  {'rho_min':>9} {'rho_max':>8} {'nodes':>6} {'rel L2 error':>14}")
for g in [make_scale_grid(1e-2, 10.0, 50),
          make_scale_grid(1e-3, 20.0, 100),
          make_scale_grid(1e-4, 50.0, 400),
          make_scale_grid(1e-5, 100.0, 1600)]:
    err = roundtrip_error(psi, psi, f, g)
    print(f"  {g.rho_min:9.0e} {g.rho_max:8.0f} {g.count:6d} {err:14.3e}")
