"""Galerkin boundary elements on a closed curve: assemble the layer
operators, check the discrete Calderon projector on an exact solution,
and reproduce the clustering of the Jacobi spectrum at
+-sqrt(sigma/(1+sigma)) on the unit circle and the unit square.

Run:  python3 demos/demo_spectrum_2d.py [n_elements]
"""

import sys

import numpy as np
import scipy.linalg

from multitrace import spectra
from multitrace.bem2d import (KernelParams, assemble_calderon_2d,
                              assemble_operators, make_circle, make_square)
from multitrace.bem2d.kernels import kernel_2d, kernel_gradient_dot

n = int(sys.argv[1]) if len(sys.argv) > 1 else 64
a = 1.0
par = KernelParams(a)

print(f"== unit circle, {n} elements ==")
mesh = make_circle(n)
ops = assemble_operators(mesh, par)
V = ops.single_layer
print("  single layer symmetry:", np.max(np.abs(V - V.T)))

cal_in = assemble_calderon_2d(mesh, par, "interior", operators=ops)
cal_ex = assemble_calderon_2d(mesh, par, "exterior", operators=ops)

# traces of an exact field with source outside the disk
x0 = np.array([2.5, 0.4])
d = mesh.nodes - x0
r = np.linalg.norm(d, axis=1)
radial = mesh.nodes / np.linalg.norm(mesh.nodes, axis=1, keepdims=True)
T = np.concatenate([kernel_2d(a, r), kernel_gradient_dot(a, d, r, radial)])
Q = cal_in.operator()
print("  trace reproduction |QT - T|/|T|:",
      f"{np.max(np.abs(Q @ T - T)) / np.max(np.abs(T)):.2e}")
print("  projector residual |PQ - P|_2:",
      f"{np.linalg.norm(cal_in.P @ Q - cal_in.P, 2):.2e}")

print("\n== Jacobi spectra, sigma = 0.1 on both sides ==")
for name, c_in, c_ex in (
        ("circle", cal_in, cal_ex),
        ("square", *(lambda m: (
            assemble_calderon_2d(m, par, "interior"),
            assemble_calderon_2d(m, par, "exterior")))(make_square(max(n // 4, 1)))),
):
    cfg = spectra.RelaxationConfig((0.1, 0.1))
    A, B = spectra.jacobi_2d_2dom(c_in, c_ex, cfg)
    res = spectra.pencil_spectrum(A, B, cfg.sigmas, eps=0.05)
    inside = 1.0 - res.remainder_fraction
    print(f"  {name}: spectral radius {res.spectral_radius:.4f}, "
          f"{inside:.1%} of eigenvalues within 0.05 of +-0.301511")

print("\nThe accumulation points do not depend on the geometry; only the"
      "\nspread of the discrete cloud around them does.")
