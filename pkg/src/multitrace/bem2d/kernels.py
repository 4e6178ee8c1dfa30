"""Fundamental solution of -Laplace + a^2 in the plane and its derivatives.

The decaying fundamental solution is ``G(r) = K0(a r) / (2 pi)`` with
``K0`` the modified Bessel function of the second kind.  Assembly also
needs the split of ``K0``/``K1`` into a logarithmic part and a smooth
remainder, which drives the singular quadrature:

* ``K0(z) = -log(z) I0(z) + C0(z)``  with ``C0`` entire and even,
* ``K1(z) = 1/z + log(z) I1(z) + C1(z)``  with ``C1`` entire and odd.
"""

import numpy as np
from scipy.special import i0, i1, k0, k1

TWO_PI = 2.0 * np.pi


def _check_a(a):
    if not a > 0:
        raise ValueError(f"kernel parameter a must be positive, got {a}")
    return float(a)


def kernel_2d(a, r):
    """Fundamental solution ``K0(a r) / (2 pi)`` at distance ``r > 0``."""
    a = _check_a(a)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("kernel requires strictly positive distance")
    return k0(a * r) / TWO_PI


def kernel_radial_deriv(a, r):
    """Radial derivative ``-a K1(a r) / (2 pi)`` of the kernel."""
    a = _check_a(a)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("kernel requires strictly positive distance")
    return -a * k1(a * r) / TWO_PI


def kernel_normal_derivative(a, x, y, normal_y):
    """Kernel of the double layer: ``d/dn(y) G(x - y)``.

    Arrays broadcast; the trailing axis holds the two coordinates.
    Equals ``a K1(a r) (n(y) . (x - y)) / (2 pi r)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    normal_y = np.asarray(normal_y, dtype=float)
    d = x - y
    r = np.sqrt(np.sum(d * d, axis=-1))
    if np.any(r <= 0):
        raise ValueError("kernel requires distinct points")
    return -kernel_radial_deriv(a, r) * np.sum(normal_y * d, axis=-1) / r


def kernel_gradient_dot(a, d, r, vec):
    """``vec . grad(G)`` evaluated at offset ``d`` with ``r = |d|``."""
    return kernel_radial_deriv(a, r) * np.sum(vec * d, axis=-1) / r


def kernel_hessian_bilinear(a, d, r, nx, ny):
    """``nx^T Hess(G) ny`` at offset ``d = x - y`` with ``r = |d|``.

    Used for the cross-curve hypersingular blocks where the kernel is
    smooth; ``Hess(G) = g''(r) rhat rhat^T + g'(r)(I - rhat rhat^T)/r``.
    """
    a = _check_a(a)
    gp = -a * k1(a * r) / TWO_PI
    gpp = a * a * (k0(a * r) + k1(a * r) / (a * r)) / TWO_PI
    nx_rhat = np.sum(nx * d, axis=-1) / r
    ny_rhat = np.sum(ny * d, axis=-1) / r
    nx_ny = np.sum(nx * ny, axis=-1)
    return gpp * nx_rhat * ny_rhat + gp * (nx_ny - nx_rhat * ny_rhat) / r


def k0_smooth_remainder(z):
    """``C0(z) = K0(z) + log(z) I0(z)``, entire and even in ``z``."""
    return k0(z) + np.log(z) * i0(z)


def k1_smooth_remainder(z):
    """``C1(z) = K1(z) - 1/z - log(z) I1(z)``, entire and odd in ``z``."""
    return k1(z) - 1.0 / z - np.log(z) * i1(z)
