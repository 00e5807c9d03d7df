"""Special functions and Bessel-weighted auxiliary integrals.

Provides low-order Bessel functions, the polynomial factors of the
free-space interaction kernels, the closed forms of the exponentially
damped Bessel moments A_{k+-}(lambda, zeta) and B_k(lambda, zeta), and the
sixth-order two-Bessel moment M_nu computed by quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .quadrature import QuadSpec, integrate_semiinf

__all__ = [
    "WeightedIntegralKey",
    "bessel_j",
    "free_space_polys",
    "weighted_AB",
    "m_nu",
]


def bessel_j(nu: int, x):
    """Bessel function J_nu for nu in {0, 1, 2}, x >= 0."""
    if nu not in (0, 1, 2):
        raise ValueError("bessel_j supports only orders 0, 1, 2")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be >= 0")
    if nu == 0:
        out = special.j0(x)
    elif nu == 1:
        out = special.j1(x)
    else:
        out = special.jn(2, x)
    return float(out) if out.ndim == 0 else out


def free_space_polys(x):
    """Polynomial kernels (a, b, g, h) of the free-space interaction.

    a(x) = 1 + x + x^2 and b(x) = 1 + 3x + 3x^2 enter the free-space Green
    tensor; g and h carry the exponential damping:
    g(x) = 2 e^{-2x} (3 + 6x + 5x^2 + 2x^3 + x^4),
    h(x) = 2 e^{-2x} (1 + 2x + x^2).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be >= 0")
    a = 1.0 + x + x**2
    b = 1.0 + 3.0 * x + 3.0 * x**2
    damp = 2.0 * np.exp(-2.0 * x)
    g = damp * (3.0 + 6.0 * x + 5.0 * x**2 + 2.0 * x**3 + x**4)
    h = damp * (1.0 + 2.0 * x + x**2)
    if x.ndim == 0:
        return float(a), float(b), float(g), float(h)
    return a, b, g, h


@dataclass(frozen=True)
class WeightedIntegralKey:
    """Selects one member of the A+-/B/M families of weighted integrals."""

    family: str  # "A+", "A-", "B", or "M"
    order: int

    def __post_init__(self):
        if self.family in ("A+", "A-", "B"):
            if self.order not in (3, 4, 5):
                raise ValueError(f"{self.family} admits orders 3, 4, 5")
        elif self.family == "M":
            if self.order not in (0, 1, 2):
                raise ValueError("M admits orders 0, 1, 2")
        else:
            raise ValueError("family must be 'A+', 'A-', 'B', or 'M'")


def _closed_form(family: str, k: int, lam: float, zeta: float) -> float:
    d = lam**2 + zeta**2
    if family == "A+":
        if k == 3:
            return 6.0 * lam / d**2.5
        if k == 4:
            return 6.0 * (4.0 * lam**2 - zeta**2) / d**3.5
        return 30.0 * (4.0 * lam**3 - 3.0 * lam * zeta**2) / d**4.5
    if family == "A-":
        if k == 3:
            return 6.0 * (lam**3 - 4.0 * lam * zeta**2) / d**3.5
        if k == 4:
            return 6.0 * (4.0 * lam**4 - 27.0 * lam**2 * zeta**2
                          + 4.0 * zeta**4) / d**4.5
        return 30.0 * (4.0 * lam**5 - 41.0 * lam**3 * zeta**2
                       + 18.0 * lam * zeta**4) / d**5.5
    # family "B"
    if k == 3:
        return 3.0 * lam * (2.0 * lam**2 - 3.0 * zeta**2) / d**3.5
    if k == 4:
        return 3.0 * (8.0 * lam**4 - 24.0 * lam**2 * zeta**2
                      + 3.0 * zeta**4) / d**4.5
    return 15.0 * lam * (8.0 * lam**4 - 40.0 * lam**2 * zeta**2
                         + 15.0 * zeta**4) / d**5.5


def weighted_AB(key: WeightedIntegralKey, lam: float, zeta: float = 0.0) -> float:
    """Closed form of int_0^inf x^k e^{-lam x} [J0(zeta x) +- J2(zeta x)] dx
    (A families) or of the same integral with J0 alone (B family)."""
    if key.family == "M":
        raise ValueError("use m_nu for the M family")
    if lam <= 0:
        raise ValueError("lam must be positive (integral diverges otherwise)")
    return _closed_form(key.family, key.order, float(lam), float(zeta))


def weighted_AB_quadrature(key: WeightedIntegralKey, lam: float,
                           zeta: float = 0.0, spec: QuadSpec | None = None):
    """Direct quadrature of the defining integral, for cross-validation."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    spec = spec or QuadSpec(rel_tol=1e-11, abs_tol=1e-16, max_subdivisions=2000)
    k = key.order

    def f(x):
        w = x**k * np.exp(-lam * x)
        if key.family == "B":
            return w * special.j0(zeta * x)
        j = special.j0(zeta * x)
        j2 = special.jn(2, zeta * x)
        return w * (j + j2) if key.family == "A+" else w * (j - j2)

    breaks = list((k + 1) / lam * np.array([0.25, 0.5, 1.0, 2.0, 4.0, 8.0]))
    if zeta > 0:
        step = np.pi / zeta
        breaks += list(np.arange(step, 60.0 / lam, step)[:4000])
    return integrate_semiinf(f, spec, breakpoints=breaks)


def m_nu(nu: int, zeta: float, zeta_p: float, s: float,
         spec: QuadSpec | None = None) -> float:
    """Moment M_nu = int_0^inf x^6 e^{-s x} J_nu(zeta x) J_nu(zeta' x) dx.

    Evaluated by adaptive quadrature; for zeta = zeta' = 0 it reduces to
    720 delta_{nu 0} / s^7.
    """
    if nu not in (0, 1, 2):
        raise ValueError("nu must be 0, 1, or 2")
    if s <= 0:
        raise ValueError("s must be positive")
    if zeta < 0 or zeta_p < 0:
        raise ValueError("zeta arguments must be >= 0")
    if zeta == 0.0 and zeta_p == 0.0:
        return 720.0 / s**7 if nu == 0 else 0.0
    spec = spec or QuadSpec(rel_tol=1e-10, abs_tol=1e-18, max_subdivisions=4000)

    def f(x):
        return x**6 * np.exp(-s * x) * bessel_j(nu, zeta * x) * bessel_j(nu, zeta_p * x)

    breaks = list(7.0 / s * np.array([0.25, 0.5, 1.0, 2.0, 4.0, 8.0]))
    zmax = max(zeta, zeta_p)
    if zmax > 0:
        step = np.pi / zmax
        breaks += list(np.arange(step, 50.0 / s, step)[:8000])
    res = integrate_semiinf(f, spec, breakpoints=breaks)
    return res.value
