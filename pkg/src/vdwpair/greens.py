"""Electromagnetic Green tensors on the imaginary frequency axis.

Covers the free-space (bulk) tensor and its curls, Fresnel reflection
coefficients of a magneto-electric half space, the half-space scattering
tensor obtained by Sommerfeld-type q-quadrature, and its closed-form
nonretarded approximations.

Geometry convention: the half-space surface is the z = 0 plane, atoms sit
in the vacuum region z > 0, both atoms lie in the xz plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .materials import LorentzMedium, permeability_iu, permittivity_iu
from .quadrature import QuadSpec, integrate_semiinf

__all__ = [
    "PlanarGeometry",
    "GreenComponents",
    "HalfSpaceMedium",
    "free_space_green",
    "free_space_curls",
    "reflection",
    "reflection_expansion",
    "static_reflection",
    "perfect_image_scattering",
    "halfspace_scattering",
    "halfspace_scattering_quadrature",
    "nonretarded_scattering",
]

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class PlanarGeometry:
    """Positions of two atoms above the surface, in the xz plane."""

    x_a: float
    z_a: float
    x_b: float
    z_b: float

    def __post_init__(self):
        if self.z_a <= 0 or self.z_b <= 0:
            raise ValueError("both atoms must sit above the surface (z > 0)")
        if self.l <= 0:
            raise ValueError("atom positions must not coincide")

    @property
    def X(self) -> float:
        return self.x_b - self.x_a

    @property
    def Z(self) -> float:
        return self.z_b - self.z_a

    @property
    def Z_plus(self) -> float:
        return self.z_a + self.z_b

    @property
    def l(self) -> float:
        return float(np.hypot(self.X, self.Z))

    @property
    def l_plus(self) -> float:
        return float(np.hypot(self.X, self.Z_plus))

    def swapped(self) -> "PlanarGeometry":
        """Geometry with the two atoms exchanged."""
        return PlanarGeometry(self.x_b, self.z_b, self.x_a, self.z_a)

    def shifted(self, dx_a=0.0, dz_a=0.0, dx_b=0.0, dz_b=0.0) -> "PlanarGeometry":
        return PlanarGeometry(self.x_a + dx_a, self.z_a + dz_a,
                              self.x_b + dx_b, self.z_b + dz_b)

    @classmethod
    def parallel(cls, l: float, z: float) -> "PlanarGeometry":
        """Both atoms at height z, horizontal separation l."""
        return cls(0.0, z, l, z)

    @classmethod
    def vertical(cls, z_a: float, l: float) -> "PlanarGeometry":
        """Atoms on a common surface normal, lower atom at z_a."""
        return cls(0.0, z_a, 0.0, z_a + l)


@dataclass(frozen=True)
class GreenComponents:
    """Nonzero scattering Green tensor elements for in-plane geometry."""

    gxx: float
    gyy: float
    gxz: float
    gzx: float
    gzz: float

    def as_matrix(self) -> np.ndarray:
        return np.array([
            [self.gxx, 0.0, self.gxz],
            [0.0, self.gyy, 0.0],
            [self.gzx, 0.0, self.gzz],
        ])


@dataclass(frozen=True)
class HalfSpaceMedium:
    """Either a finite-response magneto-electric half space or a perfect
    reflector; exactly one of the two descriptions is active."""

    eps: LorentzMedium | None = None
    mu: LorentzMedium | None = None
    perfect: str | None = None

    def __post_init__(self):
        if self.perfect is not None:
            if self.perfect not in ("conducting", "permeable"):
                raise ValueError("perfect must be 'conducting' or 'permeable'")
            if self.eps is not None or self.mu is not None:
                raise ValueError("perfect reflector excludes finite response")
        else:
            if self.eps is None and self.mu is None:
                raise ValueError("specify eps and/or mu, or a perfect kind")

    @classmethod
    def perfect_conductor(cls) -> "HalfSpaceMedium":
        return cls(perfect="conducting")

    @classmethod
    def perfect_permeable(cls) -> "HalfSpaceMedium":
        return cls(perfect="permeable")

    @classmethod
    def dielectric(cls, eps: LorentzMedium) -> "HalfSpaceMedium":
        return cls(eps=eps)

    @classmethod
    def magnetic(cls, mu: LorentzMedium) -> "HalfSpaceMedium":
        return cls(mu=mu)

    @property
    def is_perfect(self) -> bool:
        return self.perfect is not None

    @property
    def is_vacuum(self) -> bool:
        if self.is_perfect:
            return False
        eps_vac = self.eps is None or self.eps.omegaP == 0.0
        mu_vac = self.mu is None or self.mu.omegaP == 0.0
        return eps_vac and mu_vac

    def eps_iu(self, u):
        if self.eps is None:
            return np.ones_like(np.asarray(u, dtype=float)) if np.ndim(u) else 1.0
        return permittivity_iu(self.eps, u)

    def mu_iu(self, u):
        if self.mu is None:
            return np.ones_like(np.asarray(u, dtype=float)) if np.ndim(u) else 1.0
        return permeability_iu(self.mu, u)


def free_space_green(rho_vec, u: float) -> np.ndarray:
    """Bulk Green tensor at imaginary frequency iu for separation rho_vec."""
    rho_vec = np.asarray(rho_vec, dtype=float)
    rho = float(np.linalg.norm(rho_vec))
    if rho == 0.0:
        raise ValueError("free-space Green tensor is singular at zero separation")
    if u <= 0:
        raise ValueError("u must be positive")
    e = rho_vec / rho
    xi = 1.0 / (u * rho)
    a = 1.0 + xi + xi**2
    b = 1.0 + 3.0 * xi + 3.0 * xi**2
    pref = np.exp(-u * rho) / (FOUR_PI * rho)
    return pref * (a * np.eye(3) - b * np.outer(e, e))


def _cross_matrix(e: np.ndarray) -> np.ndarray:
    return np.array([
        [0.0, -e[2], e[1]],
        [e[2], 0.0, -e[0]],
        [-e[1], e[0], 0.0],
    ])


def free_space_curls(rho_vec, u: float):
    """Left and right curls of the bulk Green tensor.

    Returns (curl G, G x nabla') for G depending on rho = r - r'.  Both are
    proportional to e^{-u rho} (1 + u rho) / (4 pi rho^2) times the
    cross-product matrix of the unit separation vector; the right curl
    differentiates the primed argument, which flips the gradient sign, and
    its index placement transposes the cross matrix.
    """
    rho_vec = np.asarray(rho_vec, dtype=float)
    rho = float(np.linalg.norm(rho_vec))
    if rho == 0.0:
        raise ValueError("curl of the Green tensor is singular at zero separation")
    if u <= 0:
        raise ValueError("u must be positive")
    e = rho_vec / rho
    pref = np.exp(-u * rho) * (1.0 + u * rho) / (FOUR_PI * rho**2)
    ex = _cross_matrix(e)
    left = -pref * ex      # nabla x G
    right = pref * ex.T    # G x nabla'
    return left, right


def reflection(q, u: float, medium: HalfSpaceMedium):
    """Fresnel coefficients (r_s, r_p) at imaginary frequency, vectorized in q."""
    q = np.asarray(q, dtype=float)
    if np.any(q < 0):
        raise ValueError("q must be >= 0")
    if u <= 0:
        raise ValueError("u must be positive")
    if medium.is_perfect:
        sign = 1.0 if medium.perfect == "conducting" else -1.0
        shape = q.shape
        rs = np.full(shape, -sign) if shape else -sign
        rp = np.full(shape, sign) if shape else sign
        return rs, rp
    eps = medium.eps_iu(u)
    mu = medium.mu_iu(u)
    b = np.sqrt(u**2 + q**2)
    b_m = np.sqrt(eps * mu * u**2 + q**2)
    # Rationalized numerators: x*b - b_m = (x^2 b^2 - b_m^2)/(x*b + b_m)
    # avoids catastrophic cancellation at q >> u, where the direct
    # difference loses the digits that the 1/u^2 kernels amplify.
    rs = (mu * (mu - eps) * u**2 + (mu**2 - 1.0) * q**2) / (mu * b + b_m) ** 2
    rp = (eps * (eps - mu) * u**2 + (eps**2 - 1.0) * q**2) / (eps * b + b_m) ** 2
    if q.ndim == 0:
        return float(rs), float(rp)
    return rs, rp


def reflection_expansion(q, u: float, medium: HalfSpaceMedium):
    """Leading nonretarded expansion of (r_s, r_p) in powers of u/b."""
    if medium.is_perfect:
        raise ValueError("expansion is ill-defined for a perfect reflector")
    q = np.asarray(q, dtype=float)
    eps = medium.eps_iu(u)
    mu = medium.mu_iu(u)
    b2 = u**2 + q**2
    ratio = u**2 / b2
    rs = (mu - 1.0) / (mu + 1.0) - mu * (eps * mu - 1.0) / (mu + 1.0) ** 2 * ratio
    rp = (eps - 1.0) / (eps + 1.0) - eps * (eps * mu - 1.0) / (eps + 1.0) ** 2 * ratio
    if q.ndim == 0:
        return float(rs), float(rp)
    return rs, rp


def static_reflection(v, eps0: float, mu0: float):
    """Static-limit reflection coefficients as functions of v = b/k >= 1."""
    v = np.asarray(v, dtype=float)
    if np.any(v < 1.0):
        raise ValueError("v must be >= 1")
    radicand = eps0 * mu0 - 1.0 + v**2
    if np.any(radicand < 0):
        raise ValueError("negative radicand: eps0*mu0 - 1 + v^2 must be >= 0")
    root = np.sqrt(radicand)
    rs = (mu0 * v - root) / (mu0 * v + root)
    rp = (eps0 * v - root) / (eps0 * v + root)
    if v.ndim == 0:
        return float(rs), float(rp)
    return rs, rp


def q_breakpoints(geom: PlanarGeometry, u: float, max_oscillations: int = 20000):
    """Initial q-grid resolving the e^{-b Z+} decay and J_nu(qX) oscillations."""
    zp = geom.Z_plus
    q_cut = 45.0 / zp
    breaks = list(np.array([0.05, 0.15, 0.4, 1.0, 2.5, 6.0, 15.0, 30.0, 45.0]) / zp)
    # The integrand changes character at q ~ u (b crosses over from u to q)
    # and can carry slow algebraic tails between u and the decay scale;
    # resolve that whole range geometrically when it lies below the grid.
    breaks += [s * u for s in (0.1, 0.3, 1.0, 3.0) if s * u < q_cut]
    lo_decay = 0.05 / zp
    if 10.0 * u < lo_decay:
        n_dec = int(np.ceil(4.0 * np.log10(lo_decay / (10.0 * u))))
        breaks += list(np.geomspace(10.0 * u, lo_decay, max(n_dec, 2)))
    elif 10.0 * u < q_cut:
        breaks.append(10.0 * u)
    x = abs(geom.X)
    if x > 0:
        step = np.pi / x
        n = int(q_cut / step)
        if n > max_oscillations:
            step = q_cut / max_oscillations
        if step < q_cut:
            breaks += list(np.arange(step, q_cut, step))
    return breaks


def _scattering_spec(spec: QuadSpec | None, n_breaks: int) -> QuadSpec:
    spec = spec or QuadSpec()
    min_subdiv = max(spec.max_subdivisions, n_breaks // 2 + 50, 800)
    if min_subdiv != spec.max_subdivisions:
        spec = QuadSpec(spec.rel_tol, spec.abs_tol, min_subdiv, spec.transform,
                        spec.nest_factor)
    return spec


def perfect_image_scattering(geom: PlanarGeometry, u: float,
                             medium: HalfSpaceMedium) -> GreenComponents:
    """Exact scattering tensor of a perfect reflector by image construction.

    G1(rA, rB) = -+ G0(rho_image) . diag(1, 1, -1) with
    rho_image = (X, 0, Z+), upper sign for the conducting plate; this is
    the closed form of the q-integrals when the reflection coefficients
    are constant.
    """
    if not medium.is_perfect:
        raise ValueError("image closed form exists only for perfect reflectors")
    sign = -1.0 if medium.perfect == "conducting" else 1.0
    g = sign * free_space_green(
        np.array([geom.X, 0.0, geom.Z_plus]), u) @ np.diag([1.0, 1.0, -1.0])
    return GreenComponents(gxx=g[0, 0], gyy=g[1, 1], gxz=g[0, 2],
                           gzx=g[2, 0], gzz=g[2, 2])


def halfspace_scattering(geom: PlanarGeometry, u: float,
                         medium: HalfSpaceMedium,
                         spec: QuadSpec | None = None) -> GreenComponents:
    """Scattering Green tensor elements between the two atoms at iu.

    Each element is a Bessel-weighted semi-infinite q-integral damped by
    e^{-b Z+}; the gxz element carries the upper (minus) sign of the
    xz/zx pair, gzx the lower.  Perfect reflectors short-circuit to the
    exact image closed form; ``halfspace_scattering_quadrature`` keeps the
    integral route available for cross-validation.
    """
    if medium.is_perfect:
        if u <= 0:
            raise ValueError("u must be positive")
        return perfect_image_scattering(geom, u, medium)
    return halfspace_scattering_quadrature(geom, u, medium, spec=spec)


def halfspace_scattering_quadrature(geom: PlanarGeometry, u: float,
                                    medium: HalfSpaceMedium,
                                    spec: QuadSpec | None = None) -> GreenComponents:
    """Scattering tensor elements by direct Sommerfeld q-quadrature."""
    if u <= 0:
        raise ValueError("u must be positive")
    if medium.is_vacuum:
        return GreenComponents(0.0, 0.0, 0.0, 0.0, 0.0)
    x = geom.X
    zp = geom.Z_plus
    k2 = u**2
    breaks = q_breakpoints(geom, u)
    spec = _scattering_spec(spec, len(breaks))

    def xx_yy(q, sign):
        rs, rp = reflection(q, u, medium)
        b = np.sqrt(u**2 + q**2)
        damp = q * np.exp(-b * zp)
        j0 = special.j0(q * x)
        j2 = special.jn(2, q * x)
        return damp * ((j0 + sign * j2) / b * rs
                       - b * (j0 - sign * j2) / k2 * rp) / (8.0 * np.pi)

    def xz(q):
        _, rp = reflection(q, u, medium)
        b = np.sqrt(u**2 + q**2)
        return q**2 * np.exp(-b * zp) * special.j1(q * x) * rp / k2 / FOUR_PI

    def zz(q):
        _, rp = reflection(q, u, medium)
        b = np.sqrt(u**2 + q**2)
        return q**3 * np.exp(-b * zp) * special.j0(q * x) * rp / (b * k2) / FOUR_PI

    gxx = integrate_semiinf(lambda q: xx_yy(q, +1.0), spec, breakpoints=breaks,
                            axis="q").value
    gyy = integrate_semiinf(lambda q: xx_yy(q, -1.0), spec, breakpoints=breaks,
                            axis="q").value
    gzz = -integrate_semiinf(zz, spec, breakpoints=breaks, axis="q").value
    if x == 0.0:
        i1 = 0.0
    else:
        i1 = integrate_semiinf(xz, spec, breakpoints=breaks, axis="q").value
    return GreenComponents(gxx=gxx, gyy=gyy, gxz=-i1, gzx=+i1, gzz=gzz)


def nonretarded_scattering(geom: PlanarGeometry, u: float,
                           medium: HalfSpaceMedium) -> GreenComponents:
    """Closed-form nonretarded approximations of the scattering tensor.

    Valid for purely electric media, purely magnetic media, and perfect
    reflectors; asymptotic references only (recommended guard
    u * l_plus < 0.1).
    """
    if u <= 0:
        raise ValueError("u must be positive")
    x = geom.X
    zp = geom.Z_plus
    lp = geom.l_plus

    if medium.is_perfect or medium.mu is None or medium.mu.omegaP == 0.0:
        # Perfect reflector or purely electric half space: same tensor
        # structure, with r_p replaced by (eps-1)/(eps+1) in the finite case.
        if medium.is_perfect:
            rp = 1.0 if medium.perfect == "conducting" else -1.0
        else:
            eps = medium.eps_iu(u)
            rp = (eps - 1.0) / (eps + 1.0)
        c = rp / (u**2 * FOUR_PI)
        gxx = (2.0 * x**2 - zp**2) / lp**5 * c
        gyy = -1.0 / lp**3 * c
        i1 = 3.0 * x * zp / lp**5 * c
        gzz = (x**2 - 2.0 * zp**2) / lp**5 * c
        return GreenComponents(gxx=gxx, gyy=gyy, gxz=-i1, gzx=+i1, gzz=gzz)

    if medium.eps is not None and medium.eps.omegaP != 0.0:
        raise ValueError("nonretarded closed forms exist only for purely "
                         "electric or purely magnetic half spaces")
    mu = medium.mu_iu(u)
    frac = (mu - 1.0) / (mu + 1.0)
    if x == 0.0:
        # l_plus - Z_plus ~ X^2/(2 Z_plus): finite X -> 0 limits
        gxx = frac / (8.0 * np.pi * zp) + (mu - 1.0) / (32.0 * np.pi * zp)
        gyy = (mu - 1.0) / (32.0 * np.pi * zp) + frac / (8.0 * np.pi * zp)
        i1 = 0.0
    else:
        gxx = ((lp - zp) / (FOUR_PI * x**2) * frac
               + (zp * lp - zp**2) / (16.0 * np.pi * x**2 * lp) * (mu - 1.0))
        gyy = ((lp - zp) / (16.0 * np.pi * x**2) * (mu - 1.0)
               + (zp * lp - zp**2) / (FOUR_PI * x**2 * lp) * frac)
        i1 = -(lp - zp) / (16.0 * np.pi * x * lp) * (mu - 1.0)
    gzz = (mu - 1.0) / (16.0 * np.pi * lp)
    # xz carries the upper (plus) sign here, opposite to the exact tensor's
    # minus convention; i1 above is defined so that gxz = -i1 stays uniform.
    return GreenComponents(gxx=gxx, gyy=gyy, gxz=-i1, gzx=+i1, gzz=gzz)
