"""Free-space and half-space Green tensors, reflection coefficients."""

import numpy as np
import pytest

from vdwpair import (
    GreenComponents,
    HalfSpaceMedium,
    LorentzMedium,
    PlanarGeometry,
)
from vdwpair.greens import (
    free_space_curls,
    free_space_green,
    halfspace_scattering,
    halfspace_scattering_quadrature,
    nonretarded_scattering,
    perfect_image_scattering,
    q_breakpoints,
    reflection,
    reflection_expansion,
    static_reflection,
)
from vdwpair.quadrature import QuadSpec, integrate_semiinf

EPS_MEDIUM = LorentzMedium(omegaP=3.0, omegaT=1.0, gamma=1e-3)
MU_MEDIUM = LorentzMedium(omegaP=3.0, omegaT=1.0, gamma=1e-3, kind="magnetic")


class TestPlanarGeometry:
    def test_derived_quantities(self):
        g = PlanarGeometry(0.0, 1.0, 3.0, 5.0)
        assert g.X == 3.0
        assert g.Z == 4.0
        assert g.Z_plus == 6.0
        assert g.l == pytest.approx(5.0)
        assert g.l_plus == pytest.approx(np.hypot(3.0, 6.0))

    def test_swapped(self):
        g = PlanarGeometry(0.2, 1.0, 1.0, 2.0).swapped()
        assert (g.x_a, g.z_a, g.x_b, g.z_b) == (1.0, 2.0, 0.2, 1.0)

    def test_families(self):
        par = PlanarGeometry.parallel(2.0, 0.5)
        assert par.Z == 0.0 and par.l == 2.0 and par.Z_plus == 1.0
        ver = PlanarGeometry.vertical(0.5, 2.0)
        assert ver.X == 0.0 and ver.l == 2.0 and ver.z_b == 2.5

    def test_invalid(self):
        with pytest.raises(ValueError):
            PlanarGeometry(0.0, -1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            PlanarGeometry(0.0, 1.0, 0.0, 1.0)  # coincident


class TestHalfSpaceMedium:
    def test_exclusive_descriptions(self):
        with pytest.raises(ValueError):
            HalfSpaceMedium(eps=EPS_MEDIUM, perfect="conducting")
        with pytest.raises(ValueError):
            HalfSpaceMedium()
        with pytest.raises(ValueError):
            HalfSpaceMedium(perfect="translucent")

    def test_vacuum_detection(self):
        assert HalfSpaceMedium(eps=LorentzMedium(omegaP=0.0)).is_vacuum
        assert not HalfSpaceMedium.dielectric(EPS_MEDIUM).is_vacuum
        assert not HalfSpaceMedium.perfect_conductor().is_vacuum


class TestFreeSpaceGreen:
    def test_trace(self):
        # Tr G0 = e^{-u rho}/(4 pi rho) (3a - b)
        rho_vec = np.array([0.3, 0.0, 0.4])
        u = 2.0
        g = free_space_green(rho_vec, u)
        rho = 0.5
        xi = 1.0 / (u * rho)
        a = 1.0 + xi + xi**2
        b = 1.0 + 3.0 * xi + 3.0 * xi**2
        expected = np.exp(-u * rho) / (4.0 * np.pi * rho) * (3.0 * a - b)
        assert np.trace(g) == pytest.approx(expected, rel=1e-13)

    def test_unit_argument_coefficients(self):
        # u*rho = 1: a = 3, b = 7
        g = free_space_green(np.array([1.0, 0.0, 0.0]), 1.0)
        pref = np.exp(-1.0) / (4.0 * np.pi)
        assert g[1, 1] == pytest.approx(pref * 3.0, rel=1e-13)
        assert g[0, 0] == pytest.approx(pref * (3.0 - 7.0), rel=1e-13)

    def test_transverse_retarded_limit(self):
        # yy -> e^{-u rho}/(4 pi rho) for u*rho >> 1
        g = free_space_green(np.array([30.0, 0.0, 0.0]), 1.0)
        assert g[1, 1] == pytest.approx(np.exp(-30.0) / (4.0 * np.pi * 30.0),
                                        rel=1e-2)

    def test_symmetric_and_offdiagonal(self):
        g = free_space_green(np.array([0.3, 0.0, 0.7]), 1.4)
        assert np.allclose(g, g.T)
        g_axis = free_space_green(np.array([0.0, 0.0, 0.7]), 1.4)
        assert g_axis[0, 2] == 0.0 and g_axis[2, 0] == 0.0

    def test_singularity(self):
        with pytest.raises(ValueError):
            free_space_green(np.zeros(3), 1.0)


class TestFreeSpaceCurls:
    def test_structure_and_prefactor(self):
        rho_vec = np.array([0.0, 0.0, 0.8])
        u = 1.0e-9  # u*rho -> 0: prefactor -> 1/(4 pi rho^2)
        left, right = free_space_curls(rho_vec, u)
        pref = 1.0 / (4.0 * np.pi * 0.8**2)
        # left curl is -pref times the cross matrix of e_z
        assert left[0, 1] == pytest.approx(pref, rel=1e-8)
        # the two curls differ by overall sign and transposition
        assert np.allclose(right, -left.T)

    def test_trace_identity(self):
        # Tr[left . right] = -2 pref^2, the -2 of the cross-matrix identity
        rho_vec = np.array([0.4, 0.0, 0.3])
        u = 1.7
        left, right = free_space_curls(rho_vec, u)
        rho = 0.5
        pref = np.exp(-u * rho) * (1.0 + u * rho) / (4.0 * np.pi * rho**2)
        assert np.trace(left @ right) == pytest.approx(-2.0 * pref**2,
                                                       rel=1e-12)

    def test_finite_difference_oracle(self):
        # curls match componentwise central differences of the bulk tensor
        rho_vec = np.array([0.5, 0.0, 0.9])
        u = 1.3
        h = 1e-6
        left, right = free_space_curls(rho_vec, u)
        eye = np.eye(3)

        def g(r):
            return free_space_green(r, u)

        curl_fd = np.zeros((3, 3))
        for j in range(3):
            # (curl G)_{ij} = eps_{ikl} d_k G_{lj}, derivative in r
            for i in range(3):
                total = 0.0
                for k in range(3):
                    for l in range(3):
                        sign = _levi_civita(i, k, l)
                        if sign:
                            d = (g(rho_vec + h * eye[k])[l, j]
                                 - g(rho_vec - h * eye[k])[l, j]) / (2.0 * h)
                            total += sign * d
                curl_fd[i, j] = total
        assert np.allclose(curl_fd, left, rtol=1e-6, atol=1e-9)

        # (G x nabla')_{ij} = eps_{jkl} d'_k G_{il}; with G = G(r - r'),
        # d'_k = -d_k acting on the separation argument
        curl_fd = np.zeros((3, 3))
        for i in range(3):
            for j in range(3):
                total = 0.0
                for k in range(3):
                    for l in range(3):
                        sign = _levi_civita(j, k, l)
                        if sign:
                            d = -(g(rho_vec + h * eye[k])[i, l]
                                  - g(rho_vec - h * eye[k])[i, l]) / (2.0 * h)
                            total += sign * d
                curl_fd[i, j] = total
        assert np.allclose(curl_fd, right, rtol=1e-6, atol=1e-9)


def _levi_civita(i, j, k):
    if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        return 1.0
    if (i, j, k) in ((0, 2, 1), (2, 1, 0), (1, 0, 2)):
        return -1.0
    return 0.0


class TestReflection:
    def test_vacuum(self):
        med = HalfSpaceMedium(eps=LorentzMedium(omegaP=0.0))
        assert reflection(1.0, 1.0, med) == (0.0, 0.0)

    def test_perfect(self):
        assert reflection(1.0, 1.0, HalfSpaceMedium.perfect_conductor()) \
            == (-1.0, 1.0)
        assert reflection(1.0, 1.0, HalfSpaceMedium.perfect_permeable()) \
            == (1.0, -1.0)

    def test_dielectric_normal_incidence(self):
        # eps(iu) = 10, q = 0: r_p = (10 - sqrt(10))/(10 + sqrt(10))
        med = HalfSpaceMedium.dielectric(
            LorentzMedium(omegaP=3.0, omegaT=1.0, gamma=0.0))
        rs, rp = reflection(0.0, 1e-9, med)  # u -> 0 keeps eps at 10
        target = (10.0 - np.sqrt(10.0)) / (10.0 + np.sqrt(10.0))
        assert rp == pytest.approx(target, rel=1e-6)
        assert rs == pytest.approx(-(np.sqrt(10.0) - 1.0)
                                   / (np.sqrt(10.0) + 1.0), rel=1e-6)

    def test_bounded(self):
        med = HalfSpaceMedium(eps=EPS_MEDIUM, mu=MU_MEDIUM)
        q = np.geomspace(1e-6, 1e6, 200)
        for u in (0.01, 1.0, 50.0):
            rs, rp = reflection(q, u, med)
            assert np.all(np.abs(rs) <= 1.0)
            assert np.all(np.abs(rp) <= 1.0)

    def test_large_q_stability(self):
        # the rationalized form must not lose digits at q >> u
        med = HalfSpaceMedium.magnetic(
            LorentzMedium(omegaP=0.1, omegaT=1.0, gamma=0.0, kind="magnetic"))
        u = 1e-3
        q = 1e6
        rs, rp = reflection(q, u, med)
        mu = med.mu_iu(u)
        assert rs == pytest.approx((mu - 1.0) / (mu + 1.0), rel=1e-10)

    def test_expansion_accuracy(self):
        med = HalfSpaceMedium.dielectric(
            LorentzMedium(omegaP=3.0, omegaT=1.0, gamma=0.0))
        u = 0.01
        q = 1.0  # u/b = 0.01
        _, rp = reflection(q, u, med)
        _, rp_exp = reflection_expansion(q, u, med)
        assert abs(rp - rp_exp) < 1e-6

    def test_expansion_vanishing_leading_terms(self):
        mu_only = HalfSpaceMedium.magnetic(MU_MEDIUM)
        rs, _ = reflection_expansion(10.0, 1e-4, HalfSpaceMedium.dielectric(
            EPS_MEDIUM))
        assert abs(rs) < 1e-7  # mu = 1: leading s-term vanishes
        _, rp = reflection_expansion(10.0, 1e-4, mu_only)
        assert abs(rp) < 1e-7


class TestStaticReflection:
    def test_vacuum(self):
        assert static_reflection(1.5, 1.0, 1.0) == (0.0, 0.0)

    def test_reference_value(self):
        _, rp = static_reflection(1.0, 2.0, 1.0)
        assert rp == pytest.approx((2.0 - np.sqrt(2.0)) / (2.0 + np.sqrt(2.0)),
                                   rel=1e-14)

    def test_perfect_limits(self):
        rs, rp = static_reflection(1.3, 1e12, 1.0)
        assert rp == pytest.approx(1.0, abs=1e-5)
        assert rs == pytest.approx(-1.0, abs=1e-5)

    def test_domain(self):
        with pytest.raises(ValueError):
            static_reflection(0.5, 2.0, 1.0)


class TestHalfspaceScattering:
    def test_vacuum_zero(self):
        med = HalfSpaceMedium(eps=LorentzMedium(omegaP=0.0))
        g = halfspace_scattering_quadrature(
            PlanarGeometry.parallel(1.0, 0.5), 1.0, med)
        assert g == GreenComponents(0.0, 0.0, 0.0, 0.0, 0.0)

    def test_axis_aligned_offdiagonals_vanish(self):
        g = halfspace_scattering_quadrature(
            PlanarGeometry.vertical(0.4, 0.6), 1.0,
            HalfSpaceMedium.dielectric(EPS_MEDIUM))
        assert g.gxz == 0.0 and g.gzx == 0.0

    def test_antisymmetric_offdiagonal_and_swap(self):
        med = HalfSpaceMedium.dielectric(EPS_MEDIUM)
        geom = PlanarGeometry(0.1, 0.5, 0.8, 0.9)
        g = halfspace_scattering_quadrature(geom, 1.2, med)
        assert g.gxz == -g.gzx
        gs = halfspace_scattering_quadrature(geom.swapped(), 1.2, med)
        assert gs.gxx == pytest.approx(g.gxx, rel=1e-8)
        assert gs.gyy == pytest.approx(g.gyy, rel=1e-8)
        assert gs.gzz == pytest.approx(g.gzz, rel=1e-8)
        assert gs.gxz == pytest.approx(g.gzx, rel=1e-8)

    def test_perfect_image_closed_form_vs_quadrature(self):
        # the image construction is the exact value of the q-integrals
        med = HalfSpaceMedium.perfect_conductor()
        for geom, u in [(PlanarGeometry.parallel(0.7, 0.4), 0.8),
                        (PlanarGeometry.vertical(0.3, 0.9), 1.5),
                        (PlanarGeometry(0.1, 0.5, 0.9, 0.8), 2.0)]:
            img = perfect_image_scattering(geom, u, med)
            quad = halfspace_scattering_quadrature(geom, u, med,
                                                   spec=QuadSpec(rel_tol=1e-10))
            for name in ("gxx", "gyy", "gxz", "gzx", "gzz"):
                assert getattr(quad, name) == pytest.approx(
                    getattr(img, name), rel=1e-8, abs=1e-14)

    def test_dispatch_uses_image_for_perfect(self):
        med = HalfSpaceMedium.perfect_permeable()
        geom = PlanarGeometry.parallel(0.7, 0.4)
        assert halfspace_scattering(geom, 1.0, med) == \
            perfect_image_scattering(geom, 1.0, med)

    def test_retarded_vertical_conductor(self):
        # X = 0, u Z+ = 20: quadrature matches the image closed form to 1%
        geom = PlanarGeometry.vertical(5.0, 10.0)  # Z+ = 20
        med = HalfSpaceMedium.perfect_conductor()
        g = halfspace_scattering_quadrature(geom, 1.0, med)
        ref = perfect_image_scattering(geom, 1.0, med)
        assert g.gxx == pytest.approx(ref.gxx, rel=0.01)
        assert g.gzz == pytest.approx(ref.gzz, rel=0.01)

    def test_large_eps_approaches_perfect_nonretarded(self):
        # eps = 1e6 behaves as a perfect conductor in the nonretarded regime
        big = HalfSpaceMedium.dielectric(
            LorentzMedium(omegaP=1e3, omegaT=1.0, gamma=0.0))
        perf = HalfSpaceMedium.perfect_conductor()
        u = 1e-3
        for geom in (PlanarGeometry.parallel(0.02, 0.01),
                     PlanarGeometry.vertical(0.01, 0.02)):
            gb = halfspace_scattering_quadrature(geom, u, big)
            gp = halfspace_scattering(geom, u, perf)
            for name in ("gxx", "gyy", "gzz"):
                assert getattr(gb, name) == pytest.approx(
                    getattr(gp, name), rel=1e-3)

    def test_decay_with_height(self):
        # components decay to zero as Z+ grows (e^{-b Z+} damping); the
        # decay need not be monotone since components can change sign
        med = HalfSpaceMedium.dielectric(EPS_MEDIUM)
        vals = []
        for z in (0.5, 2.0, 4.0, 8.0):
            g = halfspace_scattering_quadrature(
                PlanarGeometry.parallel(1.0, z), 1.0, med)
            vals.append(max(abs(g.gxx), abs(g.gyy), abs(g.gzz)))
        assert vals[-1] < 1e-6 * vals[0]

    def test_phi_grid_rederivation(self):
        """Assemble the scattering tensor from s/p polarization-vector outer
        products on a phi-grid and compare with the Bessel-integral route.

        The angular-spectrum form is
        G1 = (1/8 pi^2) int dq (q/b) e^{-b Z+}
             int dphi e^{i q X cos phi} [r_s s s + r_p p+ p-]
        with s = (-sin phi, cos phi, 0),
        p+- = (+-b cos phi, +-b sin phi, i q)/k; the phi-integral produces
        exactly the J0/J1/J2 weights of the implemented components.
        """
        geom = PlanarGeometry(0.1, 0.6, 0.9, 0.8)
        u = 1.3
        med = HalfSpaceMedium.dielectric(
            LorentzMedium(omegaP=2.0, omegaT=1.0, gamma=0.05))
        phi = np.linspace(0.0, 2.0 * np.pi, 721)[:-1]
        w = 2.0 * np.pi / phi.size
        s_hat = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)])
        spec = QuadSpec(rel_tol=1e-9)
        breaks = q_breakpoints(geom, u)

        def component(i, j):
            def f(qs):
                out = np.empty_like(qs)
                for n, q in enumerate(qs):
                    rs, rp = reflection(q, u, med)
                    b = np.sqrt(u**2 + q**2)
                    pp = np.stack([b * np.cos(phi), b * np.sin(phi),
                                   1j * q * np.ones_like(phi)]) / u
                    pm = np.stack([-b * np.cos(phi), -b * np.sin(phi),
                                   1j * q * np.ones_like(phi)]) / u
                    phase = np.exp(1j * q * geom.X * np.cos(phi))
                    m = (rs * np.einsum("p,p,p->", phase, s_hat[i], s_hat[j])
                         + rp * np.einsum("p,p,p->", phase, pp[i], pm[j]))
                    out[n] = (q / b) * np.exp(-b * geom.Z_plus) * m.real * w
                return out / (8.0 * np.pi**2)
            return integrate_semiinf(f, spec, breakpoints=breaks).value

        g = halfspace_scattering_quadrature(geom, u, med, spec=spec)
        assert component(0, 0) == pytest.approx(g.gxx, rel=1e-6)
        assert component(1, 1) == pytest.approx(g.gyy, rel=1e-6)
        assert component(0, 2) == pytest.approx(g.gxz, rel=1e-6)
        assert component(2, 0) == pytest.approx(g.gzx, rel=1e-6)
        assert component(2, 2) == pytest.approx(g.gzz, rel=1e-6)


class TestNonretardedScattering:
    def test_perfect_conductor_vertical(self):
        # X = 0: gxx reduces to -r_p/(u^2 4 pi Z+^3)
        geom = PlanarGeometry.vertical(0.01, 0.015)
        u = 0.5
        g = nonretarded_scattering(geom, u, HalfSpaceMedium.perfect_conductor())
        zp = geom.Z_plus
        assert g.gxx == pytest.approx(-1.0 / (u**2 * 4.0 * np.pi * zp**3),
                                      rel=1e-12)

    def test_electric_component_ratio(self):
        geom = PlanarGeometry(0.0, 0.01, 0.02, 0.015)
        g = nonretarded_scattering(geom, 0.5,
                                   HalfSpaceMedium.dielectric(EPS_MEDIUM))
        x, zp = geom.X, geom.Z_plus
        assert g.gzz / g.gxx == pytest.approx(
            (x**2 - 2.0 * zp**2) / (2.0 * x**2 - zp**2), rel=1e-12)

    def test_magnetic_gzz(self):
        geom = PlanarGeometry(0.0, 0.01, 0.02, 0.015)
        u = 0.5
        med = HalfSpaceMedium.magnetic(MU_MEDIUM)
        g = nonretarded_scattering(geom, u, med)
        mu = med.mu_iu(u)
        assert g.gzz == pytest.approx((mu - 1.0) / (16.0 * np.pi * geom.l_plus),
                                      rel=1e-12)

    def test_matches_quadrature_in_regime(self):
        # u l+ << 1: closed forms approximate the exact integrals
        geom = PlanarGeometry(0.0, 0.01, 0.02, 0.015)
        u = 0.1  # u*l_plus ~ 3e-3, well inside the nonretarded regime
        for med in (HalfSpaceMedium.dielectric(EPS_MEDIUM),
                    HalfSpaceMedium.magnetic(MU_MEDIUM),
                    HalfSpaceMedium.perfect_conductor()):
            approx = nonretarded_scattering(geom, u, med)
            exact = halfspace_scattering_quadrature(geom, u, med)
            for name in ("gxx", "gyy", "gzz"):
                assert getattr(approx, name) == pytest.approx(
                    getattr(exact, name), rel=0.05)
