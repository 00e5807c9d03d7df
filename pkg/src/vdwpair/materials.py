"""Atom and medium linear response on the positive imaginary frequency axis.

Reduced units throughout: hbar = c = eps0 = mu0 = 1, frequencies in units
of a reference resonance frequency, response strengths (polarizability or
magnetizability) carrying dimension length^3.  On the imaginary axis all
response functions are real, positive and strictly decreasing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ResonanceAtom",
    "LorentzMedium",
    "VACUUM",
    "response_iu",
    "permittivity_iu",
    "permeability_iu",
]

_ATOM_KINDS = ("electric", "magnetic")
_MEDIUM_KINDS = ("electric", "magnetic", "vacuum")


@dataclass(frozen=True)
class ResonanceAtom:
    """Single-resonance atom: response alpha0 * w10^2 / (w10^2 + u^2) at iu.

    ``kind`` selects whether the response acts as a polarizability or a
    magnetizability; the functional form is the same single-resonance model
    in both cases.
    """

    omega10: float = 1.0
    alpha0: float = 1.0
    kind: str = "electric"

    def __post_init__(self):
        if self.omega10 <= 0:
            raise ValueError("omega10 must be positive")
        if self.alpha0 <= 0:
            raise ValueError("alpha0 must be positive")
        if self.kind not in _ATOM_KINDS:
            raise ValueError(f"kind must be one of {_ATOM_KINDS}")


@dataclass(frozen=True)
class LorentzMedium:
    """Lorentz oscillator medium: 1 + wP^2/(wT^2 + u^2 + u*gamma) at iu."""

    omegaP: float = 0.0
    omegaT: float = 1.0
    gamma: float = 0.0
    kind: str = "electric"

    def __post_init__(self):
        if self.omegaT <= 0:
            raise ValueError("omegaT must be positive")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.omegaP < 0:
            raise ValueError("omegaP must be >= 0")
        if self.kind not in _MEDIUM_KINDS:
            raise ValueError(f"kind must be one of {_MEDIUM_KINDS}")
        if self.kind == "vacuum" and self.omegaP != 0.0:
            raise ValueError("vacuum medium requires omegaP = 0")


VACUUM = LorentzMedium(omegaP=0.0, omegaT=1.0, gamma=0.0, kind="vacuum")


def _check_u(u):
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise ValueError("imaginary-axis frequency u must be >= 0")
    return u


def response_iu(atom: ResonanceAtom, u):
    """Atomic polarizability/magnetizability at omega = iu (real, > 0)."""
    u = _check_u(u)
    out = atom.alpha0 * atom.omega10**2 / (atom.omega10**2 + u**2)
    return float(out) if out.ndim == 0 else out


def _susceptibility_iu(m: LorentzMedium, u):
    u = _check_u(u)
    out = 1.0 + m.omegaP**2 / (m.omegaT**2 + u**2 + u * m.gamma)
    return float(out) if out.ndim == 0 else out


def permittivity_iu(m: LorentzMedium, u):
    """Relative permittivity at omega = iu; real and >= 1."""
    return _susceptibility_iu(m, u)


def permeability_iu(m: LorentzMedium, u):
    """Relative permeability at omega = iu; identical Lorentz form."""
    return _susceptibility_iu(m, u)
