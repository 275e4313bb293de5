"""Closed-form predictions for the bench observables.

For phase-incoherent constant-modulus sources of equal mean intensity, the
zero-delay correlations depend only on the dynamical phase ``phi_d`` and
the solid angle ``omega`` enclosed on the Poincaré sphere by the polariser
loop R -> 4 -> L -> 3:

    g2_cross(0) = 1 - cos(phi_d + omega/2) / 2       (fringe, 0.5 .. 1.5)
    g2_self(0)  = 1 + cos(phi_d) / 2                 (no omega: the single-
                                                      detector loop R-4-L-4
                                                      encloses nothing)
    <I_i>       = (<I1> + <I2>) / 4

``term_audit`` expands the 16-term product behind the cross correlation and
evaluates every coefficient numerically from 2x2 projector matrix elements:
10 terms average to zero, four direct terms contribute 1/4 each, and the
two geometric terms carry the phase +-(phi_d + omega/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bench import EPSILON_3, EPSILON_4
from .poincare import _wrap_pm_two_pi, linear_state, projector_of


@dataclass(frozen=True)
class Prediction:
    """Bundle of the closed-form zero-delay observables for one setup."""

    g2_cross_zero_tau: float
    g2_self_zero_tau: float
    intensity_i: float
    omega: float
    phi_g: float

    def __post_init__(self):
        if not (0.5 <= self.g2_cross_zero_tau <= 1.5):
            raise ValueError("g2_cross_zero_tau out of [0.5, 1.5]")
        if not (0.5 <= self.g2_self_zero_tau <= 1.5):
            raise ValueError("g2_self_zero_tau out of [0.5, 1.5]")
        if abs(self.phi_g - self.omega / 2.0) > 1e-12:
            raise ValueError("phi_g must equal omega/2")


def solid_angle_of_setup(phi3: float, phi4: float) -> float:
    """Solid angle 4*(phi4 - phi3) of the polariser lune, in (-2*pi, 2*pi].

    Matches ``poincare.polygon_solid_angle`` of the R-4-L-3 loop exactly
    (both are reduced mod 4*pi to the same interval).
    """
    if not (math.isfinite(phi3) and math.isfinite(phi4)):
        raise ValueError("angles must be finite")
    return _wrap_pm_two_pi(4.0 * (phi4 - phi3))


def predict_g2_cross(phi_d: float, omega: float) -> float:
    """Zero-delay cross correlation 1 - cos(phi_d + omega/2)/2."""
    if not (math.isfinite(phi_d) and math.isfinite(omega)):
        raise ValueError("arguments must be finite")
    return 1.0 - 0.5 * math.cos(phi_d + 0.5 * omega)


def predict_g2_self(phi_d: float) -> float:
    """Zero-delay self correlation 1 + cos(phi_d)/2; no geometric term."""
    if not math.isfinite(phi_d):
        raise ValueError("phi_d must be finite")
    return 1.0 + 0.5 * math.cos(phi_d)


def predict_intensity(i1_mean: float, i2_mean: float) -> float:
    """Mean detector intensity (<I1> + <I2>)/4, same at both detectors."""
    if not (math.isfinite(i1_mean) and math.isfinite(i2_mean)):
        raise ValueError("intensities must be finite")
    if i1_mean < 0.0 or i2_mean < 0.0:
        raise ValueError("intensities must be nonnegative")
    return 0.25 * (i1_mean + i2_mean)


def predict_setup(
    phi3: float,
    phi4: float,
    phi_d: float = 0.0,
    i1_mean: float = 1.0,
    i2_mean: float = 1.0,
) -> Prediction:
    """All closed-form observables for one polariser/phase setting."""
    omega = solid_angle_of_setup(phi3, phi4)
    return Prediction(
        g2_cross_zero_tau=predict_g2_cross(phi_d, omega),
        g2_self_zero_tau=predict_g2_self(phi_d),
        intensity_i=predict_intensity(i1_mean, i2_mean),
        omega=omega,
        phi_g=omega / 2.0,
    )


@dataclass(frozen=True)
class AuditTerm:
    """One of the 16 products in the cross-correlation expansion.

    ``d3`` and ``d4`` give the (conjugated, unconjugated) source indices of
    the detector-3 and detector-4 intensity factors.  ``value`` is the term's
    time-averaged coefficient for phase-incoherent unit-intensity sources;
    ``sign`` collects the beam-splitter epsilon factors, and ``magnitude``/
    ``phase`` decompose value = sign * magnitude * e^{i phase}.
    """

    label: str
    d3: tuple[int, int]
    d4: tuple[int, int]
    kind: str  # "direct" | "geometric" | "vanishing"
    sign: int
    magnitude: float
    phase: float
    value: complex


def term_audit(phi3: float, phi4: float, phi_d: float = 0.0) -> list[AuditTerm]:
    """Expand <I3 I4> into its 16 terms and evaluate each coefficient.

    Coefficients are normalized by <I3><I4>, so the survivor sum equals the
    predicted zero-delay cross correlation.  Sources are taken mutually
    phase-incoherent with unit intensity: a term survives time averaging
    only when each source field appears in a conjugate pair.  The dynamical
    phase is booked on the detector-3 arm-2 propagation factor so that the
    closed two-detector loop carries e^{i phi_d}.  Each surviving
    coefficient is a product of two projector matrix elements in the
    helicity basis (equivalently a trace over a projector chain, e.g.
    P_R P3 P_L P4 for the geometric pair).
    """
    if not (math.isfinite(phi3) and math.isfinite(phi4) and math.isfinite(phi_d)):
        raise ValueError("angles must be finite")
    p3 = projector_of(linear_state(phi3)).matrix
    p4 = projector_of(linear_state(phi4)).matrix
    # Per-source coefficients multiplying the projected fields: index 1 is
    # the R-polarized source (u = 1), index 2 the L-polarized source with
    # its epsilon sign and arm-2 phase factor.
    c3 = {1: 1.0 + 0.0j, 2: EPSILON_3 * complex(math.cos(phi_d), math.sin(phi_d))}
    c4 = {1: 1.0 + 0.0j, 2: EPSILON_4 + 0.0j}
    terms = []
    for j in (1, 2):
        for k in (1, 2):
            for l in (1, 2):
                for m in (1, 2):
                    label = f"D3:E{j}*E{k} D4:E{l}*E{m}"
                    survives = (k == 1) + (m == 1) == (j == 1) + (l == 1)
                    sign = int(EPSILON_3 ** ((j == 2) + (k == 2)) * EPSILON_4 ** ((l == 2) + (m == 2)))
                    if not survives:
                        terms.append(
                            AuditTerm(label, (j, k), (l, m), "vanishing", sign, 0.0, 0.0, 0j)
                        )
                        continue
                    value = (
                        c3[j].conjugate() * c3[k] * c4[l].conjugate() * c4[m]
                        * p3[j - 1, k - 1] * p4[l - 1, m - 1]
                    )
                    if j == k and l == m:
                        kind = "direct"
                    else:
                        kind = "geometric"
                    rotated = value * sign
                    terms.append(
                        AuditTerm(
                            label, (j, k), (l, m), kind, sign,
                            abs(value), math.atan2(rotated.imag, rotated.real), value,
                        )
                    )
    return terms


def audit_survivor_sum(terms: list[AuditTerm]) -> float:
    """Sum of the surviving coefficients (imaginary parts cancel pairwise)."""
    total = sum(t.value for t in terms)
    return total.real
