"""Harmonic analysis on polygon-symmetric graphs.

A graph of type k and order r is glued from k-gons with r polygons through
every vertex.  This package implements the horocyclic Radon/Abel transform
and its dual with exact inverses, spherical and boundary Fourier transforms
with Plancherel and inversion formulas, convolution-smoothing inequalities,
and closed-form solutions of the shifted wave equation, all backed by exact
arithmetic in the quadratic ring generated by sqrt((r-1)(k-1)).
"""

from .algebraic import AlgebraicValue, RingMismatchError, parse_value, q_half_power, sqrt_q
from .boundary import (
    BoundaryRay,
    DepthError,
    busemann,
    cylinder_measure,
    horocycle_section,
    poisson_power,
    poisson_power_exact,
    sphere_horocycle_count,
    translate_ray,
)
from .spectral import (
    KSReport,
    QuadResult,
    QuadratureError,
    VertexFun,
    c_func,
    convolve,
    convolve_radial,
    fourier_grid,
    fourier_z,
    fourier_z_inv,
    gamma_atom,
    gamma_of,
    gauss_legendre_adaptive,
    helgason_norm_sq,
    helgason_transform,
    helgason_via_horocycles,
    invert_helgason,
    invert_spherical,
    kunze_stein_check,
    phi_oracle,
    plancherel_density,
    plancherel_norm,
    plancherel_segment,
    radialize,
    spherical_means_at,
    spherical_phi,
    spherical_transform,
    spherical_transform_atom,
)
from .transforms import (
    EvenSeq,
    RadialSeq,
    abel,
    abel_inv,
    abel_inv_rearranged,
    abel_via_radon,
    dual_abel,
    dual_abel_inv,
    dual_abel_inv_recurrence,
    dual_abel_via_counts,
    even_norm,
    radon,
    radon_via_counts,
    schwartz_norm,
)
from .wave import (
    CauchyData,
    WaveField,
    asgeirsson_means,
    lap_full,
    lap_radial,
    lap_z,
    wave_closed_at,
    wave_direct,
    wave_via_dual_abel_at,
)
from .words import (
    GraphParams,
    ReducedWord,
    SpectralDomainError,
    ball,
    distance,
    parse_word,
    sphere,
)

__version__ = "0.1.0"
