"""Tangent vectors to universal Teichmuller space in two coordinate systems.

A Beltrami direction mu on the unit disc gives both the Fourier coefficients
of a Zygmund-class vector field on the circle and the first variations of
the power-series coefficients of a normalized schlicht function; this
package computes both and checks the identities linking them.
"""

__version__ = "0.1.0"

from .beltrami import (  # noqa: E402
    Combination,
    ExampleFamily,
    Harmonic,
    Monomial,
    QuadraticDifferential,
    Sampled,
    Zero,
    evaluate_mu,
    reflect_mu,
)
from .quadrature import PolarGrid, integrate_disc, monomial_disc_integral  # noqa: E402
from .series import FourierField, SchlichtVariation, evaluate_field, fourier_from_samples, sl2_normalize  # noqa: E402
from .variation import fourier_variation, schlicht_variation, verify_theorem1  # noqa: E402
