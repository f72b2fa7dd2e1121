"""lerchkit: configurable-precision evaluation of the Lerch transcendent
Phi(z, s, u), its s-derivative at s = 0, classical constants via infinite
products, and a verification registry of unit-square double-integral
identities."""

from .core import (Approx, DomainError, LerchkitError, NonConvergenceError,
                   PoleError, PrecisionOverflowError, UnknownKeyError)
from .lerch import (LerchPoint, MethodTag, bernoulli_poly, euler_poly,
                    phi_auto, phi_closed_nonpos_int_s, phi_hasse,
                    phi_integral, phi_series_direct, phi_series_negz,
                    phi_split, point)
from .deriv import (dphi_ds_fd, dphi_ds_hasse_combo, dphi_ds_negz,
                    dphi_ds_registry)
from .special import (PRODUCTS, ProductSpec, beta_dirichlet, chi,
                      digamma_series, euler_beta_series, harmonic, polylog,
                      product_eval, product_partials, product_target,
                      thm53_product, zeta, zeta_star)
from .identities import (IdentityCase, filter_cases, get_case,
                         identity_registry, verify, verify_many)
from . import oracles, quad

__version__ = "1.0.0"

__all__ = [
    "Approx", "DomainError", "LerchkitError", "NonConvergenceError",
    "PoleError", "PrecisionOverflowError", "UnknownKeyError",
    "LerchPoint", "MethodTag", "point",
    "phi_auto", "phi_series_direct", "phi_series_negz", "phi_hasse",
    "phi_integral", "phi_split", "phi_closed_nonpos_int_s",
    "bernoulli_poly", "euler_poly",
    "dphi_ds_negz", "dphi_ds_hasse_combo", "dphi_ds_registry", "dphi_ds_fd",
    "zeta", "zeta_star", "beta_dirichlet", "chi", "polylog",
    "digamma_series", "euler_beta_series", "harmonic",
    "ProductSpec", "PRODUCTS", "product_eval", "product_partials",
    "product_target", "thm53_product",
    "IdentityCase", "identity_registry", "get_case", "filter_cases",
    "verify", "verify_many",
    "oracles", "quad",
    "__version__",
]
