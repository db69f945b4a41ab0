"""Exact truncated power series under the t-deformed convolution.

Submodules cover cumulants, limit diagnostics, the classical case t = -1
and semigroup generators."""

from .errors import (DomainError, MalformedInputError, NonConvergenceError, ParameterError,
                     PreconditionError, TDeformError, TruncationMismatchError)
from .series import (Series, dilate, falling, formal_exp, formal_log, make_series, mul,
                     pochhammer, rising, series_from_json, series_to_json, to_fraction, z_dlog)
from .tconv import (TNorm, TParam, as_tparam, e_transform, finite_free_conv, iota, iota_inv,
                    norm_t_r, phi_t, phi_t_inv, plain_norm, tconv)
from .cumulants import (CumulantVector, c_transform, classical_cumulants, from_cumulants,
                        from_power_sums, power_sums)
from .special import (HypergeometricSpec, binomial_series, compare_closure, hermite_semigroup,
                      hermite_series, hypergeometric_series, iota_d, iota_d_inv, laguerre_series)
from .limits import ConvergenceRow, clt_table, conv_power, lln_table
from .classical import (DiscreteLaw, MixtureSpec, bdlp_cumulants, classical_conv,
                        mixture_moments, moments_discrete)
from .generators import (LevyTriplet, SeriesSemigroup, eta_closed_form, eta_estimate, evolve,
                         finite_free_generator_apply, forward_exact_residual, forward_residual,
                         generator_apply)

__version__ = "0.1.0"
