#pragma once

#include "hestoncal/charfn.hpp"

#include <cstddef>
#include <functional>

namespace hestoncal {

/// Settings for the semi-infinite inversion integrals, truncated at
/// upper_limit. Quadrature starts at lower_limit to skip the removable
/// singularity of the 1/(iw) factor; the head [0, lower_limit] is added back
/// from the integrand's limit.
struct QuadratureConfig {
    double upper_limit = 100.0;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_subdivisions = 200;
    double lower_limit = 1e-10;

    /// Throws InvalidArgument on non-positive limits/tolerances.
    void validate() const;
};

/// A characteristic function w -> E[exp(i w X)], evaluatable at complex w.
/// Must be safe to call concurrently if the caller integrates in parallel.
using CharFn = std::function<cplx(cplx)>;

/// P(X > log_strike) for X with characteristic function cf. A raw value
/// outside [0, 1] by no more than the requested quadrature accuracy
/// (max(abs_tol, rel_tol |I|) / pi) is clamped; beyond that it throws
/// OutOfRange.
double pi2(const CharFn& cf, double log_strike, const QuadratureConfig& q = {});

/// Exercise probability under the share measure, whose cf is
/// cf(w - i) / cf(-i). Throws DegenerateCf if |cf(-i)| < 1e-300.
double pi1(const CharFn& cf, double log_strike, const QuadratureConfig& q = {});

/// P(X <= x), the cumulative distribution recovered from cf.
double cdf_from_cf(const CharFn& cf, double x, const QuadratureConfig& q = {});

/// The shared integral  int_0^U Re[e^{-iwx} cf(w) / (iw)] dw. Unclamped;
/// pi2 = 1/2 + I/pi and cdf = 1/2 - I/pi.
double inversion_integral(const CharFn& cf, double x, const QuadratureConfig& q = {});

} // namespace hestoncal
