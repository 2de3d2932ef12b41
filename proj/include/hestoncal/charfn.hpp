#pragma once

#include <complex>

namespace hestoncal {

using cplx = std::complex<double>;

/// Geometric Brownian motion under the risk-neutral measure.
struct BsmParams {
    double s0 = 0.0;    ///< spot
    double sigma = 0.0; ///< annualized volatility
    double r = 0.0;     ///< continuously compounded rate
    double t = 0.0;     ///< years to maturity

    /// Throws InvalidArgument unless s0 > 0, t > 0, sigma >= 0.
    void validate() const;
};

/// Risk-neutral Heston parameters. `v0` is the initial *variance*, not a
/// volatility; it enters the exponent linearly.
struct HestonParams {
    double v0 = 0.0;
    double vbar = 0.0;
    double a = 0.0;   ///< mean-reversion speed
    double eta = 0.0; ///< volatility of variance
    double rho = 0.0;

    /// 2 a vbar - eta^2; positive iff the Feller condition holds.
    double feller_slack() const noexcept { return 2.0 * a * vbar - eta * eta; }

    /// Throws DegenerateParams unless v0, vbar, a, eta > 0 and |rho| <= 1.
    void validate() const;
};

/// Characteristic function of ln S_t under Black-Scholes, at complex w.
cplx cf_bsm(const BsmParams& p, cplx w);

/// Characteristic function of ln S_t under Heston, at complex w.
///
/// Uses the minus-root form of the exponent (r_-, g = r_-/r_+), which stays
/// continuous in w and t with the principal square root. The intermediate
/// quantities are rearranged algebraically so that tiny eta, a vanishing r_+
/// and h -> 0 do not produce cancellation or 0/0; the value and branch are
/// unchanged.
///
/// Throws DegenerateParams if eta <= 0, InvalidArgument if s0 or t is not
/// positive, and NumericRange if the result would overflow.
cplx cf_heston(const HestonParams& p, double s0, double r, double t, cplx w);

/// exp(C(t,w) vbar + D(t,w) v0): the Heston cf without the forward factor
/// exp(i w ln(s0 e^{rt})). Same error contract as cf_heston.
cplx cf_heston_gatheral_exponent(const HestonParams& p, double t, cplx w);

namespace detail {
/// C(t,w) vbar + D(t,w) v0.
cplx heston_log_exponent(const HestonParams& p, double t, cplx w);
} // namespace detail

} // namespace hestoncal
