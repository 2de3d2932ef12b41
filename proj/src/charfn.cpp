#include "hestoncal/charfn.hpp"

#include "hestoncal/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hestoncal {

namespace {

const double kMaxLogValue = std::log(std::numeric_limits<double>::max());

// log(1 + z), accurate for small |z|, principal branch.
cplx log1p(cplx z) {
    if (std::abs(z) < 0.5) {
        const double x = z.real();
        const double y = z.imag();
        return {0.5 * std::log1p(x * (2.0 + x) + y * y), std::atan2(y, 1.0 + x)};
    }
    return std::log(1.0 + z);
}

// exp(z) - 1, accurate for small |z|.
cplx expm1(cplx z) {
    const double x = z.real();
    const double y = z.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

cplx checked_exp(cplx z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorKind::NumericRange, std::string(who) + ": non-finite exponent");
    }
    if (z.real() > kMaxLogValue) {
        throw Error(ErrorKind::NumericRange,
                    std::string(who) + ": exponent real part " + std::to_string(z.real()) +
                        " overflows double");
    }
    return std::exp(z);
}

} // namespace

void BsmParams::validate() const {
    if (!(s0 > 0.0) || !(t > 0.0) || !(sigma >= 0.0) || !std::isfinite(r) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::InvalidArgument, "BSM parameters require s0 > 0, t > 0, sigma >= 0");
    }
}

void HestonParams::validate() const {
    if (!(v0 > 0.0) || !(vbar > 0.0) || !(a > 0.0) || !(eta > 0.0) || !(rho >= -1.0 && rho <= 1.0) ||
        !std::isfinite(v0) || !std::isfinite(vbar) || !std::isfinite(a) || !std::isfinite(eta)) {
        throw Error(ErrorKind::DegenerateParams,
                    "Heston parameters require v0, vbar, a, eta > 0 and -1 <= rho <= 1 (got v0=" +
                        std::to_string(v0) + " vbar=" + std::to_string(vbar) + " a=" + std::to_string(a) +
                        " eta=" + std::to_string(eta) + " rho=" + std::to_string(rho) + ")");
    }
}

cplx cf_bsm(const BsmParams& p, cplx w) {
    const double mean = std::log(p.s0) + (p.r - 0.5 * p.sigma * p.sigma) * p.t;
    const double var = p.sigma * p.sigma * p.t;
    const cplx i(0.0, 1.0);
    return checked_exp(i * w * mean - 0.5 * w * w * var, "cf_bsm");
}

namespace detail {

cplx heston_log_exponent(const HestonParams& p, double t, cplx w) {
    if (!(p.eta > 0.0)) {
        throw Error(ErrorKind::DegenerateParams, "cf_heston: eta must be positive");
    }
    if (!(t > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "cf_heston: t must be positive");
    }
    const cplx i(0.0, 1.0);
    const double eta2 = p.eta * p.eta;

    const cplx alpha = -0.5 * w * w - 0.5 * i * w;
    const cplx beta = p.a - p.rho * p.eta * i * w;
    const cplx h = std::sqrt(beta * beta - 2.0 * eta2 * alpha); // 4 alpha gamma = 2 alpha eta^2

    // plus = beta + h = eta^2 r_+, minus = beta - h = eta^2 r_-. Their product is
    // 2 alpha eta^2, which recovers the smaller one without cancellation.
    cplx plus = beta + h;
    cplx minus = beta - h;
    if (std::abs(plus) >= std::abs(minus)) {
        if (plus == 0.0) {
            return 0.0;
        }
        minus = 2.0 * alpha * eta2 / plus;
    } else {
        plus = 2.0 * alpha * eta2 / minus;
    }
    const cplx rminus = minus / eta2;

    // q = (1 - e^{-ht}) / h, with its h -> 0 limit.
    const cplx ht = h * t;
    const cplx q = std::abs(ht) < 1e-8 ? t * (1.0 - 0.5 * ht) : -expm1(-ht) / h;

    // 1 - g e^{-ht} = (2h + minus (1 - e^{-ht})) / plus and 1 - g = 2h / plus.
    const cplx d = rminus * q * plus / (2.0 + minus * q);
    const cplx c = p.a * (rminus * t - (2.0 / eta2) * log1p(0.5 * minus * q));
    return c * p.vbar + d * p.v0;
}

} // namespace detail

cplx cf_heston(const HestonParams& p, double s0, double r, double t, cplx w) {
    if (!(s0 > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "cf_heston: s0 must be positive");
    }
    const cplx i(0.0, 1.0);
    const double log_forward = std::log(s0) + r * t;
    return checked_exp(detail::heston_log_exponent(p, t, w) + i * w * log_forward, "cf_heston");
}

cplx cf_heston_gatheral_exponent(const HestonParams& p, double t, cplx w) {
    return checked_exp(detail::heston_log_exponent(p, t, w), "cf_heston_gatheral_exponent");
}

} // namespace hestoncal
