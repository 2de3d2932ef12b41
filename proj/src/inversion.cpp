#include "hestoncal/inversion.hpp"

#include "hestoncal/error.hpp"
#include "hestoncal/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hestoncal {

namespace {

// Re[z / (i w)] = Im(z) / w for real w.
template <class Shifted>
double integrate_gil_pelaez(const Shifted& shifted_cf, double x, const QuadratureConfig& q) {
    q.validate();
    auto integrand = [&](double w) {
        const cplx z = std::polar(1.0, -w * x) * shifted_cf(w);
        return z.imag() / w;
    };
    // Panels doubling in width from w = 1: a single panel over a long range can
    // sample only the region where the cf has already vanished and report a
    // confident zero.
    std::vector<double> breaks{q.lower_limit};
    for (double b = 1.0; b < q.upper_limit; b *= 2.0) {
        if (b > q.lower_limit && breaks.size() < q.max_subdivisions) {
            breaks.push_back(b);
        }
    }
    breaks.push_back(q.upper_limit);
    const double body = integrate_adaptive(integrand, breaks, q.abs_tol, q.rel_tol, q.max_subdivisions).value;
    // The integrand is even to second order at 0, so the skipped head [0, w_min]
    // is w_min * f(w_min) up to O(w_min^3).
    return body + q.lower_limit * integrand(q.lower_limit);
}

// The raw value may miss [0, 1] by as much as the accuracy the quadrature
// was asked for; anything beyond that is an error rather than a clamp.
double to_probability(double raw, double integral, const QuadratureConfig& q, const char* who) {
    const double slack = std::max(q.abs_tol, q.rel_tol * std::abs(integral)) / std::numbers::pi;
    if (raw < -slack || raw > 1.0 + slack || !std::isfinite(raw)) {
        throw Error(ErrorKind::OutOfRange,
                    std::string(who) + ": raw probability " + std::to_string(raw) + " outside [0, 1]");
    }
    return std::clamp(raw, 0.0, 1.0);
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(upper_limit > 0.0) || !(lower_limit > 0.0) || !(lower_limit < upper_limit) || !(abs_tol > 0.0) ||
        !(rel_tol > 0.0) || max_subdivisions < 1) {
        throw Error(ErrorKind::InvalidArgument, "invalid quadrature configuration");
    }
}

double inversion_integral(const CharFn& cf, double x, const QuadratureConfig& q) {
    return integrate_gil_pelaez([&](double w) { return cf(cplx(w, 0.0)); }, x, q);
}

double pi2(const CharFn& cf, double log_strike, const QuadratureConfig& q) {
    const double integral = inversion_integral(cf, log_strike, q);
    return to_probability(0.5 + integral / std::numbers::pi, integral, q, "pi2");
}

double pi1(const CharFn& cf, double log_strike, const QuadratureConfig& q) {
    const cplx forward = cf(cplx(0.0, -1.0));
    if (!(std::abs(forward) >= 1e-300)) {
        throw Error(ErrorKind::DegenerateCf, "pi1: |cf(-i)| below 1e-300");
    }
    const double raw = integrate_gil_pelaez([&](double w) { return cf(cplx(w, -1.0)) / forward; },
                                            log_strike, q);
    return to_probability(0.5 + raw / std::numbers::pi, raw, q, "pi1");
}

double cdf_from_cf(const CharFn& cf, double x, const QuadratureConfig& q) {
    const double integral = inversion_integral(cf, x, q);
    return to_probability(0.5 - integral / std::numbers::pi, integral, q, "cdf_from_cf");
}

} // namespace hestoncal
