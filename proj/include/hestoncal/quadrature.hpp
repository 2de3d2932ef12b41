#pragma once

#include "hestoncal/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace hestoncal {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    std::size_t subdivisions = 0;
};

namespace detail {

// 21-point Kronrod rule with its embedded 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980478793, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod21(const F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, 21> fx{};
    fx[20] = f(center);
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        fx[2 * j] = f(center - dx);
        fx[2 * j + 1] = f(center + dx);
    }

    double kronrod = kKronrodWeights[10] * fx[20];
    double gauss = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
        const double pair = fx[2 * j] + fx[2 * j + 1];
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[10] * std::abs(fx[20] - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        asc += kKronrodWeights[j] * (std::abs(fx[2 * j] - mean) + std::abs(fx[2 * j + 1] - mean));
    }

    const double value = kronrod * half;
    asc *= std::abs(half);
    double error = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && error != 0.0) {
        error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
    }
    return {lo, hi, value, error};
}

} // namespace detail

/// Globally adaptive 21-point Gauss-Kronrod integration of f over
/// [breaks.front(), breaks.back()], starting from one panel per consecutive
/// pair of (increasing) breakpoints.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate meets max(abs_tol, rel_tol |I|). Throws QuadratureFailure if that
/// cannot happen within max_subdivisions panels, or if f produces a non-finite
/// value.
template <class F>
QuadratureResult integrate_adaptive(const F& f, const std::vector<double>& breaks, double abs_tol, double rel_tol,
                                    std::size_t max_subdivisions) {
    std::priority_queue<detail::Panel> panels;
    QuadratureResult out;
    if (breaks.size() < 2 || !std::is_sorted(breaks.begin(), breaks.end()) || breaks.size() - 1 > max_subdivisions) {
        throw Error(ErrorKind::InvalidArgument, "integrate_adaptive: bad breakpoints");
    }

    auto add = [&](const detail::Panel& p) {
        out.evaluations += 21;
        if (!std::isfinite(p.value) || !std::isfinite(p.error)) {
            throw Error(ErrorKind::QuadratureFailure,
                        "non-finite integrand on [" + std::to_string(p.lo) + ", " + std::to_string(p.hi) + "]");
        }
        out.value += p.value;
        out.abs_error += p.error;
        panels.push(p);
    };

    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        add(detail::kronrod21(f, breaks[i], breaks[i + 1]));
    }
    while (out.abs_error > std::max(abs_tol, rel_tol * std::abs(out.value))) {
        if (panels.size() >= max_subdivisions) {
            throw Error(ErrorKind::QuadratureFailure,
                        "tolerance not met within " + std::to_string(max_subdivisions) +
                            " subdivisions (estimated error " + std::to_string(out.abs_error) + ")");
        }
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw Error(ErrorKind::QuadratureFailure, "panel width reached floating-point resolution");
        }
        out.value -= worst.value;
        out.abs_error -= worst.error;
        add(detail::kronrod21(f, worst.lo, mid));
        add(detail::kronrod21(f, mid, worst.hi));
    }

    // Re-sum from scratch so the running subtractions leave no drift.
    out.value = 0.0;
    out.abs_error = 0.0;
    out.subdivisions = panels.size();
    std::vector<detail::Panel> all;
    all.reserve(panels.size());
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    for (const auto& p : all) {
        out.value += p.value;
        out.abs_error += p.error;
    }
    return out;
}

template <class F>
QuadratureResult integrate_adaptive(const F& f, double lo, double hi, double abs_tol, double rel_tol,
                                    std::size_t max_subdivisions) {
    return integrate_adaptive(f, std::vector<double>{lo, hi}, abs_tol, rel_tol, max_subdivisions);
}

} // namespace hestoncal
