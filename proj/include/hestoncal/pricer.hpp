#pragma once

#include "hestoncal/charfn.hpp"
#include "hestoncal/inversion.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hestoncal {

/// A single European call contract.
struct OptionSpec {
    double s0 = 0.0;
    double k = 0.0;
    double r = 0.0;
    double t = 0.0;

    void validate() const;
};

/// price = s0 * pi1 - exp(-r t) * k * pi2.
struct PriceBreakdown {
    double price = 0.0;
    double pi1 = 0.0;
    double pi2 = 0.0;
};

PriceBreakdown price_call_bsm(const BsmParams& p, double k, const QuadratureConfig& q = {});

PriceBreakdown price_call_heston(const HestonParams& p, const OptionSpec& o, const QuadratureConfig& q = {});

/// Prices every option under one parameter set, splitting the work across up
/// to `threads` workers (0 = hardware concurrency). Each option is priced
/// independently, so the output is identical to a sequential loop. The first
/// failure (lowest index) is rethrown with the
/// 1-based option index prepended to its message.
std::vector<PriceBreakdown> price_calls_heston(const HestonParams& p, std::span<const OptionSpec> options,
                                               const QuadratureConfig& q = {}, std::size_t threads = 1);

} // namespace hestoncal
