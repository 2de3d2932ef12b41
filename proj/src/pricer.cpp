#include "hestoncal/pricer.hpp"

#include "hestoncal/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace hestoncal {

namespace {

PriceBreakdown assemble(const CharFn& cf, double s0, double k, double r, double t, const QuadratureConfig& q) {
    PriceBreakdown out;
    const double log_k = std::log(k);
    out.pi1 = pi1(cf, log_k, q);
    out.pi2 = pi2(cf, log_k, q);
    out.price = s0 * out.pi1 - std::exp(-r * t) * k * out.pi2;
    return out;
}

} // namespace

void OptionSpec::validate() const {
    if (!(s0 > 0.0) || !(k > 0.0) || !(t > 0.0) || !std::isfinite(r)) {
        throw Error(ErrorKind::InvalidArgument, "option requires s0 > 0, k > 0, t > 0");
    }
}

PriceBreakdown price_call_bsm(const BsmParams& p, double k, const QuadratureConfig& q) {
    p.validate();
    if (!(k > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "strike must be positive");
    }
    const CharFn cf = [&p](cplx w) { return cf_bsm(p, w); };
    return assemble(cf, p.s0, k, p.r, p.t, q);
}

PriceBreakdown price_call_heston(const HestonParams& p, const OptionSpec& o, const QuadratureConfig& q) {
    p.validate();
    o.validate();
    const CharFn cf = [&](cplx w) { return cf_heston(p, o.s0, o.r, o.t, w); };
    return assemble(cf, o.s0, o.k, o.r, o.t, q);
}

std::vector<PriceBreakdown> price_calls_heston(const HestonParams& p, std::span<const OptionSpec> options,
                                               const QuadratureConfig& q, std::size_t threads) {
    const std::size_t n = options.size();
    std::vector<PriceBreakdown> out(n);
    std::vector<std::exception_ptr> errors(n);
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, n);

    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < n; i += stride) {
            try {
                out[i] = price_call_heston(p, options[i], q);
            } catch (const Error& e) {
                errors[i] = std::make_exception_ptr(
                    Error(e.kind(), "option " + std::to_string(i + 1) + ": " + e.message()));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back(work, w, threads);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace hestoncal
