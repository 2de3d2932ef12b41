#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hestoncal/charfn.hpp"
#include "hestoncal/data.hpp"
#include "hestoncal/error.hpp"
#include "hestoncal/inversion.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hestoncal;

namespace {

const BsmParams kExample1{100.0, 0.20, 0.02, 1.0};

CharFn bsm_cf(const BsmParams& p) {
    return [p](cplx w) { return cf_bsm(p, w); };
}

CharFn standard_normal_cf() {
    return [](cplx w) { return std::exp(-0.5 * w * w); };
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("pi2 under Black-Scholes") {
    const auto cf = bsm_cf(kExample1);
    CHECK(std::abs(pi2(cf, std::log(100.0)) - 0.5) < 1e-9);
    CHECK(std::abs(pi2(cf, std::log(1e-8)) - 1.0) < 1e-9);

    const auto closed = oracle::bs_call(100.0, 0.20, 0.02, 1.0, 110.0);
    CHECK(std::abs(pi2(cf, std::log(110.0)) - closed.n_d2) < 1e-8);
}

TEST_CASE("pi1 under Black-Scholes") {
    const auto cf = bsm_cf(kExample1);
    const double n_02 = oracle::normal_cdf(0.2);
    CHECK(n_02 == doctest::Approx(0.57926).epsilon(1e-5));
    CHECK(std::abs(pi1(cf, std::log(100.0)) - n_02) < 1e-8);
    CHECK(std::abs(pi1(cf, std::log(1e-8)) - 1.0) < 1e-9);
}

TEST_CASE("pi1 and pi2 assemble the Kahl-Jaeckel Heston price") {
    const HestonParams p{0.16, 0.16, 1.0, 2.0, -0.8};
    const CharFn cf = [p](cplx w) { return cf_heston(p, 1.0, 0.0, 10.0, w); };
    const double k = 2.0;
    const double price = 1.0 * pi1(cf, std::log(k)) - k * pi2(cf, std::log(k));
    CHECK(std::abs(price - 0.0495) <= 5e-4);
}

TEST_CASE("cdf_from_cf") {
    const auto normal = standard_normal_cf();
    CHECK(std::abs(cdf_from_cf(normal, 0.0) - 0.5) < 1e-10);
    const double q95 = oracle::normal_quantile(0.95);
    CHECK(q95 == doctest::Approx(1.6448536).epsilon(1e-7));
    CHECK(std::abs(cdf_from_cf(normal, q95) - 0.95) < 1e-9);
    for (double x : {-3.0, -1.0, -0.25, 0.7, 2.5}) {
        CHECK(std::abs(cdf_from_cf(normal, x) - oracle::normal_cdf(x)) < 1e-9);
    }
    CHECK(std::abs(cdf_from_cf(bsm_cf(kExample1), std::log(100.0)) - 0.5) < 1e-9);
}

TEST_CASE("removable singularity: stable in the left endpoint") {
    const HestonParams h{0.0989, 0.3407, 0.7331, 0.7068, -0.2949};
    const std::vector<CharFn> cfs = {
        bsm_cf(kExample1),
        standard_normal_cf(),
        [h](cplx w) { return cf_heston(h, 328.29, 0.00066, 0.4246575, w); },
    };
    const std::vector<double> xs = {std::log(100.0), 0.3, std::log(300.0)};
    for (std::size_t c = 0; c < cfs.size(); ++c) {
        QuadratureConfig q;
        q.lower_limit = 1e-10;
        const double ref1 = pi1(cfs[c], xs[c], q);
        const double ref2 = pi2(cfs[c], xs[c], q);
        for (double w_min : {1e-12, 1e-8}) {
            q.lower_limit = w_min;
            CHECK(std::abs(pi1(cfs[c], xs[c], q) - ref1) <= 1e-9);
            CHECK(std::abs(pi2(cfs[c], xs[c], q) - ref2) <= 1e-9);
        }
    }
}

TEST_CASE("property: cdf monotone, complement identity, truncation stability") {
    std::mt19937_64 rng(4242);
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    const QuadratureConfig q;
    const double tol = 2.0 * std::max(q.abs_tol, q.rel_tol);

    for (int n = 0; n < 100; ++n) {
        // total variance sigma^2 t >= 0.01 keeps the cf negligible beyond w = 100
        const double t = u(0.05, 3.0);
        const double sigma = u(std::sqrt(0.01 / t), 1.0);
        const BsmParams p{u(10.0, 500.0), sigma, u(0.0, 0.08), t};
        const auto cf = bsm_cf(p);
        const double x = std::log(p.s0) + u(-0.7, 0.7);
        CAPTURE(n);

        CHECK(std::abs(pi2(cf, x, q) + cdf_from_cf(cf, x, q) - 1.0) <= tol);

        QuadratureConfig wide = q;
        wide.upper_limit = 200.0;
        CHECK(std::abs(pi2(cf, x, q) - pi2(cf, x, wide)) <= 1e-9);

        double prev = -1.0;
        for (int j = -10; j <= 10; ++j) {
            const double f = cdf_from_cf(cf, std::log(p.s0) + 0.1 * j, q);
            CHECK(f >= prev - 1e-9);
            prev = f;
        }
    }
}

TEST_CASE("pi2 equals the forward-measure form on D1, D2 and D3") {
    const HestonParams h{0.0989, 0.3407, 0.7331, 0.7068, -0.2949};
    const QuadratureConfig q;
    for (auto id : {DatasetId::D1, DatasetId::D2, DatasetId::D3}) {
        for (const auto& quote : builtin_dataset(id)) {
            const CharFn cf = [&](cplx w) { return cf_heston(h, quote.s0, quote.r, quote.t, w); };
            const double x = std::log(quote.s0 * std::exp(quote.r * quote.t) / quote.k);
            const double integral = oracle::integrate(
                [&](double w) {
                    const cplx z = std::exp(cplx(0.0, w * x)) * cf_heston_gatheral_exponent(h, quote.t, w);
                    return (z / cplx(0.0, w)).real();
                },
                q.lower_limit, q.upper_limit);
            const double forward_form = 0.5 + integral / std::numbers::pi;
            CHECK(std::abs(pi2(cf, std::log(quote.k), q) - forward_form) <= 1e-9);
        }
    }
}

TEST_CASE("long truncation ranges still see the body of the integrand") {
    const auto cf = bsm_cf(kExample1);
    const double want = oracle::bs_call(100.0, 0.20, 0.02, 1.0, 100.0).n_d1;
    for (double upper : {1e3, 1e5, 1e8}) {
        QuadratureConfig q;
        q.upper_limit = upper;
        CAPTURE(upper);
        CHECK(std::abs(pi1(cf, std::log(100.0), q) - want) < 1e-8);
    }
}

TEST_CASE("error paths") {
    const auto normal = standard_normal_cf();

    QuadratureConfig bad;
    bad.upper_limit = -1.0;
    CHECK(kind_of([&] { (void)pi2(normal, 0.0, bad); }) == ErrorKind::InvalidArgument);

    QuadratureConfig tight;
    tight.max_subdivisions = 1;
    CHECK(kind_of([&] { (void)pi2(bsm_cf(kExample1), std::log(1e-8), tight); }) == ErrorKind::QuadratureFailure);

    // Not a characteristic function: psi(0) = 2 pushes pi2 to ~1.5.
    const CharFn doubled = [](cplx w) { return 2.0 * std::exp(cplx(0.0, 3.0) * w - 0.5 * w * w); };
    CHECK(kind_of([&] { (void)pi2(doubled, 0.0); }) == ErrorKind::OutOfRange);

    // psi(-i) = 0.
    const CharFn no_forward = [](cplx w) { return std::exp(-0.5 * w * w) * (1.0 - cplx(0.0, 1.0) * w); };
    CHECK(kind_of([&] { (void)pi1(no_forward, 0.0); }) == ErrorKind::DegenerateCf);

    const CharFn nan_cf = [](cplx) { return cplx(std::nan(""), 0.0); };
    CHECK(kind_of([&] { (void)pi2(nan_cf, 0.0); }) == ErrorKind::QuadratureFailure);
}
