#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hestoncal/error.hpp"
#include "hestoncal/optimize.hpp"

#include <cmath>
#include <numbers>

using namespace hestoncal;
using optimize::Box;
using optimize::Vector;

namespace {

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) {
        v[i++] = x;
    }
    return v;
}

Vector rosenbrock(const Vector& x) { return vec({10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0]}); }

double rastrigin(const Vector& x) {
    double f = 10.0 * static_cast<double>(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        f += x[i] * x[i] - 10.0 * std::cos(2.0 * std::numbers::pi * x[i]);
    }
    return f;
}

} // namespace

TEST_CASE("least squares: Rosenbrock from the classic start") {
    const Box box{vec({-5.0, -5.0}), vec({5.0, 5.0})};
    const auto fit = optimize::least_squares(rosenbrock, vec({-1.2, 1.0}), box);
    CHECK(fit.converged);
    CHECK(fit.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.x[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.sum_squares < 1e-12);
}

TEST_CASE("least squares: active bound") {
    // min (x - 3)^2 + (y + 1)^2 on [0, 2] x [0, 2] -> (2, 0)
    const Box box{vec({0.0, 0.0}), vec({2.0, 2.0})};
    const auto fit = optimize::least_squares([](const Vector& x) { return vec({x[0] - 3.0, x[1] + 1.0}); },
                                             vec({0.5, 1.5}), box);
    CHECK(fit.converged);
    CHECK(fit.x[0] == 2.0);
    CHECK(fit.x[1] == 0.0);
    CHECK(fit.sum_squares == doctest::Approx(2.0));
    CHECK(box.contains(fit.x));
}

TEST_CASE("least squares: exponential fit recovers generating parameters") {
    const Box box{vec({0.0, 0.0}), vec({10.0, 10.0})};
    auto residuals = [](const Vector& x) {
        Vector r(20);
        for (int i = 0; i < 20; ++i) {
            const double s = 0.1 * i;
            r[i] = 2.5 * std::exp(-1.3 * s) - x[0] * std::exp(-x[1] * s);
        }
        return r;
    };
    const auto fit = optimize::least_squares(residuals, vec({1.0, 1.0}), box);
    CHECK(fit.converged);
    CHECK(fit.x[0] == doctest::Approx(2.5).epsilon(1e-6));
    CHECK(fit.x[1] == doctest::Approx(1.3).epsilon(1e-6));
}

TEST_CASE("least squares: throwing trial points are rejected, not fatal") {
    const Box box{vec({-5.0}), vec({5.0})};
    auto residuals = [](const Vector& x) {
        if (x[0] > 1.5) {
            throw Error(ErrorKind::NumericRange, "outside the valid region");
        }
        return vec({x[0] - 1.0});
    };
    const auto fit = optimize::least_squares(residuals, vec({-4.0}), box);
    CHECK(fit.x[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("least squares: iteration limit flags non-convergence") {
    optimize::LeastSquaresOptions opt;
    opt.max_iterations = 2;
    const Box box{vec({-5.0, -5.0}), vec({5.0, 5.0})};
    const auto fit = optimize::least_squares(rosenbrock, vec({-1.2, 1.0}), box, opt);
    CHECK_FALSE(fit.converged);
    CHECK(fit.iterations == 2);
    CHECK(fit.sum_squares < rosenbrock(vec({-1.2, 1.0})).squaredNorm());
}

TEST_CASE("least squares: invalid box") {
    const Box box{vec({1.0}), vec({0.0})};
    CHECK_THROWS_AS(optimize::least_squares([](const Vector& x) { return x; }, vec({0.5}), box), Error);
}

TEST_CASE("annealing: deterministic per seed, best-so-far, inside the box") {
    const Box box{vec({-5.12, -5.12, -5.12}), vec({5.12, 5.12, 5.12})};
    const Vector x0 = vec({3.3, -2.7, 4.1});
    optimize::AnnealingOptions opt;
    opt.seed = 11;
    opt.max_evaluations = 5000;

    const auto a = optimize::anneal(rastrigin, x0, box, opt);
    const auto b = optimize::anneal(rastrigin, x0, box, opt);
    CHECK(a.x == b.x);
    CHECK(a.cost == b.cost);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.evaluations == opt.max_evaluations);
    CHECK(a.cost <= rastrigin(x0));
    CHECK(a.cost == rastrigin(a.x));
    CHECK(box.contains(a.x));
    CHECK(a.accepted > 0);
    CHECK(a.reanneals > 0);

    opt.seed = 12;
    const auto c = optimize::anneal(rastrigin, x0, box, opt);
    CHECK(c.x != a.x);
}

TEST_CASE("annealing: escapes the starting basin") {
    const Box box{vec({-5.12, -5.12}), vec({5.12, 5.12})};
    optimize::AnnealingOptions opt;
    opt.seed = 3;
    opt.max_evaluations = 20000;
    const auto res = optimize::anneal(rastrigin, vec({4.0, -4.0}), box, opt);
    // The start sits in the basin with value 32; the global minimum is 0.
    CHECK(res.cost < 2.0);
}

TEST_CASE("annealing: invalid schedule") {
    const Box box{vec({0.0}), vec({1.0})};
    optimize::AnnealingOptions opt;
    opt.final_temperature = 2.0;
    CHECK_THROWS_AS(optimize::anneal([](const Vector& x) { return x[0]; }, vec({0.5}), box, opt), Error);
}
