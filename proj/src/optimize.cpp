#include "hestoncal/optimize.hpp"

#include "hestoncal/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace hestoncal::optimize {

namespace {

using Matrix = Eigen::MatrixXd;

template <class Fn>
auto try_eval(const Fn& fn, const Vector& x) -> std::optional<decltype(fn(x))> {
    try {
        return fn(x);
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool all_finite(const Vector& v) { return v.allFinite(); }

// Uniform double in [0, 1) from the top 53 bits, independent of the standard
// library's distribution implementations.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

bool Box::contains(const Vector& x) const {
    return x.size() == lower.size() && (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

LeastSquaresResult least_squares(const ResidualFn& residuals, const Vector& x0, const Box& box,
                                 const LeastSquaresOptions& opt) {
    const Eigen::Index n = x0.size();
    if (box.lower.size() != n || box.upper.size() != n || (box.lower.array() > box.upper.array()).any()) {
        throw Error(ErrorKind::InvalidArgument, "least_squares: inconsistent bounds");
    }

    LeastSquaresResult out;
    Vector x = box.clamp(x0);
    Vector r = residuals(x);
    ++out.evaluations;
    if (!all_finite(r)) {
        throw Error(ErrorKind::NumericRange, "least_squares: non-finite residuals at the starting point");
    }
    double f = r.squaredNorm();

    auto jacobian = [&](const Vector& at, const Vector& r_at) {
        Matrix jac(r_at.size(), n);
        for (Eigen::Index j = 0; j < n; ++j) {
            double h = opt.fd_rel_step * std::max(std::abs(at[j]), 1.0);
            if (at[j] + h > box.upper[j]) {
                h = -h;
            }
            Vector xp = at;
            xp[j] = at[j] + h;
            h = xp[j] - at[j];
            auto rp = try_eval(residuals, xp);
            ++out.evaluations;
            if (!rp || !all_finite(*rp)) {
                xp[j] = at[j] - h;
                h = xp[j] - at[j];
                rp = residuals(xp);
                ++out.evaluations;
            }
            jac.col(j) = (*rp - r_at) / h;
        }
        return jac;
    };

    Matrix jac = jacobian(x, r);
    Vector grad = jac.transpose() * r;
    Matrix normal = jac.transpose() * jac;
    double damping = 1e-3 * std::max(normal.diagonal().maxCoeff(), 1e-12);
    double growth = 2.0;

    out.reason = "iteration limit reached";
    for (; out.iterations < opt.max_iterations; ++out.iterations) {
        const double pg = (x - box.clamp(x - grad)).lpNorm<Eigen::Infinity>();
        if (pg <= opt.gradient_tol) {
            out.converged = true;
            out.reason = "projected gradient below tolerance";
            break;
        }

        std::vector<Eigen::Index> free;
        for (Eigen::Index j = 0; j < n; ++j) {
            const bool pinned_low = x[j] <= box.lower[j] && grad[j] > 0.0;
            const bool pinned_high = x[j] >= box.upper[j] && grad[j] < 0.0;
            if (!pinned_low && !pinned_high) {
                free.push_back(j);
            }
        }

        Vector delta = Vector::Zero(n);
        if (!free.empty()) {
            const auto m = static_cast<Eigen::Index>(free.size());
            Matrix system(m, m);
            Vector rhs(m);
            for (Eigen::Index a = 0; a < m; ++a) {
                for (Eigen::Index b = 0; b < m; ++b) {
                    system(a, b) = normal(free[a], free[b]);
                }
                system(a, a) += damping * std::max(normal(free[a], free[a]), 1e-12);
                rhs[a] = -grad[free[a]];
            }
            const Vector step = system.ldlt().solve(rhs);
            for (Eigen::Index a = 0; a < m; ++a) {
                delta[free[a]] = step[a];
            }
        }

        const Vector x_new = box.clamp(x + delta);
        const Vector s = x_new - x;
        if (s.norm() <= opt.step_tol * (opt.step_tol + x.norm())) {
            out.converged = true;
            out.reason = "step below tolerance";
            break;
        }

        const double predicted = f - (r + jac * s).squaredNorm();
        const auto r_new = try_eval(residuals, x_new);
        ++out.evaluations;
        double gain = -1.0;
        double f_new = f;
        if (r_new && all_finite(*r_new) && predicted > 0.0) {
            f_new = r_new->squaredNorm();
            gain = (f - f_new) / predicted;
        }

        if (gain > 1e-4) {
            const bool small_gain = (f - f_new) <= opt.function_tol * f;
            x = x_new;
            r = *r_new;
            f = f_new;
            jac = jacobian(x, r);
            grad = jac.transpose() * r;
            normal = jac.transpose() * jac;
            const double t = 2.0 * gain - 1.0;
            damping *= std::max(1.0 / 3.0, 1.0 - t * t * t);
            growth = 2.0;
            if (small_gain) {
                ++out.iterations;
                out.converged = true;
                out.reason = "function reduction below tolerance";
                break;
            }
        } else {
            damping *= growth;
            growth *= 2.0;
            if (!std::isfinite(damping) || damping > 1e100) {
                out.reason = "damping overflow without progress";
                break;
            }
        }
    }

    out.x = x;
    out.residuals = r;
    out.sum_squares = f;
    out.projected_gradient = (x - box.clamp(x - grad)).lpNorm<Eigen::Infinity>();
    return out;
}

AnnealingResult anneal(const CostFn& cost, const Vector& x0, const Box& box, const AnnealingOptions& opt) {
    const Eigen::Index dim = x0.size();
    if (dim == 0 || box.lower.size() != dim || box.upper.size() != dim ||
        (box.lower.array() > box.upper.array()).any()) {
        throw Error(ErrorKind::InvalidArgument, "anneal: inconsistent bounds");
    }
    if (!(opt.initial_temperature > opt.final_temperature) || !(opt.final_temperature > 0.0) ||
        opt.max_evaluations < 2) {
        throw Error(ErrorKind::InvalidArgument, "anneal: invalid schedule");
    }

    const double inv_dim = 1.0 / static_cast<double>(dim);
    const double t0 = opt.initial_temperature;
    const double decay = std::log(t0 / opt.final_temperature) /
                         std::pow(static_cast<double>(opt.max_evaluations), inv_dim);
    auto temperature = [&](double k) { return t0 * std::exp(-decay * std::pow(k, inv_dim)); };

    std::mt19937_64 rng(opt.seed);
    const Vector width = box.upper - box.lower;

    AnnealingResult out;
    Vector x = box.clamp(x0);
    double fx = cost(x);
    ++out.evaluations;
    if (!std::isfinite(fx)) {
        throw Error(ErrorKind::NumericRange, "anneal: non-finite cost at the starting point");
    }
    out.x = x;
    out.cost = fx;
    const double cost_scale = std::abs(fx) > 0.0 ? std::abs(fx) : 1.0;

    Vector k_gen = Vector::Zero(dim);
    double k_accept = 0.0;
    std::size_t since_reanneal = 0;
    Vector candidate(dim);

    while (out.evaluations < opt.max_evaluations) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double ti = temperature(k_gen[i]);
            const double u = uniform(rng);
            const double y = std::copysign(ti * (std::pow(1.0 + 1.0 / ti, std::abs(2.0 * u - 1.0)) - 1.0), u - 0.5);
            candidate[i] = std::clamp(x[i] + y * width[i], box.lower[i], box.upper[i]);
        }
        k_gen.array() += 1.0;

        const auto fc = try_eval(cost, candidate);
        ++out.evaluations;
        const double t_accept = temperature(k_accept) * cost_scale;
        k_accept += 1.0;

        if (fc && std::isfinite(*fc)) {
            const bool accept = *fc <= fx || uniform(rng) < std::exp(-(*fc - fx) / t_accept);
            if (accept) {
                x = candidate;
                fx = *fc;
                ++out.accepted;
                ++since_reanneal;
                if (fx < out.cost) {
                    out.x = x;
                    out.cost = fx;
                }
            }
        }

        if (since_reanneal >= opt.reanneal_interval &&
            out.evaluations + static_cast<std::size_t>(dim) < opt.max_evaluations) {
            since_reanneal = 0;
            Vector sensitivity = Vector::Zero(dim);
            for (Eigen::Index i = 0; i < dim; ++i) {
                Vector probe = out.x;
                double h = opt.sensitivity_step * width[i];
                if (probe[i] + h > box.upper[i]) {
                    h = -h;
                }
                probe[i] += h;
                const auto fp = try_eval(cost, probe);
                ++out.evaluations;
                if (fp && std::isfinite(*fp) && h != 0.0) {
                    sensitivity[i] = std::abs(*fp - out.cost) / std::abs(h);
                }
            }
            const double s_max = sensitivity.maxCoeff();
            if (s_max > 0.0) {
                for (Eigen::Index i = 0; i < dim; ++i) {
                    double t_new = t0;
                    if (sensitivity[i] > 0.0) {
                        t_new = std::min(t0, temperature(k_gen[i]) * s_max / sensitivity[i]);
                    }
                    k_gen[i] = std::pow(std::log(t0 / t_new) / decay, static_cast<double>(dim));
                }
                ++out.reanneals;
            }
        }
    }
    return out;
}

} // namespace hestoncal::optimize
