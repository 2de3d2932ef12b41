#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace hestoncal::optimize {

using Vector = Eigen::VectorXd;

/// Box constraints lower <= x <= upper.
struct Box {
    Vector lower;
    Vector upper;

    Vector clamp(const Vector& x) const { return x.cwiseMax(lower).cwiseMin(upper); }
    bool contains(const Vector& x) const;
};

/// Residual vector r(x). May throw hestoncal::Error; a throwing trial point is
/// treated as a rejected step, a throwing starting point aborts.
using ResidualFn = std::function<Vector(const Vector&)>;

/// Scalar cost f(x). Same throwing contract as ResidualFn.
using CostFn = std::function<double(const Vector&)>;

struct LeastSquaresOptions {
    double fd_rel_step = 1e-7;     ///< forward-difference step, relative to max(|x_j|, 1)
    double function_tol = 1e-10;   ///< stop when the accepted reduction is below ftol * f
    double step_tol = 1e-10;       ///< stop when |dx| <= xtol * (xtol + |x|)
    double gradient_tol = 1e-10;   ///< stop when the projected gradient inf-norm is below this
    std::size_t max_iterations = 400;
};

struct LeastSquaresResult {
    Vector x;
    Vector residuals;
    double sum_squares = 0.0;
    double projected_gradient = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::string reason;
};

/// Bounded nonlinear least squares: min |r(x)|^2 subject to the box.
///
/// Projected Levenberg-Marquardt. Variables pinned at a bound with the
/// gradient pushing outward are frozen for the step; the damped Gauss-Newton
/// system is solved on the rest with Marquardt diagonal scaling and the trial
/// point is projected back into the box. The damping acts as the trust-region
/// radius and follows Nielsen's gain-ratio update. The Jacobian is taken by
/// forward differences (backward at an upper bound).
LeastSquaresResult least_squares(const ResidualFn& residuals, const Vector& x0, const Box& box,
                                 const LeastSquaresOptions& opt = {});

struct AnnealingOptions {
    std::uint64_t seed = 0;
    std::size_t max_evaluations = 20000;
    double initial_temperature = 1.0;
    double final_temperature = 1e-6;
    /// Re-anneal the per-dimension temperatures after this many accepted moves.
    std::size_t reanneal_interval = 100;
    /// Relative (to the box width) step for the re-annealing sensitivities.
    double sensitivity_step = 1e-3;
};

struct AnnealingResult {
    Vector x;
    double cost = 0.0;
    std::size_t evaluations = 0;
    std::size_t accepted = 0;
    std::size_t reanneals = 0;
};

/// Adaptive simulated annealing over a box.
///
/// Each dimension i carries its own generating temperature
/// T_i = T0 exp(-c k_i^{1/D}); candidates follow Ingber's generating
/// distribution scaled by the box width and are clipped to the box. Moves are
/// accepted by the Metropolis rule against a cost temperature on the same
/// schedule, scaled by the starting cost. c is chosen so the schedule reaches
/// final_temperature when the evaluation budget runs out. Periodically the
/// per-dimension k_i are reset from finite-difference sensitivities at the best
/// point so that insensitive directions keep exploring with wider steps.
///
/// Fully determined by (seed, inputs). Returns the best point visited.
AnnealingResult anneal(const CostFn& cost, const Vector& x0, const Box& box, const AnnealingOptions& opt = {});

} // namespace hestoncal::optimize
