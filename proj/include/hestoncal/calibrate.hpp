#pragma once

#include "hestoncal/charfn.hpp"
#include "hestoncal/inversion.hpp"
#include "hestoncal/optimize.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hestoncal {

/// One observed call quote.
struct MarketQuote {
    double s0 = 0.0;
    double t = 0.0;
    double k = 0.0;
    double r = 0.0;
    double mid = 0.0;
    double bid = 0.0;
    double ask = 0.0;

    /// Throws InvalidArgument unless t > 0, prices > 0 and bid <= mid <= ask.
    void validate() const;
    double half_spread() const noexcept { return 0.5 * (ask - bid); }
};

/// Optimizer coordinates. The fifth coordinate replaces the mean-reversion
/// speed by the Feller slack 2 a vbar - eta^2, so a lower bound of zero on it
/// enforces the Feller condition with plain box constraints.
struct OptVector {
    double v0 = 0.0;
    double vbar = 0.0;
    double eta = 0.0;
    double rho = 0.0;
    double feller_slack = 0.0;

    std::array<double, 5> to_array() const { return {v0, vbar, eta, rho, feller_slack}; }
    static OptVector from_array(const std::array<double, 5>& x) { return {x[0], x[1], x[2], x[3], x[4]}; }
    optimize::Vector to_vector() const;
    static OptVector from_vector(const optimize::Vector& x);
};

/// Inverse of params_from_optvector.
OptVector optvector_from_params(const HestonParams& p);

/// {v0, vbar, (x5 + eta^2) / (2 vbar), eta, rho}. If x5 > 0 the returned
/// params satisfy feller_slack() > 0 in floating point. Throws
/// DegenerateParams if vbar <= 0, eta < 0 or the implied a is not positive.
HestonParams params_from_optvector(const OptVector& x);

enum class CalibrationMethod { Local, Global };

struct CalibrationConfig {
    CalibrationMethod method = CalibrationMethod::Local;
    OptVector x0{0.5, 0.5, 1.0, -0.5, 1.0};
    OptVector lower{1e-6, 1e-6, 1e-6, -1.0, 0.0};
    OptVector upper{1.0, 1.0, 5.0, 1.0, 20.0};
    std::optional<std::uint64_t> seed;
    /// Local optimizer settings; also used for the polish after annealing.
    optimize::LeastSquaresOptions local{};
    /// Objective evaluations available to the annealer.
    std::size_t max_evaluations = 20000;
    /// Worker threads for repricing the quotes inside one objective call.
    std::size_t threads = 1;

    /// Throws InvalidArgument if lower <= x0 <= upper fails or a global run has
    /// no seed.
    void validate() const;
};

struct ObjectiveValue {
    double mse = 0.0;
    /// mid - model, in input order.
    std::vector<double> residuals;
    std::vector<double> model_prices;
};

/// Mean squared pricing error over the quotes. A failed reprice is rethrown
/// with the 1-based quote index in the message.
ObjectiveValue objective(const HestonParams& params, std::span<const MarketQuote> quotes,
                         const QuadratureConfig& q = {}, std::size_t threads = 1);

struct OptionFit {
    MarketQuote quote;
    double model_price = 0.0;
    double abs_difference = 0.0;
    bool within_spread = false;
};

/// Builds the per-option comparison rows from model prices.
std::vector<OptionFit> compare_to_market(std::span<const MarketQuote> quotes, std::span<const double> model_prices);

/// mean |model - mid| <= mean (ask - bid) / 2.
bool acceptance_check(std::span<const OptionFit> fits);

struct CalibrationResult {
    HestonParams params;
    OptVector x;
    double objective = 0.0; ///< mean squared error at params
    double avg_abs_distance = 0.0;
    double mean_half_spread = 0.0;
    std::size_t within_spread_count = 0;
    std::vector<OptionFit> per_option;
    bool accepted = false;
    bool converged = false;
    std::string note;
    double elapsed = 0.0; ///< wall-clock seconds
    std::size_t evaluations = 0;
};

/// Fills every derived field of a result (per-option rows, summary,
/// acceptance) by repricing the quotes at `x`.
CalibrationResult evaluate_fit(const OptVector& x, std::span<const MarketQuote> quotes, const QuadratureConfig& q = {},
                               std::size_t threads = 1);

/// Bounded local least squares from cfg.x0. A run that stops on the iteration
/// limit still returns its best point with converged = false.
CalibrationResult calibrate_local(std::span<const MarketQuote> quotes, const CalibrationConfig& cfg,
                                  const QuadratureConfig& q = {});

/// Adaptive simulated annealing over the box followed by one local polish run
/// from the best annealed point. Deterministic given cfg.seed.
CalibrationResult calibrate_global(std::span<const MarketQuote> quotes, const CalibrationConfig& cfg,
                                   const QuadratureConfig& q = {});

/// Dispatches on cfg.method.
CalibrationResult calibrate(std::span<const MarketQuote> quotes, const CalibrationConfig& cfg,
                            const QuadratureConfig& q = {});

} // namespace hestoncal
