#include "hestoncal/calibrate.hpp"

#include "hestoncal/error.hpp"
#include "hestoncal/pricer.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace hestoncal {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<OptionSpec> to_specs(std::span<const MarketQuote> quotes) {
    std::vector<OptionSpec> specs;
    specs.reserve(quotes.size());
    for (const auto& quote : quotes) {
        specs.push_back({quote.s0, quote.k, quote.r, quote.t});
    }
    return specs;
}

optimize::Box box_of(const CalibrationConfig& cfg) { return {cfg.lower.to_vector(), cfg.upper.to_vector()}; }

void require_quotes(std::span<const MarketQuote> quotes) {
    if (quotes.empty()) {
        throw Error(ErrorKind::InvalidArgument, "calibration needs at least one quote");
    }
    for (const auto& quote : quotes) {
        quote.validate();
    }
}

// Residual closure shared by both methods; counts evaluations.
struct ResidualModel {
    std::span<const MarketQuote> quotes;
    std::vector<OptionSpec> specs;
    QuadratureConfig q;
    std::size_t threads;
    std::size_t evaluations = 0;

    optimize::Vector operator()(const optimize::Vector& x) {
        ++evaluations;
        const HestonParams params = params_from_optvector(OptVector::from_vector(x));
        const auto prices = price_calls_heston(params, specs, q, threads);
        optimize::Vector r(static_cast<Eigen::Index>(prices.size()));
        for (std::size_t i = 0; i < prices.size(); ++i) {
            r[static_cast<Eigen::Index>(i)] = quotes[i].mid - prices[i].price;
        }
        return r;
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

void MarketQuote::validate() const {
    const bool finite = std::isfinite(s0) && std::isfinite(t) && std::isfinite(k) && std::isfinite(r) &&
                        std::isfinite(mid) && std::isfinite(bid) && std::isfinite(ask);
    if (!finite || !(s0 > 0.0) || !(k > 0.0) || !(t > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "quote requires finite fields with s0, k, t > 0");
    }
    if (!(bid > 0.0) || !(mid > 0.0) || !(ask > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "quote prices must be positive");
    }
    if (bid > ask) {
        throw Error(ErrorKind::InvalidArgument, "bid exceeds ask");
    }
    if (mid < bid || mid > ask) {
        throw Error(ErrorKind::InvalidArgument, "mid outside [bid, ask]");
    }
}

optimize::Vector OptVector::to_vector() const {
    optimize::Vector v(5);
    v << v0, vbar, eta, rho, feller_slack;
    return v;
}

OptVector OptVector::from_vector(const optimize::Vector& x) {
    if (x.size() != 5) {
        throw Error(ErrorKind::InvalidArgument, "OptVector needs exactly 5 coordinates");
    }
    return {x[0], x[1], x[2], x[3], x[4]};
}

OptVector optvector_from_params(const HestonParams& p) { return {p.v0, p.vbar, p.eta, p.rho, p.feller_slack()}; }

HestonParams params_from_optvector(const OptVector& x) {
    if (!(x.vbar > 0.0)) {
        throw Error(ErrorKind::DegenerateParams, "vbar must be positive to recover the mean-reversion speed");
    }
    if (!(x.eta >= 0.0)) {
        throw Error(ErrorKind::DegenerateParams, "eta must be non-negative");
    }
    HestonParams p{x.v0, x.vbar, (x.feller_slack + x.eta * x.eta) / (2.0 * x.vbar), x.eta, x.rho};
    if (!(p.a > 0.0) || !std::isfinite(p.a)) {
        throw Error(ErrorKind::DegenerateParams, "implied mean-reversion speed is not positive");
    }
    // Rounding can leave 2 a vbar - eta^2 at or just below zero for a tiny
    // positive slack; nudge a up by ulps until the condition holds.
    while (x.feller_slack > 0.0 && !(p.feller_slack() > 0.0)) {
        p.a = std::nextafter(p.a, std::numeric_limits<double>::infinity());
    }
    return p;
}

void CalibrationConfig::validate() const {
    const auto lo = lower.to_array();
    const auto hi = upper.to_array();
    const auto start = x0.to_array();
    for (std::size_t i = 0; i < 5; ++i) {
        if (!(lo[i] <= start[i] && start[i] <= hi[i])) {
            throw Error(ErrorKind::InvalidArgument,
                        "initial guess coordinate " + std::to_string(i + 1) + " lies outside its bounds");
        }
    }
    if (!(lower.vbar > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "the vbar lower bound must be positive");
    }
    if (method == CalibrationMethod::Global && !seed) {
        throw Error(ErrorKind::InvalidArgument, "global calibration requires a seed");
    }
}

ObjectiveValue objective(const HestonParams& params, std::span<const MarketQuote> quotes, const QuadratureConfig& q,
                         std::size_t threads) {
    require_quotes(quotes);
    const auto specs = to_specs(quotes);
    const auto prices = price_calls_heston(params, specs, q, threads);

    ObjectiveValue out;
    out.residuals.reserve(quotes.size());
    out.model_prices.reserve(quotes.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < quotes.size(); ++i) {
        const double residual = quotes[i].mid - prices[i].price;
        out.residuals.push_back(residual);
        out.model_prices.push_back(prices[i].price);
        sum += residual * residual;
    }
    out.mse = sum / static_cast<double>(quotes.size());
    return out;
}

std::vector<OptionFit> compare_to_market(std::span<const MarketQuote> quotes, std::span<const double> model_prices) {
    if (quotes.size() != model_prices.size()) {
        throw Error(ErrorKind::InvalidArgument, "quote and price counts differ");
    }
    std::vector<OptionFit> fits;
    fits.reserve(quotes.size());
    for (std::size_t i = 0; i < quotes.size(); ++i) {
        const double model = model_prices[i];
        fits.push_back({quotes[i], model, std::abs(model - quotes[i].mid),
                        quotes[i].bid <= model && model <= quotes[i].ask});
    }
    return fits;
}

bool acceptance_check(std::span<const OptionFit> fits) {
    if (fits.empty()) {
        return false;
    }
    double distance = 0.0;
    double half_spread = 0.0;
    for (const auto& fit : fits) {
        distance += fit.abs_difference;
        half_spread += fit.quote.half_spread();
    }
    return distance <= half_spread;
}

CalibrationResult evaluate_fit(const OptVector& x, std::span<const MarketQuote> quotes, const QuadratureConfig& q,
                               std::size_t threads) {
    CalibrationResult out;
    out.x = x;
    out.params = params_from_optvector(x);
    const ObjectiveValue value = objective(out.params, quotes, q, threads);
    out.objective = value.mse;
    out.per_option = compare_to_market(quotes, value.model_prices);

    double distance = 0.0;
    double half_spread = 0.0;
    for (const auto& fit : out.per_option) {
        distance += fit.abs_difference;
        half_spread += fit.quote.half_spread();
        out.within_spread_count += fit.within_spread ? 1 : 0;
    }
    const auto n = static_cast<double>(out.per_option.size());
    out.avg_abs_distance = distance / n;
    out.mean_half_spread = half_spread / n;
    out.accepted = acceptance_check(out.per_option);
    return out;
}

CalibrationResult calibrate_local(std::span<const MarketQuote> quotes, const CalibrationConfig& cfg,
                                  const QuadratureConfig& q) {
    const auto start = Clock::now();
    require_quotes(quotes);
    cfg.validate();
    q.validate();

    ResidualModel model{quotes, to_specs(quotes), q, cfg.threads};
    const auto fit = optimize::least_squares(std::ref(model), cfg.x0.to_vector(), box_of(cfg), cfg.local);

    CalibrationResult out = evaluate_fit(OptVector::from_vector(fit.x), quotes, q, cfg.threads);
    out.converged = fit.converged;
    out.note = fit.reason;
    out.evaluations = model.evaluations;
    out.elapsed = seconds_since(start);
    return out;
}

CalibrationResult calibrate_global(std::span<const MarketQuote> quotes, const CalibrationConfig& cfg,
                                   const QuadratureConfig& q) {
    const auto start = Clock::now();
    require_quotes(quotes);
    cfg.validate();
    q.validate();

    ResidualModel model{quotes, to_specs(quotes), q, cfg.threads};
    const optimize::Box box = box_of(cfg);

    optimize::AnnealingOptions sa;
    sa.seed = *cfg.seed;
    sa.max_evaluations = cfg.max_evaluations;
    const auto annealed = optimize::anneal([&](const optimize::Vector& x) { return model(x).squaredNorm(); },
                                           cfg.x0.to_vector(), box, sa);

    const auto polished = optimize::least_squares(std::ref(model), annealed.x, box, cfg.local);

    CalibrationResult out = evaluate_fit(OptVector::from_vector(polished.x), quotes, q, cfg.threads);
    out.converged = polished.converged;
    out.note = "annealing: " + std::to_string(annealed.evaluations) + " evaluations, " +
               std::to_string(annealed.accepted) + " accepted, " + std::to_string(annealed.reanneals) +
               " re-anneals; polish: " + polished.reason;
    out.evaluations = model.evaluations;
    out.elapsed = seconds_since(start);
    return out;
}

CalibrationResult calibrate(std::span<const MarketQuote> quotes, const CalibrationConfig& cfg,
                            const QuadratureConfig& q) {
    return cfg.method == CalibrationMethod::Global ? calibrate_global(quotes, cfg, q)
                                                   : calibrate_local(quotes, cfg, q);
}

} // namespace hestoncal
