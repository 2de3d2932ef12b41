#pragma once

#include "hestoncal/calibrate.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hestoncal {

struct ReportRow {
    std::size_t id = 0; ///< 1-based position in the dataset
    double mid = 0.0;
    double model = 0.0;
    double abs_diff = 0.0;
    bool within_spread = false;
};

/// Everything printed for one calibration run. Wall-clock time is deliberately
/// absent so identical runs render identical bytes.
struct Report {
    std::string dataset;
    std::string method;
    std::optional<std::uint64_t> seed;
    std::string config_hash;
    std::size_t evaluations = 0;
    bool converged = false;
    std::string note;

    HestonParams params;
    double objective = 0.0;

    std::vector<ReportRow> rows;

    double avg_abs_distance = 0.0;
    double mean_half_spread = 0.0;
    std::size_t within_spread_count = 0;
    bool accepted = false;
};

/// 16 hex digits of FNV-1a over a canonical rendering of the run inputs.
std::string config_hash(std::span<const MarketQuote> quotes, const CalibrationConfig& cfg, const QuadratureConfig& q);

Report make_report(const CalibrationResult& result, std::string dataset, std::span<const MarketQuote> quotes,
                   const CalibrationConfig& cfg, const QuadratureConfig& q);

/// Human-readable fixed-width table; prices and parameters to 4 decimals.
std::string render_table(const Report& report);

/// key=value lines (full precision) followed by a blank line and the CSV block
/// `id,mid,model,abs_diff,within_spread`.
std::string render_keyvalue(const Report& report);

/// Shortest decimal string that reads back to exactly `value`.
std::string format_exact(double value);

/// `value` with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

} // namespace hestoncal
