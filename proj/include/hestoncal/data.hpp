#pragma once

#include "hestoncal/calibrate.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hestoncal {

/// Reads rows of `S0 t K r mid bid ask`, whitespace or comma separated.
/// Blank lines and lines starting with '#' are skipped. Throws ParseError
/// (with the 1-based line number) on a malformed or invalid row and EmptyFile
/// if there are no data rows.
std::vector<MarketQuote> parse_quotes(std::istream& in);
std::vector<MarketQuote> parse_quotes(std::string_view text);
std::vector<MarketQuote> load_quotes(const std::filesystem::path& path);

/// One row per quote, shortest round-trip decimal representation.
std::string serialize_quotes(std::span<const MarketQuote> quotes);

enum class DatasetId { D1, D2, D3 };

/// The three reference option chains: D1 (15 quotes, spot 328.29), D2 (15
/// quotes, spot 1313.67) and D3 (30 quotes, spot 39.63).
const std::vector<MarketQuote>& builtin_dataset(DatasetId id);

/// "D1" / "D2" / "D3" (case-insensitive); nullopt otherwise.
std::optional<DatasetId> dataset_from_name(std::string_view name);
std::string_view dataset_name(DatasetId id);

} // namespace hestoncal
