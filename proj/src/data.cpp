#include "hestoncal/data.hpp"

#include "hestoncal/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace hestoncal {

namespace {

// Dataset D1: BIIB calls, 2014-02-14.
constexpr std::string_view kD1 = R"(
328.29 0.1753424 275 0.000553778 56.9 55.5 58.3
328.29 0.1753424 300 0.000553778 36.3 35.0 37.6
328.29 0.1753424 325 0.000553778 19.6 19.3 19.9
328.29 0.1753424 350 0.000553778 9.45 9.2 9.7
328.29 0.1753424 375 0.000553778 4.3 4.1 4.5
328.29 0.4246575 275 0.000659467 63.2 61.7 64.7
328.29 0.4246575 300 0.000659467 44.9 44.4 45.4
328.29 0.4246575 325 0.000659467 30.55 30.2 30.9
328.29 0.4246575 350 0.000659467 20.05 19.7 20.4
328.29 0.4246575 375 0.000659467 12.5 12.2 12.8
328.29 0.9232876 275 0.000850338 77.55 76.1 79.0
328.29 0.9232876 300 0.000850338 61.45 60.8 62.1
328.29 0.9232876 325 0.000850338 48.9 48.1 49.7
328.29 0.9232876 350 0.000850338 38.45 37.9 39.0
328.29 0.9232876 375 0.000850338 29.5 29.0 30.0
)";

// Dataset D2: PCLN calls, 2014-02-24.
constexpr std::string_view kD2 = R"(
1313.67 0.3972602 1200 0.000697973 160.15 158.6 161.7
1313.67 0.3972602 1250 0.000697973 127.25 125.6 128.9
1313.67 0.3972602 1300 0.000697973 99.15 98.0 100.3
1313.67 0.3972602 1350 0.000697973 75.25 73.8 76.7
1313.67 0.3972602 1400 0.000697973 55.6 54.4 56.8
1313.67 0.8958904 1200 0.000853821 211.1 209.4 212.8
1313.67 0.8958904 1250 0.000853821 182.25 180.6 183.9
1313.67 0.8958904 1300 0.000853821 156.35 155.0 157.7
1313.67 0.8958904 1350 0.000853821 132.2 130.3 134.1
1313.67 0.8958904 1400 0.000853821 111.55 110.2 112.9
1313.67 1.8904109 1200 0.002228013 286 284.2 287.8
1313.67 1.8904109 1250 0.002228013 259.75 257.8 261.7
1313.67 1.8904109 1300 0.002228013 235.3 233.2 237.4
1313.67 1.8904109 1350 0.002228013 213.05 211.2 214.9
1313.67 1.8904109 1400 0.002228013 192.2 190.4 194.0
)";

// Dataset D3: YHOO calls, 2014-03-04.
constexpr std::string_view kD3 = R"(
39.63 0.0493150 36 0.000631752 3.75 3.7 3.8
39.63 0.0493150 38 0.000631752 2.145 2.13 2.16
39.63 0.0493150 40 0.000631752 1.035 1.02 1.05
39.63 0.0493150 42 0.000631752 0.435 0.42 0.45
39.63 0.0493150 44 0.000631752 0.17 0.16 0.18
39.63 0.1260273 36 0.000707312 4.3 4.25 4.35
39.63 0.1260273 38 0.000707312 2.91 2.89 2.93
39.63 0.1260273 40 0.000707312 1.85 1.84 1.86
39.63 0.1260273 42 0.000707312 1.095 1.08 1.11
39.63 0.1260273 44 0.000707312 0.615 0.61 0.62
39.63 0.3753424 36 0.000734416 5.55 5.5 5.6
39.63 0.3753424 38 0.000734416 4.35 4.3 4.4
39.63 0.3753424 40 0.000734416 3.35 3.3 3.4
39.63 0.3753424 42 0.000734416 2.55 2.53 2.57
39.63 0.3753424 44 0.000734416 1.92 1.9 1.94
39.63 0.6246575 36 0.000796417 6.475 6.4 6.55
39.63 0.6246575 38 0.000796417 5.35 5.3 5.4
39.63 0.6246575 40 0.000796417 4.4 4.35 4.45
39.63 0.6246575 42 0.000796417 3.6 3.55 3.65
39.63 0.6246575 44 0.000796417 2.92 2.89 2.95
39.63 0.8739726 35 0.000882340 7.775 7.7 7.85
39.63 0.8739726 37 0.000882340 6.675 6.6 6.75
39.63 0.8739726 40 0.000882340 5.25 5.2 5.3
39.63 0.8739726 42 0.000882340 4.425 4.35 4.5
39.63 0.8739726 45 0.000882340 3.425 3.35 3.5
39.63 1.8684931 35 0.002280481 10.125 9.95 10.3
39.63 1.8684931 37 0.002280481 9.2 9.05 9.35
39.63 1.8684931 40 0.002280481 7.85 7.75 7.95
39.63 1.8684931 42 0.002280481 7.1 7.0 7.2
39.63 1.8684931 45 0.002280481 6.1 5.95 6.25
)";

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
    while (pos < line.size()) {
        while (pos < line.size() && is_sep(line[pos])) {
            ++pos;
        }
        const std::size_t begin = pos;
        while (pos < line.size() && !is_sep(line[pos])) {
            ++pos;
        }
        if (pos > begin) {
            fields.push_back(line.substr(begin, pos - begin));
        }
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line) {
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || end != field.data() + field.size()) {
        parse_error(line, "non-numeric field '" + std::string(field) + "'");
    }
    return value;
}

} // namespace

std::vector<MarketQuote> parse_quotes(std::istream& in) {
    std::vector<MarketQuote> quotes;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 7) {
            parse_error(line_no, "expected 7 columns (S0 t K r mid bid ask), found " + std::to_string(fields.size()));
        }
        std::array<double, 7> v{};
        for (std::size_t i = 0; i < 7; ++i) {
            v[i] = parse_number(fields[i], line_no);
        }
        MarketQuote quote{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
        try {
            quote.validate();
        } catch (const Error& e) {
            parse_error(line_no, e.message());
        }
        quotes.push_back(quote);
    }
    if (quotes.empty()) {
        throw Error(ErrorKind::EmptyFile, "no data rows");
    }
    return quotes;
}

std::vector<MarketQuote> parse_quotes(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_quotes(in);
}

std::vector<MarketQuote> load_quotes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidArgument, "cannot open quote file " + path.string());
    }
    return parse_quotes(in);
}

std::string serialize_quotes(std::span<const MarketQuote> quotes) {
    std::string out;
    std::array<char, 64> buf{};
    for (const auto& quote : quotes) {
        const std::array<double, 7> v{quote.s0, quote.t, quote.k, quote.r, quote.mid, quote.bid, quote.ask};
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v[i]);
            out.append(buf.data(), res.ptr);
            out.push_back(i + 1 < v.size() ? ' ' : '\n');
        }
    }
    return out;
}

const std::vector<MarketQuote>& builtin_dataset(DatasetId id) {
    static const std::vector<MarketQuote> d1 = parse_quotes(kD1);
    static const std::vector<MarketQuote> d2 = parse_quotes(kD2);
    static const std::vector<MarketQuote> d3 = parse_quotes(kD3);
    switch (id) {
    case DatasetId::D1: return d1;
    case DatasetId::D2: return d2;
    case DatasetId::D3: return d3;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown dataset");
}

std::optional<DatasetId> dataset_from_name(std::string_view name) {
    if (name.size() != 2 || (name[0] != 'D' && name[0] != 'd')) {
        return std::nullopt;
    }
    switch (name[1]) {
    case '1': return DatasetId::D1;
    case '2': return DatasetId::D2;
    case '3': return DatasetId::D3;
    default: return std::nullopt;
    }
}

std::string_view dataset_name(DatasetId id) {
    switch (id) {
    case DatasetId::D1: return "D1";
    case DatasetId::D2: return "D2";
    case DatasetId::D3: return "D3";
    }
    return "?";
}

} // namespace hestoncal
