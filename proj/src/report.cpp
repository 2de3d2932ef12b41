#include "hestoncal/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace hestoncal {

namespace {

const char* method_name(CalibrationMethod m) { return m == CalibrationMethod::Global ? "global" : "local"; }

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

} // namespace

std::string format_exact(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), res.ptr};
}

std::string format_fixed(double value, int decimals) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
    std::string s(buf.data(), res.ptr);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
        s.erase(0, 1); // no "-0.0000"
    }
    return s;
}

std::string config_hash(std::span<const MarketQuote> quotes, const CalibrationConfig& cfg, const QuadratureConfig& q) {
    std::ostringstream canon;
    canon << "method=" << method_name(cfg.method) << ';';
    canon << "seed=" << (cfg.seed ? std::to_string(*cfg.seed) : "-") << ';';
    for (const auto* v : {&cfg.x0, &cfg.lower, &cfg.upper}) {
        for (double x : v->to_array()) {
            canon << format_exact(x) << ',';
        }
        canon << ';';
    }
    canon << format_exact(cfg.local.fd_rel_step) << ',' << format_exact(cfg.local.function_tol) << ','
          << format_exact(cfg.local.step_tol) << ',' << format_exact(cfg.local.gradient_tol) << ','
          << cfg.local.max_iterations << ',' << cfg.max_evaluations << ';';
    canon << format_exact(q.lower_limit) << ',' << format_exact(q.upper_limit) << ',' << format_exact(q.abs_tol) << ','
          << format_exact(q.rel_tol) << ',' << q.max_subdivisions << ';';
    for (const auto& quote : quotes) {
        for (double x : {quote.s0, quote.t, quote.k, quote.r, quote.mid, quote.bid, quote.ask}) {
            canon << format_exact(x) << ',';
        }
        canon << ';';
    }

    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon.str()) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::array<char, 17> hex{};
    std::snprintf(hex.data(), hex.size(), "%016llx", static_cast<unsigned long long>(hash));
    return hex.data();
}

Report make_report(const CalibrationResult& result, std::string dataset, std::span<const MarketQuote> quotes,
                   const CalibrationConfig& cfg, const QuadratureConfig& q) {
    Report report;
    report.dataset = std::move(dataset);
    report.method = method_name(cfg.method);
    report.seed = cfg.seed;
    report.config_hash = config_hash(quotes, cfg, q);
    report.evaluations = result.evaluations;
    report.converged = result.converged;
    report.note = result.note;
    report.params = result.params;
    report.objective = result.objective;
    for (std::size_t i = 0; i < result.per_option.size(); ++i) {
        const auto& fit = result.per_option[i];
        report.rows.push_back({i + 1, fit.quote.mid, fit.model_price, fit.abs_difference, fit.within_spread});
    }
    report.avg_abs_distance = result.avg_abs_distance;
    report.mean_half_spread = result.mean_half_spread;
    report.within_spread_count = result.within_spread_count;
    report.accepted = result.accepted;
    return report;
}

std::string render_table(const Report& report) {
    std::ostringstream out;
    auto field = [&](const char* key, const std::string& value) { out << pad_right(key, 14) << value << '\n'; };
    field("dataset", report.dataset);
    field("method", report.method);
    field("seed", report.seed ? std::to_string(*report.seed) : "-");
    field("config_hash", report.config_hash);
    field("evaluations", std::to_string(report.evaluations));
    field("converged", report.converged ? "yes" : "no");
    if (!report.note.empty()) {
        field("note", report.note);
    }
    out << '\n';

    const auto& p = report.params;
    out << pad_left("V0", 10) << pad_left("Vbar", 10) << pad_left("eta", 10) << pad_left("rho", 10)
        << pad_left("a", 10) << '\n';
    for (double v : {p.v0, p.vbar, p.eta, p.rho, p.a}) {
        out << pad_left(format_fixed(v, 4), 10);
    }
    out << "\n\n";

    out << pad_left("id", 4) << pad_left("mid", 12) << pad_left("model", 12) << pad_left("abs_diff", 10)
        << pad_left("within", 8) << '\n';
    for (const auto& row : report.rows) {
        out << pad_left(std::to_string(row.id), 4) << pad_left(format_fixed(row.mid, 4), 12)
            << pad_left(format_fixed(row.model, 4), 12) << pad_left(format_fixed(row.abs_diff, 4), 10)
            << pad_left(row.within_spread ? "YES" : "NO", 8) << '\n';
    }
    out << '\n';

    field("objective", format_fixed(report.objective, 6));
    field("avg_distance", format_fixed(report.avg_abs_distance, 4));
    field("half_spread", format_fixed(report.mean_half_spread, 4));
    field("within", std::to_string(report.within_spread_count) + "/" + std::to_string(report.rows.size()));
    field("accepted", report.accepted ? "yes" : "no");
    return out.str();
}

std::string render_keyvalue(const Report& report) {
    std::ostringstream out;
    auto kv = [&](const char* key, const std::string& value) { out << key << '=' << value << '\n'; };
    kv("dataset", report.dataset);
    kv("method", report.method);
    kv("seed", report.seed ? std::to_string(*report.seed) : "");
    kv("config_hash", report.config_hash);
    kv("evaluations", std::to_string(report.evaluations));
    kv("converged", report.converged ? "true" : "false");
    kv("note", report.note);
    kv("v0", format_exact(report.params.v0));
    kv("vbar", format_exact(report.params.vbar));
    kv("eta", format_exact(report.params.eta));
    kv("rho", format_exact(report.params.rho));
    kv("a", format_exact(report.params.a));
    kv("objective", format_exact(report.objective));
    kv("avg_abs_distance", format_exact(report.avg_abs_distance));
    kv("mean_half_spread", format_exact(report.mean_half_spread));
    kv("within_spread_count", std::to_string(report.within_spread_count));
    kv("n_options", std::to_string(report.rows.size()));
    kv("accepted", report.accepted ? "true" : "false");
    out << '\n' << "id,mid,model,abs_diff,within_spread\n";
    for (const auto& row : report.rows) {
        out << row.id << ',' << format_exact(row.mid) << ',' << format_exact(row.model) << ','
            << format_exact(row.abs_diff) << ',' << (row.within_spread ? "true" : "false") << '\n';
    }
    return out.str();
}

} // namespace hestoncal
