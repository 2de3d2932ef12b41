// hestoncal: price European calls under Black-Scholes / Heston and calibrate
// Heston parameters to option quotes.
//
//   hestoncal price bsm    --s0 100 --sigma 0.2 --r 0.02 --t 1 --k 100
//   hestoncal price heston --s0 1 --v0 0.16 --vbar 0.16 --a 1 --eta 2 --rho -0.8 --r 0 --t 10 --k 2
//   hestoncal calibrate --data D1 --method local [--out report.txt]
//   hestoncal calibrate --data quotes.txt --method global --seed 7

#include "hestoncal/calibrate.hpp"
#include "hestoncal/data.hpp"
#include "hestoncal/error.hpp"
#include "hestoncal/pricer.hpp"
#include "hestoncal/report.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace hestoncal;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

bool is_usage_error(ErrorKind kind) {
    return kind == ErrorKind::InvalidArgument || kind == ErrorKind::DegenerateParams || kind == ErrorKind::ParseError ||
           kind == ErrorKind::EmptyFile;
}

void print_price(const PriceBreakdown& b) {
    std::cout << "price " << format_fixed(b.price, 4) << '\n'
              << "pi1   " << format_exact(b.pi1) << '\n'
              << "pi2   " << format_exact(b.pi2) << '\n';
}

struct PriceArgs {
    double s0 = 0.0;
    double sigma = 0.0;
    double v0 = 0.0;
    double vbar = 0.0;
    double a = 0.0;
    double eta = 0.0;
    double rho = 0.0;
    double r = 0.0;
    double t = 0.0;
    double k = 0.0;
};

struct CalibrateArgs {
    std::string data;
    std::string method;
    std::optional<std::uint64_t> seed;
    std::vector<double> x0;
    std::vector<double> bounds;
    std::size_t max_evals = 20000;
    std::size_t max_iterations = 400;
    std::size_t threads = 1;
    std::string out;
};

int run_calibrate(const CalibrateArgs& args, const QuadratureConfig& q) {
    CalibrationConfig cfg;
    if (args.method == "global") {
        cfg.method = CalibrationMethod::Global;
    }
    cfg.seed = args.seed;
    cfg.max_evaluations = args.max_evals;
    cfg.local.max_iterations = args.max_iterations;
    cfg.threads = args.threads;
    if (!args.x0.empty()) {
        cfg.x0 = OptVector::from_array({args.x0[0], args.x0[1], args.x0[2], args.x0[3], args.x0[4]});
    }
    if (!args.bounds.empty()) {
        const auto& b = args.bounds;
        cfg.lower = OptVector::from_array({b[0], b[1], b[2], b[3], b[4]});
        cfg.upper = OptVector::from_array({b[5], b[6], b[7], b[8], b[9]});
    }
    cfg.validate();

    std::vector<MarketQuote> quotes;
    std::string label = args.data;
    if (const auto id = dataset_from_name(args.data)) {
        quotes = builtin_dataset(*id);
        label = std::string(dataset_name(*id));
    } else {
        quotes = load_quotes(args.data);
    }

    CalibrationResult result = calibrate(quotes, cfg, q);
    int code = kExitOk;
    if (!result.converged) {
        result.accepted = false;
        result.note = "optimizer did not converge: " + result.note;
        code = kExitNumeric;
    }

    const Report report = make_report(result, label, quotes, cfg, q);
    std::cout << render_table(report);
    if (!args.out.empty()) {
        std::ofstream file(args.out, std::ios::binary);
        if (!file) {
            throw Error(ErrorKind::InvalidArgument, "cannot write " + args.out);
        }
        file << render_keyvalue(report);
    }
    std::fprintf(stderr, "elapsed %.3f s\n", result.elapsed);
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heston / Black-Scholes call pricing and Heston calibration"};
    app.require_subcommand(1);
    app.fallthrough();

    QuadratureConfig q;
    app.add_option("--upper-limit", q.upper_limit, "Truncation point of the inversion integrals")
        ->check(CLI::PositiveNumber);

    PriceArgs pa;
    auto* price = app.add_subcommand("price", "Price a European call");
    price->require_subcommand(1);
    price->fallthrough();

    auto* bsm = price->add_subcommand("bsm", "Black-Scholes via characteristic-function inversion");
    bsm->add_option("--s0", pa.s0, "Spot")->required();
    bsm->add_option("--sigma", pa.sigma, "Volatility")->required();
    bsm->add_option("--r", pa.r, "Risk-free rate")->required();
    bsm->add_option("--t", pa.t, "Maturity in years")->required();
    bsm->add_option("--k", pa.k, "Strike")->required();

    auto* heston = price->add_subcommand("heston", "Heston via characteristic-function inversion");
    heston->add_option("--s0", pa.s0, "Spot")->required();
    heston->add_option("--v0", pa.v0, "Initial variance")->required();
    heston->add_option("--vbar", pa.vbar, "Long-run variance")->required();
    heston->add_option("--a", pa.a, "Mean-reversion speed")->required();
    heston->add_option("--eta", pa.eta, "Volatility of variance")->required();
    heston->add_option("--rho", pa.rho, "Correlation")->required();
    heston->add_option("--r", pa.r, "Risk-free rate")->required();
    heston->add_option("--t", pa.t, "Maturity in years")->required();
    heston->add_option("--k", pa.k, "Strike")->required();

    CalibrateArgs ca;
    auto* cal = app.add_subcommand("calibrate", "Calibrate Heston parameters to quotes");
    cal->add_option("--data", ca.data, "Quote file, or D1 / D2 / D3")->required();
    cal->add_option("--method", ca.method, "local or global")
        ->required()
        ->check(CLI::IsMember({"local", "global"}));
    cal->add_option("--seed", ca.seed, "RNG seed (required for global)");
    cal->add_option("--x0", ca.x0, "Initial guess: v0 vbar eta rho feller_slack")->expected(5);
    cal->add_option("--bounds", ca.bounds, "Lower then upper bounds, 5 values each")->expected(10);
    cal->add_option("--max-evals", ca.max_evals, "Annealing evaluation budget")->check(CLI::Range(2, 100000000));
    cal->add_option("--max-iterations", ca.max_iterations, "Local optimizer iteration limit")
        ->check(CLI::PositiveNumber);
    cal->add_option("--threads", ca.threads, "Pricing threads per objective call (0 = all cores)");
    cal->add_option("--out", ca.out, "Write a key=value / CSV report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const CLI::App* sub = &app;
        for (auto* s : {bsm, heston, price, cal}) {
            if (s->parsed()) {
                sub = s;
                break;
            }
        }
        std::cerr << sub->help();
        return kExitUsage;
    }

    if (cal->parsed() && ca.method == "global" && !ca.seed) {
        std::cerr << "error: --method global requires --seed\n\n" << cal->help();
        return kExitUsage;
    }

    try {
        if (bsm->parsed()) {
            print_price(price_call_bsm({pa.s0, pa.sigma, pa.r, pa.t}, pa.k, q));
            return kExitOk;
        }
        if (heston->parsed()) {
            print_price(price_call_heston({pa.v0, pa.vbar, pa.a, pa.eta, pa.rho}, {pa.s0, pa.k, pa.r, pa.t}, q));
            return kExitOk;
        }
        return run_calibrate(ca, q);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_usage_error(e.kind()) ? kExitUsage : kExitNumeric;
    }
}
