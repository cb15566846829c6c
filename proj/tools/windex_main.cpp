#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <sstream>

#include "windex/acceptance.hpp"
#include "windex/json_io.hpp"
#include "windex/toeplitz.hpp"
#include "windex/winding.hpp"
#include "windex/zmodule.hpp"

namespace {

using windex::io::json;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitParse = 2;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path);
        if (!out) throw windex::ParseError("cannot open output file: " + output_path);
        out << text;
    }
}

// FNV-1a over the raw bytes of every input that influenced the run.
struct Digest {
    std::uint64_t state = 14695981039346656037ull;

    void mix(const std::string& bytes) {
        for (unsigned char c : bytes) {
            state ^= c;
            state *= 1099511628211ull;
        }
    }

    void mix_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw windex::ParseError("cannot open input file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        mix(buf.str());
    }

    std::string hex() const {
        std::ostringstream os;
        os << std::hex << std::setfill('0') << std::setw(16) << state;
        return os.str();
    }
};

windex::TwistedStrategy parse_strategy(const std::string& s) {
    if (s == "auto") return windex::TwistedStrategy::Auto;
    if (s == "monomial") return windex::TwistedStrategy::Monomial;
    if (s == "neumann") return windex::TwistedStrategy::Neumann;
    throw windex::ParseError("unknown strategy '" + s + "'");
}

windex::Morphism parse_morphism(const std::string& s) {
    if (s == "quotient") return windex::Morphism::heisenberg_quotient();
    if (s.rfind("eval:", 0) == 0) {
        try {
            return windex::Morphism::evaluation_at(std::stoi(s.substr(5)));
        } catch (const std::exception&) {
            throw windex::ParseError("bad evaluation point in --morphism " + s);
        }
    }
    throw windex::ParseError("--morphism must be 'quotient' or 'eval:<index>'");
}

std::string suite_csv(const std::vector<windex::acceptance::CriterionResult>& results,
                      bool with_timing) {
    std::ostringstream os;
    os << "id,name,pass,max_residual,millis\n";
    for (const auto& r : results) {
        os << r.id << ",\"" << r.name << "\"," << (r.pass ? "true" : "false") << ","
           << r.max_residual << ",";
        if (with_timing) os << r.millis;
        os << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"windex: centre-valued winding operators and Toeplitz indices"};
    app.require_subcommand(1);

    std::string input, output, fmt = "json", strategy = "auto", morphism_spec;
    std::string input_b, inverse_path, symbol_arg;
    double tolerance = 1e-12, mu = 0.0, step = 1e-3;
    int grid = 256, lab_k = 2, lab_d = 2, trials = 200;
    std::uint64_t seed = 42;
    bool with_timing = false;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--output", output, "write the report here instead of stdout");
        cmd->add_option("--format", fmt, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--tolerance", tolerance, "tolerance override");
        cmd->add_flag("--timing", with_timing,
                      "record wall-clock times (off by default so reruns are byte-identical)");
    };

    auto* wind_cmd = app.add_subcommand("wind", "winding operator of an element");
    wind_cmd->add_option("--input", input, "element JSON file")->required();
    wind_cmd->add_option("--strategy", strategy, "auto|monomial|neumann");
    add_io(wind_cmd);

    auto* index_cmd = app.add_subcommand("index", "Toeplitz index of an element");
    index_cmd->add_option("--input", input, "element JSON file")->required();
    index_cmd->add_option("--strategy", strategy, "auto|monomial|neumann");
    add_io(index_cmd);

    auto* fiber_cmd = app.add_subcommand("fiber", "index fibering check under a morphism");
    fiber_cmd->add_option("--input", input, "element JSON file")->required();
    fiber_cmd->add_option("--morphism", morphism_spec, "quotient|eval:<index>")->required();
    add_io(fiber_cmd);

    auto* lab_cmd = app.add_subcommand("lab", "finite Z-Hilbert-algebra laboratory");
    lab_cmd->add_option("--k", lab_k, "points of X");
    lab_cmd->add_option("--d", lab_d, "matrix size");
    lab_cmd->add_option("--trials", trials, "randomized trials");
    lab_cmd->add_option("--seed", seed, "RNG seed");
    add_io(lab_cmd);

    auto* tt_cmd = app.add_subcommand("toeplitz-trace", "trace of [T_a, T_b]");
    tt_cmd->add_option("--a", input, "symbol JSON file for a")->required();
    tt_cmd->add_option("--b", input_b, "symbol JSON file for b")->required();
    add_io(tt_cmd);

    auto* ni_cmd = app.add_subcommand("numeric-index", "index via the commutator oracle");
    ni_cmd->add_option("--symbol", input, "symbol JSON file")->required();
    ni_cmd->add_option("--inverse", inverse_path, "inverse symbol JSON file")->required();
    add_io(ni_cmd);

    auto* nw_cmd = app.add_subcommand("numeric-wind", "grid-quadrature winding oracle");
    nw_cmd->add_option("--symbol", symbol_arg, "expression like \"z^2*w\" or a JSON file")
        ->required();
    nw_cmd->add_option("--mu", mu, "flow weight");
    nw_cmd->add_option("--grid", grid, "grid size n (n x n points)");
    nw_cmd->add_option("--step", step, "finite-difference step h");
    add_io(nw_cmd);

    auto* validate_cmd = app.add_subcommand("validate", "schema validation only");
    validate_cmd->add_option("--input", input, "element JSON file")->required();
    add_io(validate_cmd);

    auto* suite_cmd = app.add_subcommand("suite", "full acceptance battery");
    suite_cmd->add_option("--seed", seed, "RNG seed");
    add_io(suite_cmd);

    CLI11_PARSE(app, argc, argv);

    // WINDEX_THREADS caps internal parallelism; all current kernels are
    // single-threaded, so the value is recorded but has no effect.
    const char* threads_env = std::getenv("WINDEX_THREADS");

    const auto t0 = std::chrono::steady_clock::now();
    try {
        json results = json::object();
        json residuals = json::object();
        Digest digest;
        int exit_code = kExitOk;

        if (wind_cmd->parsed() || index_cmd->parsed()) {
            digest.mix_file(input);
            digest.mix(strategy);
            const auto element = windex::io::twisted_from_json(windex::io::load_json_file(input));
            const auto strat = parse_strategy(strategy);
            const auto r = wind_cmd->parsed()
                               ? windex::wind(element, strat, tolerance)
                               : windex::toeplitz_index(element, strat, tolerance);
            results["value"] = windex::io::centre_to_json(r.value);
            results["residual"] = r.inversion_residual;
            results["strategy"] = to_string(r.strategy_used);
            residuals["inversion"] = r.inversion_residual;
        } else if (fiber_cmd->parsed()) {
            digest.mix_file(input);
            digest.mix(morphism_spec);
            const auto element = windex::io::twisted_from_json(windex::io::load_json_file(input));
            const auto m = parse_morphism(morphism_spec);
            const double tol = tolerance < 1e-9 ? 1e-9 : tolerance;
            const auto rep = windex::check_index_fibering(m, element, tol);
            results["lhs"] = windex::io::centre_to_json(rep.lhs);
            results["rhs"] = windex::io::centre_to_json(rep.rhs);
            results["pass"] = rep.pass;
            residuals["fibering_deviation"] = rep.deviation;
            if (!rep.pass) exit_code = kExitComputation;
        } else if (lab_cmd->parsed()) {
            digest.mix(std::to_string(lab_k) + "," + std::to_string(lab_d) + "," +
                       std::to_string(trials) + "," + std::to_string(seed));
            const windex::zlab::FiniteZAlgebra alg{lab_k, lab_d};
            const auto rep = windex::zlab::run_lab(alg, trials, seed);
            json checks = json::object();
            for (const auto& res : rep.results) {
                json entry;
                entry["pass"] = res.pass;
                entry["max_residual"] = res.max_residual;
                checks[res.name] = std::move(entry);
                residuals[res.name] = res.max_residual;
            }
            results["checks"] = std::move(checks);
            results["all_pass"] = rep.all_pass();
            if (!rep.all_pass()) exit_code = kExitComputation;
        } else if (tt_cmd->parsed()) {
            digest.mix_file(input);
            digest.mix_file(input_b);
            const auto a = windex::io::banded_from_json(windex::io::load_json_file(input), "a");
            const auto b =
                windex::io::banded_from_json(windex::io::load_json_file(input_b), "b");
            const auto tr = windex::toeplitz::commutator_trace(a, b);
            results["trace"] = json::array({tr.real(), tr.imag()});
        } else if (ni_cmd->parsed()) {
            digest.mix_file(input);
            digest.mix_file(inverse_path);
            const auto a =
                windex::io::banded_from_json(windex::io::load_json_file(input), "symbol");
            const auto ainv = windex::io::banded_from_json(
                windex::io::load_json_file(inverse_path), "inverse");
            residuals["symbol_inverse"] = windex::toeplitz::symbol_inverse_residual(a, ainv);
            const auto idx = windex::toeplitz::numeric_index(a, ainv);
            results["index"] = json::array({idx.real(), idx.imag()});
        } else if (nw_cmd->parsed()) {
            windex::toeplitz::GridSymbol f;
            if (symbol_arg.find(".json") != std::string::npos) {
                digest.mix_file(symbol_arg);
                f = windex::io::grid_symbol_from_json(windex::io::load_json_file(symbol_arg),
                                                      mu);
            } else {
                digest.mix(symbol_arg);
                f = windex::io::grid_symbol_from_expr(symbol_arg, mu);
            }
            digest.mix(std::to_string(mu) + "," + std::to_string(grid) + "," +
                       std::to_string(step));
            const auto v = windex::toeplitz::numeric_wind(f, step, grid);
            results["wind"] = json::array({v.real(), v.imag()});
            results["grid"] = grid;
            results["step"] = step;
        } else if (validate_cmd->parsed()) {
            digest.mix_file(input);
            windex::io::twisted_from_json(windex::io::load_json_file(input));
            results["status"] = "ok";
        } else if (suite_cmd->parsed()) {
            digest.mix(std::to_string(seed));
            const auto suite = windex::acceptance::run_all(seed);
            bool all_pass = true;
            for (const auto& r : suite) all_pass = all_pass && r.pass;
            if (!all_pass) exit_code = kExitComputation;
            if (fmt == "csv") {
                emit(suite_csv(suite, with_timing), output);
                return exit_code;
            }
            json arr = json::array();
            for (const auto& r : suite) {
                json entry;
                entry["id"] = r.id;
                entry["name"] = r.name;
                entry["pass"] = r.pass;
                entry["max_residual"] = r.max_residual;
                entry["millis"] = with_timing ? json(r.millis) : json(nullptr);
                if (!r.detail.empty()) entry["detail"] = r.detail;
                residuals[r.name] = r.max_residual;
                arr.push_back(std::move(entry));
            }
            results["criteria"] = std::move(arr);
            results["all_pass"] = all_pass;
        }

        const auto t1 = std::chrono::steady_clock::now();
        json report;
        report["command"] = app.get_subcommands().front()->get_name();
        report["inputs_digest"] = digest.hex();
        report["results"] = std::move(results);
        report["residuals"] = std::move(residuals);
        json timing;
        timing["millis"] = with_timing
                               ? json(std::chrono::duration<double, std::milli>(t1 - t0).count())
                               : json(nullptr);
        if (threads_env) timing["threads_cap"] = std::atoi(threads_env);
        report["timing"] = std::move(timing);
        emit(report.dump(2) + "\n", output);
        return exit_code;
    } catch (const windex::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const windex::ComputationError& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
}
