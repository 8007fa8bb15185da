// nblsim: command-line front end for the noise-based-logic toolkit.
// Subcommands: rng (bit generation), test (randomness battery),
// nbl (state construction, gates, measurement), bench (scaling table).

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nbl/bitstream_io.hpp"
#include "nbl/brute_force.hpp"
#include "nbl/correlator.hpp"
#include "nbl/extractor.hpp"
#include "nbl/gates.hpp"
#include "nbl/hyperspace.hpp"
#include "nbl/seedmix.hpp"
#include "nbl/state.hpp"
#include "nbl/state_io.hpp"
#include "nbl/stat_tests.hpp"
#include "nbl/version.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("NBLSIM_SEED");
    if (s == nullptr || *s == '\0') return std::nullopt;
    try {
        std::size_t used = 0;
        const std::string text(s);
        const std::uint64_t v = std::stoull(text, &used, 0);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("NBLSIM_SEED is not a 64-bit integer");
    }
}

/// Seed priority: command line, then NBLSIM_SEED, then a file-provided
/// value, then the hard default.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& cli,
                           const std::optional<std::uint64_t>& from_file,
                           std::uint64_t fallback) {
    if (cli) return *cli;
    if (auto e = env_seed()) return *e;
    if (from_file) return *from_file;
    return fallback;
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    nbl::atomic_write(out_path, text);
    std::cout << "wrote " << out_path << "\n";
}

ordered_json ops_json(const nbl::OpCount& ops) {
    return ordered_json{{"mul", ops.mul}, {"add", ops.add}, {"total", ops.total()}};
}

ordered_json complex_json(const std::complex<double>& z) {
    return ordered_json::array({z.real(), z.imag()});
}

// ---------------------------------------------------------------- rng ----

struct RngArgs {
    std::string out;
    std::uint64_t bits = 1000000;
    int generators = 1;
    double rho = 0.9;
    double sigma = 1.0;
    int decimation = 0;
    std::optional<std::uint64_t> seed;
    bool raw_zero = false;
};

int cmd_rng(const RngArgs& a) {
    if (a.generators < 1) throw std::invalid_argument("--generators must be >= 1");
    const std::uint64_t master = resolve_seed(a.seed, std::nullopt, 0);

    std::vector<nbl::BitStream> streams;
    streams.reserve(static_cast<std::size_t>(a.generators));
    for (int g = 0; g < a.generators; ++g) {
        nbl::ExtractorConfig cfg;
        cfg.ou.rho = a.rho;
        cfg.ou.sigma = a.sigma;
        cfg.ou.seed = nbl::stream_seed(master, nbl::kGeneratorDomain,
                                       static_cast<std::uint64_t>(g));
        cfg.decimation = a.decimation;
        cfg.skip_zero = !a.raw_zero;
        streams.push_back(nbl::generate(cfg, a.bits));
    }
    const nbl::BitStream combined =
        a.generators == 1 ? std::move(streams.front()) : nbl::xor_combine(streams);

    ordered_json config{{"subcommand", "rng"},
                        {"version", std::string(nbl::kVersion)},
                        {"seed", master},
                        {"bits", a.bits},
                        {"generators", a.generators},
                        {"rho", a.rho},
                        {"sigma", a.sigma},
                        {"decimation", a.decimation},
                        {"skip_zero", !a.raw_zero},
                        {"out", a.out}};
    const nlohmann::json config_plain = config;
    nbl::write_bitstream_file(a.out, combined, &config_plain);

    std::uint64_t zeros = 0;
    for (const auto& s : combined.sources) zeros += s.zero_events;
    std::cout << "wrote " << combined.size() << " bits to " << a.out << " (generators="
              << a.generators << ", zero events=" << zeros << ")\n";
    return kExitPass;
}

// --------------------------------------------------------------- test ----

struct TestArgs {
    std::string in;
    double alpha = nbl::kDefaultAlpha;
    std::string report;
};

int cmd_test(const TestArgs& a) {
    const nbl::BitStream stream = nbl::read_bitstream_file(a.in);
    if (stream.size() < 100)
        throw std::invalid_argument("input holds " + std::to_string(stream.size()) +
                                    " bits; the battery needs at least 100");

    const nbl::BatteryReport battery = nbl::run_battery(stream.bits, a.alpha);

    ordered_json report{{"version", std::string(nbl::kVersion)},
                        {"config", ordered_json{{"subcommand", "test"},
                                                {"in", a.in},
                                                {"alpha", a.alpha},
                                                {"report", a.report}}},
                        {"n_bits", stream.size()}};
    const ordered_json body = nbl::battery_report_json(battery);
    report["results"] = body.at("results");
    report["verdict"] = body.at("verdict");

    emit_text(report.dump(2) + "\n", a.report);
    return battery.verdict ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- nbl ----

struct NblArgs {
    std::string state_file;
    std::string gate_file;
    std::vector<std::string> measure;
    std::uint64_t steps = 4096;
    std::optional<std::uint64_t> seed;
    double threshold = 0.5;
    std::string exec = "parallel";
    bool extended = false;
    std::string report;
};

template <class Real>
nbl::Gate2x2<Real> widen_gate(const nbl::Gate2x2<double>& g) {
    if constexpr (std::is_same_v<Real, double>) {
        return g;
    } else {
        if (g.name == "X" || g.name == "Z" || g.name == "H" || g.name == "S" || g.name == "T")
            return nbl::gate_by_name<Real>(g.name);
        using C = std::complex<Real>;
        auto c = [](const std::complex<double>& z) {
            return C(static_cast<Real>(z.real()), static_cast<Real>(z.imag()));
        };
        return {g.name, c(g.g00), c(g.g01), c(g.g10), c(g.g11)};
    }
}

template <class Real>
ordered_json run_product(const nbl::NoiseBitSystem& sys, const nbl::StateDescription& desc,
                         const nbl::GateSequence& gates, const std::vector<nbl::BitString>& probes,
                         const NblArgs& a, nbl::Exec exec) {
    auto state = nbl::build_product_state<Real>(desc);

    nbl::OpCount gate_ops;
    for (const auto& op : gates)
        nbl::apply_gate(state, op.target, widen_gate<Real>(op.gate), gate_ops);

    nbl::OpCount per_step;
    nbl::superposition_value(sys, state, 0, per_step);

    ordered_json out;
    out["per_step_ops"] = ops_json(per_step);
    out["gates_applied"] = gates.size();
    out["gate_ops"] = ops_json(gate_ops);
    out["normalized"] = state.is_normalized(Real(1e-9));

    ordered_json measurements = ordered_json::array();
    for (const auto& probe : probes) {
        nbl::OpCount ops;
        const auto exact = nbl::amplitude_exact(state, probe, ops);
        const auto est = nbl::amplitude_estimate(sys, state, probe, a.steps, ops, exec,
                                                 a.threshold);
        measurements.push_back(
            ordered_json{{"string", probe.str()},
                         {"exact", complex_json({static_cast<double>(exact.real()),
                                                 static_cast<double>(exact.imag())})},
                         {"estimate", complex_json(est.value)},
                         {"std_error", est.std_error},
                         {"bound", est.bound},
                         {"decision", est.decision},
                         {"ops", ops_json(ops)}});
    }
    out["measurements"] = std::move(measurements);
    return out;
}

ordered_json run_explicit(const nbl::NoiseBitSystem& sys, const nbl::StateDescription& desc,
                          const std::vector<nbl::BitString>& probes, const NblArgs& a,
                          nbl::Exec exec) {
    const nbl::ExplicitState state(desc.n, desc.members);

    nbl::OpCount per_step;
    nbl::superposition_value(sys, state, 0, per_step);

    ordered_json out;
    out["per_step_ops"] = ops_json(per_step);
    out["gates_applied"] = 0;
    out["gate_ops"] = ops_json(nbl::OpCount{});

    ordered_json measurements = ordered_json::array();
    for (const auto& probe : probes) {
        const bool member =
            std::find(state.members.begin(), state.members.end(), probe) != state.members.end();
        nbl::OpCount ops;
        const auto est =
            nbl::measure_membership(sys, state, probe, a.steps, ops, exec, a.threshold);
        measurements.push_back(ordered_json{{"string", probe.str()},
                                            {"exact", complex_json({member ? 1.0 : 0.0, 0.0})},
                                            {"estimate", complex_json(est.value)},
                                            {"std_error", est.std_error},
                                            {"bound", est.bound},
                                            {"decision", est.decision},
                                            {"ops", ops_json(ops)}});
    }
    out["measurements"] = std::move(measurements);
    return out;
}

int cmd_nbl(const NblArgs& a) {
    const nbl::StateDescription desc = nbl::load_state_file(a.state_file);
    const std::uint64_t master = resolve_seed(a.seed, desc.master_seed, 0);

    nbl::GateSequence gates;
    if (!a.gate_file.empty()) gates = nbl::load_gate_file(a.gate_file);
    if (!gates.empty() && desc.kind == nbl::StateDescription::Kind::explicit_set)
        throw std::invalid_argument("gates act on coefficient pairs; explicit states have none");
    for (const auto& op : gates)
        if (op.target >= desc.n) throw std::invalid_argument("gate target out of range");

    std::vector<nbl::BitString> probes;
    for (const auto& text : a.measure) {
        probes.push_back(nbl::BitString::parse(text));
        if (probes.back().size() != desc.n)
            throw std::invalid_argument("--measure string length != n");
    }

    nbl::Exec exec;
    if (a.exec == "serial")
        exec = nbl::Exec::serial;
    else if (a.exec == "parallel")
        exec = nbl::Exec::parallel;
    else
        throw std::invalid_argument("--exec must be serial or parallel");

    const nbl::NoiseBitSystem sys(desc.n, master);

    ordered_json report{
        {"version", std::string(nbl::kVersion)},
        {"config", ordered_json{{"subcommand", "nbl"},
                                {"state", a.state_file},
                                {"gates", a.gate_file},
                                {"measure", a.measure},
                                {"steps", a.steps},
                                {"seed", master},
                                {"threshold", a.threshold},
                                {"exec", a.exec},
                                {"extended", a.extended},
                                {"report", a.report}}},
        {"n", desc.n},
        {"master_seed", master}};

    ordered_json body;
    if (desc.kind == nbl::StateDescription::Kind::explicit_set) {
        report["kind"] = "explicit";
        body = run_explicit(sys, desc, probes, a, exec);
    } else {
        report["kind"] =
            desc.kind == nbl::StateDescription::Kind::product ? "product" : "full_superposition";
        body = a.extended ? run_product<long double>(sys, desc, gates, probes, a, exec)
                          : run_product<double>(sys, desc, gates, probes, a, exec);
    }
    for (auto& [key, value] : body.items()) report[key] = value;

    emit_text(report.dump(2) + "\n", a.report);
    return kExitPass;
}

// -------------------------------------------------------------- bench ----

struct BenchArgs {
    int max_n = 64;
    std::uint64_t steps = 4096;
    std::optional<std::uint64_t> seed;
    std::string out;
};

std::int64_t time_measure_ns(const nbl::NoiseBitSystem& sys,
                             const nbl::ProductFormState<double>& state,
                             const nbl::BitString& probe, std::uint64_t steps, nbl::Exec exec) {
    nbl::OpCount ops;
    const auto start = std::chrono::steady_clock::now();
    (void)nbl::measure_membership(sys, state, probe, steps, ops, exec);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
}

int cmd_bench(const BenchArgs& a) {
    if (a.max_n < 1 || a.max_n > 100000)
        throw std::invalid_argument("--max-n must be in [1, 100000]");
    const std::uint64_t master = resolve_seed(a.seed, std::nullopt, 0);

    std::vector<int> grid;
    for (int n = 1; n < a.max_n; n *= 2) grid.push_back(n);
    grid.push_back(a.max_n);

    const ordered_json config{{"subcommand", "bench"}, {"version", std::string(nbl::kVersion)},
                              {"max_n", a.max_n},      {"steps", a.steps},
                              {"seed", master},        {"out", a.out}};

    std::ostringstream csv;
    csv << "# nblsim bench " << nbl::kVersion << "\n";
    csv << "# config " << config.dump() << "\n";
    csv << "n,superposition_ops_per_step,gate_ops,brute_force_ops,wall_ns_serial,wall_ns_"
           "parallel\n";

    for (const int n : grid) {
        const auto un = static_cast<std::size_t>(n);
        const nbl::NoiseBitSystem sys(un, master);
        const auto full = nbl::ProductFormState<double>::full_superposition(un);

        nbl::OpCount per_step;
        nbl::superposition_value(sys, full, 0, per_step);

        auto scratch = full;
        nbl::OpCount gate_ops;
        nbl::apply_gate(scratch, 0, nbl::gate_by_name<double>("X"), gate_ops);

        std::string brute_col;
        if (n <= 16) {
            nbl::OpCount brute_ops;
            const nbl::GateSequence seq{{nbl::gate_by_name<double>("X"), 0}};
            (void)nbl::brute_force_from_full(un, seq, brute_ops);
            brute_col = std::to_string(brute_ops.total());
        }

        const nbl::BitString probe(un);
        const auto ns_serial = time_measure_ns(sys, full, probe, a.steps, nbl::Exec::serial);
        const auto ns_parallel = time_measure_ns(sys, full, probe, a.steps, nbl::Exec::parallel);

        csv << n << ',' << per_step.total() << ',' << gate_ops.total() << ',' << brute_col << ','
            << ns_serial << ',' << ns_parallel << '\n';
    }

    emit_text(csv.str(), a.out);
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise-based logic simulator and RNG toolkit"};
    app.set_version_flag("--version", std::string(nbl::kVersion));
    app.require_subcommand(1);

    RngArgs rng_args;
    auto* rng = app.add_subcommand("rng", "generate random bits from the sign-XOR pipeline");
    rng->add_option("--out", rng_args.out, "output bitstream file")->required();
    rng->add_option("--bits", rng_args.bits, "number of bits to emit");
    rng->add_option("--generators", rng_args.generators, "XOR-combined generator count");
    rng->add_option("--rho", rng_args.rho, "OU one-step autocorrelation");
    rng->add_option("--sigma", rng_args.sigma, "OU stationary standard deviation");
    rng->add_option("--decimation", rng_args.decimation, "steps per emitted bit (0 = auto)");
    rng->add_option("--seed", rng_args.seed, "master seed (default: NBLSIM_SEED or 0)");
    rng->add_flag("--raw-zero", rng_args.raw_zero, "emit on zero events instead of resampling");

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "run the randomness battery on a bitstream file");
    test->add_option("--in", test_args.in, "input bitstream file")->required();
    test->add_option("--alpha", test_args.alpha, "per-test significance level");
    test->add_option("--report", test_args.report, "write the JSON report here (default stdout)");

    NblArgs nbl_args;
    auto* nblc = app.add_subcommand("nbl", "build a state, apply gates, measure strings");
    nblc->add_option("--state", nbl_args.state_file, "state description JSON")->required();
    nblc->add_option("--gates", nbl_args.gate_file, "gate sequence JSON");
    nblc->add_option("--measure", nbl_args.measure, "bit strings to measure");
    nblc->add_option("--steps", nbl_args.steps, "correlator observation steps M");
    nblc->add_option("--seed", nbl_args.seed, "master seed override");
    nblc->add_option("--threshold", nbl_args.threshold, "decision threshold");
    nblc->add_option("--exec", nbl_args.exec, "kernel: serial | parallel");
    nblc->add_flag("--extended", nbl_args.extended, "extended-precision coefficients");
    nblc->add_option("--report", nbl_args.report, "write the JSON report here (default stdout)");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "emit the op-count / wall-time scaling table");
    bench->add_option("--max-n", bench_args.max_n, "largest noise-bit count");
    bench->add_option("--steps", bench_args.steps, "steps per wall-time sample");
    bench->add_option("--seed", bench_args.seed, "master seed");
    bench->add_option("--out", bench_args.out, "write the CSV here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (rng->parsed()) return cmd_rng(rng_args);
        if (test->parsed()) return cmd_test(test_args);
        if (nblc->parsed()) return cmd_nbl(nbl_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
