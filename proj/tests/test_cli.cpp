#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"

#include <nlohmann/json.hpp>

#include "nbl/bitstream_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBin = NBLSIM_PATH;

fs::path work_dir() {
    static const fs::path dir = [] {
        const auto d = fs::temp_directory_path() / "nblsim_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path fresh_dir(const std::string& name) {
    const auto d = work_dir() / name;
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run_cli(const std::string& args, const std::string& env_prefix = "",
            const fs::path& cwd = {}) {
    static int counter = 0;
    const fs::path out = work_dir() / ("stdout." + std::to_string(counter));
    const fs::path err = work_dir() / ("stderr." + std::to_string(counter));
    ++counter;
    std::string cmd;
    if (!cwd.empty()) cmd += "cd " + cwd.string() + " && ";
    cmd += env_prefix + kBin + " " + args + " > " + out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

json sidecar(const fs::path& bits) { return json::parse(slurp(bits.string() + ".json")); }

void write_constant_stream(const fs::path& path, std::size_t n_bits) {
    nbl::BitStream s;
    s.bits.assign(n_bits, 0);
    nbl::write_bitstream_file(path, s);
}

std::vector<std::string> csv_rows(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

std::vector<std::string> split_csv(const std::string& row) {
    std::vector<std::string> fields;
    std::istringstream in(row);
    std::string f;
    while (std::getline(in, f, ',')) fields.push_back(f);
    if (!row.empty() && row.back() == ',') fields.push_back("");
    return fields;
}

} // namespace

TEST_CASE("version flag exits cleanly") {
    const Run r = run_cli("--version");
    CHECK(r.code == 0);
    CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("rng").code == 2);                       // missing --out
    CHECK(run_cli("test --in x --alpha nope").code == 2);  // bad number
}

TEST_CASE("rng output is a pure function of its flags") {
    const auto d1 = fresh_dir("rng_det_a");
    const auto d2 = fresh_dir("rng_det_b");
    const std::string flags = "rng --out s.bits --bits 2048 --generators 2 --seed 99";
    CHECK(run_cli(flags, "", d1).code == 0);
    CHECK(run_cli(flags, "", d2).code == 0);
    CHECK(slurp(d1 / "s.bits") == slurp(d2 / "s.bits"));
    CHECK(slurp(d1 / "s.bits.json") == slurp(d2 / "s.bits.json"));
    CHECK(!slurp(d1 / "s.bits").empty());

    const json meta = sidecar(d1 / "s.bits");
    CHECK(meta.at("config").at("seed").get<std::uint64_t>() == 99);
    CHECK(meta.at("generators").size() == 2);
}

TEST_CASE("rng then test: the pipeline passes its own battery") {
    const auto d = fresh_dir("pipeline");
    const Run gen = run_cli("rng --out p.bits --bits 100000 --generators 2 --seed 20240815",
                            "", d);
    REQUIRE(gen.code == 0);
    CHECK(gen.out.find("wrote 100000 bits") != std::string::npos);

    const Run tst = run_cli("test --in p.bits --report p.json", "", d);
    CHECK(tst.code == 0);
    const json report = json::parse(slurp(d / "p.json"));
    CHECK(report.at("verdict") == "pass");
    CHECK(report.at("n_bits").get<std::size_t>() == 100000);
    CHECK(report.at("results").size() == 21);
}

TEST_CASE("a constant stream fails the battery with exit 1") {
    const auto d = fresh_dir("constant");
    write_constant_stream(d / "zeros.bits", 4096);
    const Run r = run_cli("test --in zeros.bits", "", d);
    CHECK(r.code == 1);
    const json report = json::parse(r.out);
    CHECK(report.at("verdict") == "fail");
    bool monobit_failed = false;
    for (const auto& t : report.at("results"))
        if (t.at("test") == "monobit") monobit_failed = !t.at("pass").get<bool>();
    CHECK(monobit_failed);
}

TEST_CASE("a truncated stream is a usage error, not a verdict") {
    const auto d = fresh_dir("truncated");
    write_constant_stream(d / "short.bits", 99);
    CHECK(run_cli("test --in short.bits", "", d).code == 2);
}

TEST_CASE("missing inputs exit with 3") {
    CHECK(run_cli("test --in /nonexistent/x.bits").code == 3);
    CHECK(run_cli("nbl --state /nonexistent/s.json").code == 3);
}

TEST_CASE("nbl: singleton membership reads exactly one") {
    const auto d = fresh_dir("singleton");
    spit(d / "s.json", R"({"n": 4, "kind": "explicit", "members": ["1010"]})");
    const Run r = run_cli("nbl --state s.json --measure 1010 --steps 256 --seed 5", "", d);
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("kind") == "explicit");
    CHECK(rep.at("per_step_ops").at("total").get<int>() == 3);
    const json& m = rep.at("measurements").at(0);
    CHECK(m.at("string") == "1010");
    CHECK(m.at("exact") == json::array({1.0, 0.0}));
    CHECK(m.at("estimate") == json::array({1.0, 0.0}));
    CHECK(m.at("std_error").get<double>() == 0.0);
    CHECK(m.at("decision").get<bool>());
}

TEST_CASE("nbl: full superposition costs 2N-1 per step") {
    const auto d = fresh_dir("full3");
    spit(d / "s.json", R"({"n": 3, "kind": "full_superposition", "master_seed": 11})");
    const Run r = run_cli("nbl --state s.json --measure 000 --steps 64", "", d);
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("kind") == "full_superposition");
    CHECK(rep.at("master_seed").get<std::uint64_t>() == 11);
    CHECK(rep.at("per_step_ops").at("total").get<int>() == 5);
    CHECK(rep.at("measurements").at(0).at("exact") == json::array({1.0, 0.0}));
}

TEST_CASE("nbl: Hadamard layer turns a basis string into 1/4 amplitudes") {
    const auto d = fresh_dir("hadamard");
    spit(d / "s.json",
         R"({"n": 4, "kind": "product", "master_seed": 321,
             "pairs": [[[1,0],[0,0]], [[1,0],[0,0]], [[1,0],[0,0]], [[1,0],[0,0]]]})");
    spit(d / "g.json",
         R"({"gates": [{"name":"H","target":0},{"name":"H","target":1},
                       {"name":"H","target":2},{"name":"H","target":3}]})");
    const Run r = run_cli("nbl --state s.json --gates g.json --measure 0110 --steps 4096", "", d);
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("normalized").get<bool>());
    CHECK(rep.at("gates_applied").get<int>() == 4);
    CHECK(rep.at("gate_ops").at("total").get<int>() == 24);
    CHECK(rep.at("per_step_ops").at("total").get<int>() == 15); // (3N-1) + N
    const json& m = rep.at("measurements").at(0);
    CHECK(m.at("exact").at(0).get<double>() == doctest::Approx(0.25).epsilon(1e-12));
    const double est = m.at("estimate").at(0).get<double>();
    const double se = m.at("std_error").get<double>();
    CHECK(se > 0.0);
    CHECK(std::abs(est - 0.25) < 5 * se);
    CHECK_FALSE(m.at("decision").get<bool>());
}

TEST_CASE("nbl: extended precision reports the same exact amplitudes") {
    const auto d = fresh_dir("extended");
    spit(d / "s.json",
         R"({"n": 2, "kind": "product", "master_seed": 9,
             "pairs": [[[1,0],[0,0]], [[1,0],[0,0]]]})");
    spit(d / "g.json", R"({"gates": [{"name":"H","target":0},{"name":"T","target":1}]})");
    const Run r = run_cli("nbl --state s.json --gates g.json --measure 00 --steps 64 --extended",
                          "", d);
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("measurements").at(0).at("exact").at(0).get<double>() ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("nbl: serial and parallel execution yield identical measurements") {
    const auto d = fresh_dir("exec");
    spit(d / "s.json", R"({"n": 5, "kind": "full_superposition", "master_seed": 77})");
    const Run a = run_cli("nbl --state s.json --measure 01010 --steps 5000 --exec serial",
                          "", d);
    const Run b = run_cli("nbl --state s.json --measure 01010 --steps 5000 --exec parallel",
                          "", d);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(json::parse(a.out).at("measurements") == json::parse(b.out).at("measurements"));
}

TEST_CASE("nbl usage errors") {
    const auto d = fresh_dir("nbl_usage");
    spit(d / "s.json", R"({"n": 3, "kind": "full_superposition"})");
    spit(d / "ex.json", R"({"n": 3, "kind": "explicit", "members": ["000"]})");
    spit(d / "bad_gate.json", R"({"gates": [{"name":"CNOT","target":0}]})");
    spit(d / "far_gate.json", R"({"gates": [{"name":"X","target":3}]})");
    spit(d / "bad_kind.json", R"({"n": 3, "kind": "wobbly"})");
    spit(d / "not_json.json", "{ this is not json");

    CHECK(run_cli("nbl --state s.json --gates bad_gate.json", "", d).code == 2);
    CHECK(run_cli("nbl --state s.json --gates far_gate.json", "", d).code == 2);
    CHECK(run_cli("nbl --state ex.json --gates far_gate.json", "", d).code == 2);
    CHECK(run_cli("nbl --state s.json --measure 0101", "", d).code == 2);
    CHECK(run_cli("nbl --state s.json --measure 000 --exec sideways", "", d).code == 2);
    CHECK(run_cli("nbl --state s.json --measure 000 --steps 0", "", d).code == 2);
    CHECK(run_cli("nbl --state bad_kind.json", "", d).code == 2);
    CHECK(run_cli("nbl --state not_json.json", "", d).code == 3);
}

TEST_CASE("reports are byte-for-byte reproducible") {
    const auto d1 = fresh_dir("repro_a");
    const auto d2 = fresh_dir("repro_b");
    for (const auto& d : {d1, d2}) {
        spit(d / "s.json", R"({"n": 4, "kind": "explicit", "members": ["0011", "1100"]})");
        REQUIRE(run_cli("nbl --state s.json --measure 0011 --measure 0000 --steps 2048 "
                        "--seed 1234 --report r.json", "", d).code == 0);
        REQUIRE(run_cli("rng --out b.bits --bits 32768 --seed 8", "", d).code == 0);
        REQUIRE(run_cli("test --in b.bits --report t.json", "", d).code == 0);
    }
    CHECK(slurp(d1 / "r.json") == slurp(d2 / "r.json"));
    CHECK(slurp(d1 / "t.json") == slurp(d2 / "t.json"));
    CHECK(!slurp(d1 / "r.json").empty());
}

TEST_CASE("bench: doubling grid with exact op columns") {
    const auto d = fresh_dir("bench");
    const Run r = run_cli("bench --max-n 200 --steps 16 --out b.csv", "", d);
    REQUIRE(r.code == 0);
    const std::string csv = slurp(d / "b.csv");
    CHECK(csv.find("# nblsim bench") != std::string::npos);
    const auto rows = csv_rows(csv);
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0] ==
          "n,superposition_ops_per_step,gate_ops,brute_force_ops,wall_ns_serial,wall_ns_parallel");

    long prev_n = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split_csv(rows[i]);
        REQUIRE(f.size() == 6);
        const long n = std::stol(f[0]);
        CHECK(n > prev_n);
        prev_n = n;
        CHECK(std::stol(f[1]) == 2 * n - 1);
        CHECK(std::stol(f[2]) == 6);
        if (n <= 16)
            CHECK(std::stoll(f[3]) == 3LL * (1LL << n));
        else
            CHECK(f[3].empty());
        CHECK(std::stoll(f[4]) > 0);
        CHECK(std::stoll(f[5]) > 0);
    }
    CHECK(prev_n == 200);
    CHECK(run_cli("bench --max-n 0", "", d).code == 2);
}

TEST_CASE("seed resolution: flag beats environment beats state file") {
    const auto d = fresh_dir("seeds");
    const Run env_only = run_cli("rng --out e.bits --bits 512", "NBLSIM_SEED=123 ", d);
    REQUIRE(env_only.code == 0);
    CHECK(sidecar(d / "e.bits").at("config").at("seed").get<std::uint64_t>() == 123);

    const Run flag_wins = run_cli("rng --out f.bits --bits 512 --seed 7", "NBLSIM_SEED=123 ", d);
    REQUIRE(flag_wins.code == 0);
    CHECK(sidecar(d / "f.bits").at("config").at("seed").get<std::uint64_t>() == 7);

    spit(d / "s.json", R"({"n": 2, "kind": "full_superposition", "master_seed": 42})");
    const Run file_seed = run_cli("nbl --state s.json --steps 8", "", d);
    REQUIRE(file_seed.code == 0);
    CHECK(json::parse(file_seed.out).at("master_seed").get<std::uint64_t>() == 42);

    const Run env_beats_file = run_cli("nbl --state s.json --steps 8", "NBLSIM_SEED=900 ", d);
    REQUIRE(env_beats_file.code == 0);
    CHECK(json::parse(env_beats_file.out).at("master_seed").get<std::uint64_t>() == 900);

    const Run bad_env = run_cli("rng --out g.bits --bits 512", "NBLSIM_SEED=12junk ", d);
    CHECK(bad_env.code == 2);
}
