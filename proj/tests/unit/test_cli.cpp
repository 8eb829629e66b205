#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "laminar/cli.hpp"
#include "laminar/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "laminar");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = laminar::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("laminar_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string write_config(const fs::path& dir, const std::string& json) {
    const auto p = (dir / "config.json").string();
    laminar::write_file(p, json);
    return p;
}

}  // namespace

TEST_CASE("graph writes edge lists and a structure report") {
    const auto dir = scratch("graph");
    const auto r = run({"graph", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "graph1_edges.csv"));
    CHECK(fs::exists(dir / "graph2_edges.csv"));
    CHECK(r.out.find("\"semi_regular\": true") != std::string::npos);
    CHECK(laminar::edges_from_csv(laminar::read_file((dir / "graph2_edges.csv").string())).size() == 120);
}

TEST_CASE("spectrum annotates lambda2 at the minimum for a strongly polarised contact graph") {
    const auto dir = scratch("spectrum");
    const auto cfg = write_config(dir, R"({"graphs": [{"preset": "contact", "layer1_size": 30}],
                                          "weights": [{"w1": 0.1, "w2": 1}]})");
    const auto r = run({"spectrum", "--config", cfg, "--out", dir.string()});
    CHECK(r.code == 0);
    const auto rows = laminar::spectrum_from_csv(laminar::read_file((dir / "spectrum1.csv").string()));
    REQUIRE(rows.size() == 60);
    CHECK(rows.front().is_quotient_lambda2);
    CHECK(r.out.find("\"lambda2_is_min\": true") != std::string::npos);
}

TEST_CASE("quotient, hss and stability reports") {
    const auto dir = scratch("reports");
    const auto q = run({"quotient", "--out", dir.string()});
    CHECK(q.code == 0);
    CHECK(q.out.find("-0.538461538462") != std::string::npos);
    const auto h = run({"hss", "--out", dir.string()});
    CHECK(h.code == 0);
    CHECK(h.out.find("\"sign_class\": \"S1\"") != std::string::npos);
    CHECK(h.out.find("0.179926197898") != std::string::npos);
    const auto s = run({"stability", "--w1", "0.4,0.1", "--out", dir.string()});
    CHECK(s.code == 0);
    CHECK(s.out.find("\"converges\": true") != std::string::npos);
    const auto e = run({"stability", "--w1", "1.5,0.05", "--out", dir.string()});
    CHECK(e.out.find("\"exists\": true") != std::string::npos);
    CHECK(e.out.find("\"converges\": false") != std::string::npos);
}

TEST_CASE("simulate emits trajectory, snapshot and identical bytes per seed") {
    const auto a = scratch("sim_a"), b = scratch("sim_b");
    const auto ra = run({"simulate", "--w1", "0.6,0.02", "--seed", "3", "--out", a.string()});
    const auto rb = run({"simulate", "--w1", "0.6,0.02", "--seed", "3", "--out", b.string()});
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    for (const char* f : {"trajectory.csv", "snapshot.csv", "snapshot.svg", "simulation.json"})
        CHECK(laminar::read_file((a / f).string()) == laminar::read_file((b / f).string()));
    const auto snap = laminar::snapshot_from_csv(laminar::read_file((a / "snapshot.csv").string()));
    CHECK(snap.size() == 60);
    const auto q = run({"simulate", "--w1", "0.4,0.1", "--mode", "quotient", "--t-max", "20", "--out", a.string()});
    CHECK(q.code == 0);
    CHECK(laminar::snapshot_from_csv(laminar::read_file((a / "snapshot.csv").string())).size() == 2);
}

TEST_CASE("sweep marks the reference points") {
    const auto dir = scratch("sweep");
    const auto cfg = write_config(dir, R"({"sweep": {"axis1": {"values": [0.4, 1.5]}, "axis2": {"values": [0.05, 0.1]}}})");
    const auto r = run({"sweep", "--config", cfg, "--out", dir.string(), "--threads", "2"});
    CHECK(r.code == 0);
    const auto rows = laminar::sweep_from_csv(laminar::read_file((dir / "sweep.csv").string()));
    REQUIRE(rows.size() == 4);
    CHECK(rows[1].w1_sig1 == 0.4);
    CHECK(rows[1].w1_sig2 == 0.1);
    CHECK(rows[1].converges);
    CHECK(rows[2].w1_sig1 == 1.5);
    CHECK(rows[2].w1_sig2 == 0.05);
    CHECK(rows[2].exists);
    CHECK_FALSE(rows[2].converges);
    CHECK(fs::exists(dir / "sweep.svg"));

    const auto g = run({"sweep", "--grid", "3x2", "--out", dir.string()});
    CHECK(g.code == 0);
    CHECK(laminar::sweep_from_csv(laminar::read_file((dir / "sweep.csv").string())).size() == 6);
}

TEST_CASE("verify passes on several seeds") {
    for (const char* seed : {"1", "99", "2024"}) {
        const auto r = run({"verify", "--seed", seed});
        CHECK(r.code == 0);
        CHECK(r.out.find("FAIL") == std::string::npos);
        CHECK(r.out.find("PASS spectrum_union") != std::string::npos);
    }
}

TEST_CASE("exit codes") {
    const auto dir = scratch("codes");
    CHECK(run({}).code == 1);
    CHECK(run({"unknown"}).code == 1);
    CHECK(run({"hss", "--config", (dir / "missing.json").string()}).code == 1);
    CHECK(run({"hss", "--config", write_config(dir, R"({"extra": 1})")}).code == 1);
    CHECK(run({"stability", "--w1", "0.4"}).code == 1);
    CHECK(run({"sweep", "--grid", "0x3"}).code == 1);
    const auto cfg = write_config(dir, R"({"simulation": {"rtol": 1e-300, "atol": 1e-300}})");
    const auto r = run({"simulate", "--config", cfg, "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("error") != std::string::npos);
}
