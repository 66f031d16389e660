#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cli_runner.hpp"
#include "json.hpp"

namespace {

using qpurify::testing::CliSandbox;
using nlohmann::json;

const char *kMixedQubit = R"({"d": 2, "n": 1, "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]})";
const char *kNotPsd = R"({"d": 2, "n": 1, "matrix": [[[0.5, 0], [0.6, 0]], [[0.6, 0], [0.5, 0]]]})";

double printed(const std::string &out, const std::string &label) {
    std::istringstream in(out);
    std::string key;
    double value = NAN;
    while (in >> key) {
        if (key == label) {
            in >> value;
            return value;
        }
        in >> key;
    }
    ADD_FAILURE() << "no \"" << label << "\" in output: " << out;
    return value;
}

TEST(CliPurify, MaximallyMixedQubit) {
    CliSandbox box("purify_mixed");
    box.write("rho.json", kMixedQubit);
    auto r = box.run("purify --input rho.json --method cholesky --out psi.json --coeffs c.json");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_LE(printed(r.out, "max_abs_error"), 1e-15);
    json psi = json::parse(box.read("psi.json"));
    double h = std::sqrt(0.5);
    std::vector<std::vector<double>> expected{{0, 0}, {h, 0}, {h, 0}, {0, 0}};
    EXPECT_EQ(psi["amplitudes"].get<std::vector<std::vector<double>>>(), expected);
    EXPECT_EQ(json::parse(box.read("c.json"))["N"], 2);
}

TEST(CliPurify, NotPsdExitsWithValidationError) {
    CliSandbox box("purify_notpsd");
    box.write("rho.json", kNotPsd);
    auto r = box.run("purify --input rho.json --out psi.json");
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(r.err.rfind("NotPSD: ", 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(CliPurify, SpectralAndReshuffle) {
    CliSandbox box("purify_methods");
    ASSERT_EQ(box.run("random --d 3 --n 1 --seed 5 --out rho.json").status, 0);
    auto spectral = box.run("purify --input rho.json --method spectral --out psi.json");
    EXPECT_EQ(spectral.status, 0) << spectral.err;
    EXPECT_LE(printed(spectral.out, "max_abs_error"), 1e-10);
    auto reshuffled = box.run("purify --input rho.json --reshuffle --out psi2.json --coeffs c.json");
    EXPECT_EQ(reshuffled.status, 0) << reshuffled.err;
    EXPECT_EQ(json::parse(box.read("c.json"))["system_order"].size(), 3u);
    EXPECT_EQ(box.run("purify --input rho.json --method spectral --out p.json --coeffs c.json").status, 1);
}

TEST(CliPurify, IoAndParseErrors) {
    CliSandbox box("purify_io");
    auto missing = box.run("purify --input nope.json --out psi.json");
    EXPECT_EQ(missing.status, 1);
    EXPECT_EQ(missing.err.rfind("ParseError: ", 0), 0u) << missing.err;
    box.write("broken.json", "{\"d\": 2,");
    EXPECT_EQ(box.run("purify --input broken.json --out psi.json").status, 1);
    EXPECT_EQ(box.run("purify --out psi.json").status, 1);
    EXPECT_EQ(box.run("purify --input x --method qr --out psi.json").status, 1);
    EXPECT_EQ(box.run("").status, 1);
}

TEST(CliSynth, ParameterCounts) {
    CliSandbox box("synth_counts");
    for (auto [d, n, count] : {std::tuple{2, 1, 3}, {3, 1, 8}, {2, 2, 15}}) {
        std::string args = "random --d " + std::to_string(d) + " --n " + std::to_string(n) + " --seed 3 --out rho.json";
        ASSERT_EQ(box.run(args).status, 0);
        auto r = box.run("synth --input rho.json --out circuit.json");
        ASSERT_EQ(r.status, 0) << r.err;
        EXPECT_EQ(printed(r.out, "parameters"), count);
        EXPECT_LE(printed(r.out, "max_deviation"), 1e-10);
        json circuit = json::parse(box.read("circuit.json"));
        EXPECT_EQ(circuit["schedule"].size(), static_cast<size_t>(count));
        EXPECT_EQ(circuit["d"], d);
        EXPECT_EQ(circuit["n"], n);
    }
}

TEST(CliSimulate, RoundTripAndTampering) {
    CliSandbox box("simulate");
    box.write("rho.json", kMixedQubit);
    ASSERT_EQ(box.run("synth --input rho.json --out circuit.json").status, 0);
    auto ok = box.run("simulate --circuit circuit.json --out psi.json --expect rho.json");
    EXPECT_EQ(ok.status, 0) << ok.err;
    EXPECT_LE(printed(ok.out, "max_abs_error"), 1e-10);

    json circuit = json::parse(box.read("circuit.json"));
    json gate_tampered = circuit;
    gate_tampered["schedule"][0]["value"] = gate_tampered["schedule"][0]["value"].get<double>() + 0.1;
    box.write("gate.json", gate_tampered.dump());
    auto bad_gate = box.run("simulate --circuit gate.json --out psi.json --expect rho.json");
    EXPECT_EQ(bad_gate.status, 3);
    EXPECT_EQ(bad_gate.err.rfind("ReconstructionFailure: ", 0), 0u) << bad_gate.err;

    json angle_tampered = circuit;
    angle_tampered["parameters"]["weight_angles"][0] = circuit["parameters"]["weight_angles"][0].get<double>() + 0.1;
    box.write("angle.json", angle_tampered.dump());
    EXPECT_EQ(box.run("simulate --circuit angle.json --out psi.json --expect rho.json").status, 3);

    json out_of_range = circuit;
    out_of_range["parameters"]["weight_angles"][0] = 2.0;
    box.write("range.json", out_of_range.dump());
    EXPECT_EQ(box.run("simulate --circuit range.json --out psi.json").status, 2);
}

TEST(CliSimulate, AllZeroCircuit) {
    CliSandbox box("simulate_zero");
    box.write("zero.json", R"({"N": 2, "d": 2, "n": 1,
        "parameters": {"weight_angles": [0], "branches": [{"dim": 2, "angles": [0], "phases": [0]}, {"dim": 1, "angles": [], "phases": []}]},
        "schedule": []})");
    auto r = box.run("simulate --circuit zero.json --out psi.json");
    ASSERT_EQ(r.status, 0) << r.err;
    json psi = json::parse(box.read("psi.json"));
    std::vector<std::vector<double>> ground{{1, 0}, {0, 0}, {0, 0}, {0, 0}};
    EXPECT_EQ(psi["amplitudes"].get<std::vector<std::vector<double>>>(), ground);
}

std::vector<std::vector<double>> csv_rows(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(row);
    }
    return rows;
}

TEST(CliBloch, SurfaceFiles) {
    CliSandbox box("bloch");
    auto r = box.run("bloch --alpha 0 --grid 10x10 --out s.csv");
    ASSERT_EQ(r.status, 0) << r.err;
    auto rows = csv_rows(box.read("s.csv"));
    EXPECT_EQ(rows.size(), 100u);
    for (const auto &row : rows) {
        EXPECT_NEAR(row[3] * row[3] + row[4] * row[4] + row[5] * row[5], 1.0, 1e-12);
    }

    ASSERT_EQ(box.run("bloch --alpha 1.5707963 --grid 5x5 --out pole.csv").status, 0);
    for (const auto &row : csv_rows(box.read("pole.csv"))) {
        EXPECT_NEAR(row[3], 0, 1e-7);
        EXPECT_NEAR(row[4], 0, 1e-7);
        EXPECT_NEAR(row[5], 1, 1e-7);
    }

    auto many = box.run("bloch --alphas 6 --grid 50x50 --out many.csv");
    ASSERT_EQ(many.status, 0) << many.err;
    EXPECT_EQ(printed(many.out, "rows"), 6 * 2500);
    auto all = csv_rows(box.read("many.csv"));
    ASSERT_EQ(all.size(), 15000u);
    double last_center = -1;
    for (size_t block = 0; block < 6; block++) {
        double alpha = all[block * 2500][0];
        double center = std::sin(alpha) * std::sin(alpha);
        EXPECT_GT(center, last_center);
        last_center = center;
    }
    EXPECT_EQ(all.back()[0], M_PI / 2);

    EXPECT_EQ(box.run("bloch --alpha 2 --out x.csv").status, 2);
    EXPECT_EQ(box.run("bloch --alpha 0.3 --grid 10by10 --out x.csv").status, 2);
    EXPECT_EQ(box.run("bloch --grid 10x10 --out x.csv").status, 2);
}

TEST(CliRandom, DeterministicBytesAndPurity) {
    CliSandbox box("random");
    ASSERT_EQ(box.run("random --d 2 --n 2 --seed 42 --out a.json").status, 0);
    ASSERT_EQ(box.run("random --d 2 --n 2 --seed 42 --out b.json").status, 0);
    EXPECT_EQ(box.read("a.json"), box.read("b.json"));
    EXPECT_EQ(box.run("purify --input a.json --out psi.json").status, 0);

    auto pure = box.run("random --d 2 --n 2 --seed 1 --rank 1 --out r1.json");
    ASSERT_EQ(pure.status, 0);
    EXPECT_NEAR(printed(pure.out, "purity"), 1.0, 1e-12);

    auto bad = box.run("random --d 1 --n 2 --seed 1 --out x.json");
    EXPECT_EQ(bad.status, 2);
    EXPECT_EQ(bad.err.rfind("BadShape: ", 0), 0u) << bad.err;
    EXPECT_EQ(box.run("random --d 2 --n 1 --seed 1 --rank 3 --out x.json").status, 2);
}

}  // namespace
