#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sfar/image_io.hpp"
#include "sfar/serialize.hpp"
#include "sfar/signal_model.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;
using sfar::json;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(SFAR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("sfar_cli_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

json example1_config(const std::string& out_dir) {
    sfar::SignalModel model = sfar::random_model({128, 128}, 12, 2.0, 3.0, 42);
    return json{{"model", sfar::model_to_json(model)},
                {"sampling", {{"ratio", 0.09}, {"seed", 7}}},
                {"recon", {{"variant", "single"}}},
                {"output_dir", out_dir}};
}

json example2_config(const std::string& out_dir, const std::string& variant) {
    sfar::SignalModel model = sfar::random_model({128, 128}, 12, 1.0, 1.0, 314);
    for (int i = 0; i < 12; ++i) model.components[i].amplitude = (i < 8) ? 3.0 : 0.2;
    return json{{"model", sfar::model_to_json(model)},
                {"sampling", {{"ratio", 0.09}, {"seed", 15}}},
                {"recon", {{"variant", variant}}},
                {"output_dir", out_dir}};
}

}  // namespace

TEST_CASE("synth writes model, field and spectrum artifacts") {
    TempDir dir("synth");
    json cfg = {{"nx", 128},
                {"ny", 128},
                {"random_model", {{"k", 12}, {"amp_min", 2.0}, {"amp_max", 3.0}, {"seed", 42}}},
                {"output_dir", dir.path.string()}};
    sfar::write_file(dir / "config.json", cfg.dump());
    CHECK(run_cli("synth --config " + (dir / "config.json")) == 0);
    CHECK(fs::exists(dir.path / "model.json"));
    CHECK(fs::exists(dir.path / "field.csv"));
    CHECK(fs::exists(dir.path / "spectrum.csv"));
    CHECK(fs::exists(dir.path / "spectrum.pgm"));
    json model = json::parse(sfar::read_file(dir / "model.json"));
    CHECK(model.at("components").size() == 12);
}

TEST_CASE("synth rejects an empty model at config validation") {
    TempDir dir("synth_bad");
    json cfg = {{"model", {{"nx", 8}, {"ny", 8}, {"components", json::array()}}},
                {"output_dir", dir.path.string()}};
    sfar::write_file(dir / "config.json", cfg.dump());
    CHECK(run_cli("synth --config " + (dir / "config.json")) == 2);
}

TEST_CASE("missing output directory exits with a usage error") {
    TempDir dir("synth_noout");
    json cfg = {{"model", {{"nx", 8}, {"ny", 8}, {"components", {{{"amp", 1.0}, {"kx", 1}, {"ky", 1}}}}}},
                {"output_dir", (dir.path / "does_not_exist").string()}};
    sfar::write_file(dir / "config.json", cfg.dump());
    CHECK(run_cli("synth --config " + (dir / "config.json")) == 2);
}

TEST_CASE("reconstruct on the Example-1 setup converges with full recall") {
    TempDir dir("recon1");
    sfar::write_file(dir / "config.json", example1_config(dir.path.string()).dump());
    CHECK(run_cli("reconstruct --config " + (dir / "config.json")) == 0);
    std::string metrics = sfar::read_file(dir / "metrics.csv");
    // header + one row: precision,recall,nmse,converged,iterations
    auto row = metrics.substr(metrics.find('\n') + 1);
    CHECK(row.substr(0, 4) == "1,1,");
    json result = json::parse(sfar::read_file(dir / "result.json"));
    CHECK(result.at("bins").size() == 12);
    CHECK(result.at("converged") == true);
    CHECK(fs::exists(dir.path / "recovered_spectrum.pgm"));
    CHECK(fs::exists(dir.path / "bins.csv"));
}

TEST_CASE("single-step on Example 2 exits 1 with a partial support") {
    TempDir dir("recon2s");
    sfar::write_file(dir / "config.json", example2_config(dir.path.string(), "single").dump());
    // The strong components are found but the weak set stays masked, so the
    // measurement residual never closes and the quality gate fails.
    int code = run_cli("reconstruct --config " + (dir / "config.json"));
    json result = json::parse(sfar::read_file(dir / "result.json"));
    CHECK(result.at("bins").size() == 8);
    CHECK(code == 1);
}

TEST_CASE("iterative on Example 2 records a two-step trace") {
    TempDir dir("recon2i");
    sfar::write_file(dir / "config.json", example2_config(dir.path.string(), "iterative").dump());
    CHECK(run_cli("reconstruct --config " + (dir / "config.json")) == 0);
    json result = json::parse(sfar::read_file(dir / "result.json"));
    CHECK(result.at("iterations").size() == 2);
    CHECK(result.at("bins").size() == 12);
}

TEST_CASE("variant flag overrides the config") {
    TempDir dir("recon_override");
    sfar::write_file(dir / "config.json", example2_config(dir.path.string(), "single").dump());
    CHECK(run_cli("reconstruct --variant iterative --config " + (dir / "config.json")) == 0);
    json result = json::parse(sfar::read_file(dir / "result.json"));
    CHECK(result.at("bins").size() == 12);
}

TEST_CASE("validate enforces configured bands") {
    TempDir dir("validate");
    json cfg = {{"output_dir", dir.path.string()},
                {"variance",
                 {{"nx", 16},
                  {"ny", 16},
                  {"model",
                   {{"nx", 16}, {"ny", 16}, {"components", {{{"amp", 1.0}, {"kx", 3}, {"ky", 5}}}}}},
                  {"ratio", 0.25},
                  {"trials", 200},
                  {"seed", 1},
                  {"band", {0.9, 1.1}}}}};
    sfar::write_file(dir / "config.json", cfg.dump());
    CHECK(run_cli("validate --config " + (dir / "config.json")) == 0);
    json summary = json::parse(sfar::read_file(dir / "summary.json"));
    CHECK(summary.at("pass") == true);

    // A band that cannot hold forces the failure path.
    cfg["variance"]["band"] = {1.0, 1.0};
    sfar::write_file(dir / "config.json", cfg.dump());
    CHECK(run_cli("validate --config " + (dir / "config.json")) == 1);
}

TEST_CASE("validate with one trial and no band asserts nothing") {
    TempDir dir("validate1");
    json cfg = {{"output_dir", dir.path.string()},
                {"coverage",
                 {{"nx", 16},
                  {"ny", 16},
                  {"random_model", {{"k", 2}, {"amp_min", 1.0}, {"amp_max", 2.0}}},
                  {"ratio", 0.25},
                  {"trials", 1},
                  {"seed", 3}}}};
    sfar::write_file(dir / "config.json", cfg.dump());
    CHECK(run_cli("validate --config " + (dir / "config.json")) == 0);
}

TEST_CASE("sweep writes per-ratio CSV and summary") {
    TempDir dir("sweep");
    json cfg = {{"nx", 32},
                {"ny", 32},
                {"random_model", {{"k", 3}, {"amp_min", 1.0}, {"amp_max", 2.0}}},
                {"ratios", {0.25, 1.0}},
                {"trials", 10},
                {"seed", 2},
                {"output_dir", dir.path.string()}};
    sfar::write_file(dir / "config.json", cfg.dump());
    CHECK(run_cli("sweep --config " + (dir / "config.json")) == 0);
    std::string csv = sfar::read_file(dir / "sweep.csv");
    int rows = 0;
    for (char c : csv) rows += (c == '\n');
    CHECK(rows == 3);  // header + 2 ratios
}

TEST_CASE("identical configs and seeds give byte-identical outputs") {
    TempDir a("det_a"), b("det_b");
    json cfg_a = example1_config(a.path.string());
    json cfg_b = example1_config(b.path.string());
    sfar::write_file(a / "config.json", cfg_a.dump());
    sfar::write_file(b / "config.json", cfg_b.dump());
    CHECK(run_cli("reconstruct --config " + (a / "config.json")) == 0);
    CHECK(run_cli("reconstruct --config " + (b / "config.json")) == 0);
    for (const char* name : {"result.json", "metrics.csv", "bins.csv",
                             "recovered_spectrum.csv", "recovered_spectrum.pgm"}) {
        CHECK(sfar::read_file(a / name) == sfar::read_file(b / name));
    }
}
