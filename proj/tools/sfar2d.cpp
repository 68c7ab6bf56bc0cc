// Experiment front end: synthesize fields, run reconstructions, and drive
// the statistical validation harness from JSON configs.
//
// Exit codes: 0 success/converged, 1 quality failure (non-converged run or
// validation band violation), 2 usage / config / IO error.

#include "sfar/image_io.hpp"
#include "sfar/montecarlo.hpp"
#include "sfar/recon.hpp"
#include "sfar/rng.hpp"
#include "sfar/serialize.hpp"
#include "sfar/signal_model.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using sfar::json;

namespace {

struct CliOverrides {
    std::optional<double> ratio;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> variant;
    std::optional<double> p_fix;
    std::optional<std::string> out_dir;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json load_config(const std::string& path) {
    return json::parse(sfar::read_file(path));
}

fs::path resolve_output_dir(const json& cfg, const CliOverrides& ov) {
    std::string dir = ov.out_dir ? *ov.out_dir : cfg.value("output_dir", std::string("."));
    fs::path p(dir);
    if (!fs::exists(p) || !fs::is_directory(p))
        throw sfar::Error("output directory does not exist: " + dir);
    return p;
}

sfar::SignalModel model_from_config(const json& cfg) {
    if (cfg.contains("model")) return sfar::model_from_json(cfg.at("model"));
    if (cfg.contains("model_file"))
        return sfar::model_from_json(json::parse(sfar::read_file(cfg.at("model_file"))));
    if (cfg.contains("random_model")) {
        const auto& rm = cfg.at("random_model");
        sfar::GridDims dims{cfg.at("nx").get<int>(), cfg.at("ny").get<int>()};
        return sfar::random_model(dims, rm.at("k").get<int>(),
                                  rm.at("amp_min").get<double>(),
                                  rm.at("amp_max").get<double>(),
                                  rm.value("seed", std::uint64_t{0}));
    }
    throw sfar::Error("config needs one of: model, model_file, random_model");
}

sfar::Field synthesized_field(const json& cfg, const sfar::SignalModel& model) {
    sfar::Field field = sfar::synthesize(model);
    if (cfg.contains("noise")) {
        const auto& nz = cfg.at("noise");
        sfar::NoiseParams params{nz.value("sigma_eps_sample", 0.0),
                                 nz.value("seed", std::uint64_t{0})};
        field = sfar::add_external_noise(field, params);
    }
    return field;
}

int cmd_synth(const std::string& config_path, const CliOverrides& ov) {
    json cfg = load_config(config_path);
    fs::path out = resolve_output_dir(cfg, ov);
    sfar::SignalModel model = model_from_config(cfg);
    sfar::Field field = synthesized_field(cfg, model);
    sfar::Spectrum spec = sfar::full_dft(field);

    json exports = cfg.value("export", json::object());
    sfar::write_file((out / "model.json").string(), sfar::model_to_json(model).dump(2) + "\n");
    if (exports.value("csv", true)) {
        sfar::write_file((out / "field.csv").string(), sfar::field_to_csv(field));
        sfar::write_file((out / "spectrum.csv").string(), sfar::spectrum_to_csv(spec));
    }
    if (exports.value("pgm", true))
        sfar::write_file((out / "spectrum.pgm").string(), sfar::spectrum_to_pgm(spec));
    return 0;
}

int cmd_reconstruct(const std::string& config_path, const CliOverrides& ov) {
    json cfg = load_config(config_path);
    fs::path out = resolve_output_dir(cfg, ov);
    sfar::SignalModel model = model_from_config(cfg);
    sfar::Field field = synthesized_field(cfg, model);

    sfar::SampleSupport support;
    if (cfg.contains("sampling") && cfg.at("sampling").contains("support_file")) {
        support = sfar::support_from_json(
            json::parse(sfar::read_file(cfg.at("sampling").at("support_file"))));
    } else {
        json sampling = cfg.value("sampling", json::object());
        double ratio = ov.ratio ? *ov.ratio : sampling.value("ratio", 0.25);
        std::uint64_t seed = ov.seed ? *ov.seed : sampling.value("seed", std::uint64_t{0});
        int n = model.dims.total();
        int m = std::clamp(static_cast<int>(std::lround(ratio * n)), 1, n);
        support = sfar::uniform_support(model.dims, m, seed);
    }
    sfar::Measurements meas = sfar::extract(field, support);

    json rcfg = cfg.value("recon", json::object());
    sfar::ReconParams params;
    params.p_fix = ov.p_fix ? *ov.p_fix : rcfg.value("p_fix", 0.99);
    params.max_iterations = rcfg.value("max_iterations", 10);
    params.residual_tol = rcfg.value("residual_tol", 1e-6);
    if (cfg.contains("noise"))
        params.sigma_eps_sample = cfg.at("noise").value("sigma_eps_sample", 0.0);
    std::string variant = ov.variant ? *ov.variant : rcfg.value("variant", std::string("single"));
    if (variant != "single" && variant != "iterative")
        throw sfar::Error("variant must be 'single' or 'iterative'");

    sfar::ReconstructionResult result = (variant == "single")
                                            ? sfar::sfar2d_single(meas, params)
                                            : sfar::sfar2d_iterative(meas, params);

    // Detection quality vs the generating model.
    std::set<sfar::FrequencyBin> truth;
    for (const auto& c : model.components) truth.insert({c.kx, c.ky});
    std::set<sfar::FrequencyBin> detected(result.coefficients.support.bins.begin(),
                                          result.coefficients.support.bins.end());
    int hits = 0;
    for (const auto& b : detected) hits += truth.contains(b);
    double precision = detected.empty() ? 1.0 : static_cast<double>(hits) / detected.size();
    double recall = static_cast<double>(hits) / truth.size();

    sfar::Field recovered = sfar::reconstruct_field(result);
    sfar::Field truth_field = sfar::synthesize(model);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < truth_field.values.size(); ++i) {
        err += std::norm(recovered.values[i] - truth_field.values[i]);
        ref += std::norm(truth_field.values[i]);
    }
    double nmse = err / ref;

    json exports = cfg.value("export", json::object());
    sfar::write_file((out / "result.json").string(),
                     sfar::result_to_json(result, model.dims).dump(2) + "\n");
    if (exports.value("csv", true)) {
        sfar::write_file((out / "recovered_spectrum.csv").string(),
                         sfar::spectrum_to_csv(result.spectrum));
        std::ostringstream bins;
        bins << "kx,ky,in_truth,in_detected,coeff_re,coeff_im\n";
        std::set<sfar::FrequencyBin> all = truth;
        all.insert(detected.begin(), detected.end());
        for (const auto& b : all) {
            sfar::cplx coeff = result.spectrum.at(b.kx, b.ky);
            bins << b.kx << ',' << b.ky << ',' << truth.contains(b) << ','
                 << detected.contains(b) << ',' << fmt(coeff.real()) << ','
                 << fmt(coeff.imag()) << '\n';
        }
        sfar::write_file((out / "bins.csv").string(), bins.str());
        std::ostringstream metrics;
        metrics << "precision,recall,nmse,converged,iterations\n"
                << fmt(precision) << ',' << fmt(recall) << ',' << fmt(nmse) << ','
                << result.converged << ',' << result.iterations.size() << '\n';
        sfar::write_file((out / "metrics.csv").string(), metrics.str());
    }
    if (exports.value("pgm", true))
        sfar::write_file((out / "recovered_spectrum.pgm").string(),
                         sfar::spectrum_to_pgm(result.spectrum));

    // Quality gate: converged and the measurement residual actually closed.
    bool quality = result.converged && !result.iterations.empty() &&
                   result.iterations.back().residual_energy <=
                       params.residual_tol * meas.total_energy();
    return quality ? 0 : 1;
}

sfar::TrialConfig trial_config_from_json(const json& cfg) {
    sfar::TrialConfig tc;
    tc.dims = {cfg.at("nx").get<int>(), cfg.at("ny").get<int>()};
    if (cfg.contains("model")) {
        tc.fixed_model = sfar::model_from_json(cfg.at("model"));
    } else if (cfg.contains("random_model")) {
        const auto& rm = cfg.at("random_model");
        tc.random_spec = sfar::RandomModelSpec{rm.at("k").get<int>(),
                                               rm.at("amp_min").get<double>(),
                                               rm.at("amp_max").get<double>()};
    }
    tc.sampling_ratio = cfg.value("ratio", 0.25);
    tc.sigma_eps_sample = cfg.value("sigma_eps_sample", 0.0);
    tc.trials = cfg.value("trials", 100);
    tc.master_seed = cfg.value("seed", std::uint64_t{0});
    tc.p_fix = cfg.value("p_fix", 0.99);
    tc.max_iterations = cfg.value("max_iterations", 10);
    if (cfg.value("variant", std::string("single")) == "iterative")
        tc.variant = sfar::ReconVariant::iterative;
    return tc;
}

json default_validate_config() {
    return json{
        {"variance",
         {{"nx", 16},
          {"ny", 16},
          {"model",
           {{"nx", 16}, {"ny", 16}, {"components", {{{"amp", 1.0}, {"kx", 3}, {"ky", 5}}}}}},
          {"ratio", 0.25},
          {"trials", 2000},
          {"seed", 1},
          {"band", {0.93, 1.07}}}},
        {"coverage",
         {{"nx", 32},
          {"ny", 32},
          {"random_model", {{"k", 3}, {"amp_min", 1.0}, {"amp_max", 2.0}}},
          {"ratio", 0.25},
          {"trials", 2000},
          {"seed", 1},
          {"p_fix", 0.99},
          {"band", {0.96, 1.0}}}},
        {"sweep",
         {{"nx", 64},
          {"ny", 64},
          {"random_model", {{"k", 6}, {"amp_min", 2.0}, {"amp_max", 3.0}}},
          {"ratios", {0.12}},
          {"trials", 50},
          {"seed", 1},
          {"exact_rate_band", {0.9, 1.0}}}}};
}

int cmd_validate(const std::string& config_path, const CliOverrides& ov) {
    json cfg = config_path.empty() ? default_validate_config() : load_config(config_path);
    fs::path out = resolve_output_dir(cfg, ov);
    std::vector<std::string> failures;
    json summary = json::object();

    auto in_band = [](double v, const json& band) {
        return band.at(0).get<double>() <= v && v <= band.at(1).get<double>();
    };

    if (cfg.contains("variance")) {
        const auto& vc = cfg.at("variance");
        sfar::TrialReport report = sfar::variance_experiment(trial_config_from_json(vc));
        sfar::write_file((out / "variance.csv").string(), sfar::report_to_csv(report));
        double ratio = report.empirical_variance / report.predicted_variance;
        json entry = sfar::report_to_json(report);
        entry["empirical_to_predicted"] = ratio;
        if (vc.contains("band")) {
            entry["band"] = vc.at("band");
            entry["pass"] = in_band(ratio, vc.at("band"));
            if (!entry["pass"])
                failures.push_back("variance: ratio " + fmt(ratio) + " outside band");
        }
        summary["variance"] = entry;
    }
    if (cfg.contains("coverage")) {
        const auto& cc = cfg.at("coverage");
        sfar::TrialReport report = sfar::coverage_experiment(trial_config_from_json(cc));
        sfar::write_file((out / "coverage.csv").string(), sfar::report_to_csv(report));
        json entry = sfar::report_to_json(report);
        if (cc.contains("band")) {
            entry["band"] = cc.at("band");
            entry["pass"] = in_band(report.coverage, cc.at("band"));
            if (!entry["pass"])
                failures.push_back("coverage: " + fmt(report.coverage) + " outside band");
        }
        summary["coverage"] = entry;
    }
    if (cfg.contains("sweep")) {
        const auto& sc = cfg.at("sweep");
        std::vector<double> ratios = sc.at("ratios").get<std::vector<double>>();
        auto reports = sfar::recovery_sweep(trial_config_from_json(sc), ratios);
        std::ostringstream csv;
        bool first = true;
        json entries = json::array();
        for (const auto& report : reports) {
            std::string body = sfar::report_to_csv(report);
            if (first) {
                csv << "ratio," << body.substr(0, body.find('\n') + 1);
                first = false;
            }
            std::istringstream lines(body.substr(body.find('\n') + 1));
            for (std::string line; std::getline(lines, line);)
                csv << fmt(report.sampling_ratio) << ',' << line << '\n';
            json entry = sfar::report_to_json(report);
            if (sc.contains("exact_rate_band")) {
                entry["band"] = sc.at("exact_rate_band");
                entry["pass"] = in_band(report.exact_detection_rate(), sc.at("exact_rate_band"));
                if (!entry["pass"])
                    failures.push_back("sweep ratio " + fmt(report.sampling_ratio) +
                                       ": exact rate " + fmt(report.exact_detection_rate()) +
                                       " outside band");
            }
            entries.push_back(entry);
        }
        sfar::write_file((out / "sweep.csv").string(), csv.str());
        summary["sweep"] = entries;
    }

    summary["pass"] = failures.empty();
    summary["failures"] = failures;
    sfar::write_file((out / "summary.json").string(), summary.dump(2) + "\n");
    for (const auto& f : failures) std::cerr << "band violation: " << f << '\n';
    return failures.empty() ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const CliOverrides& ov) {
    json cfg = load_config(config_path);
    fs::path out = resolve_output_dir(cfg, ov);
    std::vector<double> ratios = ov.ratio ? std::vector<double>{*ov.ratio}
                                          : cfg.at("ratios").get<std::vector<double>>();
    sfar::TrialConfig tc = trial_config_from_json(cfg);
    if (ov.seed) tc.master_seed = *ov.seed;
    if (ov.p_fix) tc.p_fix = *ov.p_fix;
    if (ov.variant)
        tc.variant = (*ov.variant == "iterative") ? sfar::ReconVariant::iterative
                                                  : sfar::ReconVariant::single_step;
    auto reports = sfar::recovery_sweep(tc, ratios);

    std::ostringstream csv;
    csv << "ratio,precision,recall,exact_rate,nmse\n";
    json entries = json::array();
    for (const auto& report : reports) {
        csv << fmt(report.sampling_ratio) << ',' << fmt(report.detection_precision) << ','
            << fmt(report.detection_recall) << ',' << fmt(report.exact_detection_rate())
            << ',' << fmt(report.nmse) << '\n';
        entries.push_back(sfar::report_to_json(report));
    }
    sfar::write_file((out / "sweep.csv").string(), csv.str());
    sfar::write_file((out / "summary.json").string(), json{{"sweep", entries}}.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SFAR-2D: sparse 2D signal recovery from undersampled data"};
    app.require_subcommand(1);

    std::string config_path;
    CliOverrides ov;
    double ratio = -1.0, p_fix = -1.0;
    std::int64_t seed = -1;
    std::string variant, out_dir;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config,-c", config_path, "JSON experiment config");
        if (config_required) opt->required();
        sub->add_option("--ratio", ratio, "override sampling ratio");
        sub->add_option("--seed", seed, "override RNG seed");
        sub->add_option("--variant", variant, "override variant: single|iterative");
        sub->add_option("--p-fix", p_fix, "override detection probability");
        sub->add_option("--out,-o", out_dir, "override output directory");
    };

    auto* synth = app.add_subcommand("synth", "synthesize a field and its spectrum");
    add_common(synth, true);
    auto* reconstruct = app.add_subcommand("reconstruct", "run a reconstruction experiment");
    add_common(reconstruct, true);
    auto* validate = app.add_subcommand("validate", "run the statistical validation suite");
    add_common(validate, false);
    auto* sweep = app.add_subcommand("sweep", "recovery quality across sampling ratios");
    add_common(sweep, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (ratio > 0) ov.ratio = ratio;
    if (seed >= 0) ov.seed = static_cast<std::uint64_t>(seed);
    if (!variant.empty()) ov.variant = variant;
    if (p_fix > 0) ov.p_fix = p_fix;
    if (!out_dir.empty()) ov.out_dir = out_dir;

    try {
        if (synth->parsed()) return cmd_synth(config_path, ov);
        if (reconstruct->parsed()) return cmd_reconstruct(config_path, ov);
        if (validate->parsed()) return cmd_validate(config_path, ov);
        if (sweep->parsed()) return cmd_sweep(config_path, ov);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
