#include "sfar/montecarlo.hpp"

#include "sfar/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sfar {

namespace {

// Salt values keep the model / support / noise streams of one trial apart.
constexpr std::uint64_t kModelSalt = 0x6d6f64656cULL;
constexpr std::uint64_t kSupportSalt = 0x737570ULL;
constexpr std::uint64_t kNoiseSalt = 0x6e6f697365ULL;

std::set<FrequencyBin> truth_bins(const SignalModel& model) {
    std::set<FrequencyBin> bins;
    for (const auto& c : model.components) bins.insert({c.kx, c.ky});
    return bins;
}

Measurements make_measurements(const TrialConfig& cfg, const SignalModel& model, int trial) {
    Field field = synthesize(model);
    if (cfg.sigma_eps_sample > 0.0)
        field = add_external_noise(
            field, NoiseParams{cfg.sigma_eps_sample,
                               derive_seed(cfg.master_seed, trial, kNoiseSalt)});
    SampleSupport support = uniform_support(
        cfg.dims, cfg.sample_count(), derive_seed(cfg.master_seed, trial, kSupportSalt));
    return extract(field, support);
}

void score_detection(const std::set<FrequencyBin>& truth, const FrequencySupport& detected,
                     TrialRecord& rec) {
    int hits = 0;
    for (const auto& b : detected.bins) hits += truth.contains(b);
    rec.precision = detected.bins.empty()
                        ? 1.0
                        : static_cast<double>(hits) / detected.bins.size();
    rec.recall = truth.empty() ? 1.0 : static_cast<double>(hits) / truth.size();
}

double field_nmse(const Field& recovered, const Field& truth) {
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < truth.values.size(); ++i) {
        err += std::norm(recovered.values[i] - truth.values[i]);
        ref += std::norm(truth.values[i]);
    }
    return (ref > 0.0) ? err / ref : err;
}

}  // namespace

void TrialConfig::validate() const {
    dims.validate();
    if (fixed_model.has_value() == random_spec.has_value())
        throw InvariantError("TrialConfig: exactly one of fixed_model / random_spec required");
    if (fixed_model) fixed_model->validate();
    if (!(sampling_ratio > 0.0) || sampling_ratio > 1.0)
        throw InvariantError("TrialConfig: sampling_ratio must lie in (0, 1]");
    if (trials < 1) throw InvariantError("TrialConfig: trials must be >= 1");
    if (sigma_eps_sample < 0.0)
        throw InvariantError("TrialConfig: sigma_eps_sample must be >= 0");
    ThresholdParams{p_fix}.validate();
}

int TrialConfig::sample_count() const {
    int m = static_cast<int>(std::lround(sampling_ratio * dims.total()));
    return std::clamp(m, 1, dims.total());
}

SignalModel TrialConfig::model_for_trial(int trial) const {
    if (fixed_model) return *fixed_model;
    return random_model(dims, random_spec->k, random_spec->amp_min, random_spec->amp_max,
                        derive_seed(master_seed, trial, kModelSalt));
}

double TrialReport::exact_detection_rate() const {
    if (records.empty()) return 0.0;
    int exact = 0;
    for (const auto& r : records) exact += (r.precision == 1.0 && r.recall == 1.0);
    return static_cast<double>(exact) / records.size();
}

TrialReport variance_experiment(const TrialConfig& cfg) {
    cfg.validate();
    const int n = cfg.dims.total();
    const int m = cfg.sample_count();

    TrialReport report;
    report.sampling_ratio = static_cast<double>(m) / n;
    double sq_sum = 0.0;
    long long sq_count = 0;
    double pred_sum = 0.0;

    for (int t = 0; t < cfg.trials; ++t) {
        SignalModel model = cfg.model_for_trial(t);
        auto truth = truth_bins(model);
        Measurements meas = make_measurements(cfg, model, t);
        Spectrum spec = partial_dft(meas);

        TrialRecord rec;
        rec.index = t;
        rec.m = m;
        rec.energy = estimate_energy(meas);

        double trial_sq = 0.0;
        int trial_count = 0;
        for (int kx = 0; kx < cfg.dims.nx; ++kx)
            for (int ky = 0; ky < cfg.dims.ny; ++ky) {
                if (truth.contains({kx, ky})) continue;
                double sq = std::norm(spec.at(kx, ky));
                trial_sq += sq;
                ++trial_count;
                rec.max_offpeak = std::max(rec.max_offpeak, std::sqrt(sq));
            }
        rec.mean_offpeak_sq = trial_count ? trial_sq / trial_count : 0.0;
        sq_sum += trial_sq;
        sq_count += trial_count;
        pred_sum += missing_sample_variance(
            model.energy(), m, n, m * cfg.sigma_eps_sample * cfg.sigma_eps_sample);
        report.records.push_back(rec);
    }

    report.empirical_variance = sq_count ? sq_sum / sq_count : 0.0;
    report.predicted_variance = pred_sum / cfg.trials;
    return report;
}

TrialReport coverage_experiment(const TrialConfig& cfg) {
    cfg.validate();
    const int n = cfg.dims.total();
    const int m = cfg.sample_count();

    TrialReport report;
    report.sampling_ratio = static_cast<double>(m) / n;
    int covered = 0;

    for (int t = 0; t < cfg.trials; ++t) {
        SignalModel model = cfg.model_for_trial(t);
        auto truth = truth_bins(model);
        Measurements meas = make_measurements(cfg, model, t);

        TrialRecord rec;
        rec.index = t;
        rec.m = m;
        rec.energy = estimate_energy(meas);
        double variance = missing_sample_variance(
            rec.energy, m, n, m * cfg.sigma_eps_sample * cfg.sigma_eps_sample);
        rec.chi = detection_threshold(variance, n, ThresholdParams{cfg.p_fix});

        Spectrum spec = partial_dft(meas);
        FrequencySupport detected = detect_support(spec, rec.chi, m);
        // Covered means detection raised no false alarm.
        rec.covered = std::all_of(detected.bins.begin(), detected.bins.end(),
                                  [&truth](const FrequencyBin& b) { return truth.contains(b); });
        for (int kx = 0; kx < cfg.dims.nx; ++kx)
            for (int ky = 0; ky < cfg.dims.ny; ++ky)
                if (!truth.contains({kx, ky}))
                    rec.max_offpeak = std::max(rec.max_offpeak, std::abs(spec.at(kx, ky)));
        covered += rec.covered;
        report.records.push_back(rec);
    }

    report.coverage = static_cast<double>(covered) / cfg.trials;
    return report;
}

std::vector<TrialReport> recovery_sweep(const TrialConfig& cfg,
                                        const std::vector<double>& ratios) {
    cfg.validate();
    for (double r : ratios)
        if (!(r > 0.0) || r > 1.0)
            throw InvariantError("recovery_sweep: every ratio must lie in (0, 1]");

    std::vector<TrialReport> reports;
    reports.reserve(ratios.size());
    for (double ratio : ratios) {
        TrialConfig local = cfg;
        local.sampling_ratio = ratio;
        const int m = local.sample_count();

        TrialReport report;
        report.sampling_ratio = static_cast<double>(m) / cfg.dims.total();
        double prec_sum = 0.0, rec_sum = 0.0, nmse_sum = 0.0;

        for (int t = 0; t < cfg.trials; ++t) {
            SignalModel model = local.model_for_trial(t);
            auto truth = truth_bins(model);
            Measurements meas = make_measurements(local, model, t);

            ReconParams params;
            params.p_fix = cfg.p_fix;
            params.max_iterations = cfg.max_iterations;
            params.sigma_eps_sample = cfg.sigma_eps_sample;
            ReconstructionResult result = (cfg.variant == ReconVariant::single_step)
                                              ? sfar2d_single(meas, params)
                                              : sfar2d_iterative(meas, params);

            TrialRecord rec;
            rec.index = t;
            rec.m = m;
            rec.energy = estimate_energy(meas);
            rec.chi = result.iterations.empty() ? 0.0 : result.iterations.front().chi;
            rec.iterations = static_cast<int>(result.iterations.size());
            rec.converged = result.converged;
            score_detection(truth, result.coefficients.support, rec);
            rec.nmse = field_nmse(reconstruct_field(result), synthesize(model));

            prec_sum += rec.precision;
            rec_sum += rec.recall;
            nmse_sum += rec.nmse;
            report.records.push_back(rec);
        }

        report.detection_precision = prec_sum / cfg.trials;
        report.detection_recall = rec_sum / cfg.trials;
        report.nmse = nmse_sum / cfg.trials;
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace sfar
