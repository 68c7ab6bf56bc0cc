#pragma once

#include "sfar/recon.hpp"
#include "sfar/signal_model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sfar {

enum class ReconVariant { single_step, iterative };

/// Parameters for drawing a fresh random model each trial.
struct RandomModelSpec {
    int k = 1;
    double amp_min = 1.0;
    double amp_max = 1.0;
};

struct TrialConfig {
    GridDims dims;
    std::optional<SignalModel> fixed_model;     // exactly one of these two
    std::optional<RandomModelSpec> random_spec; // is set
    double sampling_ratio = 0.25;
    double sigma_eps_sample = 0.0;
    int trials = 1;
    std::uint64_t master_seed = 0;
    double p_fix = 0.99;
    ReconVariant variant = ReconVariant::single_step;
    int max_iterations = 10;

    void validate() const;
    int sample_count() const;  // round(ratio * nx * ny), clamped to [1, n]
    SignalModel model_for_trial(int trial) const;
};

struct TrialRecord {
    int index = 0;
    int m = 0;
    double energy = 0.0;           // per-sample energy estimate
    double chi = 0.0;
    double mean_offpeak_sq = 0.0;  // mean |F|^2 over off-peak bins
    double max_offpeak = 0.0;
    bool covered = false;          // no off-peak bin detected
    double precision = 0.0;
    double recall = 0.0;
    double nmse = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct TrialReport {
    double sampling_ratio = 0.0;
    double empirical_variance = 0.0;
    double predicted_variance = 0.0;
    double coverage = 0.0;
    double detection_precision = 0.0;
    double detection_recall = 0.0;
    double nmse = 0.0;
    std::vector<TrialRecord> records;

    /// Fraction of trials with precision == recall == 1.
    double exact_detection_rate() const;
};

/// Empirical off-peak DFT-bin variance vs the missing-sample prediction.
TrialReport variance_experiment(const TrialConfig& cfg);

/// Fraction of trials in which no off-peak bin rises above the threshold.
TrialReport coverage_experiment(const TrialConfig& cfg);

/// Detection quality and reconstruction error across sampling ratios.
std::vector<TrialReport> recovery_sweep(const TrialConfig& cfg,
                                        const std::vector<double>& ratios);

}  // namespace sfar
