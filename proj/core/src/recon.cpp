#include "sfar/recon.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace sfar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxCondition = 1e12;

// Psi(Omega, freqs) in operator form: m x B synthesis matrix whose column b
// maps the DFT coefficient at bin b to its sample-domain contribution.
Eigen::MatrixXcd synthesis_matrix(const SampleSupport& support, const FrequencySupport& freqs) {
    const int nx = support.dims.nx, ny = support.dims.ny;
    const double inv_n = 1.0 / support.dims.total();
    Eigen::MatrixXcd mat(support.size(), freqs.size());
    for (int b = 0; b < freqs.size(); ++b) {
        const auto& bin = freqs.bins[b];
        for (int j = 0; j < support.size(); ++j) {
            const auto& p = support.positions[j];
            double phase = kTwoPi * (static_cast<double>(bin.kx) * p.x / nx +
                                     static_cast<double>(bin.ky) * p.y / ny);
            mat(j, b) = inv_n * std::polar(1.0, phase);
        }
    }
    return mat;
}

Spectrum scatter(const CoefficientSet& coeffs, GridDims dims) {
    Spectrum spec = Spectrum::zeros(dims);
    for (std::size_t b = 0; b < coeffs.coeffs.size(); ++b) {
        const auto& bin = coeffs.support.bins[b];
        spec.at(bin.kx, bin.ky) = coeffs.coeffs[b];
    }
    return spec;
}

double dft_noise_variance(const ReconParams& params, int m) {
    return m * params.sigma_eps_sample * params.sigma_eps_sample;
}

}  // namespace

CoefficientSet least_squares_recover(const Measurements& meas, const FrequencySupport& freqs) {
    meas.validate();
    freqs.validate();
    if (freqs.dims != meas.support.dims)
        throw ShapeError("least_squares_recover: support and frequency dims differ");
    if (freqs.size() < 1)
        throw InvariantError("least_squares_recover: empty frequency support");
    if (freqs.size() > meas.size())
        throw InvariantError("least_squares_recover: more bins than measurements");

    Eigen::MatrixXcd mat = synthesis_matrix(meas.support, freqs);
    Eigen::Map<const Eigen::VectorXcd> rhs(meas.values.data(), meas.size());

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(mat);
    const auto& r_diag = qr.matrixR().diagonal();
    double r_max = 0.0, r_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < r_diag.size(); ++i) {
        double a = std::abs(r_diag(i));
        r_max = std::max(r_max, a);
        r_min = std::min(r_min, a);
    }
    double condition = (r_min > 0.0) ? r_max / r_min : std::numeric_limits<double>::infinity();
    if (condition > kMaxCondition)
        throw IllConditionedError("least_squares_recover: system is rank deficient "
                                  "(condition estimate " + std::to_string(condition) + ")",
                                  condition);

    Eigen::VectorXcd sol = qr.solve(rhs);
    CoefficientSet out{freqs, std::vector<cplx>(sol.data(), sol.data() + sol.size())};
    return out;
}

Measurements subtract_contribution(const Measurements& meas, const CoefficientSet& coeffs) {
    meas.validate();
    coeffs.validate();
    if (coeffs.coeffs.empty()) return meas;
    if (coeffs.support.dims != meas.support.dims)
        throw ShapeError("subtract_contribution: dims differ");

    const int nx = meas.support.dims.nx, ny = meas.support.dims.ny;
    const double inv_n = 1.0 / meas.support.dims.total();
    Measurements out = meas;
    for (int j = 0; j < meas.size(); ++j) {
        const auto& p = meas.support.positions[j];
        cplx acc = 0.0;
        for (std::size_t b = 0; b < coeffs.coeffs.size(); ++b) {
            const auto& bin = coeffs.support.bins[b];
            double phase = kTwoPi * (static_cast<double>(bin.kx) * p.x / nx +
                                     static_cast<double>(bin.ky) * p.y / ny);
            acc += coeffs.coeffs[b] * std::polar(1.0, phase);
        }
        out.values[j] -= inv_n * acc;
    }
    return out;
}

ReconstructionResult sfar2d_single(const Measurements& meas, const ReconParams& params) {
    meas.validate();
    params.validate();
    const int m = meas.size();
    const int n = meas.support.dims.total();

    double energy = estimate_energy(meas);
    double variance = missing_sample_variance(energy, m, n, dft_noise_variance(params, m));
    double chi = detection_threshold(variance, n, ThresholdParams{params.p_fix});

    Spectrum dft = partial_dft(meas);
    FrequencySupport detected = detect_support(dft, chi, m);

    ReconstructionResult result;
    result.coefficients.support = FrequencySupport{meas.support.dims, {}};
    result.spectrum = Spectrum::zeros(meas.support.dims);

    IterationRecord rec;
    rec.iteration = 1;
    rec.new_bins = detected.bins;
    rec.chi = chi;
    rec.energy = energy;

    if (detected.size() == 0) {
        rec.residual_energy = meas.total_energy();
        result.iterations.push_back(std::move(rec));
        result.converged = false;
        return result;
    }

    result.coefficients = least_squares_recover(meas, detected);
    rec.residual_energy = subtract_contribution(meas, result.coefficients).total_energy();
    result.iterations.push_back(std::move(rec));
    result.spectrum = scatter(result.coefficients, meas.support.dims);
    result.converged = true;
    return result;
}

ReconstructionResult sfar2d_iterative(const Measurements& meas, const ReconParams& params) {
    meas.validate();
    params.validate();
    const int m = meas.size();
    const int n = meas.support.dims.total();
    const double noise_var_dft = dft_noise_variance(params, m);
    const double initial_energy = meas.total_energy();

    ReconstructionResult result;
    result.coefficients.support = FrequencySupport{meas.support.dims, {}};
    result.spectrum = Spectrum::zeros(meas.support.dims);

    Measurements residual = meas;
    std::set<FrequencyBin> accumulated;

    for (int it = 1; it <= params.max_iterations; ++it) {
        // The external-noise term stays fixed: subtraction removes signal only.
        double energy = estimate_energy(residual);
        double variance = missing_sample_variance(energy, m, n, noise_var_dft);
        double chi = detection_threshold(variance, n, ThresholdParams{params.p_fix});

        Spectrum dft = partial_dft(residual);
        FrequencySupport detected = detect_support(dft, chi, m);

        std::vector<FrequencyBin> new_bins;
        for (const auto& b : detected.bins)
            if (!accumulated.contains(b)) new_bins.push_back(b);

        // Keep the LS system overdetermined: drop the weakest newcomers if
        // the union would exceed m bins.
        int room = m - static_cast<int>(accumulated.size());
        if (static_cast<int>(new_bins.size()) > room) {
            std::stable_sort(new_bins.begin(), new_bins.end(),
                             [&dft](const FrequencyBin& a, const FrequencyBin& b) {
                                 return std::abs(dft.at(a.kx, a.ky)) >
                                        std::abs(dft.at(b.kx, b.ky));
                             });
            new_bins.resize(std::max(room, 0));
            std::sort(new_bins.begin(), new_bins.end());
        }

        if (new_bins.empty()) {
            result.converged = !accumulated.empty();
            break;
        }
        accumulated.insert(new_bins.begin(), new_bins.end());

        FrequencySupport union_support{meas.support.dims,
                                       {accumulated.begin(), accumulated.end()}};
        result.coefficients = least_squares_recover(meas, union_support);
        residual = subtract_contribution(meas, result.coefficients);

        const double residual_energy = residual.total_energy();
        IterationRecord rec;
        rec.iteration = it;
        rec.new_bins = std::move(new_bins);
        rec.chi = chi;
        rec.energy = energy;
        rec.residual_energy = residual_energy;
        result.iterations.push_back(std::move(rec));

        if (residual_energy <= params.residual_tol * initial_energy) {
            result.converged = true;
            break;
        }
    }

    if (!accumulated.empty())
        result.spectrum = scatter(result.coefficients, meas.support.dims);
    return result;
}

Field reconstruct_field(const ReconstructionResult& result) {
    return inverse_dft(result.spectrum);
}

}  // namespace sfar
