#pragma once

#include "sfar/sampling.hpp"
#include "sfar/spectral.hpp"
#include "sfar/types.hpp"

namespace sfar {

/// Recovered DFT-domain coefficients aligned with their frequency support.
/// Convention: inverse_dft of the scatter of coeffs reproduces the signal,
/// so a component of amplitude A carries the coefficient nx*ny*A.
struct CoefficientSet {
    FrequencySupport support;
    std::vector<cplx> coeffs;

    void validate() const {
        support.validate();
        if (coeffs.size() != support.bins.size())
            throw InvariantError("CoefficientSet: coefficient count does not match support");
    }
};

struct ReconParams {
    double p_fix = 0.99;
    int max_iterations = 10;
    double residual_tol = 1e-6;  // relative to initial measurement energy
    double sigma_eps_sample = 0.0;

    void validate() const {
        ThresholdParams{p_fix}.validate();
        if (max_iterations < 1)
            throw InvariantError("ReconParams: max_iterations must be >= 1");
        if (residual_tol < 0.0 || sigma_eps_sample < 0.0)
            throw InvariantError("ReconParams: negative tolerance or noise level");
    }
};

struct IterationRecord {
    int iteration = 0;
    std::vector<FrequencyBin> new_bins;  // bins first detected in this iteration
    double chi = 0.0;
    double energy = 0.0;           // per-sample energy the threshold was built from
    double residual_energy = 0.0;  // sum |y - model|^2 after this iteration's solve
};

struct ReconstructionResult {
    CoefficientSet coefficients;
    Spectrum spectrum;  // full grid, zero outside the recovered support
    std::vector<IterationRecord> iterations;
    bool converged = false;
};

/// Solve min ||y - Psi(Omega, freqs) S||_2 for the DFT coefficients S on the
/// given bins, via column-pivoted QR. Throws IllConditionedError when the
/// estimated condition number exceeds 1e12.
CoefficientSet least_squares_recover(const Measurements& meas, const FrequencySupport& freqs);

/// Subtract the modeled contribution of the coefficients from the
/// measurement values; the support is unchanged.
Measurements subtract_contribution(const Measurements& meas, const CoefficientSet& coeffs);

/// Single-step reconstruction: threshold once, solve once.
ReconstructionResult sfar2d_single(const Measurements& meas, const ReconParams& params);

/// Iterative reconstruction: detect on the residual spectrum, re-solve on
/// the accumulated support against the original measurements, subtract,
/// shrink the threshold from the residual energy, repeat.
ReconstructionResult sfar2d_iterative(const Measurements& meas, const ReconParams& params);

/// Inverse transform of the recovered spectrum.
Field reconstruct_field(const ReconstructionResult& result);

}  // namespace sfar
