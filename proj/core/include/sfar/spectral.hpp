#pragma once

#include "sfar/sampling.hpp"
#include "sfar/types.hpp"

namespace sfar {

/// Dense nx-by-ny complex DFT array, row-major, indexed by (kx, ky).
struct Spectrum {
    GridDims dims;
    std::vector<cplx> values;

    cplx& at(int kx, int ky) { return values[static_cast<std::size_t>(kx) * dims.ny + ky]; }
    const cplx& at(int kx, int ky) const {
        return values[static_cast<std::size_t>(kx) * dims.ny + ky];
    }
    double max_magnitude() const;

    static Spectrum zeros(GridDims dims) {
        dims.validate();
        return Spectrum{dims, std::vector<cplx>(static_cast<std::size_t>(dims.total()))};
    }
    void validate() const {
        dims.validate();
        if (values.size() != static_cast<std::size_t>(dims.total()))
            throw InvariantError("Spectrum: value array shape does not match dims");
    }
};

struct NoiseStats {
    double energy = 0.0;    // estimate of sum A_i^2
    double variance = 0.0;  // total DFT-bin variance, external noise folded in
    int m = 0;
    int n = 0;
};

struct ThresholdParams {
    double p_fix = 0.99;

    void validate() const {
        if (!(p_fix > 0.0) || !(p_fix < 1.0))
            throw InvariantError("ThresholdParams: p_fix must lie in (0, 1)");
    }
};

struct FrequencyBin {
    int kx = 0;
    int ky = 0;
    bool operator==(const FrequencyBin&) const = default;
    auto operator<=>(const FrequencyBin&) const = default;  // row-major order
};

/// Detected signal bins, canonical row-major order, no duplicates.
struct FrequencySupport {
    GridDims dims;
    std::vector<FrequencyBin> bins;

    int size() const { return static_cast<int>(bins.size()); }
    void validate() const;
};

/// Forward DFT restricted to the available samples (unnormalized sum);
/// identical to the full DFT of the zero-filled field.
Spectrum partial_dft(const Measurements& meas);

/// Unnormalized forward 2D DFT over the full grid.
Spectrum full_dft(const Field& field);

/// Inverse 2D DFT with 1/(nx*ny) normalization.
Field inverse_dft(const Spectrum& spec);

/// Per-sample energy of the measurements, sum |y[j]|^2 / m.
double estimate_energy(const Measurements& meas);

/// DFT-bin variance induced by missing samples, plus an external-noise
/// variance already expressed in the DFT domain:
///   sigma^2 = energy * m * (n - m) / (n - 1) + noise_var_dft.
/// For per-sample external noise of std sigma_eps, noise_var_dft = m * sigma_eps^2.
double missing_sample_variance(double energy, int m, int n, double noise_var_dft);

/// Magnitude threshold exceeded by noise-only bins with probability 1 - p_fix:
///   chi = sqrt(variance) * sqrt(-ln(1 - p_fix^(1/n))).
double detection_threshold(double variance, int n, const ThresholdParams& params);

/// Bins with |F| strictly above chi, largest `cap` magnitudes kept on
/// overflow (ties broken in canonical order). Magnitudes below a relative
/// floating-point floor of the spectrum peak never qualify.
FrequencySupport detect_support(const Spectrum& spec, double chi, int cap);

}  // namespace sfar
