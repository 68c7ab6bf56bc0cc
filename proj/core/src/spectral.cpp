#include "sfar/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace sfar {

namespace {

// FFTW's planner is not reentrant; plan creation/destruction is serialized.
std::mutex planner_mutex;

// Relative floor separating genuine spectral content from floating-point
// dust. Needed when chi == 0 (full sampling, no external noise): strict
// |F| > 0 would otherwise pick up roundoff at every bin.
constexpr double kMagnitudeFloor = 1e-9;

void fft2(const std::vector<cplx>& in, std::vector<cplx>& out, GridDims dims, int sign) {
    out.resize(in.size());
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_2d(dims.nx, dims.ny, src, dst, sign,
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
}

}  // namespace

double Spectrum::max_magnitude() const {
    double mx = 0.0;
    for (const auto& v : values) mx = std::max(mx, std::abs(v));
    return mx;
}

void FrequencySupport::validate() const {
    dims.validate();
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const auto& b = bins[i];
        if (b.kx < 0 || b.kx >= dims.nx || b.ky < 0 || b.ky >= dims.ny)
            throw InvariantError("FrequencySupport: bin outside grid");
        if (i > 0 && !(bins[i - 1] < b))
            throw InvariantError("FrequencySupport: bins not in canonical order or duplicated");
    }
}

Spectrum partial_dft(const Measurements& meas) {
    meas.validate();
    Field zero_filled = Field::zeros(meas.support.dims);
    for (int j = 0; j < meas.size(); ++j) {
        const auto& p = meas.support.positions[j];
        zero_filled.at(p.x, p.y) = meas.values[j];
    }
    return full_dft(zero_filled);
}

Spectrum full_dft(const Field& field) {
    field.validate();
    Spectrum spec{field.dims, {}};
    fft2(field.values, spec.values, field.dims, FFTW_FORWARD);
    return spec;
}

Field inverse_dft(const Spectrum& spec) {
    spec.validate();
    Field field{spec.dims, {}};
    fft2(spec.values, field.values, spec.dims, FFTW_BACKWARD);
    const double scale = 1.0 / spec.dims.total();
    for (auto& v : field.values) v *= scale;
    return field;
}

double estimate_energy(const Measurements& meas) {
    meas.validate();
    return meas.total_energy() / meas.size();
}

double missing_sample_variance(double energy, int m, int n, double noise_var_dft) {
    if (m < 1 || n < 1 || m > n)
        throw Error("missing_sample_variance: require 1 <= m <= n");
    if (energy < 0.0 || noise_var_dft < 0.0)
        throw InvariantError("missing_sample_variance: negative energy or noise variance");
    double dispersion = (n > 1) ? energy * m * static_cast<double>(n - m) / (n - 1) : 0.0;
    return dispersion + noise_var_dft;
}

double detection_threshold(double variance, int n, const ThresholdParams& params) {
    params.validate();
    if (variance < 0.0) throw InvariantError("detection_threshold: variance must be >= 0");
    if (n < 1) throw InvariantError("detection_threshold: n must be >= 1");
    if (variance == 0.0) return 0.0;
    double tail = 1.0 - std::pow(params.p_fix, 1.0 / n);
    return std::sqrt(variance) * std::sqrt(-std::log(tail));
}

FrequencySupport detect_support(const Spectrum& spec, double chi, int cap) {
    spec.validate();
    if (chi < 0.0) throw InvariantError("detect_support: chi must be >= 0");
    if (cap < 1) throw InvariantError("detect_support: cap must be >= 1");

    const double floor = kMagnitudeFloor * spec.max_magnitude();
    const double level = std::max(chi, floor);

    struct Hit {
        double mag;
        int index;
    };
    std::vector<Hit> hits;
    const int ny = spec.dims.ny;
    for (int i = 0; i < spec.dims.total(); ++i) {
        double mag = std::abs(spec.values[i]);
        if (mag > level) hits.push_back({mag, i});
    }
    if (static_cast<int>(hits.size()) > cap) {
        std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
            if (a.mag != b.mag) return a.mag > b.mag;
            return a.index < b.index;
        });
        hits.resize(cap);
        std::sort(hits.begin(), hits.end(),
                  [](const Hit& a, const Hit& b) { return a.index < b.index; });
    }

    FrequencySupport out{spec.dims, {}};
    out.bins.reserve(hits.size());
    for (const auto& h : hits) out.bins.push_back({h.index / ny, h.index % ny});
    return out;
}

}  // namespace sfar
