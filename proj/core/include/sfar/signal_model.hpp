#pragma once

#include "sfar/types.hpp"

#include <cstdint>

namespace sfar {

/// Evaluate the multicomponent complex-exponential field on the full grid:
/// s(x, y) = sum_i A_i exp(+j 2 pi kx_i x / nx) exp(+j 2 pi ky_i y / ny).
Field synthesize(const SignalModel& model);

/// Single-point evaluation of the same sum (used for measurement extraction
/// oracles and contribution subtraction).
cplx evaluate_at(const SignalModel& model, int x, int y);

/// Add independent circular complex Gaussian noise to every sample.
/// sigma_eps_sample == 0 returns the input unchanged bit-for-bit.
Field add_external_noise(const Field& field, const NoiseParams& params);

/// Draw k components with distinct frequency bins and amplitudes uniform in
/// [amp_min, amp_max]. Deterministic per seed.
SignalModel random_model(GridDims dims, int k, double amp_min, double amp_max,
                         std::uint64_t seed);

}  // namespace sfar
