#pragma once

#include "sfar/types.hpp"

#include <cstdint>

namespace sfar {

struct GridPos {
    int x = 0;
    int y = 0;
    bool operator==(const GridPos&) const = default;
    auto operator<=>(const GridPos&) const = default;  // row-major order
};

/// The set of available sample positions (the measurement support),
/// stored in canonical row-major ascending order.
struct SampleSupport {
    GridDims dims;
    std::vector<GridPos> positions;

    int size() const { return static_cast<int>(positions.size()); }
    void validate() const;
};

/// Complex measurements paired with their support: values[j] is the field
/// value at positions[j].
struct Measurements {
    SampleSupport support;
    std::vector<cplx> values;

    int size() const { return static_cast<int>(values.size()); }
    void validate() const;
    double total_energy() const;  // sum |values[j]|^2
};

/// Draw m positions uniformly without replacement from the full grid.
SampleSupport uniform_support(GridDims dims, int m, std::uint64_t seed);

Measurements extract(const Field& field, const SampleSupport& support);

double sampling_ratio(const SampleSupport& support);

}  // namespace sfar
