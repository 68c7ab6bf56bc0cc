#include "sfar/sampling.hpp"

#include "sfar/rng.hpp"

#include <algorithm>
#include <numeric>

namespace sfar {

void SampleSupport::validate() const {
    dims.validate();
    if (positions.empty() || static_cast<int>(positions.size()) > dims.total())
        throw InvariantError("SampleSupport: require 1 <= m <= nx*ny");
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const auto& p = positions[i];
        if (p.x < 0 || p.x >= dims.nx || p.y < 0 || p.y >= dims.ny)
            throw InvariantError("SampleSupport: position outside grid");
        if (i > 0 && !(positions[i - 1] < p))
            throw InvariantError("SampleSupport: positions not in canonical order or duplicated");
    }
}

void Measurements::validate() const {
    support.validate();
    if (values.size() != support.positions.size())
        throw InvariantError("Measurements: value count does not match support");
}

double Measurements::total_energy() const {
    double e = 0.0;
    for (const auto& v : values) e += std::norm(v);
    return e;
}

SampleSupport uniform_support(GridDims dims, int m, std::uint64_t seed) {
    dims.validate();
    const int n = dims.total();
    if (m < 1 || m > n)
        throw CapacityError("uniform_support: require 1 <= m <= nx*ny");

    std::vector<int> cells(n);
    std::iota(cells.begin(), cells.end(), 0);
    auto rng = make_rng(seed);
    // Partial Fisher-Yates: only the first m slots are needed.
    for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(cells[i], cells[pick(rng)]);
    }
    cells.resize(m);
    std::sort(cells.begin(), cells.end());

    SampleSupport support{dims, {}};
    support.positions.reserve(m);
    for (int c : cells) support.positions.push_back({c / dims.ny, c % dims.ny});
    return support;
}

Measurements extract(const Field& field, const SampleSupport& support) {
    field.validate();
    support.validate();
    if (field.dims != support.dims)
        throw ShapeError("extract: field and support dims differ");
    Measurements meas{support, {}};
    meas.values.reserve(support.positions.size());
    for (const auto& p : support.positions) meas.values.push_back(field.at(p.x, p.y));
    return meas;
}

double sampling_ratio(const SampleSupport& support) {
    support.validate();
    return static_cast<double>(support.size()) / support.dims.total();
}

}  // namespace sfar
