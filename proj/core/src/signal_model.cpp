#include "sfar/signal_model.hpp"

#include "sfar/rng.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace sfar {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void SignalModel::validate() const {
    dims.validate();
    if (components.empty())
        throw InvariantError("SignalModel: at least one component required");
    if (static_cast<int>(components.size()) > dims.total() / 4)
        throw CapacityError("SignalModel: K exceeds nx*ny/4");
    std::set<std::pair<int, int>> seen;
    for (const auto& c : components) {
        if (c.amplitude <= 0.0)
            throw InvariantError("SignalModel: component amplitude must be > 0");
        if (c.kx < 0 || c.kx >= dims.nx || c.ky < 0 || c.ky >= dims.ny)
            throw InvariantError("SignalModel: frequency bin outside grid");
        if (!seen.insert({c.kx, c.ky}).second)
            throw InvariantError("SignalModel: duplicate frequency bin");
    }
}

double SignalModel::energy() const {
    double e = 0.0;
    for (const auto& c : components) e += c.amplitude * c.amplitude;
    return e;
}

cplx evaluate_at(const SignalModel& model, int x, int y) {
    cplx acc = 0.0;
    for (const auto& c : model.components) {
        double phase = kTwoPi * (static_cast<double>(c.kx) * x / model.dims.nx +
                                 static_cast<double>(c.ky) * y / model.dims.ny);
        acc += c.amplitude * std::polar(1.0, phase);
    }
    return acc;
}

Field synthesize(const SignalModel& model) {
    model.validate();
    const int nx = model.dims.nx, ny = model.dims.ny;
    Field out = Field::zeros(model.dims);
    // Separable per component: one twiddle table per axis.
    std::vector<cplx> wx(nx), wy(ny);
    for (const auto& c : model.components) {
        for (int x = 0; x < nx; ++x)
            wx[x] = std::polar(c.amplitude, kTwoPi * (static_cast<double>(c.kx) * x / nx));
        for (int y = 0; y < ny; ++y)
            wy[y] = std::polar(1.0, kTwoPi * (static_cast<double>(c.ky) * y / ny));
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y) out.at(x, y) += wx[x] * wy[y];
    }
    return out;
}

Field add_external_noise(const Field& field, const NoiseParams& params) {
    field.validate();
    params.validate();
    if (params.sigma_eps_sample == 0.0) return field;
    Field out = field;
    auto rng = make_rng(params.seed);
    // Half the total complex variance per quadrature part.
    std::normal_distribution<double> gauss(0.0, params.sigma_eps_sample / std::sqrt(2.0));
    for (auto& v : out.values) {
        double re = gauss(rng);
        double im = gauss(rng);
        v += cplx(re, im);
    }
    return out;
}

SignalModel random_model(GridDims dims, int k, double amp_min, double amp_max,
                         std::uint64_t seed) {
    dims.validate();
    if (k < 1) throw InvariantError("random_model: k must be >= 1");
    if (k > dims.total() / 4)
        throw CapacityError("random_model: k exceeds nx*ny/4");
    if (!(0.0 < amp_min) || amp_min > amp_max)
        throw InvariantError("random_model: require 0 < amp_min <= amp_max");

    auto rng = make_rng(seed);
    std::uniform_int_distribution<int> bin(0, dims.total() - 1);
    std::uniform_real_distribution<double> amp(amp_min, amp_max);

    SignalModel model{dims, {}};
    std::set<int> used;
    while (static_cast<int>(model.components.size()) < k) {
        int b = bin(rng);
        if (!used.insert(b).second) continue;
        Component c;
        c.kx = b / dims.ny;
        c.ky = b % dims.ny;
        c.amplitude = amp(rng);
        model.components.push_back(c);
    }
    return model;
}

}  // namespace sfar
