#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfar {

using cplx = std::complex<double>;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A stated invariant of a domain type was violated.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// A count or size exceeds what the grid can hold.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Two objects that must share grid dimensions do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// The least-squares system is numerically rank deficient.
class IllConditionedError : public Error {
public:
    IllConditionedError(const std::string& what, double condition)
        : Error(what), condition_estimate(condition) {}
    double condition_estimate;
};

struct GridDims {
    int nx = 0;  // samples along x
    int ny = 0;  // samples along y

    int total() const { return nx * ny; }
    bool operator==(const GridDims&) const = default;

    void validate() const {
        if (nx < 1 || ny < 1)
            throw InvariantError("GridDims: nx and ny must be >= 1");
    }
};

struct Component {
    double amplitude = 1.0;
    int kx = 0;  // integer frequency bin along x, in [0, nx)
    int ky = 0;  // integer frequency bin along y, in [0, ny)

    bool operator==(const Component&) const = default;
};

struct SignalModel {
    GridDims dims;
    std::vector<Component> components;

    void validate() const;
    double energy() const;  // sum of amplitude^2 over components
};

/// Dense nx-by-ny complex array in row-major order (row index = x).
struct Field {
    GridDims dims;
    std::vector<cplx> values;

    cplx& at(int x, int y) { return values[static_cast<std::size_t>(x) * dims.ny + y]; }
    const cplx& at(int x, int y) const {
        return values[static_cast<std::size_t>(x) * dims.ny + y];
    }

    static Field zeros(GridDims dims) {
        dims.validate();
        return Field{dims, std::vector<cplx>(static_cast<std::size_t>(dims.total()))};
    }

    void validate() const {
        dims.validate();
        if (values.size() != static_cast<std::size_t>(dims.total()))
            throw InvariantError("Field: value array shape does not match dims");
    }
};

struct NoiseParams {
    // Total complex variance per sample is sigma_eps_sample^2
    // (real and imaginary parts each carry half of it).
    double sigma_eps_sample = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (sigma_eps_sample < 0.0)
            throw InvariantError("NoiseParams: sigma_eps_sample must be >= 0");
    }
};

}  // namespace sfar
