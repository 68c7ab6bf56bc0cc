#include "sfar/image_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sfar {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string spectrum_to_pgm(const Spectrum& spec) {
    spec.validate();
    double max_log = 0.0;
    for (const auto& v : spec.values)
        max_log = std::max(max_log, std::log10(1.0 + std::abs(v)));

    std::ostringstream out;
    out << "P5\n" << spec.dims.ny << ' ' << spec.dims.nx << "\n255\n";
    for (const auto& v : spec.values) {
        double scaled = (max_log > 0.0) ? std::log10(1.0 + std::abs(v)) / max_log : 0.0;
        out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * scaled))));
    }
    return out.str();
}

std::string spectrum_to_csv(const Spectrum& spec) {
    spec.validate();
    std::ostringstream out;
    for (int kx = 0; kx < spec.dims.nx; ++kx) {
        for (int ky = 0; ky < spec.dims.ny; ++ky) {
            if (ky) out << ',';
            out << fmt(std::abs(spec.at(kx, ky)));
        }
        out << '\n';
    }
    return out.str();
}

std::string field_to_csv(const Field& field) {
    field.validate();
    std::ostringstream out;
    out << "x,y,re,im\n";
    for (int x = 0; x < field.dims.nx; ++x)
        for (int y = 0; y < field.dims.ny; ++y) {
            const auto& v = field.at(x, y);
            out << x << ',' << y << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
        }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace sfar
