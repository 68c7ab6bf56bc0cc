#pragma once

#include "sfar/spectral.hpp"
#include "sfar/types.hpp"

#include <string>

namespace sfar {

/// 8-bit binary PGM (P5) of log10(1 + |F|), normalized to the image maximum.
std::string spectrum_to_pgm(const Spectrum& spec);

/// Magnitude values, one CSV row per kx, ny columns.
std::string spectrum_to_csv(const Spectrum& spec);

/// Complex field samples as "x,y,re,im" rows.
std::string field_to_csv(const Field& field);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace sfar
