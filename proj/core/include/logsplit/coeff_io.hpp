#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "logsplit/spectral.hpp"

namespace logsplit {

/// Header of a persisted coefficient list. Every field is 64 bits wide and
/// little-endian: magic "LOGSP1\0\0", d, K, seed, s, β. The body holds
/// interleaved (re, im) doubles for k = -K..K (row-major for d > 1).
struct CoefficientHeader {
  std::int64_t dim = 1;
  std::int64_t cutoff = 0;
  std::uint64_t seed = 0;
  double s = 0.0;
  double beta = 0.0;
};

struct CoefficientFile {
  CoefficientHeader header;
  SpectralField field;
};

inline constexpr char kCoefficientMagic[8] = {'L', 'O', 'G', 'S', 'P', '1', '\0', '\0'};

void write_coefficients(std::ostream &out, const SpectralField &field,
                        const CoefficientHeader &header);
void write_coefficients(const std::filesystem::path &path,
                        const SpectralField &field,
                        const CoefficientHeader &header);

/// Throws FormatError on a bad magic, truncated body or inconsistent header.
CoefficientFile read_coefficients(std::istream &in);
CoefficientFile read_coefficients(const std::filesystem::path &path);

/// CSV with header "k,re,im" (1D) or "k1,...,kd,re,im"; 17 significant digits.
void write_coefficients_csv(std::ostream &out, const SpectralField &field);

} // namespace logsplit
