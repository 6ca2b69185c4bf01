#include "logsplit/coeff_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <vector>

#include "logsplit/errors.hpp"

namespace logsplit {

namespace {

static_assert(sizeof(double) == 8);

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little)
    return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i)
    r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

void put_u64(std::ostream &out, std::uint64_t v) {
  const std::uint64_t le = to_le(v);
  out.write(reinterpret_cast<const char *>(&le), 8);
}

void put_f64(std::ostream &out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream &in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char *>(&v), 8))
    throw FormatError("coefficient file truncated");
  return to_le(v);
}

double get_f64(std::istream &in) { return std::bit_cast<double>(get_u64(in)); }

} // namespace

void write_coefficients(std::ostream &out, const SpectralField &field,
                        const CoefficientHeader &header) {
  if (header.dim != field.dim() || header.cutoff != field.cutoff())
    throw ConfigError("coefficient header does not match field shape");
  out.write(kCoefficientMagic, 8);
  put_u64(out, static_cast<std::uint64_t>(header.dim));
  put_u64(out, static_cast<std::uint64_t>(header.cutoff));
  put_u64(out, header.seed);
  put_f64(out, header.s);
  put_f64(out, header.beta);
  for (const cplx &c : field.coeffs()) {
    put_f64(out, c.real());
    put_f64(out, c.imag());
  }
  if (!out)
    throw FormatError("failed writing coefficient stream");
}

void write_coefficients(const std::filesystem::path &path,
                        const SpectralField &field,
                        const CoefficientHeader &header) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw FormatError("cannot open " + path.string() + " for writing");
  write_coefficients(out, field, header);
}

CoefficientFile read_coefficients(std::istream &in) {
  char magic[8];
  if (!in.read(magic, 8))
    throw FormatError("coefficient file too short for header");
  if (std::memcmp(magic, kCoefficientMagic, 8) != 0)
    throw FormatError("bad magic: not a LOGSP1 coefficient file");
  CoefficientHeader h;
  h.dim = static_cast<std::int64_t>(get_u64(in));
  h.cutoff = static_cast<std::int64_t>(get_u64(in));
  h.seed = get_u64(in);
  h.s = get_f64(in);
  h.beta = get_f64(in);
  if (h.dim < 1 || h.dim > kMaxDim)
    throw FormatError("coefficient file has invalid dimension " + std::to_string(h.dim));
  if (h.cutoff < 0 || h.cutoff > (1 << 24))
    throw FormatError("coefficient file has invalid cutoff " + std::to_string(h.cutoff));
  SpectralField field(static_cast<int>(h.dim), static_cast<int>(h.cutoff));
  for (cplx &c : field.coeffs()) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    c = {re, im};
  }
  field.require_finite();
  return {h, std::move(field)};
}

CoefficientFile read_coefficients(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FormatError("cannot open " + path.string());
  return read_coefficients(in);
}

void write_coefficients_csv(std::ostream &out, const SpectralField &field) {
  if (field.dim() == 1) {
    out << "k,re,im\n";
  } else {
    for (int i = 0; i < field.dim(); ++i)
      out << 'k' << (i + 1) << ',';
    out << "re,im\n";
  }
  out << std::setprecision(17);
  auto c = field.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f) {
    const WaveVector k = field.wave_vector(f);
    for (int i = 0; i < field.dim(); ++i)
      out << k[i] << ',';
    out << c[f].real() << ',' << c[f].imag() << '\n';
  }
}

} // namespace logsplit
