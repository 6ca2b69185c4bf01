#include "logsplit/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "logsplit/errors.hpp"

namespace logsplit {

namespace {

std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex *p) const noexcept { fftw_free(p); }
};

} // namespace

struct FourierTransform::Impl {
  int dim;
  int nodes;
  std::size_t total;
  std::unique_ptr<fftw_complex[], FftwFree> buffer;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  // Buffer offset of the node holding wavenumber k (wrapped mod M).
  std::size_t buffer_index(const WaveVector &k) const {
    std::size_t idx = 0;
    for (int i = 0; i < dim; ++i) {
      int w = k[i] % nodes;
      if (w < 0)
        w += nodes;
      idx = idx * static_cast<std::size_t>(nodes) + static_cast<std::size_t>(w);
    }
    return idx;
  }
};

FourierTransform::FourierTransform(int dim, int nodes_per_dim)
    : impl_(std::make_unique<Impl>()) {
  if (dim < 1 || dim > kMaxDim)
    throw ConfigError("FourierTransform: dimension out of range");
  if (nodes_per_dim < 1)
    throw ConfigError("FourierTransform: nodes_per_dim must be positive");
  impl_->dim = dim;
  impl_->nodes = nodes_per_dim;
  impl_->total = 1;
  int n[kMaxDim];
  for (int i = 0; i < dim; ++i) {
    impl_->total *= static_cast<std::size_t>(nodes_per_dim);
    n[i] = nodes_per_dim;
  }
  impl_->buffer.reset(fftw_alloc_complex(impl_->total));
  if (!impl_->buffer)
    throw Error("FourierTransform: allocation failed");

  // FFTW_ESTIMATE keeps plans deterministic from run to run.
  std::lock_guard lock(planner_mutex());
  impl_->fwd = fftw_plan_dft(dim, n, impl_->buffer.get(), impl_->buffer.get(),
                             FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft(dim, n, impl_->buffer.get(), impl_->buffer.get(),
                             FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd)
    throw Error("FourierTransform: plan creation failed");
}

FourierTransform::~FourierTransform() {
  if (!impl_)
    return;
  std::lock_guard lock(planner_mutex());
  if (impl_->fwd)
    fftw_destroy_plan(impl_->fwd);
  if (impl_->bwd)
    fftw_destroy_plan(impl_->bwd);
}

int FourierTransform::dim() const noexcept { return impl_->dim; }
int FourierTransform::nodes_per_dim() const noexcept { return impl_->nodes; }

void FourierTransform::forward(std::span<const cplx> values,
                               SpectralField &out) {
  const Impl &im = *impl_;
  if (values.size() != im.total)
    throw ConfigError("forward: value count does not match grid");
  if (out.dim() != im.dim)
    throw ConfigError("forward: dimension mismatch");
  if (im.nodes < 2 * out.cutoff() + 1)
    throw ConfigError("forward: M = " + std::to_string(im.nodes) +
                      " < 2N+1 = " + std::to_string(2 * out.cutoff() + 1));

  auto *buf = reinterpret_cast<cplx *>(im.buffer.get());
  std::copy(values.begin(), values.end(), buf);
  fftw_execute(im.fwd);

  // x_j = -π + 2πj/M gives e^{-ik x_j} = (-1)^k e^{-2πi kj/M}.
  const double scale = 1.0 / static_cast<double>(im.total);
  auto coeffs = out.coeffs();
  for (std::size_t f = 0; f < coeffs.size(); ++f) {
    const WaveVector k = out.wave_vector(f);
    int parity = 0;
    for (int i = 0; i < im.dim; ++i)
      parity += k[i];
    const double sign = (parity & 1) ? -scale : scale;
    coeffs[f] = sign * buf[im.buffer_index(k)];
  }
}

void FourierTransform::synthesize(const SpectralField &in,
                                  std::span<cplx> values) {
  const Impl &im = *impl_;
  if (values.size() != im.total)
    throw ConfigError("synthesize: value count does not match grid");
  if (in.dim() != im.dim)
    throw ConfigError("synthesize: dimension mismatch");
  if (im.nodes < 2 * in.cutoff() + 1)
    throw ConfigError("synthesize: M < 2N+1");

  auto *buf = reinterpret_cast<cplx *>(im.buffer.get());
  std::fill(buf, buf + im.total, cplx{});
  auto coeffs = in.coeffs();
  for (std::size_t f = 0; f < coeffs.size(); ++f) {
    const WaveVector k = in.wave_vector(f);
    int parity = 0;
    for (int i = 0; i < im.dim; ++i)
      parity += k[i];
    buf[im.buffer_index(k)] = (parity & 1) ? -coeffs[f] : coeffs[f];
  }
  fftw_execute(im.bwd);
  std::copy(buf, buf + im.total, values.begin());
}

FourierTransform &transform_for(int dim, int nodes_per_dim) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<FourierTransform>>
      cache;
  auto &slot = cache[{dim, nodes_per_dim}];
  if (!slot)
    slot = std::make_unique<FourierTransform>(dim, nodes_per_dim);
  return *slot;
}

} // namespace logsplit
