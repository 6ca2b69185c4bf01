#pragma once

#include <memory>

#include "logsplit/spectral.hpp"

namespace logsplit {

/// FFT workspace for one (dim, M) grid. Not thread-safe: one instance per
/// worker. Plan creation is serialised internally because the planner is
/// process-global.
class FourierTransform {
public:
  FourierTransform(int dim, int nodes_per_dim);
  ~FourierTransform();
  FourierTransform(const FourierTransform &) = delete;
  FourierTransform &operator=(const FourierTransform &) = delete;

  int dim() const noexcept;
  int nodes_per_dim() const noexcept;

  /// values (M^d nodes) -> coefficients for k in K_N^d.
  void forward(std::span<const cplx> values, SpectralField &out);
  /// coefficients -> values (M^d nodes). Requires M >= 2N+1.
  void synthesize(const SpectralField &in, std::span<cplx> values);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Thread-local workspace cache keyed by grid shape.
FourierTransform &transform_for(int dim, int nodes_per_dim);

} // namespace logsplit
