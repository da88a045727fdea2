#pragma once

// Internal: inverse of the p = 2 energy Hessian (weights a^p) on the
// INTERIOR unknowns, factorized once by sparse Cholesky.

#include <memory>
#include <span>

#include "hessmin/energy.hpp"

namespace hessmin::detail {

class BiharmonicPreconditioner {
 public:
  /// Throws SingularSystem if the factorization fails.
  explicit BiharmonicPreconditioner(const EnergyModel& model);
  ~BiharmonicPreconditioner();
  BiharmonicPreconditioner(const BiharmonicPreconditioner&) = delete;
  BiharmonicPreconditioner& operator=(const BiharmonicPreconditioner&) = delete;

  /// out = H^-1 in over compact interior vectors.
  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hessmin::detail
