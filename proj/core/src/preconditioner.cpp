#include "preconditioner.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "hessmin/error.hpp"
#include "quadratic_form.hpp"

namespace hessmin::detail {

struct BiharmonicPreconditioner::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  Eigen::Index size = 0;
};

BiharmonicPreconditioner::BiharmonicPreconditioner(const EnergyModel& model) : impl_(std::make_unique<Impl>()) {
  std::vector<Entry> entries;
  std::vector<long> unknown;
  assemble_quadratic(model.with_eps(0.0), nullptr, entries, nullptr, unknown);
  impl_->size = static_cast<Eigen::Index>(model.mesh().interior_nodes().size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(entries.size());
  // The Hessian of u'Qu is 2Q.
  for (const auto& e : entries) trip.emplace_back(e.row, e.col, 2.0 * e.value);
  Eigen::SparseMatrix<double> h(impl_->size, impl_->size);
  h.setFromTriplets(trip.begin(), trip.end());
  impl_->ldlt.compute(h);
  if (impl_->ldlt.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularSystem, "sparse factorization of the preconditioner failed");
  }
}

BiharmonicPreconditioner::~BiharmonicPreconditioner() = default;

void BiharmonicPreconditioner::apply(std::span<const double> in, std::span<double> out) const {
  const Eigen::Map<const Eigen::VectorXd> x(in.data(), impl_->size);
  Eigen::Map<Eigen::VectorXd> y(out.data(), impl_->size);
  y = impl_->ldlt.solve(x);
}

}  // namespace hessmin::detail
