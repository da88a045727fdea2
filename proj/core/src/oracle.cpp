#include <Eigen/Dense>

#include <string>
#include <vector>

#include "hessmin/error.hpp"
#include "hessmin/solver.hpp"
#include "quadratic_form.hpp"

namespace hessmin {

ScalarField solve_linear_oracle(const EnergyModel& model, const ScalarField& g) {
  require_same_mesh(model.mesh(), g.mesh(), "solve_linear_oracle");
  if (model.p() != 2.0 || model.eps() != 0.0) {
    throw Error(ErrorKind::InvalidArg, "linear oracle needs p = 2 and eps = 0");
  }
  const Mesh& mesh = model.mesh();
  const auto interior = mesh.interior_nodes();
  if (interior.size() > kOracleMaxUnknowns) {
    throw Error(ErrorKind::TooLarge, std::to_string(interior.size()) + " unknowns exceed the dense cap of " +
                                         std::to_string(kOracleMaxUnknowns));
  }
  std::vector<detail::Entry> entries;
  std::vector<double> b;
  std::vector<long> unknown;
  detail::assemble_quadratic(model, &g, entries, &b, unknown);

  const auto m = static_cast<Eigen::Index>(interior.size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : entries) q(e.row, e.col) += e.value;
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), m);

  Eigen::LLT<Eigen::MatrixXd> chol(q);
  if (chol.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularSystem, "Cholesky factorization of the oracle system failed");
  }
  const Eigen::VectorXd x = chol.solve(rhs);
  if (!x.allFinite()) throw Error(ErrorKind::SingularSystem, "oracle solution is not finite");

  ScalarField out = g;
  for (std::size_t k = 0; k < interior.size(); ++k) out[interior[k]] = x(static_cast<Eigen::Index>(k));
  return out;
}

}  // namespace hessmin
