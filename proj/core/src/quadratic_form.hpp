#pragma once

// Internal: explicit assembly of the p = 2 energy as a quadratic form in the
// INTERIOR unknowns. Shared by the dense oracle and the solver preconditioner.

#include <cstddef>
#include <utility>
#include <vector>

#include "hessmin/energy.hpp"

namespace hessmin::detail {

struct Tap {
  std::size_t node;
  double coef;
};

// Stencil rows of every Hessian component at one node, each paired with its
// multiplicity in |H|^2 (off-diagonal entries appear twice).
std::vector<std::pair<double, std::vector<Tap>>> hessian_rows(const Mesh& mesh, std::size_t node);

struct Entry {
  long row;
  long col;
  double value;
};

// E(u) = u' Q u - 2 b' u + const with weights a^p h^n. Entries of Q are
// emitted unsummed; `rhs` receives b (only when non-null, then `g` is read).
void assemble_quadratic(const EnergyModel& model, const ScalarField* g, std::vector<Entry>& q,
                        std::vector<double>* rhs, std::vector<long>& unknown);

}  // namespace hessmin::detail
