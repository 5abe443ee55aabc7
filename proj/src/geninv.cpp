#include "einvert/geninv.hpp"

#include <algorithm>
#include <sstream>

#include "einvert/kernels.hpp"
#include "einvert/matricize.hpp"

namespace einvert {

namespace {

void check_weight_block(const HpdWeight& w, const std::vector<std::size_t>& block,
                        const char* which) {
  if (w.extents() != block) {
    std::ostringstream msg;
    msg << which << " weight extents " << format_extents(w.extents())
        << " do not match the tensor block " << format_extents(block);
    throw ShapeMismatchError(msg.str());
  }
}

}  // namespace

double PenroseReport::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

DenseTensor mpinverse(const DenseTensor& a, const Tolerance& tol) {
  return unflatten(matrix_pinv(flatten(a), tol), a.signature().swapped());
}

DenseTensor weighted_mpinverse(const DenseTensor& a, const HpdWeight& m,
                               const HpdWeight& n, const Tolerance& tol) {
  check_weight_block(m, a.signature().row_extents, "row");
  check_weight_block(n, a.signature().col_extents, "col");
  // Transform: pre/post-multiplying by the weight square roots carries the
  // weighted problem to an unweighted one whose pinv, transformed back, is
  // the unique solution of the four weighted equations.
  DenseTensor core = einstein_product(m.sqrt(), einstein_product(a, n.inverse_sqrt()));
  DenseTensor core_pinv = mpinverse(core, tol);
  return einstein_product(n.inverse_sqrt(), einstein_product(core_pinv, m.sqrt()));
}

DenseTensor weighted_conj_transpose(const DenseTensor& a, const HpdWeight& m,
                                    const HpdWeight& n) {
  check_weight_block(m, a.signature().row_extents, "row");
  check_weight_block(n, a.signature().col_extents, "col");
  return einstein_product(n.inverse(), einstein_product(conj_transpose(a), m.tensor()));
}

namespace {

PenroseReport residuals_impl(const DenseTensor& a, const DenseTensor& x,
                             const DenseTensor* m_tensor, const DenseTensor* n_tensor,
                             double tolerance) {
  if (x.signature() != a.signature().swapped()) {
    throw ShapeMismatchError(
        "pseudo-inverse candidate must carry the swapped signature of the input");
  }
  PenroseReport report;
  report.tolerance = tolerance;

  DenseTensor ax = einstein_product(a, x);
  DenseTensor xa = einstein_product(x, a);
  report.residuals[0] = rel_distance(einstein_product(ax, a), a);
  report.residuals[1] = rel_distance(einstein_product(xa, x), x);

  DenseTensor max = m_tensor ? einstein_product(*m_tensor, ax) : ax;
  DenseTensor nxa = n_tensor ? einstein_product(*n_tensor, xa) : xa;
  report.residuals[2] = rel_distance(conj_transpose(max), max);
  report.residuals[3] = rel_distance(conj_transpose(nxa), nxa);

  report.verdict = report.max_residual() <= tolerance;
  return report;
}

}  // namespace

PenroseReport penrose_residuals(const DenseTensor& a, const DenseTensor& x,
                                double tolerance) {
  return residuals_impl(a, x, nullptr, nullptr, tolerance);
}

PenroseReport weighted_penrose_residuals(const DenseTensor& a, const DenseTensor& x,
                                         const HpdWeight& m, const HpdWeight& n,
                                         double tolerance) {
  check_weight_block(m, a.signature().row_extents, "row");
  check_weight_block(n, a.signature().col_extents, "col");
  return residuals_impl(a, x, &m.tensor(), &n.tensor(), tolerance);
}

}  // namespace einvert
