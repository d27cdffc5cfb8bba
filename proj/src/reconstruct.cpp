#include "bsz/reconstruct.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "bsz/errors.hpp"

namespace bsz {

BiPoly kernel_polynomial(const MomentSpace& space, int n, int m) {
  BiPoly K(2 * n, m);
  for (const BiPoly& phi : phi_sequence(space, n, m)) {
    CVector col0 = phi.coeffs().col(0);
    UniPoly r = reflect(UniPoly(col0, 0.0), n);
    K = K + r * phi;
  }
  return K;
}

BiPoly reconstruct_p(const MomentTable& table, int n, int m, double tol, ReconstructionDiagnostics* diag) {
  MomentSpace space(table, n, m);
  ReconstructionDiagnostics d;
  d.condition = check_matrix_condition(build_operators(space, n, m), tol);
  if (!d.condition.holds)
    throw Error(ErrorCode::MatrixConditionFails, "no Bernstein-Szego representation", d.condition.max_violation);

  d.kernel = kernel_polynomial(space, n, m);
  d.common = z_content(d.kernel);
  std::vector<UniPoly> rows;
  for (int k = 0; k <= m; ++k) rows.push_back(d.kernel.w_row(k));
  d.gcd_residual = gcd_residual(rows, d.common);
  BiPoly g = divide_z(d.kernel, d.common, 10.0 * kGcdTolerance);
  const int gdeg = g.actual_degree(1e-9).first;
  if (gdeg > n) throw Error(ErrorCode::GcdUnstable, "quotient exceeds the window degree", d.gcd_residual);
  d.g = g.resized(gdeg, m, 1e-9);
  d.n0 = n - gdeg;

  // Moments of the one-variable measure |g|^2 dmu: c'_j = <g, z^j g>.
  CVector gv = space.vec(d.g);
  std::vector<cplx> cp(static_cast<size_t>(d.n0 + 1));
  for (int j = 0; j <= d.n0; ++j) cp[j] = space.inner(gv, space.vec(d.g.shift(j, 0)));
  const int sz = d.n0 + 1;
  CMatrix C(sz, sz);
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b) C(a, b) = b >= a ? cp[b - a] : std::conj(cp[a - b]);
  Eigen::LLT<CMatrix> llt(C);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::DegenerateForm, "Toeplitz matrix is not positive");
  Eigen::JacobiSVD<CMatrix> svd(C);
  d.toeplitz_condition = svd.singularValues()(0) / svd.singularValues()(sz - 1);
  CVector e0 = CVector::Zero(sz);
  e0[0] = 1.0;
  CVector x = llt.solve(e0);  // column 0 of the inverse
  CVector qc(sz);
  for (int j = 0; j < sz; ++j) qc[j] = std::conj(x[j]) / std::sqrt(x[0].real());
  d.q = UniPoly(qc, 0.0);

  BiPoly p = (d.q * d.g).resized(n, m, 1e-9);
  double nrm = space.norm(space.vec(p));
  p = canonical_phase(p * (1.0 / nrm));
  if (diag) *diag = d;
  return p;
}

BiPoly factor_trig(const TrigPoly& t, int n, int m, const QuadratureConfig& cfg, double tol, double fit_tol) {
  MomentTable table = moments_from_trig(t, n, m, cfg);
  MomentSpace space(table, n, m);
  StratificationReport rep = check_matrix_condition(build_operators(space, n, m), tol);
  if (!rep.holds) throw Error(ErrorCode::NotFactorable, "matrix condition fails", rep.max_violation);
  // Unit norm for dsigma/t already means |p|^2 = t.
  BiPoly p = reconstruct_p(table, n, m, tol);
  const int grid = 256;
  double gap = 0.0, tmax = 0.0;
  for (int a = 0; a < grid; ++a) {
    cplx z = std::polar(1.0, 2.0 * std::numbers::pi * a / grid);
    for (int b = 0; b < grid; ++b) {
      cplx w = std::polar(1.0, 2.0 * std::numbers::pi * b / grid);
      double tv = t.eval(z, w);
      tmax = std::max(tmax, tv);
      gap = std::max(gap, std::abs(std::norm(p.eval(z, w)) - tv));
    }
  }
  if (gap > fit_tol * tmax) throw Error(ErrorCode::FitResidualTooLarge, "|p|^2 does not reproduce t", gap / tmax);
  return p;
}

}  // namespace bsz
