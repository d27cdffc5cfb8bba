#pragma once

#include <vector>

#include "bsz/polycore.hpp"
#include "bsz/types.hpp"

namespace bsz {

// c(j,k) = T(z^{-j} w^{-k}) for (j,k) in [-jmax,jmax] x [-kmax,kmax].
class MomentTable {
 public:
  MomentTable() = default;
  MomentTable(int jmax, int kmax);
  // Takes a raw (2J+1)x(2K+1) table and enforces Hermitian symmetry by
  // averaging c(j,k) with conj c(-j,-k).
  MomentTable(int jmax, int kmax, const CMatrix& raw);

  int jmax() const { return jmax_; }
  int kmax() const { return kmax_; }
  const CMatrix& data() const { return c_; }
  // Quadrature grid per axis that produced the table; 0 if supplied.
  int grid() const { return grid_; }
  void set_grid(int g) { grid_ = g; }

  bool covers(int j, int k) const { return std::abs(j) <= jmax_ && std::abs(k) <= kmax_; }
  cplx at(int j, int k) const;
  cplx at(const Exponent& u) const { return at(u.z, u.w); }

  MomentTable restricted(int jmax, int kmax) const;
  MomentTable scaled(double s) const;
  // Largest |c(j,k) - conj c(-j,-k)| in the table as given.
  static double hermitian_defect(int jmax, int kmax, const CMatrix& raw);

 private:
  int jmax_ = 0, kmax_ = 0, grid_ = 0;
  CMatrix c_;
};

struct QuadratureConfig {
  int initial_grid = 64;
  int max_grid = 4096;
  double tolerance = 1e-10;
  double pole_margin = 1e-12;  // relative to the largest sampled value
};

// Laurent polynomial t(z,w) = sum t(j,k) z^j w^k over [-n,n] x [-m,m],
// stored with offset: coeffs(j+n, k+m). Real on the torus when Hermitian.
struct TrigPoly {
  int n = 0, m = 0;
  CMatrix coeffs;

  TrigPoly() : coeffs(CMatrix::Ones(1, 1)) {}
  TrigPoly(int n, int m) : n(n), m(m), coeffs(CMatrix::Zero(2 * n + 1, 2 * m + 1)) {}

  cplx& operator()(int j, int k) { return coeffs(j + n, k + m); }
  cplx operator()(int j, int k) const { return coeffs(j + n, k + m); }
  double eval(cplx z, cplx w) const;
  double hermitian_defect() const;
};

// |p|^2 on the torus as a Laurent polynomial.
TrigPoly modulus_squared(const BiPoly& p);

MomentTable moments_from_density(const BiPoly& p, int jmax, int kmax, const QuadratureConfig& cfg = {});
MomentTable moments_from_trig(const TrigPoly& t, int jmax, int kmax, const QuadratureConfig& cfg = {});

// Entry (r,c) = c_{cols[c] - rows[r]}.
CMatrix gram(const MomentTable& table, const std::vector<Exponent>& rows, const std::vector<Exponent>& cols);

struct Positivity {
  bool positive = false;
  double min_eigenvalue = 0.0;
};
Positivity is_positive(const MomentTable& table, int n, int m, double tol = 0.0);

}  // namespace bsz
