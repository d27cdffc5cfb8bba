#pragma once

#include <utility>
#include <vector>

#include "bsz/types.hpp"

namespace bsz {

inline constexpr double kTrimThreshold = 1e-12;
inline constexpr double kRootMargin = 1e-6;
inline constexpr double kGcdTolerance = 1e-6;

// Univariate polynomial, coefficient i multiplies z^i. Trailing coefficients
// below kTrimThreshold * max|c| are dropped on construction; the zero
// polynomial has no coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(const CVector& coeffs, double trim = kTrimThreshold);
  UniPoly(std::initializer_list<cplx> coeffs);

  static UniPoly from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 0; }
  const CVector& coeffs() const { return c_; }
  cplx operator[](int i) const { return (i >= 0 && i < c_.size()) ? c_[i] : cplx(0.0); }
  cplx lead() const { return is_zero() ? cplx(0.0) : c_[c_.size() - 1]; }
  cplx operator()(cplx z) const;
  double norm() const { return c_.norm(); }

  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(cplx s) const;
  UniPoly monic() const;
  UniPoly derivative() const;

 private:
  CVector c_;
};

// Bivariate polynomial with declared degree bound (n,m); coeffs(j,k) is the
// coefficient of z^j w^k.
class BiPoly {
 public:
  BiPoly() : BiPoly(0, 0) {}
  BiPoly(int n, int m);
  explicit BiPoly(const CMatrix& coeffs);

  static BiPoly constant(cplx c) { return BiPoly(CMatrix::Constant(1, 1, c)); }
  static BiPoly from_uni(const UniPoly& u);

  int n() const { return static_cast<int>(c_.rows()) - 1; }
  int m() const { return static_cast<int>(c_.cols()) - 1; }
  const CMatrix& coeffs() const { return c_; }
  CMatrix& coeffs() { return c_; }
  cplx operator()(int j, int k) const { return c_(j, k); }
  cplx& operator()(int j, int k) { return c_(j, k); }

  cplx eval(cplx z, cplx w) const;
  // Coefficient polynomial of w^k as a function of z.
  UniPoly w_row(int k) const;
  // p(z, w0) and p(z0, w) as univariate polynomials.
  UniPoly at_w(cplx w0) const;
  UniPoly at_z(cplx z0) const;

  // Smallest (n',m') containing every coefficient above tol * max|c|.
  std::pair<int, int> actual_degree(double tol = kTrimThreshold) const;
  // Pads with zeros or drops rows/cols; dropping nonzero entries throws.
  BiPoly resized(int n, int m, double tol = kTrimThreshold) const;
  BiPoly trimmed(double tol = kTrimThreshold) const;

  double norm() const { return c_.norm(); }
  bool is_zero() const { return c_.cwiseAbs().maxCoeff() == 0.0; }

  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(cplx s) const;
  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly shift(int dz, int dw) const;  // multiply by z^dz w^dw
  BiPoly derivative_w() const;
  // p(z, t w)
  BiPoly scale_w(cplx t) const;

 private:
  CMatrix c_;
};

BiPoly operator*(const UniPoly& q, const BiPoly& p);

// z^j w^k conj(p)(1/z, 1/w).
BiPoly reflect(const BiPoly& p, int j, int k);
// z^d conj(u)(1/z).
UniPoly reflect(const UniPoly& u, int d);

// Companion-matrix roots with one Newton polish step, sorted by modulus.
std::vector<cplx> roots(const UniPoly& u);

struct RootSplit {
  UniPoly stable;    // zeros outside the closed disk; carries the constant
  UniPoly unstable;  // monic, zeros inside the open disk
  int beta = 0;
};

RootSplit split_stable(const UniPoly& u, double margin = kRootMargin);

struct DivMod {
  UniPoly quotient;
  UniPoly remainder;
};
DivMod divmod(const UniPoly& num, const UniPoly& den);

// Monic approximate common divisor by root clustering.
UniPoly gcd_approx(const std::vector<UniPoly>& us, double tol = kGcdTolerance);
// max_i |remainder(us[i] / g)| / |us[i]|
double gcd_residual(const std::vector<UniPoly>& us, const UniPoly& g);

// Monic approximate gcd of the w-coefficient rows of p, ignoring rows whose
// size is below 1e-9 of the largest row. Retries once with a 10x looser
// cluster radius when the first attempt leaves a remainder above `tol`.
UniPoly z_content(const BiPoly& p, double tol = kGcdTolerance);
// p / q row by row; throws GcdUnstable when the remainder exceeds `tol`.
BiPoly divide_z(const BiPoly& p, const UniPoly& q, double tol = kGcdTolerance);

// Makes the largest-modulus coefficient of z^j w^0 real and positive.
BiPoly canonical_phase(const BiPoly& p);

// Coefficient-space distance between p and q after aligning the phase of q
// to p. Both are padded to a common degree.
double phase_distance(const BiPoly& p, const BiPoly& q);

// For `samples` points z on the unit circle, every root in w of p(z,.) has
// modulus > 1 + margin. Returns the smallest such modulus seen.
double min_w_root_modulus_on_circle(const BiPoly& p, int samples = 256);

// max over an N x N grid of T^2 of | |p|^2 - |q|^2 |, and max |p|^2.
std::pair<double, double> modulus_gap_on_torus(const BiPoly& p, const BiPoly& q, int grid = 256);

}  // namespace bsz
