#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bsz {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Monomial z^z w^w.
struct Exponent {
  int z = 0;
  int w = 0;
  friend bool operator==(const Exponent& a, const Exponent& b) { return a.z == b.z && a.w == b.w; }
};

inline Exponent operator-(const Exponent& a, const Exponent& b) { return {a.z - b.z, a.w - b.w}; }
inline Exponent operator+(const Exponent& a, const Exponent& b) { return {a.z + b.z, a.w + b.w}; }

// z^k by repeated multiplication (exact at z = 0, unlike std::pow).
inline cplx ipow(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// Monomials of [0,n]x[0,m], z-major.
std::vector<Exponent> rectangle(int n, int m);

}  // namespace bsz
