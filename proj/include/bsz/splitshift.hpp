#pragma once

#include <utility>
#include <vector>

#include "bsz/momentspace.hpp"

namespace bsz {

inline constexpr double kConditionTolerance = 1e-8;

// Truncated shift operators in orthonormal bases:
//   A(i,j) = <z e1_j, w e2_i>   (m x n)
//   B(i,j) = <w f2_j, e1_i>     (n x m)
//   T(i,j) = <z e1_j, e1_i>     (n x n)
// with e1 spanning E1(n-1,m), e2 spanning E2(n,m-1), f2 spanning F2(n,m-1).
struct ShiftOperators {
  int n = 0, m = 0;
  CMatrix A, B, T;
  CMatrix E1, wE2, wF2;  // universe coordinates of the bases
};

struct StratificationReport {
  bool holds = false;
  double max_violation = 0.0;  // max_j |A T^j B|
  double a_norm = 0.0;
  int dimA = 0, dimB = 0;
  int d_min = 0, d_max = -1;  // empty interval when the condition fails
};

// Orthonormal bases, in E1(n-1,m) coordinates, of the Krylov spaces
// span{T^j B f} and span{(T^*)^j A^* f}.
struct CanonicalSpaces {
  CMatrix calA, calB;
};

struct ShiftSplit {
  SubspaceBasis K1, K2;
  BiPoly split_poly;  // unit norm, canonical phase
  int d = 0;          // dim K1
};

// Largest violations of the split-shift relations for a constructed split.
struct SplitDiagnostics {
  double decomposition = 0.0;  // K1 + K2 vs E1(n-1,m), and K1 ⟂ K2
  double k1_perp_zk2 = 0.0;
  double containment = 0.0;    // K1, zK2 inside E1(n,m)
  double split_poly = 0.0;     // split_poly inside E1(n,m), orthogonal to K1 + zK2
  double max() const { return std::max(std::max(decomposition, k1_perp_zk2), std::max(containment, split_poly)); }
};

ShiftOperators build_operators(const MomentSpace& space, int n, int m);
CanonicalSpaces canonical_spaces(const ShiftOperators& ops, double rank_tol = kRankThreshold);
StratificationReport check_matrix_condition(const ShiftOperators& ops, double tol = kConditionTolerance,
                                            double rank_tol = kRankThreshold);

// Split built from explicit K1, K2 (universe coordinates, orthonormal).
ShiftSplit split_from_spaces(const MomentSpace& space, int n, int m, const CMatrix& K1, const CMatrix& K2);

ShiftSplit shift_split_from_p(const MomentSpace& space, const BiPoly& p, double margin = kRootMargin);
ShiftSplit split_poly_from_condition(const MomentSpace& space, int n, int m, int d,
                                     double tol = kConditionTolerance);
std::vector<std::pair<BiPoly, int>> enumerate_split_polys(const MomentSpace& space, const BiPoly& p_canonical,
                                                          double margin = kRootMargin);

SplitDiagnostics verify_shift_split(const MomentSpace& space, int n, int m, const ShiftSplit& split);

// Norm of the cross-Gram between F1(n-1,m) and F2(n,m-1).
double gw_cross_norm(const MomentSpace& space, int n, int m);
bool gw_check(const MomentSpace& space, int n, int m, double tol = kConditionTolerance);

// Flips roots of the z-content q of p: each chosen finite root rho turns the
// factor (z - rho) into (1 - conj(rho) z); a chosen "root at infinity"
// (degree deficit below n) becomes a factor z. Modulus on T^2 is unchanged.
// Indices run over the finite roots of q by increasing modulus, then the
// roots at infinity.
BiPoly flip_roots(const BiPoly& p, int n, const std::vector<int>& which, double margin = kRootMargin);
int flippable_count(const BiPoly& p, int n);

}  // namespace bsz
