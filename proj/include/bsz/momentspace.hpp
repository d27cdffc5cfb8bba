#pragma once

#include <vector>

#include "bsz/moments.hpp"
#include "bsz/polycore.hpp"
#include "bsz/types.hpp"

namespace bsz {

inline constexpr double kRankThreshold = 1e-8;

// Orthonormal spanning set of a polynomial subspace. Columns of `vectors`
// are coefficient vectors over `support`.
struct SubspaceBasis {
  std::vector<Exponent> support;
  CMatrix vectors;

  int dim() const { return static_cast<int>(vectors.cols()); }
  // Column i as a polynomial of declared degree (n,m).
  BiPoly poly(int i, int n, int m) const;
  std::vector<BiPoly> polys(int n, int m) const;
};

enum class SpaceTag { E1, F1, E2, F2, H, ProjectedSpan };

// E1(k,l) = P_{k,l} - w P_{k,l-1}     F1(k,l) = P_{k,l} - P_{k,l-1}
// E2(k,l) = P_{k,l} - z P_{k-1,l}     F2(k,l) = P_{k,l} - P_{k-1,l}
// H(n,M)  = P_{2n,M} - span{monomials except z^n}
// ProjectedSpan: orthonormalized projection of `generators` onto `target`.
struct SpaceSpec {
  SpaceTag tag = SpaceTag::E1;
  int k = 0, l = 0;
  std::vector<BiPoly> generators;
  std::vector<SpaceSpec> target;  // at most one entry

  static SpaceSpec E1(int k, int l) { return {SpaceTag::E1, k, l, {}, {}}; }
  static SpaceSpec F1(int k, int l) { return {SpaceTag::F1, k, l, {}, {}}; }
  static SpaceSpec E2(int k, int l) { return {SpaceTag::E2, k, l, {}, {}}; }
  static SpaceSpec F2(int k, int l) { return {SpaceTag::F2, k, l, {}, {}}; }
  static SpaceSpec H(int n, int M) { return {SpaceTag::H, n, M, {}, {}}; }
  static SpaceSpec projected(std::vector<BiPoly> gens, const SpaceSpec& onto) {
    return {SpaceTag::ProjectedSpan, 0, 0, std::move(gens), {onto}};
  }
};

struct Projection {
  CVector coeffs;    // in the orthonormal basis
  CVector residual;  // coefficient vector over the universe
};

// Inner-product space of polynomials supported in [0,N]x[0,M] with
// <f,g> = g^* H f, H(r,c) = c_{u_r - u_c}.
class MomentSpace {
 public:
  MomentSpace(const MomentTable& table, int N, int M);

  int N() const { return N_; }
  int M() const { return M_; }
  int dim() const { return static_cast<int>(universe_.size()); }
  const std::vector<Exponent>& universe() const { return universe_; }
  int index(int s, int t) const { return s * (M_ + 1) + t; }
  const CMatrix& gram() const { return H_; }
  const MomentTable& table() const { return table_; }
  double min_eigenvalue() const { return min_eig_; }

  CVector vec(const BiPoly& p) const;
  BiPoly poly(const CVector& v) const;
  BiPoly poly(const CVector& v, int n, int m) const;

  cplx inner(const CVector& f, const CVector& g) const { return g.dot(H_ * f); }
  double norm(const CVector& f) const { return std::sqrt(std::max(inner(f, f).real(), 0.0)); }
  // (i,j) = <V_j, W_i>
  CMatrix cross(const CMatrix& V, const CMatrix& W) const { return W.adjoint() * H_ * V; }

  // Multiplication by z^dz w^dw; throws if the result leaves the universe.
  CMatrix shift(const CMatrix& V, int dz, int dw) const;

  // Orthonormal basis of the column span, rank decided relative to the
  // largest eigenvalue of V^* H V.
  CMatrix orthonormalize(const CMatrix& V, double rank_tol = kRankThreshold) const;
  // Orthonormal basis of span(keep) minus span(removed) for monomial sets.
  CMatrix complement(const std::vector<Exponent>& keep, const std::vector<Exponent>& removed) const;
  // Orthogonal complement of span(Q) inside span(P), both orthonormal.
  CMatrix complement_in(const CMatrix& P, const CMatrix& Q, double rank_tol = kRankThreshold) const;
  // Orthogonal projection of columns of V onto the span of orthonormal Q.
  CMatrix project_onto(const CMatrix& V, const CMatrix& Q) const { return Q * (Q.adjoint() * H_ * V); }

  SubspaceBasis basis(const SpaceSpec& spec) const;
  CMatrix basis_matrix(const SpaceSpec& spec) const;
  SubspaceBasis wrap(const CMatrix& V) const { return {universe_, V}; }

  // Largest sine of a principal angle from span(Q1) to span(Q2).
  double max_angle(const CMatrix& Q1, const CMatrix& Q2) const;
  // Largest deviation of Q^* H Q from the identity.
  double orthonormality_defect(const CMatrix& Q) const;

 private:
  MomentTable table_;
  int N_, M_;
  std::vector<Exponent> universe_;
  CMatrix H_;
  double min_eig_ = 0.0;
};

// Makes the first coefficient above 1e-12 * max real positive, per column.
CMatrix normalize_phase(const CMatrix& V);

// Gram-inverse construction of phi_0..phi_m spanning E2(n,m).
std::vector<BiPoly> phi_sequence(const MomentSpace& space, int n, int m);

Projection project(const MomentSpace& space, const BiPoly& f, const SubspaceBasis& onto);

cplx kernel_eval(const SubspaceBasis& basis, cplx z, cplx w, cplx zeta, cplx eta);

}  // namespace bsz
