#include "bsz/splitshift.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/SVD>

#include "bsz/errors.hpp"

namespace bsz {

namespace {

double spectral_norm(const CMatrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(M);
  return svd.singularValues()(0);
}

CMatrix krylov_basis(const CMatrix& T, const CMatrix& X, int powers, double rank_tol) {
  const Eigen::Index n = T.rows();
  if (X.cols() == 0 || n == 0) return CMatrix(n, 0);
  CMatrix K(n, X.cols() * powers);
  CMatrix P = X;
  for (int j = 0; j < powers; ++j) {
    K.middleCols(j * X.cols(), X.cols()) = P;
    P = (T * P).eval();
  }
  Eigen::JacobiSVD<CMatrix> svd(K, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  double thresh = rank_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > thresh) ++r;
  return svd.matrixU().leftCols(r);
}

CMatrix hstack(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

double max_abs(const CMatrix& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

BiPoly unit_normalized(const MomentSpace& space, const BiPoly& p) {
  double nrm = space.norm(space.vec(p));
  if (!(nrm > 0.0)) throw Error(ErrorCode::DegenerateForm, "split polynomial has zero norm");
  return canonical_phase(p * (1.0 / nrm));
}

struct ZFactor {
  UniPoly q;  // monic
  BiPoly g;
  std::vector<cplx> roots;  // of q, increasing modulus
  int deficit = 0;          // n minus the z-degree of p
};

ZFactor z_factor(const BiPoly& p, int n) {
  ZFactor f;
  f.q = z_content(p);
  f.g = divide_z(p, f.q, 1e-6);
  f.roots = f.q.degree() > 0 ? roots(f.q) : std::vector<cplx>{};
  f.deficit = n - p.actual_degree(1e-9).first;
  if (f.deficit < 0) throw Error(ErrorCode::InvalidDegree, "polynomial exceeds the window degree");
  return f;
}

}  // namespace

ShiftOperators build_operators(const MomentSpace& space, int n, int m) {
  if (n < 0 || m < 0) throw Error(ErrorCode::InvalidDegree, "negative window");
  if (n > space.N() || m > space.M()) throw Error(ErrorCode::InsufficientMoments, "window exceeds the space caps");
  ShiftOperators ops;
  ops.n = n;
  ops.m = m;
  ops.E1 = space.basis_matrix(SpaceSpec::E1(n - 1, m));
  ops.wE2 = space.shift(space.basis_matrix(SpaceSpec::E2(n, m - 1)), 0, 1);
  ops.wF2 = space.shift(space.basis_matrix(SpaceSpec::F2(n, m - 1)), 0, 1);
  CMatrix zE1 = space.shift(ops.E1, 1, 0);
  ops.A = space.cross(zE1, ops.wE2);
  ops.B = space.cross(ops.wF2, ops.E1);
  ops.T = space.cross(zE1, ops.E1);
  return ops;
}

CanonicalSpaces canonical_spaces(const ShiftOperators& ops, double rank_tol) {
  CanonicalSpaces cs;
  cs.calB = krylov_basis(ops.T, ops.B, ops.n, rank_tol);
  cs.calA = krylov_basis(ops.T.adjoint(), ops.A.adjoint(), ops.n, rank_tol);
  return cs;
}

StratificationReport check_matrix_condition(const ShiftOperators& ops, double tol, double rank_tol) {
  StratificationReport r;
  CMatrix P = ops.B;
  for (int j = 0; j < ops.n; ++j) {
    r.max_violation = std::max(r.max_violation, spectral_norm(ops.A * P));
    P = (ops.T * P).eval();
  }
  r.a_norm = spectral_norm(ops.A);
  r.holds = r.max_violation < tol;
  CanonicalSpaces cs = canonical_spaces(ops, rank_tol);
  r.dimA = static_cast<int>(cs.calA.cols());
  r.dimB = static_cast<int>(cs.calB.cols());
  r.d_min = r.dimA;
  r.d_max = r.holds ? ops.n - r.dimB : r.dimA - 1;
  return r;
}

ShiftSplit split_from_spaces(const MomentSpace& space, int n, int m, const CMatrix& K1, const CMatrix& K2) {
  CMatrix E = space.basis_matrix(SpaceSpec::E1(n, m));
  CMatrix S = space.orthonormalize(space.project_onto(hstack(K1, space.shift(K2, 1, 0)), E));
  if (S.cols() != n) throw Error(ErrorCode::DegenerateForm, "K1 + zK2 does not have dimension n");
  CMatrix c = space.complement_in(E, S);
  ShiftSplit out;
  out.K1 = space.wrap(normalize_phase(K1));
  out.K2 = space.wrap(normalize_phase(K2));
  out.split_poly = canonical_phase(space.poly(c.col(0), n, m));
  out.d = static_cast<int>(K1.cols());
  return out;
}

ShiftSplit shift_split_from_p(const MomentSpace& space, const BiPoly& p, double margin) {
  const int n = p.n(), m = p.m();
  if (n > space.N() || m > space.M()) throw Error(ErrorCode::InsufficientMoments, "polynomial exceeds the space caps");
  UniPoly p0 = p.at_w(0.0);
  if (p0.is_zero()) throw Error(ErrorCode::RootNearTorus, "p(z,0) vanishes identically");
  RootSplit rs = split_stable(p0, margin);
  const int beta = rs.beta;
  CMatrix E1 = space.basis_matrix(SpaceSpec::E1(n - 1, m));
  auto generators = [&](const UniPoly& f, int count) {
    CMatrix G(space.dim(), count);
    for (int j = 0; j < count; ++j) G.col(j) = space.vec(BiPoly::from_uni(f).shift(j, 0));
    return space.orthonormalize(space.project_onto(G, E1));
  };
  CMatrix K1 = generators(rs.stable, beta);
  CMatrix K2 = generators(rs.unstable, n - beta);
  if (K1.cols() != beta || K2.cols() != n - beta)
    throw Error(ErrorCode::DegenerateForm, "projected generators lost rank");
  return split_from_spaces(space, n, m, K1, K2);
}

int flippable_count(const BiPoly& p, int n) {
  ZFactor f = z_factor(p, n);
  return static_cast<int>(f.roots.size()) + f.deficit;
}

BiPoly flip_roots(const BiPoly& p, int n, const std::vector<int>& which, double) {
  ZFactor f = z_factor(p, n);
  const int finite = static_cast<int>(f.roots.size());
  std::vector<bool> flip(static_cast<size_t>(finite + f.deficit), false);
  for (int i : which) {
    if (i < 0 || i >= static_cast<int>(flip.size())) throw Error(ErrorCode::InvalidInput, "flip index out of range");
    flip[static_cast<size_t>(i)] = true;
  }
  UniPoly q{1.0};
  for (int i = 0; i < finite; ++i) {
    cplx r = f.roots[static_cast<size_t>(i)];
    q = q * (flip[static_cast<size_t>(i)] ? UniPoly{1.0, -std::conj(r)} : UniPoly{-r, 1.0});
  }
  for (int i = finite; i < finite + f.deficit; ++i)
    if (flip[static_cast<size_t>(i)]) q = q * UniPoly{0.0, 1.0};
  return (q * f.g).resized(n, p.m(), 1e-9);
}

ShiftSplit split_poly_from_condition(const MomentSpace& space, int n, int m, int d, double tol) {
  ShiftOperators ops = build_operators(space, n, m);
  StratificationReport rep = check_matrix_condition(ops, tol);
  if (!rep.holds) throw Error(ErrorCode::MatrixConditionFails, "matrix condition fails", rep.max_violation);
  if (d < rep.d_min || d > rep.d_max)
    throw Error(ErrorCode::DNotAdmissible,
                "d outside [" + std::to_string(rep.d_min) + "," + std::to_string(rep.d_max) + "]");
  CanonicalSpaces cs = canonical_spaces(ops);
  if (d == rep.d_max && d != rep.d_min) {
    CMatrix K2 = ops.E1 * cs.calB;
    CMatrix K1 = space.complement_in(ops.E1, K2);
    return split_from_spaces(space, n, m, K1, K2);
  }
  CMatrix K1 = ops.E1 * cs.calA;
  CMatrix K2 = space.complement_in(ops.E1, K1);
  ShiftSplit minimal = split_from_spaces(space, n, m, K1, K2);
  if (d == rep.d_min) return minimal;
  // Intermediate strata: flip the d - dim A smallest-modulus roots of the
  // z-content of the minimal split polynomial.
  std::vector<int> which;
  for (int i = 0; i < d - rep.d_min; ++i) which.push_back(i);
  BiPoly pd = flip_roots(minimal.split_poly, n, which);
  ShiftSplit out = shift_split_from_p(space, pd);
  if (out.d != d) throw Error(ErrorCode::DegenerateForm, "root flip did not reach the requested stratum");
  return out;
}

std::vector<std::pair<BiPoly, int>> enumerate_split_polys(const MomentSpace& space, const BiPoly& p_canonical,
                                                          double margin) {
  const int n = p_canonical.n();
  const int count = flippable_count(p_canonical, n);
  if (count > 20) throw Error(ErrorCode::InvalidInput, "too many flippable roots to enumerate");
  std::vector<std::pair<BiPoly, int>> out;
  for (unsigned mask = 0; mask < (1u << count); ++mask) {
    std::vector<int> which;
    for (int i = 0; i < count; ++i)
      if (mask & (1u << i)) which.push_back(i);
    BiPoly pi = unit_normalized(space, flip_roots(p_canonical, n, which, margin));
    bool dup = false;
    for (const auto& [prev, d] : out)
      if (phase_distance(prev, pi) < 1e-8 * pi.norm()) dup = true;
    if (dup) continue;
    UniPoly p0 = pi.at_w(0.0);
    if (p0.is_zero()) throw Error(ErrorCode::RootNearTorus, "p(z,0) vanishes identically");
    out.emplace_back(pi, split_stable(p0, margin).beta);
  }
  return out;
}

SplitDiagnostics verify_shift_split(const MomentSpace& space, int n, int m, const ShiftSplit& split) {
  SplitDiagnostics dg;
  const CMatrix& K1 = split.K1.vectors;
  const CMatrix& K2 = split.K2.vectors;
  CMatrix E1 = space.basis_matrix(SpaceSpec::E1(n - 1, m));
  CMatrix E = space.basis_matrix(SpaceSpec::E1(n, m));
  CMatrix both = hstack(K1, K2);
  CMatrix zK2 = space.shift(K2, 1, 0);
  if (both.cols() != n) {
    dg.decomposition = 1.0;
  } else {
    dg.decomposition = std::max({space.max_angle(E1, both), space.max_angle(both, E1), max_abs(space.cross(K1, K2)),
                                 space.orthonormality_defect(K1), space.orthonormality_defect(K2)});
  }
  dg.k1_perp_zk2 = max_abs(space.cross(K1, zK2));
  dg.containment = std::max(space.max_angle(K1, E), space.max_angle(zK2, E));
  CVector v = space.vec(split.split_poly.resized(std::min(split.split_poly.n(), space.N()),
                                                 std::min(split.split_poly.m(), space.M())));
  CMatrix vm = v;
  dg.split_poly = std::max({space.max_angle(vm, E), max_abs(space.cross(vm, hstack(K1, zK2))),
                            std::abs(space.norm(v) - 1.0)});
  return dg;
}

double gw_cross_norm(const MomentSpace& space, int n, int m) {
  CMatrix F1 = space.basis_matrix(SpaceSpec::F1(n - 1, m));
  CMatrix F2 = space.basis_matrix(SpaceSpec::F2(n, m - 1));
  return spectral_norm(space.cross(F1, F2));
}

bool gw_check(const MomentSpace& space, int n, int m, double tol) { return gw_cross_norm(space, n, m) < tol; }

}  // namespace bsz
