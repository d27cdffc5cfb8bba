#include "bsz/momentspace.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "bsz/errors.hpp"

namespace bsz {

BiPoly SubspaceBasis::poly(int i, int n, int m) const {
  BiPoly p(n, m);
  for (size_t r = 0; r < support.size(); ++r) {
    cplx c = vectors(static_cast<Eigen::Index>(r), i);
    const Exponent& e = support[r];
    if (e.z <= n && e.w <= m)
      p(e.z, e.w) = c;
    else if (std::abs(c) > 1e-12 * vectors.col(i).cwiseAbs().maxCoeff())
      throw Error(ErrorCode::InvalidDegree, "basis vector exceeds requested degree");
  }
  return p;
}

std::vector<BiPoly> SubspaceBasis::polys(int n, int m) const {
  std::vector<BiPoly> out;
  for (int i = 0; i < dim(); ++i) out.push_back(poly(i, n, m));
  return out;
}

CMatrix normalize_phase(const CMatrix& V) {
  CMatrix out = V;
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    double mx = V.col(j).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
      if (std::abs(V(i, j)) > 1e-12 * mx) {
        out.col(j) *= std::abs(V(i, j)) / V(i, j);
        break;
      }
    }
  }
  return out;
}

MomentSpace::MomentSpace(const MomentTable& table, int N, int M) : table_(table), N_(N), M_(M) {
  if (N < 0 || M < 0) throw Error(ErrorCode::InvalidDegree, "negative degree caps");
  if (table.jmax() < N || table.kmax() < M)
    throw Error(ErrorCode::InsufficientMoments, "moment table does not cover the degree caps");
  universe_ = rectangle(N, M);
  const auto sz = static_cast<Eigen::Index>(universe_.size());
  H_.resize(sz, sz);
  for (Eigen::Index r = 0; r < sz; ++r)
    for (Eigen::Index c = 0; c < sz; ++c) H_(r, c) = table.at(universe_[r] - universe_[c]);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H_, Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues()(0);
  double max_eig = es.eigenvalues()(sz - 1);
  if (!(max_eig > 0.0) || min_eig_ <= 0.0)
    throw Error(ErrorCode::NotPositive, "moment form is not positive definite", min_eig_);
  if (min_eig_ <= 1e-13 * max_eig)
    throw Error(ErrorCode::DegenerateForm, "moment Gram matrix is numerically singular", min_eig_);
}

CVector MomentSpace::vec(const BiPoly& p) const {
  auto [dn, dm] = p.actual_degree(0.0);
  if (dn > N_ || dm > M_) throw Error(ErrorCode::InsufficientMoments, "polynomial exceeds the space caps");
  CVector v = CVector::Zero(dim());
  for (int s = 0; s <= std::min(p.n(), N_); ++s)
    for (int t = 0; t <= std::min(p.m(), M_); ++t) v[index(s, t)] = p(s, t);
  return v;
}

BiPoly MomentSpace::poly(const CVector& v) const { return poly(v, N_, M_); }

BiPoly MomentSpace::poly(const CVector& v, int n, int m) const { return SubspaceBasis{universe_, v}.poly(0, n, m); }

CMatrix MomentSpace::shift(const CMatrix& V, int dz, int dw) const {
  CMatrix out = CMatrix::Zero(V.rows(), V.cols());
  for (int s = 0; s <= N_; ++s)
    for (int t = 0; t <= M_; ++t) {
      int i = index(s, t);
      if (s + dz <= N_ && t + dw <= M_ && s + dz >= 0 && t + dw >= 0) {
        out.row(index(s + dz, t + dw)) = V.row(i);
      } else if (V.cols() > 0 && V.row(i).cwiseAbs().maxCoeff() > 0.0) {
        throw Error(ErrorCode::InsufficientMoments, "shift leaves the space caps");
      }
    }
  return out;
}

CMatrix MomentSpace::orthonormalize(const CMatrix& V, double rank_tol) const {
  if (V.cols() == 0) return CMatrix(dim(), 0);
  CMatrix G = V.adjoint() * H_ * V;
  G = 0.5 * (G + G.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
  const auto& ev = es.eigenvalues();
  double top = ev(ev.size() - 1);
  if (!(top > 0.0)) return CMatrix(dim(), 0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i)
    if (ev(i) > rank_tol * rank_tol * top) keep.push_back(i);
  CMatrix Q(dim(), static_cast<Eigen::Index>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c)
    Q.col(static_cast<Eigen::Index>(c)) = V * es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
  return Q;
}

CMatrix MomentSpace::complement_in(const CMatrix& P, const CMatrix& Q, double) const {
  const Eigen::Index r = P.cols() - Q.cols();
  if (r <= 0) return CMatrix(dim(), 0);
  CMatrix R = P - project_onto(P, Q);
  CMatrix G = R.adjoint() * H_ * R;
  G = 0.5 * (G + G.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
  const auto& ev = es.eigenvalues();
  CMatrix out(dim(), r);
  for (Eigen::Index c = 0; c < r; ++c) {
    Eigen::Index i = ev.size() - 1 - c;
    if (!(ev(i) > 0.0)) throw Error(ErrorCode::DegenerateForm, "complement is rank deficient");
    out.col(c) = R * es.eigenvectors().col(i) / std::sqrt(ev(i));
  }
  // One re-orthogonalization pass against Q for accuracy.
  out -= project_onto(out, Q);
  return orthonormalize(out, 0.0);
}

CMatrix MomentSpace::complement(const std::vector<Exponent>& keep, const std::vector<Exponent>& removed) const {
  std::vector<int> order;
  auto contains = [](const std::vector<Exponent>& s, const Exponent& e) {
    return std::find(s.begin(), s.end(), e) != s.end();
  };
  for (const auto& e : removed) order.push_back(index(e.z, e.w));
  std::vector<int> tail;
  for (const auto& e : keep)
    if (!contains(removed, e)) tail.push_back(index(e.z, e.w));
  order.insert(order.end(), tail.begin(), tail.end());
  const auto sz = static_cast<Eigen::Index>(order.size());
  CMatrix G(sz, sz);
  for (Eigen::Index r = 0; r < sz; ++r)
    for (Eigen::Index c = 0; c < sz; ++c) G(r, c) = H_(order[r], order[c]);
  Eigen::LLT<CMatrix> llt(G);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::DegenerateForm, "Cholesky of a sub-Gram failed");
  CMatrix L = llt.matrixL();
  double dmax = L.diagonal().cwiseAbs().maxCoeff(), dmin = L.diagonal().cwiseAbs().minCoeff();
  if (dmin <= 1e-10 * dmax) throw Error(ErrorCode::DegenerateForm, "sub-Gram is numerically singular", dmin);
  // X = L^{-*}: its columns are the Gram-Schmidt vectors in this order.
  CMatrix X = L.adjoint().triangularView<Eigen::Upper>().solve(CMatrix::Identity(sz, sz));
  const auto first = static_cast<Eigen::Index>(removed.size());
  CMatrix out = CMatrix::Zero(dim(), sz - first);
  for (Eigen::Index c = first; c < sz; ++c)
    for (Eigen::Index r = 0; r <= c; ++r) out(order[r], c - first) = X(r, c);
  return out;
}

namespace {

std::vector<Exponent> rect_if(int n, int m, int s0, int t0) {
  std::vector<Exponent> out;
  for (int s = s0; s <= n; ++s)
    for (int t = t0; t <= m; ++t) out.push_back({s, t});
  return out;
}

}  // namespace

CMatrix MomentSpace::basis_matrix(const SpaceSpec& spec) const {
  const int k = spec.k, l = spec.l;
  auto need = [this](int a, int b) {
    if (a > N_ || b > M_ || a < 0 || b < 0)
      throw Error(ErrorCode::InsufficientMoments, "space parameters exceed the caps");
  };
  if (spec.tag != SpaceTag::ProjectedSpan && (k < 0 || l < 0)) return CMatrix(dim(), 0);
  CMatrix V;
  switch (spec.tag) {
    case SpaceTag::E1:
      need(k, l);
      V = complement(rectangle(k, l), rect_if(k, l, 0, 1));
      break;
    case SpaceTag::F1:
      need(k, l);
      V = complement(rectangle(k, l), l >= 1 ? rectangle(k, l - 1) : std::vector<Exponent>{});
      break;
    case SpaceTag::E2:
      need(k, l);
      V = complement(rectangle(k, l), rect_if(k, l, 1, 0));
      break;
    case SpaceTag::F2:
      need(k, l);
      V = complement(rectangle(k, l), k >= 1 ? rectangle(k - 1, l) : std::vector<Exponent>{});
      break;
    case SpaceTag::H: {
      need(2 * k, l);
      auto all = rectangle(2 * k, l);
      std::vector<Exponent> rest;
      for (const auto& e : all)
        if (!(e.z == k && e.w == 0)) rest.push_back(e);
      V = complement(all, rest);
      break;
    }
    case SpaceTag::ProjectedSpan: {
      if (spec.target.size() != 1) throw Error(ErrorCode::InvalidInput, "projected span needs one target space");
      CMatrix Q = basis_matrix(spec.target.front());
      CMatrix G(dim(), static_cast<Eigen::Index>(spec.generators.size()));
      for (size_t i = 0; i < spec.generators.size(); ++i) G.col(static_cast<Eigen::Index>(i)) = vec(spec.generators[i]);
      V = orthonormalize(project_onto(G, Q));
      break;
    }
  }
  return normalize_phase(V);
}

SubspaceBasis MomentSpace::basis(const SpaceSpec& spec) const { return wrap(basis_matrix(spec)); }

double MomentSpace::max_angle(const CMatrix& Q1, const CMatrix& Q2) const {
  if (Q1.cols() == 0) return 0.0;
  if (Q2.cols() == 0) return 1.0;
  CMatrix R = Q1 - project_onto(Q1, Q2);
  CMatrix S = R.adjoint() * H_ * R;
  S = 0.5 * (S + S.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(S, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double MomentSpace::orthonormality_defect(const CMatrix& Q) const {
  if (Q.cols() == 0) return 0.0;
  CMatrix G = Q.adjoint() * H_ * Q;
  return (G - CMatrix::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff();
}

std::vector<BiPoly> phi_sequence(const MomentSpace& space, int n, int m) {
  if (n > space.N() || m > space.M()) throw Error(ErrorCode::InsufficientMoments, "phi window exceeds the caps");
  std::vector<BiPoly> out;
  for (int j = 0; j <= m; ++j) {
    std::vector<Exponent> S;
    for (const auto& e : rectangle(n, m))
      if (!(e.z == 0 && e.w < j)) S.push_back(e);
    CMatrix G = gram(space.table(), S, S);
    Eigen::LLT<CMatrix> llt(G);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::DegenerateForm, "moment matrix on S_j is singular");
    // (0,j) is the first element of S_j.
    CVector e = CVector::Zero(static_cast<Eigen::Index>(S.size()));
    e[0] = 1.0;
    CVector x = llt.solve(e);
    double g00 = x[0].real();
    if (!(g00 > 0.0)) throw Error(ErrorCode::DegenerateForm, "nonpositive diagonal inverse entry");
    BiPoly phi(n, m);
    for (size_t i = 0; i < S.size(); ++i) phi(S[i].z, S[i].w) = std::conj(x[static_cast<Eigen::Index>(i)]) / std::sqrt(g00);
    out.push_back(phi);
  }
  return out;
}

Projection project(const MomentSpace& space, const BiPoly& f, const SubspaceBasis& onto) {
  if (onto.support.size() != space.universe().size())
    throw Error(ErrorCode::InvalidInput, "basis does not belong to this space");
  CVector v = space.vec(f);
  Projection p;
  p.coeffs = onto.vectors.adjoint() * space.gram() * v;
  p.residual = v - onto.vectors * p.coeffs;
  return p;
}

cplx kernel_eval(const SubspaceBasis& basis, cplx z, cplx w, cplx zeta, cplx eta) {
  CVector a(static_cast<Eigen::Index>(basis.support.size())), b(a.size());
  for (size_t r = 0; r < basis.support.size(); ++r) {
    const auto& e = basis.support[r];
    a[static_cast<Eigen::Index>(r)] = ipow(z, e.z) * ipow(w, e.w);
    b[static_cast<Eigen::Index>(r)] = ipow(zeta, e.z) * ipow(eta, e.w);
  }
  cplx acc = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    cplx fa = a.transpose() * basis.vectors.col(i);
    cplx fb = b.transpose() * basis.vectors.col(i);
    acc += fa * std::conj(fb);
  }
  return acc;
}

}  // namespace bsz
