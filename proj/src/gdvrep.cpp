#include "bsz/gdvrep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "bsz/errors.hpp"

namespace bsz {

cplx check_self_reflective(const BiPoly& p, double tol) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial");
  BiPoly pt = p.trimmed();
  if (z_content(pt).degree() >= 1) throw Error(ErrorCode::ZOnlyFactor, "p has a factor in z alone");
  BiPoly pr = reflect(pt, pt.n(), pt.m());
  cplx mu = (pr.coeffs().conjugate().cwiseProduct(pt.coeffs())).sum() / pr.coeffs().squaredNorm();
  double res = (pt.coeffs() - mu * pr.coeffs()).norm() / pt.norm();
  if (res > tol || std::abs(std::abs(mu) - 1.0) > tol)
    throw Error(ErrorCode::NotSelfReflective, "p is not a unimodular multiple of its reflection", res);
  return mu / std::abs(mu);
}

cplx self_reflective_normalizer(cplx mu) {
  cplx c = std::conj(mu);
  if (c.imag() == 0.0) c = cplx(c.real(), 0.0);  // drop a negative zero so -1 maps to i
  return std::sqrt(c);
}

GeometryReport check_gdv_geometry(const BiPoly& p, int grid_size, double tol) {
  BiPoly pt = p.trimmed();
  for (int attempt = 0; attempt < 3; ++attempt) {
    const double offset = 0.37 * attempt;
    GeometryReport rep;
    bool degenerate = false;
    for (int i = 0; i < grid_size && !degenerate; ++i) {
      cplx z = std::polar(1.0, 2.0 * std::numbers::pi * (i + offset) / grid_size);
      UniPoly u = pt.at_z(z);
      if (u.degree() < pt.m() || std::abs(u.lead()) < 1e-10 * u.norm()) {
        degenerate = true;
        break;
      }
      for (cplx w : roots(u)) {
        double dev = std::abs(std::abs(w) - 1.0);
        if (dev >= rep.worst_deviation) {
          rep.worst_deviation = dev;
          rep.worst_z = z;
          rep.worst_w = w;
        }
      }
    }
    if (degenerate) continue;
    rep.passed = rep.worst_deviation < tol;
    return rep;
  }
  throw Error(ErrorCode::DegenerateSlice, "leading w-coefficient vanishes on the sampling grid");
}

bool derivative_identity_check(const BiPoly& p, double tol, double* residual) {
  const int n = p.n(), m = p.m();
  double res = 0.0;
  if (m >= 1) {
    BiPoly dp = p.derivative_w();
    BiPoly rhs = reflect(dp, n, m - 1) + dp.shift(0, 1);
    res = (p * cplx(m) - rhs).norm() / (static_cast<double>(m) * p.norm());
  }
  if (residual) *residual = res;
  return res <= tol;
}

cplx detrep_eval(const CMatrix& U, int m, int n1, int n2, cplx z, cplx w) {
  const int D = m + n1 + n2;
  CVector delta(D), gamma(D);
  for (int i = 0; i < D; ++i) {
    delta[i] = i < m ? w : (i < m + n1 ? z : cplx(1.0));
    gamma[i] = i < m + n1 ? cplx(1.0) : z;
  }
  CMatrix M = U * delta.asDiagonal();
  M -= CMatrix(gamma.asDiagonal());
  return M.partialPivLu().determinant();
}

DetRep build_detrep(const BiPoly& p, const DetRepConfig& cfg) {
  BiPoly pt = p.trimmed();
  const int n = pt.n(), m = pt.m();
  if (pt.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial");
  if (z_content(pt).degree() >= 1) throw Error(ErrorCode::ZOnlyFactor, "p has a factor in z alone");
  if (m == 0) throw Error(ErrorCode::InvalidDegree, "p must depend on w");
  GeometryReport geo = check_gdv_geometry(pt, std::max(cfg.samples, 16), cfg.geometry_tol);
  if (!geo.passed) throw Error(ErrorCode::NotGdv, "zero set leaves the generalized distinguished region",
                               geo.worst_deviation);
  cplx mu = check_self_reflective(pt);
  DetRep rep;
  rep.normalized = pt * self_reflective_normalizer(mu);
  BiPoly dp = rep.normalized.derivative_w();
  BiPoly P = reflect(dp, n, m - 1);
  try {
    rep.certificate = certificate_open_face(P, cfg.schedule, 1e-8, CertVariant::G, {}, cfg.seed);
  } catch (const Error& e) {
    throw Error(ErrorCode::CertificateFailed, std::string("derivative certificate: ") + e.what(), e.value());
  }
  const auto& cert = rep.certificate;
  rep.m = static_cast<int>(cert.A.size());
  rep.n1 = cert.n1;
  rep.n2 = cert.n2;
  const int D = rep.m + rep.n1 + rep.n2;
  if (rep.m != m || rep.n1 + rep.n2 != n)
    throw Error(ErrorCode::CertificateFailed, "certificate block sizes do not match the degree");

  auto columns = [&](cplx z, cplx w, CVector& x, CVector& y) {
    int r = 0;
    for (const auto& a : cert.A) {
      cplx v = a.eval(z, w);
      x[r] = w * v;
      y[r++] = v;
    }
    for (const auto& b : cert.B) {
      cplx v = b.eval(z, w);
      x[r] = z * v;
      y[r++] = v;
    }
    for (const auto& c : cert.C) {
      cplx v = c.eval(z, w);
      x[r] = v;
      y[r++] = z * v;
    }
  };

  std::vector<CVector> xs, ys;
  for (int i = 0; i < cfg.samples; ++i) {
    cplx z = std::polar(1.0, 2.0 * std::numbers::pi * (i + 0.5) / cfg.samples);
    for (cplx w : roots(pt.at_z(z))) {
      CVector x(D), y(D);
      columns(z, w, x, y);
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  CMatrix X(D, static_cast<Eigen::Index>(xs.size())), Y(D, X.cols());
  for (size_t i = 0; i < xs.size(); ++i) {
    X.col(static_cast<Eigen::Index>(i)) = xs[i];
    Y.col(static_cast<Eigen::Index>(i)) = ys[i];
  }
  Eigen::JacobiSVD<CMatrix> svd(Y * X.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  rep.U = svd.matrixU() * svd.matrixV().adjoint();
  rep.unitarity = (rep.U.adjoint() * rep.U - CMatrix::Identity(D, D)).cwiseAbs().maxCoeff();

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in_disk2 = [&]() { return std::polar(2.0 * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)); };
  std::vector<cplx> ratios;
  while (static_cast<int>(ratios.size()) < cfg.test_points) {
    cplx z = in_disk2(), w = in_disk2();
    cplx pv = pt.eval(z, w);
    if (std::abs(pv) < 1e-3 * pt.norm()) continue;
    ratios.push_back(detrep_eval(rep.U, rep.m, rep.n1, rep.n2, z, w) / pv);
  }
  std::vector<double> re, im;
  for (cplx r : ratios) {
    re.push_back(r.real());
    im.push_back(r.imag());
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  };
  rep.scale = cplx(median(re), median(im));
  for (cplx r : ratios) rep.residual = std::max(rep.residual, std::abs(r - rep.scale) / std::abs(rep.scale));

  for (int i = 0; i < cfg.fresh_samples; ++i) {
    cplx z = std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
    for (cplx w : roots(pt.at_z(z)))
      rep.on_variety = std::max(rep.on_variety, std::abs(detrep_eval(rep.U, rep.m, rep.n1, rep.n2, z, w)) /
                                                    (std::abs(rep.scale) * pt.norm()));
  }
  if (!(rep.residual <= cfg.tol))
    throw Error(ErrorCode::FitResidualTooLarge, "det(U Delta - Gamma) is not a multiple of p", rep.residual);
  return rep;
}

}  // namespace bsz
