#include "bsz/soscert.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "bsz/errors.hpp"
#include "bsz/momentspace.hpp"
#include "bsz/splitshift.hpp"

namespace bsz {

namespace {

cplx random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

bool share_root(const UniPoly& a, const UniPoly& b) {
  if (a.degree() < 1 || b.degree() < 1) return false;
  for (cplx r : roots(a))
    for (cplx s : roots(b))
      if (std::abs(r - s) <= 1e-6 * std::max(1.0, std::abs(r))) return true;
  return false;
}

}  // namespace

cplx certificate_lhs(const BiPoly& p, CertVariant variant, cplx z, cplx w, cplx zeta, cplx eta) {
  BiPoly pr = reflect(p, p.n(), p.m());
  cplx weight = variant == CertVariant::G ? w * std::conj(eta) : cplx(1.0);
  return p.eval(z, w) * std::conj(p.eval(zeta, eta)) - weight * pr.eval(z, w) * std::conj(pr.eval(zeta, eta));
}

cplx certificate_rhs(const SosCertificate& cert, cplx z, cplx w, cplx zeta, cplx eta) {
  auto sum = [&](const std::vector<BiPoly>& fs) {
    cplx acc = 0.0;
    for (const auto& f : fs) acc += f.eval(z, w) * std::conj(f.eval(zeta, eta));
    return acc;
  };
  return (1.0 - w * std::conj(eta)) * sum(cert.A) + (1.0 - z * std::conj(zeta)) * (sum(cert.B) - sum(cert.C));
}

ResidualReport verify_certificate(const BiPoly& p, const SosCertificate& cert, int samples, double tol,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BiPoly pr = reflect(p, p.n(), p.m());
  auto scale = [&](cplx z, cplx w, cplx zeta, cplx eta) {
    auto mag = [&](const std::vector<BiPoly>& fs) {
      double acc = 0.0;
      for (const auto& f : fs) acc += std::abs(f.eval(z, w)) * std::abs(f.eval(zeta, eta));
      return acc;
    };
    double weight = cert.variant == CertVariant::G ? std::abs(w * std::conj(eta)) : 1.0;
    double s = std::abs(p.eval(z, w)) * std::abs(p.eval(zeta, eta)) +
               weight * std::abs(pr.eval(z, w)) * std::abs(pr.eval(zeta, eta)) +
               std::abs(1.0 - w * std::conj(eta)) * mag(cert.A) +
               std::abs(1.0 - z * std::conj(zeta)) * (mag(cert.B) + mag(cert.C));
    return std::max(s, 1e-300);
  };
  ResidualReport rep;
  for (int i = 0; i < samples; ++i) {
    cplx z = random_in_disk(rng, 1.5), w = random_in_disk(rng, 1.5);
    cplx zeta = random_in_disk(rng, 1.5), eta = random_in_disk(rng, 1.5);
    double d = std::abs(certificate_lhs(p, cert.variant, z, w, z, w) - certificate_rhs(cert, z, w, z, w)) /
               scale(z, w, z, w);
    double k = std::abs(certificate_lhs(p, cert.variant, z, w, zeta, eta) - certificate_rhs(cert, z, w, zeta, eta)) /
               scale(z, w, zeta, eta);
    if (d > rep.diagonal) {
      rep.diagonal = d;
      if (d >= rep.kernel) rep.worst = {z, w, z, w};
    }
    if (k > rep.kernel) {
      rep.kernel = k;
      if (k >= rep.diagonal) rep.worst = {z, w, zeta, eta};
    }
  }
  rep.passed = rep.max() < tol;
  return rep;
}

SosCertificate certificate_closed_face(const BiPoly& p, CertVariant variant, const QuadratureConfig& cfg,
                                       std::uint64_t seed) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "certificate for the zero polynomial");
  const int n = p.n(), m = p.m();
  UniPoly p0 = p.at_w(0.0);
  if (p0.is_zero()) throw Error(ErrorCode::RootNearTorus, "p(z,0) vanishes identically");
  split_stable(p0);
  MomentTable table = moments_from_density(p, n, m, cfg);
  MomentSpace space(table, n, m);
  ShiftSplit split = shift_split_from_p(space, p);

  SosCertificate cert;
  cert.n = n;
  cert.m = m;
  cert.variant = variant;
  if (variant == CertVariant::L) {
    if (m >= 1) cert.A = space.basis(SpaceSpec::E2(n, m - 1)).polys(n, m - 1);
  } else {
    cert.A = space.basis(SpaceSpec::E2(n, m)).polys(n, m);
  }
  for (const BiPoly& k2 : split.K2.polys(std::max(n - 1, 0), m)) {
    BiPoly b = reflect(k2, n - 1, m);
    cert.B.push_back(variant == CertVariant::G ? b.shift(0, 1) : b);
  }
  cert.C = split.K1.polys(std::max(n - 1, 0), m);
  cert.n1 = static_cast<int>(cert.B.size());
  cert.n2 = static_cast<int>(cert.C.size());
  cert.residual = verify_certificate(p, cert, 200, 1.0, seed).max();
  return cert;
}

SosCertificate certificate_open_face(const BiPoly& p, const std::vector<double>& schedule, double tol,
                                     CertVariant variant, const QuadratureConfig& cfg, std::uint64_t seed) {
  if (shares_factor_with_reflection(p, seed))
    throw Error(ErrorCode::CommonFactor, "p and its reflection share a factor");
  try {
    SosCertificate c = certificate_closed_face(p, variant, cfg, seed);
    if (c.residual < tol) return c;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MomentDivergence) throw;
  }
  double best = std::numeric_limits<double>::infinity();
  SosCertificate accepted;
  bool found = false;
  for (double t : schedule) {
    SosCertificate c;
    try {
      c = certificate_closed_face(p.scale_w(t), variant, cfg, seed);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::MomentDivergence) break;
      throw;
    }
    c.t = t;
    c.residual = verify_certificate(p, c, 200, tol, seed).max();
    best = std::min(best, c.residual);
    if (c.residual < tol) {
      accepted = c;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::NoConvergence, "scaling schedule did not reach the tolerance", best);
  return accepted;
}

int inside_root_count(const SosCertificate& cert) {
  int rows = 0, cols = 0;
  for (const auto* list : {&cert.B, &cert.C})
    for (const auto& f : *list) {
      rows = std::max(rows, f.n() + 1);
      cols = std::max(cols, f.m() + 1);
    }
  if (rows == 0) return 0;
  const Eigen::Index dim = static_cast<Eigen::Index>(rows) * cols;
  CMatrix form = CMatrix::Zero(dim, dim);
  auto flat = [&](const BiPoly& f) {
    CVector v = CVector::Zero(dim);
    for (int j = 0; j <= f.n(); ++j)
      for (int k = 0; k <= f.m(); ++k) v[j * cols + k] = f(j, k);
    return v;
  };
  for (const auto& b : cert.B) {
    CVector v = flat(b);
    form += v * v.adjoint();
  }
  for (const auto& c : cert.C) {
    CVector v = flat(c);
    form -= v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(form, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double thresh = 1e-9 * ev.cwiseAbs().maxCoeff();
  int neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < -thresh) ++neg;
  return neg;
}

bool shares_factor_with_reflection(const BiPoly& p, std::uint64_t seed) {
  BiPoly pr = reflect(p, p.n(), p.m());
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(0.5, 1.5), ang(0.0, 2.0 * std::numbers::pi);
  auto all_share = [&](bool along_w) {
    for (int i = 0; i < 3; ++i) {
      cplx s = std::polar(u(rng), ang(rng));
      UniPoly a = along_w ? p.at_z(s) : p.at_w(s);
      UniPoly b = along_w ? pr.at_z(s) : pr.at_w(s);
      if (!share_root(a, b)) return false;
    }
    return true;
  };
  bool w_share = p.m() >= 1 && all_share(true);
  bool z_share = p.n() >= 1 && all_share(false);
  return w_share || z_share;
}

}  // namespace bsz
