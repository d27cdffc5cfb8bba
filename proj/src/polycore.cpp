#include "bsz/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "bsz/errors.hpp"

namespace bsz {

std::vector<Exponent> rectangle(int n, int m) {
  std::vector<Exponent> out;
  out.reserve(static_cast<size_t>((n + 1) * (m + 1)));
  for (int s = 0; s <= n; ++s)
    for (int t = 0; t <= m; ++t) out.push_back({s, t});
  return out;
}

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::RootNearTorus: return "RootNearTorus";
    case ErrorCode::InsufficientMoments: return "InsufficientMoments";
    case ErrorCode::MomentDivergence: return "MomentDivergence";
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::MatrixConditionFails: return "MatrixConditionFails";
    case ErrorCode::DNotAdmissible: return "DNotAdmissible";
    case ErrorCode::GcdUnstable: return "GcdUnstable";
    case ErrorCode::NotFactorable: return "NotFactorable";
    case ErrorCode::CommonFactor: return "CommonFactor";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotSelfReflective: return "NotSelfReflective";
    case ErrorCode::ZOnlyFactor: return "ZOnlyFactor";
    case ErrorCode::NotGdv: return "NotGdv";
    case ErrorCode::DegenerateSlice: return "DegenerateSlice";
    case ErrorCode::CertificateFailed: return "CertificateFailed";
    case ErrorCode::FitResidualTooLarge: return "FitResidualTooLarge";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(const CVector& coeffs, double trim) {
  double mx = coeffs.size() ? coeffs.cwiseAbs().maxCoeff() : 0.0;
  Eigen::Index len = coeffs.size();
  while (len > 0 && std::abs(coeffs[len - 1]) <= trim * mx) --len;
  if (mx == 0.0) len = 0;
  c_ = coeffs.head(len);
}

UniPoly::UniPoly(std::initializer_list<cplx> coeffs) {
  CVector v(static_cast<Eigen::Index>(coeffs.size()));
  Eigen::Index i = 0;
  for (cplx c : coeffs) v[i++] = c;
  *this = UniPoly(v);
}

UniPoly UniPoly::from_roots(const std::vector<cplx>& rs, cplx lead) {
  CVector c = CVector::Zero(static_cast<Eigen::Index>(rs.size()) + 1);
  c[0] = lead;
  Eigen::Index deg = 0;
  for (cplx r : rs) {
    ++deg;
    for (Eigen::Index i = deg; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return UniPoly(c, 0.0);
}

cplx UniPoly::operator()(cplx z) const {
  cplx acc = 0.0;
  for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * z + c_[i];
  return acc;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  CVector r = CVector::Zero(c_.size() + o.c_.size() - 1);
  for (Eigen::Index i = 0; i < c_.size(); ++i)
    for (Eigen::Index j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(r, 0.0);
}

UniPoly UniPoly::operator*(cplx s) const { return UniPoly(CVector(c_ * s), 0.0); }

UniPoly UniPoly::monic() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot normalize the zero polynomial");
  return UniPoly(CVector(c_ / lead()), 0.0);
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  CVector d(c_.size() - 1);
  for (Eigen::Index i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return UniPoly(d, 0.0);
}

UniPoly reflect(const UniPoly& u, int d) {
  if (u.degree() > d) throw Error(ErrorCode::InvalidDegree, "reflection degree below polynomial degree");
  CVector c = CVector::Zero(d + 1);
  for (int i = 0; i <= u.degree(); ++i) c[d - i] = std::conj(u[i]);
  return UniPoly(c, 0.0);
}

// ----------------------------------------------------------------- BiPoly

BiPoly::BiPoly(int n, int m) {
  if (n < 0 || m < 0) throw Error(ErrorCode::InvalidDegree, "negative degree");
  c_ = CMatrix::Zero(n + 1, m + 1);
}

BiPoly::BiPoly(const CMatrix& coeffs) : c_(coeffs) {
  if (c_.rows() < 1 || c_.cols() < 1) throw Error(ErrorCode::InvalidDegree, "empty coefficient grid");
}

BiPoly BiPoly::from_uni(const UniPoly& u) {
  BiPoly p(std::max(u.degree(), 0), 0);
  for (int i = 0; i <= u.degree(); ++i) p.c_(i, 0) = u[i];
  return p;
}

cplx BiPoly::eval(cplx z, cplx w) const {
  cplx acc = 0.0;
  for (Eigen::Index j = c_.rows() - 1; j >= 0; --j) {
    cplx row = 0.0;
    for (Eigen::Index k = c_.cols() - 1; k >= 0; --k) row = row * w + c_(j, k);
    acc = acc * z + row;
  }
  return acc;
}

UniPoly BiPoly::w_row(int k) const { return UniPoly(CVector(c_.col(k)), kTrimThreshold); }

UniPoly BiPoly::at_w(cplx w0) const {
  CVector v(c_.rows());
  for (Eigen::Index j = 0; j < c_.rows(); ++j) {
    cplx acc = 0.0;
    for (Eigen::Index k = c_.cols() - 1; k >= 0; --k) acc = acc * w0 + c_(j, k);
    v[j] = acc;
  }
  return UniPoly(v);
}

UniPoly BiPoly::at_z(cplx z0) const {
  CVector v(c_.cols());
  for (Eigen::Index k = 0; k < c_.cols(); ++k) {
    cplx acc = 0.0;
    for (Eigen::Index j = c_.rows() - 1; j >= 0; --j) acc = acc * z0 + c_(j, k);
    v[k] = acc;
  }
  return UniPoly(v);
}

std::pair<int, int> BiPoly::actual_degree(double tol) const {
  double mx = c_.cwiseAbs().maxCoeff();
  int dn = 0, dm = 0;
  for (Eigen::Index j = 0; j < c_.rows(); ++j)
    for (Eigen::Index k = 0; k < c_.cols(); ++k)
      if (std::abs(c_(j, k)) > tol * mx && mx > 0) {
        dn = std::max(dn, static_cast<int>(j));
        dm = std::max(dm, static_cast<int>(k));
      }
  return {dn, dm};
}

BiPoly BiPoly::resized(int n, int m, double tol) const {
  BiPoly out(n, m);
  double mx = c_.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < c_.rows(); ++j)
    for (Eigen::Index k = 0; k < c_.cols(); ++k) {
      if (j <= n && k <= m)
        out.c_(j, k) = c_(j, k);
      else if (std::abs(c_(j, k)) > tol * mx)
        throw Error(ErrorCode::InvalidDegree, "polynomial does not fit the requested degree bound");
    }
  return out;
}

BiPoly BiPoly::trimmed(double tol) const {
  auto [dn, dm] = actual_degree(tol);
  return resized(dn, dm, tol);
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r(n() + o.n(), m() + o.m());
  for (Eigen::Index a = 0; a < c_.rows(); ++a)
    for (Eigen::Index b = 0; b < c_.cols(); ++b) {
      if (c_(a, b) == 0.0) continue;
      r.c_.block(a, b, o.c_.rows(), o.c_.cols()) += c_(a, b) * o.c_;
    }
  return r;
}

BiPoly BiPoly::operator*(cplx s) const { return BiPoly(CMatrix(c_ * s)); }

BiPoly BiPoly::operator+(const BiPoly& o) const {
  int nn = std::max(n(), o.n()), mm = std::max(m(), o.m());
  BiPoly r = resized(nn, mm);
  r.c_.block(0, 0, o.c_.rows(), o.c_.cols()) += o.c_;
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o * cplx(-1.0); }

BiPoly BiPoly::shift(int dz, int dw) const {
  BiPoly r(n() + dz, m() + dw);
  r.c_.block(dz, dw, c_.rows(), c_.cols()) = c_;
  return r;
}

BiPoly BiPoly::derivative_w() const {
  if (m() == 0) return BiPoly(n(), 0);
  BiPoly r(n(), m() - 1);
  for (Eigen::Index k = 1; k < c_.cols(); ++k) r.c_.col(k - 1) = c_.col(k) * static_cast<double>(k);
  return r;
}

BiPoly BiPoly::scale_w(cplx t) const {
  BiPoly r = *this;
  cplx f = 1.0;
  for (Eigen::Index k = 0; k < c_.cols(); ++k, f *= t) r.c_.col(k) *= f;
  return r;
}

BiPoly operator*(const UniPoly& q, const BiPoly& p) {
  if (q.is_zero()) return BiPoly(p.n(), p.m());
  return BiPoly::from_uni(q) * p;
}

BiPoly reflect(const BiPoly& p, int j, int k) {
  auto [dn, dm] = p.actual_degree(0.0);
  if (j < dn || k < dm || j < 0 || k < 0)
    throw Error(ErrorCode::InvalidDegree, "reflection degree below polynomial degree");
  BiPoly r(j, k);
  for (int a = 0; a <= std::min(j, p.n()); ++a)
    for (int b = 0; b <= std::min(k, p.m()); ++b) r(j - a, k - b) = std::conj(p(a, b));
  return r;
}

// ------------------------------------------------------------------ roots

std::vector<cplx> roots(const UniPoly& u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  const int d = u.degree();
  std::vector<cplx> out;
  if (d == 0) return out;
  CMatrix comp = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) comp(0, j) = -u[d - 1 - j] / u.lead();
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  const CVector& ev = es.eigenvalues();
  UniPoly du = u.derivative();
  for (int i = 0; i < d; ++i) {
    cplx r = ev[i];
    cplx f = u(r), df = du(r);
    if (df != 0.0) {
      cplx r2 = r - f / df;
      if (std::isfinite(r2.real()) && std::isfinite(r2.imag()) && std::abs(u(r2)) < std::abs(f)) r = r2;
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return out;
}

RootSplit split_stable(const UniPoly& u, double margin) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "split of the zero polynomial");
  std::vector<cplx> in, out;
  for (cplx r : roots(u)) {
    double gap = std::abs(std::abs(r) - 1.0);
    if (gap <= margin) throw Error(ErrorCode::RootNearTorus, "root within margin of the unit circle", gap);
    (std::abs(r) < 1.0 ? in : out).push_back(r);
  }
  RootSplit s;
  s.unstable = UniPoly::from_roots(in);
  s.stable = UniPoly::from_roots(out, u.lead());
  s.beta = static_cast<int>(in.size());
  return s;
}

DivMod divmod(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  if (num.degree() < den.degree()) return {UniPoly(), num};
  CVector r = num.coeffs();
  const int dq = num.degree() - den.degree();
  CVector q = CVector::Zero(dq + 1);
  for (int i = dq; i >= 0; --i) {
    q[i] = r[i + den.degree()] / den.lead();
    for (int j = 0; j <= den.degree(); ++j) r[i + j] -= q[i] * den[j];
  }
  CVector rem = r.head(std::max(den.degree(), 0));
  return {UniPoly(q, 0.0), UniPoly(rem, 0.0)};
}

namespace {

// Number of low-order coefficients negligible relative to the largest one.
int zero_root_count(const UniPoly& u, double tol) {
  double mx = u.coeffs().cwiseAbs().maxCoeff();
  int k = 0;
  while (k < u.degree() && std::abs(u[k]) <= tol * mx) ++k;
  return k;
}

UniPoly drop_low(const UniPoly& u, int k) {
  return UniPoly(CVector(u.coeffs().tail(u.coeffs().size() - k)), 0.0);
}

}  // namespace

UniPoly gcd_approx(const std::vector<UniPoly>& us, double tol) {
  std::vector<UniPoly> nz;
  for (const auto& u : us)
    if (!u.is_zero()) nz.push_back(u);
  if (nz.empty()) throw Error(ErrorCode::ZeroPolynomial, "gcd of zero polynomials");

  // Roots at the origin are split apart by coefficient noise, so they are
  // detected from the low-order coefficients instead of by clustering.
  const double zero_tol = tol * 1e-3;
  int zeros = nz[0].degree();
  for (const auto& u : nz) zeros = std::min(zeros, zero_root_count(u, zero_tol));
  for (auto& u : nz) u = drop_low(u, zeros);

  size_t base = 0;
  for (size_t i = 1; i < nz.size(); ++i)
    if (nz[i].degree() < nz[base].degree()) base = i;

  std::vector<cplx> shared(static_cast<size_t>(zeros), cplx(0.0));
  if (nz[base].degree() > 0) {
    std::vector<std::vector<cplx>> rs;
    for (const auto& u : nz) rs.push_back(roots(u));
    std::vector<std::vector<bool>> used(rs.size());
    for (size_t i = 0; i < rs.size(); ++i) used[i].assign(rs[i].size(), false);
    for (cplx r : rs[base]) {
      std::vector<size_t> pick(rs.size(), 0);
      bool all = true;
      cplx sum = r;
      for (size_t i = 0; i < rs.size() && all; ++i) {
        if (i == base) continue;
        double best = tol * std::max(1.0, std::abs(r));
        bool found = false;
        for (size_t t = 0; t < rs[i].size(); ++t) {
          if (used[i][t]) continue;
          double d = std::abs(rs[i][t] - r);
          if (d <= best) {
            best = d;
            pick[i] = t;
            found = true;
          }
        }
        if (!found) all = false;
      }
      if (!all) continue;
      for (size_t i = 0; i < rs.size(); ++i) {
        if (i == base) continue;
        used[i][pick[i]] = true;
        sum += rs[i][pick[i]];
      }
      shared.push_back(sum / static_cast<double>(rs.size()));
    }
  }
  return UniPoly::from_roots(shared);
}

double gcd_residual(const std::vector<UniPoly>& us, const UniPoly& g) {
  double worst = 0.0;
  for (const auto& u : us) {
    if (u.is_zero()) continue;
    DivMod dm = divmod(u, g);
    double r = dm.remainder.is_zero() ? 0.0 : dm.remainder.norm() / u.norm();
    worst = std::max(worst, r);
  }
  return worst;
}

// --------------------------------------------------------------- helpers

namespace {

std::vector<UniPoly> significant_rows(const BiPoly& p) {
  double mx = 0.0;
  for (int k = 0; k <= p.m(); ++k) mx = std::max(mx, p.coeffs().col(k).norm());
  if (mx == 0.0) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no content");
  std::vector<UniPoly> rows;
  for (int k = 0; k <= p.m(); ++k)
    if (p.coeffs().col(k).norm() > 1e-9 * mx) rows.push_back(p.w_row(k));
  return rows;
}

}  // namespace

UniPoly z_content(const BiPoly& p, double tol) {
  auto rows = significant_rows(p);
  UniPoly g = gcd_approx(rows, tol);
  double res = gcd_residual(rows, g);
  if (res > tol) {
    UniPoly g2 = gcd_approx(rows, 10.0 * tol);
    double res2 = gcd_residual(rows, g2);
    if (res2 > 10.0 * tol) throw Error(ErrorCode::GcdUnstable, "approximate gcd of coefficient rows is unstable", res2);
    return g2;
  }
  return g;
}

BiPoly divide_z(const BiPoly& p, const UniPoly& q, double tol) {
  if (q.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  if (q.degree() == 0) return p * (1.0 / q[0]);
  int dn = std::max(p.n() - q.degree(), 0);
  BiPoly out(dn, p.m());
  double scale = p.norm();
  double worst = 0.0;
  for (int k = 0; k <= p.m(); ++k) {
    UniPoly row(CVector(p.coeffs().col(k)), 0.0);
    if (row.is_zero()) continue;
    DivMod dm = divmod(row, q);
    if (!dm.remainder.is_zero()) worst = std::max(worst, dm.remainder.norm() / scale);
    for (int j = 0; j <= dm.quotient.degree(); ++j) out(j, k) = dm.quotient[j];
  }
  if (worst > tol) throw Error(ErrorCode::GcdUnstable, "row division leaves a remainder", worst);
  return out;
}

BiPoly canonical_phase(const BiPoly& p) {
  Eigen::Index best = 0;
  double mx = -1.0;
  for (Eigen::Index j = 0; j < p.coeffs().rows(); ++j)
    if (std::abs(p(j, 0)) > mx) {
      mx = std::abs(p(j, 0));
      best = j;
    }
  if (mx <= 0.0) {
    // No w^0 term at all; fall back to the largest coefficient overall.
    Eigen::Index r, c;
    p.coeffs().cwiseAbs().maxCoeff(&r, &c);
    cplx v = p(r, c);
    return v == 0.0 ? p : p * (std::abs(v) / v);
  }
  cplx v = p(best, 0);
  return p * (std::abs(v) / v);
}

double phase_distance(const BiPoly& p, const BiPoly& q) {
  int n = std::max(p.n(), q.n()), m = std::max(p.m(), q.m());
  CMatrix a = p.resized(n, m, 1.0).coeffs(), b = q.resized(n, m, 1.0).coeffs();
  cplx ip = (b.conjugate().cwiseProduct(a)).sum();
  cplx ph = ip == 0.0 ? cplx(1.0) : ip / std::abs(ip);
  return (a - ph * b).norm();
}

double min_w_root_modulus_on_circle(const BiPoly& p, int samples) {
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    cplx z = std::polar(1.0, 2.0 * std::numbers::pi * (i + 0.5) / samples);
    UniPoly u = p.at_z(z);
    if (u.is_zero()) return 0.0;
    for (cplx r : roots(u)) worst = std::min(worst, std::abs(r));
  }
  return worst;
}

std::pair<double, double> modulus_gap_on_torus(const BiPoly& p, const BiPoly& q, int grid) {
  double gap = 0.0, mx = 0.0;
  for (int a = 0; a < grid; ++a) {
    cplx z = std::polar(1.0, 2.0 * std::numbers::pi * a / grid);
    for (int b = 0; b < grid; ++b) {
      cplx w = std::polar(1.0, 2.0 * std::numbers::pi * b / grid);
      double pp = std::norm(p.eval(z, w)), qq = std::norm(q.eval(z, w));
      gap = std::max(gap, std::abs(pp - qq));
      mx = std::max(mx, pp);
    }
  }
  return {gap, mx};
}

}  // namespace bsz
