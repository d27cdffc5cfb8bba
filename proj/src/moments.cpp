#include "bsz/moments.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include <Eigen/Eigenvalues>

#include "bsz/errors.hpp"

namespace bsz {

MomentTable::MomentTable(int jmax, int kmax) : jmax_(jmax), kmax_(kmax) {
  if (jmax < 0 || kmax < 0) throw Error(ErrorCode::InvalidDegree, "negative moment range");
  c_ = CMatrix::Zero(2 * jmax + 1, 2 * kmax + 1);
}

MomentTable::MomentTable(int jmax, int kmax, const CMatrix& raw) : MomentTable(jmax, kmax) {
  if (raw.rows() != 2 * jmax + 1 || raw.cols() != 2 * kmax + 1)
    throw Error(ErrorCode::InvalidInput, "moment table shape does not match its range");
  for (int j = -jmax; j <= jmax; ++j)
    for (int k = -kmax; k <= kmax; ++k)
      c_(j + jmax, k + kmax) = 0.5 * (raw(j + jmax, k + kmax) + std::conj(raw(-j + jmax, -k + kmax)));
}

double MomentTable::hermitian_defect(int jmax, int kmax, const CMatrix& raw) {
  double d = 0.0;
  for (int j = -jmax; j <= jmax; ++j)
    for (int k = -kmax; k <= kmax; ++k)
      d = std::max(d, std::abs(raw(j + jmax, k + kmax) - std::conj(raw(-j + jmax, -k + kmax))));
  return d;
}

cplx MomentTable::at(int j, int k) const {
  if (!covers(j, k))
    throw Error(ErrorCode::InsufficientMoments,
                "moment (" + std::to_string(j) + "," + std::to_string(k) + ") outside table range");
  return c_(j + jmax_, k + kmax_);
}

MomentTable MomentTable::restricted(int jmax, int kmax) const {
  if (jmax > jmax_ || kmax > kmax_) throw Error(ErrorCode::InsufficientMoments, "restriction exceeds table range");
  MomentTable t(jmax, kmax);
  t.c_ = c_.block(jmax_ - jmax, kmax_ - kmax, 2 * jmax + 1, 2 * kmax + 1);
  t.grid_ = grid_;
  return t;
}

MomentTable MomentTable::scaled(double s) const {
  MomentTable t = *this;
  t.c_ *= s;
  return t;
}

double TrigPoly::eval(cplx z, cplx w) const {
  cplx acc = 0.0;
  cplx zi = 1.0 / z, wi = 1.0 / w;
  for (int j = -n; j <= n; ++j) {
    cplx zj = j >= 0 ? ipow(z, j) : ipow(zi, -j);
    cplx row = 0.0;
    for (int k = -m; k <= m; ++k) row += (*this)(j, k) * (k >= 0 ? ipow(w, k) : ipow(wi, -k));
    acc += zj * row;
  }
  return acc.real();
}

double TrigPoly::hermitian_defect() const {
  double d = 0.0;
  for (int j = -n; j <= n; ++j)
    for (int k = -m; k <= m; ++k) d = std::max(d, std::abs((*this)(j, k) - std::conj((*this)(-j, -k))));
  return d;
}

TrigPoly modulus_squared(const BiPoly& p) {
  TrigPoly t(p.n(), p.m());
  for (int a = 0; a <= p.n(); ++a)
    for (int b = 0; b <= p.m(); ++b)
      for (int c = 0; c <= p.n(); ++c)
        for (int d = 0; d <= p.m(); ++d) t(a - c, b - d) += p(a, b) * std::conj(p(c, d));
  return t;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

// Fills `row` with density samples at z = exp(2 pi i a / N), w on the grid.
// Returns false if a sample is not finite or not positive.
using RowDensity = std::function<bool(int a, int N, std::vector<double>& row)>;

// One trapezoidal pass on an N x N grid. Streams one density row at a time:
// FFT over w, keep the 2K+1 needed frequencies, then accumulate the z sums.
CMatrix quadrature_pass(const RowDensity& density, int N, int J, int K) {
  std::vector<double> row(static_cast<size_t>(N));
  fftw_complex* spec = fftw_alloc_complex(static_cast<size_t>(N / 2 + 1));
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(N, row.data(), spec, FFTW_ESTIMATE);
  }
  std::vector<cplx> twiddle(static_cast<size_t>(N));
  for (int t = 0; t < N; ++t) twiddle[t] = std::polar(1.0, -2.0 * std::numbers::pi * t / N);

  CMatrix acc = CMatrix::Zero(2 * J + 1, 2 * K + 1);
  std::vector<cplx> wk(static_cast<size_t>(2 * K + 1));
  bool ok = true;
  for (int a = 0; a < N && ok; ++a) {
    if (!density(a, N, row)) {
      ok = false;
      break;
    }
    fftw_execute_dft_r2c(plan, row.data(), spec);
    for (int k = 0; k <= K; ++k) {
      cplx v(spec[k][0], spec[k][1]);
      wk[K + k] = v;
      wk[K - k] = std::conj(v);
    }
    for (int j = -J; j <= J; ++j) {
      int t = static_cast<int>((static_cast<long long>(j) * a % N + N) % N);
      cplx tw = twiddle[t];
      for (int k = 0; k <= 2 * K; ++k) acc(j + J, k) += tw * wk[k];
    }
  }
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(spec);
  if (!ok) throw Error(ErrorCode::MomentDivergence, "density is singular on the sampling grid");
  return acc / (static_cast<double>(N) * N);
}

MomentTable converge(const RowDensity& density, int J, int K, const QuadratureConfig& cfg) {
  if (cfg.initial_grid <= 0 || cfg.initial_grid > cfg.max_grid || cfg.tolerance <= 0)
    throw Error(ErrorCode::InvalidInput, "invalid quadrature configuration");
  int N = cfg.initial_grid;
  while (N < 2 * std::max(J, K) + 2) N *= 2;
  if (N > cfg.max_grid) throw Error(ErrorCode::InsufficientMoments, "max grid too small for the requested moments");
  CMatrix prev = quadrature_pass(density, N, J, K);
  double change = std::numeric_limits<double>::infinity();
  while (N * 2 <= cfg.max_grid) {
    N *= 2;
    CMatrix next = quadrature_pass(density, N, J, K);
    change = (next - prev).cwiseAbs().maxCoeff();
    prev = std::move(next);
    if (change < cfg.tolerance) {
      MomentTable t(J, K, prev);
      t.set_grid(N);
      return t;
    }
  }
  throw Error(ErrorCode::MomentDivergence, "moments did not converge at the maximal grid", change);
}

}  // namespace

MomentTable moments_from_density(const BiPoly& p, int jmax, int kmax, const QuadratureConfig& cfg) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "density of the zero polynomial");
  if (jmax < 0 || kmax < 0) throw Error(ErrorCode::InvalidDegree, "negative moment range");
  const double margin = cfg.pole_margin;
  std::vector<cplx> unit;  // exp(2 pi i s / N), rebuilt when N changes
  auto density = [&p, &unit, margin](int a, int N, std::vector<double>& row) {
    if (static_cast<int>(unit.size()) != N) {
      unit.resize(static_cast<size_t>(N));
      for (int s = 0; s < N; ++s) unit[s] = std::polar(1.0, 2.0 * std::numbers::pi * s / N);
    }
    UniPoly slice = p.at_z(unit[a]);
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (int b = 0; b < N; ++b) {
      double v = std::norm(slice(unit[b]));
      mx = std::max(mx, v);
      mn = std::min(mn, v);
      row[b] = 1.0 / v;
    }
    return mn > margin * margin * mx && std::isfinite(1.0 / mn);
  };
  return converge(density, jmax, kmax, cfg);
}

MomentTable moments_from_trig(const TrigPoly& t, int jmax, int kmax, const QuadratureConfig& cfg) {
  double scale = t.coeffs.cwiseAbs().maxCoeff();
  if (t.hermitian_defect() > 1e-12 * std::max(scale, 1e-300))
    throw Error(ErrorCode::InvalidInput, "trigonometric polynomial is not Hermitian");
  if (jmax < 0 || kmax < 0) throw Error(ErrorCode::InvalidDegree, "negative moment range");
  const double margin = cfg.pole_margin * scale;
  std::vector<cplx> unit;  // exp(2 pi i s / N), rebuilt when N changes
  auto density = [&t, &unit, margin](int a, int N, std::vector<double>& row) {
    if (static_cast<int>(unit.size()) != N) {
      unit.resize(static_cast<size_t>(N));
      for (int s = 0; s < N; ++s) unit[s] = std::polar(1.0, 2.0 * std::numbers::pi * s / N);
    }
    auto e = [&unit, N](long long s) { return unit[static_cast<size_t>(((s % N) + N) % N)]; };
    // Collapse the z sum first so each row costs O(N (2m+1)).
    std::vector<cplx> wc(static_cast<size_t>(2 * t.m + 1), 0.0);
    for (int j = -t.n; j <= t.n; ++j)
      for (int k = -t.m; k <= t.m; ++k) wc[k + t.m] += t(j, k) * e(static_cast<long long>(a) * j);
    for (int b = 0; b < N; ++b) {
      cplx v = 0.0;
      for (int k = -t.m; k <= t.m; ++k) v += wc[k + t.m] * e(static_cast<long long>(b) * k);
      if (!(v.real() > margin))
        throw Error(ErrorCode::NonPositiveDensity, "trigonometric polynomial is not positive on the grid", v.real());
      row[b] = 1.0 / v.real();
    }
    return true;
  };
  return converge(density, jmax, kmax, cfg);
}

CMatrix gram(const MomentTable& table, const std::vector<Exponent>& rows, const std::vector<Exponent>& cols) {
  CMatrix g(rows.size(), cols.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) g(r, c) = table.at(cols[c] - rows[r]);
  return g;
}

Positivity is_positive(const MomentTable& table, int n, int m, double tol) {
  auto u = rectangle(n, m);
  CMatrix g = gram(table, u, u);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  double mn = es.eigenvalues().minCoeff();
  return {mn > tol, mn};
}

}  // namespace bsz
