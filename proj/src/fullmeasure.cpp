#include "bsz/fullmeasure.hpp"

#include <future>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "bsz/errors.hpp"
#include "bsz/reconstruct.hpp"

namespace bsz {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

struct CellResult {
  ConditionCell cell;
  bool positive = true;
  double margin = 1.0;
};

// Columns `targets` of the inverse Gram on [0,N]x[0,M], read at rows `probe`.
CellResult inverse_entries(const MomentTable& table, int N, int M, const std::vector<Exponent>& targets,
                           const std::vector<Exponent>& probe) {
  CellResult out;
  out.cell.N = N;
  out.cell.M = M;
  auto idx = rectangle(N, M);
  CMatrix G = gram(table, idx, idx);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(G, Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues()(0), lmax = es.eigenvalues()(G.rows() - 1);
  out.margin = lmax > 0 ? lmin / lmax : -1.0;
  Eigen::LLT<CMatrix> llt(G);
  if (llt.info() != Eigen::Success || lmin <= 0) {
    out.positive = false;
    return out;
  }
  if (out.margin <= 1e-13) throw Error(ErrorCode::DegenerateForm, "Gram matrix is numerically singular", out.margin);
  auto pos = [&](const Exponent& u) { return u.z * (M + 1) + u.w; };
  double largest = 0.0;
  for (const Exponent& t : targets) {
    CVector e = CVector::Zero(G.rows());
    e[pos(t)] = 1.0;
    CVector x = llt.solve(e);
    for (int it = 0; it < 2; ++it) x += llt.solve(e - G * x);
    largest = std::max(largest, x.cwiseAbs().maxCoeff());
    for (const Exponent& v : probe) out.cell.max_entry = std::max(out.cell.max_entry, std::abs(x[pos(v)]));
  }
  out.cell.noise_floor = (lmax / lmin) * std::numeric_limits<double>::epsilon() * largest;
  return out;
}

}  // namespace

FullMeasureReport check_full_measure(const MomentTable& table, int n, int m, int nmax, int mmax, double tol) {
  if (n < 0 || m < 0) throw Error(ErrorCode::InvalidDegree, "negative degree");
  if (nmax < 0) nmax = n + 3;
  if (mmax < 0) mmax = m + 3;
  if (nmax < n || mmax < m) throw Error(ErrorCode::InvalidInput, "depth below the degree");
  const int need_j = std::max(nmax + 1, 2 * n);
  if (!table.covers(need_j, mmax))
    throw Error(ErrorCode::InsufficientMoments, "table does not reach the requested depth");

  FullMeasureReport rep;
  rep.depth_n = nmax;
  rep.depth_m = mmax;

  std::vector<std::future<CellResult>> e2, h;
  for (int N = n; N <= nmax; ++N)
    for (int M = std::max(m - 1, 0); M <= mmax; ++M) {
      e2.push_back(std::async(std::launch::async, [&table, N, M] {
        std::vector<Exponent> targets, probe;
        for (int k = 0; k <= M; ++k) {
          targets.push_back({0, k});
          probe.push_back({N + 1, k});
        }
        return inverse_entries(table, N + 1, M, targets, probe);
      }));
    }
  for (int M = m + 1; M <= mmax; ++M)
    h.push_back(std::async(std::launch::async, [&table, n, M] {
      std::vector<Exponent> probe;
      for (int j = 0; j <= 2 * n; ++j) probe.push_back({j, M});
      return inverse_entries(table, 2 * n, M, {{n, 0}}, probe);
    }));

  bool inconclusive = false, failed = false;
  auto collect = [&](std::vector<std::future<CellResult>>& fs, std::vector<ConditionCell>& dst) {
    for (auto& f : fs) {
      CellResult r = f.get();
      rep.determinant_margin = std::min(rep.determinant_margin, r.margin);
      if (!r.positive) {
        rep.positivity_ok = false;
        continue;
      }
      if (r.cell.max_entry >= tol) {
        if (r.cell.max_entry <= r.cell.noise_floor) inconclusive = true;
        else failed = true;
      }
      dst.push_back(r.cell);
    }
  };
  collect(e2, rep.e2_conditions);
  collect(h, rep.h_conditions);
  if (!rep.positivity_ok || failed) rep.verdict = Verdict::Fail;
  else if (inconclusive) rep.verdict = Verdict::Inconclusive;
  return rep;
}

BiPoly strip_match(const MomentTable& table, int n, int m, double tol, double* residual) {
  BiPoly p = reconstruct_p(table, n, m, tol);
  const int J = table.jmax();
  MomentTable model = moments_from_density(p, J, m);
  double res = 0.0;
  for (int j = -J; j <= J; ++j)
    for (int k = -m; k <= m; ++k) res = std::max(res, std::abs(model.at(j, k) - table.at(j, k)));
  res /= std::abs(table.at(0, 0));
  if (residual) *residual = res;
  if (res > tol) throw Error(ErrorCode::FitResidualTooLarge, "moments disagree on the strip", res);
  return p;
}

}  // namespace bsz
