#pragma once

#include <string>
#include <vector>

#include "bsz/moments.hpp"
#include "bsz/polycore.hpp"

namespace bsz {

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

// One tested cell. For the E2 table (N, M) names the Gram on [0,N+1]x[0,M];
// for the H table N is 2n and M the tested w-depth.
struct ConditionCell {
  int N = 0, M = 0;
  double max_entry = 0.0;
  double noise_floor = 0.0;  // condition number * eps * largest inverse entry
};

struct FullMeasureReport {
  bool positivity_ok = true;
  double determinant_margin = 1.0;  // min over tested Grams of lambda_min / lambda_max
  std::vector<ConditionCell> e2_conditions;
  std::vector<ConditionCell> h_conditions;
  Verdict verdict = Verdict::Pass;
  int depth_n = 0, depth_m = 0;  // a pass only holds up to this depth
};

// Defaults to depth (n+3, m+3) when nmax or mmax is negative.
FullMeasureReport check_full_measure(const MomentTable& table, int n, int m, int nmax = -1, int mmax = -1,
                                     double tol = 1e-7);

// Reconstructs p from the (n,m) window and compares the moments of 1/|p|^2
// with the table on |j| <= table.jmax(), |k| <= m. Throws
// FitResidualTooLarge when the largest difference exceeds tol * |c_00|.
BiPoly strip_match(const MomentTable& table, int n, int m, double tol = 1e-7, double* residual = nullptr);

}  // namespace bsz
