#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bsz/moments.hpp"
#include "bsz/polycore.hpp"

namespace bsz::testing {

// Rows are z-powers, columns w-powers.
inline BiPoly P(const std::vector<std::vector<cplx>>& rows) {
  const int n = static_cast<int>(rows.size()) - 1, m = static_cast<int>(rows[0].size()) - 1;
  BiPoly p(n, m);
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= m; ++k) p(j, k) = rows[j][k];
  return p;
}

inline TrigPoly hermitian_trig(int n, int m, const std::vector<std::tuple<int, int, cplx>>& upper) {
  TrigPoly t(n, m);
  for (auto [j, k, c] : upper) {
    t(j, k) += c;
    if (j != 0 || k != 0) t(-j, -k) += std::conj(c);
  }
  return t;
}

inline MomentTable lebesgue(int J, int K) {
  CMatrix c = CMatrix::Zero(2 * J + 1, 2 * K + 1);
  c(J, K) = 1.0;
  return MomentTable(J, K, c);
}

inline cplx random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, a(rng));
}

// Nonzero on the closed bidisk: constant term dominates the rest.
inline BiPoly random_stable(std::mt19937_64& rng, int n, int m) {
  std::normal_distribution<double> g;
  BiPoly p(n, m);
  double others = 0.0;
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= m; ++k)
      if (j || k) {
        p(j, k) = cplx(g(rng), g(rng));
        others += std::abs(p(j, k));
      }
  std::uniform_real_distribution<double> u(1.3, 2.0);
  p(0, 0) = random_unimodular(rng) * (others * u(rng) + 0.1);
  return p;
}

// Stable degree-(1,1) factor times one or two factors (alpha - zw), |alpha| >= 1.5.
inline std::vector<BiPoly> stable_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mod(1.5, 3.0);
  std::vector<BiPoly> out;
  for (int i = 0; i < count; ++i) {
    BiPoly p = random_stable(rng, 1, 1);
    for (int f = 0; f < 1 + i % 2; ++f) p = p * P({{random_unimodular(rng) * mod(rng), 0.0}, {0.0, -1.0}});
    out.push_back(p);
  }
  return out;
}

// Random p with no zeros on T x closed disk: stable part times a z-factor
// whose root may sit inside the disk.
inline BiPoly random_admissible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BiPoly s = random_stable(rng, 1, 1);
  double r = u(rng) < 0.5 ? 0.2 + 0.5 * u(rng) : 1.4 + u(rng);
  UniPoly f = UniPoly::from_roots({random_unimodular(rng) * r});
  return f * s;
}

inline double max_abs_diff(const MomentTable& a, const MomentTable& b, int J, int K) {
  double d = 0.0;
  for (int j = -J; j <= J; ++j)
    for (int k = -K; k <= K; ++k) d = std::max(d, std::abs(a.at(j, k) - b.at(j, k)));
  return d;
}

}  // namespace bsz::testing
