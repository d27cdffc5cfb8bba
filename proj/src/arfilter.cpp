#include "bsz/arfilter.hpp"

#include "bsz/errors.hpp"
#include "bsz/reconstruct.hpp"

namespace bsz {

std::string ar_class_name(ArClass c) {
  switch (c) {
    case ArClass::None: return "none";
    case ArClass::Causal: return "causal";
    case ArClass::Acausal: return "acausal";
  }
  return "unknown";
}

ArSolution solve_ar(const ArProblem& problem, double tol) {
  const int n = problem.n, m = problem.m;
  if (n < 0 || m < 0) throw Error(ErrorCode::InvalidDegree, "negative degree");
  const MomentTable& c = problem.autocorr;
  if (!c.covers(n, m)) throw Error(ErrorCode::InsufficientMoments, "autocorrelations do not cover the window");
  if (!(c.at(0, 0).real() > 0)) throw Error(ErrorCode::NotPositive, "c_00 must be positive", c.at(0, 0).real());
  Positivity pos = is_positive(c, n, m);
  if (!pos.positive) throw Error(ErrorCode::NotPositive, "autocorrelation Gram is not positive definite",
                                 pos.min_eigenvalue);

  MomentSpace space(c, n, m);
  ArSolution sol;
  sol.condition = check_matrix_condition(build_operators(space, n, m), tol);
  sol.a_norm = sol.condition.a_norm;
  sol.a = BiPoly(n, m);
  if (!sol.condition.holds) return sol;
  sol.a = reconstruct_p(c, n, m, tol);
  sol.classification = sol.a_norm < tol ? ArClass::Causal : ArClass::Acausal;
  return sol;
}

}  // namespace bsz
