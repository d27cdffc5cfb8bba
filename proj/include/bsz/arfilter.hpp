#pragma once

#include <string>

#include "bsz/moments.hpp"
#include "bsz/splitshift.hpp"

namespace bsz {

// Autocorrelations c_{k,l}, (k,l) in [-n,n]x[-m,m], read as moments
// c_u = T(z^{-u}) of the spectral measure.
struct ArProblem {
  int n = 0, m = 0;
  MomentTable autocorr;
};

enum class ArClass { None, Causal, Acausal };
std::string ar_class_name(ArClass c);

struct ArSolution {
  BiPoly a;  // filter sum a_v z^v1 w^v2; zero when classification is none
  ArClass classification = ArClass::None;
  double a_norm = 0.0;  // operator norm of A; causal below tol
  StratificationReport condition;
};

ArSolution solve_ar(const ArProblem& problem, double tol = kConditionTolerance);

}  // namespace bsz
