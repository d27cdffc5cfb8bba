#pragma once

#include <cstdint>

#include "bsz/polycore.hpp"
#include "bsz/soscert.hpp"

namespace bsz {

struct GeometryReport {
  bool passed = false;
  double worst_deviation = 0.0;  // max | |w| - 1 | over sampled roots
  cplx worst_z = 0.0, worst_w = 0.0;
};

struct DetRep {
  CMatrix U;
  int m = 0, n1 = 0, n2 = 0;
  cplx scale = 1.0;
  double residual = 0.0;        // off-variety relative deviation of det/p
  double unitarity = 0.0;       // max |U^*U - I|
  double on_variety = 0.0;      // max |det| / |scale| on fresh variety samples
  BiPoly normalized;            // lambda p with lambda p = reflection
  SosCertificate certificate;   // G-form certificate of the reflected derivative
};

struct DetRepConfig {
  int samples = 128;            // z points on T for the fit
  int test_points = 100;        // off-variety points for the scale
  int fresh_samples = 50;       // on-variety consistency points
  double tol = 1e-6;
  double geometry_tol = 1e-6;
  std::vector<double> schedule = kDefaultSchedule;
  std::uint64_t seed = 0;
};

// Returns mu with p = mu * reflect(p, deg p), |mu| = 1.
cplx check_self_reflective(const BiPoly& p, double tol = 1e-8);
GeometryReport check_gdv_geometry(const BiPoly& p, int grid_size = 64, double tol = 1e-6);
// m p = reflect(dp/dw, (n, m-1)) + w dp/dw, coefficientwise; returns the
// relative residual through `residual` when given.
bool derivative_identity_check(const BiPoly& p, double tol = 1e-8, double* residual = nullptr);
// Principal square root of conj(mu): lambda p equals its reflection.
cplx self_reflective_normalizer(cplx mu);

// det(U Delta(z,w) - Gamma(z,w)) with Delta = diag(w I_m, z I_n1, I_n2),
// Gamma = diag(I_m, I_n1, z I_n2).
cplx detrep_eval(const CMatrix& U, int m, int n1, int n2, cplx z, cplx w);

DetRep build_detrep(const BiPoly& p, const DetRepConfig& cfg = {});

}  // namespace bsz
