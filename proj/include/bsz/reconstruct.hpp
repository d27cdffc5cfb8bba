#pragma once

#include "bsz/momentspace.hpp"
#include "bsz/splitshift.hpp"

namespace bsz {

struct ReconstructionDiagnostics {
  BiPoly kernel;        // sum_j phi_j(z,w) z^n conj(phi_j)(1/z,0), degree (2n,m)
  UniPoly common;       // gcd of the kernel's w-rows
  BiPoly g;             // kernel / common
  UniPoly q;            // one-variable factor from the Toeplitz step
  int n0 = 0;           // n - deg_z g
  double gcd_residual = 0.0;
  double toeplitz_condition = 1.0;
  StratificationReport condition;
};

// Kernel polynomial of the phi sequence (intermediate step, exposed for tests).
BiPoly kernel_polynomial(const MomentSpace& space, int n, int m);

// Recovers p with no zeros on T x closed disk from the moments on
// [-n,n] x [-m,m]. Unit norm, canonical phase.
BiPoly reconstruct_p(const MomentTable& table, int n, int m, double tol = kConditionTolerance,
                     ReconstructionDiagnostics* diag = nullptr);

// Factors t = |p|^2 on T^2 or throws NotFactorable. `fit_tol` bounds
// max | |p|^2 - t | / max t over a 256 x 256 grid.
BiPoly factor_trig(const TrigPoly& t, int n, int m, const QuadratureConfig& cfg = {}, double tol = kConditionTolerance,
                   double fit_tol = 1e-6);

}  // namespace bsz
