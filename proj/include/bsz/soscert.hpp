#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bsz/moments.hpp"
#include "bsz/polycore.hpp"

namespace bsz {

// L: |p|^2 - |p~|^2 = (1-|w|^2) sum|A|^2 + (1-|z|^2)(sum|B|^2 - sum|C|^2)
// G: |p|^2 - |w|^2 |p~|^2 = same right-hand side, with A spanning E2(n,m)
//    and B = w * (reflected K2 basis).
enum class CertVariant { L, G };

struct SosCertificate {
  int n = 0, m = 0;
  std::vector<BiPoly> A, B, C;
  int n1 = 0, n2 = 0;
  double residual = 0.0;
  CertVariant variant = CertVariant::L;
  double t = 1.0;  // scaling parameter the certificate was built at
};

struct ResidualReport {
  double diagonal = 0.0;  // relative residual with (zeta,eta) = (z,w)
  double kernel = 0.0;    // relative residual at independent point pairs
  double max() const { return std::max(diagonal, kernel); }
  std::array<cplx, 4> worst{};  // (z, w, zeta, eta)
  bool passed = false;
};

inline const std::vector<double> kDefaultSchedule{0.9, 0.99, 0.999, 0.9999};

SosCertificate certificate_closed_face(const BiPoly& p, CertVariant variant = CertVariant::L,
                                       const QuadratureConfig& cfg = {}, std::uint64_t seed = 0);

SosCertificate certificate_open_face(const BiPoly& p, const std::vector<double>& schedule = kDefaultSchedule,
                                     double tol = 1e-8, CertVariant variant = CertVariant::L,
                                     const QuadratureConfig& cfg = {}, std::uint64_t seed = 0);

// Samples in the polydisk of radius 1.5, seeded.
ResidualReport verify_certificate(const BiPoly& p, const SosCertificate& cert, int samples = 200, double tol = 1e-8,
                                  std::uint64_t seed = 0);

// Pointwise left and right sides of the certificate identity.
cplx certificate_lhs(const BiPoly& p, CertVariant variant, cplx z, cplx w, cplx zeta, cplx eta);
cplx certificate_rhs(const SosCertificate& cert, cplx z, cplx w, cplx zeta, cplx eta);

// Negative inertia of the Hermitian coefficient form sum B B^* - sum C C^*.
// For m = 0 this is the number of zeros of p inside the disk.
int inside_root_count(const SosCertificate& cert);

// True when p and its reflection share a root in w at three random z and
// a root in z at three random w.
bool shares_factor_with_reflection(const BiPoly& p, std::uint64_t seed = 0);

}  // namespace bsz
