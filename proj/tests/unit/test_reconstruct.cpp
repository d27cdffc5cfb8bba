#include <doctest.h>

#include "bsz/errors.hpp"
#include "bsz/reconstruct.hpp"
#include "helpers.hpp"

using namespace bsz;
using namespace bsz::testing;

namespace {
const BiPoly kTwoMinusZW = P({{2.0, 0.0}, {0.0, -1.0}});
}

TEST_SUITE("reconstruct") {

TEST_CASE("2 - zw round trip has unit norm automatically") {
  BiPoly p = reconstruct_p(moments_from_density(kTwoMinusZW, 1, 1), 1, 1);
  CHECK(phase_distance(p, kTwoMinusZW) < 1e-10);
  CHECK(std::abs(p(0, 0) - 2.0) < 1e-10);
}

TEST_CASE("Lebesgue gives p = 1") {
  BiPoly p = reconstruct_p(lebesgue(0, 0), 0, 0);
  CHECK(std::abs(p(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("(1-2z)(2-zw) returns the stable representative") {
  BiPoly p = P({{1.0}, {-2.0}}) * kTwoMinusZW;
  ReconstructionDiagnostics d;
  BiPoly q = reconstruct_p(moments_from_density(p, 2, 1), 2, 1, kConditionTolerance, &d);
  BiPoly stable = P({{2.0}, {-1.0}}) * kTwoMinusZW;
  CHECK(phase_distance(q, stable) < 1e-9);
  auto [gap, mx] = modulus_gap_on_torus(q, p, 256);
  CHECK(gap < 1e-7 * mx);
  CHECK(d.n0 == 1);
  CHECK(d.gcd_residual < 1e-10);
}

TEST_CASE("kernel polynomial has degree (2n, m)") {
  MomentSpace s(moments_from_density(kTwoMinusZW, 1, 1), 1, 1);
  BiPoly K = kernel_polynomial(s, 1, 1);
  CHECK(K.n() == 2);
  CHECK(K.m() == 1);
}

TEST_CASE("matrix condition failure propagates") {
  TrigPoly t = hermitian_trig(1, 1, {{0, 0, 5.0}, {1, -1, 1.0}, {1, 1, 1.0}});
  try {
    reconstruct_p(moments_from_trig(t, 1, 1), 1, 1);
    FAIL("expected MatrixConditionFails");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MatrixConditionFails);
  }
  try {
    factor_trig(t, 1, 1);
    FAIL("expected NotFactorable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFactorable);
  }
}

TEST_CASE("factor |2 - zw|^2") {
  BiPoly p = factor_trig(hermitian_trig(1, 1, {{0, 0, 5.0}, {1, 1, -2.0}}), 1, 1);
  CHECK(phase_distance(p, kTwoMinusZW) < 1e-9);
}

TEST_CASE("factor 4 - z conj(w) - conj(z) w as alpha z + beta w") {
  BiPoly p = factor_trig(hermitian_trig(1, 1, {{0, 0, 4.0}, {1, -1, -1.0}}), 1, 1);
  CHECK(std::abs(p(0, 0)) < 1e-9);
  CHECK(std::abs(p(1, 1)) < 1e-9);
  CHECK(std::abs(std::norm(p(1, 0)) - (2.0 + std::sqrt(3.0))) < 1e-9);
  CHECK(std::abs(std::norm(p(0, 1)) - (2.0 - std::sqrt(3.0))) < 1e-9);
}

TEST_CASE("factor the constant 1") {
  BiPoly p = factor_trig(TrigPoly{}, 0, 0);
  CHECK(std::abs(p(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("reconstruction from random admissible polynomials matches the modulus") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 4; ++i) {
    BiPoly p = random_admissible(rng);
    BiPoly q = reconstruct_p(moments_from_density(p, p.n(), p.m()), p.n(), p.m());
    auto [gap, mx] = modulus_gap_on_torus(q, p, 128);
    CHECK(gap < 1e-6 * mx);
    CHECK(min_w_root_modulus_on_circle(q) > 1.0);
  }
}

}
