#include <doctest.h>

#include "bsz/errors.hpp"
#include "bsz/gdvrep.hpp"
#include "helpers.hpp"

using namespace bsz;
using namespace bsz::testing;

namespace {

const BiPoly kZminusW = P({{0.0, -1.0}, {1.0, 0.0}});
const BiPoly kZ2minusW = P({{0.0, -1.0}, {0.0, 0.0}, {1.0, 0.0}});
const BiPoly kZminus2W = P({{0.0, -2.0}, {1.0, 0.0}});

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_SUITE("gdvrep") {

TEST_CASE("self-reflective constants") {
  CHECK(std::abs(check_self_reflective(kZminusW) + 1.0) < 1e-12);
  CHECK(std::abs(check_self_reflective(kZ2minusW) + 1.0) < 1e-12);
  CHECK(code_of([] { check_self_reflective(kZminus2W); }) == ErrorCode::NotSelfReflective);
  CHECK(code_of([] { check_self_reflective(P({{-0.5, 0.0}, {1.0, 0.0}})); }) == ErrorCode::ZOnlyFactor);
}

TEST_CASE("normalizer for mu = -1 is i") {
  CHECK(std::abs(self_reflective_normalizer(-1.0) - cplx(0, 1)) < 1e-15);
  cplx mu = std::polar(1.0, 2.0);
  cplx l = self_reflective_normalizer(mu);
  CHECK(std::abs(l * l * mu - 1.0) < 1e-14);  // lambda p = conj(lambda) mu reflect(p)
}

TEST_CASE("geometry check") {
  CHECK(check_gdv_geometry(kZminusW).passed);
  CHECK(check_gdv_geometry(kZ2minusW).passed);
  GeometryReport r = check_gdv_geometry(kZminus2W);
  CHECK_FALSE(r.passed);
  CHECK(std::abs(r.worst_deviation - 0.5) < 1e-12);
}

TEST_CASE("vanishing leading coefficient on every perturbed grid") {
  // With a single grid point the three attempts sample z at angles 0, 0.37
  // and 0.74 turns; the leading w-coefficient vanishes at all of them.
  std::vector<cplx> hits;
  for (double a : {0.0, 0.37, 0.74}) hits.push_back(std::polar(1.0, 2.0 * std::numbers::pi * a));
  UniPoly lead = UniPoly::from_roots(hits);
  BiPoly p(3, 1);
  p(0, 0) = 1.0;
  for (int j = 0; j <= 3; ++j) p(j, 1) = lead[j];
  CHECK(code_of([&] { check_gdv_geometry(p, 1); }) == ErrorCode::DegenerateSlice);
  // One bad point is avoided by the retry.
  BiPoly q = P({{1.0, -1.0}, {0.0, 1.0}});  // (z - 1) w + 1
  CHECK_NOTHROW(check_gdv_geometry(q, 64));
}

TEST_CASE("derivative identity for normalized self-reflective polynomials") {
  for (const BiPoly& p : {kZminusW, kZ2minusW}) {
    BiPoly q = p * self_reflective_normalizer(check_self_reflective(p));
    double res = 1.0;
    CHECK(derivative_identity_check(q, 1e-12, &res));
    CHECK(res < 1e-12);
  }
  double res = 0.0;
  CHECK_FALSE(derivative_identity_check(P({{2.0, 0.0}, {0.0, -1.0}}), 1e-8, &res));
  CHECK(res > 0.1);
}

TEST_CASE("determinant of the witness matrices") {
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  cplx z(0.3, 0.4), w(-0.7, 0.2);
  CHECK(std::abs(detrep_eval(swap, 1, 0, 1, z, w) - (z - w)) < 1e-14);
  CMatrix cyc(3, 3);
  cyc << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  CHECK(std::abs(detrep_eval(cyc, 1, 0, 2, z, w) + (z * z - w)) < 1e-14);
}

TEST_CASE("representation of z - w") {
  DetRep d = build_detrep(kZminusW);
  CHECK(d.m == 1);
  CHECK(d.n1 == 0);
  CHECK(d.n2 == 1);
  CHECK(d.unitarity < 1e-8);
  CHECK(d.residual < 1e-8);
  CHECK(d.on_variety < 1e-6);
}

TEST_CASE("representation of z^2 - w") {
  DetRep d = build_detrep(kZ2minusW);
  CHECK(d.m == 1);
  CHECK(d.n1 + d.n2 == 2);
  CHECK(d.n2 == 2);
  CHECK(d.unitarity < 1e-8);
  CHECK(d.residual < 1e-6);
}

TEST_CASE("self-reflective degree (1,1) polynomial with zeros on the torus") {
  BiPoly p = P({{1.0, cplx(0, -2)}, {cplx(0, 2), 1.0}});
  DetRep d = build_detrep(p);
  CHECK(d.m + d.n1 + d.n2 == 2);
  CHECK(d.unitarity < 1e-8);
  CHECK(d.residual < 1e-6);
}

TEST_CASE("z - 2w is not a generalized distinguished variety") {
  CHECK(code_of([] { build_detrep(kZminus2W); }) == ErrorCode::NotGdv);
}

}
