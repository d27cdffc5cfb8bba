#include <doctest.h>

#include "bsz/errors.hpp"
#include "bsz/fullmeasure.hpp"
#include "bsz/reconstruct.hpp"
#include "helpers.hpp"

using namespace bsz;
using namespace bsz::testing;

namespace {

const BiPoly kTwoMinusZW = P({{2.0, 0.0}, {0.0, -1.0}});

double worst(const FullMeasureReport& r) {
  double w = 0.0;
  for (const auto& c : r.e2_conditions) w = std::max(w, c.max_entry);
  for (const auto& c : r.h_conditions) w = std::max(w, c.max_entry);
  return w;
}

}  // namespace

TEST_SUITE("fullmeasure") {

TEST_CASE("Lebesgue passes with identically zero entries") {
  FullMeasureReport r = check_full_measure(lebesgue(4, 3), 0, 0, 3, 3);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(worst(r) == 0.0);
  CHECK(r.positivity_ok);
  CHECK(r.depth_n == 3);
  CHECK(r.depth_m == 3);
}

TEST_CASE("Bernstein-Szego density passes below 1e-7") {
  FullMeasureReport r = check_full_measure(moments_from_density(kTwoMinusZW, 5, 4), 1, 1);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(worst(r) < 1e-7);
  CHECK(r.e2_conditions.size() == 4 * 5);
  CHECK(r.h_conditions.size() == 3);
}

TEST_CASE("mixed density fails") {
  MomentTable a = moments_from_density(kTwoMinusZW, 5, 4);
  MomentTable mixed(5, 4, 0.5 * (a.data() + lebesgue(5, 4).data()));
  FullMeasureReport r = check_full_measure(mixed, 1, 1);
  CHECK(r.verdict == Verdict::Fail);
  CHECK(worst(r) > 1e-7);
}

TEST_CASE("cross-check: window reconstruction of the mixed density mismatches its moments") {
  MomentTable a = moments_from_density(kTwoMinusZW, 5, 4);
  MomentTable mixed(5, 4, 0.5 * (a.data() + lebesgue(5, 4).data()));
  BiPoly p = reconstruct_p(mixed, 1, 1);
  MomentTable model = moments_from_density(p, 5, 4);
  CHECK(max_abs_diff(model, mixed, 5, 4) > 1e-3);
}

TEST_CASE("table too small for the depth") {
  try {
    check_full_measure(moments_from_density(kTwoMinusZW, 3, 3), 1, 1);
    FAIL("expected InsufficientMoments");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientMoments);
  }
}

TEST_CASE("indefinite table fails positivity") {
  CMatrix raw = lebesgue(4, 3).data();
  raw(4 + 1, 3) = 2.0;  // |c_{1,0}| > c_{0,0}
  raw(4 - 1, 3) = 2.0;
  FullMeasureReport r = check_full_measure(MomentTable(4, 3, raw), 0, 0, 3, 3);
  CHECK_FALSE(r.positivity_ok);
  CHECK(r.verdict == Verdict::Fail);
}

TEST_CASE("strip match") {
  double res = 1.0;
  BiPoly p = strip_match(moments_from_density(kTwoMinusZW, 5, 1), 1, 1, 1e-7, &res);
  CHECK(phase_distance(p, kTwoMinusZW) < 1e-9);
  CHECK(res < 1e-7);
  BiPoly one = strip_match(lebesgue(3, 0), 0, 0);
  CHECK(std::abs(one(0, 0) - 1.0) < 1e-14);

  MomentTable t = moments_from_density(kTwoMinusZW, 5, 1);
  CMatrix raw = t.data();
  raw(5 + 3, 1) += 1e-3;  // c_{3,0}
  raw(5 - 3, 1) += 1e-3;
  try {
    strip_match(MomentTable(5, 1, raw), 1, 1);
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::FitResidualTooLarge || e.code() == ErrorCode::MatrixConditionFails));
  }
}

TEST_CASE("normalization is stable when the window grows in w") {
  BiPoly p = P({{3.0, 1.0}, {-1.0, 0.0}});
  MomentTable t = moments_from_density(p, 2, 3);
  BiPoly a = reconstruct_p(t, 1, 1), b = reconstruct_p(t, 1, 2);
  CHECK(phase_distance(a.resized(1, 2), b) < 1e-8);
}

}
