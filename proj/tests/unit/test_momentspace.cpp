#include <doctest.h>

#include "bsz/errors.hpp"
#include "bsz/momentspace.hpp"
#include "helpers.hpp"

using namespace bsz;
using namespace bsz::testing;

namespace {
const BiPoly kTwoMinusZW = P({{2.0, 0.0}, {0.0, -1.0}});
}

TEST_SUITE("momentspace") {

TEST_CASE("Lebesgue E1(1,1) is spanned by 1 and z") {
  MomentSpace s(lebesgue(2, 2), 1, 1);
  SubspaceBasis b = s.basis(SpaceSpec::E1(1, 1));
  REQUIRE(b.dim() == 2);
  auto ps = b.polys(1, 1);
  CHECK(std::abs(std::abs(ps[0](0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(ps[1](1, 0)) - 1.0) < 1e-14);
  CHECK(ps[0].norm() == doctest::Approx(1.0));
}

TEST_CASE("E2(1,1) for 2 - zw is two orthonormal vectors orthogonal to z P_{0,1}") {
  MomentSpace s(moments_from_density(kTwoMinusZW, 2, 2), 1, 1);
  CMatrix Q = s.basis_matrix(SpaceSpec::E2(1, 1));
  REQUIRE(Q.cols() == 2);
  CHECK(s.orthonormality_defect(Q) < 1e-12);
  CMatrix zP(s.dim(), 2);
  zP.col(0) = s.vec(P({{0.0}, {1.0}}).resized(1, 1));
  zP.col(1) = s.vec(P({{0.0, 0.0}, {0.0, 1.0}}));
  CHECK(s.cross(Q, zP).norm() < 1e-12);
}

TEST_CASE("H space is one dimensional") {
  MomentSpace s(moments_from_density(kTwoMinusZW, 2, 2), 2, 1);
  CHECK(s.basis(SpaceSpec::H(1, 1)).dim() == 1);
}

TEST_CASE("dimension counts of the structural spaces") {
  MomentSpace s(moments_from_density(P({{3.0, 1.0}, {-1.0, 0.5}}), 4, 4), 3, 3);
  CHECK(s.basis(SpaceSpec::E1(2, 3)).dim() == 3);
  CHECK(s.basis(SpaceSpec::F1(2, 3)).dim() == 3);
  CHECK(s.basis(SpaceSpec::E2(2, 3)).dim() == 4);
  CHECK(s.basis(SpaceSpec::F2(2, 3)).dim() == 4);
}

TEST_CASE("phi sequence of the Lebesgue form is 1, w") {
  MomentSpace s(lebesgue(1, 2), 0, 1);
  auto phi = phi_sequence(s, 0, 1);
  REQUIRE(phi.size() == 2);
  CHECK(std::abs(phi[0](0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(phi[1](0, 1) - 1.0) < 1e-14);
}

TEST_CASE("phi sequence is orthonormal and spans E2") {
  MomentSpace s(moments_from_density(kTwoMinusZW, 2, 2), 1, 1);
  auto phi = phi_sequence(s, 1, 1);
  REQUIRE(phi.size() == 2);
  CMatrix V(s.dim(), 2);
  for (int i = 0; i < 2; ++i) V.col(i) = s.vec(phi[i]);
  CHECK(s.orthonormality_defect(V) < 1e-9);
  CMatrix Q = s.basis_matrix(SpaceSpec::E2(1, 1));
  CHECK(s.max_angle(V, Q) < 1e-8);
  CHECK(s.max_angle(Q, V) < 1e-8);
}

TEST_CASE("projection onto monomials in the Lebesgue case") {
  MomentSpace s(lebesgue(2, 2), 1, 1);
  SubspaceBasis zspan = s.wrap(s.orthonormalize(s.vec(P({{0.0}, {1.0}}).resized(1, 1))));
  Projection a = project(s, P({{0.0}, {1.0}}), zspan);
  CHECK(std::abs(std::abs(a.coeffs[0]) - 1.0) < 1e-14);
  CHECK(a.residual.norm() < 1e-14);
  Projection b = project(s, BiPoly::constant(1.0), zspan);
  CHECK(std::abs(b.coeffs[0]) < 1e-14);
  CHECK(std::abs(s.norm(b.residual) - 1.0) < 1e-14);
}

TEST_CASE("projection matches the normal equations") {
  BiPoly p = P({{1.0}, {-2.0}}) * kTwoMinusZW;
  MomentSpace s(moments_from_density(p, 3, 2), 2, 1);
  SubspaceBasis e1 = s.basis(SpaceSpec::E1(1, 1));
  BiPoly f = P({{0.0, 0.0}, {1.0, 0.5}, {0.0, 0.0}});  // z (1 + 0.5 w)
  Projection pr = project(s, f, e1);
  // Brute force: least squares over the raw generators of E1(1,1) expressed
  // through the basis support.
  CMatrix V = e1.vectors;
  CMatrix G = s.cross(V, V);
  CVector rhs = V.adjoint() * s.gram() * s.vec(f);
  CVector x = G.ldlt().solve(rhs);
  CHECK((x - pr.coeffs).norm() < 1e-10);
  CHECK(s.cross(pr.residual, V).norm() < 1e-10);
}

TEST_CASE("reproducing kernels") {
  MomentSpace s(lebesgue(2, 2), 1, 1);
  SubspaceBasis one = s.wrap(s.orthonormalize(s.vec(BiPoly::constant(1.0))));
  CHECK(std::abs(kernel_eval(one, 0.3, 0.1, -0.2, 0.7) - 1.0) < 1e-14);
  CMatrix V(s.dim(), 2);
  V.col(0) = s.vec(BiPoly::constant(1.0));
  V.col(1) = s.vec(P({{0.0}, {1.0}}));
  SubspaceBasis p10 = s.wrap(s.orthonormalize(V));
  cplx z(0.3, 0.2), zeta(0.1, -0.4);
  CHECK(std::abs(kernel_eval(p10, z, 0.0, zeta, 0.0) - (1.0 + z * std::conj(zeta))) < 1e-14);

  MomentSpace t(moments_from_density(kTwoMinusZW, 2, 2), 1, 1);
  auto phi = phi_sequence(t, 1, 1);
  cplx w(0.3, 0.2), eta(0.1, -0.4), zz(0.5, 0.0), ze(-0.2, 0.3);
  cplx oracle = 0.0;
  for (const auto& f : phi) oracle += f.eval(zz, w) * std::conj(f.eval(ze, eta));
  CHECK(std::abs(kernel_eval(t.basis(SpaceSpec::E2(1, 1)), zz, w, ze, eta) - oracle) < 1e-10);
}

TEST_CASE("indefinite and singular forms are rejected") {
  CMatrix raw = CMatrix::Zero(3, 3);
  raw(1, 1) = -1.0;
  try {
    MomentSpace s(MomentTable(1, 1, raw), 1, 1);
    FAIL("expected NotPositive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositive);
  }
  CMatrix ones = CMatrix::Ones(3, 3);  // point mass at z = w = 1
  try {
    MomentSpace s(MomentTable(1, 1, ones), 1, 1);
    FAIL("expected DegenerateForm");
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::DegenerateForm || e.code() == ErrorCode::NotPositive));
  }
}

TEST_CASE("caps beyond the table raise InsufficientMoments") {
  try {
    MomentSpace s(lebesgue(1, 1), 2, 1);
    FAIL("expected InsufficientMoments");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientMoments);
  }
}

}
