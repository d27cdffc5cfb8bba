#include <doctest.h>

#include "bsz/errors.hpp"
#include "bsz/soscert.hpp"
#include "helpers.hpp"

using namespace bsz;
using namespace bsz::testing;

namespace {
const BiPoly kTwoMinusZW = P({{2.0, 0.0}, {0.0, -1.0}});
}

TEST_SUITE("soscert") {

TEST_CASE("2 - zw certificate is the analytic one") {
  SosCertificate c = certificate_closed_face(kTwoMinusZW);
  CHECK(c.A.size() == 1);
  CHECK(c.n1 == 1);
  CHECK(c.n2 == 0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 50; ++i) {
    cplx z(u(rng), u(rng)), w(u(rng), u(rng));
    double A = std::norm(c.A[0].eval(z, w)), B = std::norm(c.B[0].eval(z, w));
    CHECK(std::abs(A - 3.0) < 1e-10);
    CHECK(std::abs(B - 3.0 * std::norm(w)) < 1e-10);
  }
  CHECK(c.residual < 1e-12);
}

TEST_CASE("1 - 2z needs one negative square") {
  SosCertificate c = certificate_closed_face(P({{1.0}, {-2.0}}));
  CHECK(c.A.empty());
  CHECK(c.n1 == 0);
  REQUIRE(c.n2 == 1);
  CHECK(std::abs(std::abs(c.C[0].eval(0.3, 0.0)) - std::sqrt(3.0)) < 1e-10);
  CHECK(c.C[0].trimmed().n() == 0);
}

TEST_CASE("constant polynomial has the empty certificate") {
  SosCertificate c = certificate_closed_face(BiPoly::constant(1.0));
  CHECK(c.A.empty());
  CHECK(c.B.empty());
  CHECK(c.C.empty());
  CHECK(c.residual == 0.0);
  CHECK(verify_certificate(BiPoly::constant(1.0), c).max() == 0.0);
}

TEST_CASE("open face agrees with the closed face when no scaling is needed") {
  SosCertificate a = certificate_closed_face(kTwoMinusZW), b = certificate_open_face(kTwoMinusZW);
  REQUIRE(a.A.size() == b.A.size());
  CHECK(b.t == 1.0);
  CHECK((a.A[0].coeffs() - b.A[0].coeffs()).norm() < 1e-8);
  CHECK((a.B[0].coeffs() - b.B[0].coeffs()).norm() < 1e-8);
}

TEST_CASE("reflected derivative of z^2 - w is z-only with two negative squares") {
  BiPoly P2 = reflect(P({{0.0, -1.0}, {0.0, 0.0}, {1.0, 0.0}}).derivative_w(), 2, 0);
  SosCertificate c = certificate_open_face(P2);
  CHECK(c.m == 0);
  CHECK(c.n1 == 0);
  CHECK(c.n2 == 2);
  for (double r : {0.2, 0.9, 1.4}) {
    cplx z = std::polar(r, 0.7);
    double sum = 0.0;
    for (const auto& f : c.C) sum += std::norm(f.eval(z, 0.0));
    CHECK(std::abs(sum - (1.0 + r * r)) < 1e-10);
  }
}

TEST_CASE("self-reflective p shares a factor with its reflection") {
  try {
    certificate_open_face(P({{0.0, -1.0}, {1.0, 0.0}}));
    FAIL("expected CommonFactor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CommonFactor);
  }
}

TEST_CASE("corrupted certificate is detected") {
  SosCertificate c = certificate_closed_face(kTwoMinusZW);
  CHECK(verify_certificate(kTwoMinusZW, c).max() < 1e-12);
  c.B[0] = P({{0.0, 2.0}});
  CHECK(verify_certificate(kTwoMinusZW, c).max() > 1e-3);
}

TEST_CASE("G form satisfies its own identity") {
  SosCertificate c = certificate_closed_face(kTwoMinusZW, CertVariant::G);
  CHECK(c.A.size() == 2);
  CHECK(verify_certificate(kTwoMinusZW, c).max() < 1e-12);
}

TEST_CASE("inside root count for a univariate polynomial") {
  BiPoly p = BiPoly::from_uni(UniPoly::from_roots({0.5, cplx(0, -0.3), 2.5, -1.7}));
  CHECK(inside_root_count(certificate_closed_face(p)) == 2);
}

TEST_CASE("certificates for random stable polynomials hold in kernel form") {
  for (const BiPoly& p : stable_corpus(4, 17)) {
    SosCertificate c = certificate_closed_face(p);
    CHECK(c.n2 == 0);
    CHECK(verify_certificate(p, c).kernel < 1e-8);
  }
}

}
