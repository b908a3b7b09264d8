#include <gtest/gtest.h>

#include <cmath>

#include "hzeta/certify.hpp"
#include "hzeta/counting.hpp"
#include "hzeta/errors.hpp"
#include "hzeta/zero_search.hpp"
#include "oracle/oracle_data.hpp"
#include "test_support.hpp"

using namespace hzeta;

namespace {

Real ref(int k) { return Real::parse(oracle::kZeros[k], 256); }

bool same(const Enclosure& a, const Enclosure& b) {
  return a.midpoint() == b.midpoint() && a.radius() == b.radius();
}

}  // namespace

TEST(Locate, ThreeZerosBelowThirty) {
  const auto z = locate_and_refine(10.0, 30.0, 1e-12);
  ASSERT_EQ(static_cast<long>(z.size()), oracle::kCountBelow30);
  for (std::size_t k = 0; k < z.size(); ++k) {
    EXPECT_TRUE(z[k].contains(ref(static_cast<int>(k)))) << k;
    EXPECT_LE(z[k].radius().to_double(), 1e-12);
  }
}

TEST(Locate, NoZeroBelowFourteen) { EXPECT_TRUE(locate_and_refine(10.0, 14.0, 1e-12).empty()); }

TEST(Locate, FirstHundredHeightAgainstOracle) {
  const auto z = locate_and_refine(10.0, 100.0, 1e-12);
  ASSERT_EQ(static_cast<long>(z.size()), oracle::kCountBelow100);
  for (std::size_t k = 0; k < z.size(); ++k) {
    Real diff(256);
    mpfr_sub(diff.get(), z[k].midpoint().get(), ref(static_cast<int>(k)).get(), MPFR_RNDN);
    EXPECT_LT(std::abs(diff.to_double()), 1e-10) << k;
    EXPECT_TRUE(z[k].contains(ref(static_cast<int>(k)))) << k;
  }
}

TEST(Locate, CoarseTargetRadius) {
  const auto z = locate_and_refine(10.0, 50.0, 1e-6);
  ASSERT_EQ(z.size(), 10u);
  for (std::size_t k = 0; k < z.size(); ++k) {
    EXPECT_LE(z[k].radius().to_double(), 1e-6);
    EXPECT_TRUE(z[k].contains(ref(static_cast<int>(k))));
  }
}

TEST(Locate, WorkerCountDoesNotChangeResult) {
  SearchOptions serial;
  SearchOptions parallel;
  parallel.workers = 4;
  const auto a = locate_and_refine(1000.0, 1300.0, serial);
  const auto b = locate_and_refine(1000.0, 1300.0, parallel);
  ASSERT_EQ(a.size(), b.size());
  ASSERT_GT(a.size(), 100u);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_TRUE(same(a[k], b[k])) << k;
}

TEST(Locate, DisjointAndIncreasingAtModerateHeight) {
  const auto z = locate_and_refine(5000.0, 5200.0, 1e-12);
  for (std::size_t k = 1; k < z.size(); ++k) EXPECT_TRUE(z[k].lower() > z[k - 1].upper()) << k;
  // count agrees with L to within the size of S
  const double expected = big_l(Enclosure::exact(5200L)).to_double() - big_l(Enclosure::exact(5000L)).to_double();
  EXPECT_NEAR(static_cast<double>(z.size()), expected, 4.0);
}

TEST(Locate, Errors) {
  EXPECT_THROW(locate_and_refine(1.0, 30.0, 1e-12), DomainError);
  EXPECT_THROW(locate_and_refine(30.0, 20.0, 1e-12), DomainError);
  EXPECT_THROW(locate_and_refine(10.0, 30.0, 0.0), DomainError);
}

TEST(Refine, BracketAroundFirstZero) {
  SearchOptions o;
  const Enclosure z = refine_zero(Real(128, 14.0), Real(128, 14.5), o);
  EXPECT_TRUE(z.contains(ref(0)));
  EXPECT_TRUE(z.lower() >= Real(128, 14.0));
  EXPECT_TRUE(z.upper() <= Real(128, 14.5));
  // refining again from the result gives the same enclosure
  const Enclosure again = refine_zero(Real(128, 14.0), Real(128, 14.5), o);
  EXPECT_TRUE(same(z, again));
  EXPECT_THROW(refine_zero(Real(128, 15.0), Real(128, 16.0), o), RefinementError);
}

TEST(Certify, HeightHundred) {
  const auto z = locate_and_refine(10.0, 170.0, 1e-12);
  const auto cert = certify_range(z, Enclosure::exact(100L, 192), 170.0);
  EXPECT_EQ(cert.zero_count, oracle::kCountBelow100);
  EXPECT_EQ(cert.method, CertificateMethod::turing_window);
  ASSERT_TRUE(cert.evidence.has_value());
  EXPECT_GT(window_margin(*cert.evidence), 0.0);
  EXPECT_EQ(check_certificate(cert), "");
}

TEST(Certify, MissingZeroIsDetected) {
  auto z = locate_and_refine(10.0, 170.0, 1e-12);
  z.erase(z.begin() + 20);
  EXPECT_THROW(certify_range(z, Enclosure::exact(100L, 192), 170.0), CertificationError);
  try {
    certify_range(z, Enclosure::exact(100L, 192), 170.0);
  } catch (const CertificationError& e) {
    EXPECT_NE(std::string(e.what()).find("widen the window"), std::string::npos);
  }
}

TEST(Certify, WindowTooShort) {
  const auto z = locate_and_refine(10.0, 120.0, 1e-12);
  EXPECT_THROW(certify_range(z, Enclosure::exact(100L, 192), 120.0), CertificationError);
}

TEST(Certify, HeightInsideEnclosure) {
  const auto z = locate_and_refine(10.0, 170.0, 1e-12);
  EXPECT_THROW(certify_range(z, z[3], 170.0), DomainError);
  EXPECT_THROW(certify_range(z, Enclosure::exact(5.0), 170.0), DomainError);
}

TEST(Certify, TamperedEvidenceIsRejected) {
  const auto z = locate_and_refine(10.0, 170.0, 1e-12);
  auto cert = certify_range(z, Enclosure::exact(100L, 192), 170.0);
  auto weak = cert;
  weak.evidence->s1_bound = 0.5;
  EXPECT_NE(check_certificate(weak), "");
  auto wrong = cert;
  wrong.evidence->integral = wrong.evidence->integral - 1000;
  EXPECT_NE(check_certificate(wrong), "");
}

TEST(Build, ByCount) {
  const ZeroTable& t = support::certified_table(100);
  ASSERT_EQ(t.size(), 100u);
  ASSERT_TRUE(t.is_certified());
  EXPECT_EQ(t.certificate->zero_count, 100);
  const Enclosure h = *t.certified_height();
  EXPECT_TRUE(h.lower() > t.zeros[99].gamma.upper());
  EXPECT_TRUE(h.upper() < Real(64, 237.7));  // gamma_101 = 237.769...
  EXPECT_EQ(check_certificate(*t.certificate, t), "");
}

TEST(Build, ByHeight) {
  const auto r = build_zero_table_by_height(100.0);
  ASSERT_TRUE(r.certification_error.empty()) << r.certification_error;
  EXPECT_EQ(static_cast<long>(r.table.size()), oracle::kCountBelow100);
  EXPECT_EQ(check_certificate(*r.table.certificate, r.table), "");
  EXPECT_THROW(build_zero_table_by_height(3.0), DomainError);
  EXPECT_THROW(build_zero_table_by_count(0), DomainError);
}

TEST(Build, Idempotent) {
  const auto a = build_zero_table_by_count(40);
  const auto b = build_zero_table_by_count(40);
  EXPECT_EQ(format_zero_table(a.table), format_zero_table(b.table));
}

TEST(Build, ApproximateHeight) {
  const double h = approximate_height_for_count(100.5);
  EXPECT_NEAR(h, 237.0, 3.0);
}
