#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hzeta/counting.hpp"
#include "hzeta/errors.hpp"
#include "hzeta/estimator.hpp"
#include "oracle/oracle_data.hpp"
#include "test_support.hpp"

using namespace hzeta;

namespace {

Real ref(int k) { return Real::parse(oracle::kZeros[k], 256); }

Enclosure at(double t) { return Enclosure::exact(t, kDefaultPrecision); }

double inv_sum(int count) {
  long double s = 0;
  for (int k = 0; k < count; ++k) s += 1.0L / std::stold(oracle::kZeros[k]);
  return static_cast<double>(s);
}

}  // namespace

TEST(GSum, SmallHeights) {
  const ZeroTable& t = support::certified_table(100);
  EXPECT_TRUE(g_sum(t, at(14.0)).contains(Real(64, 0L)));
  const Enclosure g30 = g_sum(t, at(30.0));
  // ordinates carry radius 1e-12
  EXPECT_NEAR(g30.to_double(), inv_sum(3), 1e-13);
  Real exact(256);
  for (int k = 0; k < 3; ++k) {
    Real r(256);
    mpfr_ui_div(r.get(), 1, ref(k).get(), MPFR_RNDN);
    mpfr_add(exact.get(), exact.get(), r.get(), MPFR_RNDN);
  }
  EXPECT_TRUE(g30.inflated(1e-40).contains(exact));
  EXPECT_NEAR(g_sum(t, at(100.0)).to_double(), inv_sum(29), 1e-13);
}

TEST(GSum, ZeroAtHeightCountsAsBelow) {
  const ZeroTable& t = support::certified_table(100);
  const Enclosure g = g_sum(t, height_at_zero(t, 3));
  EXPECT_NEAR(g.to_double(), inv_sum(3), 1e-13);
}

TEST(GSum, MonotoneInHeight) {
  const ZeroTable& t = support::certified_table(100);
  double prev = -1;
  for (double T = 10; T < 230; T += 0.731) {
    const double g = g_sum(t, at(T)).to_double();
    EXPECT_GE(g, prev) << T;
    prev = g;
  }
}

TEST(Naive, AtTwoPiE) {
  const ZeroTable& t = support::certified_table(100);
  const Enclosure T = enc_const(EncConst::two_pi_e);
  const HEstimate e = naive_estimate(t, T);
  // log^2(T / 2pi) = 1, one zero below
  const double expected = 1.0 / std::stod(oracle::kZeros[0]) - 1.0 / (4 * std::numbers::pi);
  EXPECT_NEAR(e.value.to_double(), expected, 1e-13);
  EXPECT_EQ(e.n_zeros, 1);
  EXPECT_EQ(e.tail_bound, lehman_bound(T));
  EXPECT_TRUE(e.rigorous);
}

TEST(Naive, WithoutZerosIsMinusOneOverFourPi) {
  ZeroTable empty;
  CompletenessCertificate c;
  c.height = Enclosure::exact(20L);
  c.method = CertificateMethod::external_trusted;
  empty.certificate = c;
  EstimateOptions o;
  o.allow_uncertified = true;
  const HEstimate e = naive_estimate(empty, enc_const(EncConst::two_pi_e), o);
  const Enclosure minus = Enclosure::exact(-1L) / (enc_const(EncConst::pi) * 4);
  EXPECT_TRUE(e.value.overlaps(minus));
  EXPECT_LT(e.value.radius().to_double(), 1e-50);
  EXPECT_FALSE(e.rigorous);
}

TEST(Accelerated, AtTwoPiE) {
  const ZeroTable& t = support::certified_table(100);
  const Enclosure T = enc_const(EncConst::two_pi_e);
  const double Td = T.to_double();
  const double g1 = std::stod(oracle::kZeros[0]);
  const double expected = (1 / g1 - 1 / Td) - 1 / (4 * std::numbers::pi) + 7 / (8 * Td);
  const HEstimate e = accelerated_estimate(t, T);
  EXPECT_NEAR(e.value.to_double(), expected, 1e-13);
  EXPECT_EQ(e.tail_bound, e2_bound(T));
}

TEST(Accelerated, ContinuousAcrossZeros) {
  const ZeroTable& t = support::certified_table(100);
  for (int k : {1, 10, 50, 99}) {
    const double g = t.zeros[k - 1].gamma.to_double();
    const double below = accelerated_estimate(t, at(g - 1e-9)).value.to_double();
    const double above = accelerated_estimate(t, at(g + 1e-9)).value.to_double();
    const double exact = accelerated_estimate(t, t.zeros[k - 1].gamma).value.to_double();
    EXPECT_NEAR(below, above, 1e-10) << k;
    EXPECT_NEAR(exact, above, 1e-10) << k;
  }
}

TEST(Naive, JumpsByReciprocalOrdinate) {
  const ZeroTable& t = support::certified_table(100);
  // gamma_1 lies below 2 pi e, where the naive tail bound is not available
  for (int k : {2, 10, 50, 99}) {
    const double g = t.zeros[k - 1].gamma.to_double();
    const double below = naive_estimate(t, at(g - 1e-9)).value.to_double();
    const double above = naive_estimate(t, at(g + 1e-9)).value.to_double();
    EXPECT_NEAR(above - below, 1 / g, 1e-9) << k;
  }
}

TEST(Estimators, AgreeWithinTailBounds) {
  const ZeroTable& t = support::certified_table(1000);
  for (long n : {100L, 500L, 1000L}) {
    const Enclosure T = height_at_zero(t, n);
    const HEstimate a = accelerated_estimate(t, T);
    const HEstimate b = naive_estimate(t, T);
    EXPECT_TRUE(a.total.overlaps(b.total)) << n;
    EXPECT_TRUE(b.total.contains(Enclosure::from_decimal("-0.0171594043070981495"))) << n;
    EXPECT_TRUE(a.total.contains(Enclosure::from_decimal("-0.0171594043070981495"))) << n;
    EXPECT_LT(a.tail_bound, b.tail_bound);
    EXPECT_EQ(estimate(EstimateMethod::naive, t, T).value.to_double(), b.value.to_double());
  }
}

TEST(Accelerated, ThousandZeros) {
  const ZeroTable& t = support::certified_table(1000);
  const HEstimate e = accelerated_estimate(t, height_at_zero(t, 1000));
  EXPECT_EQ(e.n_zeros, 1000);
  EXPECT_EQ(e.value.midpoint_fixed(15), "-0.017159603499903");
  EXPECT_LT(e.value.radius().to_double(), 1e-13);
}

TEST(Fast, CloseToRigorousAndIndependentOfWorkers) {
  const ZeroTable& t = support::certified_table(1000);
  const Enclosure T = height_at_zero(t, 1000);
  EstimateOptions f1;
  f1.fast = true;
  EstimateOptions f4 = f1;
  f4.workers = 4;
  const HEstimate a = accelerated_estimate(t, T, f1);
  const HEstimate b = accelerated_estimate(t, T, f4);
  EXPECT_FALSE(a.rigorous);
  EXPECT_EQ(a.value.midpoint(), b.value.midpoint());
  EXPECT_NEAR(a.value.to_double(), accelerated_estimate(t, T).value.to_double(), 1e-15);
}

TEST(Hassani, ShiftAddsConstant) {
  const ZeroTable& t = support::certified_table(100);
  const HEstimate e = accelerated_estimate(t, height_at_zero(t, 100));
  const HEstimate s = hassani_shift(e);
  EXPECT_TRUE(s.hassani_shifted);
  const Enclosure diff = s.value - e.value;
  EXPECT_TRUE(diff.inflated(1e-40).contains(Real::parse(oracle::kLogTwoPiSqOver4Pi, 256)));
  EXPECT_TRUE((s.total - e.total).inflated(1e-40).contains(Real::parse(oracle::kLogTwoPiSqOver4Pi, 256)));
  // shifted reference value
  const Enclosure href = Enclosure::from_decimal("-0.0171594043070981495");
  const HEstimate fake{EstimateMethod::accelerated, Enclosure::exact(100L), 0, href, 0.0, href};
  EXPECT_EQ(hassani_shift(fake).value.midpoint_fixed(16), "0.2516367513127060");
}

TEST(Estimators, Errors) {
  const ZeroTable& t = support::certified_table(100);
  const double top = t.certified_height()->upper_double();
  EXPECT_THROW(accelerated_estimate(t, at(top + 1)), DomainError);
  EXPECT_THROW(naive_estimate(t, at(top + 1)), DomainError);
  const Enclosure straddle(t.zeros[9].gamma.midpoint(), Real(53, 1e-3));
  EXPECT_THROW(accelerated_estimate(t, straddle), DomainError);
  EXPECT_THROW(height_at_zero(t, 0), DomainError);
  EXPECT_THROW(height_at_zero(t, 101), DomainError);
  EXPECT_THROW(naive_estimate(t, at(15.0)), DomainError);

  ZeroTable bare = t;
  bare.certificate.reset();
  EXPECT_THROW(accelerated_estimate(bare, at(100.0)), UncertifiedTableError);
  EstimateOptions o;
  o.allow_uncertified = true;
  EXPECT_FALSE(accelerated_estimate(bare, at(100.0), o).rigorous);

  EXPECT_THROW(estimate_method_from_string("fancy"), std::invalid_argument);
  EXPECT_EQ(estimate_method_from_string(to_string(EstimateMethod::naive)), EstimateMethod::naive);
}

TEST(Buthe, HoldsOnCertifiedRange) {
  const ZeroTable& t = support::certified_table(1000);
  std::vector<double> hs;
  for (double T = 40; T < 1400; T *= 1.07) hs.push_back(T);
  hs.push_back(35.0);  // unsorted input
  const auto r = buthe_check(t, hs);
  ASSERT_EQ(r.size(), hs.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_EQ(r[i].T, hs[i]);
    EXPECT_EQ(r[i].status, CheckStatus::pass) << hs[i] << " " << r[i].note;
    EXPECT_TRUE(r[i].g.upper() <= r[i].rhs.lower());
  }
  EXPECT_THROW(buthe_check(t, std::vector<double>{20.0}), DomainError);
}

TEST(Buthe, HeightInsideEnclosureIsInconclusive) {
  const ZeroTable& t = support::certified_table(100);
  const std::vector<double> hs{t.zeros[49].gamma.to_double()};
  const auto r = buthe_check(t, hs);
  EXPECT_EQ(r[0].status, CheckStatus::inconclusive);
  EXPECT_FALSE(r[0].note.empty());
}
