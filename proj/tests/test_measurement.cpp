#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrf/error.hpp"
#include "qrf/measurement.hpp"

using namespace qrf;

TEST(RelativeShift, ActsOnKets) {
  const FiniteGroup g = symmetric_group(3);
  const int n = g.order();
  const Operator u = relative_shift(g);
  EXPECT_TRUE(is_unitary(u, 0.0));
  for (int p = 0; p < n; ++p) {
    for (int s = 0; s < n; ++s) {
      const int to = g.mul(p, g.inverse(s)) * n + s;
      EXPECT_EQ(u(to, p * n + s), Complex(1.0));
    }
  }
}

TEST(MeasurementProperty, CanonicalSchemeOnSuiteGroups) {
  for (const auto& g : gen::suite_groups()) {
    const MeasurementScheme scheme = canonical_measurement_scheme(g);
    const auto prc = check_prc(scheme);
    EXPECT_TRUE(prc.pass) << g.order() << " " << prc.max_deviation;
    EXPECT_EQ(prc.max_deviation, 0.0);
    EXPECT_EQ(commutation_defect(scheme, left_regular_rep(g)).max_deviation, 0.0);
    const auto rrc = check_rrc(scheme, left_regular_rep(g));
    EXPECT_TRUE(rrc.pass);
    EXPECT_EQ(rrc.max_deviation, 0.0);
  }
}

TEST(Measurement, RrcNeedsCommutingInteraction) {
  // The right-acting pointer rep does not commute with the relative shift.
  const FiniteGroup g = symmetric_group(3);
  const MeasurementScheme scheme = canonical_measurement_scheme(g);
  const auto defect = commutation_defect(scheme, left_right_rep(g));
  EXPECT_GT(defect.max_deviation, 0.5);
  try {
    check_rrc(scheme, left_right_rep(g));
    FAIL() << "accepted a non-commuting interaction";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find(" with max |U - V U V*| = "), std::string::npos) << e.what();
  }
  EXPECT_THROW(commutation_defect(scheme, trivial_rep(g, 2)), ArgumentError);
}

TEST(Measurement, DecoupledSchemeFailsPrc) {
  const FiniteGroup g = cyclic_group(3);
  const POVM pvm = canonical_pvm(left_regular_rep(g));
  Operator e0 = Operator::Zero(3, 3);
  e0(0, 0) = 1.0;
  const MeasurementScheme scheme(Operator::Identity(9, 9), pvm, e0, {0, 1, 2}, pvm);
  const auto r = check_prc(scheme);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_deviation, 1.0, 1e-15);
}

TEST(Measurement, SchemeValidation) {
  const FiniteGroup g = cyclic_group(2);
  const POVM pvm = canonical_pvm(left_regular_rep(g));
  const Operator id4 = Operator::Identity(4, 4);
  Operator e0 = Operator::Zero(2, 2);
  e0(0, 0) = 1.0;
  EXPECT_THROW(MeasurementScheme(2.0 * id4, pvm, e0, {0, 1}, pvm), ArgumentError);
  EXPECT_THROW(MeasurementScheme(Operator::Identity(3, 3), pvm, e0, {0, 1}, pvm), ArgumentError);
  EXPECT_THROW(MeasurementScheme(id4, pvm, 2.0 * e0, {0, 1}, pvm), ArgumentError);
  EXPECT_THROW(MeasurementScheme(id4, pvm, e0, {0}, pvm), ArgumentError);
  EXPECT_THROW(MeasurementScheme(id4, pvm, e0, {0, 2}, pvm), ArgumentError);
  EXPECT_NO_THROW(MeasurementScheme(id4, pvm, e0, {0, 0}, pvm));
  EXPECT_THROW(MeasurementScheme(id4, pvm, e0, {0, 0}, pvm, true), ArgumentError);
  const MeasurementScheme coarse(id4, pvm, e0, {1, 1}, pvm);
  EXPECT_EQ(coarse.preimage(1), (std::vector<int>{0, 1}));
  EXPECT_TRUE(coarse.preimage(0).empty());
}

TEST(MeasurementProperty, RelativeOrientationReproducesTarget) {
  Rng rng(71);
  for (const auto& g : gen::suite_groups()) {
    const Frame pointer = ideal_frame(left_regular_rep(g));
    const Frame system = ideal_frame(left_right_rep(g));
    std::vector<Operator> states;
    for (int t = 0; t < 3; ++t) states.push_back(random_density(g.order(), rng));
    const auto r = rrc_relative_orientation(pointer, system, states);
    EXPECT_TRUE(r.pass) << r.max_deviation;
    EXPECT_LE(r.max_deviation, 1e-12);
  }
  const FiniteGroup g = cyclic_group(3);
  EXPECT_THROW(rrc_relative_orientation(coherent_system_frame(g), ideal_frame(left_regular_rep(g)),
                                        {Operator::Identity(3, 3) / 3.0}),
               UnsupportedFrameError);
}

TEST(Measurement, ConstantTargetIsReproducedWithoutCoupling) {
  const FiniteGroup g = cyclic_group(3);
  const POVM pvm = canonical_pvm(left_regular_rep(g));
  Rng rng(72);
  const Operator omega = random_density(3, rng);
  const RealVector mu = born(pvm, omega);
  std::vector<Operator> constant;
  for (int x = 0; x < 3; ++x) constant.push_back(mu(x) * Operator::Identity(3, 3));
  const MeasurementScheme scheme(Operator::Identity(9, 9), pvm, omega, {0, 1, 2},
                                 POVM(SampleSpace(g), constant));
  EXPECT_LE(check_prc(scheme).max_deviation, 1e-14);
}

TEST(MeasurementProperty, PerturbedPointerStateBreaksPrc) {
  for (const auto& g : gen::suite_groups()) {
    if (g.order() < 2) continue;
    const MeasurementScheme base = canonical_measurement_scheme(g);
    const int n = g.order();
    for (double eps : {1e-6, 1e-3, 0.1}) {
      const Operator omega = (1 - eps) * base.pointer_state() + eps * Operator::Identity(n, n) / n;
      const MeasurementScheme scheme(base.interaction(), base.pointer(), omega, base.outcome_map(),
                                     base.target());
      const auto r = check_prc(scheme);
      EXPECT_NEAR(r.max_deviation, eps * (1.0 - 1.0 / n), 1e-12);
      EXPECT_EQ(r.pass, r.max_deviation <= kDefaultTol);
    }
  }
}

TEST(MeasurementProperty, RrcImpliesPrc) {
  for (const auto& g : gen::suite_groups()) {
    const MeasurementScheme scheme = canonical_measurement_scheme(g);
    if (check_rrc(scheme, left_regular_rep(g)).pass) {
      EXPECT_TRUE(check_prc(scheme).pass);
    }
  }
}
