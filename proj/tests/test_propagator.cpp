#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pkick/propagator.hpp"

using namespace pkick;

namespace {

BathSpec default_bath() { return build_bath(1e7, 1e5, 201, 1e5); }

BathSpec decoupled_bath() {
  BathSpec bath = default_bath();
  bath.couplings.setZero();
  return bath;
}

}  // namespace

TEST_CASE("generator structure") {
  const BathSpec bath = build_bath(1e7, 1e5, 3, 1e5);
  const GeneratorMatrix free_gen = build_generator(bath, 0.0);
  CHECK(free_gen.dimension() == 4);
  CHECK(free_gen.entries(0, 0) == 0.0);
  CHECK(free_gen.entries(1, 1) == doctest::Approx(-1e5));
  CHECK(free_gen.entries(2, 2) == doctest::Approx(0.0));
  CHECK(free_gen.entries(3, 3) == doctest::Approx(1e5));
  for (int k = 1; k <= 3; ++k) {
    CHECK(free_gen.entries(0, k) == doctest::Approx(bath.couplings(k - 1)));
    CHECK(free_gen.entries(k, 0) == free_gen.entries(0, k));
  }
  CHECK(free_gen.entries(1, 2) == 0.0);
  CHECK(free_gen.entries(1, 3) == 0.0);

  const double shift = std::numbers::pi / 22.43e-9;
  const GeneratorMatrix kick_gen = build_generator(bath, shift);
  CHECK(kick_gen.entries(0, 0) == doctest::Approx(shift));
  CHECK((kick_gen.entries - kick_gen.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("segment unitary: identity at t = 0") {
  const GeneratorMatrix gen = build_generator(default_bath(), 0.0);
  const TransferMatrix u = segment_unitary(gen, 0.0);
  CHECK((u.entries - MatrixXcd::Identity(202, 202)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("decoupled kick is the parity operator on the system amplitude") {
  const KickSchedule schedule = make_schedule(157e-9, 1.0 / 7.0, 1);
  const GeneratorMatrix gen = build_generator(decoupled_bath(), schedule.frequency_shift);
  const TransferMatrix u = segment_unitary(gen, schedule.kick_duration);
  CHECK(std::abs(u.entries(0, 0) - Complex(-1.0, 0.0)) < 1e-12);
  for (int k = 1; k < u.dimension(); ++k) CHECK(std::abs(u.entries(0, k)) < 1e-14);
}

TEST_CASE("free segment reproduces the Markov amplitude decay at 1/gamma") {
  const BathSpec bath = default_bath();
  const TransferMatrix u = segment_unitary(build_generator(bath, 0.0), 1.0 / bath.gamma);
  CHECK(std::norm(u.entries(0, 0)) ==
        doctest::Approx(std::exp(-1.0)).epsilon(0.05));
}

TEST_CASE("unitarity and norm preservation over assorted durations") {
  const BathSpec bath = default_bath();
  const SpectralPropagator prop(build_generator(bath, 0.0));
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coin(-1.0, 1.0);
  for (double t : {0.0, 3.7e-8, 1e-6, 1.0 / bath.gamma}) {
    const TransferMatrix u = prop.evolve(t);
    CHECK(unitarity_defect(u) <= 1e-10);
    VectorXcd v(u.dimension());
    for (int i = 0; i < v.size(); ++i) v(i) = Complex(coin(rng), coin(rng));
    CHECK((u.entries * v).norm() == doctest::Approx(v.norm()).epsilon(1e-10));
  }
}

TEST_CASE("cycle matrix: unitary for the 157 ns cycle, both orders") {
  const BathSpec bath = default_bath();
  const KickSchedule schedule = make_schedule(157e-9, 1.0 / 7.0, 1);
  CHECK(unitarity_defect(cycle_matrix(bath, schedule, CycleOrder::FreeThenKick)) <= 1e-10);
  CHECK(unitarity_defect(cycle_matrix(bath, schedule, CycleOrder::KickThenFree)) <= 1e-10);
}

TEST_CASE("cycle matrix rejects broken schedules") {
  const BathSpec bath = build_bath(1e7, 1e5, 3, 1e5);
  KickSchedule schedule = make_schedule(157e-9, 1.0 / 7.0, 1);
  schedule.frequency_shift *= 1.01;  // parity condition broken
  CHECK_THROWS(cycle_matrix(bath, schedule));
  schedule = make_schedule(157e-9, 1.0 / 7.0, 1);
  schedule.kick_duration = schedule.cycle_time;  // no free segment left
  CHECK_THROWS(cycle_matrix(bath, schedule));
}

TEST_CASE("decoupled limit: N cycles give C00 = (-1)^N, C0k = 0") {
  const BathSpec bath = decoupled_bath();
  const KickSchedule schedule = make_schedule(157e-9, 1.0 / 7.0, 7);
  const TransferMatrix cycle = cycle_matrix(bath, schedule);
  const auto rows = stroboscopic_rows(cycle, 7);
  REQUIRE(rows.size() == 8);
  for (int n = 0; n <= 7; ++n) {
    const double expected = (n % 2 == 0) ? 1.0 : -1.0;
    CHECK(std::abs(rows[n].entries(0) - Complex(expected, 0.0)) < 1e-12);
    CHECK(rows[n].entries.tail(201).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("stroboscopic rows: identity cycle and unit norms") {
  TransferMatrix identity;
  identity.entries = MatrixXcd::Identity(5, 5);
  identity.elapsed = 1.0;
  const auto rows = stroboscopic_rows(identity, 5);
  REQUIRE(rows.size() == 6);
  for (const AmplitudeRow& row : rows) {
    CHECK(std::abs(row.entries(0) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(row.entries.tail(4).cwiseAbs().maxCoeff() == 0.0);
  }

  const BathSpec bath = default_bath();
  const KickSchedule schedule = make_schedule(157e-9, 1.0 / 7.0, 63);
  const auto kicked = stroboscopic_rows(cycle_matrix(bath, schedule), 63);
  for (const AmplitudeRow& row : kicked)
    CHECK(row.entries.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("free evolution rows") {
  const BathSpec bath = default_bath();
  const auto rows = free_evolution_rows(bath, {0.0, 1e-6, 1.0 / bath.gamma});
  CHECK(std::abs(rows[0].entries(0) - Complex(1.0, 0.0)) < 1e-14);
  for (const AmplitudeRow& row : rows)
    CHECK(row.entries.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::norm(rows[2].entries(0)) == doctest::Approx(std::exp(-1.0)).epsilon(0.05));
  CHECK_THROWS(free_evolution_rows(bath, {-1.0}));
}

TEST_CASE("free rows match the free segment unitary row") {
  const BathSpec bath = build_bath(1e7, 1e5, 11, 2e6);
  const GeneratorMatrix gen = build_generator(bath, 0.0);
  const double t = 3e-6;
  const TransferMatrix u = segment_unitary(gen, t);
  const SpectralPropagator prop(gen);
  const VectorXcd row = prop.system_row(t);
  for (int j = 0; j < u.dimension(); ++j)
    CHECK(std::abs(row(j) - u.entries(0, j)) < 1e-12);
}

TEST_CASE("validity horizon") {
  const BathSpec bath = default_bath();
  CHECK(validity_horizon(bath) == doctest::Approx(std::numbers::pi / 1e5));
}
