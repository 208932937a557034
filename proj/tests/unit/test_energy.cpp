#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "drp/energy.hpp"
#include "drp/error.hpp"
#include "drp/flight.hpp"
#include "support.hpp"

using namespace drp;

namespace {

PhaseCoefficients only(int index, double value) {
  PhaseCoefficients a{};
  a[index] = value;
  return a;
}

PhaseParams single_phase(const PhaseCoefficients& a, double beta, int phase) {
  PhaseParams p;
  for (auto& row : p.alpha) row = a;
  p.beta = beta;
  p.policy.kind = PhaseTimePolicy::Kind::Single;
  p.policy.single_phase = phase;
  return p;
}

}  // namespace

TEST_CASE("linear energy") {
  CHECK(linear_energy({1, 3}, 0.5, 2) == doctest::Approx(7));
  CHECK(linear_energy({1, 3}, 0.5, 0) == 0);
  CHECK(linear_energy({0, 4}, 123, 1) == doctest::Approx(4));
  LinearEnergy m({1, 3});
  CHECK(m.hover_power(2) == doctest::Approx(5));
  CHECK(m.time_proportional());
}

TEST_CASE("convex energy") {
  CHECK(convex_energy({1, 3}, 1, 1) == doctest::Approx(8));
  CHECK(convex_energy({1, 3}, 1, 0) == 0);
  ConvexEnergy m({1, 3});
  CHECK(m.hover_power(1) == doctest::Approx(8));
  // Second finite difference in w.
  const double h = 0.01;
  for (double w = 0; w < 5; w += 0.1) {
    const double d2 = m.arc_energy(w + h, 1) - 2 * m.arc_energy(w, 1) + m.arc_energy(w - h < 0 ? 0 : w - h, 1);
    if (w - h >= 0) CHECK(d2 >= -1e-12);
  }
}

TEST_CASE("shipped models are nondecreasing in payload and time") {
  std::vector<std::shared_ptr<const EnergyModel>> models{
      std::make_shared<LinearEnergy>(LinearParams{0.7, 2}),
      std::make_shared<ConvexEnergy>(ConvexParams{0.4, 1.5}),
      std::make_shared<PhaseEnergy>(builtin_phase_params())};
  for (const auto& m : models) {
    for (double t = 0; t <= 10; t += 2.5)
      for (double w = 0; w < 2; w += 0.1) {
        CHECK(m->arc_energy(w, t) >= 0);
        CHECK(m->arc_energy(w + 0.1, t) >= m->arc_energy(w, t) - 1e-12);
        CHECK(m->arc_energy(w, t + 1) >= m->arc_energy(w, t) - 1e-12);
      }
    CHECK(m->arc_energy(0.5, 0) == 0);
    for (double w = 0; w < 2; w += 0.1) CHECK(m->hover_power(w + 0.1) >= m->hover_power(w) - 1e-12);
  }
}

TEST_CASE("hover root has the closed form") {
  PhysicalParams hp;
  hp.v = 0;
  const PhaseCoefficients a = coefficients_from_physical(hp);
  for (double w = 0; w <= 3; w += 0.25) {
    const double beta = 2;
    const RootResult r = solve_induced_velocity(a, beta, w);
    const double expect = std::sqrt(a[7] * hp.g * (beta + w));
    CHECK(std::abs(r.x - expect) <= 1e-9 * expect);
    CHECK(r.residual <= 1e-10 * std::max(1.0, r.lhs));
    CHECK_FALSE(r.multiple_sign_changes);
  }
}

TEST_CASE("level-flight root agrees with a secant solve") {
  PhysicalParams lp;
  lp.v = 15;
  lp.area = 0.05;
  const PhaseCoefficients a = coefficients_from_physical(lp);
  const double beta = 2, w = 0.7;
  const double W = beta + w;
  const double lhs = a[7] * std::sqrt(a[2] + a[3] * W * W);
  const double k = (a[9] + a[10] * W) / std::sqrt(a[11] * W * W + a[12] + a[13] * W);
  auto h = [&](double x) { return x * std::sqrt(a[8] + x * x + x * k) - lhs; };
  double x0 = 0.1, x1 = 50;
  for (int i = 0; i < 200 && std::abs(x1 - x0) > 1e-15; ++i) {
    const double x2 = x1 - h(x1) * (x1 - x0) / (h(x1) - h(x0));
    x0 = x1;
    x1 = x2;
  }
  const RootResult r = solve_induced_velocity(a, beta, w);
  CHECK(r.x == doctest::Approx(x1).epsilon(1e-9));
  CHECK(r.residual <= 1e-10 * std::max(1.0, r.lhs));
}

TEST_CASE("root solver reports an unbracketed root") {
  PhaseCoefficients a{};
  a[7] = 1;
  a[3] = 1;
  a[8] = -1e300;  // keeps the right-hand side at zero for every bracket
  CHECK_THROWS_AS(solve_induced_velocity(a, 1, 0), RootError);
}

TEST_CASE("phase power isolates single terms") {
  const double beta = 1.5, w = 0.5, t = 3;
  CHECK(phase_energy(single_phase(only(6, 2.0), beta, 1), w, t) == doctest::Approx(t * 2.0 * (beta + w)));
  // Only the 3/2-power term left: the convex model with alpha_5 as alpha.
  const PhaseParams conv = single_phase(only(4, 0.8), beta, 1);
  CHECK(phase_energy(conv, w, t) == doctest::Approx(convex_energy({0.8, beta}, w, t)));
}

TEST_CASE("phase energy is additive over phases") {
  const PhaseParams p = builtin_phase_params();
  const double w = 0.4, t = 6;
  const auto times = p.policy.split(t);
  double sum = 0;
  for (double x : times) CHECK(x >= 0);
  CHECK(times[0] + times[1] + times[2] + times[3] == doctest::Approx(t));
  for (int i = 0; i < 4; ++i) {
    std::array<double, 4> one{0, 0, 0, 0};
    one[i] = times[i];
    sum += phase_energy(p, w, one);
  }
  CHECK(phase_energy(p, w, t) == doctest::Approx(sum).epsilon(1e-12));
  // A single-phase policy is t times that phase's power.
  PhaseParams single = p;
  single.policy.kind = PhaseTimePolicy::Kind::Single;
  single.policy.single_phase = 2;
  CHECK(phase_energy(single, w, t) == doctest::Approx(t * phase_power(p.alpha[2], p.beta, w)));
  CHECK(PhaseEnergy(p).hover_power(w) == doctest::Approx(phase_power(p.alpha[2], p.beta, w)));
}

TEST_CASE("phase table round trip") {
  const PhaseParams p = builtin_phase_params();
  std::stringstream ss;
  write_phase_table(ss, p);
  CHECK(read_phase_table(ss) == p);
  std::istringstream bad("ALPHA 1 1 2 3\n");
  CHECK_THROWS_AS(read_phase_table(bad), ParseError);
}

TEST_CASE("trip energy on the two-request instance") {
  const DeliveryContext ctx = make_context(test::t2(ObjectiveSetting::RE));
  CHECK(ctx.trip_energy({}) == 0);
  CHECK(ctx.trip_energy({1, 2}) == doctest::Approx(23));
  CHECK(ctx.trip_energy({2, 1}) == doctest::Approx(25));
  CHECK(trip_energy(ctx.model(), {1, 2}, ctx.instance(), ctx.tables()) == doctest::Approx(23));
  CHECK(trip_energy(ctx.model(), {2, 1}, ctx.instance(), ctx.tables()) == doctest::Approx(25));
}

TEST_CASE("trip energy never drops when a request is inserted") {
  // Exhaustive insertion checks on trips of up to four requests.
  for (auto kind : {EnergySpec::Kind::Linear, EnergySpec::Kind::Convex}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const DeliveryContext ctx = make_context(test::random_instance(5, seed, ObjectiveSetting::RE, kind));
      std::vector<int> ids{1, 2, 3, 4, 5};
      long checks = 0;
      for (int mask = 1; mask < 32; ++mask) {
        std::vector<int> trip;
        for (int r = 1; r <= 5; ++r)
          if (mask >> (r - 1) & 1) trip.push_back(r);
        if (trip.size() > 3) continue;
        std::sort(trip.begin(), trip.end());
        do {
          const double base = ctx.trip_energy(trip);
          for (int r = 1; r <= 5; ++r) {
            if (mask >> (r - 1) & 1) continue;
            for (size_t pos = 0; pos <= trip.size(); ++pos) {
              std::vector<int> longer = trip;
              longer.insert(longer.begin() + static_cast<long>(pos), r);
              CHECK(ctx.trip_energy(longer) >= base - 1e-9);
              ++checks;
            }
          }
        } while (std::next_permutation(trip.begin(), trip.end()));
      }
      CHECK(checks > 0);
    }
  }
}
