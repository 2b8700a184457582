#include "perfectchain/chain.hpp"
#include "perfectchain/dynamics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using namespace perfectchain;

namespace {

constexpr double kPi = std::numbers::pi;

ChainDesign perfect(std::size_t n) { return design_chain(n, default_first_mass(n), default_omega(n)); }

ChainDesign uniform(std::size_t n) {
  ChainDesign d;
  d.n = n;
  d.masses.assign(n, 1.0);
  d.springs.assign(n - 1, 1.0);
  d.omega = 1.0;
  return d;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> mirrored(const std::vector<double>& v) { return {v.rbegin(), v.rend()}; }

ChainState random_state(std::mt19937_64& rng, std::size_t n, bool with_velocity) {
  std::normal_distribution<double> g;
  ChainState s;
  s.q.resize(n);
  s.qdot.assign(n, 0.0);
  for (auto& x : s.q) x = g(rng);
  if (with_velocity)
    for (auto& x : s.qdot) x = 0.1 * g(rng);
  return s;
}

// Participation-ratio width of a displacement profile.
double width(const std::vector<double>& q) {
  double s2 = 0.0, s4 = 0.0;
  for (double x : q) {
    s2 += x * x;
    s4 += x * x * x * x;
  }
  return s2 * s2 / s4;
}

}  // namespace

TEST_CASE("propagate_modes: t = 0 is the identity") {
  std::mt19937_64 rng(3);
  const auto d = perfect(9);
  const auto s = random_state(rng, 9, true);
  const auto out = propagate_modes(d, s, 0.0);
  CHECK(out.q == s.q);
  CHECK(out.qdot == s.qdot);
  const ModalPropagator prop(d);
  CHECK(max_diff(prop.propagate(s, 0.0).q, s.q) < 1e-13);
}

TEST_CASE("propagate_modes: unit pulse arrives mirrored at t* and returns at 2 t*") {
  for (std::size_t n : {2u, 3u, 5u, 21u, 51u}) {
    const auto d = perfect(n);
    const double t_star = kPi / d.omega;
    const auto q0 = pulse_initial_state(n);
    const ModalPropagator prop(d);
    const auto half = prop.propagate(q0, t_star);
    REQUIRE(max_diff(half.q, mirrored(q0.q)) <= 1e-8);
    const auto full = prop.propagate(q0, 2.0 * t_star);
    REQUIRE(max_diff(full.q, q0.q) <= 1e-8);
    REQUIRE(max_diff(full.qdot, q0.qdot) <= 1e-8);
  }
}

TEST_CASE("periodicity for arbitrary zero-velocity data, n in {5, 21, 51}") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {5u, 21u, 51u}) {
    const auto d = perfect(n);
    const ModalPropagator prop(d);
    for (int t = 0; t < 5; ++t) {
      const auto s = random_state(rng, n, false);
      REQUIRE(max_diff(prop.propagate(s, 2.0 * kPi / d.omega).q, s.q) <= 1e-8);
    }
  }
}

TEST_CASE("mirror identity on every basis vector, n <= 51") {
  for (std::size_t n = 2; n <= 51; n += (n < 12 ? 1 : 13)) {
    const auto d = perfect(n);
    const ModalPropagator prop(d);
    for (std::size_t j = 0; j < n; ++j) {
      ChainState s;
      s.q.assign(n, 0.0);
      s.qdot.assign(n, 0.0);
      s.q[j] = 1.0;
      const auto r = mirror_fidelity(s, prop.propagate(s, kPi / d.omega));
      REQUIRE(std::abs(1.0 - r.fidelity) <= 1e-10);
    }
  }
}

TEST_CASE("zero mode drifts uniformly with nonzero total momentum") {
  const auto d = perfect(4);
  ChainState s;
  s.q.assign(4, 0.0);
  s.qdot.resize(4);
  for (std::size_t i = 0; i < 4; ++i) s.qdot[i] = std::sqrt(d.masses[i]);  // u' = 1 everywhere
  const double t = 3.7;
  const auto out = propagate_modes(d, s, t);
  const auto u = physical_displacements(d, out);
  for (double x : u) CHECK(x == doctest::Approx(t).epsilon(1e-10));
}

TEST_CASE("modal propagation conserves energy to 1e-10") {
  std::mt19937_64 rng(23);
  for (std::size_t n : {3u, 17u, 51u}) {
    const auto d = perfect(n);
    const ModalPropagator prop(d);
    const auto s = random_state(rng, n, true);
    const double e0 = chain_energy(d, s);
    for (double t : {0.3, 5.0, 77.7}) REQUIRE(std::abs(chain_energy(d, prop.propagate(s, t)) - e0) <= 1e-10 * e0);
  }
}

TEST_CASE("mode frequencies are integer multiples of the spacing, n <= 200") {
  for (std::size_t n : {2u, 3u, 10u, 51u, 101u, 200u}) {
    const ModalPropagator prop(perfect(n));
    const auto& w = prop.frequencies();
    CHECK(w[0] == doctest::Approx(0.0));
    for (std::size_t k = 1; k < n; ++k) REQUIRE(std::abs(w[k] / w[1] - double(k)) <= 1e-9 * double(k));
  }
}

TEST_CASE("mirror_fidelity: examples and errors") {
  const auto d2 = perfect(2);
  const auto q0 = pulse_initial_state(2);
  CHECK(mirror_fidelity(q0, propagate_modes(d2, q0, kPi / d2.omega)).fidelity == doctest::Approx(1.0).epsilon(1e-12));

  const auto d51 = perfect(51);
  const auto p = pulse_initial_state(51);
  CHECK(std::abs(1.0 - mirror_fidelity(p, propagate_modes(d51, p, 50.0)).fidelity) <= 1e-10);

  const auto u = uniform(51);
  CHECK(mirror_fidelity(p, propagate_modes(u, p, 50.0)).fidelity < 0.99);

  ChainState zero{0.0, std::vector<double>(3, 0.0), std::vector<double>(3, 0.0)};
  CHECK_THROWS_AS(mirror_fidelity(zero, pulse_initial_state(3)), std::domain_error);
  CHECK_THROWS_AS(mirror_fidelity(pulse_initial_state(3), zero), std::domain_error);
  auto moving = pulse_initial_state(3);
  moving.qdot[1] = 0.5;
  CHECK_THROWS_AS(mirror_fidelity(moving, pulse_initial_state(3)), std::domain_error);
  CHECK_THROWS_AS(mirror_fidelity(pulse_initial_state(3), pulse_initial_state(4)), std::domain_error);
}

TEST_CASE("integrate_verlet: two-mass stretch oscillates at omega") {
  const double omega = 0.8;
  const auto d = design_chain(2, 1.5, omega);
  ChainState s;
  s.q = {std::sqrt(1.5) * 0.5, -std::sqrt(1.5) * 0.5};
  s.qdot = {0.0, 0.0};
  const double period = 2.0 * kPi / omega;
  for (double dt : {1e-2, 5e-3}) {
    const auto traj = integrate_verlet(d, s, period, dt, period / 4.0);
    REQUIRE(traj.states.size() == 5);
    // Quarter period: displacement passes through zero; full period: back.
    CHECK(std::abs(traj.states[1].q[0]) < 2.0 * dt * dt);
    CHECK(max_diff(traj.states[4].q, s.q) < 2.0 * dt * dt);
    CHECK(max_diff(traj.states[2].q, mirrored(s.q)) < 2.0 * dt * dt);
  }
}

TEST_CASE("integrate_verlet: n = 51 pulse mirrors within 1e-4 at dt = 1e-3") {
  const auto d = perfect(51);
  const auto q0 = pulse_initial_state(51);
  const auto traj = integrate_verlet(d, q0, 50.0, 1e-3);
  REQUIRE(traj.states.size() == 2);
  CHECK(max_diff(traj.states.back().q, mirrored(q0.q)) <= 1e-4);
  CHECK(traj.states.back().t == doctest::Approx(50.0));
}

TEST_CASE("integrate_verlet: zero state stays zero; bad steps are rejected") {
  const auto d = perfect(7);
  ChainState zero{0.0, std::vector<double>(7, 0.0), std::vector<double>(7, 0.0)};
  const auto traj = integrate_verlet(d, zero, 6.0, 1e-2, 1.0);
  REQUIRE(traj.states.size() == 7);
  for (const auto& s : traj.states) {
    for (double x : s.q) REQUIRE(x == 0.0);
    for (double x : s.qdot) REQUIRE(x == 0.0);
  }
  const double bound = verlet_step_bound(d);
  CHECK(bound == doctest::Approx(1.0 / (d.omega * 6.0)).epsilon(1e-9));
  CHECK_THROWS_AS(integrate_verlet(d, zero, 1.0, bound * 1.01), std::domain_error);
  CHECK_THROWS_AS(integrate_verlet(d, zero, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(integrate_verlet(d, zero, 1.0, 1e-2, 0.3), std::domain_error);
  CHECK(integrate_verlet(d, zero, 0.0, 1e-2).states.size() == 1);
}

TEST_CASE("Verlet converges to the modal solution at second order, n <= 31") {
  std::mt19937_64 rng(31);
  for (std::size_t n : {4u, 13u, 31u}) {
    const auto d = perfect(n);
    const ModalPropagator prop(d);
    const double period = 2.0 * kPi / d.omega;
    const auto s = random_state(rng, n, true);
    const auto exact = prop.propagate(s, period);
    double err[2];
    const double steps[2] = {2e-2, 1e-2};
    for (int k = 0; k < 2; ++k) {
      const auto traj = integrate_verlet(d, s, period, steps[k]);
      err[k] = std::max(max_diff(traj.states.back().q, exact.q), max_diff(traj.states.back().qdot, exact.qdot));
    }
    // Halving dt cuts the error by ~4; allow slack for the step adjustment.
    CHECK(err[1] < err[0] / 3.0);
    // Measured constant: about 1.2e2 for unit-variance random data.
    CHECK(err[1] / (steps[1] * steps[1]) < 250.0);
  }
}

TEST_CASE("Verlet vs modal and energy drift at n = 51, dt = 1e-3, one period") {
  const auto d = perfect(51);
  const auto q0 = pulse_initial_state(51);
  const double period = 2.0 * kPi / d.omega;
  const auto traj = integrate_verlet(d, q0, period, 1e-3, period / 10.0);
  const ModalPropagator prop(d);
  const double e0 = chain_energy(d, q0);
  for (const auto& st : traj.states) {
    const auto ref = prop.propagate(q0, st.t);
    REQUIRE(max_diff(st.q, ref.q) <= 1e-4);
    REQUIRE(std::abs(chain_energy(d, st) - e0) <= 1e-6 * e0);
  }
}

TEST_CASE("snapshot_series: n = 51 and n = 201 pulse runs") {
  const auto d51 = perfect(51);
  const auto q0 = pulse_initial_state(51);
  const auto traj = snapshot_series(d51, q0, 50.0, 5.0);
  REQUIRE(traj.states.size() == 11);
  for (std::size_t k = 0; k < 11; ++k) CHECK(traj.states[k].t == doctest::Approx(5.0 * double(k)));
  CHECK(max_diff(traj.states.back().q, mirrored(q0.q)) <= 1e-8);
  // The pulse spreads on the way in and refocuses on the way out.
  std::vector<double> w;
  for (const auto& s : traj.states) w.push_back(width(s.q));
  const auto widest = std::max_element(w.begin(), w.end()) - w.begin();
  CHECK(widest >= 4);
  CHECK(widest <= 6);
  CHECK(w[5] > 3.0 * w[1]);

  const auto ends = snapshot_series(d51, q0, 50.0, 50.0);
  CHECK(ends.states.size() == 2);
  CHECK(snapshot_series(d51, q0, 0.0, 5.0).states.size() == 1);
  CHECK_THROWS_AS(snapshot_series(d51, q0, 50.0, 7.0), std::domain_error);

  const auto d201 = perfect(201);
  const auto p201 = pulse_initial_state(201);
  const auto big = snapshot_series(d201, p201, 200.0, 20.0);
  REQUIRE(big.states.size() == 11);
  CHECK(max_diff(big.states.back().q, mirrored(p201.q)) <= 1e-8);
}

TEST_CASE("physical displacements divide by sqrt(M)") {
  const auto d = design_chain(3, 4.0, 1.0);
  ChainState s{0.0, {2.0, 1.0, 2.0}, {0.0, 0.0, 0.0}};
  const auto u = physical_displacements(d, s);
  CHECK(u[0] == doctest::Approx(1.0));
  CHECK(u[1] == doctest::Approx(1.0 / std::sqrt(d.masses[1])));
  ChainState bad{0.0, {1.0}, {0.0}};
  CHECK_THROWS_AS(physical_displacements(d, bad), std::domain_error);
  CHECK_THROWS_AS(pulse_initial_state(0), std::domain_error);
}
