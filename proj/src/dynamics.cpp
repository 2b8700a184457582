#include "perfectchain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace perfectchain {

namespace {

void require_state(const ChainDesign& d, const ChainState& s) {
  if (s.q.size() != d.n || s.qdot.size() != d.n)
    throw std::domain_error("chain state length does not match the design");
}

}  // namespace

std::vector<double> physical_displacements(const ChainDesign& d, const ChainState& s) {
  require_state(d, s);
  std::vector<double> u(d.n);
  for (std::size_t i = 0; i < d.n; ++i) u[i] = s.q[i] / std::sqrt(d.masses[i]);
  return u;
}

double chain_energy(const ChainDesign& d, const ChainState& s) {
  require_state(d, s);
  // 1/2 M udot^2 == 1/2 qdot^2 in mass-weighted coordinates.
  double kinetic = 0.0;
  for (double v : s.qdot) kinetic += v * v;
  const auto u = physical_displacements(d, s);
  double potential = 0.0;
  for (std::size_t i = 0; i + 1 < d.n; ++i) {
    const double stretch = u[i + 1] - u[i];
    potential += d.springs[i] * stretch * stretch;
  }
  return 0.5 * (kinetic + potential);
}

ChainState pulse_initial_state(std::size_t n) {
  if (n == 0) throw std::domain_error("pulse_initial_state: n must be positive");
  ChainState s;
  s.q.assign(n, 0.0);
  s.qdot.assign(n, 0.0);
  s.q[0] = 1.0;
  return s;
}

ModalPropagator::ModalPropagator(const ChainDesign& d)
    : design_(d), modes_(eigensystem(dynamical_matrix(d))) {
  freq_.reserve(modes_.eigenvalues.size());
  for (double lambda : modes_.eigenvalues) freq_.push_back(lambda > 0.0 ? std::sqrt(lambda) : 0.0);
}

ChainState ModalPropagator::propagate(const ChainState& initial, double t) const {
  require_state(design_, initial);
  const std::size_t n = design_.n;
  ChainState out;
  out.t = initial.t + t;
  out.q.assign(n, 0.0);
  out.qdot.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = modes_.column(k);
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c += v[i] * initial.q[i];
      s += v[i] * initial.qdot[i];
    }
    const double w = freq_[k];
    double pos, vel;
    if (w == 0.0) {
      // cos -> 1, sin(wt)/w -> t: free drift of the translation mode.
      pos = c + s * t;
      vel = s;
    } else {
      const double cw = std::cos(w * t), sw = std::sin(w * t);
      pos = c * cw + s * sw / w;
      vel = -c * w * sw + s * cw;
    }
    for (std::size_t i = 0; i < n; ++i) {
      out.q[i] += pos * v[i];
      out.qdot[i] += vel * v[i];
    }
  }
  return out;
}

ChainState propagate_modes(const ChainDesign& d, const ChainState& initial, double t) {
  if (t == 0.0) return initial;
  return ModalPropagator(d).propagate(initial, t);
}

double verlet_step_bound(const ChainDesign& d) {
  const auto lambda = eigenvalues_ql(dynamical_matrix(d));
  const double wmax = std::sqrt(std::max(lambda.back(), 0.0));
  if (wmax == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * 2.0 / wmax;
}

Trajectory integrate_verlet(const ChainDesign& d, const ChainState& initial, double t_end,
                            double dt, double snapshot_interval) {
  require_state(d, initial);
  if (!(dt > 0.0)) throw std::domain_error("integrate_verlet: dt must be positive");
  if (!(t_end >= 0.0)) throw std::domain_error("integrate_verlet: t_end must be nonnegative");
  const double bound = verlet_step_bound(d);
  if (dt >= bound) {
    std::ostringstream os;
    os << "integrate_verlet: dt = " << dt << " violates the stability bound " << bound;
    throw std::domain_error(os.str());
  }

  Trajectory traj;
  traj.design = d;
  traj.states.push_back(initial);
  if (t_end == 0.0) return traj;

  if (snapshot_interval <= 0.0) snapshot_interval = t_end;
  const auto snapshots = static_cast<std::size_t>(std::llround(t_end / snapshot_interval));
  if (snapshots == 0 ||
      std::abs(static_cast<double>(snapshots) * snapshot_interval - t_end) > 1e-9 * t_end)
    throw std::domain_error("integrate_verlet: snapshot interval must divide t_end");
  traj.interval = snapshot_interval;
  const auto per_snapshot = static_cast<std::size_t>(std::ceil(snapshot_interval / dt - 1e-9));
  const double h = t_end / static_cast<double>(snapshots * per_snapshot);

  const std::size_t n = d.n;
  std::vector<double> u(n), v(n), acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double root = std::sqrt(d.masses[i]);
    u[i] = initial.q[i] / root;
    v[i] = initial.qdot[i] / root;
  }
  auto accel = [&](const std::vector<double>& x, std::vector<double>& a) {
    std::fill(a.begin(), a.end(), 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double f = d.springs[i] * (x[i + 1] - x[i]);
      a[i] += f;
      a[i + 1] -= f;
    }
    for (std::size_t i = 0; i < n; ++i) a[i] /= d.masses[i];
  };

  accel(u, acc);
  for (std::size_t s = 1; s <= snapshots; ++s) {
    for (std::size_t step = 0; step < per_snapshot; ++step) {
      for (std::size_t i = 0; i < n; ++i) {
        v[i] += 0.5 * h * acc[i];
        u[i] += h * v[i];
      }
      accel(u, acc);
      for (std::size_t i = 0; i < n; ++i) v[i] += 0.5 * h * acc[i];
    }
    ChainState st;
    st.t = initial.t + static_cast<double>(s) * snapshot_interval;
    st.q.resize(n);
    st.qdot.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double root = std::sqrt(d.masses[i]);
      st.q[i] = u[i] * root;
      st.qdot[i] = v[i] * root;
    }
    traj.states.push_back(std::move(st));
  }
  return traj;
}

MirrorReport mirror_fidelity(const ChainState& initial, const ChainState& final_state) {
  const std::size_t n = initial.q.size();
  if (final_state.q.size() != n || initial.qdot.size() != n)
    throw std::domain_error("mirror_fidelity: state lengths differ");
  for (double v : initial.qdot)
    if (v != 0.0)
      throw std::domain_error(
          "mirror_fidelity: initial velocities must vanish for the mirror identity to apply");
  double dot = 0.0, n0 = 0.0, n1 = 0.0;
  MirrorReport r;
  for (std::size_t i = 0; i < n; ++i) {
    const double mirrored = initial.q[n - 1 - i];
    dot += mirrored * final_state.q[i];
    n0 += mirrored * mirrored;
    n1 += final_state.q[i] * final_state.q[i];
    r.max_deviation = std::max(r.max_deviation, std::abs(final_state.q[i] - mirrored));
  }
  if (n0 == 0.0) throw std::domain_error("mirror_fidelity: zero initial displacement");
  if (n1 == 0.0) throw std::domain_error("mirror_fidelity: zero final displacement");
  r.fidelity = dot / std::sqrt(n0 * n1);
  return r;
}

Trajectory snapshot_series(const ChainDesign& d, const ChainState& initial, double t_end,
                           double interval) {
  require_state(d, initial);
  if (!(t_end >= 0.0)) throw std::domain_error("snapshot_series: t_end must be nonnegative");
  Trajectory traj;
  traj.design = d;
  traj.interval = interval;
  traj.states.push_back(initial);
  if (t_end == 0.0) return traj;
  if (!(interval > 0.0)) throw std::domain_error("snapshot_series: interval must be positive");
  const auto count = static_cast<std::size_t>(std::llround(t_end / interval));
  if (count == 0 || std::abs(static_cast<double>(count) * interval - t_end) > 1e-9 * t_end)
    throw std::domain_error("snapshot_series: interval must divide t_end");

  const ModalPropagator prop(d);
  for (std::size_t s = 1; s <= count; ++s)
    traj.states.push_back(prop.propagate(initial, static_cast<double>(s) * interval));
  return traj;
}

}  // namespace perfectchain
