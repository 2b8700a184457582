#ifndef PERFECTCHAIN_DYNAMICS_HPP
#define PERFECTCHAIN_DYNAMICS_HPP

#include "perfectchain/chain.hpp"
#include "perfectchain/eigensolve.hpp"

#include <cstddef>
#include <vector>

namespace perfectchain {

/// Mass-weighted coordinates q_i = sqrt(M_i) u_i.
struct ChainState {
  double t = 0.0;
  std::vector<double> q;
  std::vector<double> qdot;
};

struct Trajectory {
  ChainDesign design;
  std::vector<ChainState> states;  // strictly increasing t
  double interval = 0.0;
};

/// Physical displacements u_i = q_i / sqrt(M_i).
std::vector<double> physical_displacements(const ChainDesign& d, const ChainState& s);

/// 1/2 sum M_i udot_i^2 + 1/2 sum K_i (u_{i+1} - u_i)^2.
double chain_energy(const ChainDesign& d, const ChainState& s);

/// Unit mass-weighted displacement of the first mass, everything else at rest.
ChainState pulse_initial_state(std::size_t n);

/// Exact normal-mode evolution.  The eigensystem of the dynamical matrix is
/// computed once; propagate() is random access in time.
class ModalPropagator {
 public:
  explicit ModalPropagator(const ChainDesign& d);

  ChainState propagate(const ChainState& initial, double t) const;

  const ChainDesign& design() const { return design_; }
  const EigenSystem& modes() const { return modes_; }
  /// omega_k = sqrt(lambda_k), with round-off negatives clamped to zero.
  const std::vector<double>& frequencies() const { return freq_; }

 private:
  ChainDesign design_;
  EigenSystem modes_;
  std::vector<double> freq_;
};

ChainState propagate_modes(const ChainDesign& d, const ChainState& initial, double t);

/// Largest admissible velocity-Verlet step, 1 / omega_max.
double verlet_step_bound(const ChainDesign& d);

/// Velocity-Verlet integration of M u'' = -K u.  The step is shrunk so an
/// integer number of steps lands on t_end; snapshots are taken every
/// snapshot_interval (default: endpoints only).
Trajectory integrate_verlet(const ChainDesign& d, const ChainState& initial, double t_end,
                            double dt, double snapshot_interval = 0.0);

struct MirrorReport {
  double fidelity = 0.0;       // <mirror(q0), q(t)> / (|q0| |q(t)|)
  double max_deviation = 0.0;  // max_i |q_i(t) - q_{n+1-i}(0)|
};

/// Requires zero initial velocities and a nonzero initial displacement.
MirrorReport mirror_fidelity(const ChainState& initial, const ChainState& final_state);

/// Modal snapshots at 0, interval, 2 interval, ..., t_end.  interval must
/// divide t_end; t_end == 0 yields the single initial snapshot.
Trajectory snapshot_series(const ChainDesign& d, const ChainState& initial, double t_end,
                           double interval);

}  // namespace perfectchain

#endif  // PERFECTCHAIN_DYNAMICS_HPP
