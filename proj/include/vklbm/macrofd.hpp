#pragma once

#include "vklbm/grid.hpp"
#include "vklbm/lattice.hpp"

#include <deque>
#include <stdexcept>
#include <vector>

namespace vklbm {

class InsufficientHistory : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Macroscopic data of one time level: U, the split channel fluxes and the
// step size used to leave this level. Classical models keep G in `plus`.
struct HistoryLevel {
  std::vector<double> u;
  std::vector<std::vector<double>> plus;
  std::vector<std::vector<double>> minus;
  double dt = 0.0;
};

class MacroHistory {
 public:
  MacroHistory(Grid grid, ModelKind kind, std::vector<Offset> channel_offsets,
               double omega_hat, size_t capacity = 64);

  // Builds the level from U using the model's channel splits.
  static HistoryLevel make_level(const LatticeModel& model, std::vector<double> u, double dt);

  void push(HistoryLevel level);
  void clear();

  // N: number of stored steps before the newest level.
  size_t depth() const { return levels_.empty() ? 0 : levels_.size() - 1; }
  size_t capacity() const { return capacity_; }
  // False once levels were dropped past the capacity.
  bool window_valid() const { return valid_; }
  // k = 0 is level n (newest), k is level n - k.
  const HistoryLevel& back(size_t k) const;

  const Grid& grid() const { return grid_; }
  ModelKind kind() const { return kind_; }
  const std::vector<Offset>& channel_offsets() const { return offsets_; }
  double omega_hat() const { return omega_hat_; }
  void set_omega_hat(double w) { omega_hat_ = w; }

 private:
  Grid grid_;
  ModelKind kind_;
  std::vector<Offset> offsets_;
  double omega_hat_;
  size_t capacity_;
  bool valid_ = true;
  std::deque<HistoryLevel> levels_;
};

// Underlying difference update 𝒰_{i,(k+1)} built from level n-k with stencil
// offsets scaled by k+1. All axes wrap periodically.
double underlying_update(const MacroHistory& h, size_t node, size_t k);
std::vector<double> underlying_field(const MacroHistory& h, size_t k);

// U_i^{n+1} from the weighted combination of underlying updates.
double multistep_reconstruct(const MacroHistory& h, size_t node);
std::vector<double> multistep_reconstruct(const MacroHistory& h);

// Weights w_k for k = 0..N, summing to one.
std::vector<double> multistep_weights(double omega_hat, size_t depth);

// |(U^{n+1} - U^n)/dt + dG/dx| at a node of a 1D history, the space
// derivative from fourth-order centred differences of G(U^n).
double consistency_residual(const MacroHistory& h, const ScalarFlux& flux, size_t node);
double max_consistency_residual(const MacroHistory& h, const ScalarFlux& flux);

struct TVBoundReport {
  double tv_reconstruction = 0.0;
  double max_tv_underlying = 0.0;
  double weighted_bound = 0.0;  // (|w| sum |1-w|^k + |1-w|^N) * max TV
  double tv_initial = 0.0;      // TV of the oldest stored level
  bool within_max = true;       // tv_reconstruction <= max_tv_underlying
  bool within_weighted = true;
};

TVBoundReport tv_bound_check(const MacroHistory& h, const std::vector<double>& reconstruction,
                             bool periodic = true);

}  // namespace vklbm
