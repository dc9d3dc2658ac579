#include "vklbm/macrofd.hpp"

#include "vklbm/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace vklbm {

MacroHistory::MacroHistory(Grid grid, ModelKind kind, std::vector<Offset> channel_offsets,
                           double omega_hat, size_t capacity)
    : grid_(grid),
      kind_(kind),
      offsets_(std::move(channel_offsets)),
      omega_hat_(omega_hat),
      capacity_(capacity) {}

HistoryLevel MacroHistory::make_level(const LatticeModel& model, std::vector<double> u,
                                      double dt) {
  HistoryLevel lv;
  const size_t n = u.size();
  const size_t nc = model.channels().size();
  lv.plus.assign(nc, std::vector<double>(n));
  lv.minus.assign(nc, std::vector<double>(n));
  for (size_t c = 0; c < nc; ++c) {
    const ScalarFlux& g = model.channels()[c];
    for (size_t i = 0; i < n; ++i) {
      if (model.classical()) {
        lv.plus[c][i] = g(u[i]);
        lv.minus[c][i] = 0.0;
      } else {
        FluxSplit s = g.split(u[i]);
        lv.plus[c][i] = s.plus;
        lv.minus[c][i] = s.minus;
      }
    }
  }
  lv.u = std::move(u);
  lv.dt = dt;
  return lv;
}

void MacroHistory::push(HistoryLevel level) {
  if (level.u.size() != grid_.size()) throw InsufficientHistory("history level size mismatch");
  levels_.push_back(std::move(level));
  if (levels_.size() > capacity_ + 1) {
    levels_.pop_front();
    valid_ = false;
  }
}

void MacroHistory::clear() {
  levels_.clear();
  valid_ = true;
}

const HistoryLevel& MacroHistory::back(size_t k) const {
  if (levels_.empty() || k > depth()) throw InsufficientHistory("history too short");
  return levels_[levels_.size() - 1 - k];
}

namespace {

struct Stencil {
  const Grid& g;
  std::array<int, 3> c;
  size_t at(int s, const Offset& m) const {
    int idx[3];
    for (int a = 0; a < 3; ++a) {
      int v = c[a] + s * m[a];
      int n = g.n[a];
      v %= n;
      if (v < 0) v += n;
      idx[a] = v;
    }
    return g.index(idx[0], idx[1], idx[2]);
  }
};

void require_window(const MacroHistory& h, size_t k) {
  if (!h.window_valid())
    throw InsufficientHistory("history window no longer starts at equilibrium");
  if (k > h.depth()) throw InsufficientHistory("history too short");
}

}  // namespace

double underlying_update(const MacroHistory& h, size_t node, size_t k) {
  require_window(h, k);
  const HistoryLevel& lv = h.back(k);
  const Grid& g = h.grid();
  const int s = static_cast<int>(k + 1);
  Stencil st{g, g.coords(node)};
  const double r = lv.dt / g.dx;
  const Offset e1{1, 0, 0};

  if (h.kind() == ModelKind::D1Q2 || h.kind() == ModelKind::D1Q3) {
    size_t ip = st.at(s, e1);
    size_t im = st.at(-s, e1);
    const auto& G = lv.plus[0];
    double flux = r / 2 * (G[ip] - G[im]);
    if (h.kind() == ModelKind::D1Q2) return (lv.u[im] + lv.u[ip]) / 2 - flux;
    return (lv.u[im] + lv.u[node] + lv.u[ip]) / 3 - flux;
  }

  double v = lv.u[node];
  const auto& offs = h.channel_offsets();
  for (size_t c = 0; c < offs.size(); ++c) {
    const auto& P = lv.plus[c];
    const auto& M = lv.minus[c];
    double dp = P[node] - P[st.at(-s, offs[c])];
    double dm = M[st.at(s, offs[c])] - M[node];
    v -= r * (dp - dm);
  }
  return v;
}

std::vector<double> underlying_field(const MacroHistory& h, size_t k) {
  std::vector<double> out(h.grid().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = underlying_update(h, i, k);
  return out;
}

std::vector<double> multistep_weights(double omega_hat, size_t depth) {
  std::vector<double> w(depth + 1);
  double p = 1.0;
  for (size_t k = 0; k < depth; ++k) {
    w[k] = omega_hat * p;
    p *= 1.0 - omega_hat;
  }
  w[depth] = p;
  return w;
}

double multistep_reconstruct(const MacroHistory& h, size_t node) {
  const size_t n = h.depth();
  require_window(h, n);
  std::vector<double> w = multistep_weights(h.omega_hat(), n);
  double u = 0.0;
  for (size_t k = 0; k <= n; ++k) u += w[k] * underlying_update(h, node, k);
  return u;
}

std::vector<double> multistep_reconstruct(const MacroHistory& h) {
  const size_t n = h.depth();
  require_window(h, n);
  std::vector<double> w = multistep_weights(h.omega_hat(), n);
  std::vector<double> u(h.grid().size(), 0.0);
  for (size_t k = 0; k <= n; ++k) {
    std::vector<double> uk = underlying_field(h, k);
    for (size_t i = 0; i < u.size(); ++i) u[i] += w[k] * uk[i];
  }
  return u;
}

double consistency_residual(const MacroHistory& h, const ScalarFlux& flux, size_t node) {
  const Grid& g = h.grid();
  if (g.dims != 1) throw InsufficientHistory("consistency residual is defined on 1D histories");
  const HistoryLevel& lv = h.back(0);
  const int n = g.n[0];
  const int i = static_cast<int>(node);
  auto G = [&](int j) { return flux(lv.u[static_cast<size_t>(((j % n) + n) % n)]); };
  double dgdx = (-G(i + 2) + 8 * G(i + 1) - 8 * G(i - 1) + G(i - 2)) / (12 * g.dx);
  double next = multistep_reconstruct(h, node);
  return std::abs((next - lv.u[node]) / lv.dt + dgdx);
}

double max_consistency_residual(const MacroHistory& h, const ScalarFlux& flux) {
  double worst = 0.0;
  for (size_t i = 0; i < h.grid().size(); ++i)
    worst = std::max(worst, consistency_residual(h, flux, i));
  return worst;
}

TVBoundReport tv_bound_check(const MacroHistory& h, const std::vector<double>& reconstruction,
                             bool periodic) {
  const Grid& g = h.grid();
  const size_t n = h.depth();
  const double w = h.omega_hat();
  TVBoundReport rep;
  rep.tv_reconstruction = total_variation(reconstruction, g, periodic);
  for (size_t k = 0; k <= n; ++k)
    rep.max_tv_underlying =
        std::max(rep.max_tv_underlying, total_variation(underlying_field(h, k), g, periodic));
  double factor = 0.0;
  double p = 1.0;
  for (size_t k = 0; k < n; ++k) {
    factor += std::abs(w) * p;
    p *= std::abs(1.0 - w);
  }
  factor += p;
  rep.weighted_bound = factor * rep.max_tv_underlying;
  rep.tv_initial = total_variation(h.back(n).u, g, periodic);
  double slack = 1e-12 * std::max(1.0, rep.max_tv_underlying);
  rep.within_max = rep.tv_reconstruction <= rep.max_tv_underlying + slack;
  rep.within_weighted = rep.tv_reconstruction <= rep.weighted_bound + slack;
  return rep;
}

}  // namespace vklbm
