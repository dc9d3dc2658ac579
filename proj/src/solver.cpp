#include "vklbm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vklbm {

double RelaxationMode::effective() const {
  if (!(omega > 0.0)) throw ConfigError("relaxation omega must be positive");
  if (kind == Kind::SemiImplicit) return omega / (1.0 + omega);
  if (!(omega < 2.0)) throw ConfigError("explicit relaxation requires 0 < omega < 2");
  return omega;
}

void collide(std::span<const double> f, std::span<const double> feq, double omega_hat,
             std::span<const double> r, double dt, std::span<double> out) {
  if (!(omega_hat > 0.0 && omega_hat < 2.0))
    throw ConfigError("relaxation factor outside (0,2)");
  const double a = 1.0 - omega_hat;
  if (r.empty()) {
    for (size_t i = 0; i < f.size(); ++i) out[i] = a * f[i] + omega_hat * feq[i];
  } else {
    for (size_t i = 0; i < f.size(); ++i)
      out[i] = a * f[i] + omega_hat * feq[i] + dt / 2 * r[i];
  }
}

void collide(std::span<const double> f, std::span<const double> feq,
             const RelaxationMode& mode, std::span<const double> r, double dt,
             std::span<double> out) {
  collide(f, feq, mode.effective(), r, dt, out);
}

size_t stream(std::span<const double> fstar, const VelocitySet& vs, const Grid& grid,
              const BoundarySpec& bc, std::span<double> out) {
  const size_t n = grid.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  size_t unresolved = 0;
  bool per[3] = {true, true, true};
  for (int a = 0; a < grid.dims; ++a) per[a] = bc.periodic(a);
  for (int q = 0; q < vs.q; ++q) {
    const Offset& m = vs.offsets[q];
    const double* src = fstar.data() + q * n;
    double* dst = out.data() + q * n;
    if (m[0] == 0 && m[1] == 0 && m[2] == 0) {
      std::copy(src, src + n, dst);
      continue;
    }
    for (int k = 0; k < grid.n[2]; ++k) {
      int sk = k - m[2];
      bool okk = true;
      if (sk < 0 || sk >= grid.n[2]) {
        if (per[2]) sk = (sk + grid.n[2]) % grid.n[2];
        else okk = false;
      }
      for (int j = 0; j < grid.n[1]; ++j) {
        int sj = j - m[1];
        bool okj = okk;
        if (sj < 0 || sj >= grid.n[1]) {
          if (per[1]) sj = (sj + grid.n[1]) % grid.n[1];
          else okj = false;
        }
        size_t row = grid.index(0, j, k);
        size_t srow = okj ? grid.index(0, sj, sk) : 0;
        for (int i = 0; i < grid.n[0]; ++i) {
          int si = i - m[0];
          bool ok = okj;
          if (si < 0 || si >= grid.n[0]) {
            if (per[0]) si = (si + grid.n[0]) % grid.n[0];
            else ok = false;
          }
          if (ok) {
            dst[row + i] = src[srow + si];
          } else {
            dst[row + i] = nan;
            ++unresolved;
          }
        }
      }
    }
  }
  return unresolved;
}

void moments(std::span<const double> f, int q, std::span<double> u) {
  const size_t n = u.size();
  for (size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int p = 0; p < q; ++p) s += f[p * n + i];
    u[i] = s;
  }
}

std::vector<double> moments(std::span<const double> f, int q, size_t nodes) {
  std::vector<double> u(nodes);
  moments(f, q, u);
  return u;
}

NewtonResult newton_moment_solve(double f_sum, const ScalarFn& s, const ScalarFn& ds,
                                 double dt, double u_guess, double lo, double hi,
                                 double tol, int max_iter) {
  auto g = [&](double u) { return u - dt / 2 * s(u) - f_sum; };
  NewtonResult res;
  double u = u_guess;
  for (int it = 0; it <= max_iter; ++it) {
    double r = g(u);
    res.iterations = it;
    if (std::abs(r) <= tol) {
      res.u = u;
      res.residual = std::abs(r);
      res.converged = true;
      return res;
    }
    if (it == max_iter) break;
    double d = 1.0 - dt / 2 * ds(u);
    if (d == 0.0 || !std::isfinite(d)) break;
    double next = u - r / d;
    if (!std::isfinite(next) || next == u) break;
    u = next;
  }

  res.bisected = true;
  double glo = g(lo);
  double ghi = g(hi);
  if (!(glo <= 0.0 && ghi >= 0.0) && !(glo >= 0.0 && ghi <= 0.0)) {
    res.u = u;
    res.residual = std::abs(g(u));
    return res;
  }
  bool rising = glo < ghi;
  for (int it = 0; it < 2000; ++it) {
    double mid = lo + (hi - lo) / 2;
    double gm = g(mid);
    if (std::abs(gm) <= tol || mid == lo || mid == hi) {
      res.u = mid;
      res.residual = std::abs(gm);
      res.converged = true;
      return res;
    }
    if ((gm < 0.0) == rising) lo = mid;
    else hi = mid;
  }
  res.u = lo + (hi - lo) / 2;
  res.residual = std::abs(g(res.u));
  return res;
}

double newton_moment_solve(double f_sum, const ScalarFn& s, const ScalarFn& ds, double dt,
                           double u_guess) {
  double lo = std::min(u_guess, f_sum) - 1.0;
  double hi = std::max(u_guess, f_sum) + 1.0;
  NewtonResult r = newton_moment_solve(f_sum, s, ds, dt, u_guess, lo, hi);
  if (!r.converged) throw SolverError("moment solve did not converge", -1, -1);
  return r.u;
}

double select_timestep(const Grid& grid, double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("lattice speed must be positive");
  return grid.dx / lambda;
}

// ---------------------------------------------------------------------------

Solver::Solver(Grid grid, LatticeModel model, RelaxationMode mode, BoundarySpec bc,
               std::vector<double> u0, SolverOptions opt, std::optional<SourceTerm> source)
    : model_(std::move(model)),
      mode_(mode),
      omega_hat_(mode.effective()),
      bc_(std::move(bc)),
      opt_(opt),
      source_(std::move(source)) {
  if (grid.dims != model_.dims())
    throw ConfigError("grid dimension does not match model " + model_name(model_.kind()));
  if (u0.size() != grid.size()) throw ConfigError("initial field size does not match grid");
  bc_.validate(grid, model_, source_.has_value());

  st_.grid = grid;
  st_.q = model_.q();
  st_.u = std::move(u0);
  const size_t n = grid.size();
  pos_.resize(n);
  for (size_t i = 0; i < n; ++i) pos_[i] = grid.position(i);

  reservoir_.assign(n, 0);
  reservoir_u_.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    auto c = grid.coords(i);
    unsigned faces = 0;
    const FaceCondition* res_face = nullptr;
    const FaceCondition* char_x = nullptr;
    const FaceCondition* char_y = nullptr;
    for (int a = 0; a < grid.dims; ++a) {
      if (bc_.periodic(a)) continue;
      for (int s = 0; s < 2; ++s) {
        bool on = s == 0 ? c[a] == 0 : c[a] == grid.n[a] - 1;
        if (!on) continue;
        const FaceCondition& fc = bc_.faces[2 * a + s];
        if (fc.kind == FaceKind::Dirichlet) {
          res_face = &fc;
        } else if (fc.kind == FaceKind::D2Q9Characteristic) {
          faces |= a == 0 ? (s == 0 ? kLeft : kRight) : (s == 0 ? kBottom : kTop);
          (a == 0 ? char_x : char_y) = &fc;
        }
      }
    }
    if (res_face) {
      reservoir_[i] = 1;
      reservoir_u_[i] = res_face->value(pos_[i]);
      st_.u[i] = reservoir_u_[i];
    } else if (faces) {
      const FaceCondition* fc = char_y ? char_y : char_x;
      double ub = fc->value(pos_[i]);
      face_nodes_.push_back({i, faces, ub});
      st_.u[i] = ub;
    }
  }

  if (opt_.adaptive_lambda) {
    Admissibility a = model_.subcharacteristic(0.0, st_.u);
    st_.lambda = std::max(a.required_lambda, opt_.lambda_floor);
    warnings_.push_back(
        "adaptive lattice speed: consistency is only guaranteed for relaxation factor 1");
  } else {
    st_.lambda = opt_.lambda;
  }
  st_.dt = select_timestep(grid, st_.lambda);
  check_subcharacteristic();

  st_.f.assign(static_cast<size_t>(st_.q) * n, 0.0);
  fstar_.assign(st_.f.size(), 0.0);
  fnext_.assign(st_.f.size(), 0.0);
  if (opt_.history_capacity > 0)
    history_ = std::make_unique<MacroHistory>(grid, model_.kind(), model_.channel_offsets(),
                                              omega_hat_, opt_.history_capacity);
  reinitialize_equilibrium();
}

void Solver::check_subcharacteristic() {
  if (opt_.subchar == SubcharPolicy::Off) return;
  Admissibility a = model_.subcharacteristic(st_.lambda, st_.u);
  if (a.ok) return;
  std::ostringstream os;
  os << "sub-characteristic condition violated at step " << st_.step << ": lambda "
     << st_.lambda << " < required " << a.required_lambda;
  if (opt_.subchar == SubcharPolicy::Fail) throw SolverError(os.str(), st_.step, -1);
  if (!warned_subchar_) warnings_.push_back(os.str());
  warned_subchar_ = true;
}

void Solver::fill_equilibrium(size_t node, double u, double* feq, double* r) const {
  const size_t q = static_cast<size_t>(st_.q);
  model_.equilibrium(u, st_.lambda, std::span<double>(feq, q));
  if (source_ && r) {
    double s = source_->value(pos_[node], u);
    model_.source_equilibrium(u, s, st_.lambda, std::span<double>(r, q));
  }
}

void Solver::reinitialize_equilibrium() {
  const size_t n = st_.grid.size();
  const int q = st_.q;
  std::vector<double> feq(q);
  for (size_t i = 0; i < n; ++i) {
    fill_equilibrium(i, st_.u[i], feq.data(), nullptr);
    for (int p = 0; p < q; ++p) st_.f[p * n + i] = feq[p];
  }
  if (history_) history_->clear();
}

void Solver::record_history() {
  history_->push(MacroHistory::make_level(model_, st_.u, st_.dt));
}

void Solver::apply_boundaries(std::vector<double>& f) const {
  const size_t n = st_.grid.size();
  const int q = st_.q;
  std::vector<double> feq(q), loc(q);
  for (size_t i = 0; i < n; ++i) {
    if (!reservoir_[i]) continue;
    fill_equilibrium(i, reservoir_u_[i], feq.data(), nullptr);
    for (int p = 0; p < q; ++p) f[p * n + i] = feq[p];
  }
  for (const FaceNode& fn : face_nodes_) {
    fill_equilibrium(fn.node, fn.u, feq.data(), nullptr);
    for (int p = 0; p < q; ++p) loc[p] = f[p * n + fn.node];
    close_d2q9_node(loc, feq, fn.faces);
    for (int p = 0; p < q; ++p) f[p * n + fn.node] = loc[p];
  }
}

void Solver::step() {
  const size_t n = st_.grid.size();
  const int q = st_.q;
  if (opt_.adaptive_lambda) {
    Admissibility a = model_.subcharacteristic(0.0, st_.u);
    st_.lambda = std::max(a.required_lambda, opt_.lambda_floor);
    st_.dt = select_timestep(st_.grid, st_.lambda);
  }
  if (history_) record_history();

  const double w = omega_hat_;
  const double dt = st_.dt;
  const bool src = source_.has_value();
  if (capture_) {
    probe_.f = st_.f;
    probe_.feq.assign(st_.f.size(), 0.0);
    probe_.omega_hat = w;
  }

  parallel_for(n, opt_.threads, [&](size_t b, size_t e) {
    std::vector<double> feq(q), r(q, 0.0);
    for (size_t i = b; i < e; ++i) {
      fill_equilibrium(i, st_.u[i], feq.data(), src ? r.data() : nullptr);
      for (int p = 0; p < q; ++p) {
        size_t id = p * n + i;
        double v = (1.0 - w) * st_.f[id] + w * feq[p];
        if (src) v += dt / 2 * r[p];
        fstar_[id] = v;
        if (capture_) probe_.feq[id] = feq[p];
      }
    }
  });
  if (capture_) probe_.fstar = fstar_;

  stream(fstar_, model_.velocities(), st_.grid, bc_, fnext_);
  apply_boundaries(fnext_);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (src) {
    for (double u : st_.u) {
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
  }

  parallel_for(n, opt_.threads, [&](size_t b, size_t e) {
    std::vector<double> feq(q), r(q);
    for (size_t i = b; i < e; ++i) {
      double sum = 0.0;
      for (int p = 0; p < q; ++p) sum += fnext_[p * n + i];
      if (reservoir_[i]) {
        st_.u[i] = reservoir_u_[i];
        continue;
      }
      if (!src) {
        st_.u[i] = sum;
        continue;
      }
      const Point& x = pos_[i];
      auto s = [&](double u) { return source_->value(x, u); };
      auto ds = [&](double u) { return source_->derivative(x, u); };
      double blo = std::min(lo, sum) - 1.0;
      double bhi = std::max(hi, sum) + 1.0;
      NewtonResult nr = newton_moment_solve(sum, s, ds, dt, st_.u[i], blo, bhi);
      if (!nr.converged) {
        std::ostringstream os;
        os << "moment solve failed at step " << st_.step << ", node " << i;
        throw SolverError(os.str(), st_.step, static_cast<long>(i));
      }
      double un = nr.u;
      st_.u[i] = un;
      model_.source_equilibrium(un, s(un), st_.lambda, r);
      for (int p = 0; p < q; ++p) fnext_[p * n + i] += dt / 2 * r[p];
    }
  });

  st_.f.swap(fnext_);
  st_.t += dt;
  st_.step += 1;
  if (opt_.adaptive_lambda) check_subcharacteristic();
}

void Solver::run(long steps) {
  for (long s = 0; s < steps; ++s) step();
}

double Solver::max_moment_residual() const {
  const size_t n = st_.grid.size();
  const int q = st_.q;
  std::vector<double> r(q);
  double worst = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int p = 0; p < q; ++p) sum += st_.f[p * n + i];
    double target = st_.u[i];
    if (source_) {
      double s = source_->value(pos_[i], st_.u[i]);
      model_.source_equilibrium(st_.u[i], s, st_.lambda, r);
      double rs = 0.0;
      for (int p = 0; p < q; ++p) rs += r[p];
      sum -= st_.dt / 2 * rs;
      target -= st_.dt / 2 * s;
    }
    worst = std::max(worst, std::abs(sum - target) / std::max(1.0, std::abs(st_.u[i])));
  }
  return worst;
}

}  // namespace vklbm
