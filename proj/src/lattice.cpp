#include "vklbm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vklbm {

ModelKind parse_model(const std::string& name) {
  if (name == "d1q2") return ModelKind::D1Q2;
  if (name == "d1q3") return ModelKind::D1Q3;
  if (name == "upwind-d1q3") return ModelKind::UpwindD1Q3;
  if (name == "upwind-d2q5") return ModelKind::UpwindD2Q5;
  if (name == "upwind-d3q7") return ModelKind::UpwindD3Q7;
  if (name == "d2q9") return ModelKind::D2Q9;
  throw ConfigError("unknown model '" + name + "'");
}

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::D1Q2: return "d1q2";
    case ModelKind::D1Q3: return "d1q3";
    case ModelKind::UpwindD1Q3: return "upwind-d1q3";
    case ModelKind::UpwindD2Q5: return "upwind-d2q5";
    case ModelKind::UpwindD3Q7: return "upwind-d3q7";
    case ModelKind::D2Q9: return "d2q9";
  }
  return "?";
}

int model_dims(ModelKind kind) {
  switch (kind) {
    case ModelKind::UpwindD2Q5:
    case ModelKind::D2Q9: return 2;
    case ModelKind::UpwindD3Q7: return 3;
    default: return 1;
  }
}

VelocitySet velocity_set(ModelKind kind) {
  VelocitySet vs;
  vs.dims = model_dims(kind);
  switch (kind) {
    case ModelKind::D1Q2:
      vs.offsets = {{1, 0, 0}, {-1, 0, 0}};
      break;
    case ModelKind::D1Q3:
      vs.offsets = {{1, 0, 0}, {0, 0, 0}, {-1, 0, 0}};
      break;
    case ModelKind::UpwindD1Q3:
    case ModelKind::UpwindD2Q5:
    case ModelKind::UpwindD3Q7: {
      int d = vs.dims;
      for (int i = 0; i < d; ++i) {
        Offset o{0, 0, 0};
        o[i] = 1;
        vs.offsets.push_back(o);
      }
      vs.offsets.push_back({0, 0, 0});
      for (int i = 0; i < d; ++i) {
        Offset o{0, 0, 0};
        o[i] = -1;
        vs.offsets.push_back(o);
      }
      break;
    }
    case ModelKind::D2Q9:
      vs.offsets = {{1, 0, 0},  {0, 1, 0},   {1, 1, 0},   {-1, 1, 0}, {0, 0, 0},
                    {-1, 0, 0}, {0, -1, 0}, {-1, -1, 0}, {1, -1, 0}};
      break;
  }
  vs.q = static_cast<int>(vs.offsets.size());
  return vs;
}

D2Q9Partition D2Q9Partition::parse(const std::string& text) {
  if (text == "coordinate") return coordinate();
  if (text == "diagonal") return diagonal();
  if (text.rfind("custom(", 0) == 0 && text.size() > 8 && text.back() == ')') {
    std::string inner = text.substr(7, text.size() - 8);
    size_t used = 0;
    double phi = 0.0;
    try {
      phi = std::stod(inner, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != inner.size() || used == 0)
      throw ConfigError("bad partition fraction in '" + text + "'");
    return custom(phi);
  }
  throw ConfigError("unknown partition '" + text + "'");
}

DiagonalFlux d2q9_partition(double g1, double g2, double g_alpha, double g_beta) {
  return {(g2 + g1) / 2 - (g_beta + g_alpha) / 2, (g2 - g1) / 2 - (g_beta - g_alpha) / 2};
}

LatticeModel::LatticeModel(ModelKind kind, FluxSet flux, D2Q9Partition partition)
    : kind_(kind), vs_(velocity_set(kind)), flux_(std::move(flux)), partition_(partition) {
  if (static_cast<int>(flux_.size()) != vs_.dims)
    throw ConfigError("model " + model_name(kind) + " needs " + std::to_string(vs_.dims) +
                      " flux component(s), got " + std::to_string(flux_.size()));
  if (kind_ == ModelKind::D2Q9) {
    double phi = partition_.coord_fraction;
    double h = (1.0 - phi) / 2;
    channels_ = {ScalarFlux::combine(phi, flux_[0], 0.0, flux_[1]),
                 ScalarFlux::combine(0.0, flux_[0], phi, flux_[1]),
                 ScalarFlux::combine(h, flux_[0], h, flux_[1]),
                 ScalarFlux::combine(-h, flux_[0], h, flux_[1])};
    channel_offsets_ = {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {-1, 1, 0}};
  } else if (classical()) {
    channels_ = flux_;
    channel_offsets_ = {{1, 0, 0}};
  } else {
    channels_ = flux_;
    for (int d = 0; d < vs_.dims; ++d) channel_offsets_.push_back(vs_.offsets[d]);
  }
}

void LatticeModel::equilibrium(double u, double lambda, std::span<double> out) const {
  if (!(lambda > 0.0)) throw ConfigError("lattice speed must be positive");
  if (classical()) {
    double g = flux_[0](u);
    if (kind_ == ModelKind::D1Q2) {
      out[0] = u / 2 + g / (2 * lambda);
      out[1] = u / 2 - g / (2 * lambda);
    } else {
      out[0] = u / 3 + g / (2 * lambda);
      out[1] = u / 3;
      out[2] = u / 3 - g / (2 * lambda);
    }
    return;
  }
  size_t nc = channels_.size();
  double total = 0.0;
  for (size_t c = 0; c < nc; ++c) {
    FluxSplit s = channels_[c].split(u);
    out[c] = s.plus / lambda;
    out[nc + 1 + c] = s.minus / lambda;
    total += s.plus + s.minus;
  }
  out[nc] = u - total / lambda;
}

std::vector<double> LatticeModel::equilibrium(double u, double lambda) const {
  std::vector<double> out(static_cast<size_t>(vs_.q));
  equilibrium(u, lambda, out);
  return out;
}

void LatticeModel::source_equilibrium(double u, double s, double lambda,
                                      std::span<double> out) const {
  if (!(lambda > 0.0)) throw ConfigError("lattice speed must be positive");
  if (classical()) {
    double a = flux_[0].jacobian(u) * s;
    if (kind_ == ModelKind::D1Q2) {
      out[0] = s / 2 + a / (2 * lambda);
      out[1] = s / 2 - a / (2 * lambda);
    } else {
      out[0] = s / 3 + a / (2 * lambda);
      out[1] = s / 3;
      out[2] = s / 3 - a / (2 * lambda);
    }
    return;
  }
  size_t nc = channels_.size();
  double total = 0.0;
  for (size_t c = 0; c < nc; ++c) {
    FluxSplit d = channels_[c].split_jacobian(u);
    out[c] = d.plus * s / lambda;
    out[nc + 1 + c] = d.minus * s / lambda;
    total += (d.plus + d.minus) * s;
  }
  out[nc] = s - total / lambda;
}

std::vector<double> LatticeModel::source_equilibrium(double u, double s, double lambda) const {
  std::vector<double> out(static_cast<size_t>(vs_.q));
  source_equilibrium(u, s, lambda, out);
  return out;
}

double LatticeModel::required_lambda(double u) const {
  switch (kind_) {
    case ModelKind::D1Q2: return std::abs(flux_[0].jacobian(u));
    case ModelKind::D1Q3: return std::sqrt(1.5) * std::abs(flux_[0].jacobian(u));
    case ModelKind::D2Q9: {
      // lambda*A - g g^T must be positive semi-definite
      double w[4];
      for (int c = 0; c < 4; ++c) {
        FluxSplit d = channels_[c].split_jacobian(u);
        w[c] = d.plus + d.minus;
      }
      double p = w[0] + w[2] + w[3];
      double s = w[1] + w[2] + w[3];
      double r = w[2] - w[3];
      double g1 = flux_[0].jacobian(u);
      double g2 = flux_[1].jacobian(u);
      if (g1 == 0.0 && g2 == 0.0) return 0.0;
      double tr = p + s;
      double disc = std::sqrt((p - s) * (p - s) / 4 + r * r);
      double mu[2] = {tr / 2 + disc, tr / 2 - disc};
      double vec[2][2];
      if (std::abs(r) > 0.0) {
        for (int k = 0; k < 2; ++k) {
          double vx = r, vy = mu[k] - p;
          double n = std::hypot(vx, vy);
          vec[k][0] = vx / n;
          vec[k][1] = vy / n;
        }
      } else if (p >= s) {
        vec[0][0] = 1; vec[0][1] = 0; vec[1][0] = 0; vec[1][1] = 1;
      } else {
        vec[0][0] = 0; vec[0][1] = 1; vec[1][0] = 1; vec[1][1] = 0;
      }
      double tol = 1e-14 * std::max(tr, 1e-300);
      double gn = std::hypot(g1, g2);
      double lam = 0.0;
      for (int k = 0; k < 2; ++k) {
        double c = vec[k][0] * g1 + vec[k][1] * g2;
        if (mu[k] > tol) {
          lam += c * c / mu[k];
        } else if (std::abs(c) > 1e-12 * gn) {
          return std::numeric_limits<double>::infinity();
        }
      }
      return lam;
    }
    default: {
      // lambda*diag(|G^d'|) - g g^T >= 0 reduces to lambda >= sum |G^d'|
      double lam = 0.0;
      for (const auto& g : flux_) lam += std::abs(g.jacobian(u));
      return lam;
    }
  }
}

Admissibility LatticeModel::subcharacteristic(double lambda,
                                              std::span<const double> field) const {
  Admissibility a;
  for (double u : field) a.required_lambda = std::max(a.required_lambda, required_lambda(u));
  a.margin = lambda - a.required_lambda;
  a.ok = a.margin >= -1e-12;
  return a;
}

std::vector<double> equilibrium(const LatticeModel& model, double u, double lambda) {
  return model.equilibrium(u, lambda);
}

std::vector<double> source_equilibrium(const LatticeModel& model, double u, double s,
                                       double lambda) {
  return model.source_equilibrium(u, s, lambda);
}

Admissibility subcharacteristic_ok(const LatticeModel& model, double lambda,
                                   std::span<const double> field) {
  return model.subcharacteristic(lambda, field);
}

}  // namespace vklbm
