#pragma once

#include "vklbm/flux.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace vklbm {

enum class ModelKind { D1Q2, D1Q3, UpwindD1Q3, UpwindD2Q5, UpwindD3Q7, D2Q9 };

ModelKind parse_model(const std::string& name);
std::string model_name(ModelKind kind);
int model_dims(ModelKind kind);

using Offset = std::array<int, 3>;

struct VelocitySet {
  int dims = 1;
  int q = 0;
  std::vector<Offset> offsets;  // m_q, velocity is m_q * lambda
};

VelocitySet velocity_set(ModelKind kind);

// Share of G^1, G^2 routed through the coordinate channels alpha, beta.
// 1 is the "coordinate" preset, 0 the "diagonal" preset.
struct D2Q9Partition {
  double coord_fraction = 1.0;

  static D2Q9Partition coordinate() { return {1.0}; }
  static D2Q9Partition diagonal() { return {0.0}; }
  static D2Q9Partition custom(double phi) { return {phi}; }
  // "coordinate", "diagonal" or "custom(<phi>)"
  static D2Q9Partition parse(const std::string& text);
};

struct DiagonalFlux {
  double gamma = 0.0;
  double zeta = 0.0;
};

DiagonalFlux d2q9_partition(double g1, double g2, double g_alpha, double g_beta);

struct Admissibility {
  bool ok = true;
  double margin = 0.0;           // lambda - required lambda
  double required_lambda = 0.0;  // max over the sampled field
};

class LatticeModel {
 public:
  LatticeModel(ModelKind kind, FluxSet flux, D2Q9Partition partition = {});

  ModelKind kind() const { return kind_; }
  const VelocitySet& velocities() const { return vs_; }
  int dims() const { return vs_.dims; }
  int q() const { return vs_.q; }
  const FluxSet& flux() const { return flux_; }
  const D2Q9Partition& partition() const { return partition_; }
  bool classical() const { return kind_ == ModelKind::D1Q2 || kind_ == ModelKind::D1Q3; }

  // Upwinded flux channels. Upwind models: one per direction. D2Q9:
  // alpha, beta, gamma, zeta. Classical models: the physical flux.
  const FluxSet& channels() const { return channels_; }
  // Lattice offset of the population carrying each channel's positive part.
  const std::vector<Offset>& channel_offsets() const { return channel_offsets_; }

  void equilibrium(double u, double lambda, std::span<double> out) const;
  std::vector<double> equilibrium(double u, double lambda) const;
  void source_equilibrium(double u, double s, double lambda, std::span<double> out) const;
  std::vector<double> source_equilibrium(double u, double s, double lambda) const;

  // Smallest lambda keeping the numerical diffusion non-negative at U.
  double required_lambda(double u) const;
  Admissibility subcharacteristic(double lambda, std::span<const double> field) const;

 private:
  ModelKind kind_;
  VelocitySet vs_;
  FluxSet flux_;
  D2Q9Partition partition_;
  FluxSet channels_;
  std::vector<Offset> channel_offsets_;
};

std::vector<double> equilibrium(const LatticeModel& model, double u, double lambda);
std::vector<double> source_equilibrium(const LatticeModel& model, double u, double s,
                                       double lambda);
Admissibility subcharacteristic_ok(const LatticeModel& model, double lambda,
                                   std::span<const double> field);

}  // namespace vklbm
