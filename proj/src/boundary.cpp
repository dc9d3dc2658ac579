#include "vklbm/solver.hpp"

namespace vklbm {

FaceCondition FaceCondition::dirichlet(double u) {
  return {FaceKind::Dirichlet, [u](const Point&) { return u; }};
}

FaceCondition FaceCondition::dirichlet(BoundaryValue fn) {
  return {FaceKind::Dirichlet, std::move(fn)};
}

FaceCondition FaceCondition::characteristic(double u) {
  return {FaceKind::D2Q9Characteristic, [u](const Point&) { return u; }};
}

FaceCondition FaceCondition::characteristic(BoundaryValue fn) {
  return {FaceKind::D2Q9Characteristic, std::move(fn)};
}

BoundarySpec BoundarySpec::all(FaceCondition c) {
  BoundarySpec b;
  b.faces.fill(c);
  return b;
}

void BoundarySpec::validate(const Grid& grid, const LatticeModel& model,
                            bool with_source) const {
  static const char* names[6] = {"x-min", "x-max", "y-min", "y-max", "z-min", "z-max"};
  for (int a = 0; a < grid.dims; ++a) {
    const auto& lo = faces[2 * a];
    const auto& hi = faces[2 * a + 1];
    if ((lo.kind == FaceKind::Periodic) != (hi.kind == FaceKind::Periodic))
      throw ConfigError(std::string("faces ") + names[2 * a] + " and " + names[2 * a + 1] +
                        " must both be periodic or both non-periodic");
    if (lo.kind != FaceKind::Periodic && grid.n[a] < 3)
      throw ConfigError("non-periodic axis needs at least three nodes");
    for (int s = 0; s < 2; ++s) {
      const auto& c = faces[2 * a + s];
      if (c.kind == FaceKind::Periodic) continue;
      if (!c.value) throw ConfigError(std::string("missing boundary data on ") + names[2 * a + s]);
      if (c.kind == FaceKind::D2Q9Characteristic) {
        if (model.kind() != ModelKind::D2Q9)
          throw ConfigError("characteristic boundary on " + std::string(names[2 * a + s]) +
                            " requires the d2q9 model");
        if (with_source)
          throw ConfigError("characteristic boundaries do not support source terms");
      }
    }
  }
}

namespace {

void close_face(double* n, unsigned faces) {
  // indices are 0-based: population q of the 1..9 numbering is n[q-1]
  switch (faces) {
    case kLeft: {
      double t = (n[1] + n[4] + n[6]) / 3;
      n[2] = -n[7] - t;
      n[0] = -n[5] - t;
      n[8] = -n[3] - t;
      break;
    }
    case kRight: {
      double t = (n[1] + n[4] + n[6]) / 3;
      n[3] = -n[8] - t;
      n[5] = -n[0] - t;
      n[7] = -n[2] - t;
      break;
    }
    case kBottom: {
      double t = (n[0] + n[4] + n[5]) / 3;
      n[2] = -n[7] - t;
      n[1] = -n[6] - t;
      n[3] = -n[8] - t;
      break;
    }
    case kTop: {
      double t = (n[0] + n[4] + n[5]) / 3;
      n[8] = -n[3] - t;
      n[6] = -n[1] - t;
      n[7] = -n[2] - t;
      break;
    }
    case kLeft | kBottom:
      n[0] = -n[5];
      n[2] = -n[7];
      n[1] = -n[6];
      n[3] = n[8] = -n[4] / 2;
      break;
    case kRight | kBottom:
      n[1] = -n[6];
      n[3] = -n[8];
      n[5] = -n[0];
      n[2] = n[7] = -n[4] / 2;
      break;
    case kLeft | kTop:
      n[0] = -n[5];
      n[8] = -n[3];
      n[6] = -n[1];
      n[2] = n[7] = -n[4] / 2;
      break;
    case kRight | kTop:
      n[5] = -n[0];
      n[6] = -n[1];
      n[7] = -n[2];
      n[3] = n[8] = -n[4] / 2;
      break;
    default:
      throw ConfigError("invalid D2Q9 face combination");
  }
}

// Populations filled by close_face, per mask.
unsigned unknown_mask(unsigned faces) {
  switch (faces) {
    case kLeft: return 0b100000101;
    case kRight: return 0b010101000;
    case kBottom: return 0b000001110;
    case kTop: return 0b111000000;
    case kLeft | kBottom: return 0b100001111;
    case kRight | kBottom: return 0b010101110;
    case kLeft | kTop: return 0b111000101;
    case kRight | kTop: return 0b111101000;
  }
  return 0;
}

}  // namespace

void close_d2q9_node(std::span<double> f, std::span<const double> feq, unsigned faces) {
  double n[9];
  for (int q = 0; q < 9; ++q) n[q] = f[q] - feq[q];
  close_face(n, faces);
  unsigned mask = unknown_mask(faces);
  for (int q = 0; q < 9; ++q)
    if (mask & (1u << q)) f[q] = feq[q] + n[q];
}

}  // namespace vklbm
