#pragma once

#include <vector>

#include "campanato/grid.hpp"
#include "campanato/phi.hpp"
#include "campanato/spaces.hpp"
#include "campanato/young.hpp"

namespace campanato {

/// (1/|Q|) ∫_Q |f - f_Q|.
double mean_oscillation(const GridFunction& f, const Cube& q);

/// sup over all grid cubes of the mean oscillation.
double bmo_norm(const GridFunction& f);

/// sup_Q φ(Q) ‖(f - f_Q) χ_Q‖_{L^p} / ‖χ_Q‖_{L^p}. For p = 1 the per-cube
/// term is mean_oscillation itself, so φ ≡ 1, p = 1 reproduces bmo_norm
/// bit for bit.
double campanato_norm(const GridFunction& f, const PhiParameter& phi, double p = 1.0);

struct CubeRecord {
  Cube cube;
  double phi;      // φ(Q); 1 until apply_phi fills it in
  double l1_osc;   // mean oscillation
  double x_ratio;  // ‖(f - f_Q) χ_Q‖_X / ‖χ_Q‖_X, without φ
};

struct OscillationReport {
  std::vector<CubeRecord> records;  // cube enumeration order
  double campanato = 0.0;           // max φ l1_osc
  double x_campanato = 0.0;         // max φ x_ratio
  double lower_ratio = 1.0;         // campanato / x_campanato, 0/0 = 1
  double upper_ratio = 1.0;         // x_campanato / campanato, 0/0 = 1
};

/// Per-cube records over every grid cube, independent of φ, so several φ can
/// be applied to one pass over the cubes.
std::vector<CubeRecord> oscillation_records(const GridFunction& f, const SpaceSpec& x);

OscillationReport apply_phi(std::vector<CubeRecord> records, const PhiParameter& phi);

OscillationReport x_campanato(const GridFunction& f, const PhiParameter& phi, const SpaceSpec& x);

/// inf{λ > 0 : (1/|Q|) ∫_Q Φ(|f|/λ) ≤ 1}.
double orlicz_average(const GridFunction& f, const YoungFunction& phi, const Cube& q);

/// ‖f‖_{X,Q}: the X quasi-norm of f|_Q rescaled onto the unit cube. Weight
/// and exponent fields are block-averaged to the rescaled resolution.
double x_average_norm(const GridFunction& f, const SpaceSpec& x, const Cube& q);

/// sup over power-of-two-side cubes of φ(Q) ‖f - f_Q‖_{X,Q}.
double average_campanato(const GridFunction& f, const PhiParameter& phi, const SpaceSpec& x);

/// f_Q / ‖f‖_{X,Q} for f ≥ 0.
double technical_condition_ratio(const GridFunction& f, const SpaceSpec& x, const Cube& q);

}  // namespace campanato
