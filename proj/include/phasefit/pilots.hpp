// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "phasefit/model.hpp"

namespace phasefit {

/// Pilot positions over the L x N time-frequency grid.
struct PilotLattice {
    std::vector<std::pair<int, int>> points; // (symbol l, subcarrier k), sorted
    PatternKind kind = PatternKind::rectangular;
    double density = 0.0; // fraction of grid cells carrying a pilot
};

/// Generates one of the six lattice families:
///   block         all k on symbols l = 0 mod x1
///   comb          all l, subcarriers k = 0 mod y2
///   rectangular   both restrictions combined
///   hexagonal     rectangular with odd pilot rows shifted by floor(y2/2) in k
///   diamond       same realization as hexagonal (quincunx offset)
///   parallelogram rectangular with pilot row r shifted by (r*floor(y2/2)) mod n
PilotLattice gen_pattern(PatternKind kind, const OfdmParams& params, const PilotGeometry& geometry);

/// Sorted indices of symbols that carry at least one pilot.
std::vector<int> pilot_bearing_symbols(const PilotLattice& lattice);

/// Signed isotropy residual m1*x1^4 - m2*y2^4; zero means the lattice
/// weights time and frequency selectivity equally.
double isotropy_gap(double x1, double y2, double m1, double m2);

struct IsotropicSpacing {
    double real_value = 0.0;  // exact solution of the isotropy balance
    int lattice_value = 1;    // rounded down to a usable integer interval >= 1
};

/// Frequency-domain pilot interval balancing the fourth spectral moments:
/// y2 = (m1/m2)^(1/4) * x1, rounded down (denser in frequency is the safe
/// side for estimation quality).
IsotropicSpacing solve_y2(double x1, double m1, double m2);

} // namespace phasefit
