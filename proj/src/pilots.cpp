// SPDX-License-Identifier: Apache-2.0

#include "phasefit/pilots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phasefit {

PilotLattice gen_pattern(PatternKind kind, const OfdmParams& params, const PilotGeometry& geometry) {
    if (auto check = validate(params, geometry); !check)
        throw std::invalid_argument(check.message);

    PilotLattice lattice;
    lattice.kind = kind;
    const int shear = geometry.y2 / 2;

    for (int l = 0; l < params.l_symbols; ++l) {
        const bool pilot_row = l % geometry.x1 == 0;
        const int row_ordinal = l / geometry.x1;
        switch (kind) {
        case PatternKind::block:
            if (pilot_row)
                for (int k = 0; k < params.n; ++k)
                    lattice.points.emplace_back(l, k);
            break;
        case PatternKind::comb:
            for (int k = 0; k < params.n; k += geometry.y2)
                lattice.points.emplace_back(l, k);
            break;
        case PatternKind::rectangular:
            if (pilot_row)
                for (int k = 0; k < params.n; k += geometry.y2)
                    lattice.points.emplace_back(l, k);
            break;
        case PatternKind::hexagonal:
        case PatternKind::diamond: {
            if (pilot_row) {
                const int offset = (row_ordinal % 2 == 1) ? shear : 0;
                for (int k = offset; k < params.n; k += geometry.y2)
                    lattice.points.emplace_back(l, k);
            }
            break;
        }
        case PatternKind::parallelogram:
            if (pilot_row) {
                const int offset = static_cast<int>((static_cast<long long>(row_ordinal) * shear) % params.n);
                for (int k = 0; k < params.n; k += geometry.y2)
                    lattice.points.emplace_back(l, (k + offset) % params.n);
            }
            break;
        }
    }

    std::sort(lattice.points.begin(), lattice.points.end());
    lattice.density = static_cast<double>(lattice.points.size()) /
                      (static_cast<double>(params.l_symbols) * static_cast<double>(params.n));
    return lattice;
}

std::vector<int> pilot_bearing_symbols(const PilotLattice& lattice) {
    std::vector<int> symbols;
    for (const auto& [l, k] : lattice.points) {
        (void)k;
        if (symbols.empty() || symbols.back() != l)
            symbols.push_back(l);
    }
    return symbols;
}

double isotropy_gap(double x1, double y2, double m1, double m2) {
    const auto p4 = [](double v) { return v * v * v * v; };
    return m1 * p4(x1) - m2 * p4(y2);
}

IsotropicSpacing solve_y2(double x1, double m1, double m2) {
    if (m2 <= 0.0)
        throw std::invalid_argument("m2 must be > 0");
    if (m1 < 0.0)
        throw std::invalid_argument("m1 must be >= 0");
    IsotropicSpacing out;
    out.real_value = x1 * std::pow(m1 / m2, 0.25);
    // tiny nudge so exact integer solutions survive quarter-power roundoff
    out.lattice_value = std::max(1, static_cast<int>(std::floor(out.real_value + 1e-9)));
    return out;
}

} // namespace phasefit
