#pragma once

#include <string>
#include <vector>

#include "jumplab/grid.hpp"

namespace jumplab {

/// Analytic description of a redistribution measure on (0,1).
struct JumpPreset {
    enum class Kind { uniform, poly, atom, mixture };

    Kind kind = Kind::uniform;
    int k = 0;                   // poly: density proportional to x^k (1-x)^k
    double atom_location = 0.5;  // atom

    struct Component;
    std::vector<Component> components;  // mixture

    static JumpPreset uniform() { return {}; }
    /// Density c_k x^k (1-x)^k with c_k = (2k+1)!/(k!)^2; k >= 1.
    static JumpPreset poly(int k);
    static JumpPreset atom(double location);
    static JumpPreset mixture(std::vector<Component> components);

    std::string name() const;
};

struct JumpPreset::Component {
    JumpPreset preset;
    double mass = 1.0;
};

struct Atom {
    double location = 0.0;
    double mass = 0.0;
};

/// Probability measure split into a density part sampled on the grid and a
/// list of interior atoms. Endpoint derivatives of the density are analytic.
struct JumpMeasure {
    std::vector<double> density;            // interior nodes
    double density_left = 0.0, density_right = 0.0;
    std::vector<double> derivs_left;        // mu^{(j)}(0), j = 0..k_max
    std::vector<double> derivs_right;       // mu^{(j)}(1)
    std::vector<Atom> atoms;
    double density_mass = 0.0;              // analytic mass of the density part
    int k_vanish = 0;                       // declared vanishing order
    bool pure_atom = false;                 // k_vanish convention: infinite

    double atom_mass() const;
    double total_mass() const { return density_mass + atom_mass(); }

    double deriv_left(int j) const {
        return j < static_cast<int>(derivs_left.size()) ? derivs_left[static_cast<size_t>(j)] : 0.0;
    }
    double deriv_right(int j) const {
        return j < static_cast<int>(derivs_right.size()) ? derivs_right[static_cast<size_t>(j)] : 0.0;
    }
};

/// Sample a preset on a grid. Throws InvalidMeasure on violation
/// (atom on the boundary, mixture masses not summing to 1).
JumpMeasure build_jump_measure(const JumpPreset& preset, const Grid& grid);

/// Mirror image under x -> 1-x.
JumpMeasure reflect(const JumpMeasure& measure);

}  // namespace jumplab
