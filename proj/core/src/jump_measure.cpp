#include "jumplab/jump_measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "jumplab/errors.hpp"

namespace jumplab {
namespace {

double binomial(int n, int r) {
    double v = 1.0;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

/// Ascending coefficients of c_k x^k (1-x)^k, c_k = (2k+1)!/(k!)^2,
/// so that the density integrates to 1 exactly.
std::vector<double> poly_density_coeffs(int k) {
    double ck = 1.0;
    for (int i = 1; i <= 2 * k + 1; ++i) ck *= i;       // (2k+1)!
    for (int i = 1; i <= k; ++i) ck /= (static_cast<double>(i) * i);  // /(k!)^2
    std::vector<double> c(static_cast<size_t>(2 * k + 1), 0.0);
    for (int m = 0; m <= k; ++m) {
        c[static_cast<size_t>(k + m)] = ck * binomial(k, m) * ((m % 2 == 0) ? 1.0 : -1.0);
    }
    return c;
}

double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (size_t j = c.size(); j-- > 0;) v = v * x + c[j];
    return v;
}

double factorial(int j) {
    double v = 1.0;
    for (int i = 2; i <= j; ++i) v *= i;
    return v;
}

struct Leaf {
    const JumpPreset* preset;
    double mass;
};

void flatten(const JumpPreset& p, double mass, std::vector<Leaf>& out) {
    if (p.kind == JumpPreset::Kind::mixture) {
        for (const auto& comp : p.components) flatten(comp.preset, mass * comp.mass, out);
    } else {
        out.push_back({&p, mass});
    }
}

void sample_symmetric(const std::vector<double>& c, double mass, const Grid& grid,
                      std::vector<double>& density) {
    const int n = grid.n_interior;
    for (int i = 1; 2 * i <= n + 1; ++i) {
        const double v = mass * poly_eval(c, grid.nodes[static_cast<size_t>(i) - 1]);
        density[static_cast<size_t>(i) - 1] += v;
        if (i - 1 != n - i) density[static_cast<size_t>(n - i)] += v;  // skip center twice
    }
}

}  // namespace

JumpPreset JumpPreset::poly(int k) {
    if (k < 1 || k > 12) throw InvalidMeasure("poly jump preset requires 1 <= k <= 12");
    JumpPreset p;
    p.kind = Kind::poly;
    p.k = k;
    return p;
}

JumpPreset JumpPreset::atom(double location) {
    if (!(location > 0.0) || !(location < 1.0)) {
        throw InvalidMeasure("atom location must lie in (0,1)");
    }
    JumpPreset p;
    p.kind = Kind::atom;
    p.atom_location = location;
    return p;
}

JumpPreset JumpPreset::mixture(std::vector<Component> components) {
    if (components.empty()) throw InvalidMeasure("mixture needs at least one component");
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.mass > 0.0)) throw InvalidMeasure("mixture masses must be positive");
        total += c.mass;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidMeasure("mixture masses must sum to 1");
    }
    JumpPreset p;
    p.kind = Kind::mixture;
    p.components = std::move(components);
    return p;
}

std::string JumpPreset::name() const {
    switch (kind) {
        case Kind::uniform: return "uniform";
        case Kind::poly: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "poly(%d)", k);
            return buf;
        }
        case Kind::atom: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "atom(%g)", atom_location);
            return buf;
        }
        case Kind::mixture: return "mixture";
    }
    return "?";
}

double JumpMeasure::atom_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    return s;
}

JumpMeasure build_jump_measure(const JumpPreset& preset, const Grid& grid) {
    std::vector<Leaf> leaves;
    flatten(preset, 1.0, leaves);

    JumpMeasure m;
    m.density.assign(static_cast<size_t>(grid.n_interior), 0.0);

    int k_min = -1;  // vanishing order over density components
    int k_max_store = 2;
    for (const auto& leaf : leaves) {
        switch (leaf.preset->kind) {
            case JumpPreset::Kind::uniform:
                k_min = 0;
                break;
            case JumpPreset::Kind::poly:
                k_min = (k_min < 0) ? leaf.preset->k : std::min(k_min, leaf.preset->k);
                k_max_store = std::max(k_max_store, leaf.preset->k + 2);
                break;
            default: break;
        }
    }

    m.derivs_left.assign(static_cast<size_t>(k_max_store) + 1, 0.0);
    m.derivs_right.assign(static_cast<size_t>(k_max_store) + 1, 0.0);

    for (const auto& leaf : leaves) {
        const double mass = leaf.mass;
        switch (leaf.preset->kind) {
            case JumpPreset::Kind::uniform: {
                for (double& d : m.density) d += mass;
                m.density_left += mass;
                m.density_right += mass;
                m.derivs_left[0] += mass;
                m.derivs_right[0] += mass;
                m.density_mass += mass;
                break;
            }
            case JumpPreset::Kind::poly: {
                const int k = leaf.preset->k;
                const auto c = poly_density_coeffs(k);
                sample_symmetric(c, mass, grid, m.density);
                // mu^{(j)}(0) = j! * c_j; mirror with alternating sign at x = 1
                for (int j = 0; j <= k_max_store && j < static_cast<int>(c.size()); ++j) {
                    const double dj = mass * factorial(j) * c[static_cast<size_t>(j)];
                    m.derivs_left[static_cast<size_t>(j)] += dj;
                    m.derivs_right[static_cast<size_t>(j)] += (j % 2 == 0) ? dj : -dj;
                }
                m.density_mass += mass;
                break;
            }
            case JumpPreset::Kind::atom: {
                const double loc = leaf.preset->atom_location;
                if (!(loc > 0.0) || !(loc < 1.0)) {
                    throw InvalidMeasure("atom location must lie in (0,1)");
                }
                m.atoms.push_back({loc, mass});
                break;
            }
            case JumpPreset::Kind::mixture: break;  // flattened already
        }
    }

    for (double d : m.density) {
        if (d < 0.0) throw InvalidMeasure("jump density must be nonnegative");
    }
    if (std::abs(m.total_mass() - 1.0) > 1e-8) {
        throw InvalidMeasure("jump measure mass differs from 1 by more than 1e-8");
    }

    if (k_min < 0) {
        m.pure_atom = true;
        m.k_vanish = 0;
    } else {
        m.k_vanish = k_min;
    }
    // declared vanishing order must be consistent with the stored derivatives
    for (int j = 0; j < m.k_vanish; ++j) {
        if (m.deriv_left(j) != 0.0 || m.deriv_right(j) != 0.0) {
            throw InvalidMeasure("vanishing order inconsistent with endpoint derivatives");
        }
    }
    return m;
}

JumpMeasure reflect(const JumpMeasure& measure) {
    JumpMeasure r = measure;
    std::reverse(r.density.begin(), r.density.end());
    std::swap(r.density_left, r.density_right);
    for (size_t j = 0; j < r.derivs_left.size(); ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        r.derivs_left[j] = sign * measure.derivs_right[j];
        r.derivs_right[j] = sign * measure.derivs_left[j];
    }
    for (auto& a : r.atoms) a.location = 1.0 - a.location;
    return r;
}

}  // namespace jumplab
