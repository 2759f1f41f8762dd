#include "jumplab/rate_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "jumplab/errors.hpp"

namespace jumplab {
namespace {

double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (size_t j = c.size(); j-- > 0;) v = v * x + c[j];
    return v;
}

double poly_deriv_at(const std::vector<double>& c, double x, int order) {
    std::vector<double> d = c;
    for (int r = 0; r < order; ++r) {
        for (size_t j = 1; j < d.size(); ++j) d[j - 1] = static_cast<double>(j) * d[j];
        if (!d.empty()) d.pop_back();
    }
    return poly_eval(d, x);
}

double poly_integral01(const std::vector<double>& c) {
    double s = 0.0;
    for (size_t j = 0; j < c.size(); ++j) s += c[j] / static_cast<double>(j + 1);
    return s;
}

}  // namespace

RatePreset RatePreset::linear(double slope) {
    if (!(std::abs(slope) < 2.0)) {
        throw InvalidRate("linear rate preset requires |slope| < 2 to stay positive");
    }
    RatePreset p;
    p.kind = Kind::linear;
    p.slope = slope;
    return p;
}

RatePreset RatePreset::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw InvalidRate("polynomial rate preset needs coefficients");
    RatePreset p;
    p.kind = Kind::polynomial;
    p.coeffs = std::move(coeffs);
    double raw = poly_integral01(p.coeffs);
    if (!(raw > 0.0) || !std::isfinite(raw)) {
        throw InvalidRate("polynomial rate preset has nonpositive integral");
    }
    return p;
}

RatePreset RatePreset::degenerate() {
    RatePreset p;
    p.kind = Kind::degenerate;
    return p;
}

std::vector<double> RatePreset::normalized_coeffs() const {
    switch (kind) {
        case Kind::constant: return {1.0};
        case Kind::linear: return {1.0 - 0.5 * slope, slope};
        case Kind::degenerate: return {0.0, 6.0, -6.0};
        case Kind::polynomial: {
            std::vector<double> c = coeffs;
            const double raw = poly_integral01(c);
            for (double& v : c) v /= raw;
            return c;
        }
    }
    return {1.0};
}

double RatePreset::eval(double x) const { return poly_eval(normalized_coeffs(), x); }

bool RatePreset::symmetric() const {
    return kind == Kind::constant || kind == Kind::degenerate;
}

std::string RatePreset::name() const {
    switch (kind) {
        case Kind::constant: return "constant";
        case Kind::linear: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "linear(%g)", slope);
            return buf;
        }
        case Kind::polynomial: return "polynomial";
        case Kind::degenerate: return "degenerate";
    }
    return "?";
}

double RateField::value_at(double x, const Grid& grid) const {
    if (x <= 0.0) return v_left;
    if (x >= 1.0) return v_right;
    const double t = x / grid.h;
    int j = static_cast<int>(t);
    if (j > grid.n_interior) j = grid.n_interior;
    const double theta = t - j;
    return (1.0 - theta) * value(j) + theta * value(j + 1);
}

namespace {

RateField finalize(RateField f, const Grid& grid, bool check_interior_positive) {
    if (check_interior_positive) {
        for (int i = 0; i < grid.n_interior; ++i) {
            if (!(f.values[static_cast<size_t>(i)] > 0.0)) {
                throw InvalidRate("rate field must be positive at interior nodes");
            }
        }
        if (!f.degenerate_ok && (!(f.v_left > 0.0) || !(f.v_right > 0.0))) {
            throw InvalidRate("rate field must be positive at the endpoints");
        }
    }
    double lo = std::min(f.v_left, f.v_right);
    double hi = std::max(f.v_left, f.v_right);
    for (double v : f.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    f.min_v = lo;
    f.max_v = hi;
    return f;
}

}  // namespace

RateField build_rate_field(const RatePreset& preset, const Grid& grid) {
    const std::vector<double> c = preset.normalized_coeffs();
    const double mass = poly_integral01(c);
    if (std::abs(mass - 1.0) > 1e-8) {
        throw InvalidRate("rate normalization off by more than 1e-8");
    }

    RateField f;
    f.degenerate_ok = (preset.kind == RatePreset::Kind::degenerate);
    f.values.resize(static_cast<size_t>(grid.n_interior));
    const int n = grid.n_interior;
    if (preset.symmetric()) {
        // evaluate one half and mirror so symmetric presets are symmetric
        // node-for-node in floating point
        for (int i = 1; 2 * i <= n + 1; ++i) {
            const double v = poly_eval(c, grid.nodes[static_cast<size_t>(i) - 1]);
            f.values[static_cast<size_t>(i) - 1] = v;
            f.values[static_cast<size_t>(n - i)] = v;
        }
    } else {
        for (int i = 1; i <= n; ++i) {
            f.values[static_cast<size_t>(i) - 1] =
                poly_eval(c, grid.nodes[static_cast<size_t>(i) - 1]);
        }
    }
    f.v_left = poly_eval(c, 0.0);
    f.v_right = poly_eval(c, 1.0);
    f.d1_left = poly_deriv_at(c, 0.0, 1);
    f.d1_right = poly_deriv_at(c, 1.0, 1);
    f.d2_left = poly_deriv_at(c, 0.0, 2);
    f.d2_right = poly_deriv_at(c, 1.0, 2);

    f = finalize(std::move(f), grid, true);
    if (preset.kind == RatePreset::Kind::degenerate) {
        f.min_v = 0.0;  // boundary zeros are the true minimum
    }
    return f;
}

RateField build_rate_field_from_samples(std::vector<double> values, double v_left,
                                        double v_right, const Grid& grid,
                                        bool degenerate_ok) {
    if (static_cast<int>(values.size()) != grid.n_interior) {
        throw InvalidRate("sample count does not match the grid");
    }
    RateField f;
    f.values = std::move(values);
    f.v_left = v_left;
    f.v_right = v_right;
    f.degenerate_ok = degenerate_ok;

    // one-sided fourth-order differences for the endpoint derivatives
    const double h = grid.h;
    auto v = [&](int i) { return f.value(i); };
    const int m = grid.n_interior + 1;
    f.d1_left = (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) / (12.0 * h);
    f.d1_right = (25.0 * v(m) - 48.0 * v(m - 1) + 36.0 * v(m - 2) - 16.0 * v(m - 3) + 3.0 * v(m - 4)) / (12.0 * h);
    f.d2_left = (45.0 * v(0) - 154.0 * v(1) + 214.0 * v(2) - 156.0 * v(3) + 61.0 * v(4) - 10.0 * v(5)) / (12.0 * h * h);
    f.d2_right = (45.0 * v(m) - 154.0 * v(m - 1) + 214.0 * v(m - 2) - 156.0 * v(m - 3) + 61.0 * v(m - 4) - 10.0 * v(m - 5)) / (12.0 * h * h);

    // endpoint-corrected trapezoid mass
    double trapz = 0.5 * (f.v_left + f.v_right);
    for (double x : f.values) trapz += x;
    trapz *= h;
    const double mass = trapz + h * h / 12.0 * (f.d1_left - f.d1_right);
    if (std::abs(mass - 1.0) > 1e-8) {
        throw InvalidRate("tabulated rate field mass differs from 1 by more than 1e-8");
    }
    return finalize(std::move(f), grid, true);
}

RateField reflect(const RateField& field) {
    RateField r = field;
    std::reverse(r.values.begin(), r.values.end());
    std::swap(r.v_left, r.v_right);
    r.d1_left = -field.d1_right;
    r.d1_right = -field.d1_left;
    r.d2_left = field.d2_right;
    r.d2_right = field.d2_left;
    return r;
}

}  // namespace jumplab
