// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace recant {

// Tabulated far-field pattern of one antenna configuration: linear power
// gain G and phase (radians) on an elevation x azimuth grid. Elevation
// runs over [0, pi], azimuth over (-pi, pi] and wraps periodically.
// Immutable after construction; safe to share between threads.
class RadiationPattern {
public:
    RadiationPattern(std::vector<double> theta_grid, std::vector<double> phi_grid,
                     std::vector<double> gain, std::vector<double> phase,
                     std::string label = {});

    // sqrt(G) * exp(j*Omega) at (theta, phi). Gain and phase are interpolated
    // bilinearly; the phase is unwrapped inside each cell so the complex value
    // is continuous across cell edges. Azimuth wraps; elevation queries beyond
    // the grid (past half a boundary cell) raise std::domain_error.
    std::complex<double> eval(double theta, double phi) const;

    // Linear power gain at (theta, phi), same interpolation as eval().
    double gain_at(double theta, double phi) const;

    std::size_t n_theta() const { return theta_.size(); }
    std::size_t n_phi() const { return phi_.size(); }
    const std::vector<double>& theta_grid() const { return theta_; }
    const std::vector<double>& phi_grid() const { return phi_; }
    double gain_node(std::size_t i, std::size_t j) const { return gain_[i * phi_.size() + j]; }
    double phase_node(std::size_t i, std::size_t j) const { return phase_[i * phi_.size() + j]; }
    const std::string& label() const { return label_; }

    static RadiationPattern isotropic(std::string label = "isotropic");

private:
    struct CellRef {
        std::size_t i, j;   // lower-corner node indices
        double t, u;        // fractional position in theta / phi
        double phi_step;    // azimuth cell width (handles the wrap cell)
    };
    CellRef locate(double theta, double phi) const;

    std::vector<double> theta_, phi_;
    std::vector<double> gain_, phase_; // row-major, n_theta x n_phi
    std::string label_;
};

// Feed weights of the 4x4 reconfigurable array: +1 / -1 select phase 0 or
// 180 degrees at unit amplitude, 0 switches the element off.
class ExcitationMatrix {
public:
    explicit ExcitationMatrix(const std::array<std::array<int, 4>, 4>& entries,
                              std::string name = {});

    int at(std::size_t row, std::size_t col) const { return entries_[row][col]; }
    std::size_t active_elements() const;
    const std::string& name() const { return name_; }

    // Quarter-turn (counterclockwise) of the feed layout.
    ExcitationMatrix rotated90() const;

    // The five feed layouts of the fabricated prototype.
    static ExcitationMatrix preset(char id); // 'A'..'E'

    // "A", "B90", "C180", ... : preset plus optional rotation in degrees.
    static ExcitationMatrix named(const std::string& spec);

private:
    std::array<std::array<int, 4>, 4> entries_;
    std::string name_;
};

// Far-field pattern of the 4x4 planar array with the given feed weights and
// element spacing (in wavelengths), tabulated on a regular grid. The gain is
// |AF|^2 / n_active, so a single fed element gives unit gain everywhere.
RadiationPattern synth_array_pattern(const ExcitationMatrix& ex, double spacing_wl,
                                     double grid_step_deg = 1.0);

// Complex array factor itself; exposed for oracles and diagnostics.
std::complex<double> array_factor(const ExcitationMatrix& ex, double spacing_wl,
                                  double theta, double phi);

// Text pattern file (header "RP v1 <n_theta> <n_phi>", grids in degrees,
// gain block in dB, phase block in degrees; '#' starts a comment).
RadiationPattern load_pattern(const std::string& path);
void save_pattern(const RadiationPattern& rp, const std::string& path);

// Squared distance between the two weighted transmit hypotheses
// |g_q(theta,phi) x_n - g_p(theta,phi) x_m|^2 at one departure angle.
double pair_distance_sq(const RadiationPattern& rp_p, const RadiationPattern& rp_q,
                        std::complex<double> x_m, std::complex<double> x_n,
                        double theta, double phi);

struct Codebook {
    std::vector<RadiationPattern> patterns;

    std::size_t size() const { return patterns.size(); }
    const RadiationPattern& operator[](std::size_t p) const { return patterns[p]; }
};

} // namespace recant
