// SPDX-License-Identifier: Apache-2.0
#include "recant/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace recant {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

double wrap_pm_pi(double x) {
    x = std::fmod(x + kPi, kTwoPi);
    if (x < 0.0) x += kTwoPi;
    return x - kPi;
}

// Difference reduced to (-pi, pi]; used for cell-local phase unwrapping.
double wrap_diff(double d) { return d - kTwoPi * std::floor(d / kTwoPi + 0.5); }

void check_grid(const std::vector<double>& g, double lo, double hi, const char* what) {
    if (g.size() < 2) throw std::invalid_argument(std::string(what) + " grid needs >= 2 samples");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i]))
            throw std::invalid_argument(std::string(what) + " grid has a non-finite sample");
        if (i > 0 && g[i] <= g[i - 1])
            throw std::invalid_argument(std::string(what) + " grid must be strictly increasing");
    }
    const double slack = 1e-9;
    if (g.front() < lo - slack || g.back() > hi + slack)
        throw std::invalid_argument(std::string(what) + " grid outside its angular range");
}

} // namespace

RadiationPattern::RadiationPattern(std::vector<double> theta_grid, std::vector<double> phi_grid,
                                   std::vector<double> gain, std::vector<double> phase,
                                   std::string label)
    : theta_(std::move(theta_grid)), phi_(std::move(phi_grid)),
      gain_(std::move(gain)), phase_(std::move(phase)), label_(std::move(label)) {
    check_grid(theta_, 0.0, kPi, "theta");
    check_grid(phi_, -kPi, kPi, "phi");
    const std::size_t n = theta_.size() * phi_.size();
    if (gain_.size() != n || phase_.size() != n)
        throw std::invalid_argument("gain/phase shape must be n_theta x n_phi");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(gain_[i]) || gain_[i] < 0.0)
            throw std::invalid_argument("gain entries must be finite and >= 0");
        if (!std::isfinite(phase_[i]))
            throw std::invalid_argument("phase entries must be finite");
    }
}

RadiationPattern RadiationPattern::isotropic(std::string label) {
    std::vector<double> th{0.0, kPi}, ph{-kPi, 0.0};
    std::vector<double> g(4, 1.0), om(4, 0.0);
    return RadiationPattern(std::move(th), std::move(ph), std::move(g), std::move(om),
                            std::move(label));
}

RadiationPattern::CellRef RadiationPattern::locate(double theta, double phi) const {
    // Elevation: clamp within half a boundary cell, error beyond that.
    const double lo = theta_.front(), hi = theta_.back();
    const double lo_slack = 0.5 * (theta_[1] - theta_[0]);
    const double hi_slack = 0.5 * (hi - theta_[theta_.size() - 2]);
    if (theta < lo - lo_slack || theta > hi + hi_slack)
        throw std::domain_error("pattern query outside elevation grid (theta=" +
                                std::to_string(theta) + ", pattern '" + label_ + "')");
    theta = std::clamp(theta, lo, hi);
    auto it = std::upper_bound(theta_.begin(), theta_.end(), theta);
    std::size_t i = static_cast<std::size_t>(std::distance(theta_.begin(), it));
    i = std::clamp<std::size_t>(i, 1, theta_.size() - 1) - 1;
    const double t = (theta - theta_[i]) / (theta_[i + 1] - theta_[i]);

    // Azimuth is periodic; queries between the last and first node use the
    // wrap cell whose width closes the circle.
    phi = wrap_pm_pi(phi);
    if (phi < phi_.front()) phi += kTwoPi;
    CellRef c;
    c.i = i;
    c.t = t;
    if (phi >= phi_.back()) {
        c.j = phi_.size() - 1;
        c.phi_step = phi_.front() + kTwoPi - phi_.back();
        c.u = c.phi_step > 0.0 ? (phi - phi_.back()) / c.phi_step : 0.0;
        if (c.u > 1.0) c.u = 1.0;
    } else {
        auto jp = std::upper_bound(phi_.begin(), phi_.end(), phi);
        std::size_t j = static_cast<std::size_t>(std::distance(phi_.begin(), jp));
        j = std::clamp<std::size_t>(j, 1, phi_.size() - 1) - 1;
        c.j = j;
        c.phi_step = phi_[j + 1] - phi_[j];
        c.u = (phi - phi_[j]) / c.phi_step;
    }
    return c;
}

std::complex<double> RadiationPattern::eval(double theta, double phi) const {
    const CellRef c = locate(theta, phi);
    const std::size_t np = phi_.size();
    const std::size_t j1 = (c.j + 1) % np;
    const double g00 = gain_[c.i * np + c.j], g01 = gain_[c.i * np + j1];
    const double g10 = gain_[(c.i + 1) * np + c.j], g11 = gain_[(c.i + 1) * np + j1];
    const double g = (1.0 - c.t) * ((1.0 - c.u) * g00 + c.u * g01) +
                     c.t * ((1.0 - c.u) * g10 + c.u * g11);

    const double p00 = phase_[c.i * np + c.j], p01 = phase_[c.i * np + j1];
    const double p10 = phase_[(c.i + 1) * np + c.j], p11 = phase_[(c.i + 1) * np + j1];
    // Unwrap along each row, then between rows; every shared edge then
    // interpolates the same branch from both neighbouring cells.
    const double row0 = p00 + c.u * wrap_diff(p01 - p00);
    const double row1 = p10 + c.u * wrap_diff(p11 - p10);
    const double ph = row0 + c.t * wrap_diff(row1 - row0);

    return std::polar(std::sqrt(g), ph);
}

double RadiationPattern::gain_at(double theta, double phi) const {
    const CellRef c = locate(theta, phi);
    const std::size_t np = phi_.size();
    const std::size_t j1 = (c.j + 1) % np;
    const double g00 = gain_[c.i * np + c.j], g01 = gain_[c.i * np + j1];
    const double g10 = gain_[(c.i + 1) * np + c.j], g11 = gain_[(c.i + 1) * np + j1];
    return (1.0 - c.t) * ((1.0 - c.u) * g00 + c.u * g01) +
           c.t * ((1.0 - c.u) * g10 + c.u * g11);
}

ExcitationMatrix::ExcitationMatrix(const std::array<std::array<int, 4>, 4>& entries,
                                   std::string name)
    : entries_(entries), name_(std::move(name)) {
    bool any = false;
    for (const auto& row : entries_)
        for (int e : row) {
            if (e < -1 || e > 1)
                throw std::invalid_argument("excitation entries must be in {-1, 0, +1}");
            any = any || e != 0;
        }
    if (!any) throw std::invalid_argument("excitation matrix has no active element");
}

std::size_t ExcitationMatrix::active_elements() const {
    std::size_t n = 0;
    for (const auto& row : entries_)
        for (int e : row) n += e != 0;
    return n;
}

ExcitationMatrix ExcitationMatrix::rotated90() const {
    std::array<std::array<int, 4>, 4> r{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i][j] = entries_[j][3 - i];
    return ExcitationMatrix(r, name_.empty() ? "" : name_ + "+90");
}

ExcitationMatrix ExcitationMatrix::preset(char id) {
    switch (id) {
    case 'A':
        return ExcitationMatrix({{{0, 1, 1, 0}, {0, 1, 1, 0}, {0, -1, -1, 0}, {0, -1, -1, 0}}}, "A");
    case 'B':
        return ExcitationMatrix({{{0, 0, 1, 1}, {0, 0, 1, 1}, {-1, -1, 0, 0}, {-1, -1, 0, 0}}}, "B");
    case 'C':
        return ExcitationMatrix({{{0, 0, 0, 0}, {-1, -1, 1, 1}, {-1, -1, 1, 1}, {0, 0, 0, 0}}}, "C");
    case 'D':
        return ExcitationMatrix({{{-1, -1, 0, 0}, {-1, -1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}}}, "D");
    case 'E':
        return ExcitationMatrix({{{0, -1, -1, 0}, {0, -1, -1, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}}}, "E");
    default:
        throw std::invalid_argument(std::string("unknown excitation preset '") + id + "'");
    }
}

ExcitationMatrix ExcitationMatrix::named(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("empty excitation name");
    ExcitationMatrix ex = preset(spec[0]);
    if (spec.size() > 1) {
        int deg = 0;
        try {
            deg = std::stoi(spec.substr(1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad excitation name '" + spec +
                                        "' (expected e.g. A, B90, C180, D270)");
        }
        if (deg % 90 != 0)
            throw std::invalid_argument("excitation rotation must be a multiple of 90 degrees");
        int quarter_turns = ((deg / 90) % 4 + 4) % 4;
        for (int k = 0; k < quarter_turns; ++k) ex = ex.rotated90();
        ex = ExcitationMatrix(
            {{{ex.at(0, 0), ex.at(0, 1), ex.at(0, 2), ex.at(0, 3)},
              {ex.at(1, 0), ex.at(1, 1), ex.at(1, 2), ex.at(1, 3)},
              {ex.at(2, 0), ex.at(2, 1), ex.at(2, 2), ex.at(2, 3)},
              {ex.at(3, 0), ex.at(3, 1), ex.at(3, 2), ex.at(3, 3)}}},
            spec);
    }
    return ex;
}

std::complex<double> array_factor(const ExcitationMatrix& ex, double spacing_wl,
                                  double theta, double phi) {
    // Elements on a planar grid in the x-y plane, positions centred on the
    // array so the phase reference is the geometric centre.
    const double u = kTwoPi * spacing_wl * std::sin(theta) * std::cos(phi);
    const double v = kTwoPi * spacing_wl * std::sin(theta) * std::sin(phi);
    std::complex<double> af = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const int w = ex.at(r, c);
            if (w == 0) continue;
            const double ph = (r - 1.5) * u + (c - 1.5) * v;
            af += std::polar(static_cast<double>(std::abs(w)), ph + (w < 0 ? kPi : 0.0));
        }
    return af;
}

RadiationPattern synth_array_pattern(const ExcitationMatrix& ex, double spacing_wl,
                                     double grid_step_deg) {
    if (spacing_wl <= 0.0) throw std::invalid_argument("element spacing must be > 0");
    if (grid_step_deg <= 0.0 || grid_step_deg > 30.0)
        throw std::invalid_argument("grid step out of range");
    const double step = grid_step_deg * kPi / 180.0;
    const std::size_t n_theta = static_cast<std::size_t>(std::lround(kPi / step)) + 1;
    const std::size_t n_phi = static_cast<std::size_t>(std::lround(kTwoPi / step));

    std::vector<double> th(n_theta), ph(n_phi);
    for (std::size_t i = 0; i < n_theta; ++i)
        th[i] = std::min(kPi, static_cast<double>(i) * step);
    for (std::size_t j = 0; j < n_phi; ++j) ph[j] = -kPi + (static_cast<double>(j) + 1.0) * step;

    const double norm = 1.0 / static_cast<double>(ex.active_elements());
    std::vector<double> gain(n_theta * n_phi), phase(n_theta * n_phi);
    for (std::size_t i = 0; i < n_theta; ++i)
        for (std::size_t j = 0; j < n_phi; ++j) {
            const std::complex<double> af = array_factor(ex, spacing_wl, th[i], ph[j]);
            gain[i * n_phi + j] = std::norm(af) * norm;
            phase[i * n_phi + j] = std::arg(af);
        }
    std::string label = ex.name().empty() ? "synth" : "synth:" + ex.name();
    return RadiationPattern(std::move(th), std::move(ph), std::move(gain), std::move(phase),
                            std::move(label));
}

double pair_distance_sq(const RadiationPattern& rp_p, const RadiationPattern& rp_q,
                        std::complex<double> x_m, std::complex<double> x_n,
                        double theta, double phi) {
    return std::norm(rp_q.eval(theta, phi) * x_n - rp_p.eval(theta, phi) * x_m);
}

namespace {

struct TokenReader {
    explicit TokenReader(std::istream& in) : in_(in) {}

    // Next whitespace-separated token, skipping blank lines and '#' comments.
    bool next(std::string& tok) {
        for (;;) {
            if (!(line_stream_ >> tok)) {
                if (!std::getline(in_, raw_line_)) return false;
                ++line_no_;
                const auto hash = raw_line_.find('#');
                if (hash != std::string::npos) raw_line_.erase(hash);
                line_stream_.clear();
                line_stream_.str(raw_line_);
                continue;
            }
            return true;
        }
    }

    double next_number(const char* what) {
        std::string tok;
        if (!next(tok)) fail(std::string("unexpected end of file while reading ") + what);
        if (tok == "-inf" || tok == "-Inf" || tok == "-INF")
            return -std::numeric_limits<double>::infinity();
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            fail("bad numeric token '" + tok + "' while reading " + what);
        }
        return 0.0; // unreachable
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("pattern file line " + std::to_string(line_no_) + ": " + msg);
    }

    int line() const { return line_no_; }

private:
    std::istream& in_;
    std::istringstream line_stream_;
    std::string raw_line_;
    int line_no_ = 0;
};

} // namespace

RadiationPattern load_pattern(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file '" + path + "'");
    TokenReader rd(in);

    std::string tag, ver;
    if (!rd.next(tag) || tag != "RP") rd.fail("expected header 'RP v1 <n_theta> <n_phi>'");
    if (!rd.next(ver) || ver != "v1") rd.fail("unsupported pattern format version");
    const int n_theta = static_cast<int>(rd.next_number("n_theta"));
    const int n_phi = static_cast<int>(rd.next_number("n_phi"));
    if (n_theta < 2 || n_phi < 2) rd.fail("grid sizes must be >= 2");

    const double d2r = kPi / 180.0;
    std::vector<double> th(n_theta), ph(n_phi);
    for (auto& v : th) v = rd.next_number("theta grid") * d2r;
    for (int i = 1; i < n_theta; ++i)
        if (th[i] <= th[i - 1]) rd.fail("theta grid must be strictly increasing");
    for (auto& v : ph) v = rd.next_number("phi grid") * d2r;
    for (int j = 1; j < n_phi; ++j)
        if (ph[j] <= ph[j - 1]) rd.fail("phi grid must be strictly increasing");

    std::vector<double> gain(static_cast<std::size_t>(n_theta) * n_phi);
    std::vector<double> phase(gain.size());
    for (auto& v : gain) {
        const double db = rd.next_number("gain (dB)");
        if (std::isnan(db)) rd.fail("NaN gain entry");
        v = db == -std::numeric_limits<double>::infinity() ? 0.0 : std::pow(10.0, db / 10.0);
    }
    for (auto& v : phase) {
        const double deg = rd.next_number("phase (deg)");
        if (std::isnan(deg)) rd.fail("NaN phase entry");
        v = deg * d2r;
    }

    std::string leftover;
    if (rd.next(leftover)) rd.fail("trailing data '" + leftover + "'");

    try {
        std::string label = path;
        const auto slash = label.find_last_of("/\\");
        if (slash != std::string::npos) label.erase(0, slash + 1);
        return RadiationPattern(std::move(th), std::move(ph), std::move(gain), std::move(phase),
                                std::move(label));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("pattern file line " + std::to_string(rd.line()) + ": " +
                                 e.what());
    }
}

void save_pattern(const RadiationPattern& rp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pattern file '" + path + "'");
    const double r2d = 180.0 / kPi;
    out << "RP v1 " << rp.n_theta() << ' ' << rp.n_phi() << '\n';
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.10g", v);
        out << buf;
    };
    for (std::size_t i = 0; i < rp.n_theta(); ++i) {
        put(rp.theta_grid()[i] * r2d);
        out << (i + 1 == rp.n_theta() ? '\n' : ' ');
    }
    for (std::size_t j = 0; j < rp.n_phi(); ++j) {
        put(rp.phi_grid()[j] * r2d);
        out << (j + 1 == rp.n_phi() ? '\n' : ' ');
    }
    for (std::size_t i = 0; i < rp.n_theta(); ++i)
        for (std::size_t j = 0; j < rp.n_phi(); ++j) {
            const double g = rp.gain_node(i, j);
            if (g <= 0.0)
                out << "-inf";
            else
                put(10.0 * std::log10(g));
            out << (j + 1 == rp.n_phi() ? '\n' : ' ');
        }
    for (std::size_t i = 0; i < rp.n_theta(); ++i)
        for (std::size_t j = 0; j < rp.n_phi(); ++j) {
            put(rp.phase_node(i, j) * r2d);
            out << (j + 1 == rp.n_phi() ? '\n' : ' ');
        }
}

} // namespace recant
