// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "recant/rng.hpp"

namespace recant {

// One of the four ray-angle laws of the channel model. Elevation laws live
// on (0, pi], azimuth laws on (-pi, pi]. Densities are normalized
// numerically where the textbook constant is unreliable; sampling runs
// through a precomputed inverse-CDF table so all four kinds share one
// reproducible code path.
class AngularDistribution {
public:
    enum class Kind { trunc_laplacian, von_mises, trunc_gaussian, uniform };

    // exp(-sqrt(2)|theta - theta0| / sigma) * sin(theta) on (0, pi]
    static AngularDistribution trunc_laplacian(double theta0, double sigma);
    // exp(kappa * cos(phi - mu)) / (2 pi I0(kappa)) on (-pi, pi]
    static AngularDistribution von_mises(double mu, double kappa);
    // exp(-((phi - phi0) / (sqrt(2) sigma))^2) on (-pi, pi]
    static AngularDistribution trunc_gaussian(double phi0, double sigma);
    // 1 / (b - a) on [a, b], [a, b] within (-pi, pi]
    static AngularDistribution uniform(double a, double b);

    // Density at x; zero outside the support.
    double pdf(double x) const;

    double sample(Rng& rng) const {
        const double u = rng.uniform01();
        const double pos = u * static_cast<double>(inv_cdf_->size() - 1);
        const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos),
                                                    inv_cdf_->size() - 2);
        const double frac = pos - static_cast<double>(i);
        return (*inv_cdf_)[i] + frac * ((*inv_cdf_)[i + 1] - (*inv_cdf_)[i]);
    }

    Kind kind() const { return kind_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    // Location of the density kink (truncated Laplacian only), else NaN;
    // quadrature code splits integration intervals there.
    double kink() const;

private:
    AngularDistribution(Kind kind, double p0, double p1, double lo, double hi);
    double unnormalized(double x) const;
    void build_tables();

    Kind kind_;
    double p0_, p1_; // (theta0, sigma) / (mu, kappa) / (phi0, sigma) / (a, b)
    double lo_, hi_;
    double norm_ = 1.0;
    std::shared_ptr<const std::vector<double>> inv_cdf_;
};

// AoD / AoA law pair (elevation, azimuth).
struct AnglePair {
    AngularDistribution theta;
    AngularDistribution phi;
};

} // namespace recant
