// SPDX-License-Identifier: Apache-2.0
#include "recant/angular.hpp"

#include <cmath>
#include <stdexcept>

#include "recant/quadrature.hpp"

namespace recant {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kInvCdfSize = 4096;
constexpr std::size_t kCdfGrid = 32768;
} // namespace

AngularDistribution::AngularDistribution(Kind kind, double p0, double p1, double lo, double hi)
    : kind_(kind), p0_(p0), p1_(p1), lo_(lo), hi_(hi) {}

AngularDistribution AngularDistribution::trunc_laplacian(double theta0, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("trunc_laplacian: sigma must be > 0");
    if (theta0 <= 0.0 || theta0 > kPi)
        throw std::invalid_argument("trunc_laplacian: theta0 must lie in (0, pi]");
    AngularDistribution d(Kind::trunc_laplacian, theta0, sigma, 0.0, kPi);
    d.build_tables();
    return d;
}

AngularDistribution AngularDistribution::von_mises(double mu, double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("von_mises: kappa must be >= 0");
    if (mu <= -kPi || mu > kPi) throw std::invalid_argument("von_mises: mu must lie in (-pi, pi]");
    AngularDistribution d(Kind::von_mises, mu, kappa, -kPi, kPi);
    d.build_tables();
    return d;
}

AngularDistribution AngularDistribution::trunc_gaussian(double phi0, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("trunc_gaussian: sigma must be > 0");
    if (phi0 <= -kPi || phi0 > kPi)
        throw std::invalid_argument("trunc_gaussian: phi0 must lie in (-pi, pi]");
    AngularDistribution d(Kind::trunc_gaussian, phi0, sigma, -kPi, kPi);
    d.build_tables();
    return d;
}

AngularDistribution AngularDistribution::uniform(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("uniform: need a < b");
    if (a < -kPi - 1e-12 || b > kPi + 1e-12)
        throw std::invalid_argument("uniform: [a, b] must lie within (-pi, pi]");
    AngularDistribution d(Kind::uniform, a, b, a, b);
    d.build_tables();
    return d;
}

double AngularDistribution::kink() const {
    return kind_ == Kind::trunc_laplacian ? p0_ : std::nan("");
}

double AngularDistribution::unnormalized(double x) const {
    switch (kind_) {
    case Kind::trunc_laplacian:
        return std::exp(-std::sqrt(2.0) * std::abs(x - p0_) / p1_) * std::sin(x);
    case Kind::von_mises:
        return std::exp(p1_ * std::cos(x - p0_));
    case Kind::trunc_gaussian: {
        const double t = (x - p0_) / (std::sqrt(2.0) * p1_);
        return std::exp(-t * t);
    }
    case Kind::uniform:
        return 1.0;
    }
    return 0.0;
}

double AngularDistribution::pdf(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    if (kind_ == Kind::trunc_laplacian && x <= 0.0) return 0.0;
    return unnormalized(x) / norm_;
}

void AngularDistribution::build_tables() {
    // Normalization: von Mises has the exact constant, the uniform is
    // trivial, the truncated laws are integrated numerically (the printed
    // closed forms are unreliable). Split at the |x - x0| kink.
    switch (kind_) {
    case Kind::von_mises:
        norm_ = 2.0 * kPi * std::cyl_bessel_i(0.0, p1_);
        break;
    case Kind::uniform:
        norm_ = hi_ - lo_;
        break;
    default: {
        auto f = [this](double x) { return unnormalized(x); };
        const double split = std::min(std::max(p0_, lo_), hi_);
        norm_ = integrate(f, lo_, split, 128) + integrate(f, split, hi_, 128);
        break;
    }
    }

    // Equiprobable inverse-CDF table from a dense trapezoid CDF.
    std::vector<double> x(kCdfGrid + 1), cdf(kCdfGrid + 1);
    const double h = (hi_ - lo_) / static_cast<double>(kCdfGrid);
    double acc = 0.0;
    double prev = pdf(lo_);
    x[0] = lo_;
    cdf[0] = 0.0;
    for (std::size_t i = 1; i <= kCdfGrid; ++i) {
        x[i] = lo_ + static_cast<double>(i) * h;
        const double cur = pdf(x[i]);
        acc += 0.5 * (prev + cur) * h;
        cdf[i] = acc;
        prev = cur;
    }
    for (auto& c : cdf) c /= acc; // close the tiny trapezoid defect

    auto inv = std::make_shared<std::vector<double>>(kInvCdfSize);
    std::size_t j = 0;
    for (std::size_t i = 0; i < kInvCdfSize; ++i) {
        const double target = static_cast<double>(i) / static_cast<double>(kInvCdfSize - 1);
        while (j + 1 < cdf.size() && cdf[j + 1] < target) ++j;
        const double c0 = cdf[j], c1 = cdf[std::min(j + 1, kCdfGrid)];
        const double w = c1 > c0 ? (target - c0) / (c1 - c0) : 0.0;
        (*inv)[i] = x[j] + w * h;
    }
    inv->front() = lo_;
    inv->back() = hi_;
    inv_cdf_ = std::move(inv);
}

} // namespace recant
