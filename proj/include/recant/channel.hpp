// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "recant/angular.hpp"
#include "recant/pattern.hpp"
#include "recant/rng.hpp"

namespace recant {

// Single-cluster ray channel: K rays with i.i.d. CN(0,1) fading weights and
// departure/arrival angles from the configured laws. The receiver is a
// uniform linear array of omnidirectional unit-gain elements at spacing d.
struct ChannelModel {
    std::size_t rays = 64;       // K
    double wavelength = 0.125;   // meters
    double rx_spacing = 0.0625;  // meters (lambda/2 by default)
    AnglePair aod;
    AnglePair aoa;

    void validate() const;
};

struct ChannelMatrix {
    std::size_t n_rx = 0;
    std::size_t n_patterns = 0;
    std::vector<std::complex<double>> h; // row-major n_rx x n_patterns

    std::complex<double>& at(std::size_t n, std::size_t p) { return h[n * n_patterns + p]; }
    const std::complex<double>& at(std::size_t n, std::size_t p) const {
        return h[n * n_patterns + p];
    }
};

// |k| = 2 pi / lambda.
double wavevector_norm(double wavelength);

// Scratch buffers for the per-ray transmit factors; lets the Monte Carlo
// loop draw channels without allocating.
struct ChannelScratch {
    std::vector<std::complex<double>> tx;
};

// Draw H with one shared ray set for every (receive antenna, pattern) entry.
// Per-ray stream consumption order (part of the reproducibility contract):
// fading weight (2 uniforms), AoD theta, AoD phi, AoA theta, AoA phi.
void draw_channel_into(const ChannelModel& model, const Codebook& codebook, std::size_t n_rx,
                       Rng& rng, ChannelMatrix& out, ChannelScratch& scratch);

ChannelMatrix draw_channel(const ChannelModel& model, const Codebook& codebook, std::size_t n_rx,
                           Rng& rng);

} // namespace recant
