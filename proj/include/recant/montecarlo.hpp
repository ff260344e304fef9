// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "recant/channel.hpp"
#include "recant/modem.hpp"

namespace recant {

enum class Fading {
    per_symbol, // fresh ray set for every transmitted word
    fixed       // one ray set per SNR point, shared by all trials
};

// Full description of one link-level BER experiment.
struct SmConfig {
    std::shared_ptr<const Codebook> codebook;
    ChannelModel channel;
    std::size_t n_rx = 1;
    Constellation constellation;
    std::vector<double> snr_grid_db;
    std::size_t max_trials = 200000;
    std::size_t target_errors = 200;
    std::uint64_t seed = 1;
    Fading fading = Fading::per_symbol;
    std::size_t threads = 1; // 0 = hardware concurrency

    void validate() const;
};

struct BerPoint {
    double snr_db = 0.0;
    std::size_t trials = 0;
    std::size_t bit_errors = 0;
    double ber = 0.0;
    double ci_lo = 0.0; // 95% Wilson interval on the bit error probability
    double ci_hi = 0.0;
};

struct BerCurve {
    std::vector<BerPoint> points;

    // "snr_db,trials,bit_errors,ber,ci_lo,ci_hi" rows.
    std::string to_csv() const;
};

// 95% Wilson score interval for e errors in n Bernoulli draws.
std::pair<double, double> wilson_interval(std::size_t errors, std::size_t n);

// Monte Carlo BER sweep. Trials run in fixed blocks with per-block random
// substreams and the stopping rule is evaluated on whole waves of blocks,
// so the output is bit-identical for a given seed regardless of the thread
// count.
BerCurve simulate_ber(const SmConfig& cfg);

// Least-squares slope of log10(BER) versus log10(SNR) over the dB window,
// negated; the high-SNR value estimates the diversity order.
double estimate_diversity(const BerCurve& curve, double window_lo_db, double window_hi_db);

} // namespace recant
