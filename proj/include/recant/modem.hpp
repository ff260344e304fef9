// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "recant/channel.hpp"

namespace recant {

// Unit-energy symbol set with distinct bit labels. M = 1 covers the pure
// pattern-keying mode where all bits ride on the pattern index.
struct Constellation {
    std::vector<std::complex<double>> points;
    std::vector<std::string> bit_labels;
    std::string name;

    std::size_t order() const { return points.size(); }
    std::size_t bits_per_symbol() const;
    void validate() const;

    enum class Labeling { natural, gray };
    static Constellation bpsk(Labeling labeling = Labeling::natural);
    static Constellation qpsk(Labeling labeling = Labeling::natural);
    static Constellation ssk(); // single symbol 1+0j, zero bits
    static Constellation by_name(const std::string& name,
                                 Labeling labeling = Labeling::natural);
};

// Transmit hypothesis: pattern index and symbol index, both 0-based.
struct TxWord {
    std::size_t pattern = 0;
    std::size_t symbol = 0;

    bool operator==(const TxWord&) const = default;
};

struct RxObservation {
    std::vector<std::complex<double>> y;
    double snr = 1.0; // linear, per receive antenna
};

std::size_t bits_per_word(std::size_t n_patterns, const Constellation& c);

// First log2(P) bits pick the pattern (natural binary), the rest select the
// symbol by label match.
TxWord map_bits(const std::string& bits, std::size_t n_patterns, const Constellation& c);
std::string demap(const TxWord& w, std::size_t n_patterns, const Constellation& c);

// Bit differences between the labels of two hypotheses.
std::size_t bit_distance(const TxWord& a, const TxWord& b, std::size_t n_patterns,
                         const Constellation& c);

// y = sqrt(snr) * H(:, pattern) * x + noise. Noise entries are the caller's
// (CN(0,1) draws, or zeros for noiseless checks).
RxObservation transmit(const ChannelMatrix& h, const TxWord& w, double snr,
                       const Constellation& c,
                       const std::vector<std::complex<double>>& noise);

// Same, reusing the observation buffer (hot path of the simulator).
void transmit_into(const ChannelMatrix& h, const TxWord& w, double snr, const Constellation& c,
                   const std::vector<std::complex<double>>& noise, RxObservation& obs);

// Maximum-likelihood search over all (pattern, symbol) pairs under full CSI;
// ties resolve to the lowest pattern index, then the lowest symbol index.
TxWord ml_detect(const RxObservation& obs, const ChannelMatrix& h, const Constellation& c);

// The metric behind ml_detect, exposed for the equivalence checks.
double ml_metric(const RxObservation& obs, const ChannelMatrix& h, const Constellation& c,
                 const TxWord& w);

} // namespace recant
