// SPDX-License-Identifier: Apache-2.0
#include "recant/modem.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace recant {

namespace {

bool is_pow2(std::size_t v) { return v > 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) {
    std::size_t b = 0;
    while ((std::size_t{1} << b) < v) ++b;
    return b;
}

std::string natural_label(std::size_t index, std::size_t bits) {
    std::string s(bits, '0');
    for (std::size_t i = 0; i < bits; ++i)
        if (index & (std::size_t{1} << (bits - 1 - i))) s[i] = '1';
    return s;
}

std::size_t gray_code(std::size_t i) { return i ^ (i >> 1); }

} // namespace

std::size_t Constellation::bits_per_symbol() const { return log2_exact(points.size()); }

void Constellation::validate() const {
    if (!is_pow2(points.size()))
        throw std::invalid_argument("constellation order must be a power of two");
    if (bit_labels.size() != points.size())
        throw std::invalid_argument("constellation needs one label per point");
    const std::size_t bits = bits_per_symbol();
    std::set<std::string> seen;
    double energy = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (bit_labels[i].size() != bits)
            throw std::invalid_argument("constellation label length mismatch");
        if (!seen.insert(bit_labels[i]).second)
            throw std::invalid_argument("constellation labels must be distinct");
        energy += std::norm(points[i]);
    }
    if (std::abs(energy / static_cast<double>(points.size()) - 1.0) > 1e-9)
        throw std::invalid_argument("constellation must have unit average energy");
}

Constellation Constellation::bpsk(Labeling labeling) {
    Constellation c;
    c.name = "bpsk";
    c.points = {{1.0, 0.0}, {-1.0, 0.0}};
    for (std::size_t i = 0; i < 2; ++i)
        c.bit_labels.push_back(
            natural_label(labeling == Labeling::gray ? gray_code(i) : i, 1));
    return c;
}

Constellation Constellation::qpsk(Labeling labeling) {
    Constellation c;
    c.name = "qpsk";
    const double s = 1.0 / std::sqrt(2.0);
    c.points = {{s, s}, {-s, s}, {-s, -s}, {s, -s}};
    for (std::size_t i = 0; i < 4; ++i)
        c.bit_labels.push_back(
            natural_label(labeling == Labeling::gray ? gray_code(i) : i, 2));
    return c;
}

Constellation Constellation::ssk() {
    Constellation c;
    c.name = "ssk";
    c.points = {{1.0, 0.0}};
    c.bit_labels = {""};
    return c;
}

Constellation Constellation::by_name(const std::string& name, Labeling labeling) {
    if (name == "bpsk") return bpsk(labeling);
    if (name == "qpsk") return qpsk(labeling);
    if (name == "ssk") return ssk();
    throw std::invalid_argument("unknown constellation '" + name + "'");
}

std::size_t bits_per_word(std::size_t n_patterns, const Constellation& c) {
    if (!is_pow2(n_patterns))
        throw std::invalid_argument("pattern count must be a power of two");
    return log2_exact(n_patterns) + c.bits_per_symbol();
}

TxWord map_bits(const std::string& bits, std::size_t n_patterns, const Constellation& c) {
    const std::size_t p_bits = log2_exact(n_patterns);
    const std::size_t s_bits = c.bits_per_symbol();
    if (!is_pow2(n_patterns))
        throw std::invalid_argument("pattern count must be a power of two");
    if (bits.size() != p_bits + s_bits)
        throw std::invalid_argument("expected " + std::to_string(p_bits + s_bits) +
                                    " bits, got " + std::to_string(bits.size()));
    for (char b : bits)
        if (b != '0' && b != '1') throw std::invalid_argument("bit string may contain only 0/1");

    TxWord w;
    for (std::size_t i = 0; i < p_bits; ++i)
        w.pattern = (w.pattern << 1) | static_cast<std::size_t>(bits[i] == '1');

    const std::string sym_label = bits.substr(p_bits);
    for (std::size_t i = 0; i < c.order(); ++i)
        if (c.bit_labels[i] == sym_label) {
            w.symbol = i;
            return w;
        }
    throw std::invalid_argument("no constellation point labelled '" + sym_label + "'");
}

std::string demap(const TxWord& w, std::size_t n_patterns, const Constellation& c) {
    if (w.pattern >= n_patterns || w.symbol >= c.order())
        throw std::out_of_range("demap: word index out of range");
    return natural_label(w.pattern, log2_exact(n_patterns)) + c.bit_labels[w.symbol];
}

std::size_t bit_distance(const TxWord& a, const TxWord& b, std::size_t n_patterns,
                         const Constellation& c) {
    const std::string la = demap(a, n_patterns, c);
    const std::string lb = demap(b, n_patterns, c);
    std::size_t d = 0;
    for (std::size_t i = 0; i < la.size(); ++i) d += la[i] != lb[i];
    return d;
}

void transmit_into(const ChannelMatrix& h, const TxWord& w, double snr, const Constellation& c,
                   const std::vector<std::complex<double>>& noise, RxObservation& obs) {
    if (w.pattern >= h.n_patterns) throw std::out_of_range("transmit: pattern index out of range");
    if (w.symbol >= c.order()) throw std::out_of_range("transmit: symbol index out of range");
    if (noise.size() != h.n_rx) throw std::invalid_argument("transmit: noise size mismatch");
    obs.snr = snr;
    obs.y.resize(h.n_rx);
    const std::complex<double> amp = std::sqrt(snr) * c.points[w.symbol];
    for (std::size_t n = 0; n < h.n_rx; ++n) obs.y[n] = amp * h.at(n, w.pattern) + noise[n];
}

RxObservation transmit(const ChannelMatrix& h, const TxWord& w, double snr,
                       const Constellation& c,
                       const std::vector<std::complex<double>>& noise) {
    RxObservation obs;
    transmit_into(h, w, snr, c, noise, obs);
    return obs;
}

double ml_metric(const RxObservation& obs, const ChannelMatrix& h, const Constellation& c,
                 const TxWord& w) {
    const double root_snr = std::sqrt(obs.snr);
    double metric = 0.0;
    const std::complex<double> x = c.points[w.symbol];
    for (std::size_t n = 0; n < h.n_rx; ++n) {
        const std::complex<double> hx = root_snr * h.at(n, w.pattern) * x;
        metric += (std::conj(obs.y[n]) * hx).real() - 0.5 * std::norm(hx);
    }
    return metric;
}

TxWord ml_detect(const RxObservation& obs, const ChannelMatrix& h, const Constellation& c) {
    if (obs.y.size() != h.n_rx) throw std::invalid_argument("ml_detect: dimension mismatch");
    const double root_snr = std::sqrt(obs.snr);
    TxWord best;
    double best_metric = -std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < h.n_patterns; ++q)
        for (std::size_t s = 0; s < c.order(); ++s) {
            const std::complex<double> x = c.points[s];
            double metric = 0.0;
            for (std::size_t n = 0; n < h.n_rx; ++n) {
                const std::complex<double> hx = root_snr * h.at(n, q) * x;
                metric += (std::conj(obs.y[n]) * hx).real() - 0.5 * std::norm(hx);
            }
            if (metric > best_metric) {
                best_metric = metric;
                best = {q, s};
            }
        }
    return best;
}

} // namespace recant
