// SPDX-License-Identifier: Apache-2.0
#include "recant/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace recant {

namespace {

constexpr std::size_t kBlockTrials = 4096;
constexpr std::size_t kWaveBlocks = 16;
constexpr std::uint64_t kChannelStream = 0xffffffffffffffffull;
constexpr double kZ95 = 1.959963984540054;

struct BlockTotals {
    std::size_t trials = 0;
    std::size_t bit_errors = 0;
};

struct TrialContext {
    const SmConfig* cfg;
    std::size_t p_bits, s_bits, word_bits;
    std::vector<std::size_t> symbol_bits;    // symbol index -> label value
    std::vector<std::size_t> symbol_of_bits; // label value -> symbol index
    const ChannelMatrix* fixed_h = nullptr;
    double rho = 1.0;
};

BlockTotals run_block(const TrialContext& ctx, std::size_t snr_idx, std::size_t block_idx,
                      std::size_t n_trials) {
    const SmConfig& cfg = *ctx.cfg;
    Rng rng = Rng::substream(cfg.seed, snr_idx, block_idx);

    ChannelMatrix h;
    ChannelScratch scratch;
    RxObservation obs;
    std::vector<std::complex<double>> noise(cfg.n_rx);
    const std::uint64_t word_mask =
        ctx.word_bits == 0 ? 0 : (~std::uint64_t{0} >> (64 - ctx.word_bits));

    BlockTotals totals;
    totals.trials = n_trials;
    for (std::size_t t = 0; t < n_trials; ++t) {
        const std::uint64_t word = rng.next_u64() & word_mask;
        TxWord tx;
        tx.pattern = ctx.s_bits ? (word >> ctx.s_bits) : word;
        tx.symbol = ctx.symbol_of_bits[word & ((std::uint64_t{1} << ctx.s_bits) - 1)];

        const ChannelMatrix* hp = ctx.fixed_h;
        if (hp == nullptr) {
            draw_channel_into(cfg.channel, *cfg.codebook, cfg.n_rx, rng, h, scratch);
            hp = &h;
        }
        for (auto& v : noise) v = rng.cnormal();

        transmit_into(*hp, tx, ctx.rho, cfg.constellation, noise, obs);
        const TxWord rx = ml_detect(obs, *hp, cfg.constellation);
        if (rx != tx) {
            const std::uint64_t rx_word =
                (static_cast<std::uint64_t>(rx.pattern) << ctx.s_bits) |
                ctx.symbol_bits[rx.symbol];
            totals.bit_errors += static_cast<std::size_t>(std::popcount(rx_word ^ word));
        }
    }
    return totals;
}

} // namespace

void SmConfig::validate() const {
    if (!codebook || codebook->size() == 0)
        throw std::invalid_argument("simulation config: empty codebook");
    if (snr_grid_db.empty()) throw std::invalid_argument("simulation config: empty SNR grid");
    if (max_trials < 1) throw std::invalid_argument("simulation config: max_trials must be >= 1");
    if (target_errors < 1)
        throw std::invalid_argument("simulation config: target_errors must be >= 1");
    if (n_rx < 1) throw std::invalid_argument("simulation config: n_rx must be >= 1");
    constellation.validate();
    channel.validate();
    bits_per_word(codebook->size(), constellation); // validates P is a power of two
    if (bits_per_word(codebook->size(), constellation) == 0)
        throw std::invalid_argument("simulation config: P*M must be >= 2");
}

std::pair<double, double> wilson_interval(std::size_t errors, std::size_t n) {
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(errors) / nn;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half =
        kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

BerCurve simulate_ber(const SmConfig& cfg) {
    cfg.validate();

    TrialContext ctx;
    ctx.cfg = &cfg;
    ctx.p_bits = 0;
    while ((std::size_t{1} << ctx.p_bits) < cfg.codebook->size()) ++ctx.p_bits;
    ctx.s_bits = cfg.constellation.bits_per_symbol();
    ctx.word_bits = ctx.p_bits + ctx.s_bits;

    const std::size_t m = cfg.constellation.order();
    ctx.symbol_bits.resize(m);
    ctx.symbol_of_bits.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t v = 0;
        for (char b : cfg.constellation.bit_labels[i]) v = (v << 1) | (b == '1');
        ctx.symbol_bits[i] = v;
        ctx.symbol_of_bits[v] = i;
    }

    std::size_t n_threads = cfg.threads == 0
                                ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
                                : cfg.threads;

    const std::size_t n_blocks = (cfg.max_trials + kBlockTrials - 1) / kBlockTrials;
    BerCurve curve;
    curve.points.reserve(cfg.snr_grid_db.size());

    for (std::size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
        ctx.rho = std::pow(10.0, cfg.snr_grid_db[si] / 10.0);

        ChannelMatrix fixed_h;
        if (cfg.fading == Fading::fixed) {
            Rng crng = Rng::substream(cfg.seed, si, kChannelStream);
            ChannelScratch scratch;
            draw_channel_into(cfg.channel, *cfg.codebook, cfg.n_rx, crng, fixed_h, scratch);
            ctx.fixed_h = &fixed_h;
        } else {
            ctx.fixed_h = nullptr;
        }

        BerPoint pt;
        pt.snr_db = cfg.snr_grid_db[si];

        for (std::size_t wave_start = 0; wave_start < n_blocks; wave_start += kWaveBlocks) {
            const std::size_t wave_end = std::min(wave_start + kWaveBlocks, n_blocks);
            std::vector<BlockTotals> results(wave_end - wave_start);

            auto worker = [&](std::size_t first, std::size_t stride) {
                for (std::size_t b = wave_start + first; b < wave_end; b += stride) {
                    const std::size_t lo = b * kBlockTrials;
                    const std::size_t n =
                        std::min(kBlockTrials, cfg.max_trials - lo);
                    results[b - wave_start] = run_block(ctx, si, b, n);
                }
            };
            if (n_threads <= 1 || wave_end - wave_start <= 1) {
                worker(0, 1);
            } else {
                std::vector<std::thread> pool;
                const std::size_t k = std::min(n_threads, wave_end - wave_start);
                pool.reserve(k);
                for (std::size_t i = 0; i < k; ++i) pool.emplace_back(worker, i, k);
                for (auto& th : pool) th.join();
            }
            for (const auto& r : results) {
                pt.trials += r.trials;
                pt.bit_errors += r.bit_errors;
            }
            if (pt.bit_errors >= cfg.target_errors) break;
        }

        const std::size_t n_bits = pt.trials * ctx.word_bits;
        pt.ber = n_bits ? static_cast<double>(pt.bit_errors) / static_cast<double>(n_bits) : 0.0;
        std::tie(pt.ci_lo, pt.ci_hi) = wilson_interval(pt.bit_errors, n_bits);
        curve.points.push_back(pt);
    }
    return curve;
}

std::string BerCurve::to_csv() const {
    std::string out = "snr_db,trials,bit_errors,ber,ci_lo,ci_hi\n";
    char buf[160];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.6g,%zu,%zu,%.10g,%.10g,%.10g\n", p.snr_db, p.trials,
                      p.bit_errors, p.ber, p.ci_lo, p.ci_hi);
        out += buf;
    }
    return out;
}

double estimate_diversity(const BerCurve& curve, double window_lo_db, double window_hi_db) {
    std::vector<std::pair<double, double>> pts; // (log10 rho, log10 ber)
    for (const auto& p : curve.points) {
        if (p.snr_db < window_lo_db - 1e-9 || p.snr_db > window_hi_db + 1e-9) continue;
        if (p.ber <= 0.0)
            throw std::domain_error("estimate_diversity: BER must be positive on the window");
        pts.emplace_back(p.snr_db / 10.0, std::log10(p.ber));
    }
    if (pts.size() < 2)
        throw std::domain_error("estimate_diversity: need at least two points in the window");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0.0) throw std::domain_error("estimate_diversity: degenerate SNR window");
    return -sxy / sxx;
}

} // namespace recant
