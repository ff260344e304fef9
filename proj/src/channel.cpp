// SPDX-License-Identifier: Apache-2.0
#include "recant/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace recant {

void ChannelModel::validate() const {
    if (rays < 1) throw std::invalid_argument("channel: ray count must be >= 1");
    if (wavelength <= 0.0) throw std::invalid_argument("channel: wavelength must be > 0");
    if (rx_spacing <= 0.0) throw std::invalid_argument("channel: rx spacing must be > 0");
}

double wavevector_norm(double wavelength) {
    if (wavelength <= 0.0) throw std::domain_error("wavevector_norm: wavelength must be > 0");
    return 2.0 * M_PI / wavelength;
}

void draw_channel_into(const ChannelModel& model, const Codebook& codebook, std::size_t n_rx,
                       Rng& rng, ChannelMatrix& out, ChannelScratch& scratch) {
    if (n_rx < 1) throw std::invalid_argument("draw_channel: n_rx must be >= 1");
    model.validate();
    const std::size_t n_pat = codebook.size();
    if (n_pat < 1) throw std::invalid_argument("draw_channel: empty codebook");

    out.n_rx = n_rx;
    out.n_patterns = n_pat;
    out.h.assign(n_rx * n_pat, {0.0, 0.0});
    scratch.tx.resize(n_pat);

    const double kd = wavevector_norm(model.wavelength) * model.rx_spacing;
    const double scale = 1.0 / std::sqrt(static_cast<double>(model.rays));

    for (std::size_t k = 0; k < model.rays; ++k) {
        const std::complex<double> beta = rng.cnormal();
        const double aod_theta = model.aod.theta.sample(rng);
        const double aod_phi = model.aod.phi.sample(rng);
        const double aoa_theta = model.aoa.theta.sample(rng);
        const double aoa_phi = model.aoa.phi.sample(rng);

        for (std::size_t p = 0; p < n_pat; ++p)
            scratch.tx[p] = beta * codebook[p].eval(aod_theta, aod_phi);

        if (n_rx == 1) {
            for (std::size_t p = 0; p < n_pat; ++p) out.h[p] += scratch.tx[p];
        } else {
            const std::complex<double> step =
                std::polar(1.0, kd * std::sin(aoa_theta) * std::sin(aoa_phi));
            std::complex<double> rx_factor = 1.0;
            for (std::size_t n = 0; n < n_rx; ++n) {
                for (std::size_t p = 0; p < n_pat; ++p)
                    out.h[n * n_pat + p] += rx_factor * scratch.tx[p];
                rx_factor *= step;
            }
        }
    }
    for (auto& v : out.h) v *= scale;
}

ChannelMatrix draw_channel(const ChannelModel& model, const Codebook& codebook, std::size_t n_rx,
                           Rng& rng) {
    ChannelMatrix out;
    ChannelScratch scratch;
    draw_channel_into(model, codebook, n_rx, rng, out, scratch);
    return out;
}

} // namespace recant
