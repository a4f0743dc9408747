#include "fpt/oracle.hpp"

#include "fpt/error.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace fpt {

namespace {

constexpr std::size_t kChunk = 4096;

struct ChunkResult {
    std::vector<double> samples;
    std::size_t censored = 0;
};

ChunkResult run_chunk(const ForceField& field, double y_plus, double y0, const McOptions& o,
                      std::size_t chunk, std::size_t count) {
    std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    std::mt19937_64 rng(seq);
    boost::random::normal_distribution<double> normal;
    boost::random::uniform_01<double> uniform;

    const double dt = o.dt;
    const double sd = std::sqrt(2.0 * dt);
    const auto max_steps = static_cast<std::size_t>(std::ceil(o.tau_max / dt));
    const double bridge_cut = 40.0 * dt;

    ChunkResult out;
    out.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double y = y0;
        bool hit = false;
        std::size_t n = 0;
        while (n < max_steps) {
            const double next = y + field.drift(y) * dt + sd * normal(rng);
            ++n;
            if (next >= y_plus) {
                hit = true;
                break;
            }
            if (o.bridge) {
                const double prod = (y_plus - y) * (y_plus - next);
                if (prod < bridge_cut && uniform(rng) < std::exp(-prod / dt)) {
                    hit = true;
                    break;
                }
            }
            y = next;
        }
        if (hit) {
            out.samples.push_back((static_cast<double>(n) - 0.5) * dt);
        } else {
            ++out.censored;
        }
    }
    return out;
}

}  // namespace

McResult simulate(const ForceField& field, double y_plus, double y0, const McOptions& o) {
    if (!(y0 < y_plus)) throw InputError("simulate: the start must lie below the barrier");
    if (!(o.dt > 0.0) || !(o.tau_max > 0.0) || o.n_paths == 0) {
        throw InputError("simulate: dt, tau_max and n_paths must be positive");
    }
    const std::size_t n_chunks = (o.n_paths + kChunk - 1) / kChunk;
    std::vector<ChunkResult> chunks(n_chunks);
    unsigned workers = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_chunks));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t c = next++; c < n_chunks; c = next++) {
            const std::size_t count = std::min(kChunk, o.n_paths - c * kChunk);
            chunks[c] = run_chunk(field, y_plus, y0, o, c, count);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    McResult out;
    out.dt = o.dt;
    out.n_paths = o.n_paths;
    for (auto& c : chunks) {
        out.samples.insert(out.samples.end(), c.samples.begin(), c.samples.end());
        out.censored += c.censored;
    }
    return out;
}

double kolmogorov_distance(std::vector<double> samples, std::size_t n_total,
                           const std::vector<double>& tau, const std::vector<double>& cdf) {
    if (tau.size() != cdf.size() || tau.size() < 2) {
        throw InputError("kolmogorov_distance: need a CDF on at least two points");
    }
    if (n_total == 0) throw InputError("kolmogorov_distance: no paths");
    std::sort(samples.begin(), samples.end());
    auto model_cdf = [&](double t) {
        if (t <= tau.front()) return cdf.front();
        if (t >= tau.back()) return cdf.back();
        const auto it = std::upper_bound(tau.begin(), tau.end(), t);
        const auto i = static_cast<std::size_t>(it - tau.begin());
        const double w = (t - tau[i - 1]) / (tau[i] - tau[i - 1]);
        return (1.0 - w) * cdf[i - 1] + w * cdf[i];
    };
    const double n = static_cast<double>(n_total);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = model_cdf(samples[i]);
        worst = std::max({worst, std::abs(static_cast<double>(i + 1) / n - c),
                          std::abs(static_cast<double>(i) / n - c)});
    }
    return worst;
}

}  // namespace fpt
