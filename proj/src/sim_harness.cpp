#include "polar/sim_harness.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace polar {

namespace {

constexpr double kSaturatedLlr = 1e12;

constexpr std::uint64_t kNoiseTag = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kBitTag = 0xd1b54a32d192ed03ULL;
constexpr std::uint64_t kLaneTag = 0x2545f4914f6cdd1dULL;

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t key(std::uint64_t seed, std::uint64_t stream, std::uint64_t position,
                  std::uint64_t tag) {
    return mix64(mix64(mix64(seed ^ tag) + stream) + position);
}

double unit_open_zero(std::uint64_t h) {  // (0, 1]
    return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

double unit_half_open(std::uint64_t h) {  // [0, 1)
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

struct FrameWorkspace {
    BitVector u;
    BitVector x;
    SoftVector llr;
};

struct FrameOutcome {
    std::size_t bit_errors = 0;
    bool frame_error = false;
};

FrameOutcome run_frame(const CodeConfig& cfg, const ChannelParams& p,
                       const MonteCarloOptions& opt, const DecodeSchedule& sched,
                       std::uint64_t frame, FrameWorkspace& ws) {
    ws.u.assign(cfg.n, 0);
    for (std::size_t i = 0; i < cfg.n; ++i)
        if (!cfg.frozen[i]) ws.u[i] = counter_bit(p.seed, frame, i);
    ws.x = encode(cfg, ws.u);
    ws.llr = bpsk_awgn(ws.x, p, frame);
    const BitVector& u_hat = (opt.decoder == DecoderChoice::sc)
                                 ? sc_decode(cfg, ws.llr).u_hat
                                 : fast_ssc_decode(cfg, ws.llr, sched).result.u_hat;
    FrameOutcome out;
    for (std::size_t i = 0; i < cfg.n; ++i)
        if (!cfg.frozen[i] && u_hat[i] != ws.u[i]) ++out.bit_errors;
    out.frame_error = out.bit_errors > 0;
    return out;
}

}  // namespace

double noise_variance(const ChannelParams& p) {
    if (!(p.rate > 0.0) || p.rate > 1.0)
        throw std::invalid_argument("noise_variance: rate must be in (0, 1]");
    return 1.0 / (2.0 * p.rate * std::pow(10.0, p.ebn0_db / 10.0));
}

double bpsk_llr(double received, double sigma2) {
    if (sigma2 < 0.0) throw std::invalid_argument("bpsk_llr: negative variance");
    const double llr = 2.0 * received / sigma2;
    if (std::isfinite(llr)) return llr;
    return received >= 0.0 ? kSaturatedLlr : -kSaturatedLlr;
}

double counter_gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t position) {
    const std::uint64_t h = key(seed, stream, position, kNoiseTag);
    const double u1 = unit_open_zero(h);
    const double u2 = unit_half_open(mix64(h ^ kLaneTag));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Bit counter_bit(std::uint64_t seed, std::uint64_t stream, std::uint64_t position) {
    return static_cast<Bit>(key(seed, stream, position, kBitTag) & 1u);
}

SoftVector bpsk_awgn(const BitVector& x, const ChannelParams& p, std::uint64_t frame) {
    const double sigma2 = noise_variance(p);
    const double sigma = std::sqrt(sigma2);
    SoftVector llr(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double symbol = x[i] ? -1.0 : 1.0;
        const double r = symbol + sigma * counter_gaussian(p.seed, frame, i);
        llr[i] = bpsk_llr(r, sigma2);
    }
    return llr;
}

double TrialStats::ber(std::size_t info_length) const {
    if (frames == 0 || info_length == 0) return 0.0;
    return static_cast<double>(bit_errors) / (static_cast<double>(frames) * info_length);
}

double TrialStats::fer() const {
    if (frames == 0) return 0.0;
    return static_cast<double>(frame_errors) / static_cast<double>(frames);
}

const char* to_string(DecoderChoice d) {
    return d == DecoderChoice::sc ? "sc" : "fast_ssc";
}

TrialStats monte_carlo(const CodeConfig& cfg, const ChannelParams& p,
                       const MonteCarloOptions& opt) {
    if (opt.threads == 0) throw std::invalid_argument("monte_carlo: zero threads");
    const DecodeSchedule sched =
        (opt.decoder == DecoderChoice::fast_ssc) ? build_schedule(cfg, opt.caps) : DecodeSchedule{};
    const std::size_t latency_per_frame = (opt.decoder == DecoderChoice::fast_ssc)
                                              ? schedule_latency(sched)
                                              : 2 * cfg.n - 2;

    constexpr std::size_t kBatch = 256;
    TrialStats stats;
    std::uint64_t next_frame = 0;
    while (stats.frames < opt.min_frames ||
           (stats.frame_errors < opt.min_errors && stats.frames < opt.max_frames)) {
        std::size_t batch = kBatch;
        if (stats.frames >= opt.min_frames)
            batch = std::min(batch, opt.max_frames - stats.frames);
        if (batch == 0) break;

        std::vector<TrialStats> partial(opt.threads);
        auto worker = [&](unsigned t) {
            FrameWorkspace ws;
            // contiguous split: frame identity, not scheduling, drives the RNG
            const std::size_t lo = batch * t / opt.threads;
            const std::size_t hi = batch * (t + 1) / opt.threads;
            for (std::size_t i = lo; i < hi; ++i) {
                const FrameOutcome out =
                    run_frame(cfg, p, opt, sched, next_frame + i, ws);
                partial[t].frames += 1;
                partial[t].bit_errors += out.bit_errors;
                partial[t].frame_errors += out.frame_error ? 1 : 0;
            }
        };
        if (opt.threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < opt.threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        for (const TrialStats& part : partial) {
            stats.frames += part.frames;
            stats.bit_errors += part.bit_errors;
            stats.frame_errors += part.frame_errors;
        }
        next_frame += batch;
    }
    stats.total_latency_cycles = stats.frames * latency_per_frame;
    return stats;
}

TrialStats uncoded_bpsk_trial(double ebn0_db, std::uint64_t seed, std::size_t bits) {
    ChannelParams p{ebn0_db, 1.0, seed};
    const double sigma2 = noise_variance(p);
    const double sigma = std::sqrt(sigma2);
    TrialStats stats;
    stats.frames = bits;
    for (std::size_t i = 0; i < bits; ++i) {
        const std::uint64_t stream = i >> 12, pos = i & 0xfff;
        const Bit x = counter_bit(seed, stream, pos);
        const double r = (x ? -1.0 : 1.0) + sigma * counter_gaussian(seed, stream, pos);
        if (hard_decision(bpsk_llr(r, sigma2)) != x) ++stats.bit_errors;
    }
    stats.frame_errors = stats.bit_errors;
    return stats;
}

std::vector<LatencyRow> latency_table(std::size_t n, const std::vector<double>& rates,
                                      const ScheduleCaps& caps, double design_param) {
    std::vector<LatencyRow> rows;
    rows.reserve(rates.size());
    for (double rate : rates) {
        if (!(rate > 0.0) || rate > 1.0)
            throw std::invalid_argument("latency_table: rate must be in (0, 1]");
        LatencyRow row;
        row.rate = rate;
        row.k = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
        row.baseline = 2 * n - 2;
        const CodeConfig cfg = construct_frozen(n, row.k, design_param);
        row.latency = schedule_latency(build_schedule(cfg, caps));
        row.reduction_pct = 100.0 * static_cast<double>(row.baseline - row.latency) /
                            static_cast<double>(row.baseline);
        rows.push_back(row);
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<SimRecord>& rows) {
    out << "ebn0_db,rate,decoder,frames,ber,fer,avg_latency\n";
    for (const SimRecord& r : rows) {
        std::ostringstream line;
        line.precision(6);
        line << r.ebn0_db << ',' << r.rate << ',' << r.decoder << ',' << r.frames << ','
             << std::scientific << r.ber << ',' << r.fer << ',' << std::defaultfloat
             << r.avg_latency;
        out << line.str() << '\n';
    }
}

}  // namespace polar
