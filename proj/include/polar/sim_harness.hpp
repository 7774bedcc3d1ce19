#pragma once

#include <cstdint>
#include <iosfwd>

#include "polar/fast_ssc.hpp"

namespace polar {

struct ChannelParams {
    double ebn0_db = 0.0;
    double rate = 1.0;  // k/n
    std::uint64_t seed = 1;
};

// sigma^2 = 1 / (2 * rate * 10^(EbN0/10))
double noise_variance(const ChannelParams& p);

// LLR of a received BPSK sample: 2r/sigma^2, saturated when sigma^2 = 0.
double bpsk_llr(double received, double sigma2);

// Counter-based draws keyed by (seed, stream, position): any frame can be
// replayed independently of evaluation order or thread count.
double counter_gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t position);
Bit counter_bit(std::uint64_t seed, std::uint64_t stream, std::uint64_t position);

// BPSK over AWGN: s = 1-2x, r = s + noise, LLR = 2r/sigma^2. The frame
// index selects the noise stream.
SoftVector bpsk_awgn(const BitVector& x, const ChannelParams& p, std::uint64_t frame);

struct TrialStats {
    std::size_t frames = 0;
    std::size_t bit_errors = 0;
    std::size_t frame_errors = 0;
    std::size_t total_latency_cycles = 0;

    double ber(std::size_t info_length) const;
    double fer() const;
};

enum class DecoderChoice { sc, fast_ssc };

const char* to_string(DecoderChoice d);

struct MonteCarloOptions {
    DecoderChoice decoder = DecoderChoice::fast_ssc;
    ScheduleCaps caps{};
    std::size_t min_frames = 100;
    std::size_t min_errors = 100;
    std::size_t max_frames = 1000000;  // bound when errors stay scarce
    unsigned threads = 1;
};

// Random messages, AWGN, decode, count. Runs until min_frames are done and
// either min_errors were seen or max_frames is reached. Deterministic for a
// fixed seed regardless of thread count.
TrialStats monte_carlo(const CodeConfig& cfg, const ChannelParams& p,
                       const MonteCarloOptions& opt);

// Raw BPSK without a code: per-bit hard decisions against the sent bits.
TrialStats uncoded_bpsk_trial(double ebn0_db, std::uint64_t seed, std::size_t bits);

struct LatencyRow {
    double rate = 0.0;
    std::size_t k = 0;
    std::size_t baseline = 0;  // 2n-2 tree traversal
    std::size_t latency = 0;
    double reduction_pct = 0.0;
};

std::vector<LatencyRow> latency_table(std::size_t n, const std::vector<double>& rates,
                                      const ScheduleCaps& caps = {}, double design_param = 0.5);

// Published measurements for a 1024-bit block-decoding design evaluated
// against a 767-cycle bit-serial decoder; printed next to computed tables
// for comparison only.
inline constexpr double kReferenceRates[5] = {0.2, 0.35, 0.5, 0.65, 0.8};
inline constexpr std::size_t kReferenceLatencies[5] = {263, 298, 266, 200, 160};
inline constexpr double kReferenceReductionsPct[5] = {65.7, 61.1, 65.3, 73.9, 79.1};
inline constexpr std::size_t kReferenceBaselineCycles = 767;

struct SimRecord {
    double ebn0_db = 0.0;
    double rate = 0.0;
    std::string decoder;
    std::size_t frames = 0;
    double ber = 0.0;
    double fer = 0.0;
    double avg_latency = 0.0;
};

void write_csv(std::ostream& out, const std::vector<SimRecord>& rows);

}  // namespace polar
