#pragma once

#include <limits>
#include <span>

#include "polar/sc_reference.hpp"

namespace polar {

enum class NodeKind { rate0, rate1, spc, rep, mixed };

const char* to_string(NodeKind kind);

struct ScheduleBlock {
    std::size_t start = 0;
    std::size_t length = 0;
    NodeKind kind = NodeKind::mixed;
};

// Ordered, non-MIXED blocks partitioning [0, n).
struct DecodeSchedule {
    std::vector<ScheduleBlock> blocks;
};

inline constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

// Maximum emitted block length per kind; 1 disables the kind entirely.
struct ScheduleCaps {
    std::size_t max_spc = kNoCap;
    std::size_t max_rep = kNoCap;
};

// Pattern of the frozen sub-mask: all-frozen, all-information, single
// parity check (first bit frozen) or repetition (only last bit carries
// information). A length-2 [1,0] matches both SPC and REP; it is reported
// as REP, whose decision rule coincides except on exact LLR ties.
NodeKind classify(std::span<const Bit> frozen_sub);

// Greedy top-down pruning: emit the largest cap-permitted non-MIXED
// subtree, otherwise recurse into both halves.
DecodeSchedule build_schedule(const CodeConfig& cfg, const ScheduleCaps& caps = {});

BitVector decode_rate0(std::span<const SoftValue> llr);
BitVector decode_rate1(std::span<const SoftValue> llr);
BitVector decode_spc(std::span<const SoftValue> llr);
BitVector decode_rep(std::span<const SoftValue> llr);

// Cycles taken by one constituent decoder of length n_c.
std::size_t node_latency(NodeKind kind, std::size_t n_c);

// Total decode cycles for a schedule: one f and one g cycle per surviving
// internal node plus each block decoder's latency. Unit-length blocks are
// plain leaf decisions absorbed into the parent's cycle, which makes the
// fully expanded schedule cost exactly 2n-2.
std::size_t schedule_latency(const DecodeSchedule& sched);

struct FastSscResult {
    DecodeResult result;
    std::size_t latency = 0;
};

FastSscResult fast_ssc_decode(const CodeConfig& cfg, const SoftVector& llr,
                              const ScheduleCaps& caps = {}, DecodeTrace* trace = nullptr);
FastSscResult fast_ssc_decode(const CodeConfig& cfg, const SoftVector& llr,
                              const DecodeSchedule& sched, DecodeTrace* trace = nullptr);

}  // namespace polar
