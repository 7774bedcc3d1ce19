#pragma once

#include "polar/fast_ssc.hpp"

namespace polar {

// Register window of the shift-register partial-sum generator. regs[0] is
// the youngest end; values shifted past n/2 are discarded, which is safe
// because no read ever needs them.
struct PsgState {
    BitVector regs;                 // exactly n/2 registers
    std::size_t commits = 0;        // block commits absorbed
    std::size_t bits_consumed = 0;  // index of the next undecoded bit
};

PsgState psg_reset(const CodeConfig& cfg);

// Scalar update for one estimated bit: R_0 <= u*row[0],
// R_k <= R_{k-1} ^ (u*row[k]); row is the generator row of the committed
// bit. All registers update simultaneously.
PsgState psg_commit_bit(PsgState state, Bit u_hat, const BitVector& row);

// Block update for a length-n_c constituent code: the window shifts by
// n_c, the block's partial sums load in reversed order at the young end,
// and the shifted registers fold in the row-masked reversed sums. row is
// the generator row of the block's last bit.
PsgState psg_commit_block(PsgState state, const BitVector& beta_c, const BitVector& row);

// Partial sums for a stage-s g computation, reversal undone so callers
// see natural order. Valid only when bits_consumed is an odd multiple of
// 2^s (a size-2^s left sibling just completed).
BitVector psg_read_block(const PsgState& state, unsigned stage);

// ---- trace replay ------------------------------------------------------

struct PsgTraceRecord {
    std::size_t commit_index = 0;
    std::size_t n_c = 0;
    std::size_t last_bit = 0;  // generator row index used for the commit
    BitVector beta;
    BitVector regs_after;
};

// Flip one register after a given commit; used to exercise the FAIL path.
struct PsgFault {
    std::size_t after_commit = 0;
    std::size_t reg_index = 0;
};

struct PsgReplayReport {
    std::size_t commits = 0;
    std::size_t reads = 0;
    std::size_t mismatches = 0;
    std::size_t max_read_index = 0;  // highest register index any read touched
    std::vector<PsgTraceRecord> trace;
    bool ok() const { return mismatches == 0; }
};

// Replays a decode trace through the PSG and checks every read against
// the re-encoded partial sums of the decided prefix. Unit-length blocks
// go through the scalar rule, larger blocks through the block rule. A
// block spanning more than n/2 bits needs no feedback and is not
// committed.
PsgReplayReport psg_replay(const CodeConfig& cfg, const DecodeTrace& events,
                           bool keep_trace = false, const PsgFault* fault = nullptr);

// ---- structural analyzers ----------------------------------------------

struct MaskViolation {
    std::size_t n = 0;
    std::size_t row = 0;
    std::size_t block_width = 0;
    std::size_t block_index = 0;
};

struct MaskCheckReport {
    std::size_t checks = 0;
    std::vector<MaskViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Per-block scalar masks of generator row i under aligned width-n_c column
// blocks. When i is the last bit of an aligned block the row is constant
// on every column block and the per-register masking collapses to one
// AND per block; any non-constant block is recorded as a violation.
BitVector block_masks(std::size_t n, std::size_t i, std::size_t n_c,
                      MaskCheckReport* report = nullptr);

// Checks the collapse for every block of a schedule.
MaskCheckReport blockwise_mask_property(const CodeConfig& cfg, const DecodeSchedule& sched);

// Exhaustive scan over all block widths and aligned last-bit rows of one n.
MaskCheckReport blockwise_mask_scan(std::size_t n);

struct MuxNetworkReport {
    std::size_t mux_count = 0;
    unsigned select_width = 0;
    std::vector<unsigned> select;  // select[s] = s (direct binary mapping)
};
MuxNetworkReport mux_network_report(std::size_t n);

struct ShifterReport {
    std::size_t mux_count = 0;
    unsigned decoder_k = 0;  // k-to-2^k control decoder
};
ShifterReport shifter_report(std::size_t n);

struct DelayModel {
    double d_mux = 1.0;
    double d_and = 1.0;
    double d_xor = 1.0;
};

enum class PsgMode { sr_psg, sr_cb_psg };

double critical_path(std::size_t n, const DelayModel& d, PsgMode mode);

struct ResourceReport {
    std::size_t dff = 0;
    std::size_t mux = 0;
    std::size_t xor_gates = 0;
    std::size_t and_gates = 0;
    std::size_t rom_bits = 0;
};

// Block-capable generator for length n.
ResourceReport resource_report(std::size_t n);

// Bit-serial shift-register reference design (no mux network, no ROM).
ResourceReport conventional_resource_report(std::size_t n);

// Pre-computed generator rows, one per schedule block, keyed by the
// block's last bit index.
struct RomImage {
    struct Row {
        std::size_t last_bit = 0;
        BitVector bits;
    };
    std::size_t width = 0;  // bits per row (= n)
    std::vector<Row> rows;
    std::size_t total_bits() const { return rows.size() * width; }
};
RomImage rom_build(const CodeConfig& cfg, const DecodeSchedule& sched);

}  // namespace polar
