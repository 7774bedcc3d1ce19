#pragma once

#include "polar/polar_core.hpp"

namespace polar {

using SoftValue = double;
using SoftVector = std::vector<SoftValue>;

// Threshold detection: 0 for alpha >= 0, else 1.
Bit hard_decision(SoftValue alpha);

// Min-sum box operator for the left-child LLR.
SoftValue f_op(SoftValue a, SoftValue b);

// Right-child LLR given the left sibling's partial sum.
SoftValue g_op(SoftValue a, SoftValue b, Bit beta);

// Partial sums of a parent node from its children's:
// out[i] = beta_l[i] ^ beta_r[i] for the first half, beta_r for the second.
BitVector combine(const BitVector& beta_l, const BitVector& beta_r);

struct DecodeResult {
    BitVector u_hat;
    BitVector x_hat;  // = encode(u_hat)
};

// One entry per constituent-block decision or partial-sum read, in
// traversal order. The SC decoder emits unit-length blocks.
struct DecodeEvent {
    enum class Kind { block, g_read };
    Kind kind = Kind::block;
    std::size_t start = 0;   // block: first bit index
    std::size_t length = 0;  // block: bit count (a power of two)
    unsigned stage = 0;      // g_read: stage s of the read
    std::size_t at = 0;      // g_read: bits decoded when the read happens
    BitVector beta;          // block: partial sums of the block
};
using DecodeTrace = std::vector<DecodeEvent>;

// Depth-first successive cancellation over the full tree.
DecodeResult sc_decode(const CodeConfig& cfg, const SoftVector& llr,
                       DecodeTrace* trace = nullptr);

// Feedback required by a stage-s g computation: the last 2^s decided bits
// re-encoded through the size-2^s transform.
BitVector oracle_partial_sums(const BitVector& u_hat_prefix, unsigned stage);

}  // namespace polar
