#include "polar/fast_ssc.hpp"

#include <cmath>

namespace polar {

namespace {

void require_finite_vector(const SoftVector& llr, const char* who) {
    for (SoftValue v : llr)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": non-finite LLR");
}

bool cap_ok(std::size_t cap) { return cap == kNoCap || is_power_of_two(cap); }

std::size_t kind_cap(NodeKind kind, const ScheduleCaps& caps) {
    switch (kind) {
        case NodeKind::spc: return caps.max_spc;
        case NodeKind::rep: return caps.max_rep;
        default: return kNoCap;  // rate-0/rate-1 blocks are never capped
    }
}

void schedule_node(const CodeConfig& cfg, const ScheduleCaps& caps, std::size_t start,
                   std::size_t len, DecodeSchedule& out) {
    const std::span<const Bit> sub(cfg.frozen.data() + start, len);
    const NodeKind kind = classify(sub);
    if (kind != NodeKind::mixed && len <= kind_cap(kind, caps)) {
        out.blocks.push_back({start, len, kind});
        return;
    }
    // A length-1 node always classifies as rate-0 or rate-1.
    schedule_node(cfg, caps, start, len / 2, out);
    schedule_node(cfg, caps, start + len / 2, len / 2, out);
}

BitVector decode_block(NodeKind kind, std::span<const SoftValue> alpha) {
    switch (kind) {
        case NodeKind::rate0: return decode_rate0(alpha);
        case NodeKind::rate1: return decode_rate1(alpha);
        case NodeKind::spc: return decode_spc(alpha);
        case NodeKind::rep: return decode_rep(alpha);
        default: throw std::invalid_argument("decode_block: MIXED block");
    }
}

struct FastContext {
    const CodeConfig& cfg;
    const DecodeSchedule& sched;
    std::size_t cursor = 0;
    std::size_t latency = 0;
    BitVector u_hat;
    DecodeTrace* trace = nullptr;
};

BitVector fast_node(FastContext& ctx, std::span<const SoftValue> alpha, std::size_t start) {
    const std::size_t len = alpha.size();
    const auto& blocks = ctx.sched.blocks;
    if (ctx.cursor < blocks.size() && blocks[ctx.cursor].start == start &&
        blocks[ctx.cursor].length == len) {
        const ScheduleBlock blk = blocks[ctx.cursor++];
        BitVector beta = decode_block(blk.kind, alpha);
        if (len >= 2) ctx.latency += node_latency(blk.kind, len);
        BitVector u = polar_transform(beta);  // F is self-inverse
        for (std::size_t i = 0; i < len; ++i) ctx.u_hat[start + i] = u[i];
        if (ctx.trace) {
            DecodeEvent ev;
            ev.kind = DecodeEvent::Kind::block;
            ev.start = start;
            ev.length = len;
            ev.beta = beta;
            ctx.trace->push_back(std::move(ev));
        }
        return beta;
    }
    if (len == 1)
        throw std::logic_error("fast_ssc_decode: schedule does not cover bit " +
                               std::to_string(start));
    const std::size_t half = len / 2;
    SoftVector child(half);
    for (std::size_t i = 0; i < half; ++i) child[i] = f_op(alpha[i], alpha[i + half]);
    ctx.latency += 1;
    BitVector beta_l = fast_node(ctx, child, start);
    if (ctx.trace) {
        DecodeEvent ev;
        ev.kind = DecodeEvent::Kind::g_read;
        ev.stage = log2_exact(half);
        ev.at = start + half;
        ctx.trace->push_back(std::move(ev));
    }
    for (std::size_t i = 0; i < half; ++i) child[i] = g_op(alpha[i], alpha[i + half], beta_l[i]);
    ctx.latency += 1;
    BitVector beta_r = fast_node(ctx, child, start + half);
    return combine(beta_l, beta_r);
}

}  // namespace

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::rate0: return "rate0";
        case NodeKind::rate1: return "rate1";
        case NodeKind::spc: return "spc";
        case NodeKind::rep: return "rep";
        case NodeKind::mixed: return "mixed";
    }
    return "?";
}

NodeKind classify(std::span<const Bit> frozen_sub) {
    const std::size_t len = frozen_sub.size();
    if (!is_power_of_two(len))
        throw std::invalid_argument("classify: length must be a power of two");
    std::size_t ones = 0;
    for (Bit b : frozen_sub) ones += (b & 1);
    if (ones == len) return NodeKind::rate0;
    if (ones == 0) return NodeKind::rate1;
    if (len >= 2 && ones == len - 1 && frozen_sub[len - 1] == 0) return NodeKind::rep;
    if (len >= 2 && ones == 1 && frozen_sub[0] == 1) return NodeKind::spc;
    return NodeKind::mixed;
}

DecodeSchedule build_schedule(const CodeConfig& cfg, const ScheduleCaps& caps) {
    if (!cap_ok(caps.max_spc) || !cap_ok(caps.max_rep))
        throw std::invalid_argument("build_schedule: caps must be powers of two or unlimited");
    DecodeSchedule sched;
    schedule_node(cfg, caps, 0, cfg.n, sched);
    return sched;
}

BitVector decode_rate0(std::span<const SoftValue> llr) {
    if (llr.empty()) throw std::invalid_argument("decode_rate0: empty input");
    return BitVector(llr.size(), 0);
}

BitVector decode_rate1(std::span<const SoftValue> llr) {
    if (llr.empty()) throw std::invalid_argument("decode_rate1: empty input");
    BitVector out(llr.size());
    for (std::size_t i = 0; i < llr.size(); ++i) out[i] = hard_decision(llr[i]);
    return out;
}

BitVector decode_spc(std::span<const SoftValue> llr) {
    if (llr.size() < 2) throw std::invalid_argument("decode_spc: length must be >= 2");
    BitVector out(llr.size());
    Bit par = 0;
    std::size_t weakest = 0;
    double weakest_mag = std::fabs(llr[0]);
    for (std::size_t i = 0; i < llr.size(); ++i) {
        out[i] = hard_decision(llr[i]);
        par ^= out[i];
        const double mag = std::fabs(llr[i]);
        if (mag < weakest_mag) {  // ties keep the lowest index
            weakest_mag = mag;
            weakest = i;
        }
    }
    if (par) out[weakest] ^= 1;
    return out;
}

BitVector decode_rep(std::span<const SoftValue> llr) {
    if (llr.size() < 2) throw std::invalid_argument("decode_rep: length must be >= 2");
    SoftValue sum = 0.0;
    for (SoftValue v : llr) sum += v;
    return BitVector(llr.size(), hard_decision(sum));
}

std::size_t node_latency(NodeKind kind, std::size_t n_c) {
    if (!is_power_of_two(n_c))
        throw std::invalid_argument("node_latency: n_c must be a power of two");
    switch (kind) {
        case NodeKind::rate0:
        case NodeKind::rate1: return 1;
        case NodeKind::spc: return static_cast<std::size_t>(log2_exact(n_c)) + 1;
        case NodeKind::rep: return static_cast<std::size_t>(log2_exact(n_c));
        default: throw std::invalid_argument("node_latency: MIXED has no block latency");
    }
}

std::size_t schedule_latency(const DecodeSchedule& sched) {
    if (sched.blocks.empty()) throw std::invalid_argument("schedule_latency: empty schedule");
    std::size_t total = 2 * (sched.blocks.size() - 1);  // f + g per internal node
    for (const ScheduleBlock& blk : sched.blocks)
        if (blk.length >= 2) total += node_latency(blk.kind, blk.length);
    return total;
}

FastSscResult fast_ssc_decode(const CodeConfig& cfg, const SoftVector& llr,
                              const ScheduleCaps& caps, DecodeTrace* trace) {
    return fast_ssc_decode(cfg, llr, build_schedule(cfg, caps), trace);
}

FastSscResult fast_ssc_decode(const CodeConfig& cfg, const SoftVector& llr,
                              const DecodeSchedule& sched, DecodeTrace* trace) {
    if (llr.size() != cfg.n)
        throw std::invalid_argument("fast_ssc_decode: LLR length != n");
    require_finite_vector(llr, "fast_ssc_decode");
    FastContext ctx{cfg, sched, 0, 0, BitVector(cfg.n, 0), trace};
    BitVector x_hat = fast_node(ctx, llr, 0);
    if (ctx.cursor != sched.blocks.size())
        throw std::logic_error("fast_ssc_decode: schedule not fully consumed");
    FastSscResult res;
    res.result = DecodeResult{std::move(ctx.u_hat), std::move(x_hat)};
    res.latency = ctx.latency;
    return res;
}

}  // namespace polar
