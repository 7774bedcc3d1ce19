#include "polar/psg_model.hpp"

#include <bit>
#include <cmath>

namespace polar {

namespace {

std::size_t window(const PsgState& state) { return state.regs.size(); }

unsigned ceil_log2(std::size_t v) {
    // smallest e with 2^e >= v, v >= 1
    return static_cast<unsigned>(std::bit_width(v - 1));
}

void require_analyzer_n(std::size_t n, const char* who) {
    if (!is_power_of_two(n) || n < 4)
        throw std::invalid_argument(std::string(who) + ": n must be a power of two >= 4");
}

}  // namespace

PsgState psg_reset(const CodeConfig& cfg) {
    PsgState state;
    state.regs.assign(cfg.n / 2, 0);
    return state;
}

PsgState psg_commit_bit(PsgState state, Bit u_hat, const BitVector& row) {
    const std::size_t w = window(state);
    const std::size_t n = 2 * w;
    if (state.bits_consumed >= n)
        throw std::logic_error("psg_commit_bit: more than n commits");
    if (row.size() != n)
        throw std::invalid_argument("psg_commit_bit: row length != n");
    u_hat &= 1;
    for (std::size_t k = w; k-- > 1;)
        state.regs[k] = static_cast<Bit>(state.regs[k - 1] ^ (u_hat & row[k]));
    state.regs[0] = static_cast<Bit>(u_hat & row[0]);
    state.bits_consumed += 1;
    return state;
}

PsgState psg_commit_block(PsgState state, const BitVector& beta_c, const BitVector& row) {
    const std::size_t w = window(state);
    const std::size_t n = 2 * w;
    const std::size_t n_c = beta_c.size();
    if (!is_power_of_two(n_c))
        throw std::invalid_argument("psg_commit_block: block length must be a power of two");
    if (n_c > w)
        throw std::invalid_argument("psg_commit_block: block too large (needs no feedback)");
    if (state.bits_consumed % n_c != 0)
        throw std::invalid_argument("psg_commit_block: misaligned start");
    if (state.bits_consumed + n_c > n)
        throw std::logic_error("psg_commit_block: more than n bits committed");
    if (row.size() != n)
        throw std::invalid_argument("psg_commit_block: row length != n");
    // p(k) = n_c - 1 - (k mod n_c): the block loads in reversed order.
    for (std::size_t k = w; k-- > n_c;) {
        const Bit fed = static_cast<Bit>(row[k] & beta_c[n_c - 1 - (k % n_c)]);
        state.regs[k] = static_cast<Bit>(state.regs[k - n_c] ^ fed);
    }
    for (std::size_t k = n_c; k-- > 0;)
        state.regs[k] = static_cast<Bit>(beta_c[n_c - 1 - k] & 1);
    state.bits_consumed += n_c;
    state.commits += 1;
    return state;
}

BitVector psg_read_block(const PsgState& state, unsigned stage) {
    const std::size_t len = std::size_t{1} << stage;
    if (len > window(state))
        throw std::logic_error("psg_read_block: stage exceeds the register window");
    if (state.bits_consumed % len != 0 || (state.bits_consumed / len) % 2 != 1)
        throw std::logic_error("psg_read_block: read while no stage-" + std::to_string(stage) +
                               " left sibling just completed");
    BitVector out(len);
    for (std::size_t j = 0; j < len; ++j) out[j] = state.regs[len - 1 - j];
    return out;
}

PsgReplayReport psg_replay(const CodeConfig& cfg, const DecodeTrace& events, bool keep_trace,
                           const PsgFault* fault) {
    PsgReplayReport report;
    PsgState state = psg_reset(cfg);
    BitVector prefix;
    prefix.reserve(cfg.n);
    std::size_t commit_index = 0;
    for (const DecodeEvent& ev : events) {
        if (ev.kind == DecodeEvent::Kind::block) {
            if (ev.start != prefix.size())
                throw std::logic_error("psg_replay: block out of order");
            const std::size_t n_c = ev.beta.size();
            const std::size_t last_bit = ev.start + n_c - 1;
            if (n_c <= cfg.n / 2) {
                const BitVector row = generator_row(cfg.n, last_bit);
                state = (n_c == 1) ? psg_commit_bit(std::move(state), ev.beta[0], row)
                                   : psg_commit_block(std::move(state), ev.beta, row);
                if (fault && fault->after_commit == commit_index &&
                    fault->reg_index < state.regs.size())
                    state.regs[fault->reg_index] ^= 1;
                if (keep_trace) {
                    PsgTraceRecord rec;
                    rec.commit_index = commit_index;
                    rec.n_c = n_c;
                    rec.last_bit = last_bit;
                    rec.beta = ev.beta;
                    rec.regs_after = state.regs;
                    report.trace.push_back(std::move(rec));
                }
                ++commit_index;
                ++report.commits;
            } else {
                // A block spanning past n/2 is only ever the whole-root
                // block: nothing downstream reads it, so it is not
                // committed, only accounted.
                state.bits_consumed += n_c;
            }
            const BitVector u_block = polar_transform(ev.beta);
            prefix.insert(prefix.end(), u_block.begin(), u_block.end());
        } else {
            if (ev.at != prefix.size())
                throw std::logic_error("psg_replay: read out of order");
            const BitVector got = psg_read_block(state, ev.stage);
            const BitVector want = oracle_partial_sums(prefix, ev.stage);
            ++report.reads;
            if (got != want) ++report.mismatches;
            const std::size_t top = (std::size_t{1} << ev.stage) - 1;
            if (top > report.max_read_index) report.max_read_index = top;
        }
    }
    return report;
}

BitVector block_masks(std::size_t n, std::size_t i, std::size_t n_c, MaskCheckReport* report) {
    if (!is_power_of_two(n) || !is_power_of_two(n_c) || n_c > n)
        throw std::invalid_argument("block_masks: bad n or block width");
    if (i >= n || i % n_c != n_c - 1)
        throw std::invalid_argument("block_masks: i is not the last bit of an aligned block");
    const BitVector row = generator_row(n, i);
    const std::size_t nblocks = n / n_c;
    BitVector masks(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
        const Bit first = row[b * n_c];
        masks[b] = first;
        bool constant = true;
        for (std::size_t j = 1; j < n_c; ++j)
            if (row[b * n_c + j] != first) constant = false;
        if (report) {
            ++report->checks;
            if (!constant) report->violations.push_back({n, i, n_c, b});
        }
    }
    return masks;
}

MaskCheckReport blockwise_mask_property(const CodeConfig& cfg, const DecodeSchedule& sched) {
    MaskCheckReport report;
    for (const ScheduleBlock& blk : sched.blocks)
        block_masks(cfg.n, blk.start + blk.length - 1, blk.length, &report);
    return report;
}

MaskCheckReport blockwise_mask_scan(std::size_t n) {
    if (!is_power_of_two(n) || n < 2)
        throw std::invalid_argument("blockwise_mask_scan: n must be a power of two >= 2");
    MaskCheckReport report;
    for (std::size_t n_c = 1; n_c <= n; n_c *= 2)
        for (std::size_t i = n_c - 1; i < n; i += n_c)
            block_masks(n, i, n_c, &report);
    return report;
}

MuxNetworkReport mux_network_report(std::size_t n) {
    require_analyzer_n(n, "mux_network_report");
    const unsigned m = log2_exact(n);
    MuxNetworkReport rep;
    rep.mux_count = (n / 2) * (m - 1);
    rep.select_width = ceil_log2(m);
    rep.select.resize(m);
    for (unsigned s = 0; s < m; ++s) rep.select[s] = s;  // direct binary mapping
    return rep;
}

ShifterReport shifter_report(std::size_t n) {
    require_analyzer_n(n, "shifter_report");
    const unsigned m = log2_exact(n);
    ShifterReport rep;
    rep.mux_count = (n / 2 - 1) * (m - 1);
    rep.decoder_k = ceil_log2(m);
    return rep;
}

double critical_path(std::size_t n, const DelayModel& d, PsgMode mode) {
    require_analyzer_n(n, "critical_path");
    if (d.d_mux < 0 || d.d_and < 0 || d.d_xor < 0)
        throw std::invalid_argument("critical_path: negative gate delay");
    if (mode == PsgMode::sr_psg) return d.d_and + d.d_xor;
    const unsigned m = log2_exact(n);
    return ceil_log2(m) * d.d_mux + d.d_and + d.d_xor;
}

ResourceReport resource_report(std::size_t n) {
    require_analyzer_n(n, "resource_report");
    const std::size_t m = log2_exact(n);
    ResourceReport rep;
    rep.dff = n / 2;
    rep.mux = (n - 1) * (m - 1);
    rep.xor_gates = n / 2 - 1;
    rep.and_gates = n / 2;
    rep.rom_bits = (n * n + 9) / 10;  // average estimate, rounded up
    return rep;
}

ResourceReport conventional_resource_report(std::size_t n) {
    require_analyzer_n(n, "conventional_resource_report");
    ResourceReport rep;
    rep.dff = n;
    rep.mux = 0;
    rep.xor_gates = n - 2;
    rep.and_gates = n / 2;
    rep.rom_bits = 0;
    return rep;
}

RomImage rom_build(const CodeConfig& cfg, const DecodeSchedule& sched) {
    RomImage rom;
    rom.width = cfg.n;
    rom.rows.reserve(sched.blocks.size());
    for (const ScheduleBlock& blk : sched.blocks) {
        const std::size_t i = blk.start + blk.length - 1;
        rom.rows.push_back({i, generator_row(cfg.n, i)});
    }
    return rom;
}

}  // namespace polar
