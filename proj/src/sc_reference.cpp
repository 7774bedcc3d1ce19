#include "polar/sc_reference.hpp"

#include <cmath>
#include <span>

namespace polar {

namespace {

void require_finite(SoftValue v, const char* who) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite input");
}

void require_finite_vector(const SoftVector& llr, const char* who) {
    for (SoftValue v : llr)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": non-finite LLR");
}

struct ScContext {
    const CodeConfig& cfg;
    BitVector u_hat;
    DecodeTrace* trace;
};

BitVector sc_node(ScContext& ctx, std::span<const SoftValue> alpha, std::size_t start) {
    const std::size_t len = alpha.size();
    if (len == 1) {
        const Bit b = ctx.cfg.frozen[start] ? Bit{0} : hard_decision(alpha[0]);
        ctx.u_hat[start] = b;
        if (ctx.trace) {
            DecodeEvent ev;
            ev.kind = DecodeEvent::Kind::block;
            ev.start = start;
            ev.length = 1;
            ev.beta = BitVector{b};
            ctx.trace->push_back(std::move(ev));
        }
        return BitVector{b};
    }
    const std::size_t half = len / 2;
    SoftVector child(half);
    for (std::size_t i = 0; i < half; ++i) child[i] = f_op(alpha[i], alpha[i + half]);
    BitVector beta_l = sc_node(ctx, child, start);
    if (ctx.trace) {
        DecodeEvent ev;
        ev.kind = DecodeEvent::Kind::g_read;
        ev.stage = log2_exact(half);
        ev.at = start + half;
        ctx.trace->push_back(std::move(ev));
    }
    for (std::size_t i = 0; i < half; ++i) child[i] = g_op(alpha[i], alpha[i + half], beta_l[i]);
    BitVector beta_r = sc_node(ctx, child, start + half);
    return combine(beta_l, beta_r);
}

}  // namespace

Bit hard_decision(SoftValue alpha) {
    require_finite(alpha, "hard_decision");
    return alpha >= 0.0 ? Bit{0} : Bit{1};
}

SoftValue f_op(SoftValue a, SoftValue b) {
    require_finite(a, "f_op");
    require_finite(b, "f_op");
    const bool negative = (a < 0.0) != (b < 0.0);
    const SoftValue mag = std::min(std::fabs(a), std::fabs(b));
    return negative ? -mag : mag;
}

SoftValue g_op(SoftValue a, SoftValue b, Bit beta) {
    require_finite(a, "g_op");
    require_finite(b, "g_op");
    return beta ? b - a : b + a;
}

BitVector combine(const BitVector& beta_l, const BitVector& beta_r) {
    if (beta_l.size() != beta_r.size())
        throw std::invalid_argument("combine: length mismatch");
    const std::size_t half = beta_l.size();
    BitVector out(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        out[i] = static_cast<Bit>(beta_l[i] ^ beta_r[i]);
        out[half + i] = beta_r[i];
    }
    return out;
}

DecodeResult sc_decode(const CodeConfig& cfg, const SoftVector& llr, DecodeTrace* trace) {
    if (llr.size() != cfg.n)
        throw std::invalid_argument("sc_decode: LLR length != n");
    require_finite_vector(llr, "sc_decode");
    ScContext ctx{cfg, BitVector(cfg.n, 0), trace};
    BitVector x_hat = sc_node(ctx, llr, 0);
    return DecodeResult{std::move(ctx.u_hat), std::move(x_hat)};
}

BitVector oracle_partial_sums(const BitVector& u_hat_prefix, unsigned stage) {
    const std::size_t len = std::size_t{1} << stage;
    if (u_hat_prefix.size() < len || u_hat_prefix.size() % len != 0)
        throw std::invalid_argument("oracle_partial_sums: prefix not aligned to 2^stage");
    BitVector tail(u_hat_prefix.end() - static_cast<std::ptrdiff_t>(len), u_hat_prefix.end());
    return polar_transform(std::move(tail));
}

}  // namespace polar
