#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "polar/psg_model.hpp"

using namespace polar;

namespace {

SoftVector noiseless_llr(const BitVector& x) {
    SoftVector llr(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) llr[i] = (x[i] ? -1.0 : 1.0) * 10.0;
    return llr;
}

SoftVector random_llr(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    SoftVector llr(n);
    for (auto& v : llr) v = dist(rng);
    return llr;
}

BitVector random_mask(std::mt19937_64& rng, std::size_t n) {
    BitVector mask(n);
    for (auto& b : mask) b = static_cast<Bit>(rng() & 1);
    return mask;
}

}  // namespace

TEST_CASE("reset yields an all-zero n/2 window") {
    const PsgState s8 = psg_reset(construct_frozen(8, 4, 0.5));
    CHECK(s8.regs == BitVector(4, 0));
    CHECK(s8.commits == 0);
    CHECK(s8.bits_consumed == 0);
    CHECK(psg_reset(construct_frozen(2, 1, 0.5)).regs.size() == 1);
}

TEST_CASE("scalar commits: shift, fold, and the two-bit trace") {
    const CodeConfig cfg = construct_frozen(4, 4, 0.5);
    PsgState state = psg_reset(cfg);

    SUBCASE("committing zero is a pure right shift") {
        state.regs = {1, 0};
        PsgState after = psg_commit_bit(state, 0, generator_row(4, 0));
        CHECK(after.regs == BitVector{0, 1});
        CHECK(after.bits_consumed == 1);
    }

    SUBCASE("u0 then u1 leaves [u1, u0^u1]") {
        for (unsigned u0 = 0; u0 < 2; ++u0) {
            for (unsigned u1 = 0; u1 < 2; ++u1) {
                PsgState s = psg_reset(cfg);
                s = psg_commit_bit(std::move(s), static_cast<Bit>(u0), generator_row(4, 0));
                CHECK(s.regs == BitVector{static_cast<Bit>(u0), 0});
                CHECK(psg_read_block(s, 0) == BitVector{static_cast<Bit>(u0)});
                s = psg_commit_bit(std::move(s), static_cast<Bit>(u1), generator_row(4, 1));
                CHECK(s.regs == BitVector{static_cast<Bit>(u1), static_cast<Bit>(u0 ^ u1)});
                const BitVector want =
                    oracle_partial_sums(BitVector{static_cast<Bit>(u0), static_cast<Bit>(u1)}, 1);
                CHECK(psg_read_block(s, 1) == want);
            }
        }
    }

    SUBCASE("full n=4 trace of u=[1,1,0,1] tracks the oracle") {
        const BitVector u{1, 1, 0, 1};
        PsgState s = psg_reset(cfg);
        for (std::size_t i = 0; i < 4; ++i) {
            s = psg_commit_bit(std::move(s), u[i], generator_row(4, i));
            CHECK(s.regs[0] == u[i]);
            const std::size_t t = i + 1;
            for (unsigned stage = 0; stage <= 1; ++stage) {
                const std::size_t len = std::size_t{1} << stage;
                if (t % len == 0 && (t / len) % 2 == 1) {
                    const BitVector prefix(u.begin(), u.begin() + static_cast<long>(t));
                    CHECK(psg_read_block(s, stage) == oracle_partial_sums(prefix, stage));
                }
            }
        }
        CHECK_THROWS_AS(psg_commit_bit(std::move(s), 0, generator_row(4, 0)), std::logic_error);
    }
}

TEST_CASE("block commit loads the reversed block and folds shifted rows") {
    const CodeConfig cfg = construct_frozen(8, 4, 0.5);

    SUBCASE("first commit of a full-window block is the plain reversal") {
        PsgState s = psg_reset(cfg);
        s = psg_commit_block(std::move(s), BitVector{1, 1, 1, 1}, generator_row(8, 3));
        CHECK(s.regs == BitVector{1, 1, 1, 1});
        CHECK(s.commits == 1);
        CHECK(s.bits_consumed == 4);
        CHECK(psg_read_block(s, 2) == BitVector{1, 1, 1, 1});

        PsgState t = psg_reset(cfg);
        t = psg_commit_block(std::move(t), BitVector{1, 0, 0, 1}, generator_row(8, 3));
        CHECK(t.regs == BitVector{1, 0, 0, 1});  // reversed [1,0,0,1]
    }

    SUBCASE("second block folds through the row mask") {
        PsgState s = psg_reset(config_from_mask(8, BitVector{1, 1, 0, 0, 1, 0, 0, 0}));
        s = psg_commit_block(std::move(s), BitVector{0, 0}, generator_row(8, 1));
        CHECK(s.regs == BitVector(4, 0));
        s = psg_commit_block(std::move(s), BitVector{1, 0}, generator_row(8, 3));
        CHECK(s.regs == BitVector{0, 1, 0, 1});
        // stage-2 read sees the re-encoded four-bit prefix [0,0,1,0]
        CHECK(psg_read_block(s, 2) == BitVector{1, 0, 1, 0});
        CHECK(psg_read_block(s, 2) == oracle_partial_sums(BitVector{0, 0, 1, 0}, 2));
    }

    SUBCASE("rejects oversized, misaligned and overflowing blocks") {
        PsgState s = psg_reset(cfg);
        CHECK_THROWS_AS(psg_commit_block(std::move(s), BitVector(8, 0), generator_row(8, 7)),
                        std::invalid_argument);
        PsgState t = psg_reset(cfg);
        t = psg_commit_bit(std::move(t), 1, generator_row(8, 0));
        CHECK_THROWS_AS(psg_commit_block(std::move(t), BitVector{1, 0}, generator_row(8, 2)),
                        std::invalid_argument);
        PsgState v = psg_reset(cfg);
        v = psg_commit_block(std::move(v), BitVector(4, 0), generator_row(8, 3));
        v = psg_commit_block(std::move(v), BitVector(4, 0), generator_row(8, 7));
        CHECK_THROWS_AS(psg_commit_block(std::move(v), BitVector(4, 0), generator_row(8, 7)),
                        std::logic_error);
    }
}

TEST_CASE("unit block commits degenerate to the scalar rule") {
    std::mt19937_64 rng(61);
    for (std::size_t n = 2; n <= 64; n *= 2) {
        const CodeConfig cfg = construct_frozen(n, n, 0.5);
        for (int frame = 0; frame < 40; ++frame) {
            PsgState by_bit = psg_reset(cfg);
            PsgState by_block = psg_reset(cfg);
            for (std::size_t i = 0; i < n; ++i) {
                const Bit u = static_cast<Bit>(rng() & 1);
                const BitVector row = generator_row(n, i);
                by_bit = psg_commit_bit(std::move(by_bit), u, row);
                by_block = psg_commit_block(std::move(by_block), BitVector{u}, row);
                CHECK(by_bit.regs == by_block.regs);
            }
        }
    }
}

TEST_CASE("reads are gated to completed left siblings") {
    const CodeConfig cfg = construct_frozen(8, 4, 0.5);
    PsgState s = psg_reset(cfg);
    CHECK_THROWS_AS(psg_read_block(s, 0), std::logic_error);  // nothing decoded
    s = psg_commit_bit(std::move(s), 1, generator_row(8, 0));
    CHECK(psg_read_block(s, 0) == BitVector{1});
    s = psg_commit_bit(std::move(s), 0, generator_row(8, 1));
    CHECK_THROWS_AS(psg_read_block(s, 0), std::logic_error);  // t=2 is even at stage 0
    CHECK(psg_read_block(s, 1).size() == 2);
    CHECK_THROWS_AS(psg_read_block(s, 3), std::logic_error);  // beyond the window
}

TEST_CASE("replayed decodes match the re-encoding oracle, exhaustive n=8") {
    const CodeConfig cfg = construct_frozen(8, 4, 0.5);
    std::vector<std::size_t> info;
    for (std::size_t i = 0; i < 8; ++i)
        if (!cfg.frozen[i]) info.push_back(i);
    for (unsigned message = 0; message < 16; ++message) {
        BitVector u(8, 0);
        for (std::size_t j = 0; j < info.size(); ++j)
            u[info[j]] = static_cast<Bit>((message >> j) & 1);
        DecodeTrace trace;
        fast_ssc_decode(cfg, noiseless_llr(encode(cfg, u)), ScheduleCaps{}, &trace);
        const PsgReplayReport report = psg_replay(cfg, trace);
        CHECK(report.ok());
        CHECK(report.reads > 0);
        CHECK(report.max_read_index < cfg.n / 2);
    }
}

TEST_CASE("replayed decodes match the oracle on random noisy frames") {
    std::mt19937_64 rng(67);
    for (std::size_t n = 16; n <= 64; n *= 2) {
        for (int frame = 0; frame < 40; ++frame) {
            const CodeConfig cfg = config_from_mask(n, random_mask(rng, n));
            // random caps mix block commits with forced single-bit commits
            ScheduleCaps caps;
            if (rng() & 1) caps.max_spc = std::size_t{1} << (rng() % 4);
            if (rng() & 1) caps.max_rep = std::size_t{1} << (rng() % 4);
            DecodeTrace trace;
            fast_ssc_decode(cfg, random_llr(rng, n), caps, &trace);
            const PsgReplayReport report = psg_replay(cfg, trace);
            CHECK(report.ok());
            CHECK(report.max_read_index < n / 2);

            DecodeTrace serial;
            sc_decode(cfg, random_llr(rng, n), &serial);
            const PsgReplayReport serial_report = psg_replay(cfg, serial);
            CHECK(serial_report.ok());
            CHECK(serial_report.reads == n - 1);
        }
    }
}

TEST_CASE("a whole-root block needs no commit") {
    for (std::size_t k : {std::size_t{0}, std::size_t{16}}) {
        const CodeConfig cfg = construct_frozen(16, k, 0.5);
        std::mt19937_64 rng(71);
        DecodeTrace trace;
        fast_ssc_decode(cfg, random_llr(rng, 16), ScheduleCaps{}, &trace);
        REQUIRE(trace.size() == 1);
        const PsgReplayReport rep = psg_replay(cfg, trace, true);
        CHECK(rep.ok());
        CHECK(rep.commits == 0);
        CHECK(rep.reads == 0);
        CHECK(rep.trace.empty());
    }
}

TEST_CASE("an injected register fault is caught") {
    const CodeConfig cfg = construct_frozen(8, 4, 0.5);
    DecodeTrace trace;
    const BitVector u{0, 0, 0, 1, 0, 1, 1, 1};
    fast_ssc_decode(cfg, noiseless_llr(encode(cfg, u)), ScheduleCaps{}, &trace);
    const PsgFault fault{0, 0};
    const PsgReplayReport report = psg_replay(cfg, trace, false, &fault);
    CHECK_FALSE(report.ok());
    CHECK(report.mismatches > 0);
}

TEST_CASE("replay keeps a per-commit trace on request") {
    const CodeConfig cfg = construct_frozen(8, 4, 0.5);
    DecodeTrace trace;
    const BitVector u{0, 0, 0, 1, 0, 1, 1, 1};
    fast_ssc_decode(cfg, noiseless_llr(encode(cfg, u)), ScheduleCaps{}, &trace);
    const PsgReplayReport report = psg_replay(cfg, trace, true);
    REQUIRE(report.trace.size() == 2);
    CHECK(report.trace[0].n_c == 4);
    CHECK(report.trace[0].last_bit == 3);
    CHECK(report.trace[0].beta == BitVector{1, 1, 1, 1});
    CHECK(report.trace[0].regs_after == BitVector{1, 1, 1, 1});
    CHECK(report.trace[1].last_bit == 7);
}

TEST_CASE("collapsed per-block masks reproduce the per-register rule") {
    // with uniform block lengths, one AND per block drives the whole window
    std::mt19937_64 rng(73);
    for (std::size_t n = 8; n <= 64; n *= 2) {
        for (std::size_t n_c = 1; n_c <= n / 2; n_c *= 2) {
            const CodeConfig cfg = construct_frozen(n, n, 0.5);
            PsgState state = psg_reset(cfg);
            BitVector shadow(n / 2, 0);
            for (std::size_t start = 0; start + n_c <= n; start += n_c) {
                BitVector beta(n_c);
                for (auto& b : beta) b = static_cast<Bit>(rng() & 1);
                const std::size_t last = start + n_c - 1;
                if (n_c == 1) {
                    state = psg_commit_bit(std::move(state), beta[0], generator_row(n, last));
                } else {
                    state = psg_commit_block(std::move(state), beta, generator_row(n, last));
                }
                const BitVector masks = block_masks(n, last, n_c);
                BitVector next(n / 2);
                for (std::size_t k = 0; k < n / 2; ++k) {
                    const Bit reversed = beta[n_c - 1 - (k % n_c)];
                    next[k] = (k < n_c)
                                  ? reversed
                                  : static_cast<Bit>(shadow[k - n_c] ^ (masks[k / n_c] & reversed));
                }
                shadow = std::move(next);
                CHECK(shadow == state.regs);
            }
        }
    }
}

TEST_CASE("row masks collapse per aligned block") {
    MaskCheckReport rep;
    const BitVector masks = block_masks(8, 3, 4, &rep);
    CHECK(masks == BitVector{1, 0});
    CHECK(rep.ok());
    CHECK(rep.checks == 2);
    CHECK(block_masks(8, 5, 1).size() == 8);  // width 1 is trivially constant
    CHECK_THROWS_AS(block_masks(8, 4, 4), std::invalid_argument);  // not a block end

    for (std::size_t n = 2; n <= 64; n *= 2) CHECK(blockwise_mask_scan(n).ok());

    const CodeConfig cfg = construct_frozen(32, 13, 0.5);
    CHECK(blockwise_mask_property(cfg, build_schedule(cfg)).ok());
}

TEST_CASE("mux network counts and select mapping") {
    const MuxNetworkReport big = mux_network_report(1024);
    CHECK(big.mux_count == 4608);
    CHECK(big.select_width == 4);
    CHECK(big.select[5] == 5);  // stage index maps directly to its binary code
    CHECK(mux_network_report(4).mux_count == 2);
    CHECK_THROWS_AS(mux_network_report(2), std::invalid_argument);
}

TEST_CASE("shifter counts and control decoder size") {
    const ShifterReport big = shifter_report(1024);
    CHECK(big.mux_count == 4599);
    CHECK(big.decoder_k == 4);
    CHECK(shifter_report(4).mux_count == 1);
    CHECK(shifter_report(4).decoder_k == 1);
    CHECK(shifter_report(16).mux_count == 21);
    CHECK(shifter_report(16).decoder_k == 2);
}

TEST_CASE("critical path with unit delays") {
    const DelayModel unit;
    CHECK(critical_path(1024, unit, PsgMode::sr_cb_psg) == 6.0);
    CHECK(critical_path(1024, unit, PsgMode::sr_psg) == 2.0);
    CHECK(critical_path(4, unit, PsgMode::sr_cb_psg) == 3.0);
    const DelayModel skewed{0.5, 2.0, 3.0};
    CHECK(critical_path(256, skewed, PsgMode::sr_psg) == 5.0);
    CHECK(critical_path(256, skewed, PsgMode::sr_cb_psg) == doctest::Approx(3 * 0.5 + 5.0));
}

TEST_CASE("resource formulas and analyzer consistency") {
    const ResourceReport r = resource_report(1024);
    CHECK(r.dff == 512);
    CHECK(r.mux == 9207);
    CHECK(r.xor_gates == 511);
    CHECK(r.and_gates == 512);
    CHECK(r.rom_bits == 104858);

    const ResourceReport small = resource_report(4);
    CHECK(small.dff == 2);
    CHECK(small.mux == 3);
    CHECK(small.xor_gates == 1);
    CHECK(small.and_gates == 2);
    CHECK(small.rom_bits == 2);

    for (std::size_t n = 4; n <= 4096; n *= 2)
        CHECK(mux_network_report(n).mux_count + shifter_report(n).mux_count ==
              resource_report(n).mux);

    const ResourceReport serial = conventional_resource_report(1024);
    CHECK(serial.dff == 1024);
    CHECK(serial.xor_gates == 1022);
    CHECK(serial.and_gates == 512);
}

TEST_CASE("ROM holds one generator row per block") {
    const CodeConfig rate1 = construct_frozen(16, 16, 0.5);
    const RomImage single = rom_build(rate1, build_schedule(rate1));
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].last_bit == 15);
    CHECK(single.rows[0].bits == BitVector(16, 1));
    CHECK(single.total_bits() == 16);

    const CodeConfig cfg = construct_frozen(8, 4, 0.5);
    const RomImage two = rom_build(cfg, build_schedule(cfg));
    REQUIRE(two.rows.size() == 2);
    CHECK(two.rows[0].last_bit == 3);
    CHECK(two.rows[1].last_bit == 7);
    CHECK(two.total_bits() == 16);

    // fully expanded schedule stores the whole matrix
    const CodeConfig adversarial = config_from_mask(8, BitVector{0, 1, 0, 1, 0, 1, 0, 1});
    const RomImage full = rom_build(adversarial, build_schedule(adversarial));
    REQUIRE(full.rows.size() == 8);
    const oracle::Matrix g = oracle::kronecker_power(8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(full.rows[i].bits == g[i]);
}
