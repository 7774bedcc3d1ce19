#include "polar/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "polar/psg_model.hpp"
#include "polar/sim_harness.hpp"

namespace polar {

namespace {

constexpr double kNoiselessLlrMagnitude = 10.0;

struct CodeArgs {
    std::size_t n = 0;
    std::size_t k = 0;
    bool k_set = false;
    std::string frozen_file;
    double design_param = 0.5;
};

void add_code_options(CLI::App* cmd, CodeArgs& args, bool need_k) {
    cmd->add_option("--n", args.n, "block length (power of two)");
    auto* k_opt = cmd->add_option("--k", args.k, "information length (construction mode)");
    cmd->add_option("--frozen-file", args.frozen_file,
                    "frozen-set file: 'n k' then ascending frozen indices");
    cmd->add_option("--design-param", args.design_param,
                    "erasure probability for the construction (default 0.5)");
    if (need_k) k_opt->check(CLI::NonNegativeNumber);
}

CodeConfig resolve_code(const CodeArgs& args) {
    if (!args.frozen_file.empty()) {
        if (args.k_set)
            throw std::invalid_argument("give either --frozen-file or --k, not both");
        CodeConfig cfg = load_frozen_file(args.frozen_file);
        if (args.n != 0 && args.n != cfg.n)
            throw std::invalid_argument("--n disagrees with the frozen-set file");
        return cfg;
    }
    if (args.n == 0 || !args.k_set)
        throw std::invalid_argument("need --frozen-file, or --n together with --k");
    return construct_frozen(args.n, args.k, args.design_param);
}

std::size_t cap_from_flag(std::size_t v) { return v == 0 ? kNoCap : v; }

struct InputArgs {
    std::string llr_inline;
    std::string llr_file;
    std::string codeword_hex;
};

void add_input_options(CLI::App* cmd, InputArgs& args) {
    cmd->add_option("--llr", args.llr_inline, "comma-separated channel LLRs");
    cmd->add_option("--llr-file", args.llr_file, "file of whitespace-separated LLRs");
    cmd->add_option("--codeword", args.codeword_hex,
                    "codeword hex; decoded from noiseless +/-10 LLRs");
}

SoftVector parse_llr_list(const std::string& text) {
    SoftVector llr;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw std::invalid_argument("bad LLR value: " + item);
        llr.push_back(v);
    }
    return llr;
}

SoftVector resolve_llr(const InputArgs& args, const CodeConfig& cfg) {
    const int given = (!args.llr_inline.empty()) + (!args.llr_file.empty()) +
                      (!args.codeword_hex.empty());
    if (given != 1)
        throw std::invalid_argument("give exactly one of --llr, --llr-file, --codeword");
    SoftVector llr;
    if (!args.llr_inline.empty()) {
        llr = parse_llr_list(args.llr_inline);
    } else if (!args.llr_file.empty()) {
        std::ifstream in(args.llr_file);
        if (!in) throw IoError("cannot open LLR file: " + args.llr_file);
        double v = 0.0;
        while (in >> v) llr.push_back(v);
        if (!in.eof()) throw IoError("bad LLR file contents: " + args.llr_file);
    } else {
        const BitVector x = from_hex(args.codeword_hex, cfg.n);
        llr.resize(cfg.n);
        for (std::size_t i = 0; i < cfg.n; ++i)
            llr[i] = (x[i] ? -1.0 : 1.0) * kNoiselessLlrMagnitude;
    }
    if (llr.size() != cfg.n)
        throw std::invalid_argument("LLR count " + std::to_string(llr.size()) +
                                    " does not match n=" + std::to_string(cfg.n));
    return llr;
}

// Stream sink honoring --out.
struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = nullptr;

    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream = &fallback;
        } else {
            file.open(path);
            if (!file) throw IoError("cannot open output file: " + path);
            stream = &file;
        }
    }
    std::ostream& os() { return *stream; }
};

std::string trimmed_file_contents(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
    while (!text.empty() && is_space(text.back())) text.pop_back();
    std::size_t first = 0;
    while (first < text.size() && is_space(text[first])) ++first;
    return text.substr(first);
}

PsgFault parse_fault(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--inject-fault wants COMMIT:REGISTER");
    PsgFault fault;
    fault.after_commit = std::stoul(text.substr(0, colon));
    fault.reg_index = std::stoul(text.substr(colon + 1));
    return fault;
}

// ---- command bodies ------------------------------------------------------

int cmd_encode(const CodeArgs& code, const std::string& u_hex, const std::string& u_file,
               const std::string& out_path, std::ostream& fallback) {
    const CodeConfig cfg = resolve_code(code);
    std::string hex = u_hex;
    if (hex.empty() && !u_file.empty()) hex = trimmed_file_contents(u_file);
    if (hex.empty()) throw std::invalid_argument("need --u or --u-file");
    const BitVector u = from_hex(hex, cfg.n);
    const BitVector x = encode(cfg, u);
    OutputTarget target(out_path, fallback);
    target.os() << to_hex(x) << '\n';
    return kExitOk;
}

int cmd_decode(const CodeArgs& code, const InputArgs& input, const std::string& decoder,
               std::size_t max_spc, std::size_t max_rep, const std::string& out_path,
               std::ostream& fallback) {
    const CodeConfig cfg = resolve_code(code);
    const SoftVector llr = resolve_llr(input, cfg);
    OutputTarget target(out_path, fallback);
    if (decoder == "sc") {
        const DecodeResult res = sc_decode(cfg, llr);
        target.os() << "u_hat=" << to_hex(res.u_hat) << " x_hat=" << to_hex(res.x_hat) << '\n';
    } else if (decoder == "fast") {
        const ScheduleCaps caps{cap_from_flag(max_spc), cap_from_flag(max_rep)};
        const FastSscResult res = fast_ssc_decode(cfg, llr, caps);
        target.os() << "u_hat=" << to_hex(res.result.u_hat)
                    << " x_hat=" << to_hex(res.result.x_hat) << '\n'
                    << "latency=" << res.latency << '\n';
    } else {
        throw std::invalid_argument("--decoder must be sc or fast");
    }
    return kExitOk;
}

int cmd_psg_trace(const CodeArgs& code, const InputArgs& input, std::size_t max_spc,
                  std::size_t max_rep, bool blocks_of_one, const std::string& fault_spec,
                  const std::string& out_path, std::ostream& fallback) {
    const CodeConfig cfg = resolve_code(code);
    const SoftVector llr = resolve_llr(input, cfg);
    DecodeTrace events;
    if (blocks_of_one) {
        sc_decode(cfg, llr, &events);
    } else {
        const ScheduleCaps caps{cap_from_flag(max_spc), cap_from_flag(max_rep)};
        fast_ssc_decode(cfg, llr, caps, &events);
    }
    std::optional<PsgFault> fault;
    if (!fault_spec.empty()) fault = parse_fault(fault_spec);
    const PsgReplayReport report =
        psg_replay(cfg, events, true, fault ? &*fault : nullptr);
    OutputTarget target(out_path, fallback);
    for (const PsgTraceRecord& rec : report.trace)
        target.os() << "commit " << rec.commit_index << ": n_c=" << rec.n_c
                    << " i=" << rec.last_bit << " beta=" << to_hex(rec.beta)
                    << " regs=" << to_hex(rec.regs_after) << '\n';
    target.os() << "PSG check: " << (report.ok() ? "OK" : "FAIL") << " commits=" << report.commits
                << " reads=" << report.reads << " mismatches=" << report.mismatches << '\n';
    return report.ok() ? kExitOk : kExitVerify;
}

int cmd_report(std::size_t n, const DelayModel& delays, const std::string& out_path,
               std::ostream& fallback) {
    const MuxNetworkReport mux = mux_network_report(n);
    const ShifterReport shifter = shifter_report(n);
    const ResourceReport block_psg = resource_report(n);
    const ResourceReport serial_psg = conventional_resource_report(n);
    const double cp_serial = critical_path(n, delays, PsgMode::sr_psg);
    const double cp_block = critical_path(n, delays, PsgMode::sr_cb_psg);

    OutputTarget target(out_path, fallback);
    std::ostream& os = target.os();
    os << "n=" << n << " m=" << log2_exact(n) << '\n';
    os << "critical path: sr-psg=" << cp_serial << " sr-cb-psg=" << cp_block << '\n';
    os << "mux network: " << mux.mux_count << " MUXs, select width " << mux.select_width
       << " (stage s -> binary s)\n";
    os << "shifter: " << shifter.mux_count << " MUXs, " << shifter.decoder_k << "-to-"
       << (std::size_t{1} << shifter.decoder_k) << " control decoder\n";
    os << "resources:       DFF      MUX      XOR      AND      ROM(bits)\n";
    const auto row = [&os](const char* name, const ResourceReport& r, bool has_mux_rom) {
        os << "  " << std::left << std::setw(12) << name << std::right;
        os << std::setw(7) << r.dff;
        if (has_mux_rom)
            os << std::setw(9) << r.mux;
        else
            os << std::setw(9) << '-';
        os << std::setw(9) << r.xor_gates << std::setw(9) << r.and_gates;
        if (has_mux_rom)
            os << std::setw(12) << r.rom_bits;
        else
            os << std::setw(12) << '-';
        os << '\n';
    };
    row("sr-cb-psg", block_psg, true);
    row("sr-psg", serial_psg, false);
    return kExitOk;
}

int cmd_latency_table(std::size_t n, std::vector<double> rates, double design_param,
                      std::size_t max_spc, std::size_t max_rep, const std::string& format,
                      const std::string& out_path, std::ostream& fallback) {
    if (rates.empty())
        rates.assign(std::begin(kReferenceRates), std::end(kReferenceRates));
    const ScheduleCaps caps{cap_from_flag(max_spc), cap_from_flag(max_rep)};
    const std::vector<LatencyRow> rows = latency_table(n, rates, caps, design_param);
    OutputTarget target(out_path, fallback);
    std::ostream& os = target.os();
    if (format == "csv") {
        os << "rate,k,baseline,latency,reduction_pct\n";
        for (const LatencyRow& r : rows) {
            std::ostringstream line;
            line.precision(4);
            line << r.rate << ',' << r.k << ',' << r.baseline << ',' << r.latency << ','
                 << r.reduction_pct;
            os << line.str() << '\n';
        }
        return kExitOk;
    }
    os << "n=" << n << " baseline=" << (2 * n - 2) << " cycles (2n-2)\n";
    os << " rate      k  latency  reduction%\n";
    for (const LatencyRow& r : rows) {
        std::ostringstream line;
        line << std::fixed << std::setprecision(3) << std::setw(5) << r.rate;
        line << std::setw(7) << r.k << std::setw(9) << r.latency;
        line << std::fixed << std::setprecision(1) << std::setw(11) << r.reduction_pct;
        os << line.str() << '\n';
    }
    os << "reference (published design, " << kReferenceBaselineCycles
       << "-cycle conventional baseline): rates";
    for (double r : kReferenceRates) os << ' ' << r;
    os << " -> latencies";
    for (std::size_t l : kReferenceLatencies) os << ' ' << l;
    os << " (reductions";
    for (double r : kReferenceReductionsPct) os << ' ' << r << '%';
    os << ")\n";
    return kExitOk;
}

struct SimulateArgs {
    CodeArgs code;
    std::vector<double> rates;
    std::vector<double> ebn0;
    std::size_t min_frames = 100;
    std::size_t min_errors = 100;
    std::size_t max_frames = 1000000;
    std::uint64_t seed = 1;
    std::string decoder = "both";
    std::size_t max_spc = 0;
    std::size_t max_rep = 0;
    unsigned threads = 1;
    std::string format = "csv";
    std::string out_path;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& fallback) {
    if (args.format != "csv" && args.format != "jsonl")
        throw std::invalid_argument("--format must be csv or jsonl");
    if (args.ebn0.empty()) throw std::invalid_argument("need at least one --ebn0 point");
    std::vector<CodeConfig> configs;
    if (!args.code.frozen_file.empty() || args.code.k_set) {
        if (!args.rates.empty())
            throw std::invalid_argument("give either --rate or --k/--frozen-file, not both");
        configs.push_back(resolve_code(args.code));
    } else {
        if (args.code.n == 0 || args.rates.empty())
            throw std::invalid_argument("need --n with --rate (or --k / --frozen-file)");
        for (double rate : args.rates) {
            if (!(rate > 0.0) || rate > 1.0)
                throw std::invalid_argument("--rate values must be in (0, 1]");
            const auto k = static_cast<std::size_t>(
                std::llround(rate * static_cast<double>(args.code.n)));
            configs.push_back(construct_frozen(args.code.n, k, args.code.design_param));
        }
    }
    std::vector<DecoderChoice> decoders;
    if (args.decoder == "sc")
        decoders = {DecoderChoice::sc};
    else if (args.decoder == "fast")
        decoders = {DecoderChoice::fast_ssc};
    else if (args.decoder == "both")
        decoders = {DecoderChoice::sc, DecoderChoice::fast_ssc};
    else
        throw std::invalid_argument("--decoder must be sc, fast or both");

    std::vector<SimRecord> records;
    for (const CodeConfig& cfg : configs) {
        const double rate = static_cast<double>(cfg.k) / static_cast<double>(cfg.n);
        for (double ebn0 : args.ebn0) {
            for (DecoderChoice dec : decoders) {
                MonteCarloOptions opt;
                opt.decoder = dec;
                opt.caps = ScheduleCaps{cap_from_flag(args.max_spc), cap_from_flag(args.max_rep)};
                opt.min_frames = args.min_frames;
                opt.min_errors = args.min_errors;
                opt.max_frames = args.max_frames;
                opt.threads = args.threads;
                const ChannelParams p{ebn0, rate, args.seed};
                const TrialStats stats = monte_carlo(cfg, p, opt);
                SimRecord rec;
                rec.ebn0_db = ebn0;
                rec.rate = rate;
                rec.decoder = to_string(dec);
                rec.frames = stats.frames;
                rec.ber = stats.ber(cfg.k);
                rec.fer = stats.fer();
                rec.avg_latency = stats.frames == 0
                                      ? 0.0
                                      : static_cast<double>(stats.total_latency_cycles) /
                                            static_cast<double>(stats.frames);
                records.push_back(std::move(rec));
            }
        }
    }

    OutputTarget target(args.out_path, fallback);
    if (args.format == "csv") {
        write_csv(target.os(), records);
    } else {
        for (const SimRecord& r : records) {
            nlohmann::json j;
            j["ebn0_db"] = r.ebn0_db;
            j["rate"] = r.rate;
            j["decoder"] = r.decoder;
            j["frames"] = r.frames;
            j["ber"] = r.ber;
            j["fer"] = r.fer;
            j["avg_latency"] = r.avg_latency;
            target.os() << j.dump() << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polar code toolkit: encoding, SC/fast-SSC decoding, channel simulation,\n"
                 "partial-sum generator tracing and hardware-cost reports.\n"
                 "Bit-vector hex places bit 0 at the most significant bit of the first digit.",
                 "polartool"};
    app.require_subcommand(1);
    int rc = kExitOk;

    // encode
    CodeArgs enc_code;
    std::string enc_u, enc_u_file, enc_out;
    auto* enc = app.add_subcommand("encode", "encode a full-length message vector");
    add_code_options(enc, enc_code, true);
    enc->add_option("--u", enc_u, "message bits as hex (length n, frozen positions zero)");
    enc->add_option("--u-file", enc_u_file, "file with the message hex");
    enc->add_option("--out", enc_out, "write output to a file");
    enc->callback([&] {
        enc_code.k_set = enc->count("--k") > 0;
        rc = cmd_encode(enc_code, enc_u, enc_u_file, enc_out, out);
    });

    // decode
    CodeArgs dec_code;
    InputArgs dec_input;
    std::string dec_decoder = "fast", dec_out;
    std::size_t dec_max_spc = 0, dec_max_rep = 0;
    auto* dec = app.add_subcommand("decode", "decode channel LLRs or a noiseless codeword");
    add_code_options(dec, dec_code, true);
    add_input_options(dec, dec_input);
    dec->add_option("--decoder", dec_decoder, "sc or fast (default fast)");
    dec->add_option("--max-spc", dec_max_spc, "largest SPC block (0 = unlimited, 1 = off)");
    dec->add_option("--max-rep", dec_max_rep, "largest REP block (0 = unlimited, 1 = off)");
    dec->add_option("--out", dec_out, "write output to a file");
    dec->callback([&] {
        dec_code.k_set = dec->count("--k") > 0;
        rc = cmd_decode(dec_code, dec_input, dec_decoder, dec_max_spc, dec_max_rep, dec_out, out);
    });

    // psg-trace
    CodeArgs psg_code;
    InputArgs psg_input;
    std::string psg_fault, psg_out;
    std::size_t psg_max_spc = 0, psg_max_rep = 0;
    bool psg_serial = false;
    auto* psg = app.add_subcommand(
        "psg-trace", "decode, replay block commits through the partial-sum generator and\n"
                     "check every read against re-encoded partial sums");
    add_code_options(psg, psg_code, true);
    add_input_options(psg, psg_input);
    psg->add_option("--max-spc", psg_max_spc, "largest SPC block (0 = unlimited, 1 = off)");
    psg->add_option("--max-rep", psg_max_rep, "largest REP block (0 = unlimited, 1 = off)");
    psg->add_flag("--blocks-of-one", psg_serial,
                  "commit single bits from the plain SC traversal (bit-serial mode)");
    psg->add_option("--inject-fault", psg_fault,
                    "flip register R after commit C, as C:R; forces a FAIL verdict");
    psg->add_option("--out", psg_out, "write output to a file");
    psg->callback([&] {
        psg_code.k_set = psg->count("--k") > 0;
        rc = cmd_psg_trace(psg_code, psg_input, psg_max_spc, psg_max_rep, psg_serial, psg_fault,
                           psg_out, out);
    });

    // report
    std::size_t rep_n = 0;
    DelayModel rep_delays;
    std::string rep_out;
    auto* rep = app.add_subcommand("report", "critical-path, mux/shifter and resource summary");
    rep->add_option("--n", rep_n, "block length (power of two >= 4)")->required();
    rep->add_option("--d-mux", rep_delays.d_mux, "MUX delay (default 1)");
    rep->add_option("--d-and", rep_delays.d_and, "AND delay (default 1)");
    rep->add_option("--d-xor", rep_delays.d_xor, "XOR delay (default 1)");
    rep->add_option("--out", rep_out, "write output to a file");
    rep->callback([&] { rc = cmd_report(rep_n, rep_delays, rep_out, out); });

    // latency-table
    std::size_t lat_n = 0;
    std::vector<double> lat_rates;
    double lat_design = 0.5;
    std::size_t lat_max_spc = 0, lat_max_rep = 0;
    std::string lat_format = "text", lat_out;
    auto* lat = app.add_subcommand("latency-table",
                                   "decode latency vs the 2n-2 traversal baseline per rate");
    lat->add_option("--n", lat_n, "block length (power of two)")->required();
    lat->add_option("--rate", lat_rates, "code rates")->delimiter(',');
    lat->add_option("--design-param", lat_design, "construction erasure probability");
    lat->add_option("--max-spc", lat_max_spc, "largest SPC block (0 = unlimited, 1 = off)");
    lat->add_option("--max-rep", lat_max_rep, "largest REP block (0 = unlimited, 1 = off)");
    lat->add_option("--format", lat_format, "text or csv");
    lat->add_option("--out", lat_out, "write output to a file");
    lat->callback([&] {
        rc = cmd_latency_table(lat_n, lat_rates, lat_design, lat_max_spc, lat_max_rep, lat_format,
                               lat_out, out);
    });

    // simulate
    SimulateArgs sim;
    auto* simc = app.add_subcommand("simulate", "Monte-Carlo BER/FER/latency sweep");
    add_code_options(simc, sim.code, true);
    simc->add_option("--rate", sim.rates, "code rates to construct")->delimiter(',');
    simc->add_option("--ebn0", sim.ebn0, "Eb/N0 points in dB")->delimiter(',');
    simc->add_option("--frames", sim.min_frames, "minimum frames per point (default 100)");
    simc->add_option("--min-errors", sim.min_errors, "frame errors to collect (default 100)");
    simc->add_option("--max-frames", sim.max_frames, "frame budget per point");
    simc->add_option("--seed", sim.seed, "channel seed (default 1)");
    simc->add_option("--decoder", sim.decoder, "sc, fast or both (default both)");
    simc->add_option("--max-spc", sim.max_spc, "largest SPC block (0 = unlimited, 1 = off)");
    simc->add_option("--max-rep", sim.max_rep, "largest REP block (0 = unlimited, 1 = off)");
    simc->add_option("--threads", sim.threads, "worker threads (default 1)");
    simc->add_option("--format", sim.format, "csv or jsonl (default csv)");
    simc->add_option("--out", sim.out_path, "write output to a file");
    simc->callback([&] {
        sim.code.k_set = simc->count("--k") > 0;
        rc = cmd_simulate(sim, out);
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return rc;
}

}  // namespace polar
