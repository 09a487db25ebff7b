// weightseq: construct, check and compare weight sequences from the command line.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "weightseq/conditions.hpp"
#include "weightseq/constructions.hpp"
#include "weightseq/counterexample.hpp"
#include "weightseq/error.hpp"
#include "weightseq/io.hpp"
#include "weightseq/kernels.hpp"
#include "weightseq/sequence.hpp"
#include "weightseq/tails.hpp"
#include "weightseq/weights.hpp"

using namespace wseq;

namespace {

enum Exit { kOk = 0, kPrecondition = 2, kIo = 3, kVerification = 4, kOverflow = 5 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Io: return kIo;
        case ErrorKind::VerificationFailed: return kVerification;
        case ErrorKind::Overflow: return kOverflow;
        default: return kPrecondition;
    }
}

void error_record(std::string_view kind, std::string_view message) {
    std::cerr << "{\"error\": " << io::quoted(kind) << ", \"message\": " << io::quoted(message) << "}\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string& s, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::InvalidArgument, "bad number '" + s + "' in '" + text + "'");
}

std::size_t to_index(const std::string& s, const std::string& text) {
    const double v = to_double(s, text);
    if (v < 0 || v != std::floor(v)) fail(ErrorKind::InvalidArgument, "bad index '" + s + "' in '" + text + "'");
    return static_cast<std::size_t>(v);
}

bool is_family(const std::string& text) {
    return text.rfind("gevrey:", 0) == 0 || text.rfind("power-tail:", 0) == 0 || text.rfind("constant:", 0) == 0;
}

WeightSequence family(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts[0] == "gevrey" && parts.size() == 3) return gevrey(to_double(parts[1], text), to_index(parts[2], text));
    if (parts[0] == "power-tail" && parts.size() == 4)
        return power_tail_family(to_double(parts[1], text), to_double(parts[2], text), to_index(parts[3], text));
    if (parts[0] == "constant" && parts.size() == 2) return constant_one(to_index(parts[1], text));
    fail(ErrorKind::InvalidArgument, "unknown family string '" + text + "' (gevrey:s:H, power-tail:c:s:H, constant:H)");
}

WeightSequence load(const std::string& text) { return is_family(text) ? family(text) : io::read_sequence_file(text); }

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        io::write_text_file(path, content);
}

std::string sequence_text(const WeightSequence& W) {
    std::ostringstream os;
    io::write_sequence(os, W);
    return os.str();
}

void intervals(io::JsonWriter& w, const std::vector<Interval>& v) {
    w.begin_array();
    for (const auto& i : v) w.numbers({i.lo, i.hi});
    w.end_array();
}

struct Config {
    std::string family, in, what, cond, M, N, out, report, format = "text", verify, verify_seq;
    int s = 1, r = 1;
    double C = 1.0;
    std::size_t pmax = 0;
    std::size_t blocks = 2;
    double a_slope = 1.0, a_offset = 2.0, b_slope = 1.0, b_offset = 1.0;
    std::uint64_t p1 = 3, q1 = 5;
};

WeightSequence primary_input(const Config& c) {
    if (!c.family.empty()) return family(c.family);
    if (!c.in.empty()) return io::read_sequence_file(c.in);
    if (!c.N.empty()) return load(c.N);
    fail(ErrorKind::InvalidArgument, "an input sequence is required (--family or --in)");
}

int cmd_construct(const Config& c) {
    const WeightSequence N = primary_input(c);
    std::ostringstream side;
    io::JsonWriter w(side);
    w.begin_object().key("what").value(c.what).key("input").value(N.label());
    std::string seq;
    if (c.what == "descendant") {
        const DescendantResult d = descendant(N);
        double sup = 0.0;
        for (std::size_t p = 1; p <= N.horizon(); ++p)
            sup = std::max(sup, d.sigma[p - 1].hi / std::exp(N.log_quotient(p)));
        w.key("tau1").numbers({d.tau1.lo, d.tau1.hi});
        w.key("sigma_over_nu_sup").value(sup);
        w.key("tau");
        intervals(w, d.tau);
        w.key("sigma");
        intervals(w, d.sigma);
        seq = sequence_text(d.sequence);
    } else if (c.what == "modified-descendant") {
        const ModifiedDescendant m = modified_descendant(N);
        w.key("C").value(m.C).key("p_C").value(m.p_C).key("sigma_over_nu_sup").value(m.sigma_over_nu_sup);
        seq = sequence_text(m.sequence);
    } else if (c.what == "optimal") {
        const OptimalSequenceResult o = optimal_sequence(N, c.s, c.C);
        w.key("s").value(o.s).key("C").value(o.C).key("crosscheck_deviation").value(o.crosscheck_deviation);
        w.key("argmin").begin_array();
        for (auto j : o.argmin) w.value(j);
        w.end_array();
        w.key("log_term_enclosure");
        intervals(w, o.log_term_enclosure);
        seq = sequence_text(o.sequence);
    } else if (c.what == "minorant") {
        const std::size_t pmax = c.pmax ? c.pmax : N.horizon();
        const MinorantResult m = log_convex_minorant(N, pmax);
        w.key("p_max").value(pmax).key("valid_through").value(m.valid_through);
        w.key("hull").begin_array();
        for (auto v : m.hull) w.value(v);
        w.end_array();
        w.key("boundary").begin_array();
        for (std::size_t p = m.valid_through + 1; p <= pmax; ++p) w.value(p);
        w.end_array();
        seq = sequence_text(m.sequence);
    } else if (c.what == "ramified-root") {
        w.key("r").value(c.r);
        seq = sequence_text(ramified_root(N, c.r));
    } else if (c.what == "ramified-optimal") {
        w.key("r").value(c.r).key("s").value(c.s);
        seq = sequence_text(ramified_optimal(N, c.r, c.s));
    } else if (c.what == "ramified-descendant") {
        w.key("r").value(c.r);
        seq = sequence_text(ramified_descendant(N, c.r));
    } else {
        fail(ErrorKind::InvalidArgument, "unknown --what '" + c.what + "'");
    }
    w.end_object();
    w.finish();
    emit(c.out, seq);
    std::string report_path = c.report;
    if (report_path.empty() && !c.out.empty() && c.out != "-") report_path = c.out + ".report.json";
    if (!report_path.empty()) emit(report_path, side.str());
    return kOk;
}

void emit_report(const Config& c, const ConditionReport& r) {
    std::ostringstream os;
    if (c.format == "csv") {
        io::write_report_csv(os, r);
    } else {
        io::JsonWriter w(os);
        io::write_report(w, r);
        w.finish();
    }
    emit(c.out, os.str());
}

int cmd_check(const Config& c) {
    const std::string& k = c.cond;
    auto one = [&] { return primary_input(c); };
    auto two = [&](WeightSequence* M, WeightSequence* N) {
        if (c.N.empty() && c.family.empty() && c.in.empty()) fail(ErrorKind::InvalidArgument, "--N is required");
        *N = c.N.empty() ? one() : load(c.N);
        *M = c.M.empty() ? *N : load(c.M);
    };
    if (k == "nq") return emit_report(c, check_nq(one())), kOk;
    if (k == "gamma1") return emit_report(c, check_gamma1(one())), kOk;
    if (k == "mg") return emit_report(c, check_mg(one())), kOk;
    if (k == "lc") return emit_report(c, check_lc(one())), kOk;
    WeightSequence M = constant_one(8), N = constant_one(8);
    two(&M, &N);
    if (k == "sv") return emit_report(c, check_SV(M, N, c.s)), kOk;
    if (k == "mixed-gamma1") return emit_report(c, check_mixed_gamma1(M, N)), kOk;
    if (k == "sv-r") return emit_report(c, check_SV_ramified(M, N, c.r, c.s)), kOk;
    if (k == "gamma-r") return emit_report(c, check_mixed_gamma_r(M, N, c.r)), kOk;
    if (k == "snq-weights") return emit_report(c, check_snq(M, N)), kOk;
    if (k == "preceq") {
        const DirectedDefect mn = preceq_defect(M, N), nm = preceq_defect(N, M);
        ConditionReport r;
        r.name = "preceq";
        const std::size_t H = std::min(M.horizon(), N.horizon());
        for (std::size_t p = 1; p <= H; ++p)
            r.profile.push_back({static_cast<double>(p),
                                 Interval::point((M.log_term(p) - N.log_term(p)) / static_cast<double>(p))});
        finalize(r);
        r.notes = {{"defect_M_over_N", mn.defect}, {"argmax_M_over_N", static_cast<double>(mn.argmax)},
                   {"defect_N_over_M", nm.defect}, {"argmax_N_over_M", static_cast<double>(nm.argmax)}};
        r.verdict = TriState::inconclusive(mn.defect, "directed defects at the horizon; equivalence is a trend");
        return emit_report(c, r), kOk;
    }
    fail(ErrorKind::InvalidArgument, "unknown --cond '" + k + "'");
}

int cmd_compare(const Config& c) {
    if (c.M.empty() || c.N.empty()) fail(ErrorKind::InvalidArgument, "compare needs --M and --N");
    const WeightSequence M = load(c.M), N = load(c.N);
    const std::size_t H = std::min(M.horizon(), N.horizon());
    const DirectedDefect mn = preceq_defect(M, N), nm = preceq_defect(N, M);
    std::vector<double> root_m(H), root_n(H);
    for (std::size_t p = 1; p <= H; ++p) {
        root_m[p - 1] = little_m(M, p) / static_cast<double>(p);
        root_n[p - 1] = little_m(N, p) / static_cast<double>(p);
    }
    const AlmostIncreasing am = almost_increasing_defect(root_m), an = almost_increasing_defect(root_n);
    std::ostringstream os;
    if (c.format == "csv") {
        os << "p,log_root_M,log_root_N,difference\n";
        for (std::size_t p = 1; p <= H; ++p)
            os << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", p, M.log_root(p), N.log_root(p),
                              M.log_root(p) - N.log_root(p));
    } else {
        // Trend: running max of the N-over-M defect over the second half of the horizon versus the first.
        double first = -kInf, second = -kInf;
        for (std::size_t p = 1; p <= H; ++p) {
            const double v = (N.log_term(p) - M.log_term(p)) / static_cast<double>(p);
            (p <= H / 2 ? first : second) = std::max(p <= H / 2 ? first : second, v);
        }
        io::JsonWriter w(os);
        w.begin_object();
        w.key("M").value(M.label()).key("N").value(N.label()).key("horizon").value(H);
        w.key("defect_M_over_N").value(mn.defect).key("argmax_M_over_N").value(mn.argmax);
        w.key("defect_N_over_M").value(nm.defect).key("argmax_N_over_M").value(nm.argmax);
        w.key("N_over_M_first_half_max").value(first).key("N_over_M_second_half_max").value(second);
        w.key("N_over_M_trend").value(second > first ? "increasing" : "not increasing");
        w.key("almost_increasing_little_m_root_M").numbers({am.defect, double(am.p), double(am.q)});
        w.key("almost_increasing_little_m_root_N").numbers({an.defect, double(an.p), double(an.q)});
        w.end_object();
        w.finish();
    }
    emit(c.out, os.str());
    return kOk;
}

std::string verification_text(const VerificationReport& v) {
    std::ostringstream os;
    io::JsonWriter w(os);
    io::write_verification(w, v);
    w.finish();
    return os.str();
}

int report_verification(const VerificationReport& v) {
    if (const BlockCheck* f = v.first_failure()) {
        error_record("VerificationFailed", fmt::format("block {}: {} (lhs {:.17g}, rhs {:.17g})", f->block, f->name,
                                                       f->lhs, f->rhs));
        return kVerification;
    }
    return kOk;
}

int cmd_counterexample(const Config& c) {
    const std::filesystem::path dir = c.out.empty() ? "." : c.out;
    if (!c.verify.empty()) {
        const auto blocks = io::read_blocks_file(c.verify);
        const WeightSequence W = c.verify_seq.empty() ? materialize_blocks(blocks) : io::read_sequence_file(c.verify_seq);
        const VerificationReport v = verify_blocks(W, blocks);
        std::cout << verification_text(v);
        return report_verification(v);
    }
    CounterexampleConfig cfg;
    cfg.num_blocks = c.blocks;
    cfg.a = {c.a_slope, c.a_offset};
    cfg.b = {c.b_slope, c.b_offset};
    cfg.p1 = c.p1;
    cfg.q1 = c.q1;
    const CounterexampleResult res = build_counterexample(cfg);
    std::filesystem::create_directories(dir);
    io::write_sequence_file((dir / "sequence.json").string(), res.sequence);
    {
        std::ostringstream os;
        io::JsonWriter w(os);
        w.begin_object();
        w.key("requested_blocks").value(c.blocks).key("built_blocks").value(res.blocks.size());
        w.key("overflow").value(res.overflow).key("overflow_reason").value(res.overflow_reason);
        w.key("blocks");
        io::write_blocks(w, res.blocks);
        w.end_object();
        w.finish();
        io::write_text_file((dir / "blocks.json").string(), os.str());
    }
    const VerificationReport v = verify_blocks(res.sequence, res.blocks);
    io::write_text_file((dir / "verification.json").string(), verification_text(v));
    const BlockSequenceView view(res.sequence, res.blocks);
    const WeightSequence L = WeightSequence::from_log_terms(view.log_optimal_terms(), UnknownTail{}, "counterexample/optimal:s=1:C=1");
    io::write_sequence_file((dir / "optimal.json").string(), L);
    {
        std::ostringstream os;
        io::JsonWriter w(os);
        io::write_report(w, check_mg_blocks(res.sequence, res.blocks));
        w.finish();
        io::write_text_file((dir / "mg.json").string(), os.str());
    }
    if (res.overflow) {
        error_record("Overflow", res.overflow_reason);
        return kOverflow;
    }
    return report_verification(v);
}

int cmd_report(const Config& c) {
    if (c.in.empty()) fail(ErrorKind::InvalidArgument, "report needs --in <report.json>");
    std::ifstream in(c.in);
    if (!in) fail(ErrorKind::Io, "cannot open '" + c.in + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Io, std::string("cannot parse report: ") + e.what());
    }
    if (!j.contains("profile") || !j.contains("name")) fail(ErrorKind::Io, "not a condition report");
    std::ostringstream os;
    auto val = [](const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>() == "inf" ? kInf : -kInf;
        if (v.is_null()) return std::nan("");
        return v.get<double>();
    };
    if (c.format == "csv") {
        os << "x,lo,hi\n";
        for (const auto& t : j.at("profile"))
            os << fmt::format("{:.17g},{:.17g},{:.17g}\n", val(t[0]), val(t[1]), val(t[2]));
    } else {
        os << "condition: " << j.at("name").get<std::string>() << '\n';
        os << "verdict: " << j.value("verdict", "") << '\n';
        os << "bound: " << fmt::format("{:.17g}", val(j.at("bound"))) << '\n';
        os << "running_sup: [" << fmt::format("{:.17g}, {:.17g}", val(j.at("running_sup")[0]), val(j.at("running_sup")[1]))
           << "]\n";
        os << "profile_points: " << j.at("profile").size() << '\n';
        os << "reason: " << j.value("reason", "") << '\n';
    }
    emit(c.out, os.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    kernels::configure_threads_from_env();
    CLI::App app{"weightseq: weight sequence constructions and condition checks"};
    app.require_subcommand(1);
    Config c;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--family", c.family, "builtin family: gevrey:s:H, power-tail:c:s:H, constant:H");
        s->add_option("--in", c.in, "input file");
        s->add_option("--out", c.out, "output path (default stdout)");
        s->add_option("--format", c.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
        s->add_option("--s", c.s, "positive integer s")->check(CLI::PositiveNumber);
        s->add_option("--r", c.r, "ramification r")->check(CLI::PositiveNumber);
        s->add_option("--C", c.C, "constant C >= 1")->check(CLI::Range(1.0, 1e300));
    };

    auto* construct = app.add_subcommand("construct", "build a derived sequence");
    add_common(construct);
    construct->add_option("--what", c.what, "descendant | modified-descendant | optimal | minorant | ramified-root | ramified-optimal | ramified-descendant")->required();
    construct->add_option("--pmax", c.pmax, "minorant range");
    construct->add_option("--report", c.report, "sidecar report path");

    auto* check = app.add_subcommand("check", "run a condition check");
    add_common(check);
    check->add_option("--cond", c.cond, "nq | gamma1 | mg | lc | sv | mixed-gamma1 | sv-r | gamma-r | snq-weights | preceq")->required();
    check->add_option("--M", c.M, "first sequence (family string or file)");
    check->add_option("--N", c.N, "second sequence (family string or file)");

    auto* compare = app.add_subcommand("compare", "directed defects between two sequences");
    add_common(compare);
    compare->add_option("--M", c.M)->required();
    compare->add_option("--N", c.N)->required();

    auto* counter = app.add_subcommand("counterexample", "generate or verify the block construction");
    counter->add_option("--blocks", c.blocks, "number of blocks")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    counter->add_option("--a-slope", c.a_slope);
    counter->add_option("--a-offset", c.a_offset);
    counter->add_option("--b-slope", c.b_slope);
    counter->add_option("--b-offset", c.b_offset);
    counter->add_option("--p1", c.p1);
    counter->add_option("--q1", c.q1);
    counter->add_option("--out", c.out, "output directory");
    counter->add_option("--verify", c.verify, "verify a blocks file instead of building");
    counter->add_option("--in", c.verify_seq, "sequence file for --verify (default: rebuilt from the blocks)");

    auto* report = app.add_subcommand("report", "summarize a condition report file");
    report->add_option("--in", c.in)->required();
    report->add_option("--out", c.out);
    report->add_option("--format", c.format)->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_record("Usage", e.what());
        return kPrecondition;
    }

    try {
        if (*construct) return cmd_construct(c);
        if (*check) return cmd_check(c);
        if (*compare) return cmd_compare(c);
        if (*counter) return cmd_counterexample(c);
        if (*report) return cmd_report(c);
    } catch (const Error& e) {
        error_record(to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        error_record("Io", e.what());
        return kIo;
    } catch (const std::exception& e) {
        error_record("Internal", e.what());
        return 1;
    }
    return kOk;
}
