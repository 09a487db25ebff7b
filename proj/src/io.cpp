#include "weightseq/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "weightseq/error.hpp"

namespace wseq::io {

using nlohmann::json;

std::string number(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    return fmt::format("{:.17g}", v);
}

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20)
                    out += fmt::format("\\u{:04x}", static_cast<unsigned>(c));
                else
                    out += c;
        }
    }
    return out + "\"";
}

void JsonWriter::newline() {
    os_ << '\n';
    for (std::size_t i = 0; i < stack_.size(); ++i) os_ << "  ";
}

void JsonWriter::separate() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (stack_.empty()) return;
    if (!stack_.back().empty) os_ << ',';
    stack_.back().empty = false;
    newline();
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    os_ << '{';
    stack_.push_back({false, true});
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    const bool empty = stack_.back().empty;
    stack_.pop_back();
    if (!empty) newline();
    os_ << '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    os_ << '[';
    stack_.push_back({true, true});
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    const bool empty = stack_.back().empty;
    stack_.pop_back();
    if (!empty) newline();
    os_ << ']';
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    separate();
    os_ << quoted(k) << ": ";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separate();
    os_ << number(v);
    return *this;
}

JsonWriter& JsonWriter::value(long long v) {
    separate();
    os_ << v;
    return *this;
}

JsonWriter& JsonWriter::value(unsigned long long v) {
    separate();
    os_ << v;
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separate();
    os_ << (v ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
    separate();
    os_ << quoted(v);
    return *this;
}

JsonWriter& JsonWriter::null() {
    separate();
    os_ << "null";
    return *this;
}

JsonWriter& JsonWriter::numbers(const std::vector<double>& v) {
    separate();
    os_ << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os_ << (i ? ", " : "") << number(v[i]);
    os_ << ']';
    return *this;
}

void JsonWriter::finish() { os_ << '\n'; }

namespace {

double get_number(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    fail(ErrorKind::Io, std::string("field ") + what + " is not a number");
}

std::vector<double> get_numbers(const json& j, const char* what) {
    if (!j.is_array()) fail(ErrorKind::Io, std::string("field ") + what + " is not an array");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(get_number(e, what));
    return v;
}

json parse(std::istream& is, const char* what) {
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        fail(ErrorKind::Io, std::string("cannot parse ") + what + ": " + e.what());
    }
}

TailModel read_tail(const json& t) {
    const std::string kind = t.value("kind", "unknown");
    if (kind == "power")
        return PowerTail{get_number(t.at("c"), "tail.c"), get_number(t.at("s"), "tail.s"),
                         t.at("k0").get<std::size_t>()};
    if (kind == "ratio") return RatioTail{get_number(t.at("q"), "tail.q"), t.at("k0").get<std::size_t>()};
    if (kind == "unknown") return UnknownTail{};
    fail(ErrorKind::Io, "unknown tail kind '" + kind + "'");
}

}  // namespace


void write_tail(JsonWriter& w, const TailModel& tail) {
    w.begin_object();
    if (const auto* pt = std::get_if<PowerTail>(&tail)) {
        w.key("kind").value("power").key("c").value(pt->c).key("s").value(pt->s).key("k0").value(pt->k0);
    } else if (const auto* rt = std::get_if<RatioTail>(&tail)) {
        w.key("kind").value("ratio").key("q").value(rt->q).key("k0").value(rt->k0);
    } else {
        w.key("kind").value("unknown");
    }
    w.end_object();
}

void write_sequence(std::ostream& os, const WeightSequence& W) {
    JsonWriter w(os);
    w.begin_object();
    w.key("format").value("weightseq-sequence").key("version").value(1);
    w.key("label").value(W.label()).key("horizon").value(W.horizon());
    w.key("tail");
    write_tail(w, W.tail());
    w.key("log_quotients").numbers({W.log_quotients().begin(), W.log_quotients().end()});
    if (W.built_from_terms()) w.key("log_terms").numbers({W.log_terms().begin(), W.log_terms().end()});
    w.end_object();
    w.finish();
}

WeightSequence read_sequence(std::istream& is) {
    const json j = parse(is, "sequence file");
    try {
        const std::string label = j.value("label", "");
        const TailModel tail = j.contains("tail") ? read_tail(j.at("tail")) : TailModel{UnknownTail{}};
        if (j.contains("log_terms")) return WeightSequence::from_log_terms(get_numbers(j.at("log_terms"), "log_terms"), tail, label);
        auto q = get_numbers(j.at("log_quotients"), "log_quotients");
        if (j.contains("horizon") && j.at("horizon").get<std::size_t>() != q.size())
            fail(ErrorKind::Io, "horizon does not match the number of quotients");
        return WeightSequence::from_quotients(std::move(q), tail, label);
    } catch (const json::exception& e) {
        fail(ErrorKind::Io, std::string("malformed sequence file: ") + e.what());
    }
}

WeightSequence read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
    return read_sequence(in);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
    out << content;
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

void write_sequence_file(const std::string& path, const WeightSequence& W) {
    std::ostringstream os;
    write_sequence(os, W);
    write_text_file(path, os.str());
}

void write_report(JsonWriter& w, const ConditionReport& r) {
    w.begin_object();
    w.key("name").value(r.name);
    w.key("verdict").value(to_string(r.verdict.verdict));
    w.key("bound").value(r.verdict.bound);
    w.key("reason").value(r.verdict.reason);
    w.key("verdict_witnesses").begin_array();
    for (auto i : r.verdict.witnesses) w.value(i);
    w.end_array();
    w.key("running_sup").numbers({r.running_sup.lo, r.running_sup.hi});
    w.key("witnesses").begin_array();
    for (auto i : r.witnesses) w.value(i);
    w.end_array();
    if (!r.notes.empty()) {
        w.key("notes").begin_object();
        for (const auto& [k, v] : r.notes) w.key(k).value(v);
        w.end_object();
    }
    w.key("profile").begin_array();
    for (const auto& pt : r.profile) w.numbers({pt.x, pt.value.lo, pt.value.hi});
    w.end_array();
    w.end_object();
}

void write_report_csv(std::ostream& os, const ConditionReport& r) {
    os << "x,lo,hi\n";
    for (const auto& pt : r.profile)
        os << fmt::format("{:.17g},{:.17g},{:.17g}\n", pt.x, pt.value.lo, pt.value.hi);
}

void write_blocks(JsonWriter& w, const std::vector<BlockRecord>& blocks) {
    w.begin_array();
    for (const auto& b : blocks) {
        w.begin_object();
        w.key("i").value(b.i).key("p").value(static_cast<unsigned long long>(b.p));
        w.key("q").value(static_cast<unsigned long long>(b.q));
        w.key("a").value(b.a).key("b").value(b.b);
        w.key("log_C").value(b.log_C).key("log_A").value(b.log_A);
        w.key("log_nu_inner").value(b.log_nu_inner).key("log_nu_outer").value(b.log_nu_outer);
        w.key("p_next");
        if (b.p_next != 0)
            w.value(static_cast<unsigned long long>(b.p_next));
        else
            w.null();
        w.key("log_p_next").value(b.log_p_next);
        w.end_object();
    }
    w.end_array();
}

std::vector<BlockRecord> read_blocks(std::istream& is) {
    json j = parse(is, "blocks file");
    if (j.is_object() && j.contains("blocks")) j = j.at("blocks");
    if (!j.is_array()) fail(ErrorKind::Io, "blocks file must hold an array of blocks");
    std::vector<BlockRecord> out;
    try {
        for (const auto& e : j) {
            BlockRecord b;
            b.i = e.at("i").get<std::size_t>();
            b.p = e.at("p").get<std::uint64_t>();
            b.q = e.at("q").get<std::uint64_t>();
            b.a = get_number(e.at("a"), "a");
            b.b = get_number(e.at("b"), "b");
            b.log_C = get_number(e.at("log_C"), "log_C");
            b.log_A = get_number(e.at("log_A"), "log_A");
            b.log_nu_inner = get_number(e.at("log_nu_inner"), "log_nu_inner");
            b.log_nu_outer = get_number(e.at("log_nu_outer"), "log_nu_outer");
            b.p_next = e.at("p_next").is_null() ? 0 : e.at("p_next").get<std::uint64_t>();
            b.log_p_next = get_number(e.at("log_p_next"), "log_p_next");
            out.push_back(b);
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::Io, std::string("malformed blocks file: ") + e.what());
    }
    return out;
}

std::vector<BlockRecord> read_blocks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
    return read_blocks(in);
}

void write_verification(JsonWriter& w, const VerificationReport& r) {
    w.begin_object();
    w.key("passed").value(r.passed());
    w.key("checks").begin_array();
    for (const auto& c : r.checks) {
        w.begin_object();
        w.key("block").value(c.block).key("name").value(c.name).key("passed").value(c.passed);
        w.key("lhs").value(c.lhs).key("rhs").value(c.rhs).key("detail").value(c.detail);
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

}  // namespace wseq::io
