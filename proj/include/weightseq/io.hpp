#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "weightseq/conditions.hpp"
#include "weightseq/counterexample.hpp"
#include "weightseq/sequence.hpp"

namespace wseq::io {

/// 17 significant digits; infinities as the strings "inf" / "-inf", NaN as null.
std::string number(double v);
std::string quoted(std::string_view s);

/// Minimal deterministic JSON emitter (two-space indent, arrays of numbers on one line each).
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& os) : os_(os) {}
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double v);
    JsonWriter& value(long long v);
    JsonWriter& value(unsigned long long v);
    JsonWriter& value(std::size_t v) { return value(static_cast<unsigned long long>(v)); }
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view v);
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    JsonWriter& null();
    /// Array of numbers on a single line.
    JsonWriter& numbers(const std::vector<double>& v);
    void finish();

private:
    void separate();
    void newline();
    std::ostream& os_;
    struct Frame {
        bool array;
        bool empty;
    };
    std::vector<Frame> stack_;
    bool after_key_ = false;
};

void write_sequence(std::ostream& os, const WeightSequence& W);
WeightSequence read_sequence(std::istream& is);
WeightSequence read_sequence_file(const std::string& path);
void write_sequence_file(const std::string& path, const WeightSequence& W);

void write_tail(JsonWriter& w, const TailModel& tail);
void write_report(JsonWriter& w, const ConditionReport& r);
void write_report_csv(std::ostream& os, const ConditionReport& r);

void write_blocks(JsonWriter& w, const std::vector<BlockRecord>& blocks);
std::vector<BlockRecord> read_blocks(std::istream& is);
std::vector<BlockRecord> read_blocks_file(const std::string& path);
void write_verification(JsonWriter& w, const VerificationReport& r);

/// Opens for writing or throws Io.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wseq::io
