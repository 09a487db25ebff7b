#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "weightseq/conditions.hpp"
#include "weightseq/counterexample.hpp"
#include "weightseq/io.hpp"

using namespace wseq;

namespace {
const BlockCheck* find(const VerificationReport& v, std::size_t block, const std::string& name) {
    for (const auto& c : v.checks)
        if (c.block == block && c.name == name) return &c;
    return nullptr;
}

std::string blocks_text(const std::vector<BlockRecord>& b) {
    std::ostringstream os;
    io::JsonWriter w(os);
    io::write_blocks(w, b);
    w.finish();
    return os.str();
}
}  // namespace

TEST_CASE("default construction") {
    const auto res = build_counterexample({});
    REQUIRE(res.blocks.size() == 2);
    CHECK_FALSE(res.overflow);
    const auto& b1 = res.blocks[0];
    CHECK(b1.p == 3);
    CHECK(b1.q == 5);
    CHECK(b1.a == 3.0);
    CHECK(b1.b == 2.0);
    CHECK(res.blocks[1].p == b1.p_next);
    CHECK(res.blocks[1].q == 2 * res.blocks[1].p - 1);
    for (std::size_t k = 1; k <= 3; ++k) CHECK(res.sequence.log_quotient(k) == 0.0);
    CHECK(res.sequence.horizon() == res.blocks[1].q);
    CHECK(blocks_text(res.blocks) == blocks_text(build_counterexample({}).blocks));
}

TEST_CASE("structural checks pass on the default construction") {
    const auto res = build_counterexample({});
    const auto v = verify_blocks(res.sequence, res.blocks);
    for (std::size_t i : {1, 2}) {
        for (const char* name : {"q-at-least-2p-1", "outer-quotient", "A-definition", "C>=1", "quotients", "ansatz-identity",
                                 "LC-junction", "LC-block", "gamma1-large-at-q"}) {
            const BlockCheck* c = find(v, i, name);
            REQUIRE(c != nullptr);
            CHECK_MESSAGE(c->passed, "block ", i, " ", name);
        }
    }
    CHECK(find(v, 1, "C1-lower-bound")->passed);
    CHECK(find(v, 2, "C-lower-bound")->passed);
    CHECK(find(v, 1, "order")->passed);
    // materializing from the records reproduces the sequence
    const auto W = materialize_blocks(res.blocks);
    REQUIRE(W.horizon() == res.sequence.horizon());
    for (std::size_t p = 1; p <= W.horizon(); ++p) CHECK(W.log_quotient(p) == res.sequence.log_quotient(p));
}

TEST_CASE("moderate growth fails and gamma1 cannot hold") {
    const auto res = build_counterexample({});
    const auto mg = check_mg_blocks(res.sequence, res.blocks);
    CHECK(mg.verdict.verdict == Verdict::Fails);
    CHECK_FALSE(mg.verdict.witnesses.empty());
    CHECK(check_gamma1(res.sequence).verdict.verdict != Verdict::Holds);
    const BlockSequenceView view(res.sequence, res.blocks);
    for (const auto& b : res.blocks) CHECK(view.log_gamma1(b.q).lo > b.log_A);
}

TEST_CASE("tampering is detected") {
    auto res = build_counterexample({});
    auto blocks = res.blocks;
    blocks[1].log_C -= std::log(2.0);
    const auto v = verify_blocks(materialize_blocks(blocks), blocks);
    CHECK_FALSE(v.passed());
    CHECK_FALSE(find(v, 2, "C-lower-bound")->passed);
    CHECK(throws_kind([&] { throw_if_failed(v); }, ErrorKind::VerificationFailed));
}

TEST_CASE("a gevrey pseudo-block fails the large-profile check at q") {
    BlockRecord r;
    r.i = 1;
    r.p = 3;
    r.q = 5;
    r.a = 3.0;
    r.b = 2.0;
    r.log_C = 0.0;
    r.log_A = 5.0 * std::log(2.0);
    r.log_nu_inner = std::log(16.0);
    r.log_nu_outer = std::log(48.0);
    r.p_next = 9;
    r.log_p_next = std::log(9.0);
    const auto v = verify_blocks(gevrey(2.0, 64), {r});
    REQUIRE(find(v, 1, "gamma1-large-at-q") != nullptr);
    CHECK_FALSE(find(v, 1, "gamma1-large-at-q")->passed);
}

TEST_CASE("overflow keeps the partial result") {
    CounterexampleConfig cfg;
    cfg.num_blocks = 50;
    const auto res = build_counterexample(cfg);
    CHECK(res.overflow);
    CHECK(res.blocks.size() == 2);
    CHECK_FALSE(res.overflow_reason.empty());
}

TEST_CASE("schedule validation") {
    CounterexampleConfig cfg;
    cfg.q1 = 4;
    CHECK(throws_kind([&] { build_counterexample(cfg); }, ErrorKind::ScheduleInvalid));
    cfg = {};
    cfg.a = {0.0, 1.0};
    CHECK(throws_kind([&] { build_counterexample(cfg); }, ErrorKind::ScheduleInvalid));
    cfg = {};
    cfg.p1 = 2;
    cfg.q1 = 3;
    CHECK(throws_kind([&] { build_counterexample(cfg); }, ErrorKind::ScheduleInvalid));
}
