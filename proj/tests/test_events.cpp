#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>

#include "blognet/events.hpp"

using namespace blognet;

namespace {

ParseResult parse_str(const std::string& text, LogFormat fmt = LogFormat::JsonLines,
                      bool lenient = false) {
    std::istringstream in(text);
    return parse_event_log(in, fmt, lenient);
}

const std::string kSmallLog =
    R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n"
    R"({"id":"c1","type":"comment","user":"u2","post":"p1","ts":105})" "\n"
    R"({"id":"c2","type":"comment","user":"u3","post":"p1","parent":"c1","ts":110})" "\n";

}  // namespace

TEST_CASE("one post plus two comments parses with the right counts") {
    const auto res = parse_str(kSmallLog);
    CHECK(res.log.n_users() == 3);
    CHECK(res.log.n_posts() == 1);
    CHECK(res.log.n_comments() == 2);
    CHECK(res.report.empty());
    REQUIRE(res.log.find("c2") != nullptr);
    CHECK(res.log.find("c2")->parent == "c1");
    CHECK(res.log.find("nope") == nullptr);
}

TEST_CASE("empty stream gives an empty log") {
    const auto res = parse_str("");
    CHECK(res.log.events().empty());
    CHECK(res.log.n_users() == 0);
    CHECK(res.log.n_posts() == 0);
    CHECK(res.log.n_comments() == 0);
    CHECK(res.report.empty());
}

TEST_CASE("events are sorted by timestamp with id tie-break") {
    const std::string text =
        R"({"id":"p2","type":"post","user":"u1","ts":50})" "\n"
        R"({"id":"p1","type":"post","user":"u1","ts":20})" "\n"
        R"({"id":"p0","type":"post","user":"u1","ts":50})" "\n";
    const auto res = parse_str(text);
    REQUIRE(res.log.events().size() == 3);
    CHECK(res.log.events()[0].event_id == "p1");
    CHECK(res.log.events()[1].event_id == "p0");  // ts tie broken lexicographically
    CHECK(res.log.events()[2].event_id == "p2");
    CHECK(res.report.out_of_order == 1);
    CHECK(res.log.source_out_of_order() == 1);
}

TEST_CASE("malformed lines fail with their line number") {
    const std::string text =
        R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n"
        "this is not json\n";
    try {
        parse_str(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_str(R"({"id":"p1","type":"wat","user":"u1","ts":1})" "\n"), ParseError);
    CHECK_THROWS_AS(parse_str(R"({"id":"p1","type":"post","ts":1})" "\n"), ParseError);
    CHECK_THROWS_AS(parse_str(R"({"id":"p1","type":"post","user":"u1"})" "\n"), ParseError);
    CHECK_THROWS_AS(parse_str(R"({"id":"p1","type":"post","user":"u1","ts":-5})" "\n"), ParseError);
    CHECK_THROWS_AS(
        parse_str(R"({"id":"p1","type":"post","user":"u1","parent":"c1","ts":1})" "\n"),
        ParseError);
    CHECK_THROWS_AS(
        parse_str(R"({"id":"p1","type":"post","user":"u1","post":"p2","ts":1})" "\n"),
        ParseError);
}

TEST_CASE("fractional timestamps are floored to minutes") {
    const auto res = parse_str(R"({"id":"p1","type":"post","user":"u1","ts":100.9})" "\n");
    CHECK(res.log.events()[0].ts == 100);
}

TEST_CASE("duplicate event ids are rejected") {
    const std::string text =
        R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n"
        R"({"id":"p1","type":"post","user":"u2","ts":200})" "\n";
    CHECK_THROWS_AS(parse_str(text), ParseError);
}

TEST_CASE("comments and blank lines are skipped") {
    const std::string text =
        "\n# a comment line\n"
        R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n";
    CHECK(parse_str(text).log.events().size() == 1);
}

TEST_CASE("orphan comments: kept when strict, dropped when lenient") {
    const std::string text =
        R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n"
        R"({"id":"c1","type":"comment","user":"u2","post":"p99","ts":105})" "\n"
        R"({"id":"c2","type":"comment","user":"u3","post":"p99","parent":"c1","ts":110})" "\n";

    const auto strict = parse_str(text);
    CHECK(strict.log.events().size() == 3);
    REQUIRE(strict.report.orphan_comments.size() == 2);
    CHECK(strict.report.orphan_comments[0] == "c1");

    const auto lenient = parse_str(text, LogFormat::JsonLines, true);
    CHECK(lenient.log.events().size() == 1);
    CHECK(lenient.log.n_comments() == 0);
    CHECK(validate_log(lenient.log).empty());
    REQUIRE(lenient.report.orphan_comments.size() == 2);
}

TEST_CASE("descendants of a dropped comment are dropped too") {
    const std::string text =
        R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n"
        R"({"id":"c1","type":"comment","user":"u2","post":"p1","parent":"cmissing","ts":105})" "\n"
        R"({"id":"c2","type":"comment","user":"u3","post":"p1","parent":"c1","ts":110})" "\n"
        R"({"id":"c3","type":"comment","user":"u4","post":"p1","ts":111})" "\n";
    const auto lenient = parse_str(text, LogFormat::JsonLines, true);
    CHECK(lenient.log.n_comments() == 1);
    CHECK(lenient.log.find("c3") != nullptr);
    CHECK(validate_log(lenient.log).empty());
}

TEST_CASE("parent on a different post is an orphan reference") {
    const std::string text =
        R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n"
        R"({"id":"p2","type":"post","user":"u1","ts":101})" "\n"
        R"({"id":"c1","type":"comment","user":"u2","post":"p1","ts":105})" "\n"
        R"({"id":"c2","type":"comment","user":"u3","post":"p2","parent":"c1","ts":110})" "\n";
    const auto res = parse_str(text);
    REQUIRE(res.report.orphan_comments.size() == 1);
    CHECK(res.report.orphan_comments[0] == "c2");
}

TEST_CASE("looping parent chains are reported as cycles") {
    const std::string text =
        R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n"
        R"({"id":"ca","type":"comment","user":"u2","post":"p1","parent":"cb","ts":105})" "\n"
        R"({"id":"cb","type":"comment","user":"u3","post":"p1","parent":"ca","ts":106})" "\n";
    const auto res = parse_str(text);
    CHECK_FALSE(res.report.parent_cycles.empty());
    CHECK(validate_log(res.log).parent_cycles.size() == res.report.parent_cycles.size());

    const auto lenient = parse_str(text, LogFormat::JsonLines, true);
    CHECK(lenient.log.n_comments() == 0);
}

TEST_CASE("json and tsv serialization round-trip") {
    const auto original = parse_str(kSmallLog).log;
    for (LogFormat fmt : {LogFormat::JsonLines, LogFormat::Tsv}) {
        std::ostringstream os;
        write_event_log(os, original, fmt);
        std::istringstream is(os.str());
        const auto back = parse_event_log(is, fmt);
        CHECK(back.log.events() == original.events());
        CHECK(back.report.empty());
    }
}

TEST_CASE("serialized json lines use the documented field order") {
    const auto log = parse_str(kSmallLog).log;
    std::ostringstream os;
    write_event_log(os, log, LogFormat::JsonLines);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == R"({"id":"p1","type":"post","user":"u1","post":"p1","ts":100})");
    std::getline(is, line);
    CHECK(line == R"({"id":"c1","type":"comment","user":"u2","post":"p1","ts":105})");
    std::getline(is, line);
    CHECK(line ==
          R"({"id":"c2","type":"comment","user":"u3","post":"p1","parent":"c1","ts":110})");
}

TEST_CASE("tsv parsing validates its shape") {
    CHECK(parse_str("p1\tpost\tu1\tp1\t-\t100\n", LogFormat::Tsv).log.events().size() == 1);
    CHECK(parse_str("p1\tpost\tu1\t-\t-\t100\n", LogFormat::Tsv).log.events().size() == 1);
    CHECK_THROWS_AS(parse_str("p1\tpost\tu1\t-\t-\n", LogFormat::Tsv), ParseError);
    CHECK_THROWS_AS(parse_str("p1\tpost\tu1\t-\t-\tabc\n", LogFormat::Tsv), ParseError);
    CHECK_THROWS_AS(parse_str("p1\tpost\tu1\t-\tc9\t100\n", LogFormat::Tsv), ParseError);
    CHECK_THROWS_AS(parse_str("p1\tpost\tu1\tp2\t-\t100\n", LogFormat::Tsv), ParseError);
    CHECK_THROWS_AS(parse_str("c1\tcomment\tu1\t-\t-\t100\n", LogFormat::Tsv), ParseError);
}

TEST_CASE("user and post indexes cover exactly the owned events") {
    const auto log = parse_str(kSmallLog).log;
    CHECK(log.of_user("u2").size() == 1);
    CHECK(log.of_post("p1").size() == 3);
    CHECK(log.of_user("unknown").empty());
    CHECK(log.user_ids() == std::vector<std::string>{"u1", "u2", "u3"});
    CHECK(log.post_ids() == std::vector<std::string>{"p1"});
}

TEST_CASE("filter keeps posts whose comment count is in range") {
    std::string text = R"({"id":"pa","type":"post","user":"u1","ts":0})" "\n"
                       R"({"id":"pb","type":"post","user":"u1","ts":1})" "\n";
    for (int i = 0; i < 3; ++i)
        text += R"({"id":"a)" + std::to_string(i) + R"(","type":"comment","user":"u2","post":"pa","ts":10})" "\n";
    for (int i = 0; i < 150; ++i)
        text += R"({"id":"b)" + std::to_string(i) + R"(","type":"comment","user":"u2","post":"pb","ts":10})" "\n";
    const auto log = parse_str(text).log;

    FilterCriteria crit;
    crit.max_comments = 100;
    const auto kept = filter_events(log, crit);
    CHECK(kept.n_posts() == 1);
    CHECK(kept.post_ids() == std::vector<std::string>{"pa"});
    CHECK(kept.n_comments() == 3);

    // identity with default criteria
    const auto all = filter_events(log, {});
    CHECK(all.events() == log.events());

    // idempotent
    const auto twice = filter_events(kept, crit);
    CHECK(twice.events() == kept.events());

    FilterCriteria inverted;
    inverted.min_comments = 10;
    inverted.max_comments = 5;
    CHECK_THROWS_AS(filter_events(log, inverted), Error);
}

TEST_CASE("filter window drops outside events and broken chains") {
    const std::string text =
        R"({"id":"p1","type":"post","user":"u1","ts":100})" "\n"
        R"({"id":"c1","type":"comment","user":"u2","post":"p1","ts":150})" "\n"
        R"({"id":"c2","type":"comment","user":"u3","post":"p1","parent":"c1","ts":250})" "\n"
        R"({"id":"p2","type":"post","user":"u1","ts":300})" "\n"
        R"({"id":"c3","type":"comment","user":"u2","post":"p2","ts":310})" "\n";
    const auto log = parse_str(text).log;

    FilterCriteria crit;
    crit.window_lo = 100;
    crit.window_hi = 260;
    const auto kept = filter_events(log, crit);
    CHECK(kept.n_posts() == 1);
    CHECK(kept.n_comments() == 2);  // c3's post is outside the window

    // window that cuts out the mid-chain parent drops the reply as well
    crit.window_hi = 140;
    crit.min_comments = 0;
    const auto narrow = filter_events(log, crit);
    CHECK(narrow.n_posts() == 1);
    CHECK(narrow.n_comments() == 0);

    FilterCriteria inverted;
    inverted.window_lo = 10;
    inverted.window_hi = 5;
    CHECK_THROWS_AS(filter_events(log, inverted), Error);
}

TEST_CASE("from_records enforces record invariants") {
    CHECK_THROWS_AS(EventLog::from_records({{"p1", EventKind::Post, "u1", "p2", "", 0}}), Error);
    CHECK_THROWS_AS(EventLog::from_records({{"p1", EventKind::Post, "u1", "p1", "c1", 0}}), Error);
    CHECK_THROWS_AS(EventLog::from_records({{"p1", EventKind::Post, "", "p1", "", 0}}), Error);
    CHECK_THROWS_AS(EventLog::from_records({{"p1", EventKind::Post, "u1", "p1", "", -1}}), Error);
    CHECK_THROWS_AS(EventLog::from_records({{"c1", EventKind::Comment, "u1", "", "", 0}}), Error);
    std::vector<EventRecord> dup = {{"p1", EventKind::Post, "u1", "p1", "", 0},
                                    {"p1", EventKind::Post, "u1", "p1", "", 1}};
    CHECK_THROWS_AS(EventLog::from_records(dup), Error);
}
