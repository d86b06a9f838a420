#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "blognet/util.hpp"

namespace blognet {

enum class EventKind { Post, Comment };

struct EventRecord {
    std::string event_id;
    EventKind kind = EventKind::Post;
    std::string actor;
    std::string post;    // root post id; equals event_id for posts
    std::string parent;  // replied-to comment id; empty for posts and direct comments
    std::int64_t ts = 0; // minutes since epoch

    bool operator==(const EventRecord&) const = default;
};

struct ValidationReport {
    std::vector<std::string> orphan_comments;  // unresolved post/parent references
    std::vector<std::string> parent_cycles;    // comments on a looping parent chain
    std::size_t out_of_order = 0;              // source lines that went back in time
    std::vector<std::string> duplicate_ids;

    bool empty() const {
        return orphan_comments.empty() && parent_cycles.empty() && out_of_order == 0 &&
               duplicate_ids.empty();
    }
};

// Canonical event log: records sorted by (ts, event_id), duplicate-free,
// with by-user and by-post indexes. Immutable once built.
class EventLog {
  public:
    EventLog() = default;
    static EventLog from_records(std::vector<EventRecord> records,
                                 std::size_t source_out_of_order = 0);

    const std::vector<EventRecord>& events() const { return events_; }
    const EventRecord* find(const std::string& event_id) const;

    // indexes into events(), each in canonical order
    const std::vector<std::size_t>& of_user(const std::string& user) const;
    const std::vector<std::size_t>& of_post(const std::string& post) const;

    // deterministic (sorted) id listings
    const std::vector<std::string>& user_ids() const { return user_ids_; }
    const std::vector<std::string>& post_ids() const { return post_ids_; }

    std::size_t n_users() const { return user_ids_.size(); }
    std::size_t n_posts() const { return n_posts_; }
    std::size_t n_comments() const { return events_.size() - n_posts_; }
    std::size_t source_out_of_order() const { return source_out_of_order_; }

  private:
    std::vector<EventRecord> events_;
    std::unordered_map<std::string, std::size_t> id_index_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_user_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_post_;
    std::vector<std::string> user_ids_;
    std::vector<std::string> post_ids_;
    std::size_t n_posts_ = 0;
    std::size_t source_out_of_order_ = 0;
};

enum class LogFormat { JsonLines, Tsv };

struct ParseResult {
    EventLog log;
    ValidationReport report;
};

// Strict mode keeps unresolvable comments in the log (flagged in the report);
// lenient mode drops them, including their reply descendants. Malformed lines
// and duplicate ids always raise ParseError with the line number.
ParseResult parse_event_log(std::istream& in, LogFormat format, bool lenient = false);

ValidationReport validate_log(const EventLog& log);

void write_event_log(std::ostream& os, const EventLog& log, LogFormat format);

struct FilterCriteria {
    std::uint64_t min_comments = 0;
    std::uint64_t max_comments = std::numeric_limits<std::uint64_t>::max();
    std::int64_t window_lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t window_hi = std::numeric_limits<std::int64_t>::max();
};

// Keeps posts whose comment count (within the time window) lies in
// [min_comments, max_comments], plus those comments; everything else goes.
EventLog filter_events(const EventLog& log, const FilterCriteria& criteria);

}  // namespace blognet
