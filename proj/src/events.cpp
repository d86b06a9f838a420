#include "blognet/events.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

namespace blognet {

namespace {

using json = nlohmann::json;

const std::vector<std::size_t> kNoEvents;

void check_record(const EventRecord& r) {
    if (r.event_id.empty()) throw Error("event id must be non-empty");
    if (r.actor.empty()) throw Error("event '" + r.event_id + "' has no actor");
    if (r.ts < 0) throw Error("event '" + r.event_id + "' has negative timestamp");
    if (r.kind == EventKind::Post) {
        if (!r.parent.empty()) throw Error("post '" + r.event_id + "' must not have a parent");
        if (r.post != r.event_id)
            throw Error("post '" + r.event_id + "' must be its own root post");
    } else if (r.post.empty()) {
        throw Error("comment '" + r.event_id + "' has no post");
    }
}

// Per-comment reference resolution. A comment is valid when its root post
// exists and its parent chain reaches the post without breaks or loops.
struct Resolution {
    std::vector<char> valid;  // per record
    std::vector<std::string> orphans;
    std::vector<std::string> cycles;
};

Resolution resolve_references(const std::vector<EventRecord>& records) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < records.size(); ++i) index.emplace(records[i].event_id, i);

    enum : char { Unknown = 0, Valid, Orphan, Cycle, InProgress };
    std::vector<char> state(records.size(), Unknown);
    Resolution res;
    res.valid.assign(records.size(), 1);

    const auto is_post = [&](const std::string& id) {
        const auto it = index.find(id);
        return it != index.end() && records[it->second].kind == EventKind::Post;
    };

    for (std::size_t start = 0; start < records.size(); ++start) {
        if (records[start].kind == EventKind::Post || state[start] != Unknown) continue;
        // walk the parent chain, then unwind
        std::vector<std::size_t> chain;
        std::size_t cur = start;
        char verdict = Valid;
        for (;;) {
            if (state[cur] != Unknown && state[cur] != InProgress) {
                verdict = state[cur] == Valid ? Valid : Orphan;
                break;
            }
            if (state[cur] == InProgress) {
                verdict = Cycle;
                break;
            }
            state[cur] = InProgress;
            chain.push_back(cur);
            const EventRecord& r = records[cur];
            if (!is_post(r.post)) {
                verdict = Orphan;
                break;
            }
            if (r.parent.empty()) {
                verdict = Valid;
                break;
            }
            const auto pit = index.find(r.parent);
            if (pit == index.end() || records[pit->second].kind != EventKind::Comment ||
                records[pit->second].post != r.post) {
                verdict = Orphan;
                break;
            }
            cur = pit->second;
        }
        for (std::size_t i : chain) state[i] = verdict;
    }

    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].kind == EventKind::Post) continue;
        if (state[i] == Orphan) {
            res.valid[i] = 0;
            res.orphans.push_back(records[i].event_id);
        } else if (state[i] == Cycle) {
            res.valid[i] = 0;
            res.cycles.push_back(records[i].event_id);
        }
    }
    return res;
}

std::int64_t parse_ts(const json& v, std::size_t line_no) {
    if (v.is_number_integer()) {
        const std::int64_t ts = v.get<std::int64_t>();
        if (ts < 0) throw ParseError("negative timestamp", line_no);
        return ts;
    }
    if (v.is_number_float()) {
        const double ts = v.get<double>();
        if (ts < 0.0 || !std::isfinite(ts)) throw ParseError("bad timestamp", line_no);
        return static_cast<std::int64_t>(std::floor(ts));
    }
    throw ParseError("timestamp must be a number", line_no);
}

std::string need_string(const json& j, const char* key, std::size_t line_no) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string() || it->get<std::string>().empty())
        throw ParseError(std::string("missing or invalid '") + key + "'", line_no);
    return it->get<std::string>();
}

EventRecord parse_json_line(const std::string& line, std::size_t line_no) {
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError("malformed JSON record", line_no);

    EventRecord r;
    r.event_id = need_string(j, "id", line_no);
    const std::string type = need_string(j, "type", line_no);
    r.actor = need_string(j, "user", line_no);

    const auto ts_it = j.find("ts");
    if (ts_it == j.end()) throw ParseError("missing 'ts'", line_no);
    r.ts = parse_ts(*ts_it, line_no);

    const auto parent_it = j.find("parent");
    const bool has_parent = parent_it != j.end() && !parent_it->is_null();

    if (type == "post") {
        r.kind = EventKind::Post;
        if (has_parent) throw ParseError("post record carries a parent", line_no);
        const auto post_it = j.find("post");
        if (post_it != j.end() && !post_it->is_null()) {
            if (!post_it->is_string() || post_it->get<std::string>() != r.event_id)
                throw ParseError("post record's 'post' must equal its id", line_no);
        }
        r.post = r.event_id;
    } else if (type == "comment") {
        r.kind = EventKind::Comment;
        r.post = need_string(j, "post", line_no);
        if (has_parent) {
            if (!parent_it->is_string() || parent_it->get<std::string>().empty())
                throw ParseError("invalid 'parent'", line_no);
            r.parent = parent_it->get<std::string>();
        }
    } else {
        throw ParseError("unknown record type '" + type + "'", line_no);
    }
    return r;
}

EventRecord parse_tsv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
        const std::size_t tab = line.find('\t', start);
        cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    if (cols.size() != 6) throw ParseError("expected 6 tab-separated columns", line_no);

    EventRecord r;
    r.event_id = cols[0];
    const std::string& type = cols[1];
    r.actor = cols[2];
    if (r.event_id.empty() || r.actor.empty()) throw ParseError("missing id or user", line_no);

    std::int64_t ts = 0;
    const auto [p, ec] = std::from_chars(cols[5].data(), cols[5].data() + cols[5].size(), ts);
    if (ec != std::errc{} || p != cols[5].data() + cols[5].size() || ts < 0)
        throw ParseError("bad timestamp", line_no);
    r.ts = ts;

    if (type == "post") {
        r.kind = EventKind::Post;
        if (cols[4] != "-") throw ParseError("post record carries a parent", line_no);
        if (cols[3] != "-" && cols[3] != r.event_id)
            throw ParseError("post record's post column must equal its id", line_no);
        r.post = r.event_id;
    } else if (type == "comment") {
        r.kind = EventKind::Comment;
        if (cols[3].empty() || cols[3] == "-") throw ParseError("comment has no post", line_no);
        r.post = cols[3];
        if (cols[4] != "-" && !cols[4].empty()) r.parent = cols[4];
    } else {
        throw ParseError("unknown record type '" + type + "'", line_no);
    }
    return r;
}

}  // namespace

EventLog EventLog::from_records(std::vector<EventRecord> records, std::size_t source_out_of_order) {
    for (const auto& r : records) check_record(r);
    std::sort(records.begin(), records.end(), [](const EventRecord& a, const EventRecord& b) {
        return a.ts != b.ts ? a.ts < b.ts : a.event_id < b.event_id;
    });

    EventLog log;
    log.source_out_of_order_ = source_out_of_order;
    log.events_ = std::move(records);
    log.id_index_.reserve(log.events_.size());
    for (std::size_t i = 0; i < log.events_.size(); ++i) {
        const EventRecord& r = log.events_[i];
        if (!log.id_index_.emplace(r.event_id, i).second)
            throw Error("duplicate event id '" + r.event_id + "'");
        log.by_user_[r.actor].push_back(i);
        log.by_post_[r.post].push_back(i);
        if (r.kind == EventKind::Post) ++log.n_posts_;
    }
    log.user_ids_.reserve(log.by_user_.size());
    for (const auto& [user, idx] : log.by_user_) log.user_ids_.push_back(user);
    std::sort(log.user_ids_.begin(), log.user_ids_.end());
    for (const auto& e : log.events_)
        if (e.kind == EventKind::Post) log.post_ids_.push_back(e.event_id);
    std::sort(log.post_ids_.begin(), log.post_ids_.end());
    return log;
}

const EventRecord* EventLog::find(const std::string& event_id) const {
    const auto it = id_index_.find(event_id);
    return it == id_index_.end() ? nullptr : &events_[it->second];
}

const std::vector<std::size_t>& EventLog::of_user(const std::string& user) const {
    const auto it = by_user_.find(user);
    return it == by_user_.end() ? kNoEvents : it->second;
}

const std::vector<std::size_t>& EventLog::of_post(const std::string& post) const {
    const auto it = by_post_.find(post);
    return it == by_post_.end() ? kNoEvents : it->second;
}

ParseResult parse_event_log(std::istream& in, LogFormat format, bool lenient) {
    std::vector<EventRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0, out_of_order = 0;
    std::int64_t prev_ts = std::numeric_limits<std::int64_t>::min();

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        EventRecord r = format == LogFormat::JsonLines ? parse_json_line(line, line_no)
                                                       : parse_tsv_line(line, line_no);
        if (!seen.insert(r.event_id).second)
            throw ParseError("duplicate event id '" + r.event_id + "'", line_no);
        if (r.ts < prev_ts) ++out_of_order;
        prev_ts = r.ts;
        records.push_back(std::move(r));
    }

    const Resolution res = resolve_references(records);
    ParseResult out;
    out.report.orphan_comments = res.orphans;
    out.report.parent_cycles = res.cycles;
    out.report.out_of_order = out_of_order;

    if (lenient) {
        std::vector<EventRecord> kept;
        kept.reserve(records.size());
        for (std::size_t i = 0; i < records.size(); ++i)
            if (res.valid[i]) kept.push_back(std::move(records[i]));
        records = std::move(kept);
    }
    out.log = EventLog::from_records(std::move(records), out_of_order);
    return out;
}

ValidationReport validate_log(const EventLog& log) {
    const Resolution res = resolve_references(log.events());
    ValidationReport report;
    report.orphan_comments = res.orphans;
    report.parent_cycles = res.cycles;
    report.out_of_order = log.source_out_of_order();
    return report;
}

void write_event_log(std::ostream& os, const EventLog& log, LogFormat format) {
    for (const EventRecord& r : log.events()) {
        if (format == LogFormat::JsonLines) {
            nlohmann::ordered_json j;
            j["id"] = r.event_id;
            j["type"] = r.kind == EventKind::Post ? "post" : "comment";
            j["user"] = r.actor;
            j["post"] = r.post;
            if (!r.parent.empty()) j["parent"] = r.parent;
            j["ts"] = r.ts;
            os << j.dump() << "\n";
        } else {
            os << r.event_id << "\t" << (r.kind == EventKind::Post ? "post" : "comment") << "\t"
               << r.actor << "\t" << r.post << "\t" << (r.parent.empty() ? "-" : r.parent)
               << "\t" << r.ts << "\n";
        }
    }
}

EventLog filter_events(const EventLog& log, const FilterCriteria& criteria) {
    if (criteria.min_comments > criteria.max_comments)
        throw Error("filter bounds are inverted: min_comments > max_comments");
    if (criteria.window_lo > criteria.window_hi)
        throw Error("filter time window is inverted");

    std::vector<EventRecord> windowed;
    for (const EventRecord& r : log.events())
        if (r.ts >= criteria.window_lo && r.ts <= criteria.window_hi) windowed.push_back(r);

    // windowing can strip posts or mid-chain parents; drop whatever no longer resolves
    const Resolution res = resolve_references(windowed);
    std::vector<EventRecord> resolved;
    resolved.reserve(windowed.size());
    for (std::size_t i = 0; i < windowed.size(); ++i)
        if (res.valid[i]) resolved.push_back(std::move(windowed[i]));

    std::unordered_map<std::string, std::uint64_t> comments_per_post;
    for (const EventRecord& r : resolved)
        if (r.kind == EventKind::Comment) ++comments_per_post[r.post];

    std::vector<EventRecord> kept;
    kept.reserve(resolved.size());
    for (EventRecord& r : resolved) {
        const auto it = comments_per_post.find(r.post);
        const std::uint64_t n = it == comments_per_post.end() ? 0 : it->second;
        if (n >= criteria.min_comments && n <= criteria.max_comments) kept.push_back(std::move(r));
    }
    return EventLog::from_records(std::move(kept));
}

}  // namespace blognet
