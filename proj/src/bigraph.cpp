#include "blognet/bigraph.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

namespace blognet {

namespace {

using PairCounts = std::unordered_map<std::int64_t, std::uint32_t>;

std::int64_t pair_key(std::int32_t a, std::int32_t b) {
    return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::vector<BipartiteGraph::Edge> to_edges(const PairCounts& counts, bool user_first) {
    std::vector<BipartiteGraph::Edge> edges;
    edges.reserve(counts.size());
    for (const auto& [key, mult] : counts) {
        BipartiteGraph::Edge e;
        const auto hi = static_cast<std::int32_t>(key >> 32);
        const auto lo = static_cast<std::int32_t>(key & 0xffffffff);
        e.user = user_first ? hi : lo;
        e.content = user_first ? lo : hi;
        e.mult = mult;
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end(),
              [user_first](const BipartiteGraph::Edge& a, const BipartiteGraph::Edge& b) {
                  const auto ka = user_first ? std::pair(a.user, a.content)
                                             : std::pair(a.content, a.user);
                  const auto kb = user_first ? std::pair(b.user, b.content)
                                             : std::pair(b.content, b.user);
                  return ka < kb;
              });
    return edges;
}

void require_resolved(const EventLog& log) {
    const ValidationReport report = validate_log(log);
    if (!report.orphan_comments.empty() || !report.parent_cycles.empty())
        throw Error("log has unresolved comment references; parse leniently or clean it first");
}

}  // namespace

CsrMatrix WeightedUserGraph::adjacency() const {
    std::vector<CsrMatrix::Triplet> t;
    t.reserve(edges.size() * 2);
    for (const auto& e : edges) {
        t.push_back({e.a, e.b, e.w});
        t.push_back({e.b, e.a, e.w});
    }
    return CsrMatrix::from_triplets(nodes.size(), std::move(t));
}

BipartiteGraph build_bipartite(const EventLog& log, BigraphMode mode) {
    require_resolved(log);

    BipartiteGraph g;
    g.mode = mode;
    g.users = log.user_ids();
    std::unordered_map<std::string, std::int32_t> uidx;
    for (std::size_t i = 0; i < g.users.size(); ++i)
        uidx.emplace(g.users[i], static_cast<std::int32_t>(i));

    if (mode == BigraphMode::CommentTree) {
        g.contents.reserve(log.events().size());
        for (const auto& e : log.events()) g.contents.push_back(e.event_id);
        std::sort(g.contents.begin(), g.contents.end());
    } else {
        g.contents = log.post_ids();
    }
    std::unordered_map<std::string, std::int32_t> cidx;
    for (std::size_t i = 0; i < g.contents.size(); ++i)
        cidx.emplace(g.contents[i], static_cast<std::int32_t>(i));
    g.content_is_post.assign(g.contents.size(), mode == BigraphMode::FlattenToPost);
    if (mode == BigraphMode::CommentTree)
        for (const auto& e : log.events())
            g.content_is_post[cidx.at(e.event_id)] = e.kind == EventKind::Post;

    PairCounts writes, reads;
    for (const auto& e : log.events()) {
        const std::int32_t u = uidx.at(e.actor);
        if (e.kind == EventKind::Post) {
            g.creations.push_back({u, cidx.at(e.event_id), 1});
            continue;
        }
        if (mode == BigraphMode::CommentTree) {
            g.creations.push_back({u, cidx.at(e.event_id), 1});
            // a reply reads its parent comment; a direct comment reads the post
            const std::string& target = e.parent.empty() ? e.post : e.parent;
            ++reads[pair_key(cidx.at(target), u)];
        } else {
            const std::int32_t p = cidx.at(e.post);
            ++writes[pair_key(u, p)];
            ++reads[pair_key(p, u)];
        }
    }
    std::sort(g.creations.begin(), g.creations.end(),
              [](const BipartiteGraph::Edge& a, const BipartiteGraph::Edge& b) {
                  return std::pair(a.user, a.content) < std::pair(b.user, b.content);
              });
    g.writes = to_edges(writes, true);
    g.reads = to_edges(reads, false);
    return g;
}

Distribution degree_distribution(const BipartiteGraph& g, Partition partition,
                                 Direction direction, bool cumulative) {
    const std::size_t n = partition == Partition::Users ? g.users.size() : g.contents.size();
    if (n == 0) throw Error("degree distribution of an empty partition");

    std::vector<std::uint64_t> deg(n, 0);
    if (partition == Partition::Users && direction == Direction::Out) {
        for (const auto& e : g.creations) deg[e.user] += e.mult;
        for (const auto& e : g.writes) deg[e.user] += e.mult;
    } else if (partition == Partition::Users && direction == Direction::In) {
        for (const auto& e : g.reads) deg[e.user] += e.mult;
    } else if (partition == Partition::Content && direction == Direction::In) {
        // only the authorship edge counts into a content node
        for (const auto& e : g.creations) deg[e.content] += 1;
    } else {
        for (const auto& e : g.reads) deg[e.content] += e.mult;
    }

    std::vector<std::pair<double, std::uint64_t>> counts;
    counts.reserve(n);
    for (std::uint64_t d : deg) counts.emplace_back(static_cast<double>(d), 1);
    BinSpec spec;
    spec.integer_edges = true;
    Distribution d = make_distribution_counts(std::move(counts), spec);
    d.cumulative = cumulative;
    return d;
}

CommonsMatrix commons_matrix(const BipartiteGraph& g) {
    CommonsMatrix c;
    c.users = g.users;
    const std::size_t n = g.users.size();

    // distinct incident users per content node, either edge direction
    std::vector<std::vector<std::int32_t>> incident(g.contents.size());
    for (const auto& e : g.creations) incident[e.content].push_back(e.user);
    for (const auto& e : g.writes) incident[e.content].push_back(e.user);
    for (const auto& e : g.reads) incident[e.content].push_back(e.user);

    const bool dense = n <= 4096;
    std::vector<std::uint32_t> tri;
    PairCounts sparse;
    if (dense) tri.assign(n * (n - 1) / 2, 0);
    const auto bump = [&](std::int32_t i, std::int32_t j) {
        if (i > j) std::swap(i, j);  // store with i < j
        if (dense)
            ++tri[static_cast<std::size_t>(j) * (j - 1) / 2 + i];
        else
            ++sparse[pair_key(i, j)];
    };

    for (auto& us : incident) {
        std::sort(us.begin(), us.end());
        us.erase(std::unique(us.begin(), us.end()), us.end());
        for (std::size_t a = 0; a < us.size(); ++a)
            for (std::size_t b = a + 1; b < us.size(); ++b) bump(us[a], us[b]);
    }

    if (dense) {
        for (std::int32_t j = 1; j < static_cast<std::int32_t>(n); ++j)
            for (std::int32_t i = 0; i < j; ++i) {
                const std::uint32_t cnt = tri[static_cast<std::size_t>(j) * (j - 1) / 2 + i];
                if (cnt > 0) c.entries.push_back({i, j, cnt});
            }
        std::sort(c.entries.begin(), c.entries.end(),
                  [](const CommonsMatrix::Entry& a, const CommonsMatrix::Entry& b) {
                      return std::pair(a.i, a.j) < std::pair(b.i, b.j);
                  });
    } else {
        c.entries.reserve(sparse.size());
        for (const auto& [key, cnt] : sparse)
            c.entries.push_back({static_cast<std::int32_t>(key >> 32),
                                 static_cast<std::int32_t>(key & 0xffffffff), cnt});
        std::sort(c.entries.begin(), c.entries.end(),
                  [](const CommonsMatrix::Entry& a, const CommonsMatrix::Entry& b) {
                      return std::pair(a.i, a.j) < std::pair(b.i, b.j);
                  });
    }
    return c;
}

Distribution commons_distribution(const CommonsMatrix& c) {
    if (c.entries.empty()) throw Error("commons matrix has no nonzero entries");
    std::vector<std::pair<double, std::uint64_t>> counts;
    counts.reserve(c.entries.size());
    for (const auto& e : c.entries) counts.emplace_back(static_cast<double>(e.count), 1);
    BinSpec spec;
    spec.integer_edges = true;
    return make_distribution_counts(std::move(counts), spec);
}

WeightedUserGraph project_user_graph(const CommonsMatrix& c) {
    WeightedUserGraph g;
    g.nodes = c.users;
    g.strengths.assign(c.users.size(), 0.0);
    g.edges.reserve(c.entries.size());
    for (const auto& e : c.entries) {
        g.edges.push_back({e.i, e.j, static_cast<double>(e.count)});
        g.strengths[e.i] += e.count;
        g.strengths[e.j] += e.count;
    }
    return g;
}

UserPostWeightedGraph build_user_post_weighted(const EventLog& log, std::uint64_t min_comments) {
    require_resolved(log);

    std::unordered_map<std::string, std::uint64_t> per_post;
    for (const auto& id : log.post_ids()) per_post.emplace(id, 0);
    for (const auto& e : log.events())
        if (e.kind == EventKind::Comment) ++per_post[e.post];

    UserPostWeightedGraph g;
    for (const auto& id : log.post_ids())
        if (per_post.at(id) >= min_comments) g.posts.push_back(id);
    if (g.posts.empty()) throw Error("no posts meet the comment-count threshold");

    std::unordered_map<std::string, std::int32_t> pidx;
    for (std::size_t i = 0; i < g.posts.size(); ++i)
        pidx.emplace(g.posts[i], static_cast<std::int32_t>(i));

    std::unordered_map<std::string, std::unordered_map<std::int32_t, std::uint32_t>> per_user;
    for (const auto& e : log.events()) {
        if (e.kind != EventKind::Comment) continue;
        const auto it = pidx.find(e.post);
        if (it == pidx.end()) continue;
        ++per_user[e.actor][it->second];
    }
    for (const auto& [user, edges] : per_user) g.users.push_back(user);
    std::sort(g.users.begin(), g.users.end());

    for (std::size_t u = 0; u < g.users.size(); ++u) {
        std::vector<std::pair<std::int32_t, std::uint32_t>> row(per_user[g.users[u]].begin(),
                                                                per_user[g.users[u]].end());
        std::sort(row.begin(), row.end());
        for (const auto& [post, w] : row) {
            g.edges.push_back({static_cast<std::int32_t>(u), post, w});
            g.total_weight += w;
        }
    }
    return g;
}

void write_bipartite(std::ostream& os, const BipartiteGraph& g) {
    // merge authorship and attribution edges per (user, content) pair
    std::unordered_map<std::int64_t, std::uint64_t> forward;
    for (const auto& e : g.creations) forward[pair_key(e.user, e.content)] += e.mult;
    for (const auto& e : g.writes) forward[pair_key(e.user, e.content)] += e.mult;

    os << "# nodes=" << g.users.size() + g.contents.size() << " edges="
       << forward.size() + g.reads.size() << "\n";
    os << "# partition users=" << g.users.size() << " content=" << g.contents.size() << "\n";

    std::vector<std::pair<std::int64_t, std::uint64_t>> fw(forward.begin(), forward.end());
    std::sort(fw.begin(), fw.end());
    for (const auto& [key, mult] : fw)
        os << "u:" << g.users[static_cast<std::size_t>(key >> 32)] << "\t"
           << "c:" << g.contents[static_cast<std::size_t>(key & 0xffffffff)] << "\t" << mult
           << "\n";
    for (const auto& e : g.reads)
        os << "c:" << g.contents[e.content] << "\t"
           << "u:" << g.users[e.user] << "\t" << e.mult << "\n";
}

void write_user_post_weighted(std::ostream& os, const UserPostWeightedGraph& g) {
    os << "# nodes=" << g.users.size() + g.posts.size() << " edges=" << g.edges.size() << "\n";
    os << "# partition users=" << g.users.size() << " content=" << g.posts.size() << "\n";
    for (const auto& e : g.edges)
        os << "u:" << g.users[e.user] << "\t"
           << "c:" << g.posts[e.post] << "\t" << e.w << "\n";
}

}  // namespace blognet
