#include "blognet/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

#include "blognet/fits.hpp"
#include "blognet/samplers.hpp"

namespace blognet {

namespace {

constexpr std::size_t kMaxEvents = 5'000'000;

void validate(const SynthConfig& c) {
    if (c.n_groups < 1) throw Error("need at least one group");
    if (c.users_per_group < 1) throw Error("need at least one user per group");
    if (c.posts_per_group < 1) throw Error("need at least one post per group");
    if (c.n_users != 0 && c.n_users != c.n_groups * c.users_per_group)
        throw Error("n_users disagrees with n_groups * users_per_group");
    if (c.p_in < 0.0 || c.p_in > 1.0 || c.p_out < 0.0 || c.p_out > 1.0)
        throw Error("targeting probabilities must lie in [0,1]");
    if (std::fabs(c.p_in + c.p_out - 1.0) > 1e-9)
        throw Error("p_in and p_out must sum to one");
    if (c.n_groups > 1 && !(c.p_in > c.p_out))
        throw Error("planted structure needs p_in > p_out");
    if (c.gap_sampler == GapSampler::Pareto && !(c.gap_alpha > 1.0))
        throw Error("pareto gap exponent must exceed 1");
    if (c.gap_sampler == GapSampler::Exponential && !(c.gap_rate > 0.0))
        throw Error("exponential gap rate must be positive");
    if (!(c.resp_q >= 1.0) || c.resp_q >= 2.0) throw Error("response q must lie in [1,2)");
    if (!(c.resp_tstar > 0.0)) throw Error("response time scale must be positive");
    if (c.reply_prob < 0.0 || c.reply_prob > 1.0) throw Error("reply probability must lie in [0,1]");
    if (c.horizon <= 0) throw Error("horizon must be positive");
}

std::string padded(char prefix, std::size_t value, int width) {
    std::string digits = std::to_string(value);
    std::string out(1, prefix);
    for (int i = static_cast<int>(digits.size()); i < width; ++i) out += '0';
    return out + digits;
}

int width_of(std::size_t n) {
    int w = 1;
    while (n >= 10) {
        n /= 10;
        ++w;
    }
    return w;
}

}  // namespace

SynthResult generate(const SynthConfig& cfg) {
    validate(cfg);
    const std::size_t n_users = cfg.n_groups * cfg.users_per_group;
    const std::size_t n_posts = cfg.n_groups * cfg.posts_per_group;
    const int uw = width_of(n_users);
    const int pw = width_of(n_posts);
    Rng rng(cfg.seed);

    std::vector<std::string> user_ids(n_users);
    for (std::size_t u = 0; u < n_users; ++u) user_ids[u] = padded('u', u + 1, uw);

    // posts first: uniform timestamps, authors cycle through the group
    struct PostInfo {
        std::string id;
        std::int64_t ts;
        std::size_t group;
        std::vector<std::string> comment_ids;
        std::uint64_t n_comments = 0;
    };
    std::vector<PostInfo> posts(n_posts);
    std::vector<EventRecord> records;
    records.reserve(n_posts);
    // one post per equal-width stratum keeps publication steady over the
    // horizon; clustered gaps would starve the small response lags
    const double stratum =
        static_cast<double>(cfg.horizon) / static_cast<double>(cfg.posts_per_group);
    for (std::size_t g = 0; g < cfg.n_groups; ++g)
        for (std::size_t k = 0; k < cfg.posts_per_group; ++k) {
            const std::size_t idx = g * cfg.posts_per_group + k;
            auto& p = posts[idx];
            p.id = padded('p', idx + 1, pw);
            p.ts = static_cast<std::int64_t>((static_cast<double>(k) + rng.uniform01()) * stratum);
            p.group = g;
            const std::size_t author = g * cfg.users_per_group + k % cfg.users_per_group;
            records.push_back(
                {p.id, EventKind::Post, user_ids[author], p.id, std::string(), p.ts});
        }

    // per-group post indexes sorted by time, for prefix lookups
    std::vector<std::vector<std::size_t>> by_group(cfg.n_groups);
    for (std::size_t i = 0; i < n_posts; ++i) by_group[posts[i].group].push_back(i);
    for (auto& grp : by_group)
        std::sort(grp.begin(), grp.end(),
                  [&](std::size_t a, std::size_t b) { return posts[a].ts < posts[b].ts; });

    // renewal skeleton per user, merged into one global stream; the first
    // tenth of the horizon is a warm-up with posts only, so every comment
    // already sees the full lag range of the response kernel. Dropping a
    // prefix of a renewal stream leaves the remaining gaps exact.
    struct Slot {
        double t;
        std::size_t user;
    };
    std::vector<Slot> stream;
    const auto horizon = static_cast<double>(cfg.horizon);
    const double warmup = horizon / 10.0;
    std::size_t draws = 0;
    for (std::size_t u = 0; u < n_users; ++u) {
        double t = 0.0;
        while (true) {
            t += cfg.gap_sampler == GapSampler::Pareto
                     ? sample_pareto(rng, cfg.gap_alpha, 1.0)
                     : sample_exponential(rng, cfg.gap_rate);
            if (t > horizon) break;
            if (++draws > 4 * kMaxEvents)
                throw Error("configuration generates too many events");
            if (t < warmup) continue;
            stream.push_back({t, u});
            if (stream.size() > kMaxEvents)
                throw Error("configuration generates too many events");
        }
    }
    std::sort(stream.begin(), stream.end(), [](const Slot& a, const Slot& b) {
        return std::tie(a.t, a.user) < std::tie(b.t, b.user);
    });

    const QExpFit kernel{cfg.resp_q, cfg.resp_tstar, 1.0, 0.0};
    const int cw = width_of(std::max<std::size_t>(stream.size(), 1));
    std::size_t n_comments = 0;
    std::vector<double> weights;
    for (const auto& slot : stream) {
        const auto ts = static_cast<std::int64_t>(slot.t);
        const std::size_t g = slot.user / cfg.users_per_group;

        std::size_t side = g;
        if (cfg.n_groups > 1 && rng.uniform01() >= cfg.p_in) {
            const std::size_t o = rng.uniform_index(cfg.n_groups - 1);
            side = o >= g ? o + 1 : o;
        }
        // posts the comment can land on: side first, then the other groups
        const std::vector<std::size_t>* avail = nullptr;
        std::size_t m = 0;
        for (std::size_t d = 0; d < cfg.n_groups && m == 0; ++d) {
            const auto& grp = by_group[(side + d) % cfg.n_groups];
            const auto it = std::upper_bound(
                grp.begin(), grp.end(), ts,
                [&](std::int64_t t, std::size_t i) { return t < posts[i].ts; });
            m = static_cast<std::size_t>(it - grp.begin());
            if (m > 0) avail = &grp;
        }
        if (m == 0) continue;  // nothing published yet

        weights.resize(m);
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto lag = static_cast<double>(ts - posts[(*avail)[i]].ts);
            weights[i] = qexp_eval(kernel, lag);
            total += weights[i];
        }
        std::size_t pick = m - 1;
        if (total > 0.0) {
            double x = rng.uniform(0.0, total);
            for (std::size_t i = 0; i < m; ++i) {
                x -= weights[i];
                if (x <= 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.uniform_index(m);
        }
        auto& target = posts[(*avail)[pick]];

        std::string parent;
        if (!target.comment_ids.empty() && cfg.reply_prob > 0.0 &&
            rng.uniform01() < cfg.reply_prob)
            parent = target.comment_ids[rng.uniform_index(target.comment_ids.size())];

        const std::string cid = padded('c', ++n_comments, cw);
        records.push_back({cid, EventKind::Comment, user_ids[slot.user], target.id, parent, ts});
        target.comment_ids.push_back(cid);
        ++target.n_comments;
    }
    if (n_comments == 0) throw Error("horizon too short to place any comment");

    SynthResult out;
    out.log = EventLog::from_records(std::move(records));
    out.truth.user_group.reserve(n_users);
    for (std::size_t u = 0; u < n_users; ++u)
        out.truth.user_group.emplace_back(user_ids[u],
                                          static_cast<int>(u / cfg.users_per_group) + 1);
    out.truth.post_group.reserve(n_posts);
    out.truth.post_comments.reserve(n_posts);
    for (const auto& p : posts) {
        out.truth.post_group.emplace_back(p.id, static_cast<int>(p.group) + 1);
        out.truth.post_comments.emplace_back(p.id, p.n_comments);
    }
    return out;
}

void write_ground_truth(std::ostream& os, const GroundTruth& truth) {
    os << "id\tkind\tgroup\n";
    for (const auto& [id, g] : truth.user_group) os << id << "\tuser\t" << g << '\n';
    for (const auto& [id, g] : truth.post_group) os << id << "\tpost\t" << g << '\n';
}

}  // namespace blognet
