#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "blognet/events.hpp"

namespace blognet {

enum class GapSampler { Pareto, Exponential };

// Planted-community event generator. Users comment on a renewal-process
// skeleton (gaps from the configured sampler), each comment lands on an
// in-group post with probability p_in, and the post is picked with weight
// proportional to the response kernel density at the achievable lag, which
// reproduces the kernel in the pooled response times once posts are dense
// at the t_star scale and t_star stays well under the horizon. Posts cover
// the whole horizon; comments start after a tenth of it has passed so the
// kernel's lag range is fully reachable from the first comment on.
struct SynthConfig {
    std::size_t n_users = 0;  // 0 derives n_groups * users_per_group
    std::size_t n_groups = 1;
    std::size_t users_per_group = 50;
    std::size_t posts_per_group = 40;
    double p_in = 1.0;
    double p_out = 0.0;
    GapSampler gap_sampler = GapSampler::Exponential;
    double gap_alpha = 1.7;  // pareto density exponent, minimum gap one minute
    double gap_rate = 0.02;  // exponential: expected events per minute
    double resp_q = 1.3;
    double resp_tstar = 50.0;
    double reply_prob = 0.2;  // chance a comment answers an earlier comment
    std::int64_t horizon = 100000;  // minutes
    std::uint64_t seed = 1;
};

struct GroundTruth {
    std::vector<std::pair<std::string, int>> user_group;  // sorted by id, groups 1..G
    std::vector<std::pair<std::string, int>> post_group;
    std::vector<std::pair<std::string, std::uint64_t>> post_comments;
};

struct SynthResult {
    EventLog log;
    GroundTruth truth;
};

SynthResult generate(const SynthConfig& cfg);

// id, kind, group rows for every user and post
void write_ground_truth(std::ostream& os, const GroundTruth& truth);

}  // namespace blognet
