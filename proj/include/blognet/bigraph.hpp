#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blognet/csr.hpp"
#include "blognet/distribution.hpp"
#include "blognet/events.hpp"

namespace blognet {

enum class BigraphMode { CommentTree, FlattenToPost };

// Directed user/content multigraph. Edge kinds:
//   creations: user -> content, the single authorship edge of each content node
//   writes:    user -> content, comment attributions redirected to the root
//              post (FlattenToPost mode only)
//   reads:     content -> user, one per comment the user made on that content
struct BipartiteGraph {
    struct Edge {
        std::int32_t user = 0;
        std::int32_t content = 0;
        std::uint32_t mult = 1;
    };

    BigraphMode mode = BigraphMode::CommentTree;
    std::vector<std::string> users;     // sorted
    std::vector<std::string> contents;  // sorted; posts only in FlattenToPost mode
    std::vector<char> content_is_post;
    std::vector<Edge> creations;
    std::vector<Edge> writes;
    std::vector<Edge> reads;
};

struct CommonsMatrix {
    std::vector<std::string> users;  // sorted
    struct Entry {
        std::int32_t i = 0;  // i < j
        std::int32_t j = 0;
        std::uint32_t count = 0;
    };
    std::vector<Entry> entries;  // sorted by (i, j), counts > 0

    std::size_t n() const { return users.size(); }
};

struct WeightedUserGraph {
    std::vector<std::string> nodes;
    struct Edge {
        std::int32_t a = 0;
        std::int32_t b = 0;
        double w = 0.0;
    };
    std::vector<Edge> edges;
    std::vector<double> strengths;  // l_i, row sums of the weight matrix

    CsrMatrix adjacency() const;
};

struct UserPostWeightedGraph {
    std::vector<std::string> users;  // commenters on qualifying posts, sorted
    std::vector<std::string> posts;  // qualifying posts, sorted
    struct Edge {
        std::int32_t user = 0;
        std::int32_t post = 0;
        std::uint32_t w = 0;  // comments (incl. nested) by user under post
    };
    std::vector<Edge> edges;
    std::uint64_t total_weight = 0;
};

// Requires a log whose references all resolve (validate first or parse lenient).
BipartiteGraph build_bipartite(const EventLog& log, BigraphMode mode);

enum class Partition { Users, Content };
enum class Direction { In, Out };

// Degree = summed edge multiplicities, except content in-degree which counts
// only the authorship edge (so it is exactly 1 in both modes).
Distribution degree_distribution(const BipartiteGraph& g, Partition partition,
                                 Direction direction, bool cumulative);

// C_ij = number of distinct content nodes incident to both users, either
// edge direction, multiplicity-blind.
CommonsMatrix commons_matrix(const BipartiteGraph& g);

Distribution commons_distribution(const CommonsMatrix& c);

WeightedUserGraph project_user_graph(const CommonsMatrix& c);

UserPostWeightedGraph build_user_post_weighted(const EventLog& log, std::uint64_t min_comments);

// "src dst weight" triplets under a 2-line header; user ids get a "u:" prefix
// and content ids "c:" so the partitions stay distinguishable.
void write_bipartite(std::ostream& os, const BipartiteGraph& g);
void write_user_post_weighted(std::ostream& os, const UserPostWeightedGraph& g);

}  // namespace blognet
