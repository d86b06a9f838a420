#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blognet/bigraph.hpp"
#include "blognet/events.hpp"
#include "blognet/fits.hpp"
#include "blognet/report.hpp"
#include "blognet/spectral.hpp"
#include "blognet/synthgen.hpp"
#include "blognet/tempstats.hpp"
#include "blognet/util.hpp"

namespace fs = std::filesystem;
using blognet::Error;
using json = nlohmann::ordered_json;

namespace {

void emit(const json& j) { std::cout << j.dump() << "\n"; }

blognet::LogFormat pick_format(const std::string& path, const std::string& flag) {
    if (flag == "jsonl") return blognet::LogFormat::JsonLines;
    if (flag == "tsv") return blognet::LogFormat::Tsv;
    return fs::path(path).extension() == ".tsv" ? blognet::LogFormat::Tsv
                                                : blognet::LogFormat::JsonLines;
}

struct InputOpts {
    std::string path;
    std::string format = "auto";
    bool lenient = false;
};

void add_input_flags(CLI::App* sub, InputOpts& o) {
    sub->add_option("-i,--input", o.path, "event log file")->required();
    sub->add_option("--format", o.format, "input format, auto picks by extension")
        ->check(CLI::IsMember({"auto", "jsonl", "tsv"}))
        ->capture_default_str();
    sub->add_flag("--lenient", o.lenient,
                  "drop comments with unresolvable references instead of keeping them");
}

blognet::ParseResult load_log(const InputOpts& o) {
    std::ifstream is(o.path);
    if (!is) throw Error("cannot open input: " + o.path);
    auto res = blognet::parse_event_log(is, pick_format(o.path, o.format), o.lenient);
    if (res.log.events().empty()) throw Error("empty log: " + o.path + " holds no events");
    return res;
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p);
    if (!os) throw Error("cannot write " + p.string());
    return os;
}

using Header = std::vector<std::pair<std::string, std::string>>;

std::optional<blognet::PowerLawFit> try_powerlaw(const blognet::Distribution& d) {
    try {
        return blognet::fit_powerlaw(d);
    } catch (const Error&) {
        return std::nullopt;  // too few populated bins in the fit window
    }
}

void add_fit_header(Header& hdr, const std::optional<blognet::PowerLawFit>& fit) {
    if (!fit) return;
    hdr.emplace_back("exponent", blognet::fmt_num(fit->exponent));
    hdr.emplace_back("fit_xmin", blognet::fmt_num(fit->x_min));
    hdr.emplace_back("fit_xmax", blognet::fmt_num(fit->x_max));
    hdr.emplace_back("fit_bins", std::to_string(fit->bins_used));
}

void add_fit_summary(json& j, const std::optional<blognet::PowerLawFit>& fit) {
    if (!fit) {
        j["exponent"] = nullptr;
        return;
    }
    j["exponent"] = fit->exponent;
    j["fit_xmin"] = fit->x_min;
    j["fit_xmax"] = fit->x_max;
}

std::int64_t resolve_twin(const blognet::EventLog& log, const std::string& owner,
                          std::int64_t flag_value) {
    if (flag_value > 0) return flag_value;
    const auto* rec = log.find(owner);
    bool is_post = rec != nullptr && rec->kind == blognet::EventKind::Post;
    return is_post ? blognet::kPostBinMinutes : blognet::kUserBinMinutes;
}

// ---- subcommand bodies ----------------------------------------------------

void cmd_ingest_validate(const InputOpts& in) {
    auto res = load_log(in);
    const auto& rep = res.report;
    json j;
    j["command"] = "ingest-validate";
    j["events"] = res.log.events().size();
    j["users"] = res.log.n_users();
    j["posts"] = res.log.n_posts();
    j["comments"] = res.log.n_comments();
    j["orphan_comments"] = rep.orphan_comments.size();
    j["parent_cycles"] = rep.parent_cycles.size();
    j["duplicate_ids"] = rep.duplicate_ids.size();
    j["out_of_order"] = rep.out_of_order;
    j["valid"] = rep.empty();
    emit(j);
}

struct NetOpts {
    InputOpts in;
    std::string out;
    bool flatten = false;
    blognet::FilterCriteria criteria;
    bool use_filter = false;
};

void cmd_net_build(const NetOpts& o) {
    auto log = load_log(o.in).log;
    if (o.use_filter) {
        log = blognet::filter_events(log, o.criteria);
        if (log.events().empty()) throw Error("no events left after filtering");
    }
    auto mode = o.flatten ? blognet::BigraphMode::FlattenToPost : blognet::BigraphMode::CommentTree;
    auto g = blognet::build_bipartite(log, mode);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    {
        auto os = open_out(dir / "bigraph.txt");
        blognet::write_bipartite(os, g);
    }
    json jdeg;
    auto dump_degrees = [&](blognet::Partition p, blognet::Direction d, const std::string& file,
                            const std::string& kind) {
        auto dist = blognet::degree_distribution(g, p, d, false);
        auto fit = try_powerlaw(dist);
        Header hdr{{"kind", kind}, {"samples", std::to_string(dist.n)}};
        add_fit_header(hdr, fit);
        auto os = open_out(dir / file);
        blognet::write_distribution_tsv(os, dist, hdr);
        json je;
        je["samples"] = dist.n;
        add_fit_summary(je, fit);
        jdeg[kind] = je;
    };
    dump_degrees(blognet::Partition::Users, blognet::Direction::Out, "degrees_user_out.tsv",
                 "user-out");
    dump_degrees(blognet::Partition::Users, blognet::Direction::In, "degrees_user_in.tsv",
                 "user-in");
    dump_degrees(blognet::Partition::Content, blognet::Direction::Out, "degrees_content_out.tsv",
                 "content-out");
    dump_degrees(blognet::Partition::Content, blognet::Direction::In, "degrees_content_in.tsv",
                 "content-in");

    auto commons = blognet::commons_matrix(g);
    auto cd = blognet::commons_distribution(commons);
    auto cfit = try_powerlaw(cd);
    {
        Header hdr{{"kind", "commons"}, {"samples", std::to_string(cd.n)}};
        add_fit_header(hdr, cfit);
        auto os = open_out(dir / "commons_dist.tsv");
        blognet::write_distribution_tsv(os, cd, hdr);
    }

    json j;
    j["command"] = "net-build";
    j["mode"] = o.flatten ? "flatten" : "tree";
    j["events"] = log.events().size();
    j["users"] = g.users.size();
    j["contents"] = g.contents.size();
    j["creations"] = g.creations.size();
    j["writes"] = g.writes.size();
    j["reads"] = g.reads.size();
    j["commons_pairs"] = commons.entries.size();
    j["degrees"] = jdeg;
    j["out"] = o.out;
    emit(j);
}

struct IntervalOpts {
    InputOpts in;
    std::string out;
};

void cmd_stats_intervals(const IntervalOpts& o) {
    auto log = load_log(o.in).log;
    auto d = blognet::interevent_distribution(log);
    auto fit = try_powerlaw(d);
    Header hdr{{"kind", "intervals"}, {"samples", std::to_string(d.n)}};
    add_fit_header(hdr, fit);
    {
        auto os = open_out(fs::path(o.out) / "intervals.tsv");
        blognet::write_distribution_tsv(os, d, hdr);
    }
    json j;
    j["command"] = "stats-intervals";
    j["samples"] = d.n;
    j["bins"] = d.bins.size();
    add_fit_summary(j, fit);
    j["out"] = o.out;
    emit(j);
}

struct ActivityOpts {
    InputOpts in;
    std::string out;
    std::string owner;
    std::int64_t twin = 0;  // 0 picks the default for the owner kind
    bool events = false;
};

void cmd_stats_activity(const ActivityOpts& o) {
    auto log = load_log(o.in).log;
    const auto* rec = log.find(o.owner);
    bool is_post = rec != nullptr && rec->kind == blognet::EventKind::Post;
    std::int64_t twin = resolve_twin(log, o.owner, o.twin);
    auto ts = blognet::activity_series(log, o.owner, twin);
    const fs::path dir(o.out);
    {
        auto os = open_out(dir / "activity.tsv");
        os << "# owner=" << ts.owner << "\n# kind=" << (is_post ? "post" : "user")
           << "\n# twin=" << ts.t_win << "\n# start=" << ts.start << "\n";
        os << "bin\tstart\tcount\n";
        for (std::size_t i = 0; i < ts.counts.size(); ++i)
            os << i << '\t' << ts.start + static_cast<std::int64_t>(i) * ts.t_win << '\t'
               << ts.counts[i] << '\n';
    }
    if (o.events) {
        auto os = open_out(dir / "events.tsv");
        os << "# owner=" << ts.owner << "\nminute\n";
        const auto& idx = is_post ? log.of_post(o.owner) : log.of_user(o.owner);
        for (std::size_t i : idx) {
            const auto& e = log.events()[i];
            if (is_post && e.kind != blognet::EventKind::Comment) continue;
            os << e.ts << '\n';
        }
    }
    std::uint64_t total = 0;
    for (auto c : ts.counts) total += c;
    json j;
    j["command"] = "stats-activity";
    j["owner"] = o.owner;
    j["kind"] = is_post ? "post" : "user";
    j["twin"] = twin;
    j["bins"] = ts.counts.size();
    j["total"] = total;
    j["out"] = o.out;
    emit(j);
}

struct ScalingOpts {
    InputOpts in;
    std::string out;
    std::int64_t twin = 0;
    bool posts = false;
};

void cmd_stats_scaling(const ScalingOpts& o) {
    auto log = load_log(o.in).log;
    std::int64_t twin =
        o.twin > 0 ? o.twin : (o.posts ? blognet::kPostBinMinutes : blognet::kUserBinMinutes);
    std::vector<blognet::TimeSeries> series;
    const auto& owners = o.posts ? log.post_ids() : log.user_ids();
    series.reserve(owners.size());
    for (const auto& id : owners) series.push_back(blognet::activity_series(log, id, twin));
    auto sc = blognet::fluctuation_scaling(series);
    {
        auto os = open_out(fs::path(o.out) / "scaling.tsv");
        os << "# kind=" << (o.posts ? "post" : "user") << "\n# twin=" << twin
           << "\n# mu=" << blognet::fmt_num(sc.mu) << "\n# c=" << blognet::fmt_num(sc.c)
           << "\n# residual=" << blognet::fmt_num(sc.residual)
           << "\n# excluded=" << sc.excluded.size() << "\n";
        os << "owner\tmean\tsigma\n";
        for (const auto& p : sc.points)
            os << p.owner << '\t' << blognet::fmt_num(p.mean) << '\t' << blognet::fmt_num(p.sigma)
               << '\n';
    }
    json j;
    j["command"] = "stats-scaling";
    j["kind"] = o.posts ? "post" : "user";
    j["twin"] = twin;
    j["points"] = sc.points.size();
    j["excluded"] = sc.excluded.size();
    j["mu"] = sc.mu;
    j["c"] = sc.c;
    j["residual"] = sc.residual;
    j["out"] = o.out;
    emit(j);
}

void cmd_stats_spectrum(const ActivityOpts& o) {
    auto log = load_log(o.in).log;
    std::int64_t twin = resolve_twin(log, o.owner, o.twin);
    auto ts = blognet::activity_series(log, o.owner, twin);
    auto ps = blognet::power_spectrum(ts);
    double total = 0.0;
    for (const auto& p : ps) total += p.power;
    {
        auto os = open_out(fs::path(o.out) / "powerspec.tsv");
        os << "# owner=" << ts.owner << "\n# twin=" << ts.t_win << "\n# bins=" << ts.counts.size()
           << "\n# total_power=" << blognet::fmt_num(total) << "\n";
        os << "frequency\tpower\n";
        for (const auto& p : ps)
            os << blognet::fmt_num(p.frequency) << '\t' << blognet::fmt_num(p.power) << '\n';
    }
    json j;
    j["command"] = "stats-spectrum";
    j["owner"] = o.owner;
    j["twin"] = twin;
    j["bins"] = ts.counts.size();
    j["frequencies"] = ps.size();
    j["total_power"] = total;
    j["out"] = o.out;
    emit(j);
}

struct ResponseOpts {
    InputOpts in;
    std::string out;
};

void cmd_stats_response(const ResponseOpts& o) {
    auto log = load_log(o.in).log;
    auto samples = blognet::response_time_samples(log);
    if (samples.empty()) throw Error("log has no comments; response times are undefined");
    blognet::BinSpec spec;
    spec.integer_edges = true;
    auto d = blognet::make_distribution(samples, spec);
    Header hdr{{"kind", "response"}, {"samples", std::to_string(d.n)}};
    json j;
    j["command"] = "stats-response";
    j["samples"] = d.n;
    j["bins"] = d.bins.size();
    if (samples.size() >= 1000) {
        blognet::QExpFit fit;
        bool converged = true;
        try {
            fit = blognet::fit_qexp(samples);
        } catch (const blognet::FitNotConverged& e) {
            fit = e.best();
            converged = false;
        }
        hdr.emplace_back("q", blognet::fmt_num(fit.q));
        hdr.emplace_back("t_star", blognet::fmt_num(fit.t_star));
        hdr.emplace_back("prefactor", blognet::fmt_num(fit.prefactor));
        hdr.emplace_back("tail_slope", blognet::fmt_num(fit.tail_slope()));
        hdr.emplace_back("fit_converged", converged ? "1" : "0");
        j["q"] = fit.q;
        j["t_star"] = fit.t_star;
        j["tail_slope"] = fit.tail_slope();
        j["fit_converged"] = converged;
    } else {
        j["q"] = nullptr;  // not enough samples for a stable fit
    }
    {
        auto os = open_out(fs::path(o.out) / "response.tsv");
        blognet::write_distribution_tsv(os, d, hdr);
    }
    j["out"] = o.out;
    emit(j);
}

struct CommunitiesOpts {
    InputOpts in;
    std::string out;
    bool flatten = false;
    bool bipartite = false;
    std::uint64_t min_comments = 1;
    std::size_t k = 0;  // 0 = detect from the spectral gap
    std::size_t kmax = 12;
    double eps_ring = -1.0;
    std::uint64_t seed = 42;
    int dims = 2;
    std::string truth;
};

std::unordered_map<std::string, int> read_truth_labels(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open ground truth file: " + path);
    std::unordered_map<std::string, int> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) throw Error("ground truth line " + std::to_string(lineno) +
                                                 " is not id<TAB>kind<TAB>group");
        std::string id = line.substr(0, t1);
        std::string kind = line.substr(t1 + 1, t2 - t1 - 1);
        if (id == "id" && kind == "kind") continue;  // column header
        int group = 0;
        try {
            group = std::stoi(line.substr(t2 + 1));
        } catch (const std::exception&) {
            throw Error("ground truth line " + std::to_string(lineno) + " has a non-numeric group");
        }
        if (kind == "user") {
            out[id] = group;
            out["u:" + id] = group;
        } else {
            out["c:" + id] = group;
        }
    }
    return out;
}

void cmd_communities(const CommunitiesOpts& o) {
    auto log = load_log(o.in).log;
    blognet::LaplacianMatrix L;
    if (o.bipartite) {
        auto g = blognet::build_user_post_weighted(log, o.min_comments);
        L = blognet::normalized_laplacian(g);
    } else {
        auto mode =
            o.flatten ? blognet::BigraphMode::FlattenToPost : blognet::BigraphMode::CommentTree;
        auto g = blognet::build_bipartite(log, mode);
        auto commons = blognet::commons_matrix(g);
        auto proj = blognet::project_user_graph(commons);
        L = blognet::normalized_laplacian(proj);
    }
    const std::size_t n = L.matrix.n;
    std::size_t want = std::max<std::size_t>({o.kmax, o.k, L.n_components + o.dims, 3});
    want = std::min(want, n);
    auto spec = blognet::smallest_eigenpairs(L, want, o.seed);
    std::size_t k = o.k > 0 ? o.k : blognet::detect_num_communities(spec.eigenvalues);

    const fs::path dir(o.out);
    fs::create_directories(dir);
    {
        auto os = open_out(dir / "spectrum.tsv");
        blognet::write_spectrum_tsv(os, spec);
    }

    blognet::CommunityAssignment asg;
    if (k < 2) {
        asg.k = 1;
        asg.labels.assign(n, 1);
        asg.row_norms.assign(n, 0.0);
    } else {
        asg = blognet::assign_branches(spec, k, o.eps_ring, o.seed);
    }
    std::size_t unclassified = 0;
    for (int lab : asg.labels)
        if (lab == 0) ++unclassified;

    std::size_t zeros = 0;
    while (zeros < spec.eigenvalues.size() && spec.eigenvalues[zeros] < 1e-9) ++zeros;
    bool scatter = zeros + static_cast<std::size_t>(o.dims) <= spec.vectors.size();
    if (scatter) {
        auto os = open_out(dir / "scatter.tsv");
        blognet::write_scatter_tsv(os, L.nodes, spec, o.dims, asg);
    }

    std::optional<double> nmi;
    if (!o.truth.empty()) {
        auto truth = read_truth_labels(o.truth);
        std::vector<int> a, b;
        a.reserve(n);
        b.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto it = truth.find(L.nodes[i]);
            if (it == truth.end()) continue;
            a.push_back(asg.labels[i]);
            b.push_back(it->second);
        }
        if (a.size() < 2) throw Error("ground truth covers too few graph nodes");
        nmi = blognet::normalized_mutual_information(a, b);
    }

    {
        auto os = open_out(dir / "labels.tsv");
        os << "# k=" << asg.k << "\n# unclassified=" << unclassified
           << "\n# epsilon_ring=" << blognet::fmt_num(asg.epsilon_ring)
           << "\n# components=" << L.n_components << "\n";
        if (nmi) os << "# nmi=" << blognet::fmt_num(*nmi) << "\n";
        os << "node\tlabel\trow_norm\n";
        for (std::size_t i = 0; i < n; ++i)
            os << L.nodes[i] << '\t' << asg.labels[i] << '\t' << blognet::fmt_num(asg.row_norms[i])
               << '\n';
    }

    json j;
    j["command"] = "communities";
    j["graph"] = o.bipartite ? "user-post" : "user-projection";
    j["nodes"] = n;
    j["isolated"] = L.isolated.size();
    j["components"] = L.n_components;
    j["eigenvalues"] = spec.eigenvalues.size();
    j["k"] = asg.k;
    j["unclassified"] = unclassified;
    j["scatter"] = scatter;
    if (nmi) j["nmi"] = *nmi;
    j["out"] = o.out;
    emit(j);
}

struct SynthOpts {
    std::size_t groups = 1;
    std::size_t users = 0;  // total; 0 keeps the per-group default
    std::size_t posts = 0;
    double p_in = 0.9;
    std::string gap = "exp";
    double alpha = 1.7;
    double rate = 0.02;
    double q = 1.3;
    double tstar = 50.0;
    double reply = 0.2;
    std::int64_t horizon = 100000;
    std::uint64_t seed = 1;
    std::string out;
};

void cmd_synth(const SynthOpts& o) {
    blognet::SynthConfig cfg;
    if (o.groups == 0) throw Error("need at least one group");
    cfg.n_groups = o.groups;
    std::size_t users = o.users > 0 ? o.users : 50 * o.groups;
    std::size_t posts = o.posts > 0 ? o.posts : 40 * o.groups;
    if (users % o.groups != 0) throw Error("--users must split evenly across --groups");
    if (posts % o.groups != 0) throw Error("--posts must split evenly across --groups");
    cfg.users_per_group = users / o.groups;
    cfg.posts_per_group = posts / o.groups;
    cfg.n_users = users;
    if (o.groups > 1) {
        cfg.p_in = o.p_in;
        cfg.p_out = 1.0 - o.p_in;
    }
    cfg.gap_sampler = o.gap == "pareto" ? blognet::GapSampler::Pareto
                                        : blognet::GapSampler::Exponential;
    cfg.gap_alpha = o.alpha;
    cfg.gap_rate = o.rate;
    cfg.resp_q = o.q;
    cfg.resp_tstar = o.tstar;
    cfg.reply_prob = o.reply;
    cfg.horizon = o.horizon;
    cfg.seed = o.seed;

    auto res = blognet::generate(cfg);
    {
        auto os = open_out(o.out);
        blognet::write_event_log(os, res.log, pick_format(o.out, "auto"));
    }
    fs::path truth_path(o.out);
    truth_path.replace_extension();
    truth_path += ".truth.tsv";
    {
        auto os = open_out(truth_path);
        blognet::write_ground_truth(os, res.truth);
    }
    json j;
    j["command"] = "synth";
    j["groups"] = o.groups;
    j["users"] = res.log.n_users();
    j["posts"] = res.log.n_posts();
    j["comments"] = res.log.n_comments();
    j["events"] = res.log.events().size();
    j["horizon"] = o.horizon;
    j["seed"] = o.seed;
    j["log"] = o.out;
    j["truth"] = truth_path.string();
    emit(j);
}

struct ReportOpts {
    std::string dir;
    std::string out;
};

void cmd_report(const ReportOpts& o) {
    std::string md = blognet::render_report(o.dir);
    fs::path out = o.out.empty() ? fs::path(o.dir) / "report.md" : fs::path(o.out);
    {
        auto os = open_out(out);
        os << md;
    }
    json j;
    j["command"] = "report";
    j["artifacts"] = o.dir;
    j["out"] = out.string();
    j["bytes"] = md.size();
    emit(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"event-log to network pipeline: ingest blog activity, build "
                 "bipartite and projected graphs, compute temporal statistics, "
                 "detect communities from the Laplacian spectrum"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; [subcommand] sections set its options");

    InputOpts iv;
    auto* s_iv = app.add_subcommand("ingest-validate", "parse a log and report consistency");
    add_input_flags(s_iv, iv);
    s_iv->callback([&] { cmd_ingest_validate(iv); });

    NetOpts net;
    auto* s_net = app.add_subcommand("net-build", "construct the bipartite network and degrees");
    add_input_flags(s_net, net.in);
    s_net->add_option("-o,--out", net.out, "artifact directory")->required();
    s_net->add_flag("--flatten", net.flatten, "attribute comments to the root post");
    auto* f_min = s_net->add_option("--min-comments", net.criteria.min_comments,
                                    "keep posts with at least this many comments");
    auto* f_max = s_net->add_option("--max-comments", net.criteria.max_comments,
                                    "keep posts with at most this many comments");
    auto* f_lo = s_net->add_option("--window-lo", net.criteria.window_lo,
                                   "count comments from this minute on");
    auto* f_hi = s_net->add_option("--window-hi", net.criteria.window_hi,
                                   "count comments up to this minute");
    s_net->callback([&] {
        net.use_filter = f_min->count() || f_max->count() || f_lo->count() || f_hi->count();
        cmd_net_build(net);
    });

    IntervalOpts intervals;
    auto* s_int = app.add_subcommand("stats-intervals", "inter-event interval distribution");
    add_input_flags(s_int, intervals.in);
    s_int->add_option("-o,--out", intervals.out, "artifact directory")->required();
    s_int->callback([&] { cmd_stats_intervals(intervals); });

    ActivityOpts activity;
    auto* s_act = app.add_subcommand("stats-activity", "binned activity series for one owner");
    add_input_flags(s_act, activity.in);
    s_act->add_option("-o,--out", activity.out, "artifact directory")->required();
    s_act->add_option("--owner", activity.owner, "user id or post id")->required();
    s_act->add_option("--twin", activity.twin, "bin width in minutes; 0 = 1440 user / 60 post")
        ->capture_default_str();
    s_act->add_flag("--events", activity.events, "also export the raw event minutes");
    s_act->callback([&] { cmd_stats_activity(activity); });

    ScalingOpts scaling;
    auto* s_sca = app.add_subcommand("stats-scaling", "fluctuation scaling across owners");
    add_input_flags(s_sca, scaling.in);
    s_sca->add_option("-o,--out", scaling.out, "artifact directory")->required();
    s_sca->add_option("--twin", scaling.twin, "bin width in minutes; 0 = 1440 user / 60 post")
        ->capture_default_str();
    s_sca->add_flag("--posts", scaling.posts, "scale over posts instead of users");
    s_sca->callback([&] { cmd_stats_scaling(scaling); });

    ActivityOpts pspec;
    auto* s_psp = app.add_subcommand("stats-spectrum", "periodogram of one owner's activity");
    add_input_flags(s_psp, pspec.in);
    s_psp->add_option("-o,--out", pspec.out, "artifact directory")->required();
    s_psp->add_option("--owner", pspec.owner, "user id or post id")->required();
    s_psp->add_option("--twin", pspec.twin, "bin width in minutes; 0 = 1440 user / 60 post")
        ->capture_default_str();
    s_psp->callback([&] { cmd_stats_spectrum(pspec); });

    ResponseOpts response;
    auto* s_rsp = app.add_subcommand("stats-response", "comment response-time distribution");
    add_input_flags(s_rsp, response.in);
    s_rsp->add_option("-o,--out", response.out, "artifact directory")->required();
    s_rsp->callback([&] { cmd_stats_response(response); });

    CommunitiesOpts comm;
    auto* s_com = app.add_subcommand("communities", "spectral community detection");
    add_input_flags(s_com, comm.in);
    s_com->add_option("-o,--out", comm.out, "artifact directory")->required();
    s_com->add_flag("--flatten", comm.flatten, "attribute comments to the root post");
    s_com->add_flag("--bipartite", comm.bipartite,
                    "work on the user-post graph instead of the user projection");
    s_com->add_option("--min-comments", comm.min_comments,
                      "bipartite mode: keep posts with at least this many comments")
        ->capture_default_str();
    s_com->add_option("-k,--communities", comm.k, "community count; 0 = detect from the gap")
        ->capture_default_str();
    s_com->add_option("--kmax", comm.kmax, "eigenpairs to compute for the gap scan")
        ->check(CLI::Range(std::size_t{3}, std::size_t{400}))
        ->capture_default_str();
    s_com->add_option("--eps-ring", comm.eps_ring,
                      "leave nodes within this radius of the origin unclassified; "
                      "negative = auto");
    s_com->add_option("--seed", comm.seed, "clustering seed")->capture_default_str();
    s_com->add_option("--dims", comm.dims, "scatter projection dimensions")
        ->check(CLI::IsMember({2, 3}))
        ->capture_default_str();
    s_com->add_option("--truth", comm.truth, "ground-truth labels to score against (NMI)");
    s_com->callback([&] { cmd_communities(comm); });

    SynthOpts synth;
    auto* s_syn = app.add_subcommand("synth", "generate a synthetic event log");
    s_syn->add_option("-o,--out", synth.out, "output log file (.jsonl or .tsv)")->required();
    s_syn->add_option("--groups", synth.groups, "planted user groups")->capture_default_str();
    s_syn->add_option("--users", synth.users, "total users; 0 = 50 per group");
    s_syn->add_option("--posts", synth.posts, "total posts; 0 = 40 per group");
    s_syn->add_option("--p-in", synth.p_in, "probability a comment targets the own group")
        ->capture_default_str();
    s_syn->add_option("--gap", synth.gap, "inter-event gap law")
        ->check(CLI::IsMember({"exp", "pareto"}))
        ->capture_default_str();
    s_syn->add_option("--alpha", synth.alpha, "pareto gap exponent")->capture_default_str();
    s_syn->add_option("--rate", synth.rate, "exponential gap rate per minute")
        ->capture_default_str();
    s_syn->add_option("--q", synth.q, "response kernel q")->capture_default_str();
    s_syn->add_option("--tstar", synth.tstar, "response kernel scale, minutes")
        ->capture_default_str();
    s_syn->add_option("--reply", synth.reply, "probability a comment replies to a comment")
        ->capture_default_str();
    s_syn->add_option("--horizon", synth.horizon, "log span in minutes")->capture_default_str();
    s_syn->add_option("--seed", synth.seed, "generator seed")->capture_default_str();
    s_syn->callback([&] { cmd_synth(synth); });

    ReportOpts report;
    auto* s_rep = app.add_subcommand("report", "render a markdown digest of pipeline artifacts");
    s_rep->add_option("-i,--input", report.dir, "artifact directory")->required();
    s_rep->add_option("-o,--out", report.out, "output file; default <dir>/report.md");
    s_rep->callback([&] { cmd_report(report); });

    for (auto* sub : {s_iv, s_net, s_int, s_act, s_sca, s_psp, s_rsp, s_com, s_syn, s_rep})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
