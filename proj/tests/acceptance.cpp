// Acceptance battery: eight end-to-end criteria, one [PASS]/[FAIL] line each,
// exit 0 only when all pass. Heavier than the unit suites; the determinism
// and scale criteria drive the installed binary as a subprocess.

#include <sys/wait.h>

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blognet/bigraph.hpp"
#include "blognet/distribution.hpp"
#include "blognet/events.hpp"
#include "blognet/fits.hpp"
#include "blognet/samplers.hpp"
#include "blognet/spectral.hpp"
#include "blognet/synthgen.hpp"
#include "blognet/tempstats.hpp"
#include "blognet/util.hpp"

using namespace blognet;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report_line(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename F>
void criterion(int idx, const char* name, F&& body) {
    try {
        std::pair<bool, std::string> r = body();
        report_line(idx, name, r.first, r.second);
    } catch (const std::exception& e) {
        report_line(idx, name, false, std::string("exception: ") + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) { return fmt_num(v, 4); }

Eigen::MatrixXd dense_of(const LaplacianMatrix& L) {
    const std::size_t n = L.matrix.n;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::int64_t p = L.matrix.row_ptr[i]; p < L.matrix.row_ptr[i + 1]; ++p)
            D(static_cast<Eigen::Index>(i), L.matrix.col[static_cast<std::size_t>(p)]) =
                L.matrix.val[static_cast<std::size_t>(p)];
    return D;
}

int run_cli(const std::string& args, const fs::path& cwd = {}) {
    std::string cmd;
    if (!cwd.empty()) cmd = "cd " + cwd.string() + " && ";
    cmd += std::string(BLOGNET_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// ---- criterion bodies ------------------------------------------------------

std::pair<bool, std::string> spectral_correctness() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(4242);
    double max_err = 0.0;
    double min_ev = 0.0, max_ev = 0.0;
    bool zeros_ok = true;
    for (int g = 0; g < 50; ++g) {
        const std::size_t n = 10 + rng.uniform_index(191);
        const double p = 0.03 + 0.2 * rng.uniform01();
        WeightedUserGraph wg;
        for (std::size_t i = 0; i < n; ++i) wg.nodes.push_back("n" + std::to_string(i));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.uniform01() < p)
                    wg.edges.push_back({static_cast<std::int32_t>(i),
                                        static_cast<std::int32_t>(j), rng.uniform(0.1, 5.0)});
        if (wg.edges.empty()) wg.edges.push_back({0, 1, 1.0});
        const LaplacianMatrix L = normalized_laplacian(wg);
        const std::size_t k =
            std::min(L.matrix.n, std::max<std::size_t>(30, L.n_components + 5));
        const Spectrum s = smallest_eigenpairs(L, k, 2024 + static_cast<std::uint64_t>(g));

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_of(L));
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
            max_err = std::max(max_err,
                               std::abs(s.eigenvalues[i] - es.eigenvalues()(static_cast<Eigen::Index>(i))));
            min_ev = std::min(min_ev, s.eigenvalues[i]);
            max_ev = std::max(max_ev, s.eigenvalues[i]);
            if (s.eigenvalues[i] < 1e-9) ++zeros;
        }
        if (zeros != L.n_components) zeros_ok = false;
    }
    const double secs = seconds_since(t0);
    const bool bounds_ok = min_ev >= -1e-9 && max_ev <= 2.0 + 1e-9;
    const bool pass = max_err <= 1e-8 && bounds_ok && zeros_ok && secs < 30.0;
    std::ostringstream d;
    d << "50 graphs, max |lambda - dense| = " << num(max_err) << ", spectrum in ["
      << num(min_ev) << ", " << num(max_ev) << "], zero multiplicity "
      << (zeros_ok ? "==" : "!=") << " components, " << num(secs) << " s";
    return {pass, d.str()};
}

std::pair<bool, std::string> planted_recovery() {
    auto t0 = std::chrono::steady_clock::now();
    double min_nmi = 1.0;
    std::vector<std::size_t> detected;
    for (std::uint64_t seed : {201, 202, 203, 204, 205}) {
        SynthConfig cfg;
        cfg.n_groups = 4;
        cfg.users_per_group = 100;
        cfg.posts_per_group = 40;
        cfg.p_in = 0.95;
        cfg.p_out = 0.05;
        cfg.gap_rate = 0.004;
        cfg.horizon = 50000;
        cfg.seed = seed;
        const SynthResult res = generate(cfg);
        const BipartiteGraph g = build_bipartite(res.log, BigraphMode::FlattenToPost);
        const LaplacianMatrix L = normalized_laplacian(project_user_graph(commons_matrix(g)));
        const Spectrum s = smallest_eigenpairs(L, std::min<std::size_t>(12, L.matrix.n), seed);
        const std::size_t k = detect_num_communities(s.eigenvalues);
        detected.push_back(k);
        const CommunityAssignment asg = assign_branches(s, 4);
        std::vector<int> truth;
        truth.reserve(L.nodes.size());
        for (const auto& node : L.nodes) {
            auto it = std::lower_bound(res.truth.user_group.begin(), res.truth.user_group.end(),
                                       node, [](const auto& a, const std::string& b) {
                                           return a.first < b;
                                       });
            truth.push_back(it != res.truth.user_group.end() && it->first == node ? it->second
                                                                                  : 0);
        }
        min_nmi = std::min(min_nmi, normalized_mutual_information(asg.labels, truth));
    }
    const double secs = seconds_since(t0);
    const bool all_four = std::all_of(detected.begin(), detected.end(),
                                      [](std::size_t k) { return k == 4; });
    const bool pass = all_four && min_nmi >= 0.9 && secs < 60.0;
    std::ostringstream d;
    d << "5 seeds, detected k = {";
    for (std::size_t i = 0; i < detected.size(); ++i) d << (i ? "," : "") << detected[i];
    d << "}, min NMI = " << num(min_nmi) << ", " << num(secs) << " s";
    return {pass, d.str()};
}

std::pair<bool, std::string> fluctuation_scaling_limits() {
    std::mt19937_64 eng(777);
    std::vector<TimeSeries> poisson;
    for (int i = 0; i < 200; ++i) {
        const double lam =
            std::exp(std::log(0.5) + (std::log(200.0) - std::log(0.5)) * i / 199.0);
        std::poisson_distribution<std::uint64_t> pd(lam);
        TimeSeries ts;
        ts.owner = "p" + std::to_string(i);
        ts.counts.resize(400);
        for (auto& c : ts.counts) c = pd(eng);
        poisson.push_back(std::move(ts));
    }
    const ScalingResult sp = fluctuation_scaling(poisson);

    TimeSeries base;
    base.owner = "base";
    std::poisson_distribution<std::uint64_t> pd(5.0);
    base.counts.resize(300);
    for (auto& c : base.counts) c = pd(eng);
    std::vector<TimeSeries> copies;
    for (int a = 1; a <= 50; ++a) {
        TimeSeries ts;
        ts.owner = "c" + std::to_string(a);
        ts.counts = base.counts;
        for (auto& c : ts.counts) c *= static_cast<std::uint64_t>(a);
        copies.push_back(std::move(ts));
    }
    const ScalingResult sc = fluctuation_scaling(copies);

    const bool pass = std::abs(sp.mu - 0.5) <= 0.05 && std::abs(sc.mu - 1.0) <= 1e-6;
    std::ostringstream d;
    d << "poisson battery mu = " << num(sp.mu) << " (target 0.5 +- 0.05), scaled copies mu = "
      << fmt_num(sc.mu) << " (target 1 +- 1e-6)";
    return {pass, d.str()};
}

std::pair<bool, std::string> qexp_round_trip() {
    Rng rng(888);
    std::vector<double> s(100000);
    for (auto& x : s) x = sample_qexp(rng, 1.5, 100.0);
    QExpFit fit;
    try {
        fit = fit_qexp(s);
    } catch (const FitNotConverged& e) {
        fit = e.best();
    }
    std::vector<double> ex(100000);
    for (auto& x : ex) x = sample_exponential(rng, 0.01);
    QExpFit efit;
    try {
        efit = fit_qexp(ex);
    } catch (const FitNotConverged& e) {
        efit = e.best();
    }
    const bool pass = std::abs(fit.q - 1.5) <= 0.05 && std::abs(fit.t_star - 100.0) <= 10.0 &&
                      std::abs(efit.q - 1.0) <= 0.05;
    std::ostringstream d;
    d << "q = " << num(fit.q) << " (target 1.5 +- 0.05), t* = " << num(fit.t_star)
      << " (target 100 +- 10); exponential q = " << num(efit.q) << " (target 1 +- 0.05)";
    return {pass, d.str()};
}

std::pair<bool, std::string> powerlaw_round_trip() {
    Rng rng(999);
    std::vector<double> s(1000000);
    for (auto& x : s) x = sample_pareto(rng, 2.5, 1.0);
    const PowerLawFit fit = fit_powerlaw(make_distribution(s));

    Distribution exact;
    exact.n = 1000;
    double lo = 1.0;
    for (int k = 0; k < 40; ++k) {
        Bin b;
        b.lo = lo;
        b.hi = lo * kLogBinRatio;
        b.count = 5;
        b.pdf = std::pow(b.center(), -2.5);
        b.ccdf = 1.0;
        exact.bins.push_back(b);
        lo = b.hi;
    }
    const PowerLawFit efit = fit_powerlaw(exact, 0.5, 1e9);

    const bool pass = std::abs(fit.exponent - 2.5) <= 0.05 &&
                      std::abs(efit.exponent - 2.5) <= 1e-6;
    std::ostringstream d;
    d << "1e6 pareto samples -> slope " << num(fit.exponent)
      << " (target 2.5 +- 0.05); exact bins -> slope " << fmt_num(efit.exponent)
      << " (target 2.5 +- 1e-6)";
    return {pass, d.str()};
}

std::pair<bool, std::string> bipartite_invariants() {
    std::vector<SynthConfig> configs;
    {
        SynthConfig c;  // the planted recovery shape
        c.n_groups = 4;
        c.users_per_group = 100;
        c.posts_per_group = 40;
        c.p_in = 0.95;
        c.p_out = 0.05;
        c.gap_rate = 0.004;
        c.horizon = 50000;
        c.seed = 201;
        configs.push_back(c);
    }
    {
        SynthConfig c;  // single group, small
        c.n_groups = 1;
        c.users_per_group = 12;
        c.posts_per_group = 10;
        c.gap_rate = 0.01;
        c.horizon = 20000;
        c.seed = 31;
        configs.push_back(c);
    }
    {
        SynthConfig c;  // heavy-tailed gaps, two groups, replies on
        c.n_groups = 2;
        c.users_per_group = 8;
        c.posts_per_group = 6;
        c.p_in = 0.9;
        c.p_out = 0.1;
        c.gap_sampler = GapSampler::Pareto;
        c.gap_alpha = 1.6;
        c.reply_prob = 0.4;
        c.horizon = 30000;
        c.seed = 32;
        configs.push_back(c);
    }
    {
        SynthConfig c;
        c.n_groups = 2;
        c.users_per_group = 10;
        c.posts_per_group = 8;
        c.p_in = 0.8;
        c.p_out = 0.2;
        c.gap_rate = 0.008;
        c.horizon = 25000;
        c.seed = 33;
        configs.push_back(c);
    }

    bool indeg_ok = true, commons_ok = true, null_ok = true;
    int commons_checked = 0;
    double worst_null = 0.0;
    for (const auto& cfg : configs) {
        const SynthResult res = generate(cfg);
        for (BigraphMode mode : {BigraphMode::CommentTree, BigraphMode::FlattenToPost}) {
            const BipartiteGraph g = build_bipartite(res.log, mode);

            const Distribution din =
                degree_distribution(g, Partition::Content, Direction::In, false);
            if (din.values.size() != 1 || din.values[0].first != 1.0 ||
                din.values[0].second != g.contents.size())
                indeg_ok = false;

            const CommonsMatrix cm = commons_matrix(g);
            if (g.users.size() <= 20) {
                ++commons_checked;
                std::vector<std::set<std::int32_t>> touched(g.users.size());
                for (const auto* edges : {&g.creations, &g.writes, &g.reads})
                    for (const auto& e : *edges)
                        touched[static_cast<std::size_t>(e.user)].insert(e.content);
                std::map<std::pair<std::int32_t, std::int32_t>, std::uint32_t> brute;
                for (std::size_t i = 0; i < touched.size(); ++i)
                    for (std::size_t j = i + 1; j < touched.size(); ++j) {
                        std::uint32_t shared = 0;
                        for (std::int32_t c : touched[i])
                            if (touched[j].count(c)) ++shared;
                        if (shared > 0)
                            brute[{static_cast<std::int32_t>(i),
                                   static_cast<std::int32_t>(j)}] = shared;
                    }
                if (brute.size() != cm.entries.size()) commons_ok = false;
                for (const auto& e : cm.entries) {
                    auto it = brute.find({e.i, e.j});
                    if (it == brute.end() || it->second != e.count) commons_ok = false;
                }
            }

            const LaplacianMatrix L = normalized_laplacian(project_user_graph(cm));
            std::vector<double> v(L.matrix.n), y(L.matrix.n);
            double norm = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] = std::sqrt(L.strengths[i]);
                norm += v[i] * v[i];
            }
            norm = std::sqrt(norm);
            for (auto& x : v) x /= norm;
            L.matrix.multiply(v.data(), y.data());
            for (double x : y) worst_null = std::max(worst_null, std::abs(x));
        }
    }
    if (worst_null > 1e-9) null_ok = false;
    const bool pass = indeg_ok && commons_ok && null_ok;
    std::ostringstream d;
    d << configs.size() << " logs x 2 modes: content in-degree " << (indeg_ok ? "== 1" : "!= 1")
      << ", commons == brute force on " << commons_checked << " small instances ("
      << (commons_ok ? "ok" : "MISMATCH") << "), max |L sqrt(l)| = " << num(worst_null);
    return {pass, d.str()};
}

std::pair<bool, std::string> cli_determinism() {
    const fs::path root = fs::temp_directory_path() / "blognet_acceptance_det";
    fs::remove_all(root);
    // identical argv both times; only the working directory is fresh
    bool ran_ok = true;
    for (int r = 1; r <= 2; ++r) {
        const fs::path dir = root / ("run" + std::to_string(r));
        fs::create_directories(dir);
        for (const char* args :
             {"synth --groups 4 --users 200 --posts 80 --p-in 0.9 --rate 0.005 "
              "--horizon 30000 --seed 19 -o log.jsonl",
              "net-build -i log.jsonl --flatten -o art",
              "stats-intervals -i log.jsonl -o art",
              "stats-response -i log.jsonl -o art",
              "stats-scaling -i log.jsonl -o art",
              "communities -i log.jsonl --flatten --seed 42 --truth log.truth.tsv -o art",
              "report -i art"})
            if (run_cli(args, dir) != 0) ran_ok = false;
    }
    if (!ran_ok) return {false, "a pipeline stage exited nonzero"};

    std::size_t files = 0, mismatched = 0;
    for (const auto& entry : fs::recursive_directory_iterator(root / "run1")) {
        if (!entry.is_regular_file()) continue;
        ++files;
        const fs::path rel = fs::relative(entry.path(), root / "run1");
        if (slurp(entry.path()) != slurp(root / "run2" / rel)) ++mismatched;
    }
    const bool pass = files > 0 && mismatched == 0;
    std::ostringstream d;
    d << files << " artifact files compared across two runs, " << mismatched << " differ";
    return {pass, d.str()};
}

std::pair<bool, std::string> scale_check() {
    const fs::path dir = fs::temp_directory_path() / "blognet_acceptance_scale";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string log = (dir / "big.jsonl").string();
    const std::string truth = (dir / "big.truth.tsv").string();
    const std::string art = (dir / "art").string();

    auto t0 = std::chrono::steady_clock::now();
    bool ran_ok = true;
    for (const std::string& args :
         {"synth --groups 4 --users 500 --posts 200 --p-in 0.9 --rate 0.01 "
          "--horizon 115000 --seed 9 -o " + log,
          "ingest-validate -i " + log,
          "net-build -i " + log + " --flatten -o " + art,
          "stats-intervals -i " + log + " -o " + art,
          "stats-scaling -i " + log + " -o " + art,
          "stats-response -i " + log + " -o " + art,
          "communities -i " + log + " --flatten --truth " + truth + " -o " + art,
          "report -i " + art})
        if (run_cli(args) != 0) ran_ok = false;
    const double secs = seconds_since(t0);

    std::size_t events = 0;
    {
        std::ifstream is(log);
        std::string line;
        while (std::getline(is, line))
            if (!line.empty()) ++events;
    }
    const bool pass = ran_ok && events >= 500000 && secs < 600.0;
    std::ostringstream d;
    d << events << " events through the full pipeline in " << num(secs) << " s"
      << (ran_ok ? "" : " (a stage exited nonzero)");
    return {pass, d.str()};
}

}  // namespace

int main() {
    criterion(1, "spectral correctness vs dense oracle", spectral_correctness);
    criterion(2, "planted-partition recovery", planted_recovery);
    criterion(3, "fluctuation scaling limits", fluctuation_scaling_limits);
    criterion(4, "q-exponential round trip", qexp_round_trip);
    criterion(5, "power-law fit round trip", powerlaw_round_trip);
    criterion(6, "bipartite invariants", bipartite_invariants);
    criterion(7, "CLI determinism", cli_determinism);
    criterion(8, "scale check", scale_check);
    if (failures == 0) {
        std::printf("all 8 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
