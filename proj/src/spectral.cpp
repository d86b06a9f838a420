#include "blognet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <tuple>

#include "blognet/kernels.hpp"

namespace blognet {

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int32_t find(std::int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

struct EdgeRef {
    std::int32_t a;
    std::int32_t b;
    double w;
};

LaplacianMatrix build_laplacian(std::vector<std::string> ids, const std::vector<EdgeRef>& edges) {
    const std::size_t n_all = ids.size();
    std::vector<double> strength_all(n_all, 0.0);
    for (const auto& e : edges) {
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw Error("edge weight must be positive and finite");
        if (e.a == e.b) throw Error("self-loops are not allowed");
        strength_all[static_cast<std::size_t>(e.a)] += e.w;
        strength_all[static_cast<std::size_t>(e.b)] += e.w;
    }

    LaplacianMatrix L;
    std::vector<std::int32_t> remap(n_all, -1);
    for (std::size_t i = 0; i < n_all; ++i) {
        if (strength_all[i] > 0.0) {
            remap[i] = static_cast<std::int32_t>(L.nodes.size());
            L.nodes.push_back(ids[i]);
            L.strengths.push_back(strength_all[i]);
        } else {
            L.isolated.push_back(ids[i]);
        }
    }
    const std::size_t n = L.nodes.size();
    if (n == 0) throw Error("graph is empty after removing isolated nodes");

    std::vector<CsrMatrix::Triplet> trip;
    trip.reserve(n + 2 * edges.size());
    for (std::size_t i = 0; i < n; ++i)
        trip.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(i), 1.0});

    UnionFind uf(n);
    for (const auto& e : edges) {
        const std::int32_t a = remap[static_cast<std::size_t>(e.a)];
        const std::int32_t b = remap[static_cast<std::size_t>(e.b)];
        const double v = -e.w / std::sqrt(L.strengths[static_cast<std::size_t>(a)] *
                                          L.strengths[static_cast<std::size_t>(b)]);
        trip.push_back({a, b, v});
        trip.push_back({b, a, v});
        uf.unite(a, b);
    }
    L.matrix = CsrMatrix::from_triplets(n, trip);

    // component ids in order of first appearance by node index
    L.component.assign(n, -1);
    std::vector<std::int32_t> root_to_comp(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t r = uf.find(static_cast<std::int32_t>(i));
        if (root_to_comp[static_cast<std::size_t>(r)] < 0) {
            root_to_comp[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(L.n_components);
            ++L.n_components;
        }
        L.component[i] = root_to_comp[static_cast<std::size_t>(r)];
    }
    return L;
}

// Symmetric tridiagonal eigensolve, QL with implicit shifts. d holds the
// diagonal in and eigenvalues out; e the subdiagonal (e[i] couples i,i+1);
// z is m x m row-major, seeded with the identity, eigenvectors in columns.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const std::size_t m = d.size();
    if (m == 0) return;
    e.resize(m, 0.0);

    for (std::size_t l = 0; l < m; ++l) {
        int iter = 0;
        std::size_t split;
        do {
            for (split = l; split + 1 < m; ++split) {
                const double dd = std::fabs(d[split]) + std::fabs(d[split + 1]);
                if (std::fabs(e[split]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (split != l) {
                if (iter++ == 60) throw Error("tridiagonal eigensolve failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[split] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = split;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[split] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < m; ++k) {
                        f = z[k * m + i + 1];
                        z[k * m + i + 1] = s * z[k * m + i] + c * f;
                        z[k * m + i] = c * z[k * m + i] - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[split] = 0.0;
            }
        } while (split != l);
    }

    // ascending, swapping eigenvector columns along
    for (std::size_t i = 0; i + 1 < m; ++i) {
        std::size_t lo = i;
        for (std::size_t j = i + 1; j < m; ++j)
            if (d[j] < d[lo]) lo = j;
        if (lo != i) {
            std::swap(d[i], d[lo]);
            for (std::size_t k = 0; k < m; ++k) std::swap(z[k * m + i], z[k * m + lo]);
        }
    }
}

double norm2(const std::vector<double>& v) {
    return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

// two passes of classical Gram-Schmidt against every vector in basis
void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
            const double c = kernels::dot(q.data(), v.data(), v.size());
            if (c != 0.0) kernels::axpy(-c, q.data(), v.data(), v.size());
        }
    }
}

std::vector<std::vector<double>> zero_eigenbasis(const LaplacianMatrix& L) {
    const std::size_t n = L.matrix.n;
    std::vector<double> sqrtl(n);
    for (std::size_t i = 0; i < n; ++i) sqrtl[i] = std::sqrt(L.strengths[i]);

    std::vector<std::vector<double>> basis;
    std::vector<double> v0 = sqrtl;
    kernels::scal(1.0 / norm2(v0), v0.data(), n);
    basis.push_back(std::move(v0));

    for (std::size_t c = 0; basis.size() < L.n_components && c < L.n_components; ++c) {
        std::vector<double> u(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (L.component[i] == static_cast<std::int32_t>(c)) u[i] = sqrtl[i];
        orthogonalize(u, basis);
        const double nrm = norm2(u);
        if (nrm > 1e-12) {
            kernels::scal(1.0 / nrm, u.data(), n);
            basis.push_back(std::move(u));
        }
    }
    return basis;
}

double true_residual(const CsrMatrix& m, const std::vector<double>& v, double lambda,
                     std::vector<double>& scratch) {
    m.multiply(v.data(), scratch.data());
    kernels::axpy(-lambda, v.data(), scratch.data(), v.size());
    return norm2(scratch);
}

}  // namespace

LaplacianMatrix normalized_laplacian(const WeightedUserGraph& g) {
    std::vector<EdgeRef> edges;
    edges.reserve(g.edges.size());
    for (const auto& e : g.edges) edges.push_back({e.a, e.b, e.w});
    return build_laplacian(g.nodes, edges);
}

LaplacianMatrix normalized_laplacian(const UserPostWeightedGraph& g) {
    std::vector<std::string> ids;
    ids.reserve(g.users.size() + g.posts.size());
    for (const auto& u : g.users) ids.push_back("u:" + u);
    for (const auto& p : g.posts) ids.push_back("c:" + p);
    const auto n_users = static_cast<std::int32_t>(g.users.size());
    std::vector<EdgeRef> edges;
    edges.reserve(g.edges.size());
    for (const auto& e : g.edges) edges.push_back({e.user, n_users + e.post, static_cast<double>(e.w)});
    return build_laplacian(std::move(ids), edges);
}

Spectrum smallest_eigenpairs(const LaplacianMatrix& L, std::size_t k_req, std::uint64_t seed) {
    const std::size_t n = L.matrix.n;
    if (k_req < 1 || k_req > n) throw Error("requested eigenpair count out of range");

    auto zero_basis = zero_eigenbasis(L);
    const std::size_t n_zero = zero_basis.size();

    struct Pair {
        double val;
        std::vector<double> vec;
    };
    std::vector<Pair> found;  // nonzero pairs, harvested smallest-first
    std::vector<std::vector<double>> deflate = zero_basis;

    const std::size_t need_nonzero = k_req > n_zero ? k_req - n_zero : 0;
    const double conv_tol = 1e-11;
    Rng rng(seed);
    std::vector<double> scratch(n);
    int restarts = 0;

    auto partial_spectrum = [&]() {
        Spectrum s;
        for (std::size_t i = 0; i < std::min(k_req, n_zero); ++i) {
            s.eigenvalues.push_back(0.0);
            s.vectors.push_back(zero_basis[i]);
            s.residuals.push_back(true_residual(L.matrix, zero_basis[i], 0.0, scratch));
        }
        for (const auto& p : found) {
            s.eigenvalues.push_back(p.val);
            s.vectors.push_back(p.vec);
            s.residuals.push_back(true_residual(L.matrix, p.vec, p.val, scratch));
        }
        return s;
    };

    while (found.size() < need_nonzero) {
        if (++restarts > 80)
            throw EigenNotConverged("eigensolver did not converge within the restart cap",
                                    partial_spectrum());

        std::vector<double> v(n);
        for (auto& x : v) x = rng.uniform(-1.0, 1.0);
        orthogonalize(v, deflate);
        double nrm = norm2(v);
        if (nrm < 1e-10) continue;  // unlucky start, draw again
        kernels::scal(1.0 / nrm, v.data(), n);

        const std::size_t dim_left = n - deflate.size();
        const std::size_t m_max = std::min(dim_left, static_cast<std::size_t>(300));
        std::vector<std::vector<double>> V{v};
        std::vector<double> alpha, beta;
        std::vector<double> w(n);

        for (std::size_t j = 0; j < m_max; ++j) {
            L.matrix.multiply(V[j].data(), w.data());
            if (j > 0) kernels::axpy(-beta[j - 1], V[j - 1].data(), w.data(), n);
            const double a = kernels::dot(w.data(), V[j].data(), n);
            alpha.push_back(a);
            kernels::axpy(-a, V[j].data(), w.data(), n);
            orthogonalize(w, deflate);
            orthogonalize(w, V);
            const double b = norm2(w);

            const bool breakdown = b < 1e-12;
            const bool last = j + 1 == m_max;
            if (breakdown || last || (j + 1) % 5 == 0) {
                const std::size_t m = j + 1;
                std::vector<double> d = alpha;
                std::vector<double> e = beta;
                std::vector<double> z(m * m, 0.0);
                for (std::size_t i = 0; i < m; ++i) z[i * m + i] = 1.0;
                tridiag_ql(d, e, z);

                std::size_t converged = 0;
                while (converged < m) {
                    const double est = std::fabs(b * z[(m - 1) * m + converged]);
                    if (!breakdown && est > conv_tol) break;
                    ++converged;
                }
                // one pair per restart: a single Krylov run sees only one
                // copy of a degenerate eigenvalue, so greedily draining the
                // converged prefix would skip multiplicities. A breakdown
                // that swept the whole complement is exact, take it all.
                const bool swept_all = breakdown && m == dim_left;
                const std::size_t allowed = swept_all ? need_nonzero - found.size() : 1;
                const std::size_t take =
                    std::min({converged, allowed, need_nonzero - found.size()});
                if (take > 0) {
                    for (std::size_t t = 0; t < take; ++t) {
                        std::vector<double> y(n, 0.0);
                        for (std::size_t i = 0; i < m; ++i)
                            kernels::axpy(z[i * m + t], V[i].data(), y.data(), n);
                        orthogonalize(y, deflate);
                        const double ynrm = norm2(y);
                        if (ynrm < 1e-10) continue;
                        kernels::scal(1.0 / ynrm, y.data(), n);
                        found.push_back({d[t], y});
                        deflate.push_back(found.back().vec);
                    }
                    break;  // restart with the new deflation set
                }
                if (breakdown) break;
            }
            if (b < 1e-12) break;
            kernels::scal(1.0 / b, w.data(), n);
            V.push_back(w);
            beta.push_back(b);
        }
    }

    Spectrum out = partial_spectrum();
    // zeros are exact and lead; harvested pairs may arrive out of order
    std::vector<std::size_t> order(out.eigenvalues.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return out.eigenvalues[a] < out.eigenvalues[b];
    });
    Spectrum sorted;
    for (std::size_t idx : order) {
        sorted.eigenvalues.push_back(out.eigenvalues[idx]);
        sorted.vectors.push_back(std::move(out.vectors[idx]));
        sorted.residuals.push_back(out.residuals[idx]);
    }
    sorted.eigenvalues.resize(k_req);
    sorted.vectors.resize(k_req);
    sorted.residuals.resize(k_req);
    return sorted;
}

std::size_t detect_num_communities(const std::vector<double>& eigenvalues, std::size_t m_scan) {
    if (eigenvalues.size() < 3) throw Error("need at least three eigenvalues to scan for a gap");
    if (m_scan == 0) m_scan = eigenvalues.size();
    if (m_scan > eigenvalues.size()) throw Error("scan window exceeds available eigenvalues");
    if (m_scan < 3) throw Error("scan window must cover at least three eigenvalues");

    std::vector<double> vals(eigenvalues.begin(),
                             eigenvalues.begin() + static_cast<std::ptrdiff_t>(m_scan));
    std::sort(vals.begin(), vals.end());
    if (vals.back() - vals.front() < 1e-12)
        throw Error("eigenvalues carry no gap to detect communities from");

    constexpr double eps_gap = 1e-6;
    constexpr double min_ratio = 1.0;  // below this the gap is noise
    std::size_t zeros = 0;
    while (zeros < vals.size() && vals[zeros] < 1e-9) ++zeros;

    const std::size_t m = vals.size() - zeros;  // nonzero tail
    std::size_t best_j = 0;
    double best_ratio = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
        const double lo = vals[zeros + j - 1];
        const double hi = vals[zeros + j];
        const double ratio = (hi - lo) / std::max(lo, eps_gap);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_j = j;
        }
    }
    std::size_t k = zeros;
    if (best_ratio >= min_ratio) k += best_j;
    return std::max<std::size_t>(k, 1);
}

namespace {

struct KMeansResult {
    std::vector<int> labels;  // cluster index per classified row
    double objective = -std::numeric_limits<double>::infinity();
};

// rows are unit vectors; cosine similarity k-means with greedy
// farthest-point seeding from a caller-chosen start row
KMeansResult spherical_kmeans(const std::vector<std::vector<double>>& rows, std::size_t k,
                              std::size_t start_row) {
    const std::size_t n = rows.size();
    const std::size_t d = rows[0].size();

    std::vector<std::vector<double>> centers;
    centers.push_back(rows[start_row]);
    std::vector<double> best_sim(n, -2.0);
    while (centers.size() < k) {
        std::size_t far = 0;
        double far_sim = 2.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = kernels::dot(centers.back().data(), rows[i].data(), d);
            if (s > best_sim[i]) best_sim[i] = s;
            if (best_sim[i] < far_sim) {
                far_sim = best_sim[i];
                far = i;
            }
        }
        centers.push_back(rows[far]);
    }

    std::vector<int> labels(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = labels[i];
            double bs = -2.0;
            for (std::size_t c = 0; c < k; ++c) {
                const double s = kernels::dot(centers[c].data(), rows[i].data(), d);
                if (s > bs) {
                    bs = s;
                    best = static_cast<int>(c);
                }
            }
            if (best != labels[i]) {
                labels[i] = best;
                moved = true;
            }
        }
        std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            kernels::axpy(1.0, rows[i].data(), sums[static_cast<std::size_t>(labels[i])].data(), d);
            ++counts[static_cast<std::size_t>(labels[i])];
        }
        for (std::size_t c = 0; c < k; ++c) {
            const double nrm = norm2(sums[c]);
            if (counts[c] == 0 || nrm < 1e-15) continue;  // keep the old center
            kernels::scal(1.0 / nrm, sums[c].data(), d);
            centers[c] = std::move(sums[c]);
        }
        if (!moved && iter > 0) break;
    }

    KMeansResult res;
    res.labels = std::move(labels);
    res.objective = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        res.objective +=
            kernels::dot(centers[static_cast<std::size_t>(res.labels[i])].data(), rows[i].data(), d);
    return res;
}

}  // namespace

CommunityAssignment assign_branches(const Spectrum& spec, std::size_t k, double eps_ring,
                                    std::uint64_t seed) {
    if (k < 2) throw Error("branch assignment needs at least two communities");
    if (spec.vectors.size() < k)
        throw Error("spectrum holds fewer eigenvectors than requested communities");
    const std::size_t n = spec.vectors[0].size();
    const std::size_t d = k - 1;

    // coordinates start right after the leading sqrt(l) vector so the
    // remaining zero vectors still separate disconnected components
    CommunityAssignment out;
    out.k = k;
    out.row_norms.assign(n, 0.0);
    double max_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            const double x = spec.vectors[1 + c][i];
            s += x * x;
        }
        out.row_norms[i] = std::sqrt(s);
        max_norm = std::max(max_norm, out.row_norms[i]);
    }
    if (max_norm <= 0.0) throw Error("eigenvector coordinates are all zero");
    out.epsilon_ring = eps_ring < 0.0 ? 1e-3 * max_norm : eps_ring;

    std::vector<std::size_t> classified;
    for (std::size_t i = 0; i < n; ++i)
        if (out.row_norms[i] >= out.epsilon_ring) classified.push_back(i);
    if (classified.size() < k)
        throw Error("fewer classifiable nodes than communities; try a smaller community count");

    std::vector<std::vector<double>> rows(classified.size(), std::vector<double>(d));
    for (std::size_t r = 0; r < classified.size(); ++r) {
        const std::size_t i = classified[r];
        for (std::size_t c = 0; c < d; ++c) rows[r][c] = spec.vectors[1 + c][i] / out.row_norms[i];
    }

    // one run seeded at the largest row plus a few random restarts
    std::size_t start = 0;
    for (std::size_t r = 1; r < classified.size(); ++r)
        if (out.row_norms[classified[r]] > out.row_norms[classified[start]]) start = r;
    KMeansResult best = spherical_kmeans(rows, k, start);
    Rng rng(seed);
    for (int restart = 0; restart < 7; ++restart) {
        KMeansResult cand = spherical_kmeans(rows, k, rng.uniform_index(rows.size()));
        if (cand.objective > best.objective) best = std::move(cand);
    }

    std::vector<std::size_t> sizes(k, 0);
    for (int lb : best.labels) ++sizes[static_cast<std::size_t>(lb)];
    if (std::count(sizes.begin(), sizes.end(), 0) > 0)
        throw Error("clustering left empty communities; try a smaller community count");

    // deterministic labels: communities numbered by their smallest node index
    std::vector<int> first_seen(k, -1);
    int next = 1;
    out.labels.assign(n, 0);
    for (std::size_t r = 0; r < classified.size(); ++r) {
        const auto c = static_cast<std::size_t>(best.labels[r]);
        if (first_seen[c] < 0) first_seen[c] = next++;
        out.labels[classified[r]] = first_seen[c];
    }
    return out;
}

double normalized_mutual_information(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw Error("label vectors differ in length");
    if (a.empty()) throw Error("label vectors are empty");
    const double n = static_cast<double>(a.size());

    auto index_of = [](const std::vector<int>& v) {
        std::vector<int> uniq(v);
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        return uniq;
    };
    const auto ua = index_of(a), ub = index_of(b);
    std::vector<double> ca(ua.size(), 0.0), cb(ub.size(), 0.0);
    std::vector<double> joint(ua.size() * ub.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ia = static_cast<std::size_t>(
            std::lower_bound(ua.begin(), ua.end(), a[i]) - ua.begin());
        const auto ib = static_cast<std::size_t>(
            std::lower_bound(ub.begin(), ub.end(), b[i]) - ub.begin());
        ca[ia] += 1.0;
        cb[ib] += 1.0;
        joint[ia * ub.size() + ib] += 1.0;
    }

    auto entropy = [n](const std::vector<double>& c) {
        double h = 0.0;
        for (double x : c)
            if (x > 0.0) h -= (x / n) * std::log(x / n);
        return h;
    };
    const double ha = entropy(ca), hb = entropy(cb);
    double mi = 0.0;
    for (std::size_t i = 0; i < ua.size(); ++i)
        for (std::size_t j = 0; j < ub.size(); ++j) {
            const double p = joint[i * ub.size() + j] / n;
            if (p > 0.0) mi += p * std::log(p * n * n / (ca[i] * cb[j]));
        }
    if (ha + hb <= 0.0) return 1.0;  // both single-class: identical partitions
    return 2.0 * mi / (ha + hb);
}

void write_spectrum_tsv(std::ostream& os, const Spectrum& spec) {
    os << "index\teigenvalue\tresidual\n";
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
        os << i << '\t' << fmt_num(spec.eigenvalues[i]) << '\t' << fmt_num(spec.residuals[i])
           << '\n';
}

void write_scatter_tsv(std::ostream& os, const std::vector<std::string>& nodes,
                       const Spectrum& spec, int dims, const CommunityAssignment& assignment) {
    if (dims != 2 && dims != 3) throw Error("scatter export supports 2 or 3 dimensions");
    std::size_t zeros = 0;
    while (zeros < spec.eigenvalues.size() && spec.eigenvalues[zeros] < 1e-9) ++zeros;
    if (zeros + static_cast<std::size_t>(dims) > spec.vectors.size())
        throw Error("spectrum holds too few nonzero eigenvectors for the scatter export");
    const std::size_t n = nodes.size();
    if (assignment.labels.size() != n || spec.vectors[0].size() != n)
        throw Error("scatter export inputs disagree on node count");

    os << "node\tx\ty\tz\tlabel\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double x = spec.vectors[zeros][i];
        const double y = spec.vectors[zeros + 1][i];
        const double z = dims == 3 ? spec.vectors[zeros + 2][i] : 0.0;
        os << nodes[i] << '\t' << fmt_num(x) << '\t' << fmt_num(y) << '\t' << fmt_num(z) << '\t'
           << assignment.labels[i] << '\n';
    }
}

void write_laplacian(std::ostream& os, const LaplacianMatrix& L) {
    os << "# nodes=" << L.matrix.n << " entries=" << L.matrix.nnz() << '\n';
    for (std::size_t i = 0; i < L.matrix.n; ++i)
        for (std::int64_t p = L.matrix.row_ptr[i]; p < L.matrix.row_ptr[i + 1]; ++p)
            os << L.nodes[i] << '\t' << L.nodes[static_cast<std::size_t>(L.matrix.col[p])] << '\t'
               << fmt_num(L.matrix.val[p]) << '\n';
}

}  // namespace blognet
