#include "blognet/distribution.hpp"

#include <algorithm>
#include <ostream>

#include "blognet/util.hpp"

namespace blognet {

namespace {

std::vector<double> build_edges(double vmin_pos, double vmax, bool has_zero,
                                const BinSpec& spec) {
    std::vector<double> edges;
    if (spec.integer_edges) {
        std::int64_t e = has_zero ? 0 : static_cast<std::int64_t>(std::floor(vmin_pos));
        const auto next = [&spec](std::int64_t v) {
            return std::max(v + 1, static_cast<std::int64_t>(
                                       std::floor(static_cast<double>(std::max<std::int64_t>(v, 1)) *
                                                  spec.ratio)));
        };
        while (static_cast<double>(e) <= vmax) {
            edges.push_back(static_cast<double>(e));
            e = next(e);
        }
        edges.push_back(static_cast<double>(e));
    } else {
        double e = vmin_pos;
        while (e <= vmax) {
            edges.push_back(e);
            e *= spec.ratio;
        }
        edges.push_back(e);
        // merge the zero samples into the first bin by anchoring it at 0
        if (has_zero) edges.front() = 0.0;
    }
    return edges;
}

}  // namespace

double Distribution::min_value() const {
    if (values.empty()) throw Error("empty distribution");
    return values.front().first;
}

double Distribution::max_value() const {
    if (values.empty()) throw Error("empty distribution");
    return values.back().first;
}

double Distribution::quantile(double p) const {
    if (values.empty()) throw Error("empty distribution");
    if (p <= 0.0) return values.front().first;
    if (p >= 1.0) return values.back().first;
    const std::uint64_t target =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(p * static_cast<double>(n))));
    std::uint64_t cum = 0;
    for (const auto& [v, c] : values) {
        cum += c;
        if (cum >= target) return v;
    }
    return values.back().first;
}

Distribution make_distribution(const std::vector<double>& samples, BinSpec spec) {
    std::vector<std::pair<double, std::uint64_t>> counts;
    counts.reserve(samples.size());
    for (double s : samples) counts.emplace_back(s, 1);
    return make_distribution_counts(std::move(counts), spec);
}

Distribution make_distribution_counts(std::vector<std::pair<double, std::uint64_t>> value_counts,
                                      BinSpec spec) {
    if (value_counts.empty()) throw Error("cannot bin an empty sample set");
    if (!(spec.ratio > 1.0)) throw Error("bin ratio must exceed 1");
    std::sort(value_counts.begin(), value_counts.end());

    Distribution d;
    d.integer_edges = spec.integer_edges;
    for (const auto& [v, c] : value_counts) {
        if (!std::isfinite(v) || v < 0.0) throw Error("sample values must be finite and >= 0");
        if (c == 0) continue;
        if (!d.values.empty() && d.values.back().first == v)
            d.values.back().second += c;
        else
            d.values.emplace_back(v, c);
        d.n += c;
    }
    if (d.values.empty()) throw Error("cannot bin an empty sample set");

    const bool has_zero = d.values.front().first == 0.0;
    const double vmax = d.values.back().first;
    double vmin_pos = 0.0;
    for (const auto& [v, c] : d.values)
        if (v > 0.0) {
            vmin_pos = v;
            break;
        }

    std::vector<double> edges;
    if (vmin_pos == 0.0) {
        // all samples are zero
        edges = {0.0, 1.0};
    } else {
        edges = build_edges(vmin_pos, vmax, has_zero, spec);
    }

    d.bins.resize(edges.size() - 1);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        d.bins[k].lo = edges[k];
        d.bins[k].hi = edges[k + 1];
    }
    for (const auto& [v, c] : d.values) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), v);
        const std::size_t idx = static_cast<std::size_t>(it - edges.begin()) - 1;
        d.bins[idx].count += c;
    }
    std::uint64_t suffix = d.n;
    for (auto& b : d.bins) {
        b.pdf = static_cast<double>(b.count) / (static_cast<double>(d.n) * b.width());
        b.ccdf = static_cast<double>(suffix) / static_cast<double>(d.n);
        suffix -= b.count;
    }
    return d;
}

void write_distribution_tsv(std::ostream& os, const Distribution& d,
                            const std::vector<std::pair<std::string, std::string>>& header) {
    for (const auto& [k, v] : header) os << "# " << k << "=" << v << "\n";
    os << "bin_lo\tbin_hi\tpdf\tccdf\n";
    for (const auto& b : d.bins)
        os << fmt_num(b.lo) << "\t" << fmt_num(b.hi) << "\t" << fmt_num(b.pdf) << "\t"
           << fmt_num(b.ccdf) << "\n";
}

}  // namespace blognet
