#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace blognet {

struct Bin {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t count = 0;
    double pdf = 0.0;   // count / (n * width)
    double ccdf = 0.0;  // P(X >= lo)

    double width() const { return hi - lo; }
    // geometric-mean center; the zero-anchored first bin uses its midpoint
    double center() const { return lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi; }
};

// ratio between consecutive log-bin edges, 2^(1/4)
inline constexpr double kLogBinRatio = 1.189207115002721;

struct BinSpec {
    double ratio = kLogBinRatio;
    // snap edges to integers (minute timestamps, degree counts); keeps bin
    // widths >= 1 so integer-valued data does not produce sawtooth pdfs
    bool integer_edges = false;
};

struct Distribution {
    // sorted distinct sample values with multiplicities (the pre-binning view)
    std::vector<std::pair<double, std::uint64_t>> values;
    std::vector<Bin> bins;
    std::uint64_t n = 0;
    // set when the distribution is meant to be read through its ccdf column
    bool cumulative = false;
    // bin scheme the histogram was built with
    bool integer_edges = false;

    double min_value() const;
    double max_value() const;
    // lower empirical quantile from the raw values
    double quantile(double p) const;
};

Distribution make_distribution(const std::vector<double>& samples, BinSpec spec = {});
Distribution make_distribution_counts(std::vector<std::pair<double, std::uint64_t>> value_counts,
                                      BinSpec spec = {});

// TSV with "# key=value" comment header then bin_lo, bin_hi, pdf, ccdf rows.
void write_distribution_tsv(std::ostream& os, const Distribution& d,
                            const std::vector<std::pair<std::string, std::string>>& header = {});

}  // namespace blognet
