#include "blognet/report.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "blognet/util.hpp"

namespace blognet {

namespace {

namespace fs = std::filesystem;

// One parsed artifact: "# key=value" comment lines, then a tab-separated
// column header, then data rows. Files written by the exporters all follow
// this shape, so the report never needs format-specific readers.
struct Table {
    bool present = false;
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    bool has(const std::string& key) const { return meta.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback = "?") const {
        auto it = meta.find(key);
        return it == meta.end() ? fallback : it->second;
    }

    int column_index(const std::string& name) const {
        auto it = std::find(columns.begin(), columns.end(), name);
        return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
    }
};

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

Table read_table(const fs::path& path) {
    Table t;
    std::ifstream is(path);
    if (!is) return t;
    t.present = true;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = line.find_first_not_of("# ");
            if (start == std::string::npos) continue;
            std::size_t eq = line.find('=', start);
            if (eq == std::string::npos) continue;
            t.meta[line.substr(start, eq - start)] = line.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            t.columns = split_tabs(line);
            header_seen = true;
            continue;
        }
        t.rows.push_back(split_tabs(line));
    }
    return t;
}

// Re-format a value parsed from an artifact header for display; non-numeric
// strings pass through untouched.
std::string nice(const std::string& raw, int sig = 4) {
    try {
        std::size_t used = 0;
        double v = std::stod(raw, &used);
        if (used != raw.size()) return raw;
        return fmt_num(v, sig);
    } catch (const std::exception&) {
        return raw;
    }
}

std::string describe_distribution(const Table& t, const std::string& unit) {
    std::ostringstream os;
    os << t.get("samples") << " " << unit << " in " << t.rows.size() << " bins";
    int lo = t.column_index("bin_lo");
    int hi = t.column_index("bin_hi");
    if (!t.rows.empty() && lo >= 0 && hi >= 0) {
        os << " over [" << nice(t.rows.front()[static_cast<std::size_t>(lo)]) << ", "
           << nice(t.rows.back()[static_cast<std::size_t>(hi)]) << ")";
    }
    if (t.has("exponent")) {
        os << "; tail exponent " << nice(t.get("exponent"));
        if (t.has("fit_xmin"))
            os << " (fit over [" << nice(t.get("fit_xmin")) << ", " << nice(t.get("fit_xmax"))
               << "])";
    }
    return os.str();
}

void degree_line(std::ostringstream& md, const fs::path& dir, const std::string& file,
                 const std::string& label, const std::string& unit) {
    Table t = read_table(dir / file);
    md << "- " << label << ": ";
    if (!t.present)
        md << "absent\n";
    else
        md << describe_distribution(t, unit) << "\n";
}

}  // namespace

std::string render_report(const std::string& artifacts_dir) {
    const fs::path dir(artifacts_dir);
    std::ostringstream md;
    md << "# Network report\n\n";
    md << "Artifacts read from `" << artifacts_dir << "`.\n\n";

    md << "## Degrees\n\n";
    degree_line(md, dir, "degrees_user_out.tsv", "user out-degree", "users");
    degree_line(md, dir, "degrees_user_in.tsv", "user in-degree", "users");
    degree_line(md, dir, "degrees_content_out.tsv", "content out-degree", "content nodes");
    degree_line(md, dir, "degrees_content_in.tsv", "content in-degree", "content nodes");
    degree_line(md, dir, "commons_dist.tsv", "shared-content counts", "user pairs");
    md << "\n";

    md << "## Intervals\n\n";
    {
        Table t = read_table(dir / "intervals.tsv");
        if (!t.present)
            md << "No inter-event interval artifact found.\n";
        else
            md << "- " << describe_distribution(t, "gaps") << "\n";
    }
    md << "\n";

    md << "## Scaling\n\n";
    {
        Table t = read_table(dir / "scaling.tsv");
        if (!t.present) {
            md << "No fluctuation scaling artifact found.\n";
        } else {
            md << "- " << t.rows.size() << " owners";
            if (t.has("excluded")) md << " (" << t.get("excluded") << " excluded for zero spread)";
            md << ", bin width " << t.get("twin") << " min\n";
            if (t.has("mu"))
                md << "- sigma ~ " << nice(t.get("c")) << " * mean^" << nice(t.get("mu"))
                   << ", rms log residual " << nice(t.get("residual")) << "\n";
        }
    }
    md << "\n";

    md << "## Response\n\n";
    {
        Table t = read_table(dir / "response.tsv");
        if (!t.present) {
            md << "No response-time artifact found.\n";
        } else {
            md << "- " << describe_distribution(t, "response lags") << "\n";
            if (t.has("q")) {
                md << "- q-exponential fit: q = " << nice(t.get("q")) << ", t* = "
                   << nice(t.get("t_star")) << " min, tail slope " << nice(t.get("tail_slope"));
                if (t.get("fit_converged", "1") == "0") md << " (not converged)";
                md << "\n";
            }
        }
    }
    md << "\n";

    md << "## Spectrum\n\n";
    {
        Table t = read_table(dir / "spectrum.tsv");
        if (!t.present) {
            md << "No Laplacian spectrum artifact found.\n";
        } else {
            int ev = t.column_index("eigenvalue");
            std::size_t show = std::min<std::size_t>(t.rows.size(), 10);
            md << "- " << t.rows.size() << " eigenvalues";
            if (ev >= 0 && show > 0) {
                md << "; smallest: ";
                for (std::size_t i = 0; i < show; ++i) {
                    if (i) md << ", ";
                    md << nice(t.rows[i][static_cast<std::size_t>(ev)]);
                }
                if (show < t.rows.size()) md << ", ...";
            }
            md << "\n";
        }
        Table p = read_table(dir / "powerspec.tsv");
        if (!p.present) {
            md << "No activity periodogram artifact found.\n";
        } else {
            md << "- periodogram for " << p.get("owner") << ": " << p.rows.size()
               << " frequencies, bin width " << p.get("twin") << " min, total power "
               << nice(p.get("total_power")) << "\n";
        }
    }
    md << "\n";

    md << "## Communities\n\n";
    {
        Table t = read_table(dir / "labels.tsv");
        if (!t.present) {
            md << "No community labels artifact found.\n";
        } else {
            md << "- " << t.get("k") << " communities over " << t.rows.size() << " nodes";
            int lc = t.column_index("label");
            if (lc >= 0) {
                std::map<long, std::uint64_t> sizes;
                for (const auto& row : t.rows) {
                    if (static_cast<std::size_t>(lc) >= row.size()) continue;
                    try {
                        long lab = std::stol(row[static_cast<std::size_t>(lc)]);
                        if (lab > 0) ++sizes[lab];
                    } catch (const std::exception&) {
                    }
                }
                if (!sizes.empty()) {
                    md << "; sizes:";
                    for (const auto& [lab, cnt] : sizes) md << " " << lab << ":" << cnt;
                }
            }
            md << "\n";
            if (t.has("unclassified")) md << "- unclassified nodes: " << t.get("unclassified") << "\n";
            if (t.has("nmi"))
                md << "- agreement with reference labels: NMI " << nice(t.get("nmi")) << "\n";
        }
    }
    md << "\n";

    return md.str();
}

}  // namespace blognet
