#include "blognet/tempstats.hpp"

#include <algorithm>
#include <cmath>

#include "blognet/kernels.hpp"

namespace blognet {

std::vector<double> interevent_samples(const EventLog& log) {
    std::vector<double> gaps;
    for (const auto& user : log.user_ids()) {
        const auto& idx = log.of_user(user);
        for (std::size_t k = 1; k < idx.size(); ++k)
            gaps.push_back(
                static_cast<double>(log.events()[idx[k]].ts - log.events()[idx[k - 1]].ts));
    }
    if (gaps.empty()) throw Error("no user has two or more events");
    return gaps;
}

Distribution interevent_distribution(const EventLog& log) {
    BinSpec spec;
    spec.integer_edges = true;
    return make_distribution(interevent_samples(log), spec);
}

TimeSeries activity_series(const EventLog& log, const std::string& owner, std::int64_t t_win) {
    if (t_win <= 0) throw Error("activity bin width must be positive");

    std::vector<std::int64_t> times;
    const EventRecord* post = log.find(owner);
    if (post != nullptr && post->kind == EventKind::Post) {
        // a post's activity is the comments it receives, measured from posting
        for (std::size_t i : log.of_post(owner)) {
            const EventRecord& e = log.events()[i];
            if (e.kind == EventKind::Comment) times.push_back(e.ts);
        }
        TimeSeries ts;
        ts.owner = owner;
        ts.t_win = t_win;
        ts.start = post->ts;
        const std::int64_t last = times.empty() ? post->ts : times.back();
        if (!times.empty() && times.front() < ts.start)
            throw Error("post '" + owner + "' has a comment before its creation");
        ts.counts.assign(static_cast<std::size_t>((last - ts.start) / t_win) + 1, 0);
        for (std::int64_t t : times) ++ts.counts[static_cast<std::size_t>((t - ts.start) / t_win)];
        return ts;
    }

    const auto& idx = log.of_user(owner);
    if (idx.empty()) throw Error("unknown owner id '" + owner + "'");
    for (std::size_t i : idx) times.push_back(log.events()[i].ts);

    TimeSeries ts;
    ts.owner = owner;
    ts.t_win = t_win;
    ts.start = times.front();
    ts.counts.assign(static_cast<std::size_t>((times.back() - ts.start) / t_win) + 1, 0);
    for (std::int64_t t : times) ++ts.counts[static_cast<std::size_t>((t - ts.start) / t_win)];
    return ts;
}

ScalingResult fluctuation_scaling(const std::vector<TimeSeries>& series) {
    ScalingResult res;
    std::vector<double> log_mean, log_sigma;
    std::vector<double> buf;
    for (const auto& s : series) {
        buf.assign(s.counts.begin(), s.counts.end());
        const auto mv = kernels::mean_var(buf.data(), buf.size());
        const double sigma = std::sqrt(mv.var);
        if (sigma == 0.0) {
            res.excluded.push_back(s.owner);
            continue;
        }
        res.points.push_back({s.owner, mv.mean, sigma});
        log_mean.push_back(std::log(mv.mean));
        log_sigma.push_back(std::log(sigma));
    }
    if (res.points.size() < 10)
        throw Error("fluctuation scaling needs at least 10 series with nonzero variance");

    const LineFit fit = fit_line(log_mean, log_sigma);
    res.mu = fit.slope;
    res.c = std::exp(fit.intercept);
    res.residual = fit.residual;
    return res;
}

std::vector<SpectrumPoint> power_spectrum(const TimeSeries& ts) {
    const std::size_t n = ts.counts.size();
    if (n < 16) throw Error("power spectrum needs at least 16 bins");

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(ts.counts[i]);
    const double mean = kernels::sum(x.data(), n) / static_cast<double>(n);
    for (double& v : x) v -= mean;

    // cos/sin looked up at (k*t) mod n keeps angles exact multiples of 2*pi/n
    std::vector<double> cos_tab(n), sin_tab(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double angle = 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(n);
        cos_tab[r] = std::cos(angle);
        sin_tab[r] = std::sin(angle);
    }

    std::vector<SpectrumPoint> spec;
    const std::size_t half = n / 2;
    spec.reserve(half);
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (std::size_t k = 1; k <= half; ++k) {
        double re = 0.0, im = 0.0;
        std::size_t r = 0;
        for (std::size_t t = 0; t < n; ++t) {
            re += x[t] * cos_tab[r];
            im -= x[t] * sin_tab[r];
            r += k;
            if (r >= n) r -= n;
        }
        const bool nyquist = (n % 2 == 0) && k == half;
        const double power = (nyquist ? 1.0 : 2.0) * (re * re + im * im) / n2;
        spec.push_back({static_cast<double>(k) / static_cast<double>(n), power});
    }
    return spec;
}

std::vector<double> response_time_samples(const EventLog& log) {
    std::vector<double> samples;
    for (const auto& e : log.events()) {
        if (e.kind != EventKind::Comment) continue;
        const EventRecord* root = log.find(e.post);
        if (root == nullptr || root->kind != EventKind::Post)
            throw Error("comment '" + e.event_id + "' has an unresolved post");
        samples.push_back(static_cast<double>(e.ts - root->ts));
    }
    if (samples.empty()) throw Error("log contains no comments");
    return samples;
}

}  // namespace blognet
