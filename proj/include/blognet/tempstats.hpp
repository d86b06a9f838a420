#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blognet/distribution.hpp"
#include "blognet/events.hpp"
#include "blognet/fits.hpp"

namespace blognet {

struct TimeSeries {
    std::string owner;
    std::int64_t t_win = 1;  // bin width, minutes
    std::int64_t start = 0;  // timestamp where bin 0 begins
    std::vector<std::uint64_t> counts;
};

// default activity bin widths: one day for users, one hour for posts
inline constexpr std::int64_t kUserBinMinutes = 1440;
inline constexpr std::int64_t kPostBinMinutes = 60;

struct ScalingPoint {
    std::string owner;
    double mean = 0.0;
    double sigma = 0.0;  // population standard deviation
};

struct ScalingResult {
    std::vector<ScalingPoint> points;    // one per usable series
    std::vector<std::string> excluded;   // owners dropped for sigma = 0
    double mu = 0.0;                     // sigma ~ c * mean^mu
    double c = 0.0;
    double residual = 0.0;
};

struct SpectrumPoint {
    double frequency = 0.0;  // cycles per bin
    double power = 0.0;
};

// Pooled gaps between successive events of the same user, in minutes.
std::vector<double> interevent_samples(const EventLog& log);
Distribution interevent_distribution(const EventLog& log);

// Counts per T_WIN bin. A user's series counts their events from first to
// last; a post's series counts comments received (nested included), anchored
// at the posting time.
TimeSeries activity_series(const EventLog& log, const std::string& owner, std::int64_t t_win);

ScalingResult fluctuation_scaling(const std::vector<TimeSeries>& series);

// One-sided periodogram of the mean-subtracted counts; frequencies k/N up to
// Nyquist; total power equals the series' population variance.
std::vector<SpectrumPoint> power_spectrum(const TimeSeries& ts);

// Minutes between each comment and its root post's creation.
std::vector<double> response_time_samples(const EventLog& log);

}  // namespace blognet
