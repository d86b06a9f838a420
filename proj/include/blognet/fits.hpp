#pragma once

#include <cstddef>
#include <vector>

#include "blognet/distribution.hpp"
#include "blognet/util.hpp"

namespace blognet {

// q-exponential density parameters: p(dt) = C_pref * (1 - (1-q) dt/t_star)^(1/(1-q)).
// The implied power-law tail slope for q > 1 is 1/(q-1).
struct QExpFit {
    double q = 1.0;
    double t_star = 1.0;
    double prefactor = 1.0;
    double residual = 0.0;

    double tail_slope() const { return 1.0 / (q - 1.0); }
};

struct PowerLawFit {
    double exponent = 0.0;  // positive decay exponent: y ~ x^-exponent
    double x_min = 0.0;
    double x_max = 0.0;
    double residual = 0.0;  // root-mean-square log residual
    std::size_t bins_used = 0;
    bool integer_bins = false;
};

class FitNotConverged : public Error {
  public:
    FitNotConverged(const std::string& msg, QExpFit best) : Error(msg), best_(best) {}
    const QExpFit& best() const { return best_; }

  private:
    QExpFit best_;
};

// Evaluates the q-exponential density. dt must be >= 0 and inside the
// distribution's support (for q < 1 the support is bounded); q near 1 takes
// the exponential limit C*exp(-dt/t_star).
double qexp_eval(const QExpFit& params, double dt);

// Fits (q, t_star, prefactor) by minimizing squared log-density residuals on
// the log-binned sample histogram. Needs >= 1000 samples.
QExpFit fit_qexp(const std::vector<double>& samples, BinSpec spec = {});

enum class Column { Pdf, Ccdf };

// Least-squares slope on the log-log binned curve over [x_min, x_max];
// NaN range bounds select the default window [median, 99th percentile].
// Needs >= 5 nonempty bins in range. Returns the positive decay exponent.
PowerLawFit fit_powerlaw(const Distribution& d, double x_min, double x_max,
                         Column column = Column::Pdf);
PowerLawFit fit_powerlaw(const Distribution& d);

// Simple straight-line least squares, exposed for reuse by scaling fits.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS residual
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace blognet
