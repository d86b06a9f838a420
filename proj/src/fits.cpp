#include "blognet/fits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace blognet {

namespace {

constexpr double kPenalty = 1e100;

struct NmResult {
    std::vector<double> x;
    double f = kPenalty;
    bool converged = false;
};

// Standard Nelder-Mead downhill simplex (reflect 1, expand 2, contract 0.5,
// shrink 0.5) with convergence on the spread of simplex function values.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, double step, std::size_t max_iter,
                     double ftol) {
    const std::size_t d = x0.size();
    std::vector<std::vector<double>> pts(d + 1, x0);
    for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += step;
    std::vector<double> fv(d + 1);
    for (std::size_t i = 0; i <= d; ++i) fv[i] = f(pts[i]);

    std::vector<std::size_t> order(d + 1);
    NmResult res;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i <= d; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[d], second = order[d - 1];

        if (std::abs(fv[worst] - fv[best]) <= ftol * (std::abs(fv[best]) + ftol)) {
            res.x = pts[best];
            res.f = fv[best];
            res.converged = true;
            return res;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < d; ++k) centroid[k] += pts[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        const auto blend = [&](double t) {
            std::vector<double> p(d);
            for (std::size_t k = 0; k < d; ++k)
                p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
            return p;
        };

        auto refl = blend(-1.0);
        const double f_refl = f(refl);
        if (f_refl < fv[best]) {
            auto expd = blend(-2.0);
            const double f_expd = f(expd);
            if (f_expd < f_refl) {
                pts[worst] = std::move(expd);
                fv[worst] = f_expd;
            } else {
                pts[worst] = std::move(refl);
                fv[worst] = f_refl;
            }
        } else if (f_refl < fv[second]) {
            pts[worst] = std::move(refl);
            fv[worst] = f_refl;
        } else {
            auto contr = blend(f_refl < fv[worst] ? -0.5 : 0.5);
            const double f_contr = f(contr);
            if (f_contr < std::min(f_refl, fv[worst])) {
                pts[worst] = std::move(contr);
                fv[worst] = f_contr;
            } else {
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < d; ++k)
                        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.x = pts[best];
    res.f = fv[best];
    return res;
}

double log_qexp_density(double q, double t_star, double log_c, double x) {
    if (std::abs(q - 1.0) < 1e-8) return log_c - x / t_star;
    const double base = 1.0 + (q - 1.0) * x / t_star;
    if (base <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return log_c + std::log(base) / (1.0 - q);
}

}  // namespace

double qexp_eval(const QExpFit& params, double dt) {
    if (!(dt >= 0.0)) throw Error("q-exponential argument must be >= 0");
    if (!(params.t_star > 0.0)) throw Error("q-exponential t_star must be positive");
    if (std::abs(params.q - 1.0) < 1e-8)
        return params.prefactor * std::exp(-dt / params.t_star);
    const double base = 1.0 - (1.0 - params.q) * dt / params.t_star;
    if (base <= 0.0) throw Error("argument outside q-exponential support");
    return params.prefactor * std::pow(base, 1.0 / (1.0 - params.q));
}

QExpFit fit_qexp(const std::vector<double>& samples, BinSpec spec) {
    if (samples.size() < 1000) throw Error("q-exponential fit needs at least 1000 samples");
    const Distribution d = make_distribution(samples, spec);

    std::vector<double> xs, ys;
    for (const auto& b : d.bins) {
        if (b.count < 3) continue;  // too noisy for a log fit
        xs.push_back(b.center());
        ys.push_back(std::log(b.pdf));
    }
    if (xs.size() < 5) throw Error("q-exponential fit needs at least 5 populated bins");

    const auto objective = [&xs, &ys](const std::vector<double>& p) {
        const double q = p[0], t_star = std::exp(p[1]), log_c = p[2];
        if (q < 0.2 || q > 1.999 || !(t_star > 0.0) || !std::isfinite(t_star)) return kPenalty;
        double acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double m = log_qexp_density(q, t_star, log_c, xs[i]);
            if (!std::isfinite(m)) return kPenalty;
            const double r = ys[i] - m;
            acc += r * r;
        }
        return acc;
    };

    const double t0 = std::max(d.quantile(0.5), 1e-6);
    const double c0 = ys.front();
    NmResult best;
    bool any_converged = false;
    for (double q0 : {1.05, 1.3, 1.6, 1.9}) {
        const auto r = nelder_mead(objective, {q0, std::log(t0), c0}, 0.4, 4000, 1e-13);
        if (r.f < best.f) best = r;
        any_converged = any_converged || r.converged;
    }

    QExpFit fit;
    fit.q = best.x[0];
    fit.t_star = std::exp(best.x[1]);
    fit.prefactor = std::exp(best.x[2]);
    fit.residual = std::sqrt(best.f / static_cast<double>(xs.size()));
    if (!any_converged || best.f >= kPenalty)
        throw FitNotConverged("q-exponential fit did not converge", fit);
    return fit;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error("line fit needs >= 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw Error("line fit is degenerate: all x equal");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        rss += r * r;
    }
    f.residual = std::sqrt(rss / n);
    return f;
}

PowerLawFit fit_powerlaw(const Distribution& d, double x_min, double x_max, Column column) {
    if (std::isnan(x_min)) x_min = d.quantile(0.5);
    if (std::isnan(x_max)) x_max = d.quantile(0.99);
    if (!(x_min < x_max)) throw Error("power-law fit range is degenerate");

    std::vector<double> xs, ys;
    for (const auto& b : d.bins) {
        const double x = column == Column::Pdf ? b.center() : b.lo;
        const double y = column == Column::Pdf ? b.pdf : b.ccdf;
        if (b.count == 0 || x <= 0.0 || y <= 0.0) continue;
        if (x < x_min || x > x_max) continue;
        xs.push_back(std::log(x));
        ys.push_back(std::log(y));
    }
    if (xs.size() < 5) throw Error("power-law fit needs at least 5 populated bins in range");

    const LineFit line = fit_line(xs, ys);
    PowerLawFit fit;
    fit.exponent = -line.slope;
    fit.x_min = x_min;
    fit.x_max = x_max;
    fit.residual = line.residual;
    fit.bins_used = xs.size();
    fit.integer_bins = d.integer_edges;
    return fit;
}

PowerLawFit fit_powerlaw(const Distribution& d) {
    return fit_powerlaw(d, std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN());
}

}  // namespace blognet
