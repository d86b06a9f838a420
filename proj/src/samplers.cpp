#include "blognet/samplers.hpp"

#include <cmath>

namespace blognet {

double sample_exponential(Rng& rng, double rate) {
    if (!(rate > 0.0)) throw Error("exponential rate must be positive");
    return -std::log(rng.uniform01_open_low()) / rate;
}

double sample_pareto(Rng& rng, double alpha, double x_min) {
    if (!(alpha > 1.0)) throw Error("pareto exponent must exceed 1");
    if (!(x_min > 0.0)) throw Error("pareto x_min must be positive");
    return x_min * std::pow(rng.uniform01_open_low(), -1.0 / (alpha - 1.0));
}

double sample_qexp(Rng& rng, double q, double t_star) {
    if (!(t_star > 0.0)) throw Error("q-exponential t_star must be positive");
    if (!(q >= 1.0) || !(q < 2.0)) throw Error("q-exponential shape must satisfy 1 <= q < 2");
    const double u = rng.uniform01_open_low();
    if (q - 1.0 < 1e-12) return -t_star * std::log(u);
    // CDF: F(t) = 1 - (1 + (q-1) t/t*)^(-(2-q)/(q-1)); solve F(t) = 1-u.
    return t_star / (q - 1.0) * (std::pow(u, -(q - 1.0) / (2.0 - q)) - 1.0);
}

}  // namespace blognet
