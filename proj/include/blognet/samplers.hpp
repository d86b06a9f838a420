#pragma once

#include "blognet/util.hpp"

namespace blognet {

// Draws from an exponential distribution with the given rate (events per
// unit time); mean gap is 1/rate.
double sample_exponential(Rng& rng, double rate);

// Draws from a Pareto distribution whose density decays as x^-alpha above
// x_min. The complementary CDF then decays as x^-(alpha-1). Requires
// alpha > 1 and x_min > 0.
double sample_pareto(Rng& rng, double alpha, double x_min);

// Draws from the q-exponential distribution
//   p(t) = C * (1 + (q-1) t / t_star)^(-1/(q-1)),   t >= 0,
// via the closed-form inverse CDF. q = 1 reduces to an exponential with
// mean t_star. Requires 1 <= q < 2 (mean diverges at q = 1.5 but the
// density is still normalizable up to q = 2).
double sample_qexp(Rng& rng, double q, double t_star);

}  // namespace blognet
