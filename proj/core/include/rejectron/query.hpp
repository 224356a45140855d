#ifndef REJECTRON_QUERY_HPP
#define REJECTRON_QUERY_HPP

#include "rejectron/losses.hpp"
#include "rejectron/rng.hpp"

namespace rejectron {

// deterministic band query: true iff rho - 1 <= |f| <= rho + 1
bool dral_query(double f_value, RejectionWidth rho);

// sampling probability 4 s (1 - s) with s = sigmoid(|f| - rho, gamma);
// peaks at exactly 1 when |f| == rho
double dsal_query_probability(double f_value, RejectionWidth rho, double gamma);

// Bernoulli draw; consumes exactly one rng draw for every call
bool sample_query(double p, SeededRng& rng);

}

#endif
