#include "rejectron/query.hpp"

#include <cmath>
#include <stdexcept>

namespace rejectron {

bool dral_query(double f_value, RejectionWidth rho) {
  if (!std::isfinite(f_value)) throw std::invalid_argument("prediction value must be finite");
  const double a = std::fabs(f_value);
  return a >= rho.value() - 1.0 && a <= rho.value() + 1.0;
}

double dsal_query_probability(double f_value, RejectionWidth rho, double gamma) {
  if (!std::isfinite(f_value)) throw std::invalid_argument("prediction value must be finite");
  const double s = sigmoid(std::fabs(f_value) - rho.value(), gamma);
  return 4.0 * s * (1.0 - s);
}

bool sample_query(double p, SeededRng& rng) { return rng.bernoulli(p); }

}
