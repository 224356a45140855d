#include "rejectron/feature_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace rejectron {

SparseVector::SparseVector(std::vector<Feature> items) : items_(std::move(items)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].index == 0) throw std::invalid_argument("feature indices are 1-based");
    if (i > 0 && items_[i].index <= items_[i - 1].index)
      throw std::invalid_argument("feature indices must be strictly increasing");
  }
}

double SparseVector::norm_sq() const {
  double s = 0.0;
  for (const auto& f : items_) s += f.value * f.value;
  return s;
}

double SparseVector::norm() const { return std::sqrt(norm_sq()); }

double SparseVector::dot_dense(const std::vector<double>& w) const {
  if (max_index() > w.size()) throw std::out_of_range("feature index exceeds model dimension");
  double s = 0.0;
  for (const auto& f : items_) s += w[f.index - 1] * f.value;
  return s;
}

void SparseVector::add_scaled_to(std::vector<double>& w, double scale) const {
  if (max_index() > w.size()) throw std::out_of_range("feature index exceeds model dimension");
  for (const auto& f : items_) w[f.index - 1] += scale * f.value;
}

double SparseVector::dot_sparse(const SparseVector& other) const {
  double s = 0.0;
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (a->index == b->index) {
      s += a->value * b->value;
      ++a;
      ++b;
    } else if (a->index < b->index) {
      ++a;
    } else {
      ++b;
    }
  }
  return s;
}

double SparseVector::squared_distance(const SparseVector& other) const {
  double s = 0.0;
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() || b != other.items_.end()) {
    if (b == other.items_.end() || (a != items_.end() && a->index < b->index)) {
      s += a->value * a->value;
      ++a;
    } else if (a == items_.end() || b->index < a->index) {
      s += b->value * b->value;
      ++b;
    } else {
      const double d = a->value - b->value;
      s += d * d;
      ++a;
      ++b;
    }
  }
  return s;
}

}
