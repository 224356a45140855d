#ifndef REJECTRON_FEATURE_VECTOR_HPP
#define REJECTRON_FEATURE_VECTOR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rejectron {

// one nonzero entry of a sparse vector; indices are 1-based as in LIBSVM files
struct Feature {
  std::uint32_t index = 0;
  double value = 0.0;

  friend bool operator==(const Feature&, const Feature&) = default;
};

// sparse vector with strictly increasing indices
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::vector<Feature> items);

  const std::vector<Feature>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t nnz() const { return items_.size(); }
  std::uint32_t max_index() const { return items_.empty() ? 0 : items_.back().index; }

  double norm_sq() const;
  double norm() const;

  // w must cover max_index(); throws std::out_of_range otherwise
  double dot_dense(const std::vector<double>& w) const;
  // w[index-1] += scale * value for every entry
  void add_scaled_to(std::vector<double>& w, double scale) const;

  double dot_sparse(const SparseVector& other) const;
  double squared_distance(const SparseVector& other) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Feature> items_;
};

}

#endif
