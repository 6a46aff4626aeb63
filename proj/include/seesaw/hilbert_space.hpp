#pragma once

#include "seesaw/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace seesaw {

struct Factor {
  std::string label;
  Index dim;

  bool operator==(const Factor&) const = default;
};

// Ordered tensor product of labelled factors.
//
// Composite indices are row-major over the factor list: the last factor
// varies fastest, so for factors (A, B) the flat index is i_A * dim_B + i_B.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<Factor> factors);

  static HilbertSpace single(std::string label, Index dim);

  Index dim() const { return dim_; }
  std::size_t factor_count() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }
  const Factor& factor(std::size_t i) const { return factors_.at(i); }

  bool contains(const std::string& label) const;
  // Throws SeesawError for an unknown label.
  std::size_t position(const std::string& label) const;
  Index factor_dim(const std::string& label) const { return factors_[position(label)].dim; }

  // Distance in flat index between neighbouring values of factor i.
  Index stride(std::size_t i) const { return strides_.at(i); }

  std::vector<Index> decompose(Index flat) const;
  Index compose(std::span<const Index> local) const;

  // Factors in `labels`, in this space's order.
  HilbertSpace subspace(const std::vector<std::string>& labels) const;

  bool operator==(const HilbertSpace& other) const { return factors_ == other.factors_; }

  std::string describe() const;

 private:
  std::vector<Factor> factors_;
  std::vector<Index> strides_;
  Index dim_ = 0;
};

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* where);

}  // namespace seesaw
