#include "seesaw/hilbert_space.hpp"

#include <algorithm>
#include <sstream>

namespace seesaw {

HilbertSpace::HilbertSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw SeesawError("HilbertSpace: at least one factor required");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].dim < 1) {
      throw SeesawError("HilbertSpace: factor '" + factors_[i].label + "' has dimension < 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (factors_[j].label == factors_[i].label) {
        throw SeesawError("HilbertSpace: duplicate factor label '" + factors_[i].label + "'");
      }
    }
  }
  strides_.assign(factors_.size(), 1);
  dim_ = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    strides_[i] = dim_;
    dim_ *= factors_[i].dim;
  }
}

HilbertSpace HilbertSpace::single(std::string label, Index dim) {
  return HilbertSpace({Factor{std::move(label), dim}});
}

bool HilbertSpace::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t HilbertSpace::position(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  throw SeesawError("unknown factor label '" + label + "' in space " + describe());
}

std::vector<Index> HilbertSpace::decompose(Index flat) const {
  std::vector<Index> local(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    local[i] = (flat / strides_[i]) % factors_[i].dim;
  }
  return local;
}

Index HilbertSpace::compose(std::span<const Index> local) const {
  Index flat = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) flat += local[i] * strides_[i];
  return flat;
}

HilbertSpace HilbertSpace::subspace(const std::vector<std::string>& labels) const {
  if (labels.empty()) throw SeesawError("subspace: empty label list");
  std::vector<bool> keep(factors_.size(), false);
  for (const auto& l : labels) keep[position(l)] = true;
  std::vector<Factor> kept;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (keep[i]) kept.push_back(factors_[i]);
  }
  return HilbertSpace(std::move(kept));
}

std::string HilbertSpace::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " x ";
    os << factors_[i].label << "(" << factors_[i].dim << ")";
  }
  return os.str();
}

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* where) {
  if (!(a == b)) {
    throw SeesawError(std::string(where) + ": space mismatch " + a.describe() + " vs " +
                      b.describe());
  }
}

}  // namespace seesaw
