#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jetflow/jets/jet.hpp"

namespace jetflow {

/// A finite group of jets, closed under composition and inverse at the
/// common order and containing the identity. Duplicates are removed.
class FiniteGroupAction {
 public:
  explicit FiniteGroupAction(std::vector<JetDiffeo> elements);
  /// Closure of the generators under composition (DomainError when the
  /// closure exceeds max_size elements).
  static FiniteGroupAction generated_by(std::span<const JetDiffeo> generators, std::size_t max_size = 4096);

  const std::vector<JetDiffeo>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t nvars() const noexcept { return elements_.front().nvars(); }
  unsigned order() const noexcept { return elements_.front().order(); }
  std::optional<std::size_t> index_of(const JetDiffeo& g) const;

 private:
  std::vector<JetDiffeo> elements_;
};

/// U = (1/|K|) sum_g dg^-1 o g. Satisfies U o h = dh o U for every h in K;
/// the identity is checked before returning.
JetDiffeo bochner_average(const FiniteGroupAction& k);

/// Smallest q <= order such that the q-jets of the given maps are pairwise
/// distinct. DomainError naming the first colliding pair when even the
/// stored jets coincide.
unsigned jet_determination(std::span<const JetDiffeo> maps);
unsigned jet_determination(const FiniteGroupAction& k);

}  // namespace jetflow
