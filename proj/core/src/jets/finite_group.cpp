#include "jetflow/jets/finite_group.hpp"

#include <utility>

#include "jetflow/errors.hpp"

namespace jetflow {

namespace {

bool contains(const std::vector<JetDiffeo>& set, const JetDiffeo& g) {
  for (const auto& e : set) {
    if (e == g) return true;
  }
  return false;
}

}  // namespace

FiniteGroupAction::FiniteGroupAction(std::vector<JetDiffeo> elements) {
  if (elements.empty()) throw DomainError("FiniteGroupAction: empty element list");
  const std::size_t n = elements.front().nvars();
  const unsigned p = elements.front().order();
  for (auto& g : elements) {
    if (g.nvars() != n || g.order() != p) {
      throw DomainError("FiniteGroupAction: elements differ in dimension or order");
    }
    if (!contains(elements_, g)) elements_.push_back(std::move(g));
  }
  if (!contains(elements_, JetDiffeo::identity(n, p))) {
    throw DomainError("FiniteGroupAction: element list is not a group (identity missing)");
  }
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    if (!contains(elements_, diffeo_inverse(elements_[a]))) {
      throw DomainError("FiniteGroupAction: element list is not a group (inverse of element " +
                        std::to_string(a + 1) + " missing)");
    }
    for (std::size_t b = 0; b < elements_.size(); ++b) {
      if (!contains(elements_, diffeo_compose(elements_[a], elements_[b]))) {
        throw DomainError("FiniteGroupAction: element list is not a group (product of elements " +
                          std::to_string(a + 1) + " and " + std::to_string(b + 1) + " missing)");
      }
    }
  }
}

FiniteGroupAction FiniteGroupAction::generated_by(std::span<const JetDiffeo> generators, std::size_t max_size) {
  if (generators.empty()) throw DomainError("FiniteGroupAction::generated_by: no generators");
  std::vector<JetDiffeo> elems{JetDiffeo::identity(generators.front().nvars(), generators.front().order())};
  // Breadth-first closure under right multiplication by generators; in a
  // finite group this also yields inverses.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : generators) {
      JetDiffeo h = diffeo_compose(elems[i], g);
      if (!contains(elems, h)) {
        if (elems.size() >= max_size) {
          throw DomainError("FiniteGroupAction::generated_by: closure exceeds " + std::to_string(max_size) +
                            " elements");
        }
        elems.push_back(std::move(h));
      }
    }
  }
  return FiniteGroupAction(std::move(elems));
}

std::optional<std::size_t> FiniteGroupAction::index_of(const JetDiffeo& g) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == g) return i;
  }
  return std::nullopt;
}

JetDiffeo bochner_average(const FiniteGroupAction& k) {
  const std::size_t n = k.nvars();
  const unsigned p = k.order();
  std::vector<TruncatedSeries> sum(n, TruncatedSeries(n, p));
  for (const auto& g : k.elements()) {
    const JetDiffeo term = diffeo_compose(diffeo_inverse(g.linear_diffeo()), g);
    for (std::size_t i = 0; i < n; ++i) sum[i] += term.component(i);
  }
  const GaussianRational scale(1, 0, static_cast<long>(k.size()));
  for (auto& s : sum) s *= scale;
  JetDiffeo u(std::move(sum));
  for (const auto& h : k.elements()) {
    if (diffeo_compose(u, h) != diffeo_compose(h.linear_diffeo(), u)) {
      throw InternalError("bochner_average: averaged map does not conjugate the action to its linear part");
    }
  }
  return u;
}

unsigned jet_determination(std::span<const JetDiffeo> maps) {
  if (maps.empty()) return 0;
  const unsigned p = maps.front().order();
  for (unsigned q = 0; q <= p; ++q) {
    std::vector<JetDiffeo> jets;
    for (const auto& g : maps) jets.push_back(g.truncated(q));
    bool distinct = true;
    for (std::size_t a = 0; a < jets.size() && distinct; ++a) {
      for (std::size_t b = a + 1; b < jets.size(); ++b) {
        if (jets[a] == jets[b]) {
          distinct = false;
          break;
        }
      }
    }
    if (distinct) return q;
  }
  for (std::size_t a = 0; a < maps.size(); ++a) {
    for (std::size_t b = a + 1; b < maps.size(); ++b) {
      if (maps[a] == maps[b]) {
        throw DomainError("jet_determination: elements " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                          " coincide at the stored order " + std::to_string(p) + "; action not faithful");
      }
    }
  }
  throw InternalError("jet_determination: inconsistent comparison");
}

unsigned jet_determination(const FiniteGroupAction& k) { return jet_determination(k.elements()); }

}  // namespace jetflow
