#include "jetflow/intersect/intersect.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "jetflow/errors.hpp"
#include "jetflow/series/multi_index.hpp"

namespace jetflow {

namespace {

// Sparse vector sorted by index; no zero entries.
using SparseVec = std::vector<std::pair<std::size_t, GaussianRational>>;

// Incremental echelon basis over Q(i) with monic pivot rows. The pivot of a
// vector is its lowest index, so after elimination the rows whose pivot has
// degree <= m span the truncation of the whole span to degree m.
class LowestIndexEchelon {
 public:
  explicit LowestIndexEchelon(std::size_t dim) : pivots_(dim) {}

  std::size_t rank() const noexcept { return rank_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  bool has_pivot(std::size_t i) const { return !pivots_[i].empty(); }

  void insert(SparseVec v) {
    while (!v.empty()) {
      const std::size_t lead = v.front().first;
      if (pivots_[lead].empty()) {
        const GaussianRational inv = v.front().second.inverse();
        for (auto& [idx, c] : v) c *= inv;
        pivots_[lead] = std::move(v);
        ++rank_;
        return;
      }
      v = eliminate(v, pivots_[lead]);
    }
  }

 private:
  // v - b r, where b is the leading coefficient of v and r is monic.
  static SparseVec eliminate(const SparseVec& v, const SparseVec& r) {
    const GaussianRational& b = v.front().second;
    SparseVec out;
    out.reserve(v.size() + r.size());
    std::size_t i = 1;
    std::size_t j = 1;
    while (i < v.size() || j < r.size()) {
      const std::size_t vi = i < v.size() ? v[i].first : SIZE_MAX;
      const std::size_t rj = j < r.size() ? r[j].first : SIZE_MAX;
      if (vi < rj) {
        out.push_back(v[i++]);
        continue;
      }
      GaussianRational c = -(b * r[j].second);
      if (vi == rj) c += v[i++].second;
      if (!c.is_zero()) out.emplace_back(rj, std::move(c));
      ++j;
    }
    return out;
  }

  std::vector<SparseVec> pivots_;
  std::size_t rank_ = 0;
};

// Runs the elimination of the columns x^gamma f_i truncated at m.
LowestIndexEchelon eliminate_ideal(const IdealGens& ideal, unsigned m) {
  const std::size_t n = ideal.nvars();
  const auto basis = monomial_basis(n, m);
  LowestIndexEchelon ech(basis.size());
  MultiIndex sum(n);
  for (const auto& f : ideal.gens()) {
    const auto val = f.valuation();
    if (!val || *val > m) continue;
    std::vector<std::pair<MultiIndex, GaussianRational>> terms;
    for (const auto& [rank, c] : f.terms()) {
      if (rank >= basis.size()) break;
      terms.push_back({basis[rank], c});
    }
    for (const auto& gamma : basis) {
      if (ech.rank() == ech.dim()) return ech;
      const unsigned dg = degree(gamma);
      if (dg + *val > m) break;
      SparseVec col;
      for (const auto& [alpha, z] : terms) {
        if (degree(alpha) + dg > m) break;
        for (std::size_t k = 0; k < n; ++k) sum[k] = alpha[k] + gamma[k];
        // Multiplying by x^gamma is monotone in deglex, so col stays sorted.
        col.emplace_back(deglex_rank(sum), z);
      }
      ech.insert(std::move(col));
    }
  }
  return ech;
}

void check_order(const IdealGens& ideal, unsigned m, const char* what) {
  if (m > ideal.order()) {
    throw DomainError(std::string(what) + ": generators are known to order " + std::to_string(ideal.order()) +
                      ", need " + std::to_string(m));
  }
}

template <class Fn>
void run_indexed(std::size_t count, bool parallel, const Fn& fn) {
  if (!parallel || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

IdealGens::IdealGens(std::size_t nvars, unsigned order, std::vector<TruncatedSeries> gens)
    : nvars_(nvars), order_(order) {
  for (auto& g : gens) {
    if (g.nvars() != nvars) throw DomainError("IdealGens: generator has the wrong number of variables");
    if (g.order() < order) throw DomainError("IdealGens: generator is known to a lower order than the ideal");
    gens_.push_back(g.order() == order ? std::move(g) : g.truncated(order));
  }
}

IdealGens::IdealGens(std::vector<TruncatedSeries> gens) : nvars_(0), order_(0) {
  if (gens.empty()) throw DomainError("IdealGens: empty generator list needs explicit nvars and order");
  nvars_ = gens.front().nvars();
  order_ = gens.front().order();
  for (const auto& g : gens) order_ = std::min(order_, g.order());
  *this = IdealGens(nvars_, order_, std::move(gens));
}

IdealGens IdealGens::operator+(const IdealGens& other) const {
  if (nvars_ != other.nvars_) throw DomainError("IdealGens: sum of ideals in different rings");
  const unsigned q = std::min(order_, other.order_);
  std::vector<TruncatedSeries> all = gens_;
  all.insert(all.end(), other.gens_.begin(), other.gens_.end());
  return IdealGens(nvars_, q, std::move(all));
}

std::string IdealGens::to_string(std::span<const std::string> vars) const {
  std::string out = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i > 0) out += ", ";
    out += gens_[i].to_string(vars);
  }
  return out + ")";
}

IdealGens parse_ideal(std::string_view text, std::span<const std::string> vars, unsigned order) {
  std::vector<TruncatedSeries> gens;
  for (const auto& part : split_components(text)) gens.push_back(parse_series(part, vars, order));
  return IdealGens(vars.size(), order, std::move(gens));
}

std::string MultResult::to_string() const {
  if (kind == Kind::Finite) return "finite:" + std::to_string(value) + "@" + std::to_string(stabilized_at);
  return "exceeded:" + std::to_string(cap);
}

unsigned jet_colength(const IdealGens& ideal, unsigned m) {
  check_order(ideal, m, "jet_colength");
  const auto ech = eliminate_ideal(ideal, m);
  return static_cast<unsigned>(ech.dim() - ech.rank());
}

std::vector<unsigned> colength_profile(const IdealGens& ideal, unsigned cap) {
  check_order(ideal, cap, "colength_profile");
  const auto ech = eliminate_ideal(ideal, cap);
  std::vector<unsigned> out;
  std::size_t idx = 0;
  std::size_t rank = 0;
  for (unsigned m = 0; m <= cap; ++m) {
    const std::size_t dm = monomial_count(ideal.nvars(), m);
    for (; idx < dm; ++idx) rank += ech.has_pivot(idx) ? 1 : 0;
    out.push_back(static_cast<unsigned>(dm - rank));
  }
  return out;
}

MultResult ideal_multiplicity(const IdealGens& ideal, unsigned cap) {
  check_order(ideal, cap, "multiplicity");
  // Proper ideals usually stabilize at small m, so each order is eliminated
  // on its own instead of reading a single profile at the cap.
  for (unsigned m = 0; m <= cap; ++m) {
    const unsigned c = jet_colength(ideal, m);
    if (c <= m) return MultResult::finite(c, m, cap);
  }
  return MultResult::exceeded(cap);
}

MultResult multiplicity(const IdealGens& v, const IdealGens& w, unsigned cap) {
  check_order(v, cap, "multiplicity");
  check_order(w, cap, "multiplicity");
  return ideal_multiplicity(v + w, cap);
}

IdealGens pullback(const JetDiffeo& f, const IdealGens& ideal) {
  if (f.nvars() != ideal.nvars()) throw DomainError("pullback: dimension mismatch");
  const JetDiffeo inv = diffeo_inverse(f);
  const unsigned q = std::min(f.order(), ideal.order());
  std::vector<TruncatedSeries> gens;
  for (const auto& g : ideal.gens()) gens.push_back(ts_compose(g, inv.components()));
  return IdealGens(ideal.nvars(), q, std::move(gens));
}

std::vector<std::pair<unsigned, MultResult>> mu_sequence(const JetDiffeo& f, const IdealGens& v, const IdealGens& w,
                                                         unsigned kmax, unsigned cap, bool parallel) {
  if (f.nvars() != v.nvars() || f.nvars() != w.nvars()) throw DomainError("mu_sequence: dimension mismatch");
  if (f.order() < cap) throw DomainError("mu_sequence: diffeomorphism order is below the cap");
  check_order(v, cap, "mu_sequence");
  check_order(w, cap, "mu_sequence");
  // v o F^-k, built by one composition per step.
  const JetDiffeo inv = diffeo_inverse(f);
  std::vector<IdealGens> moved{v};
  for (unsigned k = 1; k <= kmax; ++k) {
    std::vector<TruncatedSeries> gens;
    for (const auto& g : moved.back().gens()) gens.push_back(ts_compose(g, inv.components()));
    moved.emplace_back(v.nvars(), std::min(v.order(), f.order()), std::move(gens));
  }
  std::vector<std::pair<unsigned, MultResult>> out(kmax + 1);
  run_indexed(out.size(), parallel, [&](std::size_t k) {
    out[k] = {static_cast<unsigned>(k), multiplicity(moved[k], w, cap)};
  });
  return out;
}

MultResult fixed_point_index(const JetDiffeo& f, unsigned k, unsigned cap) {
  if (f.order() < cap) throw DomainError("fixed_point_index: diffeomorphism order is below the cap");
  const JetDiffeo g = diffeo_power(f, static_cast<long>(k));
  std::vector<TruncatedSeries> gens;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    gens.push_back(g.component(i) - TruncatedSeries::variable(f.nvars(), f.order(), i));
  }
  return ideal_multiplicity(IdealGens(f.nvars(), f.order(), std::move(gens)), cap);
}

std::vector<std::pair<unsigned, MultResult>> index_sequence(const JetDiffeo& f, unsigned kmax, unsigned cap,
                                                            bool parallel) {
  std::vector<std::pair<unsigned, MultResult>> out(kmax);
  run_indexed(out.size(), parallel, [&](std::size_t i) {
    const auto k = static_cast<unsigned>(i + 1);
    out[i] = {k, fixed_point_index(f, k, cap)};
  });
  return out;
}

}  // namespace jetflow
