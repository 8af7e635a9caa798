#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetflow/intersect/intersect.hpp"
#include "jetflow/jets/finite_group.hpp"
#include "jetflow/jets/jet.hpp"
#include "jetflow/series/series.hpp"

namespace jetflow::cli {

enum class DefKind { Series, Diffeo, VectorField, Ideal, Group };

struct Definition {
  DefKind kind;
  std::string text;
  std::size_t line = 0;
};

/// One experiment: declarations plus a single command with key=value
/// parameters. Built either from a problem file or from command-line flags.
struct Problem {
  std::vector<std::string> vars;
  std::optional<unsigned> order;
  std::map<std::string, Definition> defs;
  std::string command;
  std::map<std::string, std::string> params;
};

/// Problem file syntax, one statement per line, '#' starts a comment:
///
///   vars x, y
///   order 8
///   diffeo F = 2*x; 4*y + x^2
///   vectorfield X = x^2; 0
///   ideal V = y - x^2
///   group K = A | B
///   command mu-seq F=F V=V W=W kmax=50 cap=12
///
/// Diffeo definitions may also be compose(A, B, ...), inverse(A),
/// power(A, k) or commutator(A, B) over other names. Command parameters
/// are separated by whitespace, so inline values must not contain spaces.
Problem parse_problem(std::string_view text);

std::vector<std::string> parse_var_list(std::string_view text);

/// Resolves parameters of a Problem. A parameter value is either the name
/// of a definition of the right kind or inline text in the same syntax.
class Resolver {
 public:
  explicit Resolver(const Problem& problem);

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  unsigned order() const noexcept { return order_; }
  bool has(const std::string& key) const { return problem_.params.count(key) > 0; }
  const std::string& text(const std::string& key) const;

  TruncatedSeries series(const std::string& key) const;
  JetDiffeo diffeo(const std::string& key) const;
  JetVectorField field(const std::string& key) const;
  IdealGens ideal(const std::string& key) const;
  std::vector<JetDiffeo> group_generators(const std::string& key) const;
  unsigned natural(const std::string& key, std::optional<unsigned> fallback = std::nullopt) const;

  /// Parses every definition once, so unresolved names fail early.
  void check_definitions() const;

 private:
  const Definition* lookup(const std::string& value, DefKind kind) const;
  JetDiffeo diffeo_value(std::string_view value, std::size_t depth) const;

  const Problem& problem_;
  std::vector<std::string> vars_;
  unsigned order_;
};

}  // namespace jetflow::cli
