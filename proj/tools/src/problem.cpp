#include "jetflow/cli/problem.hpp"

#include <cctype>
#include <charconv>

#include "jetflow/errors.hpp"
#include "jetflow/series/multi_index.hpp"

namespace jetflow::cli {

namespace {

constexpr unsigned kDefaultOrder = 8;
constexpr std::size_t kMaxDepth = 32;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s.front())) || s.front() == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

// Splits on `sep` outside parentheses.
std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::optional<long> parse_long(std::string_view s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

[[noreturn]] void fail(std::size_t line, std::size_t offset, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, offset);
}

}  // namespace

std::vector<std::string> parse_var_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto part : split_top_level(text, ',')) {
    if (!is_identifier(part) || part == "i") throw DomainError("invalid variable name '" + std::string(part) + "'");
    out.emplace_back(part);
  }
  return out;
}

Problem parse_problem(std::string_view text) {
  Problem p;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const std::size_t end = std::min(text.find('\n', offset), text.size());
    std::string_view line = text.substr(offset, end - offset);
    ++line_no;
    const std::size_t line_start = offset;
    offset = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t sp = line.find_first_of(" \t");
    const std::string_view keyword = line.substr(0, sp);
    const std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));

    if (keyword == "vars") {
      if (!p.vars.empty()) fail(line_no, line_start, "vars declared twice");
      try {
        p.vars = parse_var_list(rest);
      } catch (const DomainError& e) {
        fail(line_no, line_start, e.what());
      }
    } else if (keyword == "order") {
      if (p.order) fail(line_no, line_start, "order declared twice");
      const auto v = parse_long(rest);
      if (!v || *v < 0) fail(line_no, line_start, "order must be a nonnegative integer");
      p.order = static_cast<unsigned>(*v);
    } else if (keyword == "command") {
      if (!p.command.empty()) fail(line_no, line_start, "only one command per problem");
      std::size_t pos = 0;
      bool first = true;
      while (pos < rest.size()) {
        while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
        if (pos >= rest.size()) break;
        std::size_t stop = pos;
        while (stop < rest.size() && !std::isspace(static_cast<unsigned char>(rest[stop]))) ++stop;
        const std::string_view token = rest.substr(pos, stop - pos);
        pos = stop;
        if (first) {
          p.command = std::string(token);
          first = false;
          continue;
        }
        const std::size_t eq = token.find('=');
        if (eq == std::string_view::npos || eq == 0) fail(line_no, line_start, "expected key=value, got '" + std::string(token) + "'");
        p.params[std::string(token.substr(0, eq))] = std::string(token.substr(eq + 1));
      }
      if (p.command.empty()) fail(line_no, line_start, "command name missing");
    } else {
      DefKind kind;
      if (keyword == "series") {
        kind = DefKind::Series;
      } else if (keyword == "diffeo") {
        kind = DefKind::Diffeo;
      } else if (keyword == "vectorfield" || keyword == "field") {
        kind = DefKind::VectorField;
      } else if (keyword == "ideal") {
        kind = DefKind::Ideal;
      } else if (keyword == "group") {
        kind = DefKind::Group;
      } else {
        fail(line_no, line_start, "unknown statement '" + std::string(keyword) + "'");
      }
      const std::size_t eq = rest.find('=');
      if (eq == std::string_view::npos) fail(line_no, line_start, "expected 'name = value'");
      const std::string_view name = trim(rest.substr(0, eq));
      if (!is_identifier(name)) fail(line_no, line_start, "invalid name '" + std::string(name) + "'");
      if (p.defs.count(std::string(name))) fail(line_no, line_start, "'" + std::string(name) + "' defined twice");
      p.defs[std::string(name)] = Definition{kind, std::string(trim(rest.substr(eq + 1))), line_no};
    }
  }
  if (p.command.empty()) throw ParseError("problem file has no command", text.size());
  return p;
}

Resolver::Resolver(const Problem& problem)
    : problem_(problem), vars_(problem.vars.empty() ? std::vector<std::string>{"x"} : problem.vars),
      order_(problem.order.value_or(kDefaultOrder)) {}

const std::string& Resolver::text(const std::string& key) const {
  const auto it = problem_.params.find(key);
  if (it == problem_.params.end()) {
    throw DomainError("command '" + problem_.command + "' needs parameter '" + key + "'");
  }
  return it->second;
}

const Definition* Resolver::lookup(const std::string& value, DefKind kind) const {
  const auto it = problem_.defs.find(std::string(trim(value)));
  if (it == problem_.defs.end()) return nullptr;
  if (it->second.kind != kind) throw DomainError("'" + it->first + "' has the wrong kind for this parameter");
  return &it->second;
}

TruncatedSeries Resolver::series(const std::string& key) const {
  const std::string& v = text(key);
  const Definition* d = lookup(v, DefKind::Series);
  return parse_series(d ? d->text : v, vars_, order_);
}

JetDiffeo Resolver::diffeo_value(std::string_view value, std::size_t depth) const {
  if (depth > kMaxDepth) throw DomainError("definitions nest too deeply (cycle?)");
  value = trim(value);
  if (const Definition* d = lookup(std::string(value), DefKind::Diffeo)) return diffeo_value(d->text, depth + 1);
  const std::size_t open = value.find('(');
  const std::string_view head = open == std::string_view::npos ? std::string_view{} : trim(value.substr(0, open));
  if ((head == "compose" || head == "inverse" || head == "power" || head == "commutator") && value.back() == ')') {
    const auto args = split_top_level(value.substr(open + 1, value.size() - open - 2), ',');
    if (head == "inverse") {
      if (args.size() != 1) throw DomainError("inverse takes one argument");
      return diffeo_inverse(diffeo_value(args[0], depth + 1));
    }
    if (head == "power") {
      const auto k = args.size() == 2 ? parse_long(args[1]) : std::nullopt;
      if (!k) throw DomainError("power takes a diffeo and an integer");
      return diffeo_power(diffeo_value(args[0], depth + 1), *k);
    }
    if (head == "commutator") {
      if (args.size() != 2) throw DomainError("commutator takes two arguments");
      return group_commutator(diffeo_value(args[0], depth + 1), diffeo_value(args[1], depth + 1));
    }
    if (args.empty()) throw DomainError("compose needs arguments");
    JetDiffeo acc = diffeo_value(args[0], depth + 1);
    for (std::size_t i = 1; i < args.size(); ++i) acc = diffeo_compose(acc, diffeo_value(args[i], depth + 1));
    return acc;
  }
  return parse_diffeo(value, vars_, order_);
}

JetDiffeo Resolver::diffeo(const std::string& key) const { return diffeo_value(text(key), 0); }

JetVectorField Resolver::field(const std::string& key) const {
  const std::string& v = text(key);
  const Definition* d = lookup(v, DefKind::VectorField);
  return parse_vector_field(d ? d->text : v, vars_, order_);
}

IdealGens Resolver::ideal(const std::string& key) const {
  const std::string& v = text(key);
  const Definition* d = lookup(v, DefKind::Ideal);
  return parse_ideal(d ? d->text : v, vars_, order_);
}

std::vector<JetDiffeo> Resolver::group_generators(const std::string& key) const {
  const std::string& v = text(key);
  const Definition* d = lookup(v, DefKind::Group);
  std::vector<JetDiffeo> out;
  for (auto part : split_top_level(d ? d->text : v, '|')) out.push_back(diffeo_value(part, 0));
  return out;
}

unsigned Resolver::natural(const std::string& key, std::optional<unsigned> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
    text(key);
  }
  const auto v = parse_long(trim(text(key)));
  if (!v || *v < 0) throw DomainError("parameter '" + key + "' must be a nonnegative integer");
  return static_cast<unsigned>(*v);
}

void Resolver::check_definitions() const {
  for (const auto& [name, def] : problem_.defs) {
    try {
      switch (def.kind) {
        case DefKind::Series:
          parse_series(def.text, vars_, order_);
          break;
        case DefKind::Diffeo:
          diffeo_value(def.text, 0);
          break;
        case DefKind::VectorField:
          parse_vector_field(def.text, vars_, order_);
          break;
        case DefKind::Ideal:
          parse_ideal(def.text, vars_, order_);
          break;
        case DefKind::Group:
          for (auto part : split_top_level(def.text, '|')) diffeo_value(part, 0);
          break;
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(def.line) + " ('" + name + "'): " + e.what(), e.position());
    } catch (const DomainError& e) {
      throw DomainError("line " + std::to_string(def.line) + " ('" + name + "'): " + e.what());
    }
  }
}

}  // namespace jetflow::cli
