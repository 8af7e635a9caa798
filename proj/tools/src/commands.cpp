#include "jetflow/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "jetflow/cli/ptx.hpp"
#include "jetflow/embed/embed.hpp"
#include "jetflow/errors.hpp"
#include "jetflow/expoly/closed_form.hpp"
#include "jetflow/jets/finite_group.hpp"
#include "jetflow/numeric/lattice.hpp"
#include "jetflow/series/multi_index.hpp"

namespace jetflow::cli {

namespace {

constexpr unsigned kDefaultCap = 16;

struct Context {
  const Problem& problem;
  Resolver resolver;
  OutputOptions options;
  std::ostream& out;
  std::ostream& err;
};

std::string numeric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void csv_header(Context& c, const char* header) { c.out << header << "\n"; }

void quantity(Context& c, const std::string& name, const std::string& value, const char* tag = "exact") {
  c.out << name << "," << value << "," << tag << "\n";
}

unsigned cap_of(Context& c) {
  if (c.resolver.has("cap")) return c.resolver.natural("cap");
  const unsigned order = c.resolver.order();
  if (order < kDefaultCap) {
    c.err << "note: cap defaults to the jet order " << order << "\n";
    return order;
  }
  return kDefaultCap;
}

void print_sequence(Context& c, const std::vector<std::pair<unsigned, MultResult>>& seq, const char* label) {
  if (c.options.csv) {
    csv_header(c, "k,result,tag");
    for (const auto& [k, r] : seq) c.out << k << "," << r.to_string() << ",exact\n";
    return;
  }
  c.out << label << "\n";
  for (const auto& [k, r] : seq) c.out << k << "\t" << r.to_string() << "\n";
}

// Images x_j o M(t) = sum_beta M(beta, x_j) x^beta, read off the coordinate columns.
void print_components(Context& c, const ExpPolyMatrix& m, const std::string& map_name) {
  const auto& vars = c.resolver.vars();
  const std::size_t n = vars.size();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<unsigned> e(n, 0);
    e[j] = 1;
    const std::size_t col = deglex_rank(e);
    std::string line;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m(r, col).is_zero()) continue;
      if (!line.empty()) line += " + ";
      line += "(" + m(r, col).to_string() + ")*" + monomial_label(deglex_unrank(n, r), vars);
    }
    c.out << vars[j] << " o " << map_name << ": " << (line.empty() ? "0" : line) << "\n";
  }
}

void cmd_multiplicity(Context& c) {
  const unsigned cap = cap_of(c);
  const MultResult r = multiplicity(c.resolver.ideal("V"), c.resolver.ideal("W"), cap);
  if (c.options.csv) {
    csv_header(c, "quantity,value,tag");
    quantity(c, "multiplicity", r.to_string());
    return;
  }
  c.out << r.to_string() << "\n";
}

void cmd_mu_seq(Context& c) {
  const unsigned cap = cap_of(c);
  const unsigned kmax = c.resolver.natural("kmax", 10);
  const auto seq = mu_sequence(c.resolver.diffeo("F"), c.resolver.ideal("V"), c.resolver.ideal("W"), kmax, cap,
                               c.options.parallel);
  print_sequence(c, seq, "k\tmu_k");
}

void cmd_index_seq(Context& c) {
  const unsigned cap = cap_of(c);
  const unsigned kmax = c.resolver.natural("kmax", 10);
  print_sequence(c, index_sequence(c.resolver.diffeo("F"), kmax, cap, c.options.parallel), "k\tindex");
}

unsigned tangency(const JetDiffeo& g) {
  std::optional<unsigned> nu;
  const JetDiffeo id = JetDiffeo::identity(g.nvars(), g.order());
  for (std::size_t i = 0; i < g.nvars(); ++i) {
    const auto v = (g.component(i) - id.component(i)).valuation();
    if (v && (!nu || *v < *nu)) nu = v;
  }
  if (!nu) throw DomainError("commutator-demo: g_j is the identity at the working order");
  return *nu;
}

void cmd_commutator_demo(Context& c) {
  const unsigned steps = c.resolver.natural("steps", 3);
  const JetDiffeo g1 = c.resolver.has("g1") ? c.resolver.diffeo("g1") : parse_diffeo("x + x^2", c.resolver.vars(), c.resolver.order());
  const JetDiffeo g2 = c.resolver.has("g2") ? c.resolver.diffeo("g2") : parse_diffeo("x + x^3", c.resolver.vars(), c.resolver.order());
  const unsigned cap = cap_of(c);

  std::vector<JetDiffeo> gs{g1, g2};
  for (unsigned s = 0; s < steps; ++s) gs.push_back(group_commutator(g1, gs.back()));
  if (c.options.csv) {
    csv_header(c, "step,nu,index,tag");
  } else {
    c.out << "step\tnu\tindex\n";
  }
  for (std::size_t j = 0; j < gs.size(); ++j) {
    const unsigned nu = tangency(gs[j]);
    const MultResult idx = fixed_point_index(gs[j], 1, cap);
    if (c.options.csv) {
      c.out << j + 1 << "," << nu << "," << idx.to_string() << ",exact\n";
    } else {
      c.out << j + 1 << "\t" << nu << "\t" << idx.to_string() << "\n";
    }
  }
}

void cmd_ptx_demo(Context& c) {
  const unsigned prime = c.resolver.natural("prime");
  const PtxResult r = ptx_demo(prime, c.resolver.natural("order", prime));
  double worst = 0;
  for (const auto& coef : r.coefficients) {
    if (coef.vanishes) worst = std::max(worst, coef.modulus);
  }
  if (c.options.csv) {
    csv_header(c, "quantity,value,tag");
    quantity(c, "prime", std::to_string(r.prime));
    quantity(c, "t", r.t);
    quantity(c, "order_of_vanishing", std::to_string(r.vanishing_order));
    quantity(c, "max_vanishing_modulus", numeric(worst), "numeric");
    return;
  }
  c.out << "order of vanishing " << r.vanishing_order << " at t = " << r.t << "\n";
}

void cmd_flow(Context& c) {
  const ExpPolyMatrix m = flow_operator(c.resolver.field("X"));
  if (c.options.csv) {
    c.out << to_csv(m, c.resolver.vars().size(), c.resolver.vars());
    return;
  }
  print_components(c, m, "phi_t");
}

void cmd_power(Context& c) {
  const ExpPolyMatrix m = power_operator(c.resolver.diffeo("F"));
  if (c.options.csv) {
    c.out << to_csv(m, c.resolver.vars().size(), c.resolver.vars());
    return;
  }
  print_components(c, m, "F^t");
}

FiniteGroupAction group_of(Context& c) {
  const auto gens = c.resolver.group_generators("K");
  return FiniteGroupAction::generated_by(gens);
}

void cmd_linearize(Context& c) {
  const FiniteGroupAction k = group_of(c);
  const JetDiffeo u = bochner_average(k);
  const JetDiffeo u_inv = diffeo_inverse(u);
  for (const auto& h : k.elements()) {
    if (diffeo_compose(diffeo_compose(u, h), u_inv) != h.linear_diffeo()) {
      throw InternalError("linearize: U o h o U^-1 differs from the linear part of h");
    }
  }
  const auto& vars = c.resolver.vars();
  if (c.options.csv) {
    csv_header(c, "quantity,value,tag");
    quantity(c, "group_order", std::to_string(k.size()));
    for (std::size_t j = 0; j < vars.size(); ++j) quantity(c, "U[" + vars[j] + "]", u.component(j).to_string(vars));
    quantity(c, "conjugation_check", "passed");
    return;
  }
  c.out << "group order: " << k.size() << "\n";
  for (std::size_t j = 0; j < vars.size(); ++j) c.out << "U[" << vars[j] << "]: " << u.component(j).to_string(vars) << "\n";
  c.out << "U o h o U^-1 = dh for all " << k.size() << " elements\n";
}

void cmd_torsion(Context& c) {
  std::vector<GaussianRational> lambdas;
  std::stringstream ss(c.resolver.text("lambdas"));
  for (std::string item; std::getline(ss, item, ',');) lambdas.push_back(GaussianRational::parse(item));
  const unsigned k = roots_of_unity_order(lambdas);
  if (c.options.csv) {
    csv_header(c, "quantity,value,tag");
    quantity(c, "k", std::to_string(k));
    return;
  }
  c.out << "k=" << k << "\n";
}

void cmd_embed(Context& c) {
  const std::optional<unsigned> p = c.resolver.has("p") ? std::optional(c.resolver.natural("p")) : std::nullopt;
  const EmbeddingResult r = embed_power_in_flow(c.resolver.diffeo("F"), p);
  const auto& vars = c.resolver.vars();
  if (!c.options.csv) {
    c.out << r.report(vars);
    return;
  }
  csv_header(c, "quantity,value,tag");
  quantity(c, "k", std::to_string(r.k));
  for (std::size_t i = 0; i < r.delta.size(); ++i) quantity(c, "delta" + std::to_string(i + 1), r.delta[i].to_string());
  for (std::size_t i = 0; i < r.weights.size(); ++i) quantity(c, "w" + std::to_string(i + 1), r.weights[i].to_string());
  const auto vs = r.semisimple_components(vars);
  for (std::size_t j = 0; j < vars.size(); ++j) quantity(c, "V_s[" + vars[j] + "]", vs[j]);
  for (std::size_t j = 0; j < vars.size(); ++j) quantity(c, "V_n[" + vars[j] + "]", r.nilpotent.component(j).to_string(vars));
  quantity(c, "verification", r.exact ? "exact" : "numeric");
  quantity(c, "residual", numeric(r.residual), "numeric");
}

void cmd_jet_determination(Context& c) {
  const FiniteGroupAction k = group_of(c);
  const unsigned p = jet_determination(k);
  if (c.options.csv) {
    csv_header(c, "quantity,value,tag");
    quantity(c, "group_order", std::to_string(k.size()));
    quantity(c, "p", std::to_string(p));
    return;
  }
  c.out << "group order: " << k.size() << "\n";
  c.out << "p=" << p << "\n";
}

using Handler = void (*)(Context&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"multiplicity", cmd_multiplicity},
      {"mu-seq", cmd_mu_seq},
      {"index-seq", cmd_index_seq},
      {"commutator-demo", cmd_commutator_demo},
      {"ptx-demo", cmd_ptx_demo},
      {"flow", cmd_flow},
      {"power", cmd_power},
      {"linearize", cmd_linearize},
      {"torsion", cmd_torsion},
      {"embed", cmd_embed},
      {"jet-determination", cmd_jet_determination},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

void execute(const Problem& problem, const OutputOptions& options, std::ostream& out, std::ostream& err) {
  const auto it = handlers().find(problem.command);
  if (it == handlers().end()) throw DomainError("unknown command '" + problem.command + "'");
  Context c{problem, Resolver(problem), options, out, err};
  c.resolver.check_definitions();
  it->second(c);
}

int run_problem(const Problem& problem, const OutputOptions& options, std::ostream& out, std::ostream& err) {
  try {
    execute(problem, options, out, err);
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace jetflow::cli
