#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "jetflow/cli/commands.hpp"
#include "jetflow/errors.hpp"

namespace {

using jetflow::cli::Problem;

struct Flag {
  const char* name;
  const char* help;
  bool repeatable = false;
};

struct Spec {
  const char* command;
  const char* help;
  std::vector<Flag> flags;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> table{
      {"multiplicity", "colength of V + W at the origin",
       {{"V", "first ideal, generators separated by ';'"}, {"W", "second ideal"}, {"cap", "largest jet order scanned"}}},
      {"mu-seq", "multiplicities (F^k V, W) for k = 0..kmax",
       {{"F", "diffeomorphism"}, {"V", "moving ideal"}, {"W", "fixed ideal"}, {"kmax", "last iterate"},
        {"cap", "largest jet order scanned"}}},
      {"index-seq", "fixed point indices of F^k for k = 1..kmax",
       {{"F", "diffeomorphism"}, {"kmax", "last iterate"}, {"cap", "largest jet order scanned"}}},
      {"commutator-demo", "tangency and index of g_{j+1} = [g1, g_j]",
       {{"g1", "first map (default x + x^2)"}, {"g2", "second map (default x + x^3)"}, {"steps", "commutators taken"},
        {"cap", "largest jet order scanned"}}},
      {"ptx-demo", "order of vanishing of P_t at t = (p-1)!", {{"prime", "the prime p"}, {"order", "coefficients checked"}}},
      {"flow", "closed form of the flow of X", {{"X", "vector field"}}},
      {"power", "closed form of the iterates F^t", {{"F", "diffeomorphism"}}},
      {"linearize", "Bochner linearization of a finite group", {{"K", "group generator", true}}},
      {"torsion", "roots-of-unity order of <lambda_1, ..., lambda_n>", {{"lambdas", "comma separated values"}}},
      {"embed", "vector field V with e^V = F^k", {{"F", "diffeomorphism"}}},
      {"jet-determination", "smallest separating jet order of a finite group", {{"K", "group generator", true}}},
  };
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw jetflow::DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with jets of formal diffeomorphisms and vector fields", "jetflow"};
  app.require_subcommand(1);

  jetflow::cli::OutputOptions options;
  std::string vars;
  unsigned order = 0;
  app.add_flag("--csv", options.csv, "CSV rows with a header instead of the human table");
  app.add_flag("--parallel", options.parallel, "distribute k values of mu-seq and index-seq over threads");
  auto* vars_opt = app.add_option("--vars", vars, "variables, e.g. x,y (default x)");
  auto* order_opt = app.add_option("--p", order, "jet order (default 8)");

  std::map<std::string, std::map<std::string, std::vector<std::string>>> values;
  for (const auto& spec : specs()) {
    auto* sub = app.add_subcommand(spec.command, spec.help);
    sub->fallthrough();
    for (const auto& flag : spec.flags) {
      auto& slot = values[spec.command][flag.name];
      auto* opt = sub->add_option(std::string("--") + flag.name, slot, flag.help)->expected(1);
      if (!flag.repeatable) opt->multi_option_policy(CLI::MultiOptionPolicy::Throw);
    }
  }

  std::string file;
  auto* run = app.add_subcommand("run", "execute a problem file");
  run->fallthrough();
  run->add_option("file", file, "problem file")->required();

  CLI11_PARSE(app, argc, argv);

  Problem problem;
  if (run->parsed()) {
    try {
      problem = jetflow::cli::parse_problem(read_file(file));
    } catch (const jetflow::ParseError& e) {
      std::cerr << "parse error: " << file << ": " << e.what() << "\n";
      return 3;
    } catch (const jetflow::DomainError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  } else {
    for (auto* sub : app.get_subcommands()) problem.command = sub->get_name();
    for (const auto& [key, list] : values[problem.command]) {
      if (list.empty()) continue;
      std::string joined;
      for (const auto& v : list) joined += (joined.empty() ? "" : " | ") + v;
      problem.params[key] = joined;
    }
  }
  try {
    if (*vars_opt) problem.vars = jetflow::cli::parse_var_list(vars);
  } catch (const jetflow::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (*order_opt) problem.order = order;
  return jetflow::cli::run_problem(problem, options, std::cout, std::cerr);
}
