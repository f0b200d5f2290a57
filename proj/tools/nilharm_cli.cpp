// nilharm: run the verification suite, solve for fundamental solutions and
// multiply group elements from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include "nilharm/errors.hpp"
#include "nilharm/harness.hpp"
#include "nilharm/invariant_ops.hpp"
#include "nilharm/operator_parser.hpp"
#include "nilharm/reduce.hpp"
#include "nilharm/serialization.hpp"

namespace {

using namespace nilharm;

struct Flags {
  RunConfig config;
  std::string format = "jsonl";
};

void add_global_flags(CLI::App& app, Flags& f) {
  RunConfig& c = f.config;
  app.add_option("--group", c.group, "Base group")->check(CLI::IsMember({"N", "S"}));
  app.add_option("--m", c.m, "Matrix size");
  app.add_option("--grid", c.grid, "Points per axis (power of two)");
  app.add_option("--halfwidth", c.half_width, "Half-width of the grid box");
  app.add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
  app.add_option("--tolerance", c.tolerance, "Replace every tolerance");
  app.add_option("--output", c.output, "Report path");
  app.add_option("--format", f.format, "Report format")->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();
  app.add_option("--operator", c.op, "Operator expression, e.g. \"E1*E1 + E2*E2 - 1\"");
  app.add_option("--epsilon", c.epsilon, "Regularisation of the symbol division");
  app.add_option("--points", c.points, "Random samples per check");
  app.add_option("--dictionary-size", c.dictionary_size, "Gaussian lattice size for the ideal checks");
  app.add_option("--probes", c.probes, "Probe functions for the ideal checks");
}

int run_verify(Flags& f, const std::string& check) {
  f.config.format = f.format == "csv" ? ReportFormat::Csv : ReportFormat::Jsonl;
  return run_suite(f.config, check, &std::cout).exit_code;
}

int run_solve(Flags& f) {
  const RunConfig& c = f.config;
  validate(c);
  set_thread_count(c.threads);
  const GroupSpec spec(c.m.value_or(3));
  const BaseGroup group = c.group.value_or("N") == "S" ? BaseGroup::S : BaseGroup::N;
  const std::size_t dim = group == BaseGroup::N ? static_cast<std::size_t>(spec.dim_n())
                                                : static_cast<std::size_t>(spec.dim_s());
  const std::string expr = c.op.value_or(dim >= 2 ? "E1*E1 + E2*E2 - 1" : "E1*E1 - 1");
  FundamentalSolutionOptions o;
  if (c.grid) o.points = *c.grid;
  if (c.half_width) o.half_width = *c.half_width;
  if (c.epsilon) o.epsilon = *c.epsilon;
  const FundamentalSolutionReport r = fundamental_solution_group(parse_operator(expr, dim), group, spec, o);

  if (!c.output.empty()) {
    if (f.format == "csv")
      save_csv(r.solution, c.output);
    else
      save_binary(r.solution, c.output);
  }
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["check"] = "fundamental-solution";
  j["group"] = group == BaseGroup::N ? "N" : "S";
  j["m"] = spec.m();
  j["operator"] = expr;
  j["picture"] = r.picture;
  j["grid"] = o.points;
  j["halfwidth"] = o.half_width;
  j["epsilon"] = o.epsilon;
  j["test_sigmas"] = r.test_sigmas;
  j["weak_residuals"] = r.weak_residuals;
  if (!c.output.empty()) j["solution"] = c.output;
  std::cout << j.dump() << '\n';
  return kExitPass;
}

int run_group(Flags& f, const std::string& op, const std::vector<std::string>& args) {
  const bool solvable = f.config.group.value_or("N") == "S";
  if (op == "mul" && args.size() != 2) throw InvalidArgument("group mul takes two elements");
  if (op == "inv" && args.size() != 1) throw InvalidArgument("group inv takes one element");
  if (solvable) {
    const SolvableElement a = solvable_from_json(args[0]);
    std::cout << to_json(op == "mul" ? solvable_mul(a, solvable_from_json(args[1])) : solvable_inv(a)) << '\n';
  } else {
    const UnipotentElement a = unipotent_from_json(args[0]);
    std::cout << to_json(op == "mul" ? unipotent_mul(a, unipotent_from_json(args[1])) : unipotent_inv(a)) << '\n';
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on N, S = AN and their extensions"};
  app.require_subcommand(1);
  Flags flags;
  add_global_flags(app, flags);

  std::string check;
  auto* verify = app.add_subcommand("verify", "Run a verification check or the whole suite");
  verify->fallthrough();
  std::vector<std::string> choices = check_names();
  choices.push_back("all");
  verify->add_option("check", check, "Check name or 'all'")->required()->check(CLI::IsMember(choices));

  std::string target;
  auto* solve = app.add_subcommand("solve", "Compute a fundamental solution");
  solve->fallthrough();
  solve->add_option("target", target, "What to solve")->required()->check(CLI::IsMember({"fundamental-solution"}));

  std::string group_op;
  std::vector<std::string> elements;
  auto* group = app.add_subcommand("group", "Multiply or invert elements given as JSON");
  group->fallthrough();
  group->add_option("op", group_op, "mul or inv")->required()->check(CLI::IsMember({"mul", "inv"}));
  group->add_option("elements", elements, "Elements as JSON objects")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return run_verify(flags, check);
    if (*solve) return run_solve(flags);
    return run_group(flags, group_op, elements);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
