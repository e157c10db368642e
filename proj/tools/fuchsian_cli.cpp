#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fuchsian/coding.hpp"
#include "fuchsian/dynamics.hpp"
#include "fuchsian/oracle.hpp"
#include "fuchsian/parry.hpp"
#include "fuchsian/verify.hpp"
#include "fuchsian/walker.hpp"

using namespace fuchsian;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string scheme_path;
  std::string catalog;
  std::string out;
  int n = 5;
  int radius = 4;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  std::string suite;
  std::string variant = "corrected";
  std::string action = "trivial";
  std::string action_path;
  std::string group;
  std::string word;
  std::string svg;
  std::string matrix_out;
  bool audit = false;
  bool list = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot read {}", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError(fmt::format("cannot write {}", path));
  out << text;
}

Scheme load_scheme(const RunConfig& cfg) {
  if (!cfg.scheme_path.empty() && !cfg.catalog.empty()) throw InputError("give --scheme or --catalog, not both");
  if (!cfg.scheme_path.empty()) return parse_scheme(read_file(cfg.scheme_path));
  if (!cfg.catalog.empty()) return catalog_scheme(cfg.catalog);
  throw InputError("a scheme is required (--scheme FILE or --catalog NAME)");
}

Scheme load_valid_scheme(const RunConfig& cfg) {
  Scheme s = load_scheme(cfg);
  const auto rep = validate_scheme(s);
  if (!rep.ok()) throw InputError("scheme fails validation:\n" + rep.text());
  return s;
}

std::optional<Realization> realization_for(const Scheme& s) {
  for (const char* nm : {"free-f2-ideal-quad", "genus2-octagon"})
    if (s.name == nm && scheme_to_json(s) == scheme_to_json(catalog_scheme(nm))) return realize_group(nm);
  return std::nullopt;
}

int cmd_validate(const RunConfig& cfg) {
  const Scheme s = load_scheme(cfg);
  const auto rep = validate_scheme(s);
  fmt::print("{}", rep.text());
  return rep.ok() ? 0 : 1;
}

int cmd_coding(const RunConfig& cfg) {
  const Scheme s = load_valid_scheme(cfg);
  if (cfg.variant != "corrected" && cfg.variant != "literal") throw InputError("--variant is corrected or literal");
  const Coding c = build_coding(s, cfg.variant == "literal" ? Variant::literal : Variant::corrected);
  fmt::print("scheme {} ({} table)\n", s.name, cfg.variant);
  fmt::print("{:<6} {:>6}\n", "type", "states");
  for (const auto& [kind, n] : count_by_kind(c)) fmt::print("{:<6} {:>6}\n", kind, n);
  fmt::print("{:<6} {:>6}\n", "total", c.size());
  int starts = 0, finals = 0;
  for (int j = 0; j < c.size(); ++j) {
    starts += c.start[j];
    finals += c.final[j];
  }
  const bool conn = strongly_connected(c);
  const bool aper = conn && aperiodic(c);
  fmt::print("start states       {}\nfinal states       {}\n", starts, finals);
  fmt::print("reversible         {}\n", check_reversibility(c) ? "yes" : "no");
  fmt::print("strongly connected {}\n", conn ? "yes" : "no");
  fmt::print("aperiodic          {}\n", aper ? "yes" : "no");
  if (aper) {
    fmt::print("positivity index   {}\n", positivity_index(c));
    fmt::print("lambda             {:.15f}\n", pf_eigendata(c, cfg.tol).lambda);
  }
  fmt::print("path counts        {}\n", fmt::join(path_counts(c, cfg.n), " "));
  if (!cfg.out.empty()) write_file(cfg.out, coding_to_json(c));
  return 0;
}

int cmd_sphere(const RunConfig& cfg) {
  const Scheme s = load_valid_scheme(cfg);
  const Coding c = build_coding(s);
  const auto counts = path_counts(c, cfg.n);
  auto real = realization_for(s);
  std::optional<Oracle> o;
  if (real)
    o.emplace(*real, cfg.n);
  else
    std::cerr << "note: no geometric oracle for " << s.name << "; counts only\n";
  std::string csv = "n,coded_count,oracle_count,equal\n";
  bool all = true;
  const auto sizes = o ? o->sphere_sizes() : std::vector<std::uint64_t>{};
  for (int n = 1; n <= cfg.n; ++n) {
    if (o) {
      const bool eq = counts[n - 1] == sizes[n];
      all = all && eq;
      csv += fmt::format("{},{},{},{}\n", n, counts[n - 1], sizes[n], eq ? "true" : "false");
    } else {
      csv += fmt::format("{},{},,\n", n, counts[n - 1]);
    }
  }
  fmt::print("{}", csv);
  if (!cfg.out.empty()) write_file(cfg.out, csv);
  if (cfg.list && o) fmt::print("{}", ball_csv(*o));
  return all ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<CheckResult> results;
  if (!cfg.suite.empty()) {
    const auto names = suite_names();
    if (cfg.suite == "all") {
      for (const auto& n : names) results.push_back(run_suite(n, cfg.seed));
    } else {
      if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw InputError(fmt::format("unknown suite '{}'; known: all, {}", cfg.suite, fmt::join(names, ", ")));
      results.push_back(run_suite(cfg.suite, cfg.seed));
    }
  } else {
    results = verify_scheme(load_scheme(cfg), cfg.seed);
  }
  bool ok = true;
  for (const auto& r : results) {
    fmt::print("{}\n", result_line(r));
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

int cmd_parry(const RunConfig& cfg) {
  const Scheme s = load_valid_scheme(cfg);
  const Coding c = build_coding(s);
  const Eigendata e = pf_eigendata(c, cfg.tol);
  const ParryData d = parry_chain(c.succ, e);
  fmt::print("lambda {:.15f}\niterations {}\n", e.lambda, e.iterations);
  const std::string csv = eigendata_csv(c, d);
  if (cfg.out.empty())
    fmt::print("{}", csv);
  else
    write_file(cfg.out, csv);
  if (!cfg.matrix_out.empty()) write_file(cfg.matrix_out, matrix_text(c));
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  const Scheme s = load_valid_scheme(cfg);
  const Coding c = build_coding(s);
  const ParryData d = parry(c);
  FiniteAction a = cfg.action_path.empty() ? catalog_action(s, cfg.action) : load_action(s, read_file(cfg.action_path));
  const Dynamics dy(c, d, std::move(a));
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::VectorXd f(dy.points());
  for (int x = 0; x < dy.points(); ++x) f[x] = u(rng);
  if (cfg.n < 1 || 2 * cfg.n > 40) throw InputError("--n must lie in 1..20 for simulate");
  const std::string csv = convergence_csv(convergence_experiment(dy, f, cfg.n));
  if (cfg.out.empty())
    fmt::print("{}", csv);
  else
    write_file(cfg.out, csv);
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  const std::string name = cfg.group.empty() ? cfg.catalog : cfg.group;
  if (name.empty()) throw InputError("--group NAME is required");
  const Realization r = realize_group(name);
  Oracle o(r, cfg.radius);
  fmt::print("group {} radius {} ball {}\n", name, o.radius(), o.ball_size());
  fmt::print("sphere sizes {}\n", fmt::join(o.sphere_sizes(), " "));
  if (cfg.audit) {
    fmt::print("identification {}\n", r.exact ? "exact integer matrices" : fmt::format("radius {}", r.identification_radius));
    fmt::print("relator defect {:.3e}\n", relator_defect(r));
    fmt::print("closest distinct elements {}\n", std::isinf(o.min_gap()) ? std::string("none within the audit window")
                                                                          : fmt::format("{:.3e}", o.min_gap()));
  }
  if (!cfg.out.empty()) write_file(cfg.out, ball_csv(o));
  if (!cfg.word.empty()) {
    const Scheme& s = o.scheme();
    const Word w = s.parse_word(cfg.word);
    const ThickPath t = brute_thickened(o, {}, w);
    fmt::print("{}\n", thickpath_json(s, t));
    if (!cfg.svg.empty()) write_file(cfg.svg, thickpath_svg(s, t, o));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric Markov coding of Fuchsian groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto scheme_opts = [&](CLI::App* sub) {
    sub->add_option("--scheme", cfg.scheme_path, "scheme JSON file");
    sub->add_option("--catalog", cfg.catalog, "embedded scheme name");
  };
  auto* validate = app.add_subcommand("validate", "check the standing conditions of a scheme");
  scheme_opts(validate);

  auto* coding = app.add_subcommand("coding", "build the coding and print a summary");
  scheme_opts(coding);
  coding->add_option("--out", cfg.out, "write the coding as JSON");
  coding->add_option("--variant", cfg.variant, "corrected or literal transition table");
  coding->add_option("--n", cfg.n, "number of path counts to print")->check(CLI::Range(1, 40));
  coding->add_option("--tol", cfg.tol, "eigenvector tolerance");

  auto* sphere = app.add_subcommand("sphere", "coded path counts against oracle sphere sizes");
  scheme_opts(sphere);
  sphere->add_option("--n", cfg.n, "largest radius")->check(CLI::Range(1, 12));
  sphere->add_option("--out", cfg.out, "CSV output");
  sphere->add_flag("--list", cfg.list, "also list the ball elements with their words");

  auto* verify = app.add_subcommand("verify", "run an acceptance suite or the invariant checks of a scheme");
  scheme_opts(verify);
  verify->add_option("--suite", cfg.suite, "suite name or all");
  verify->add_option("--seed", cfg.seed, "random seed");

  auto* parry_cmd = app.add_subcommand("parry", "Perron-Frobenius data and the Parry measure");
  scheme_opts(parry_cmd);
  parry_cmd->add_option("--out", cfg.out, "eigendata CSV");
  parry_cmd->add_option("--matrix-out", cfg.matrix_out, "0/1 transition matrix for external checks");
  parry_cmd->add_option("--tol", cfg.tol, "power iteration tolerance");

  auto* simulate = app.add_subcommand("simulate", "convergence of even spherical averages");
  scheme_opts(simulate);
  simulate->add_option("--action", cfg.action, "catalog action name");
  simulate->add_option("--action-file", cfg.action_path, "action JSON file");
  simulate->add_option("--n", cfg.n, "largest half-radius");
  simulate->add_option("--seed", cfg.seed, "seed of the test function");
  simulate->add_option("--out", cfg.out, "CSV output");

  auto* oracle = app.add_subcommand("oracle", "Cayley ball of a realized group");
  oracle->add_option("--group", cfg.group, "realized group name");
  oracle->add_option("--catalog", cfg.catalog, "alias of --group");
  oracle->add_option("--radius", cfg.radius, "ball radius")->check(CLI::Range(0, 14));
  oracle->add_flag("--audit", cfg.audit, "report identification diagnostics");
  oracle->add_option("--out", cfg.out, "ball CSV (id, distance, word)");
  oracle->add_option("--word", cfg.word, "print the thickened path from R to this domain");
  oracle->add_option("--svg", cfg.svg, "schematic SVG of that thickened path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (*validate) return cmd_validate(cfg);
    if (*coding) return cmd_coding(cfg);
    if (*sphere) return cmd_sphere(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*parry_cmd) return cmd_parry(cfg);
    if (*simulate) return cmd_simulate(cfg);
    if (*oracle) return cmd_oracle(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
