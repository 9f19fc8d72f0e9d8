// cft_cli: compute pairings and class groups, run verification suites, emit JSON or text reports.
//
//   cft_cli compute classgroup --field 5 --n 4 --modulus "[(x):1, (x-1):1]"
//   cft_cli verify all --samples 0
//   cft_cli verify kummer-kernel --config run.json --out report.json

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cft/cli.hpp"

namespace {

using cft::cli::RunConfig;

void add_config_flags(CLI::App* app, RunConfig& c, std::string& config_path, std::optional<std::size_t>& samples) {
  app->add_option("--config", config_path, "flat key-value JSON config; flags override it");
  app->add_option("--field", c.field, "base field, GF(q) or GF(p^r) or q");
  app->add_option("--curve", c.curve, "y^2=x^3+a*x+b over GF(q)");
  app->add_option("--n", c.n, "exponent n");
  app->add_option("--modulus", c.modulus, "modulus divisor, e.g. \"[(x):1, inf:1]\"");
  app->add_option("--places", c.places, "place set S, e.g. \"{(x), inf}\"");
  app->add_option("--function", c.function, "function, e.g. \"(x^2+1)/(x-1)\"");
  app->add_option("--divisor", c.divisor, "divisor, e.g. \"[(x-2):1]\"");
  app->add_option("--point", c.point, "curve point P, \"(x,y)@GF(q)\"");
  app->add_option("--point2", c.point2, "curve point Q");
  app->add_option("--ext", c.ext, "extension, \"kummer: n=4, f=(x-2) ; over GF(5)(x)\"");
  app->add_option("--dprime", c.dprime, "constant extension degree");
  app->add_option("--degree-bound", c.degree_bound, "place degree bound");
  app->add_option("--samples", samples, "sample count");
  app->add_option("--seed", c.seed, "RNG seed");
  app->add_option("--out", c.out, "output file (stdout when empty)");
  app->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

// Config file first, then the flags given on the command line.
RunConfig resolve(const RunConfig& flags, const std::string& config_path, const std::optional<std::size_t>& samples,
                  CLI::App* app) {
  RunConfig c;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw cft::cli::usage_error("cannot open config " + config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw cft::cli::usage_error(std::string("config: ") + e.what());
    }
    c.merge_json(cft::report::Json(j));
  }
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--field")) c.field = flags.field;
  if (given("--curve")) c.curve = flags.curve;
  if (given("--n")) c.n = flags.n;
  if (given("--modulus")) c.modulus = flags.modulus;
  if (given("--places")) c.places = flags.places;
  if (given("--function")) c.function = flags.function;
  if (given("--divisor")) c.divisor = flags.divisor;
  if (given("--point")) c.point = flags.point;
  if (given("--point2")) c.point2 = flags.point2;
  if (given("--ext")) c.ext = flags.ext;
  if (given("--dprime")) c.dprime = flags.dprime;
  if (given("--degree-bound")) c.degree_bound = flags.degree_bound;
  if (given("--samples")) c.samples = samples;
  if (given("--seed")) c.seed = flags.seed;
  if (given("--out")) c.out = flags.out;
  if (given("--format")) c.format = flags.format;
  return c;
}

int emit(const std::string& body, const std::string& out) {
  if (out.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return cft::cli::kUsageError;
  }
  f << body;
  return 0;
}

int usage_failure(const std::string& kind, const std::string& msg, const std::string& format) {
  if (format == "text") std::cerr << kind << ": " << msg << "\n";
  else std::cout << cft::report::error_json(kind, msg).dump(2) << "\n";
  return cft::cli::kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class field theory toolkit for rational and elliptic function fields"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path, kind, suite;
  std::optional<std::size_t> samples;

  auto* compute = app.add_subcommand("compute", "compute a pairing value, class group or Selmer basis");
  compute->add_option("kind", kind, "pair-tau | pair-tate | pair-ate | classgroup | selmer")
      ->required()
      ->check(CLI::IsMember(cft::cli::compute_kinds()));
  add_config_flags(compute, flags, config_path, samples);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "weil | adjoint | nondeg | reciprocity | kummer-kernel | lemma-ext | "
                                     "surjectivity | norm-compat | tate | rayclass | all")
      ->required()
      ->check(CLI::IsMember(cft::cli::verify_suites()));
  add_config_flags(verify, flags, config_path, samples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_failure("usage", e.what(), "json");
  }

  CLI::App* sub = compute->parsed() ? compute : verify;
  RunConfig c;
  try {
    c = resolve(flags, config_path, samples, sub);
    const cft::report::Report r = compute->parsed() ? cft::cli::cmd_compute(kind, c) : cft::cli::cmd_verify(suite, c);
    const std::string body = c.format == "text" ? r.to_text() : r.to_json().dump(2) + "\n";
    if (const int rc = emit(body, c.out)) return rc;
    return r.pass() ? cft::cli::kPass : cft::cli::kCheckFailure;
  } catch (const cft::cli::usage_error& e) {
    return usage_failure("usage", e.what(), c.format);
  } catch (const cft::parse_error& e) {
    return usage_failure("parse", e.what(), c.format);
  } catch (const cft::domain_error& e) {
    return usage_failure("domain", e.what(), c.format);
  } catch (const cft::precondition_error& e) {
    return usage_failure("precondition", e.what(), c.format);
  } catch (const cft::size_error& e) {
    return usage_failure("size", e.what(), c.format);
  }
}
