#include <iostream>

#include "CLI11.hpp"

#include "dessinmetric/cli.hpp"

int main(int argc, char** argv) {
  namespace dcli = dessinmetric::cli;

  CLI::App app{"Canonical metrics on genus-0 dessins and their automorphism groups"};
  app.require_subcommand(1);

  std::string info_path;
  auto* info = app.add_subcommand("info", "Genus, passport, triangulation and automorphisms of a dessin");
  info->add_option("dessin", info_path, "Dessin JSON file")->required();

  dcli::MetricOptions metric_opts;
  auto* metric = app.add_subcommand("metric", "Build a canonical metric and emit a sample grid");
  metric->add_option("--group", metric_opts.group_tag, "Group type tag: Cn, Dn, A4, S4, A5");
  metric->add_option("--generators", metric_opts.generators_path, "JSON list of generator matrices");
  metric->add_option("--dessin", metric_opts.dessin_path, "Genus-0 dessin JSON file");
  metric->add_option("--construction", metric_opts.construction, "average | conjugate | hermitian | orbit")
      ->check(CLI::IsMember({"average", "conjugate", "hermitian", "orbit"}));
  metric->add_option("--grid", metric_opts.grid, "Grid resolution per axis");
  metric->add_option("--step", metric_opts.step, "Finite-difference step for curvature");
  metric->add_option("--scheme", metric_opts.scheme, "Curvature estimate: richardson (h and h/2) | central")
      ->check(CLI::IsMember({"richardson", "central"}));
  metric->add_option("--seed", metric_opts.seed, "Seed for random conjugators");
  metric->add_option("--out", metric_opts.out_path, "Grid output file (default stdout)");
  metric->add_option("--report", metric_opts.report_path, "Run report file");
  metric->add_option("--format", metric_opts.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  metric->add_option("--workers", metric_opts.workers, "Worker threads for grid evaluation");

  dcli::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run the property checks");
  verify->add_option("--scope", verify_opts.scope, "groups | metrics | sc | all");
  verify->add_flag("--perturb", verify_opts.perturb, "Perturb a generator (harness self-test)");

  std::string sc_out;
  int sc_samples = 30;
  auto* sc = app.add_subcommand("sc", "Schwarz-Christoffel triangle map demo (JSON)");
  sc->add_option("--out", sc_out, "Output file (default stdout)");
  sc->add_option("--samples", sc_samples, "Boundary samples per side");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dcli::kInputError;
  }

  if (*info) return dcli::cmd_info(info_path, std::cout, std::cerr);
  if (*metric) return dcli::cmd_metric(metric_opts, std::cout, std::cerr);
  if (*verify) return dcli::cmd_verify(verify_opts, std::cout, std::cerr);
  if (*sc) return dcli::cmd_sc(sc_out, sc_samples, std::cout, std::cerr);
  return dcli::kInputError;
}
