#include "dessinmetric/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "dessinmetric/dessin.hpp"
#include "dessinmetric/error.hpp"
#include "dessinmetric/finite_groups.hpp"
#include "dessinmetric/metrics.hpp"
#include "dessinmetric/schwarz_christoffel.hpp"
#include "dessinmetric/verify.hpp"

namespace dessinmetric::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedInput, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string num17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json passport_json(const dessin::Passport& p) {
  return json{{"degree", p.degree},
              {"white", p.white_degrees},
              {"black", p.black_degrees},
              {"faces", p.face_half_degrees}};
}

json dessin_summary(const dessin::Dessin& d) {
  const auto tri = dessin::triangulate(d);
  const auto aut = dessin::automorphisms(d);
  json out;
  out["darts"] = d.dart_count();
  out["genus"] = dessin::genus(d);
  out["passport"] = passport_json(dessin::passport(d));
  out["triangles"] = tri.triangle_count;
  out["butterflies"] = tri.butterfly_count;
  out["automorphism_order"] = aut.order();
  out["automorphism_group"] = dessin::classify_perm_group(aut).display_name();
  return out;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::CyclicGroupUnsupported: return kCyclicExclusion;
    case Errc::GenusMismatch: return kGenusMismatch;
    default: return kInputError;
  }
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(Errc::MalformedInput, "cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct GroupInput {
  groups::FiniteMoebiusGroup group;
  json description;
  std::vector<std::string> warnings;
};

GroupInput load_group(const MetricOptions& o) {
  const int sources = (o.group_tag.empty() ? 0 : 1) + (o.dessin_path.empty() ? 0 : 1) +
                      (o.generators_path.empty() || !o.dessin_path.empty() ? 0 : 1);
  if (sources != 1) {
    throw Error(Errc::MalformedInput, "give exactly one of --group, --generators or --dessin");
  }
  if (!o.group_tag.empty()) {
    const auto type = parse_group_tag(o.group_tag);
    if (!type || type->kind == GroupType::Kind::Other) {
      throw Error(Errc::UnsupportedType, "unknown group tag " + o.group_tag);
    }
    return {groups::standard_group(*type), json{{"kind", "group_tag"}, {"tag", o.group_tag}}, {}};
  }
  if (o.dessin_path.empty()) {
    auto g = groups::group_from_json(read_file(o.generators_path));
    return {std::move(g), json{{"kind", "generators"}, {"path", o.generators_path}}, {}};
  }

  const auto d = dessin::parse_dessin(read_file(o.dessin_path));
  const int g = dessin::genus(d);
  if (g != 0) {
    throw Error(Errc::GenusMismatch, "dessin has genus " + std::to_string(g) +
                                         "; metric constructions are only available in genus 0");
  }
  const auto aut = dessin::automorphisms(d);
  const auto aut_type = dessin::classify_perm_group(aut);
  json description{{"kind", "dessin"}, {"path", o.dessin_path}, {"dessin", dessin_summary(d)}};
  std::vector<std::string> warnings;
  if (!o.generators_path.empty()) {
    auto group = groups::group_from_json(read_file(o.generators_path));
    if (group.order() != aut.order() || !(group.type() == aut_type)) {
      throw Error(Errc::MalformedInput, "generator group " + group.type().tag() + " of order " +
                                            std::to_string(group.order()) + " does not match Aut = " +
                                            aut_type.tag() + " of order " + std::to_string(aut.order()));
    }
    description["generators"] = o.generators_path;
    return {std::move(group), std::move(description), std::move(warnings)};
  }
  warnings.push_back("no generator matrices given; using the standard realization of " + aut_type.tag());
  return {groups::standard_group(aut_type), std::move(description), std::move(warnings)};
}

std::optional<metrics::ConformalMetric> build_metric(const std::string& construction,
                                                     const groups::FiniteMoebiusGroup& g, json& details,
                                                     std::vector<std::string>& warnings) {
  if (construction == "average") return metrics::averaged_metric(g);
  if (construction == "conjugate") return metrics::conjugated_metric(g);
  if (construction == "hermitian") return metrics::hermitian_metric(g);
  if (construction == "orbit") {
    metrics::OrbitTripleSummary summary;
    auto metric = metrics::orbit_triple_metric(g, &summary);
    if (summary.cyclic_fallback) {
      warnings.push_back("cyclic group: the orbit construction falls back to the round metric");
    } else {
      details["orbit_sizes"] = summary.orbit_sizes;
      details["role_assignments"] = summary.role_assignments;
      details["triples_per_assignment"] = summary.triples_per_assignment;
    }
    warnings.push_back("orbit triples are sent to (0, 1, inf); the alternative reading (0, 1, 2) is not used");
    warnings.push_back("invariance of the orbit construction is measured, not guaranteed");
    return metric;
  }
  return std::nullopt;
}

void write_grid(std::ostream& os, const std::string& format, const metrics::ConformalMetric& metric,
                const metrics::CurvatureReport& report) {
  const auto chart_name = [](metrics::Chart c) { return c == metrics::Chart::Finite ? "finite" : "infinity"; };
  if (format == "csv") {
    os << "re,im,chart,rho,curvature\n";
    for (const auto& s : report.samples) {
      os << num17(s.point.coord.real()) << ',' << num17(s.point.coord.imag()) << ',' << chart_name(s.point.chart)
         << ',' << num17(metric.at(s.point)) << ',' << num17(s.value) << '\n';
    }
    return;
  }
  os << "{\"columns\":[\"re\",\"im\",\"chart\",\"rho\",\"curvature\"],\"rows\":[";
  bool first = true;
  for (const auto& s : report.samples) {
    os << (first ? "" : ",") << '[' << num17(s.point.coord.real()) << ',' << num17(s.point.coord.imag()) << ",\""
       << chart_name(s.point.chart) << "\"," << num17(metric.at(s.point)) << ',' << num17(s.value) << ']';
    first = false;
  }
  os << "]}\n";
}

}  // namespace

int cmd_info(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const auto d = dessin::parse_dessin(read_file(path));
    json report = dessin_summary(d);
    const int g = report["genus"].get<int>();
    if (g != 0) {
      report["note"] = "genus " + std::to_string(g) + ": genus-0 metric constructions are unavailable";
    }
    out << report.dump(2) << '\n';
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int cmd_metric(const MetricOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.format != "csv" && o.format != "json") throw Error(Errc::MalformedInput, "--format must be csv or json");
    if (o.grid < 2) throw Error(Errc::MalformedInput, "--grid must be at least 2");
    if (!(o.step > 0.0)) throw Error(Errc::MalformedInput, "--step must be positive");
    if (o.scheme != "richardson" && o.scheme != "central") {
      throw Error(Errc::MalformedInput, "--scheme must be richardson or central");
    }
    const auto scheme =
        o.scheme == "central" ? metrics::CurvatureScheme::Central : metrics::CurvatureScheme::Richardson;

    auto input = load_group(o);
    const auto& group = input.group;
    json details = json::object();
    auto metric = build_metric(o.construction, group, details, input.warnings);
    if (!metric) throw Error(Errc::MalformedInput, "unknown construction " + o.construction);

    const auto grid = metrics::pole_avoiding_grid(*metric, o.grid);
    const auto curvature = metrics::curvature_report(*metric, grid, o.step, o.workers, scheme);
    const double distance_to_round = metrics::metric_distance(*metric, metrics::round_metric());

    json report;
    report["input"] = input.description;
    report["group"] = json{{"type", group.type().tag()},
                           {"order", group.order()},
                           {"in_SO3", groups::is_in_SO3(group)}};
    report["construction"] = o.construction;
    if (!details.empty()) report["construction_details"] = details;
    json diag;
    diag["invariance_defect"] = metrics::invariance_defect(*metric, group, 200, o.workers);
    diag["curvature_min"] = curvature.min();
    diag["curvature_max"] = curvature.max();
    diag["curvature_spread"] = curvature.spread();
    if (o.construction == "conjugate") {
      diag["well_definedness_distance"] = metrics::conjugator_well_defined(group, 3, o.seed);
    }
    diag["distance_to_round"] = distance_to_round;
    diag["coincides_with_round"] = distance_to_round < 1e-9;
    report["diagnostics"] = diag;
    if (distance_to_round < 1e-9) input.warnings.emplace_back("coincides with round sphere");
    report["warnings"] = input.warnings;
    report["grid"] = json{{"size", o.grid}, {"points", grid.size()}, {"step", o.step},
                          {"curvature_scheme", metrics::scheme_name(scheme)}, {"format", o.format},
                          {"seed", o.seed}};

    Output grid_out(o.out_path, out);
    write_grid(grid_out.get(), o.format, *metric, curvature);
    std::ostream& report_fallback = o.out_path.empty() ? err : out;
    Output report_out(o.report_path, report_fallback);
    report_out.get() << report.dump(2) << '\n';
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  }
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.scope != "groups" && o.scope != "metrics" && o.scope != "sc" && o.scope != "all") {
    err << "error: unknown scope " << o.scope << '\n';
    return kInputError;
  }
  const auto results = verify::run_checks(o.scope, o.perturb);
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  [" << r.scope << "] " << r.name << "  (" << r.detail << ")\n";
    all = all && r.passed;
  }
  out << (all ? "all checks passed" : "verification FAILED") << '\n';
  return all ? kOk : kVerificationFailure;
}

int cmd_sc(const std::string& out_path, int samples, std::ostream& out, std::ostream& err) {
  try {
    Output dest(out_path, out);
    dest.get() << sc::demo_json(samples) << '\n';
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace dessinmetric::cli
