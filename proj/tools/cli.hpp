#pragma once

#include <cstdint>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "harmap/harmap.hpp"

namespace harmap::cli {

using io::Json;

namespace detail {

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

/// Document header shared by every JSON output.
inline Json document(const char* command) { return {{"schema", io::kSchema}, {"command", command}}; }

inline void merge(Json& doc, const Json& body) {
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
}

/// Errors that mean the input itself is unusable.
inline bool is_input_error(const Error& e) {
  return e.kind() == "ParseError" || e.kind() == "NotAMap" || e.kind() == "PreconditionError";
}

inline void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  Json j{{"schema", io::kSchema}, {"error", kind}, {"message", message}};
  err << j.dump() << '\n';
}

struct Check {
  std::string name;
  bool passed;
};

/// Exact identities over a fixed map list plus seeded stratum samples, and
/// the integer bookkeeping of the component table.
inline std::vector<Check> selftest_checks() {
  std::vector<HoloMap> maps;
  auto z = [](std::initializer_list<long> c) {
    std::vector<GaussianRational> v;
    for (long x : c) v.emplace_back(x);
    return Poly(std::move(v));
  };
  maps.push_back(HoloMap::validate({z({1}), z({0, 1}), z({0, 0, 1})}));
  maps.push_back(HoloMap::validate({z({1}), z({0, 1}), z({0, 0, 0, 1})}));
  maps.push_back(HoloMap::validate({z({1}), z({0, 0, 1}), z({0, 0, 0, 0, 1})}));
  maps.push_back(HoloMap::validate({z({1, 0, 0, 1}), z({0, 0, 1}), z({0, 0, 0, 1})}));
  const std::pair<std::size_t, std::size_t> strata[] = {{3, 0}, {3, 1}, {4, 1}, {4, 2}, {5, 3}};
  for (const auto& [k, r] : strata)
    for (std::uint64_t s = 0; s < 4; ++s) maps.push_back(sample_stratum(k, r, s).f);

  std::vector<Check> checks;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const HoloMap& f = maps[i];
    const HarmonicMapRep phi = gauss_transform(f);
    const std::string tag = "map " + std::to_string(i) + " (k=" + std::to_string(phi.k()) +
                            ", r=" + std::to_string(phi.r()) + ")";
    checks.push_back({tag + " dependency identity", dependency_identity_check(f)});
    checks.push_back({tag + " orthogonality", orthogonality_defect(phi.lift(), f.components()).is_zero()});
    checks.push_back({tag + " plane containment", plane_defect(phi.lift(), wedge_curve(f)).is_zero()});
    const auto d = phi.component();
    const bool formulas = d.energy == phi.predicted_energy() &&
                          phi.predicted_e_prime() + phi.predicted_e_doubleprime() == phi.predicted_energy() &&
                          phi.predicted_e_prime() - phi.predicted_e_doubleprime() == phi.predicted_degree() &&
                          static_cast<std::size_t>(d.source_hol_degree) == phi.k() &&
                          phi.ramification().curve.degree == static_cast<std::size_t>(phi.predicted_e_prime());
    checks.push_back({tag + " formula consistency", formulas});
  }
  bool table_ok = true;
  for (const auto& d : component_table(3, 3)) {
    const long a = std::labs(d.harmonic_degree), k = d.source_hol_degree;
    table_ok = table_ok && d.energy == 3 * a + 2 * d.r + 4 && d.complex_dim == 3 * a + d.r + 8 &&
               k == a + d.r + 2 && d.energy == 3 * k - 2 - d.r && d.complex_dim == 3 * k - 2 * d.r + 2;
  }
  checks.push_back({"component table cross-consistency", table_ok});
  return checks;
}

}  // namespace detail

/// Runs the command line `args` (program name first).  Output documents go to
/// `out`; typed errors go to `err` as JSON.  Returns 0 on success, 1 for
/// invalid input, 2 for a computation failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic maps S^2 -> CP^2 from holomorphic triples", "harmap"};
  app.require_subcommand(1);

  std::string file, from_file, to_file, csv_file;
  std::size_t grid = QuadratureConfig{}.resolution, count = 1, steps = 50, stride = 10;
  std::size_t k = 0, r = 0;
  long max_k = 0, max_r = 0;
  std::uint64_t seed = 0;
  bool holomorphic = false;

  auto* construct = app.add_subcommand("construct", "Gauss transform of a holomorphic map");
  construct->add_option("-f,--file", file, "HoloMap JSON")->required();

  auto* ramify = app.add_subcommand("ramify", "Ramification divisor, index and associated curve");
  ramify->add_option("-f,--file", file, "HoloMap JSON")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Quadrature and harmonicity checks");
  verify_cmd->add_option("-f,--file", file, "HoloMap JSON")->required();
  verify_cmd->add_option("--grid", grid, "Initial radial resolution per chart")->check(CLI::Range(16, 4096));
  verify_cmd->add_option("--residual-csv", csv_file, "Write residual-vs-h CSV here");
  verify_cmd->add_flag("--holomorphic", holomorphic, "Verify the holomorphic map itself instead of its transform");

  auto* sample = app.add_subcommand("sample", "Seeded points of Hol_{k,r}");
  sample->add_option("-k", k, "Degree")->required();
  sample->add_option("-r", r, "Ramification index")->required();
  sample->add_option("--count", count, "Number of samples")->check(CLI::Range(1, 100000));
  sample->add_option("--seed", seed, "Seed")->required();

  auto* table = app.add_subcommand("table", "Component table as CSV");
  table->add_option("--max-k", max_k, "Largest |k'|")->required()->check(CLI::Range(0, 1000));
  table->add_option("--max-r", max_r, "Largest r")->required()->check(CLI::Range(0, 1000));

  auto* path_cmd = app.add_subcommand("path", "Path between two points of one stratum");
  path_cmd->add_option("--from", from_file, "Sample record JSON")->required();
  path_cmd->add_option("--to", to_file, "Sample record JSON")->required();
  path_cmd->add_option("--steps", steps, "Number of steps")->check(CLI::Range(1, 100000));
  path_cmd->add_option("--seed", seed, "Seed for step repairs");
  path_cmd->add_option("--quadrature-stride", stride, "Integrate every n-th step (0 disables)");
  path_cmd->add_option("--csv", csv_file, "Write invariant-vs-step CSV here");

  auto* selftest = app.add_subcommand("selftest", "Exact identity suite");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (construct->parsed()) {
      const auto phi = gauss_transform(io::holomap_from_json(detail::read_json(file)));
      Json doc = detail::document("construct");
      detail::merge(doc, io::to_json(phi));
      out << doc.dump(2) << '\n';
    } else if (ramify->parsed()) {
      const HoloMap f = io::holomap_from_json(detail::read_json(file));
      Json doc = detail::document("ramify");
      doc["map"] = io::to_json(f);
      detail::merge(doc, io::ramification_to_json(ramification_data(f)));
      out << doc.dump(2) << '\n';
    } else if (verify_cmd->parsed()) {
      const HoloMap f = io::holomap_from_json(detail::read_json(file));
      QuadratureConfig cfg;
      cfg.resolution = grid;
      const VerificationReport rep = holomorphic ? verify_holomorphic(f, cfg) : verify(gauss_transform(f), cfg);
      Json doc = detail::document("verify");
      doc["map"] = io::to_json(f);
      doc["target"] = holomorphic ? "holomorphic" : "gauss_transform";
      detail::merge(doc, io::to_json(rep));
      out << doc.dump(2) << '\n';
      if (!csv_file.empty()) detail::write_text(csv_file, io::residual_csv(rep.tension));
      if (!rep.passed()) {
        detail::report_error(err, "VerificationFailure", "numerical invariants disagree with the predicted integers");
        return 2;
      }
    } else if (sample->parsed()) {
      Json doc = detail::document("sample");
      doc["k"] = k;
      doc["r"] = r;
      doc["seed"] = seed;
      Json records = Json::array();
      for (std::size_t i = 0; i < count; ++i) records.push_back(io::to_json(sample_stratum(k, r, seed + i)));
      doc["samples"] = std::move(records);
      out << doc.dump(2) << '\n';
    } else if (table->parsed()) {
      out << io::table_csv(component_table(max_k, max_r));
    } else if (path_cmd->parsed()) {
      const StratumPoint a = io::stratum_point_from_json(detail::read_json(from_file));
      const StratumPoint b = io::stratum_point_from_json(detail::read_json(to_file));
      PathConfig cfg;
      cfg.seed = seed;
      const StratumPath path = connect(a, b, steps, cfg);
      const PathReport rep = verify_path(path, stride);
      Json doc = detail::document("path");
      doc["seed"] = seed;
      detail::merge(doc, io::path_to_json(path, rep));
      out << doc.dump(2) << '\n';
      if (!csv_file.empty()) detail::write_text(csv_file, io::path_csv(path, rep));
      if (!rep.ok()) {
        detail::report_error(err, "PathFailure",
                             std::to_string(rep.failed_steps.size()) + " steps failed verification");
        return 2;
      }
    } else if (selftest->parsed()) {
      const auto checks = detail::selftest_checks();
      Json doc = detail::document("selftest");
      Json list = Json::array();
      bool all = true;
      for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"passed", c.passed}});
        all = all && c.passed;
      }
      doc["checks"] = std::move(list);
      doc["passed"] = all;
      out << doc.dump(2) << '\n';
      if (!all) {
        detail::report_error(err, "SelftestFailure", "an exact identity failed");
        return 2;
      }
    }
  } catch (const Error& e) {
    detail::report_error(err, e.kind(), e.what());
    return detail::is_input_error(e) ? 1 : 2;
  } catch (const std::exception& e) {
    detail::report_error(err, "InternalError", e.what());
    return 2;
  }
  return 0;
}

}  // namespace harmap::cli
