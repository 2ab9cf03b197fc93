#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "harmap/gauss_transform.hpp"
#include "harmap/holomap.hpp"
#include "harmap/paths.hpp"
#include "harmap/quadrature.hpp"
#include "harmap/strata.hpp"

namespace harmap::io {

using Json = nlohmann::ordered_json;

/// Version tag echoed by every document the library writes.
inline constexpr const char* kSchema = "harmap/1";

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

inline const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return a;
}

inline long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<long>();
}

inline std::size_t count(const Json& j, const char* what) {
  const long v = integer(j, what);
  if (v < 0) throw ParseError(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

inline std::string rational_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("rational must be a \"num/den\" string");
}

// Adding 0.0 turns a negative zero into +0 so outputs do not show "-0.0".
inline Json complex_pair(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

/// Shortest decimal text that reads back to the same double.
inline std::string number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x + 0.0);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact values.

inline Json to_json(const GaussianRational& c) {
  return {{"re", GaussianRational::to_fraction_string(c.re())}, {"im", GaussianRational::to_fraction_string(c.im())}};
}

inline GaussianRational scalar_from_json(const Json& j) {
  return GaussianRational::parse(detail::rational_text(detail::field(j, "re")),
                                 detail::rational_text(detail::field(j, "im")));
}

inline Json to_json(const Poly& p) {
  Json c = Json::array();
  for (const auto& x : p.coeffs()) c.push_back(to_json(x));
  return {{"coeffs", std::move(c)}};
}

inline Poly poly_from_json(const Json& j) {
  std::vector<GaussianRational> c;
  for (const Json& x : detail::array_field(j, "coeffs")) c.push_back(scalar_from_json(x));
  return Poly(std::move(c));
}

inline Json triple_to_json(const PolyTriple& p) { return Json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])}); }

inline PolyTriple triple_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("a triple must be an array of three polynomials");
  return {poly_from_json(j[0]), poly_from_json(j[1]), poly_from_json(j[2])};
}

inline Json to_json(const HoloMap& f) { return {{"k", f.degree()}, {"p", triple_to_json(f.components())}}; }

/// Parses and validates a map.  A "k" field, when present, must equal the
/// degree of the triple.
inline HoloMap holomap_from_json(const Json& j) {
  HoloMap f = HoloMap::validate(triple_from_json(detail::field(j, "p")));
  if (j.contains("k") && detail::count(j["k"], "k") != f.degree())
    throw ParseError("declared k = " + std::to_string(detail::count(j["k"], "k")) + " but the triple has degree " +
                     std::to_string(f.degree()));
  return f;
}

inline Json to_json(const Divisor& d) {
  Json roots = Json::array();
  for (const Complex& z : d.roots_approx()) roots.push_back(detail::complex_pair(z));
  return {{"finite", to_json(d.finite_part())}, {"inf", d.infinity_multiplicity()}, {"roots_approx", std::move(roots)}};
}

/// roots_approx is advisory and ignored on input.
inline Divisor divisor_from_json(const Json& j) {
  const Poly finite = poly_from_json(detail::field(j, "finite"));
  if (finite.is_zero()) throw ParseError("divisor polynomial must be nonzero");
  return Divisor(finite, detail::count(detail::field(j, "inf"), "inf"));
}

inline Json to_json(const BiPoly& b) {
  Json terms = Json::array();
  for (const auto& [e, c] : b.terms()) terms.push_back({{"i", e.first}, {"j", e.second}, {"c", to_json(c)}});
  return {{"terms", std::move(terms)}};
}

inline BiPoly bipoly_from_json(const Json& j) {
  BiPoly::Terms terms;
  for (const Json& t : detail::array_field(j, "terms")) {
    const BiPoly::Exponent e{detail::count(detail::field(t, "i"), "i"), detail::count(detail::field(t, "j"), "j")};
    if (!terms.emplace(e, scalar_from_json(detail::field(t, "c"))).second)
      throw ParseError("repeated bi-polynomial exponent");
  }
  return BiPoly(std::move(terms));
}

inline Json to_json(const HarmonicMapRep& phi) {
  Json lift = Json::array();
  for (const auto& b : phi.lift()) lift.push_back(to_json(b));
  return {{"source", to_json(phi.source())},
          {"k", phi.k()},
          {"r", phi.r()},
          {"deg", phi.predicted_degree()},
          {"energy", phi.predicted_energy()},
          {"lift", std::move(lift)}};
}

/// Rebuilds the map from its source and checks every stored field against
/// the reconstruction.
inline HarmonicMapRep harmonic_from_json(const Json& j) {
  HarmonicMapRep phi = gauss_transform(holomap_from_json(detail::field(j, "source")));
  auto expect = [](bool ok, const char* what) {
    if (!ok) throw ParseError(std::string("stored ") + what + " disagrees with the source map");
  };
  expect(detail::count(detail::field(j, "k"), "k") == phi.k(), "k");
  expect(detail::count(detail::field(j, "r"), "r") == phi.r(), "r");
  expect(detail::integer(detail::field(j, "deg"), "deg") == phi.predicted_degree(), "deg");
  expect(detail::integer(detail::field(j, "energy"), "energy") == phi.predicted_energy(), "energy");
  const Json& lift = detail::array_field(j, "lift");
  expect(lift.size() == 3, "lift");
  for (std::size_t i = 0; i < 3; ++i) expect(bipoly_from_json(lift[i]) == phi.lift()[i], "lift");
  return phi;
}

// ---------------------------------------------------------------------------
// Reports.

inline Json ramification_to_json(const RamificationData& ram) {
  return {{"r", ram.index()},
          {"divisor", to_json(ram.divisor)},
          {"curve", {{"degree", ram.curve.degree}, {"q", triple_to_json(ram.curve.q)}}}};
}

inline Json to_json(const QuadratureConfig& c) {
  return {{"resolution", c.resolution},
          {"overlap_radius", c.overlap_radius},
          {"refinement_levels", c.refinement_levels},
          {"exclusion_radius", c.exclusion_radius},
          {"tolerance", c.tolerance}};
}

inline Json to_json(const IntegratedInvariants& in) {
  return {{"e_prime", in.e_prime},
          {"e_doubleprime", in.e_doubleprime},
          {"degree", in.degree},
          {"energy", in.energy},
          {"error_estimate", in.error_estimate},
          {"resolution_used", in.resolution_used},
          {"nodes", in.nodes},
          {"excluded_nodes", in.excluded_nodes}};
}

inline Json to_json(const TensionStudy& t) {
  Json samples = Json::array();
  for (const auto& s : t.samples) samples.push_back({{"h", s.h}, {"residual", s.residual}});
  return {{"samples", std::move(samples)},
          {"orders", t.orders},
          {"final_order", t.final_order()},
          {"evaluation_points", t.evaluation_points},
          {"excluded_points", t.excluded_points}};
}

inline Json to_json(const VerificationReport& r) {
  auto entry = [](double raw, long snapped, long predicted, bool pass) {
    return Json{{"raw", raw}, {"snapped", snapped}, {"predicted", predicted}, {"pass", pass}};
  };
  const auto& in = r.integrals;
  return {{"degree", entry(in.degree, r.snapped_degree, r.predicted_degree, r.pass_degree)},
          {"energy", entry(in.energy, r.snapped_energy, r.predicted_energy, r.pass_energy)},
          {"e_prime", entry(in.e_prime, r.snapped_e_prime, r.predicted_e_prime, r.pass_e_prime)},
          {"e_doubleprime",
           entry(in.e_doubleprime, r.snapped_e_doubleprime, r.predicted_e_doubleprime, r.pass_e_doubleprime)},
          {"quadrature", to_json(in)},
          {"tension", to_json(r.tension)},
          {"tension_pass", r.pass_tension},
          {"tension_order_range", Json::array({kMinTensionOrder, kMaxTensionOrder})},
          {"snap_tolerance", kSnapTolerance},
          {"grid", to_json(r.config)},
          {"passed", r.passed()}};
}

inline Json to_json(const ComponentDescriptor& d) {
  return {{"harmonic_degree", d.harmonic_degree}, {"r", d.r},
          {"energy", d.energy},                   {"complex_dim", d.complex_dim},
          {"source_k", d.source_hol_degree},      {"source_stratum_dim", d.source_stratum_dim},
          {"realizable", d.realizable}};
}

// ---------------------------------------------------------------------------
// Stratum samples.

inline Json to_json(const StratumPoint& pt) {
  return {{"a", to_json(pt.a)},
          {"f", to_json(pt.f)},
          {"r", pt.r()},
          {"divisor", to_json(ramification_data(pt.f).divisor)}};
}

/// Reads a sample record and checks that f lies in Hol_{k,r} with
/// ramification divisor exactly the roots of a.
inline StratumPoint stratum_point_from_json(const Json& j) {
  const Poly a = poly_from_json(detail::field(j, "a"));
  const HoloMap f = holomap_from_json(detail::field(j, "f"));
  if (a.is_zero() || !(a.leading() == GaussianRational(1))) throw ParseError("a must be a monic polynomial");
  if (j.contains("r") && detail::count(j["r"], "r") != a.degree().value())
    throw ParseError("declared r disagrees with deg a");
  if (auto why = stratum_rejection(a, f.components(), f.degree()))
    throw ParseError("record is not a point of Hol_{k,r} with divisor a: " + *why);
  return {a, f, kernel_exact(build_L(a, f[0], f.degree()))};
}

// ---------------------------------------------------------------------------
// Paths.

inline Json float_poly(const CPoly& p, std::size_t length) {
  Json c = Json::array();
  for (const Complex& z : p.padded(length)) c.push_back(detail::complex_pair(z));
  return c;
}

inline Json to_json(const NumericMembership& m) {
  return {{"coprime", m.coprime},
          {"full", m.full},
          {"index_ok", m.index_ok},
          {"zero_ratio", m.zero_ratio},
          {"gap_ratio", m.gap_ratio}};
}

/// Path document: endpoints, every step's float coefficients and flags, and
/// the verification verdicts.
inline Json path_to_json(const StratumPath& path, const PathReport& rep) {
  const std::size_t k = path.k(), r = path.r();
  Json steps = Json::array();
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& s = path.steps[i];
    const auto& v = rep.steps[i];
    Json rec{{"index", i},
             {"t", s.t},
             {"parameter", detail::complex_pair(s.parameter)},
             {"repairs", s.repairs},
             {"a", float_poly(s.a, r + 1)},
             {"p", Json::array({float_poly(s.p[0], k + 1), float_poly(s.p[1], k + 1), float_poly(s.p[2], k + 1)})},
             {"membership", to_json(v.membership)},
             {"continuity_ok", v.continuity_ok}};
    if (v.invariants)
      rec["invariants"] = {{"degree", v.invariants->degree},
                           {"energy", v.invariants->energy},
                           {"error_estimate", v.invariants->error_estimate},
                           {"pass", v.invariants_ok}};
    rec["ok"] = v.ok();
    steps.push_back(std::move(rec));
  }
  return {{"k", k},
          {"r", r},
          {"from", to_json(path.from)},
          {"to", to_json(path.to)},
          {"nominal_step", path.nominal_step},
          {"max_step", rep.max_step},
          {"expected_degree", rep.expected_degree},
          {"expected_energy", rep.expected_energy},
          {"failed_steps", rep.failed_steps},
          {"ok", rep.ok()},
          {"steps", std::move(steps)}};
}

// ---------------------------------------------------------------------------
// CSV exports.

inline std::string table_csv(const std::vector<ComponentDescriptor>& rows) {
  std::ostringstream os;
  os << "# schema " << kSchema << "\n";
  os << "k,r,energy,dim,source_k\n";
  for (const auto& d : rows)
    os << d.harmonic_degree << ',' << d.r << ',' << d.energy << ',' << d.complex_dim << ',' << d.source_hol_degree
       << '\n';
  return os.str();
}

inline std::string residual_csv(const TensionStudy& t) {
  std::ostringstream os;
  os << "# schema " << kSchema << "\n";
  os << "h,residual\n";
  for (const auto& s : t.samples) os << detail::number(s.h) << ',' << detail::number(s.residual) << '\n';
  return os.str();
}

inline std::string path_csv(const StratumPath& path, const PathReport& rep) {
  using detail::number;
  std::ostringstream os;
  os << "# schema " << kSchema << "\n";
  os << "step,t,degree,energy,zero_ratio,gap_ratio,ok\n";
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& v = rep.steps[i];
    os << i << ',' << number(path.steps[i].t) << ',';
    if (v.invariants)
      os << number(v.invariants->degree) << ',' << number(v.invariants->energy);
    else
      os << ',';
    os << ',' << number(v.membership.zero_ratio) << ',' << number(v.membership.gap_ratio) << ',' << (v.ok() ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace harmap::io
