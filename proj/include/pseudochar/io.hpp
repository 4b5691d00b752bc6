#pragma once

// JSON forms of rings, values, representations, Donkin expressions,
// expansion tables, verdicts and reports (nlohmann::json).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>

#include <json.hpp>

#include "correspondence.hpp"

namespace pseudochar::io {

using json = nlohmann::json;

// "Z", "Q", "Z/n", "Fq" (q a prime power), each optionally followed by
// polynomial variables: "Z[t]", "F5[s,t]", "Z[t][u]".
inline Ring parse_ring(const std::string& name) {
  static const std::regex base_re(R"(^(Z/(\d+)|Z|Q|F(\d+)))");
  static const std::regex vars_re(R"(^\[([A-Za-z][A-Za-z0-9_]*(,[A-Za-z][A-Za-z0-9_]*)*)\])");
  const std::string catalog = "valid rings: Z, Q, Z/n (n >= 2), Fq (q a prime power), any of these followed by [vars]";
  std::smatch m;
  if (!std::regex_search(name, m, base_re)) throw Error("unknown ring '" + name + "'; " + catalog);
  Ring R = Ring::integers();
  try {
    if (m[1] == "Z") R = Ring::integers();
    else if (m[1] == "Q") R = Ring::rationals();
    else if (m[2].matched) R = Ring::integers_mod(std::stoull(m[2]));
    else R = Ring::finite_field(std::stoull(m[3]));
  } catch (const std::exception& e) {
    throw Error("unknown ring '" + name + "': " + e.what() + "; " + catalog);
  }
  std::string rest = m.suffix();
  while (!rest.empty()) {
    std::smatch v;
    if (!std::regex_search(rest, v, vars_re)) throw Error("unknown ring '" + name + "'; " + catalog);
    std::vector<std::string> vars;
    std::stringstream ss(v[1].str());
    for (std::string x; std::getline(ss, x, ',');) vars.push_back(x);
    R = Ring::polynomial(R, vars);
    rest = v.suffix();
  }
  return R;
}

// {"kind": "Integers" | "Rationals" | "IntegersMod" | "PrimeField" |
// "ExtensionField" | "PolynomialRing", ...}.
inline json ring_to_json(const Ring& R) {
  switch (R.kind()) {
    case RingKind::Integers: return {{"kind", "Integers"}};
    case RingKind::Rationals: return {{"kind", "Rationals"}};
    case RingKind::IntegersMod: return {{"kind", "IntegersMod"}, {"n", R.modulus()}};
    case RingKind::PrimeField: return {{"kind", "PrimeField"}, {"p", R.modulus()}};
    case RingKind::ExtensionField: return {{"kind", "ExtensionField"}, {"p", R.modulus()}, {"modulus", R.ext_modulus()}};
    case RingKind::PolynomialRing: return {{"kind", "PolynomialRing"}, {"base", ring_to_json(R.base())}, {"variables", R.variables()}};
  }
  return nullptr;
}

// A name as accepted by parse_ring, or the object form.
inline Ring ring_from_json(const json& j) {
  if (j.is_string()) return parse_ring(j.get<std::string>());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Integers") return Ring::integers();
  if (kind == "Rationals") return Ring::rationals();
  if (kind == "IntegersMod") return Ring::integers_mod(j.at("n").get<std::uint64_t>());
  if (kind == "PrimeField") return Ring::prime_field(j.at("p").get<std::uint64_t>());
  if (kind == "ExtensionField")
    return Ring::extension_field(j.at("p").get<std::uint64_t>(), j.at("modulus").get<std::vector<std::uint64_t>>());
  if (kind == "PolynomialRing")
    return Ring::polynomial(ring_from_json(j.at("base")), j.at("variables").get<std::vector<std::string>>());
  throw Error("unknown ring kind '" + kind + "'");
}

namespace detail {

inline json big(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

inline BigInt parse_big(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw Error("expected an integer, got " + j.dump());
}

}  // namespace detail

// Integers and residues as numbers (strings beyond 64 bits), rationals as
// "a/b", F_q elements as coefficient arrays, polynomials as
// [[coef, [exponents]], ...].
inline json elem_to_json(const Ring& R, const Elem& e) {
  switch (R.kind()) {
    case RingKind::Integers: return detail::big(std::get<BigInt>(e));
    case RingKind::Rationals: {
      const auto& q = std::get<BigRational>(e);
      if (boost::multiprecision::denominator(q) == 1) return detail::big(BigInt(boost::multiprecision::numerator(q)));
      return R.to_string(e);
    }
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return std::get<Residue>(e).v;
    case RingKind::ExtensionField: return std::get<FqElem>(e).c;
    case RingKind::PolynomialRing: {
      json out = json::array();
      const Ring b = R.base();
      for (const auto& t : Ring::terms_of(e)) out.push_back(json::array({elem_to_json(b, t.coef), t.exps}));
      return out;
    }
  }
  return nullptr;
}

inline Elem elem_from_json(const Ring& R, const json& j) {
  switch (R.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return R.from_int(detail::parse_big(j));
    case RingKind::Rationals: {
      if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
          const BigInt den(s.substr(slash + 1));
          if (den == 0) throw Error("zero denominator in " + s);
          return R.from_rational(BigRational(BigInt(s.substr(0, slash)), den));
        }
      }
      return R.from_int(detail::parse_big(j));
    }
    case RingKind::ExtensionField: {
      if (!j.is_array()) return R.from_int(detail::parse_big(j));
      return R.fq(j.get<std::vector<std::uint64_t>>());
    }
    case RingKind::PolynomialRing: {
      const Ring b = R.base();
      if (!j.is_array() || (!j.empty() && !j[0].is_array())) return R.constant(elem_from_json(b, j));
      std::vector<PolyTerm> terms;
      for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw Error("polynomial term must be [coef, [exponents]]");
        auto exps = t[1].get<Monomial>();
        if (exps.size() != R.nvars()) throw Error("exponent vector length differs from the variable count");
        terms.push_back({std::move(exps), elem_from_json(b, t[0])});
      }
      return R.make_poly(std::move(terms));
    }
  }
  throw Error("unsupported ring");
}

inline json matrix_to_json(const SquareMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(elem_to_json(m.ring(), m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline SquareMatrix matrix_from_json(const Ring& R, const json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix must be a non-empty array of rows");
  const std::size_t d = j.size();
  SquareMatrix m(R, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!j[i].is_array() || j[i].size() != d) throw Error("matrix must be square");
    for (std::size_t k = 0; k < d; ++k) m.set(i, k, elem_from_json(R, j[i][k]));
  }
  return m;
}

// A catalog name, or {"name": ..., "order": n, "table": [[row], ...]}
// (a flat list of n*n entries is accepted too).
inline GroupPtr group_from_json(const json& j) {
  if (j.is_string()) return builtin_group(j.get<std::string>());
  const std::size_t n = j.at("order").get<std::size_t>();
  std::vector<int> table;
  for (const auto& x : j.at("table")) {
    if (x.is_array()) {
      if (x.size() != n) throw Error("group table row length differs from the order");
      for (const auto& y : x) table.push_back(y.get<int>());
    } else {
      table.push_back(x.get<int>());
    }
  }
  return std::make_shared<const FiniteGroup>(j.value("name", std::string("table")), n, std::move(table));
}

inline json group_to_json(const FiniteGroup& g) {
  std::vector<std::vector<int>> table(g.order());
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) table[a].push_back(g.mul(static_cast<int>(a), static_cast<int>(b)));
  return {{"name", g.name()}, {"order", g.order()}, {"table", table}};
}

// {"group": ..., "ring": "F5", "images": [one matrix per element]} or
// "generator_images" in the order of group->generators().
inline Representation rep_from_json(const json& j) {
  const GroupPtr g = group_from_json(j.at("group"));
  const Ring R = ring_from_json(j.at("ring"));
  std::vector<SquareMatrix> imgs;
  if (j.contains("images")) {
    for (const auto& m : j.at("images")) imgs.push_back(matrix_from_json(R, m));
    return Representation(g, std::move(imgs));
  }
  for (const auto& m : j.at("generator_images")) imgs.push_back(matrix_from_json(R, m));
  return Representation::from_generators(g, g->generators(), imgs);
}

inline json rep_to_json(const Representation& rho) {
  json imgs = json::array();
  for (const auto& m : rho.images()) imgs.push_back(matrix_to_json(m));
  return {{"group", rho.group()->name()}, {"ring", rho.ring().name()}, {"images", imgs}};
}

// ["L", k, [letters, 1-based]] or ["Dinv", slot].
inline json donkin_gen_to_json(const DonkinGen& g) {
  if (g.kind == DonkinGen::Kind::DetInv) return json::array({"Dinv", g.slot + 1});
  std::vector<int> w;
  for (int l : g.word) w.push_back(l + 1);
  return json::array({"L", g.k, w});
}

inline DonkinGen donkin_gen_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("bad Donkin generator " + j.dump());
  const std::string tag = j[0].get<std::string>();
  if (tag == "Dinv" && j.size() == 2) return DonkinGen::det_inv(j[1].get<int>() - 1);
  if (tag == "L" && j.size() == 3) {
    Word w;
    for (int l : j[2].get<std::vector<int>>()) w.push_back(l - 1);
    return DonkinGen::lambda(j[1].get<int>(), w);
  }
  throw Error("bad Donkin generator " + j.dump());
}

// [[coef, gen, gen, ...], ...]; on input [coef, [gen, ...]] is accepted too.
inline json donkin_terms_to_json(const DonkinExpression& e) {
  json out = json::array();
  for (const auto& [m, c] : e.terms()) {
    json t = json::array({detail::big(c)});
    for (const auto& g : m) t.push_back(donkin_gen_to_json(g));
    out.push_back(t);
  }
  return out;
}

inline DonkinExpression donkin_terms_from_json(std::size_t n, const json& j) {
  DonkinExpression e(n);
  for (const auto& t : j) {
    if (!t.is_array() || t.empty()) throw Error("bad Donkin term " + t.dump());
    DonkinMonomial m;
    const bool nested = t.size() == 2 && t[1].is_array() && (t[1].empty() || t[1][0].is_array());
    if (nested) {
      for (const auto& g : t[1]) m.push_back(donkin_gen_from_json(g));
    } else {
      for (std::size_t i = 1; i < t.size(); ++i) m.push_back(donkin_gen_from_json(t[i]));
    }
    e.add_term(std::move(m), detail::parse_big(t[0]));
  }
  return e;
}

inline json expression_to_json(const DonkinExpression& e) { return {{"n", e.arity()}, {"terms", donkin_terms_to_json(e)}}; }

inline DonkinExpression expression_from_json(const json& j) {
  return donkin_terms_from_json(j.at("n").get<std::size_t>(), j.at("terms"));
}

inline json table_to_json(const ExpansionTable& t) {
  json coeffs = json::object();
  for (const auto& [alpha, e] : t.coefficients) coeffs[multidegree_name(alpha)] = donkin_terms_to_json(e);
  return {{"d", t.d}, {"n", t.n}, {"coefficients", coeffs}};
}

inline ExpansionTable table_from_json(const json& j) {
  ExpansionTable t;
  t.d = j.at("d").get<std::size_t>();
  t.n = j.at("n").get<std::size_t>();
  for (const auto& [key, terms] : j.at("coefficients").items())
    t.coefficients[parse_multidegree(key, t.n)] = donkin_terms_from_json(t.n, terms);
  for (const auto& alpha : multidegrees(t.d, t.n))
    if (!t.coefficients.count(alpha)) t.coefficients[alpha] = DonkinExpression(t.n);
  return t;
}

inline std::string table_file_name(std::size_t d, std::size_t n) {
  return "table_d" + std::to_string(d) + "_n" + std::to_string(n) + ".json";
}

// Installs every table_d*_n*.json found in `dir`; each is re-verified, and a
// file that fails is reported rather than installed.
inline std::vector<std::string> load_table_cache(const std::filesystem::path& dir) {
  std::vector<std::string> problems;
  if (!std::filesystem::is_directory(dir)) return {"table cache " + dir.string() + " is not a directory"};
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (std::regex_match(entry.path().filename().string(), std::regex(R"(table_d\d+_n\d+\.json)"))) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      std::ifstream in(f);
      Verdict v = install_amitsur_table(table_from_json(json::parse(in)));
      if (!v.accepted) problems.push_back(f.filename().string() + ": " + v.failure);
    } catch (const std::exception& e) {
      problems.push_back(f.filename().string() + ": " + e.what());
    }
  }
  return problems;
}

inline std::vector<std::string> load_table_cache_from_env() {
  const char* dir = std::getenv("PSEUDOCHAR_TABLE_CACHE");
  if (!dir || !*dir) return {};
  return load_table_cache(dir);
}

inline json verdict_to_json(const Verdict& v) {
  json j = {{"accepted", v.accepted}, {"checks", v.checks}};
  if (!v.failure.empty()) j["failure"] = v.failure;
  if (v.witness) j["witness"] = *v.witness;
  if (!v.precondition_failures.empty()) j["precondition_failures"] = v.precondition_failures;
  return j;
}

// Elapsed time is left out unless asked for, so equal runs give equal bytes.
inline json report_to_json(const ConversionReport& r, bool timing = false) {
  json j = {{"direction", r.direction}, {"inputs", r.inputs}, {"counts", r.counts},
            {"defects", r.defects},     {"ok", r.ok()},       {"partial", r.partial}};
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

// theta(k, gamma) as printed ring elements, k = 1..d.
inline json theta_to_json(const std::vector<std::vector<Elem>>& theta, const Ring& R) {
  json out = json::array();
  for (const auto& row : theta) {
    json r = json::array();
    for (const auto& e : row) r.push_back(R.to_string(e));
    out.push_back(r);
  }
  return out;
}

}  // namespace pseudochar::io
