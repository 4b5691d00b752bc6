#pragma once

// Command-line driver. Output is JSON (or a flat key = value listing) and
// depends only on the arguments, so equal invocations give equal bytes.
// Exit codes: 0 no defects, 1 defects found, 2 usage or configuration error.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "io.hpp"

namespace pseudochar::cli {

using io::json;

struct RunConfig {
  std::string command;
  std::string ring = "F5";
  std::string group = "S3";
  std::size_t d = 2;
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::string output;
  std::string format = "json";
  std::string rep_file;
  std::string theta_file;
  bool timing = false;

  json to_json() const {
    json j = {{"command", command}, {"seed", seed}};
    if (!ring.empty()) j["ring"] = ring;
    if (!group.empty()) j["group"] = group;
    j["d"] = d;
    j["trials"] = trials;
    if (!rep_file.empty()) j["rep"] = rep_file;
    if (!theta_file.empty()) j["theta"] = theta_file;
    return j;
  }
};

// Configuration problems (bad names, unreadable files): exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// Parse errors inside library constructors (unknown ring or group, bad
// table) are configuration errors.
template <class F>
auto config_step(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

inline Representation load_or_sample_rep(const RunConfig& cfg) {
  if (!cfg.rep_file.empty()) {
    json j = read_json_file(cfg.rep_file);
    if (!j.contains("group")) j["group"] = cfg.group;
    if (!j.contains("ring")) j["ring"] = cfg.ring;
    return config_step([&] { return io::rep_from_json(j); });
  }
  const GroupPtr g = config_step([&] { return builtin_group(cfg.group); });
  const Ring R = config_step([&] { return io::parse_ring(cfg.ring); });
  if (cfg.d < 1 || cfg.d > 4) throw ConfigError("--d must be in 1..4");
  Rng rng(cfg.seed);
  return random_representation(g, R, cfg.d, rng);
}

struct ThetaData {
  GroupPtr group;
  Ring ring;
  std::size_t d;
  std::vector<std::vector<Elem>> theta;
};

// {"group", "ring", "d", "theta": [[theta(1, g) for g], ..., [theta(d, g) for g]]}.
inline ThetaData load_theta(const RunConfig& cfg) {
  const json j = read_json_file(cfg.theta_file);
  return config_step([&] {
    ThetaData t{io::group_from_json(j.value("group", json(cfg.group))), io::ring_from_json(j.value("ring", json(cfg.ring))),
                j.value("d", cfg.d), {}};
    for (const auto& row : j.at("theta")) {
      std::vector<Elem> r;
      for (const auto& x : row) r.push_back(io::elem_from_json(t.ring, x));
      if (r.size() != t.group->order()) throw Error("theta row length differs from the group order");
      t.theta.push_back(std::move(r));
    }
    if (t.theta.size() != t.d) throw Error("theta needs d rows");
    return t;
  });
}

inline void add_verdict(json& out, std::vector<std::string>& defects, const std::string& name, const Verdict& v) {
  out["checks"][name] = io::verdict_to_json(v);
  if (!v.accepted) defects.push_back(name + ": " + v.failure);
}

inline json verify_taylor(const RunConfig& cfg) {
  const Representation rho = load_or_sample_rep(cfg);
  const Ring& R = rho.ring();
  const std::size_t fact = pseudochar::detail::factorial(rho.dim());
  if (!R.is_unit(R.from_int(static_cast<long long>(fact))))
    throw ConfigError("d! = " + std::to_string(fact) + " is not a unit in " + R.name() + "; the Taylor suite needs it invertible");
  json out = {{"rep", io::rep_to_json(rho)}};
  std::vector<std::string> defects;
  const TaylorPC t = taylor_from_rep(rho);
  const CheckMode mode =
      CheckMode::automatic(saturating_pow(rho.group()->order(), rho.dim() + 1), 100000, cfg.seed, std::max<std::size_t>(cfg.trials, 1));
  add_verdict(out, defects, "taylor_identity", is_taylor_pc(t, mode));
  const TaylorPC bridged = taylor_bridge(det_from_rep(rho));
  Verdict bridge;
  for (std::size_t g = 0; g < t.values.size(); ++g) {
    ++bridge.checks;
    if (!R.eq(bridged.values[g], t.values[g]))
      bridge.reject("-Lambda_1 differs from the trace at element " + std::to_string(g), std::vector<int>{static_cast<int>(g)});
  }
  add_verdict(out, defects, "bridge_matches_trace", bridge);
  out["defects"] = defects;
  return out;
}

inline json verify_det(const RunConfig& cfg) {
  const Representation rho = load_or_sample_rep(cfg);
  json out = {{"rep", io::rep_to_json(rho)}};
  std::vector<std::string> defects;
  const Determinant D = det_from_rep(rho);
  add_verdict(out, defects, "multiplicative_homogeneous", check_multiplicative_homogeneous(D, cfg.seed, cfg.trials));
  Verdict lam;
  for (std::size_t g = 0; g < rho.group()->order(); ++g) {
    const CharPoly cp = charpoly(rho.image(static_cast<int>(g)));
    for (std::size_t k = 1; k <= rho.dim(); ++k) {
      ++lam.checks;
      if (lambda_of_word(D, Word{static_cast<int>(g)}, k) != cp.lambdas[k])
        lam.reject("Lambda_" + std::to_string(k) + " differs from the charpoly at element " + std::to_string(g),
                   std::vector<int>{static_cast<int>(g)});
    }
  }
  add_verdict(out, defects, "lambda_matches_charpoly", lam);
  Verdict agree;
  if (auto bad = compare_determinants(alpha(lpc_from_rep(rho)), D, rho.ring(), cfg.seed, cfg.trials, agree.checks))
    agree.reject(*bad);
  add_verdict(out, defects, "alpha_agreement", agree);
  out["defects"] = defects;
  return out;
}

inline json verify_lpc(const RunConfig& cfg) {
  json out;
  std::vector<std::string> defects;
  std::vector<std::pair<std::string, LafforguePC>> pcs;
  if (!cfg.theta_file.empty()) {
    const ThetaData t = load_theta(cfg);
    try {
      pcs.emplace_back("theta", lpc_from_theta(t.group, t.ring, t.d, t.theta));
    } catch (const Error& e) {
      defects.push_back(std::string("invalid theta data: ") + e.what());
    }
  } else {
    const Representation rho = load_or_sample_rep(cfg);
    out["rep"] = io::rep_to_json(rho);
    pcs.emplace_back("rep", lpc_from_rep(rho));
    pcs.emplace_back("harvested", alpha_inverse(det_from_rep(rho)));
  }
  for (const auto& [name, pc] : pcs) {
    add_verdict(out, defects, name + ".lpc1", check_lpc1(pc, cfg.seed, cfg.trials));
    add_verdict(out, defects, name + ".lpc2", check_lpc2(pc, cfg.seed, cfg.trials));
  }
  out["defects"] = defects;
  return out;
}

inline json verify_roundtrip(const RunConfig& cfg) {
  ConversionReport rep;
  json out;
  if (!cfg.theta_file.empty()) {
    const ThetaData t = load_theta(cfg);
    rep = roundtrip_check(t.group, t.ring, t.d, t.theta, cfg.seed, cfg.trials);
  } else {
    const Representation rho = load_or_sample_rep(cfg);
    out["rep"] = io::rep_to_json(rho);
    rep = roundtrip_check(rho, cfg.seed, cfg.trials);
  }
  out["report"] = io::report_to_json(rep, cfg.timing);
  out["defects"] = rep.defects;
  if (rep.partial && rep.defects.empty()) out["defects"].push_back("partial run");
  return out;
}

inline json fingerprint(const RunConfig& cfg) {
  if (cfg.rep_file.empty()) throw ConfigError("fingerprint needs --rep <file>");
  const Representation rho = load_or_sample_rep(cfg);
  const Determinant D = det_from_rep(rho);
  return {{"group", rho.group()->name()},
          {"ring", rho.ring().name()},
          {"d", rho.dim()},
          {"theta", io::theta_to_json(harvest_theta(D), rho.ring())},
          {"defects", json::array()}};
}

inline json table(const RunConfig& cfg, std::size_t d, std::size_t n, bool emit, const std::string& check_file) {
  if (emit == !check_file.empty()) throw ConfigError("table needs exactly one of --emit or --check <file>");
  if (emit) {
    if (d < 1 || d > 3 || n < 1 || n > 3) throw ConfigError("tables exist for 1 <= d, n <= 3");
    json out = io::table_to_json(amitsur_table(d, n));
    out["defects"] = json::array();
    return out;
  }
  const json j = read_json_file(check_file);
  const ExpansionTable t = config_step([&] { return io::table_from_json(j); });
  json out = {{"d", t.d}, {"n", t.n}};
  std::vector<std::string> defects;
  add_verdict(out, defects, "table", verify_table(t, cfg.trials == 0 ? 100 : std::min<std::size_t>(cfg.trials, 100), cfg.seed));
  out["defects"] = defects;
  return out;
}

inline json demo_char_p(const RunConfig& cfg) {
  const CharPDemo demo = char_p_separation_demo();
  auto side = [](const SeparationData& s) { return json{{"traces", s.traces}, {"theta2", s.theta2}}; };
  return {{"report", io::report_to_json(demo.report, cfg.timing)},
          {"traces_equal", demo.traces_equal},
          {"determinants_equal", demo.determinants_equal},
          {"semisimple", demo.semisimple},
          {"conjugate", demo.conjugate},
          {"rho1", side(demo.first)},
          {"rho2", side(demo.second)},
          {"control", {{"ring", "F5"}, {"group", "cyclic(2)"}, {"traces_equal", demo.control_traces_equal},
                       {"rho1", side(demo.control_first)}, {"rho2", side(demo.control_second)}}},
          {"defects", demo.report.defects}};
}

inline json census(const RunConfig& cfg, std::uint64_t q, std::uint64_t budget) {
  const GroupPtr g = config_step([&] { return builtin_group(cfg.group); });
  const ConversionReport rep = config_step([&] { return semisimple_bijection_check(g, q, cfg.d, budget); });
  json out = {{"report", io::report_to_json(rep, cfg.timing)}, {"defects", rep.defects}};
  return out;
}

// Flat "key = value" lines for --format table.
inline void render_flat(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_flat(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_flat(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << " = " << j.dump() << "\n";
  }
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"pseudochar: pseudocharacters, determinants and Lafforgue pseudocharacters"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::size_t table_d = 2, table_n = 2;
  bool emit = false;
  std::string check_file;
  std::uint64_t q = 0, budget = 4000000;

  auto common = [&](CLI::App* sub, bool with_rep) {
    sub->add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--output,-o", cfg.output, "write the result to this file instead of stdout");
    sub->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    sub->add_flag("--timing", cfg.timing, "include elapsed_ms (output then varies between runs)");
    if (with_rep) {
      sub->add_option("--group", cfg.group, "group name, e.g. S3, cyclic(4), klein4")->capture_default_str();
      sub->add_option("--ring", cfg.ring, "ring name, e.g. Z, Z/4, F5, F4, Z[t]")->capture_default_str();
      sub->add_option("--d", cfg.d, "dimension")->capture_default_str();
      sub->add_option("--trials", cfg.trials, "seeded samples per check")->capture_default_str();
      sub->add_option("--rep", cfg.rep_file, "representation JSON {group, ring, images}");
    }
  };

  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->require_subcommand(1);
  std::map<std::string, CLI::App*> suites;
  for (const char* name : {"taylor", "det", "lpc", "roundtrip"}) {
    CLI::App* s = verify->add_subcommand(name);
    common(s, true);
    if (std::string(name) == "lpc" || std::string(name) == "roundtrip")
      s->add_option("--theta", cfg.theta_file, "theta data JSON {group, ring, d, theta}");
    suites[name] = s;
  }
  CLI::App* fp = app.add_subcommand("fingerprint", "theta tables of a representation");
  common(fp, true);
  CLI::App* tab = app.add_subcommand("table", "expansion tables");
  common(tab, false);
  tab->add_option("--d", table_d, "dimension")->capture_default_str();
  tab->add_option("--n", table_n, "number of letters")->capture_default_str();
  tab->add_option("--trials", cfg.trials, "random specializations per ring (at most 100)")->capture_default_str();
  tab->add_flag("--emit", emit, "compute, verify and print the table");
  tab->add_option("--check", check_file, "verify a table file");
  CLI::App* demo = app.add_subcommand("demo", "demonstrations");
  demo->require_subcommand(1);
  CLI::App* charp = demo->add_subcommand("char-p", "trace vs determinant in characteristic 2");
  common(charp, false);
  CLI::App* cen = app.add_subcommand("census", "semisimple reps into GL_2(F_q) against fingerprints");
  common(cen, false);
  cen->add_option("--group", cfg.group, "group name")->required();
  cen->add_option("--q", q, "field size")->required();
  cen->add_option("--d", cfg.d, "dimension (2 only)")->capture_default_str();
  cen->add_option("--budget", budget, "maximum generator assignments")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  json result;
  try {
    for (const auto& problem : io::load_table_cache_from_env()) err << "table cache: " << problem << "\n";
    if (verify->parsed()) {
      for (const auto& [name, s] : suites)
        if (s->parsed()) cfg.command = "verify " + name;
      if (cfg.command == "verify taylor") result = detail::verify_taylor(cfg);
      else if (cfg.command == "verify det") result = detail::verify_det(cfg);
      else if (cfg.command == "verify lpc") result = detail::verify_lpc(cfg);
      else result = detail::verify_roundtrip(cfg);
    } else if (fp->parsed()) {
      cfg.command = "fingerprint";
      result = detail::fingerprint(cfg);
    } else if (tab->parsed()) {
      cfg.command = "table";
      cfg.group.clear();
      cfg.ring.clear();
      cfg.d = table_d;
      result = detail::table(cfg, table_d, table_n, emit, check_file);
    } else if (charp->parsed()) {
      cfg.command = "demo char-p";
      cfg.group = "cyclic(3)";
      cfg.ring = "F4";
      result = detail::demo_char_p(cfg);
    } else {
      cfg.command = "census";
      cfg.ring = "F" + std::to_string(q);
      result = detail::census(cfg, q, budget);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  result["config"] = cfg.to_json();
  result["ok"] = result["defects"].empty();

  std::ostringstream text;
  if (cfg.format == "table") detail::render_flat(result, "", text);
  else text << result.dump(2) << "\n";
  if (cfg.output.empty()) {
    out << text.str();
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "error: cannot write " << cfg.output << "\n";
      return 2;
    }
    f << text.str();
  }
  return result["defects"].empty() ? 0 : 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"pseudochar"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pseudochar::cli
