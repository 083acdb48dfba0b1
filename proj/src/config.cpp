#include "oulab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <string>

#include "oulab/reporting.hpp"

namespace oulab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void check_object(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(where + "." + key, "unknown field");
  }
}

double get_double(const json& obj, const std::string& where, const char* key, double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(where + "." + key, "expected a number");
  return v->get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key, int fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(where + "." + key, "expected an integer");
  return v->get<int>();
}

std::string get_string(const json& obj, const std::string& where, const char* key,
                       const std::string& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) fail(where + "." + key, "expected a string");
  return v->get<std::string>();
}

std::vector<int> get_int_list(const json& obj, const std::string& where, const char* key,
                              std::vector<int> fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_array()) fail(where + "." + key, "expected an array of integers");
  std::vector<int> out;
  for (const json& e : *v) {
    if (!e.is_number_integer()) fail(where + "." + key, "expected integers");
    out.push_back(e.get<int>());
  }
  if (out.empty()) fail(where + "." + key, "must not be empty");
  return out;
}

std::vector<double> get_double_list(const json& obj, const std::string& where, const char* key,
                                    std::vector<double> fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_array()) fail(where + "." + key, "expected an array of numbers");
  std::vector<double> out;
  for (const json& e : *v) {
    if (!e.is_number()) fail(where + "." + key, "expected numbers");
    out.push_back(e.get<double>());
  }
  if (out.empty()) fail(where + "." + key, "must not be empty");
  return out;
}

void parse_case_suite(const json* obj, const std::string& where, CaseSuite& suite) {
  if (!obj) return;
  check_object(*obj, where, {"cases", "dimensions", "max_degree", "tolerance"});
  suite.cases = get_int(*obj, where, "cases", suite.cases);
  suite.dimensions = get_int_list(*obj, where, "dimensions", suite.dimensions);
  suite.max_degree = get_int(*obj, where, "max_degree", suite.max_degree);
  suite.tolerance = get_double(*obj, where, "tolerance", suite.tolerance);
  if (suite.cases < 1) fail(where + ".cases", "must be >= 1");
}

void parse_timed_suite(const json* obj, const std::string& where, TimedSuite& suite) {
  if (!obj) return;
  check_object(*obj, where, {"cases", "dimensions", "max_degree", "times", "tolerance"});
  suite.cases = get_int(*obj, where, "cases", suite.cases);
  suite.dimensions = get_int_list(*obj, where, "dimensions", suite.dimensions);
  suite.max_degree = get_int(*obj, where, "max_degree", suite.max_degree);
  suite.times = get_double_list(*obj, where, "times", suite.times);
  suite.tolerance = get_double(*obj, where, "tolerance", suite.tolerance);
  if (suite.cases < 1) fail(where + ".cases", "must be >= 1");
}

std::vector<InitialDensity> parse_preset_list(const json* arr, const std::string& where) {
  if (!arr) return default_preset_set();
  if (!arr->is_array() || arr->empty()) fail(where, "expected a non-empty array");
  std::vector<InitialDensity> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    out.push_back(parse_initial_density((*arr)[i], 1, where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

std::vector<InitialDensity> default_preset_set(int dimension) {
  return {
      {"uniform", preset_uniform(dimension)},
      {"first-chaos(0.01)", preset_first_chaos(dimension, 0.01)},
      {"second-chaos(0.01)", preset_second_chaos(dimension, 0.01)},
      {"mixed(1.5,0.2,0.1)", preset_mixed(dimension, 1.5, 0.2, 0.1)},
  };
}

InitialDensity parse_initial_density(const nlohmann::json& spec, int dimension,
                                     const std::string& where) {
  if (!spec.is_object()) fail(where, "expected an object");
  if (find(spec, "preset") && find(spec, "coefficients")) {
    fail(where, "give either a preset or explicit coefficients, not both");
  }

  if (const json* coeffs = find(spec, "coefficients")) {
    check_object(spec, where, {"coefficients"});
    if (!coeffs->is_array() || coeffs->empty()) {
      fail(where + ".coefficients", "expected a non-empty array");
    }
    ChaosExpansion u(dimension);
    for (std::size_t i = 0; i < coeffs->size(); ++i) {
      const std::string entry_where = where + ".coefficients[" + std::to_string(i) + "]";
      const json& entry = (*coeffs)[i];
      check_object(entry, entry_where, {"index", "value"});
      const json* index = find(entry, "index");
      const json* value = find(entry, "value");
      if (!index || !index->is_array()) fail(entry_where + ".index", "expected an array");
      if (!value || !value->is_number()) fail(entry_where + ".value", "expected a number");
      std::vector<int> exponents;
      for (const json& e : *index) {
        if (!e.is_number_integer() || e.get<int>() < 0) {
          fail(entry_where + ".index", "expected non-negative integers");
        }
        exponents.push_back(e.get<int>());
      }
      if (static_cast<int>(exponents.size()) != dimension) {
        fail(entry_where + ".index", "length must equal the configured dimension");
      }
      u.add_coefficient(MultiIndex(exponents), value->get<double>());
    }
    return {"coefficients", u};
  }

  check_object(spec, where, {"preset", "epsilon", "c0", "c1", "c2"});
  const std::string name = get_string(spec, where, "preset", "");
  if (name.empty()) fail(where, "expected a preset name or coefficients");
  if (name == "uniform") {
    return {"uniform", preset_uniform(dimension)};
  }
  if (name == "first-chaos" || name == "second-chaos") {
    const double eps = get_double(spec, where, "epsilon", 0.01);
    const ChaosExpansion u = name == "first-chaos" ? preset_first_chaos(dimension, eps)
                                                   : preset_second_chaos(dimension, eps);
    return {name + "(" + format_shortest(eps) + ")", u};
  }
  if (name == "mixed") {
    const double c0 = get_double(spec, where, "c0", 1.5);
    const double c1 = get_double(spec, where, "c1", 0.2);
    const double c2 = get_double(spec, where, "c2", 0.1);
    return {"mixed(" + format_shortest(c0) + "," + format_shortest(c1) + "," +
                format_shortest(c2) + ")",
            preset_mixed(dimension, c0, c1, c2)};
  }
  fail(where + ".preset", "unknown preset '" + name + "'");
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path.string() + "': " + e.what());
  }
}

namespace {

void check_root(const json& root) {
  check_object(root, "<root>", {"seed", "tolerance_scale", "out", "verify", "evolve"});
}

std::uint64_t parse_seed(const json& root) {
  const json* v = find(root, "seed");
  if (!v) return kDefaultSeed;
  if (!v->is_number_unsigned() && !v->is_number_integer()) fail("seed", "expected an integer");
  if (v->is_number_integer() && v->get<std::int64_t>() < 0) fail("seed", "must be >= 0");
  return v->get<std::uint64_t>();
}

double parse_tolerance_scale(const json& root) {
  const double scale = get_double(root, "<root>", "tolerance_scale", 1.0);
  if (!(scale > 0.0)) fail("tolerance_scale", "must be positive");
  return scale;
}

}  // namespace

VerifyConfig parse_verify_config(const nlohmann::json& root, long node_budget) {
  check_root(root);
  VerifyConfig cfg;
  cfg.seed = parse_seed(root);
  cfg.tolerance_scale = parse_tolerance_scale(root);
  cfg.node_budget = node_budget;
  cfg.presets = default_preset_set();

  const json* verify = find(root, "verify");
  if (!verify) return cfg;
  check_object(*verify, "verify",
               {"weitzenbock", "bochner_entropy", "integration_by_parts",
                "generator_composition", "semigroup_law", "gradient_commutation",
                "projection_commutation", "mass_invariance", "semigroup_symmetry",
                "backend_agreement", "contraction", "entropy_bound",
                "fisher_right_continuity", "bochner_dt_fd", "presets"});

  parse_case_suite(find(*verify, "weitzenbock"), "verify.weitzenbock", cfg.weitzenbock);
  parse_case_suite(find(*verify, "integration_by_parts"), "verify.integration_by_parts",
                   cfg.integration_by_parts);
  parse_case_suite(find(*verify, "generator_composition"), "verify.generator_composition",
                   cfg.generator_composition);
  parse_timed_suite(find(*verify, "gradient_commutation"), "verify.gradient_commutation",
                    cfg.gradient_commutation);
  parse_timed_suite(find(*verify, "projection_commutation"), "verify.projection_commutation",
                    cfg.projection_commutation);
  parse_timed_suite(find(*verify, "mass_invariance"), "verify.mass_invariance",
                    cfg.mass_invariance);
  parse_timed_suite(find(*verify, "semigroup_symmetry"), "verify.semigroup_symmetry",
                    cfg.semigroup_symmetry);

  if (const json* b = find(*verify, "bochner_entropy")) {
    const std::string where = "verify.bochner_entropy";
    check_object(*b, where,
                 {"cases", "dimensions", "max_degree", "times", "tolerance", "constant_min",
                  "constant_max", "perturbation_sup", "floor"});
    BochnerSuite& s = cfg.bochner_entropy;
    s.cases = get_int(*b, where, "cases", s.cases);
    s.dimensions = get_int_list(*b, where, "dimensions", s.dimensions);
    s.max_degree = get_int(*b, where, "max_degree", s.max_degree);
    s.times = get_double_list(*b, where, "times", s.times);
    s.tolerance = get_double(*b, where, "tolerance", s.tolerance);
    s.constant_min = get_double(*b, where, "constant_min", s.constant_min);
    s.constant_max = get_double(*b, where, "constant_max", s.constant_max);
    s.perturbation_sup = get_double(*b, where, "perturbation_sup", s.perturbation_sup);
    s.floor = get_double(*b, where, "floor", s.floor);
    if (s.cases < 1) fail(where + ".cases", "must be >= 1");
    if (!(s.floor > 0.0)) fail(where + ".floor", "must be positive");
  }

  if (const json* s = find(*verify, "semigroup_law")) {
    const std::string where = "verify.semigroup_law";
    check_object(*s, where, {"cases", "dimensions", "max_degree", "time_pairs", "tolerance"});
    cfg.semigroup_law.cases = get_int(*s, where, "cases", cfg.semigroup_law.cases);
    cfg.semigroup_law.dimensions =
        get_int_list(*s, where, "dimensions", cfg.semigroup_law.dimensions);
    cfg.semigroup_law.max_degree = get_int(*s, where, "max_degree", cfg.semigroup_law.max_degree);
    cfg.semigroup_law.tolerance = get_double(*s, where, "tolerance", cfg.semigroup_law.tolerance);
    if (const json* pairs = find(*s, "time_pairs")) {
      if (!pairs->is_array() || pairs->empty()) fail(where + ".time_pairs", "expected an array");
      cfg.semigroup_law.time_pairs.clear();
      for (const json& p : *pairs) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
          fail(where + ".time_pairs", "expected [s, t] number pairs");
        }
        cfg.semigroup_law.time_pairs.push_back({p[0].get<double>(), p[1].get<double>()});
      }
    }
  }

  if (const json* b = find(*verify, "backend_agreement")) {
    const std::string where = "verify.backend_agreement";
    check_object(*b, where, {"dimensions", "max_degree", "times", "tolerance"});
    cfg.backend_agreement.dimensions =
        get_int_list(*b, where, "dimensions", cfg.backend_agreement.dimensions);
    cfg.backend_agreement.max_degree =
        get_int(*b, where, "max_degree", cfg.backend_agreement.max_degree);
    cfg.backend_agreement.times = get_double_list(*b, where, "times", cfg.backend_agreement.times);
    cfg.backend_agreement.tolerance =
        get_double(*b, where, "tolerance", cfg.backend_agreement.tolerance);
  }

  if (const json* c = find(*verify, "contraction")) {
    const std::string where = "verify.contraction";
    check_object(*c, where, {"ps", "times", "tolerance"});
    cfg.contraction.ps = get_double_list(*c, where, "ps", cfg.contraction.ps);
    cfg.contraction.times = get_double_list(*c, where, "times", cfg.contraction.times);
    cfg.contraction.tolerance = get_double(*c, where, "tolerance", cfg.contraction.tolerance);
  }

  if (const json* e = find(*verify, "entropy_bound")) {
    const std::string where = "verify.entropy_bound";
    check_object(*e, where, {"times", "tolerance", "floor"});
    cfg.entropy_bound.times = get_double_list(*e, where, "times", cfg.entropy_bound.times);
    cfg.entropy_bound.tolerance = get_double(*e, where, "tolerance", cfg.entropy_bound.tolerance);
    cfg.entropy_bound.floor = get_double(*e, where, "floor", cfg.entropy_bound.floor);
  }

  if (const json* r = find(*verify, "fisher_right_continuity")) {
    const std::string where = "verify.fisher_right_continuity";
    check_object(*r, where, {"sample_time", "tolerance", "floor"});
    cfg.fisher_right_continuity.sample_time =
        get_double(*r, where, "sample_time", cfg.fisher_right_continuity.sample_time);
    cfg.fisher_right_continuity.tolerance =
        get_double(*r, where, "tolerance", cfg.fisher_right_continuity.tolerance);
    cfg.fisher_right_continuity.floor =
        get_double(*r, where, "floor", cfg.fisher_right_continuity.floor);
  }

  if (const json* b = find(*verify, "bochner_dt_fd")) {
    const std::string where = "verify.bochner_dt_fd";
    check_object(*b, where, {"cases", "dimensions", "max_degree", "times", "fd_step", "tolerance"});
    BochnerFdSuite& s = cfg.bochner_dt_fd;
    s.cases = get_int(*b, where, "cases", s.cases);
    s.dimensions = get_int_list(*b, where, "dimensions", s.dimensions);
    s.max_degree = get_int(*b, where, "max_degree", s.max_degree);
    s.times = get_double_list(*b, where, "times", s.times);
    s.fd_step = get_double(*b, where, "fd_step", s.fd_step);
    s.tolerance = get_double(*b, where, "tolerance", s.tolerance);
  }

  cfg.presets = parse_preset_list(find(*verify, "presets"), "verify.presets");
  return cfg;
}

EvolveConfig parse_evolve_config(const nlohmann::json& root, long node_budget) {
  check_root(root);
  EvolveConfig cfg;
  cfg.seed = parse_seed(root);
  cfg.tolerance_scale = parse_tolerance_scale(root);
  cfg.experiment.node_budget = node_budget;

  const json* evolve = find(root, "evolve");
  if (evolve) {
    const std::string where = "evolve";
    check_object(*evolve, where,
                 {"dimension", "initial", "floor", "time_grid", "quadrature_order", "tolerances"});
    cfg.experiment.dimension = get_int(*evolve, where, "dimension", cfg.experiment.dimension);
    if (cfg.experiment.dimension < 1) fail(where + ".dimension", "must be >= 1");

    if (const json* initial = find(*evolve, "initial")) {
      InitialDensity density =
          parse_initial_density(*initial, cfg.experiment.dimension, where + ".initial");
      cfg.experiment.initial = density.expansion;
      cfg.experiment.initial_label = density.label;
    } else {
      cfg.experiment.initial = preset_uniform(cfg.experiment.dimension);
      cfg.experiment.initial_label = "uniform";
    }

    cfg.experiment.positivity_floor =
        get_double(*evolve, where, "floor", cfg.experiment.positivity_floor);
    if (!(cfg.experiment.positivity_floor > 0.0)) fail(where + ".floor", "must be positive");

    if (const json* tg = find(*evolve, "time_grid")) {
      const std::string tg_where = where + ".time_grid";
      check_object(*tg, tg_where, {"start", "stop", "count", "spacing"});
      TimeGrid& grid = cfg.experiment.time_grid;
      grid.start = get_double(*tg, tg_where, "start", grid.start);
      grid.stop = get_double(*tg, tg_where, "stop", grid.stop);
      grid.count = get_int(*tg, tg_where, "count", grid.count);
      const std::string spacing = get_string(*tg, tg_where, "spacing", "linear");
      if (spacing == "linear") {
        grid.spacing = TimeGrid::Spacing::linear;
      } else if (spacing == "log") {
        grid.spacing = TimeGrid::Spacing::log;
      } else {
        fail(tg_where + ".spacing", "expected 'linear' or 'log'");
      }
      try {
        grid.validate();
      } catch (const std::invalid_argument& e) {
        fail(tg_where, e.what());
      }
    }

    cfg.experiment.quadrature_order =
        get_int(*evolve, where, "quadrature_order", cfg.experiment.quadrature_order);
    if (cfg.experiment.quadrature_order < 0) fail(where + ".quadrature_order", "must be >= 0");

    if (const json* tol = find(*evolve, "tolerances")) {
      const std::string tol_where = where + ".tolerances";
      check_object(*tol, tol_where,
                   {"mass_drift", "entropy_monotone", "fisher_monotone", "decay_bound_rel",
                    "entropy_production_rel", "interchange_rel", "fd_step"});
      ExperimentTolerances& t = cfg.experiment.tolerances;
      t.mass_drift = get_double(*tol, tol_where, "mass_drift", t.mass_drift);
      t.entropy_monotone = get_double(*tol, tol_where, "entropy_monotone", t.entropy_monotone);
      t.fisher_monotone = get_double(*tol, tol_where, "fisher_monotone", t.fisher_monotone);
      t.decay_bound_rel = get_double(*tol, tol_where, "decay_bound_rel", t.decay_bound_rel);
      t.entropy_production_rel =
          get_double(*tol, tol_where, "entropy_production_rel", t.entropy_production_rel);
      t.interchange_rel = get_double(*tol, tol_where, "interchange_rel", t.interchange_rel);
      t.fd_step = get_double(*tol, tol_where, "fd_step", t.fd_step);
      if (!(t.fd_step > 0.0)) fail(tol_where + ".fd_step", "must be positive");
    }
  } else {
    cfg.experiment.initial = preset_uniform(cfg.experiment.dimension);
    cfg.experiment.initial_label = "uniform";
  }

  try {
    cfg.experiment.validate();
  } catch (const std::invalid_argument& e) {
    fail("evolve", e.what());
  }
  return cfg;
}

std::optional<std::string> config_out_dir(const nlohmann::json& root) {
  const json* v = find(root, "out");
  if (!v) return std::nullopt;
  if (!v->is_string()) fail("out", "expected a string");
  return v->get<std::string>();
}

long node_budget_from_env() {
  const char* raw = std::getenv("OU_LAB_NODE_BUDGET");
  if (!raw) return kDefaultNodeBudget;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value <= 0) {
    throw ConfigError("environment: OU_LAB_NODE_BUDGET must be a positive integer, got '" +
                      std::string(raw) + "'");
  }
  return value;
}

}  // namespace oulab
