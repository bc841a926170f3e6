// Named access to algorithm settings, for config files and parameter sweeps.
#ifndef EAGLE_CONFIG_HPP
#define EAGLE_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "harness.hpp"

namespace eagle {

struct Parameter
{
  std::string name;
  std::function<double(const AlgorithmSettings&)> get;
  std::function<void(AlgorithmSettings&, double)> set;
};

namespace detail {

template <class Access>
Parameter numeric_parameter(std::string name, Access access)
{
  Parameter p;
  p.name = name;
  p.get = [access](const AlgorithmSettings& s) {
    return static_cast<double>(access(const_cast<AlgorithmSettings&>(s)));
  };
  p.set = [access, name](AlgorithmSettings& s, double v) {
    auto& field = access(s);
    using T = std::remove_reference_t<decltype(field)>;
    if constexpr (std::is_integral_v<T>) {
      require(v >= 0.0 && v == std::floor(v), ErrorKind::invalid_config,
              name + " expects a non-negative integer");
    }
    field = static_cast<T>(v);
  };
  return p;
}

inline void add_fa(std::vector<Parameter>& out, const std::string& prefix, FaConfig& (*fa)(AlgorithmSettings&))
{
  out.push_back(numeric_parameter(prefix + "alpha", [fa](AlgorithmSettings& s) -> auto& { return fa(s).alpha; }));
  out.push_back(numeric_parameter(prefix + "beta0", [fa](AlgorithmSettings& s) -> auto& { return fa(s).beta0; }));
  out.push_back(numeric_parameter(prefix + "gamma", [fa](AlgorithmSettings& s) -> auto& { return fa(s).gamma; }));
  out.push_back(numeric_parameter(prefix + "n", [fa](AlgorithmSettings& s) -> auto& { return fa(s).n; }));
  out.push_back(numeric_parameter(prefix + "max_gen", [fa](AlgorithmSettings& s) -> auto& { return fa(s).max_gen; }));
  out.push_back(numeric_parameter(prefix + "samples", [fa](AlgorithmSettings& s) -> auto& { return fa(s).samples; }));
  out.push_back(
    numeric_parameter(prefix + "tolerance", [fa](AlgorithmSettings& s) -> auto& { return fa(s).tolerance; }));
  out.push_back(numeric_parameter(prefix + "patience", [fa](AlgorithmSettings& s) -> auto& { return fa(s).patience; }));
}

inline void add_nm(std::vector<Parameter>& out, const std::string& prefix, NmConfig& (*nm)(AlgorithmSettings&))
{
  out.push_back(
    numeric_parameter(prefix + "reflection", [nm](AlgorithmSettings& s) -> auto& { return nm(s).reflection; }));
  out.push_back(
    numeric_parameter(prefix + "expansion", [nm](AlgorithmSettings& s) -> auto& { return nm(s).expansion; }));
  out.push_back(
    numeric_parameter(prefix + "contraction", [nm](AlgorithmSettings& s) -> auto& { return nm(s).contraction; }));
  out.push_back(numeric_parameter(prefix + "shrink", [nm](AlgorithmSettings& s) -> auto& { return nm(s).shrink; }));
  out.push_back(
    numeric_parameter(prefix + "tolerance", [nm](AlgorithmSettings& s) -> auto& { return nm(s).tolerance; }));
  out.push_back(
    numeric_parameter(prefix + "max_evals", [nm](AlgorithmSettings& s) -> auto& { return nm(s).max_evals; }));
  out.push_back(numeric_parameter(prefix + "samples", [nm](AlgorithmSettings& s) -> auto& { return nm(s).samples; }));
}

inline std::vector<Parameter> build_parameters()
{
  std::vector<Parameter> out;
  auto add = [&](std::string name, auto access) { out.push_back(numeric_parameter(std::move(name), access)); };

  add("es.levy_lambda", [](AlgorithmSettings& s) -> auto& { return s.es.levy_lambda; });
  add("es.levy_step_min", [](AlgorithmSettings& s) -> auto& { return s.es.levy_step_min; });
  add("es.levy_step_max", [](AlgorithmSettings& s) -> auto& { return s.es.levy_step_max; });
  add("es.hypersphere_radius_init", [](AlgorithmSettings& s) -> auto& { return s.es.hypersphere_radius_init; });
  add("es.hypersphere_shrink", [](AlgorithmSettings& s) -> auto& { return s.es.hypersphere_shrink; });
  add("es.hypersphere_radius_floor", [](AlgorithmSettings& s) -> auto& { return s.es.hypersphere_radius_floor; });
  add("es.outer_tolerance", [](AlgorithmSettings& s) -> auto& { return s.es.outer_tolerance; });
  add("es.stall_stages", [](AlgorithmSettings& s) -> auto& { return s.es.stall_stages; });
  add("es.max_stages", [](AlgorithmSettings& s) -> auto& { return s.es.max_stages; });
  add("es.local_budget_per_stage", [](AlgorithmSettings& s) -> auto& { return s.es.local_budget_per_stage; });
  add("es.max_evals", [](AlgorithmSettings& s) -> auto& { return s.es.max_evals; });
  add("es.robust_lambda", [](AlgorithmSettings& s) -> auto& { return s.es.robust_lambda; });
  add("es.confirm_samples", [](AlgorithmSettings& s) -> auto& { return s.es.confirm_samples; });
  add("es.reconfirm_samples", [](AlgorithmSettings& s) -> auto& { return s.es.reconfirm_samples; });
  add("es.screen_samples", [](AlgorithmSettings& s) -> auto& { return s.es.screen_samples; });
  add("es.screen_z", [](AlgorithmSettings& s) -> auto& { return s.es.screen_z; });
  add("es.scale_absorption", [](AlgorithmSettings& s) -> auto& { return s.es.scale_absorption; });
  add_fa(out, "es.fa.", [](AlgorithmSettings& s) -> FaConfig& { return s.es.fa; });
  add_nm(out, "es.nm.", [](AlgorithmSettings& s) -> NmConfig& { return s.es.nm; });

  add_fa(out, "fa.", [](AlgorithmSettings& s) -> FaConfig& { return s.fa; });
  add("fa.max_evals", [](AlgorithmSettings& s) -> auto& { return s.fa_max_evals; });

  add("pso.w", [](AlgorithmSettings& s) -> auto& { return s.pso.w; });
  add("pso.c1", [](AlgorithmSettings& s) -> auto& { return s.pso.c1; });
  add("pso.c2", [](AlgorithmSettings& s) -> auto& { return s.pso.c2; });
  add("pso.n", [](AlgorithmSettings& s) -> auto& { return s.pso.n; });
  add("pso.v_max_fraction", [](AlgorithmSettings& s) -> auto& { return s.pso.v_max_fraction; });
  add("pso.max_evals", [](AlgorithmSettings& s) -> auto& { return s.pso.max_evals; });
  add("pso.tolerance", [](AlgorithmSettings& s) -> auto& { return s.pso.tolerance; });
  add("pso.patience", [](AlgorithmSettings& s) -> auto& { return s.pso.patience; });
  add("pso.samples", [](AlgorithmSettings& s) -> auto& { return s.pso.samples; });

  add_nm(out, "nm.", [](AlgorithmSettings& s) -> NmConfig& { return s.nm; });
  add("nm.edge", [](AlgorithmSettings& s) -> auto& { return s.nm_edge; });
  return out;
}

} // namespace detail

/// Every numeric setting, by dotted name ("es.fa.gamma", "pso.w", ...).
inline const std::vector<Parameter>& parameters()
{
  static const std::vector<Parameter> table = detail::build_parameters();
  return table;
}

inline const Parameter& find_parameter(std::string_view name)
{
  for (const auto& p : parameters()) {
    if (p.name == name) {
      return p;
    }
  }
  throw Error(ErrorKind::invalid_config, "unknown parameter '" + std::string(name) + "'");
}

inline void set_parameter(AlgorithmSettings& s, std::string_view name, double value)
{
  find_parameter(name).set(s, value);
}

inline LocalSearcher parse_local_searcher(std::string_view s)
{
  if (s == "firefly" || s == "fa") {
    return LocalSearcher::firefly;
  }
  if (s == "nelder_mead" || s == "nm") {
    return LocalSearcher::nelder_mead;
  }
  throw Error(ErrorKind::invalid_config, "es.local must be 'firefly' or 'nelder_mead'");
}

inline Termination parse_termination(std::string_view s)
{
  if (s == "value") {
    return Termination::value;
  }
  if (s == "position") {
    return Termination::position;
  }
  throw Error(ErrorKind::invalid_config, "es.termination must be 'value' or 'position'");
}

/// Applies a nested object such as {"es": {"fa": {"gamma": 0.5}}, "pso": {"w": 0.6}}.
inline void apply_settings_json(AlgorithmSettings& s, const nlohmann::json& j, const std::string& prefix = "")
{
  require(j.is_object(), ErrorKind::invalid_config, "settings must be a json object");
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix + key;
    if (value.is_object()) {
      apply_settings_json(s, value, name + ".");
    } else if (name == "es.local") {
      s.es.local = parse_local_searcher(value.get<std::string>());
    } else if (name == "es.termination") {
      s.es.termination = parse_termination(value.get<std::string>());
    } else {
      require(value.is_number(), ErrorKind::invalid_config, name + " must be a number");
      set_parameter(s, name, value.get<double>());
    }
  }
}

/// Full settings as nested json, the inverse of apply_settings_json.
inline nlohmann::ordered_json settings_to_json(const AlgorithmSettings& s)
{
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& p : parameters()) {
    nlohmann::ordered_json* node = &out;
    std::string_view rest = p.name;
    for (auto dot = rest.find('.'); dot != std::string_view::npos; dot = rest.find('.')) {
      node = &(*node)[std::string(rest.substr(0, dot))];
      rest.remove_prefix(dot + 1);
    }
    const double v = p.get(s);
    if (v == std::floor(v) && std::abs(v) < 1e15) {
      (*node)[std::string(rest)] = static_cast<std::int64_t>(v);
    } else {
      (*node)[std::string(rest)] = v;
    }
  }
  out["es"]["local"] = s.es.local == LocalSearcher::firefly ? "firefly" : "nelder_mead";
  out["es"]["termination"] = s.es.termination == Termination::value ? "value" : "position";
  return out;
}

} // namespace eagle

#endif // EAGLE_CONFIG_HPP
