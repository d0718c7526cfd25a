#include "mecopt/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mecopt/schedule.hpp"

namespace mecopt {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

json parse_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key, const char* ctx) {
  if (!j.is_object() || !j.contains(key))
    fail(std::string(ctx) + ": missing field '" + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key, const char* ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_number())
    fail(std::string(ctx) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const char* ctx) {
  for (const auto& item : j.items())
    if (known.find(item.key()) == known.end())
      fail(std::string(ctx) + ": unknown key '" + item.key() + "'");
}

SystemParams parse_params(const json& j, const char* ctx,
                          bool deadline_required) {
  if (!j.is_object()) fail(std::string(ctx) + ": 'params' must be an object");
  reject_unknown_keys(j,
                      {"deadline_s", "bs_cpu_hz", "switched_capacitance",
                       "bandwidth_hz", "noise_power_w", "bs_weight"},
                      ctx);
  SystemParams p;
  if (deadline_required || j.contains("deadline_s"))
    p.deadline_s = number(j, "deadline_s", ctx);
  p.bs_cpu_hz = number(j, "bs_cpu_hz", ctx);
  p.switched_capacitance = number(j, "switched_capacitance", ctx);
  p.bandwidth_hz = number(j, "bandwidth_hz", ctx);
  p.noise_power_w = number(j, "noise_power_w", ctx);
  p.bs_weight = number(j, "bs_weight", ctx);
  return p;
}

json params_to_json(const SystemParams& p) {
  return json{{"deadline_s", p.deadline_s},
              {"bs_cpu_hz", p.bs_cpu_hz},
              {"switched_capacitance", p.switched_capacitance},
              {"bandwidth_hz", p.bandwidth_hz},
              {"noise_power_w", p.noise_power_w},
              {"bs_weight", p.bs_weight}};
}

std::array<double, 2> parse_bounds(const json& j, const char* key,
                                   const char* ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(std::string(ctx) + ": field '" + key +
         "' must be a [low, high] number pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  const char* ctx = "instance JSON";
  const json j = parse_text(text, ctx);
  if (!j.is_object()) fail(std::string(ctx) + ": top level must be an object");
  reject_unknown_keys(j, {"tasks", "channel_gains", "params"}, ctx);

  Instance instance;
  const json& tasks = field(j, "tasks", ctx);
  if (!tasks.is_array()) fail(std::string(ctx) + ": 'tasks' must be an array");
  for (const json& t : tasks) {
    reject_unknown_keys(t, {"upload_bits", "workload_cycles", "download_bits"},
                        ctx);
    TaskSpec spec;
    spec.upload_bits = number(t, "upload_bits", ctx);
    spec.workload_cycles = number(t, "workload_cycles", ctx);
    spec.download_bits = number(t, "download_bits", ctx);
    instance.tasks.push_back(spec);
  }
  const json& gains = field(j, "channel_gains", ctx);
  if (!gains.is_array())
    fail(std::string(ctx) + ": 'channel_gains' must be an array");
  for (const json& g : gains) {
    if (!g.is_number())
      fail(std::string(ctx) + ": 'channel_gains' entries must be numbers");
    instance.channel_gains.push_back(g.get<double>());
  }
  instance.params = parse_params(field(j, "params", ctx), ctx, true);
  validate(instance);
  return instance;
}

std::string emit_instance_json(const Instance& instance) {
  json tasks = json::array();
  for (const auto& t : instance.tasks)
    tasks.push_back(json{{"upload_bits", t.upload_bits},
                         {"workload_cycles", t.workload_cycles},
                         {"download_bits", t.download_bits}});
  const json j{{"tasks", tasks},
               {"channel_gains", instance.channel_gains},
               {"params", params_to_json(instance.params)}};
  return j.dump(2) + "\n";
}

ScenarioConfig parse_config_json(const std::string& text) {
  const char* ctx = "config JSON";
  const json j = parse_text(text, ctx);
  if (!j.is_object()) fail(std::string(ctx) + ": top level must be an object");
  reject_unknown_keys(j,
                      {"seed", "K_range", "T_range_s", "num_draws", "methods",
                       "params", "upload_bits_range", "download_bits_range",
                       "workload_cycles_range", "gain_model"},
                      ctx);

  ScenarioConfig config;
  const json& seed = field(j, "seed", ctx);
  if (!seed.is_number_integer() || seed.get<int64_t>() < 0)
    fail(std::string(ctx) + ": 'seed' must be a non-negative integer");
  config.seed = seed.get<uint64_t>();

  const json& ks = field(j, "K_range", ctx);
  if (!ks.is_array() || ks.empty())
    fail(std::string(ctx) + ": 'K_range' must be a non-empty array");
  for (const json& k : ks) {
    if (!k.is_number_integer())
      fail(std::string(ctx) + ": 'K_range' entries must be integers");
    config.k_range.push_back(k.get<int>());
  }

  const json& ts = field(j, "T_range_s", ctx);
  if (!ts.is_array() || ts.empty())
    fail(std::string(ctx) + ": 'T_range_s' must be a non-empty array");
  for (const json& t : ts) {
    if (!t.is_number())
      fail(std::string(ctx) + ": 'T_range_s' entries must be numbers");
    config.t_range_s.push_back(t.get<double>());
  }

  if (j.contains("num_draws")) {
    if (!j.at("num_draws").is_number_integer())
      fail(std::string(ctx) + ": 'num_draws' must be an integer");
    config.num_draws = j.at("num_draws").get<int>();
  }
  if (j.contains("methods")) {
    const json& ms = j.at("methods");
    if (!ms.is_array()) fail(std::string(ctx) + ": 'methods' must be an array");
    for (const json& m : ms) {
      if (!m.is_string())
        fail(std::string(ctx) + ": 'methods' entries must be strings");
      config.methods.push_back(m.get<std::string>());
    }
  } else {
    config.methods = {"suboptimal", "baseline1", "baseline2"};
  }
  config.params = parse_params(field(j, "params", ctx), ctx, false);
  if (j.contains("upload_bits_range"))
    config.upload_bits_range = parse_bounds(j, "upload_bits_range", ctx);
  if (j.contains("download_bits_range"))
    config.download_bits_range = parse_bounds(j, "download_bits_range", ctx);
  if (j.contains("workload_cycles_range"))
    config.workload_cycles_range = parse_bounds(j, "workload_cycles_range", ctx);
  if (j.contains("gain_model")) {
    const json& gm = j.at("gain_model");
    reject_unknown_keys(gm, {"type", "mean"}, ctx);
    if (gm.contains("type")) {
      if (!gm.at("type").is_string())
        fail(std::string(ctx) + ": gain model 'type' must be a string");
      config.gain_model.type = gm.at("type").get<std::string>();
    }
    if (gm.contains("mean")) config.gain_model.mean = number(gm, "mean", ctx);
  }
  validate(config);
  return config;
}

std::string emit_config_json(const ScenarioConfig& config) {
  const json j{{"seed", config.seed},
               {"K_range", config.k_range},
               {"T_range_s", config.t_range_s},
               {"num_draws", config.num_draws},
               {"methods", config.methods},
               {"params", params_to_json(config.params)},
               {"upload_bits_range", config.upload_bits_range},
               {"download_bits_range", config.download_bits_range},
               {"workload_cycles_range", config.workload_cycles_range},
               {"gain_model",
                json{{"type", config.gain_model.type},
                     {"mean", config.gain_model.mean}}}};
  return j.dump(2) + "\n";
}

std::string emit_result_json(const Instance& instance,
                             const SolveResult& result) {
  json j;
  j["method"] = result.method;
  j["energy_j"] = result.energy_j;
  j["makespan_s"] = result.makespan_s;
  j["allocation"] = json{{"upload_s", result.allocation.upload_s},
                         {"download_s", result.allocation.download_s}};
  j["energy_breakdown"] =
      json{{"upload_j", result.energy.upload_j},
           {"exec_j", result.energy.exec_j},
           {"download_j", result.energy.download_j},
           {"total_weighted_j", result.energy.total_weighted_j}};

  if (result.sequence) {
    std::vector<int> one_based;
    one_based.reserve(result.sequence->order.size());
    for (int t : result.sequence->order) one_based.push_back(t + 1);
    j["sequence"] = one_based;

    const Schedule sched = build_schedule(
        *result.sequence, duration_triple(instance, result.allocation));
    j["schedule"] = json{{"start_upload_s", sched.start_upload_s},
                         {"complete_upload_s", sched.complete_upload_s},
                         {"start_exec_s", sched.start_exec_s},
                         {"complete_exec_s", sched.complete_exec_s},
                         {"start_download_s", sched.start_download_s},
                         {"complete_download_s", sched.complete_download_s}};
  }

  const SolveDiagnostics& d = result.diagnostics;
  j["diagnostics"] = json{{"lambda", d.lambda},
                          {"kkt_residual", d.kkt_residual},
                          {"duality_gap", d.duality_gap},
                          {"bisect_iterations", d.bisect_iterations},
                          {"newton_iterations", d.newton_iterations},
                          {"closed_form_solves", d.closed_form_solves},
                          {"convex_solves", d.convex_solves},
                          {"fastpath", d.fast_path},
                          {"johnson_condition", d.johnson_condition},
                          {"download_degenerate", d.download_degenerate}};
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
  if (!out) throw std::invalid_argument("write failed: " + path);
}

Instance load_instance(const std::string& path) {
  return parse_instance_json(read_file(path));
}

ScenarioConfig load_config(const std::string& path) {
  return parse_config_json(read_file(path));
}

}  // namespace mecopt
