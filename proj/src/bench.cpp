// Copyright 2026 The lqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "lqa/format.hpp"
#include "lqa/generators.hpp"
#include "lqa/instance_io.hpp"
#include "lqa/oracle.hpp"
#include "lqa/random.hpp"

namespace lqa {

namespace {

using json = nlohmann::json;

const std::set<std::string> kGenerators = {"pm1", "uniform", "wishart"};

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
  }
}

void validate_generator(const InstanceSpec& inst) {
  if (!kGenerators.contains(inst.generator)) {
    throw std::invalid_argument("instance '" + inst.id + "': unknown generator '" +
                                inst.generator + "'");
  }
  if (inst.n < 2) throw std::invalid_argument("instance '" + inst.id + "': n must be >= 2");
  if (inst.generator == "wishart") {
    if (!(inst.alpha > 0.0)) {
      throw std::invalid_argument("instance '" + inst.id + "': alpha must be > 0");
    }
    if (std::llround(inst.alpha * static_cast<double>(inst.n)) == 0) {
      throw std::invalid_argument("instance '" + inst.id + "': alpha * n rounds to 0 columns");
    }
  }
}

IsingProblem generate(const InstanceSpec& inst, std::uint64_t seed) {
  if (inst.generator == "pm1") return gen_random_pm1(inst.n, seed);
  if (inst.generator == "uniform") return gen_uniform(inst.n, seed);
  return gen_wishart(inst.n, inst.alpha, seed).problem;
}

void fill_ground_energy(IsingProblem& p, unsigned workers) {
  if (p.ground_energy || p.size() > kBruteForceSpinCap) return;
  p.ground_energy = brute_force_ground(p, {.workers = workers}).energy;
}

// Everything a trial needs, resolved before any trial runs.
struct PreparedInstance {
  const InstanceSpec* spec = nullptr;
  std::size_t index = 0;
  std::shared_ptr<const IsingProblem> shared;  // null in instance_per_trial mode
  SolverConfig solver;
  bool maxcut = false;
};

std::vector<PreparedInstance> prepare(const BenchSpec& spec) {
  std::vector<PreparedInstance> out;
  out.reserve(spec.instances.size());
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    const auto& inst = spec.instances[i];
    PreparedInstance prep;
    prep.spec = &inst;
    prep.index = i;
    prep.solver = spec.solver;
    prep.solver.trace_stride = spec.trace_stride;
    if (inst.step_size) prep.solver.step_size = *inst.step_size;
    prep.maxcut = inst.maxcut.value_or(inst.generator == "pm1");
    if (spec.mode == TrialMode::shared_instance) {
      IsingProblem p = inst.file.empty() ? generate(inst, inst.seed) : load_instance(inst.file);
      if (spec.use_oracle) fill_ground_energy(p, spec.workers);
      if (prep.maxcut && p.has_bias()) {
        throw std::invalid_argument("instance '" + inst.id + "': Max-Cut instances cannot carry a bias");
      }
      prep.shared = std::make_shared<const IsingProblem>(std::move(p));
    }
    out.push_back(std::move(prep));
  }
  return out;
}

TrialReport run_trial(const PreparedInstance& prep, std::size_t trial, const BenchSpec& spec) {
  TrialReport report;
  report.instance = prep.spec->id;
  report.trial = trial;
  report.steps = prep.solver.steps;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::shared_ptr<const IsingProblem> problem = prep.shared;
    if (!problem) {
      IsingProblem p = generate(*prep.spec, trial_seed(prep.spec->seed, prep.index, trial));
      if (spec.use_oracle) fill_ground_energy(p, 1);
      problem = std::make_shared<const IsingProblem>(std::move(p));
    }
    SolverConfig cfg = prep.solver;
    cfg.seed = trial_seed(spec.solver.seed, prep.index, trial);
    const SolveResult result = solve(*problem, cfg);

    report.final_energy = result.objective;
    report.ground_energy = problem->ground_energy;
    if (problem->ground_energy) {
      report.relative_error = relative_error(result.objective, *problem->ground_energy);
    }
    if (prep.maxcut) {
      report.total_edge_weight = total_edge_weight(*problem);
      report.cut = cut_value(*problem, result.spins, report.total_edge_weight);
    }
    report.energy_trace.reserve(result.trace.records.size());
    for (const auto& r : result.trace.records) report.energy_trace.emplace_back(r.step, r.energy);
  } catch (const std::exception& e) {
    report.failed = true;
    report.error = e.what();
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<TraceAggregate> aggregate(const std::vector<std::vector<std::pair<std::size_t, double>>>& curves) {
  std::vector<TraceAggregate> out;
  if (curves.empty()) return out;
  const std::size_t len = curves.front().size();
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<double> values;
    values.reserve(curves.size());
    for (const auto& c : curves) {
      if (k < c.size()) values.push_back(c[k].second);
    }
    const Moments m = compute_moments(values);
    out.push_back({curves.front()[k].first, m.mean, m.min, m.max});
  }
  return out;
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

void BenchSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (instances.empty()) throw std::invalid_argument("bench spec lists no instances");
  solver.validate();
  std::set<std::string> ids;
  for (const auto& inst : instances) {
    if (inst.id.empty()) throw std::invalid_argument("instance without an id");
    if (!ids.insert(inst.id).second) {
      throw std::invalid_argument("duplicate instance id '" + inst.id + "'");
    }
    if (inst.file.empty() == inst.generator.empty()) {
      throw std::invalid_argument("instance '" + inst.id +
                                  "' needs exactly one of 'file' or 'generator'");
    }
    if (!inst.generator.empty()) validate_generator(inst);
    if (!inst.file.empty() && mode == TrialMode::instance_per_trial) {
      throw std::invalid_argument("instance '" + inst.id +
                                  "': file instances cannot be regenerated per trial");
    }
    if (inst.step_size && !(*inst.step_size > 0.0)) {
      throw std::invalid_argument("instance '" + inst.id + "': step_size must be > 0");
    }
  }
}

BenchSpec parse_bench_spec(std::istream& in, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bench spec is not valid JSON: ") + e.what());
  }
  check_keys(doc, {"version", "trials", "workers", "trace_stride", "trial_mode", "oracle",
                   "output", "solver", "instances", "sweep", "step_sizes"},
             "bench spec");
  if (!doc.contains("version") || doc["version"].get<int>() != kBenchSpecVersion) {
    throw std::invalid_argument("bench spec must declare \"version\": " +
                                std::to_string(kBenchSpecVersion));
  }

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  BenchSpec spec;
  try {
    spec.trials = doc.value("trials", std::size_t{1});
    spec.workers = doc.value("workers", 1U);
    spec.trace_stride = doc.value("trace_stride", std::size_t{0});
    spec.use_oracle = doc.value("oracle", false);
    if (doc.contains("output")) spec.output = resolve(doc["output"].get<std::string>());
    const std::string mode = doc.value("trial_mode", std::string("shared_instance"));
    if (mode == "shared_instance") {
      spec.mode = TrialMode::shared_instance;
    } else if (mode == "instance_per_trial") {
      spec.mode = TrialMode::instance_per_trial;
    } else {
      throw std::invalid_argument("unknown trial_mode '" + mode + "'");
    }

    if (doc.contains("solver")) {
      const json& s = doc["solver"];
      check_keys(s, {"steps", "gamma", "step_size", "momentum", "optimizer", "adam_beta1",
                     "adam_beta2", "adam_eps", "init_scale", "seed"},
                 "solver");
      SolverConfig& c = spec.solver;
      c.steps = s.value("steps", c.steps);
      c.gamma = s.value("gamma", c.gamma);
      c.step_size = s.value("step_size", c.step_size);
      c.momentum = s.value("momentum", c.momentum);
      if (s.contains("optimizer")) c.optimizer = parse_optimizer(s["optimizer"].get<std::string>());
      c.adam_beta1 = s.value("adam_beta1", c.adam_beta1);
      c.adam_beta2 = s.value("adam_beta2", c.adam_beta2);
      c.adam_eps = s.value("adam_eps", c.adam_eps);
      c.init_scale = s.value("init_scale", c.init_scale);
      c.seed = s.value("seed", c.seed);
    }

    if (doc.contains("instances")) {
      for (const json& item : doc["instances"]) {
        check_keys(item, {"id", "file", "generator", "n", "alpha", "seed", "step_size", "maxcut"},
                   "instance");
        InstanceSpec inst;
        inst.id = item.value("id", std::string());
        if (item.contains("file")) inst.file = resolve(item["file"].get<std::string>());
        inst.generator = item.value("generator", std::string());
        inst.n = item.value("n", std::size_t{0});
        inst.alpha = item.value("alpha", 0.0);
        inst.seed = item.value("seed", std::uint64_t{0});
        if (item.contains("step_size")) inst.step_size = item["step_size"].get<double>();
        if (item.contains("maxcut")) inst.maxcut = item["maxcut"].get<bool>();
        spec.instances.push_back(std::move(inst));
      }
    }

    if (doc.contains("sweep")) {
      const json& sw = doc["sweep"];
      check_keys(sw, {"generator", "n", "alpha_min", "alpha_max", "count", "seed", "id_prefix"},
                 "sweep");
      const auto count = sw.at("count").get<std::size_t>();
      const double lo = sw.value("alpha_min", 0.0);
      const double hi = sw.value("alpha_max", lo);
      const auto seed = sw.value("seed", std::uint64_t{0});
      const std::string prefix = sw.value("id_prefix", std::string("sweep"));
      for (std::size_t k = 0; k < count; ++k) {
        InstanceSpec inst;
        inst.id = prefix + std::to_string(k);
        inst.generator = sw.value("generator", std::string("wishart"));
        inst.n = sw.at("n").get<std::size_t>();
        inst.alpha = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) /
                                               static_cast<double>(count - 1);
        inst.seed = seed + k;
        spec.instances.push_back(std::move(inst));
      }
    }

    if (doc.contains("step_sizes")) {
      const auto sizes = doc["step_sizes"].get<std::vector<double>>();
      if (sizes.size() != spec.instances.size()) {
        throw std::invalid_argument("step_sizes has " + std::to_string(sizes.size()) +
                                    " entries for " + std::to_string(spec.instances.size()) +
                                    " instances");
      }
      for (std::size_t k = 0; k < sizes.size(); ++k) spec.instances[k].step_size = sizes[k];
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad value in bench spec: ") + e.what());
  }

  spec.validate();
  return spec;
}

BenchSpec load_bench_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bench spec '" + path.string() + "'");
  return parse_bench_spec(in, path.parent_path());
}

double relative_error(double value, double ground) {
  const double diff = std::abs(value - ground);
  return ground == 0.0 ? diff : diff / std::abs(ground);
}

std::vector<TrialReport> run_batch(const BenchSpec& spec) {
  spec.validate();
  const std::vector<PreparedInstance> prepared = prepare(spec);

  const std::size_t total = prepared.size() * spec.trials;
  std::vector<TrialReport> reports(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      reports[k] = run_trial(prepared[k / spec.trials], k % spec.trials, spec);
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, spec.workers), total));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return reports;
}

Moments compute_moments(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("statistics of an empty sample");
  Moments m;
  m.min = m.max = values.front();
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double v : values) {
    ++k;
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
    m.min = std::min(m.min, v);
    m.max = std::max(m.max, v);
  }
  // Rounding can push the mean a few ulps outside [min, max].
  m.mean = std::clamp(mean, m.min, m.max);
  m.std_dev = std::sqrt(std::max(0.0, m2 / static_cast<double>(k)));
  return m;
}

std::vector<InstanceSummary> summarize(const std::vector<TrialReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to summarize");
  std::vector<std::string> order;
  std::map<std::string, std::vector<const TrialReport*>> groups;
  for (const auto& r : reports) {
    auto [it, inserted] = groups.try_emplace(r.instance);
    if (inserted) order.push_back(r.instance);
    it->second.push_back(&r);
  }

  std::vector<InstanceSummary> out;
  for (const auto& id : order) {
    const auto& group = groups[id];
    InstanceSummary s;
    s.instance = id;
    std::vector<const TrialReport*> ok;
    for (const auto* r : group) {
      if (r->failed) {
        ++s.failed;
      } else {
        ok.push_back(r);
      }
    }
    s.trials = ok.size();
    const bool has_ground = !ok.empty() && ok.front()->relative_error.has_value();
    const bool has_cut = !ok.empty() && ok.front()->cut.has_value();
    s.metric = has_ground ? "relative_error" : has_cut ? "cut" : "energy";
    if (ok.empty()) {
      out.push_back(std::move(s));
      continue;
    }

    std::vector<double> values;
    std::size_t at_optimum = 0;
    for (const auto* r : ok) {
      values.push_back(has_ground ? *r->relative_error : has_cut ? *r->cut : r->final_energy);
      if (has_ground && r->final_energy <= *r->ground_energy + 1e-9 * std::max(1.0, std::abs(*r->ground_energy))) {
        ++at_optimum;
      }
    }
    const Moments m = compute_moments(values);
    s.mean = m.mean;
    s.std_dev = m.std_dev;
    s.min = m.min;
    s.max = m.max;
    if (has_ground) s.fraction_at_optimum = static_cast<double>(at_optimum) / static_cast<double>(ok.size());

    std::vector<std::vector<std::pair<std::size_t, double>>> best_energy, best_cut;
    for (const auto* r : ok) {
      if (r->energy_trace.empty()) continue;
      auto& e = best_energy.emplace_back();
      double running = std::numeric_limits<double>::infinity();
      for (const auto& [step, energy] : r->energy_trace) {
        running = std::min(running, energy);
        e.emplace_back(step, running);
      }
      if (has_cut) {
        auto& c = best_cut.emplace_back();
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& [step, energy] : r->energy_trace) {
          best = std::max(best, (r->total_edge_weight - energy) / 2.0);
          c.emplace_back(step, best);
        }
      }
    }
    s.best_energy = aggregate(best_energy);
    s.best_cut = aggregate(best_cut);
    out.push_back(std::move(s));
  }
  return out;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialReport>& reports) {
  out << "instance,trial,steps,final_energy,relative_error,cut,wall_ms,failed\n";
  for (const auto& r : reports) {
    out << r.instance << ',' << r.trial << ',' << r.steps << ','
        << (r.failed ? std::string() : format_double(r.final_energy)) << ','
        << (r.failed ? std::string() : optional_field(r.relative_error)) << ','
        << (r.failed ? std::string() : optional_field(r.cut)) << ','
        << format_double(std::round(r.wall_ms * 1000.0) / 1000.0) << ',' << (r.failed ? 1 : 0)
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<InstanceSummary>& summaries) {
  out << "instance,metric,trials,failed,mean,std,min,max,fraction_at_optimum\n";
  for (const auto& s : summaries) {
    out << s.instance << ',' << s.metric << ',' << s.trials << ',' << s.failed << ',';
    if (s.trials > 0) {
      out << format_double(s.mean) << ',' << format_double(s.std_dev) << ','
          << format_double(s.min) << ',' << format_double(s.max);
    } else {
      out << ",,,";
    }
    out << ',' << optional_field(s.fraction_at_optimum) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const InstanceSummary& summary) {
  const bool cut = !summary.best_cut.empty();
  out << "step,best_energy_mean,best_energy_min,best_energy_max";
  if (cut) out << ",best_cut_mean,best_cut_min,best_cut_max";
  out << '\n';
  for (std::size_t k = 0; k < summary.best_energy.size(); ++k) {
    const auto& e = summary.best_energy[k];
    out << e.step << ',' << format_double(e.mean) << ',' << format_double(e.min) << ','
        << format_double(e.max);
    if (cut) {
      const auto& c = summary.best_cut[k];
      out << ',' << format_double(c.mean) << ',' << format_double(c.min) << ','
          << format_double(c.max);
    }
    out << '\n';
  }
}

BenchOutputs write_bench_outputs(const std::filesystem::path& prefix,
                                 const std::vector<TrialReport>& reports,
                                 const std::vector<InstanceSummary>& summaries) {
  BenchOutputs paths;
  auto with_suffix = [&](const std::string& suffix) {
    std::filesystem::path p = prefix;
    p += suffix;
    return p;
  };
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
  paths.trials = with_suffix("_trials.csv");
  write_file_atomically(paths.trials, [&](std::ostream& out) { write_trials_csv(out, reports); });
  for (const auto& s : summaries) {
    if (s.best_energy.empty()) continue;
    auto path = with_suffix("_trace_" + s.instance + ".csv");
    write_file_atomically(path, [&](std::ostream& out) { write_trace_csv(out, s); });
    paths.traces.push_back(std::move(path));
  }
  // Summary last: its presence marks a completed run.
  paths.summary = with_suffix("_summary.csv");
  write_file_atomically(paths.summary,
                        [&](std::ostream& out) { write_summary_csv(out, summaries); });
  return paths;
}

}  // namespace lqa
