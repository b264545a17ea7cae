#include "faga/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "faga/benchmarks.hpp"
#include "faga/engineering.hpp"

namespace faga::harness {

using nlohmann::json;

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::fa: return "fa";
    case Algorithm::ga: return "ga";
    case Algorithm::faga: return "faga";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::fa, Algorithm::ga, Algorithm::faga})
    if (algorithm_name(a) == name) return a;
  return std::nullopt;
}

ProblemSelector ProblemSelector::parse(std::string_view text) {
  ProblemSelector sel;
  std::string_view prefix, rest = text;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    prefix = text.substr(0, colon);
    rest = text.substr(colon + 1);
  }
  const std::string shown(text);
  if (prefix.empty() || prefix == "benchmark") {
    if (parse_benchmark(rest)) {
      sel.family = ProblemFamily::benchmark;
      sel.name = std::string(rest);
      return sel;
    }
  }
  if (prefix.empty() || prefix == "engineering") {
    if (engineering::parse_problem(rest)) {
      sel.family = ProblemFamily::engineering;
      sel.name = std::string(rest);
      return sel;
    }
  }
  if (prefix == "skp") {
    const auto& ids = knapsack::builtin_skp_ids();
    if (std::find(ids.begin(), ids.end(), rest) == ids.end())
      throw ConfigError("unknown knapsack instance '" + std::string(rest) + "'");
    sel.family = ProblemFamily::skp;
    sel.name = std::string(rest);
    return sel;
  }
  if (prefix == "mkp") {
    sel.family = ProblemFamily::mkp;
    std::string_view path = rest;
    if (auto hash = rest.rfind('#'); hash != std::string_view::npos) {
      path = rest.substr(0, hash);
      const std::string_view idx = rest.substr(hash + 1);
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), k);
      if (ec != std::errc() || ptr != idx.data() + idx.size() || k == 0)
        throw ConfigError("bad instance index in '" + shown + "'");
      sel.index = k;
    }
    if (path.empty()) throw ConfigError("missing file in '" + shown + "'");
    sel.name = std::string(path);
    return sel;
  }
  throw ConfigError("unknown problem '" + shown + "'");
}

std::string ProblemSelector::label() const {
  switch (family) {
    case ProblemFamily::benchmark:
    case ProblemFamily::engineering: return name;
    case ProblemFamily::skp: return "skp:" + name;
    case ProblemFamily::mkp: return "mkp:" + name + "#" + std::to_string(index);
  }
  return name;
}

ProblemSpec continuous_problem(const ProblemSelector& selector, std::size_t dimension) {
  if (selector.family == ProblemFamily::benchmark)
    return make_benchmark(*parse_benchmark(selector.name), dimension);
  if (selector.family == ProblemFamily::engineering)
    return engineering::make_problem(*engineering::parse_problem(selector.name));
  throw ConfigError("'" + selector.label() + "' is not a continuous problem");
}

void ExperimentPlan::validate() const {
  const auto sel = ProblemSelector::parse(problem);
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (dimension < 1) throw ConfigError("dimension must be >= 1");
  if (population && *population < 1) throw ConfigError("population must be >= 1");
  if (theta && !(*theta >= 0.0)) throw ConfigError("theta must be non-negative");
  if (!(p_mut >= 0.0 && p_mut <= 1.0)) throw ConfigError("p_mut must lie in [0, 1]");
  firefly.validate();
  genetic.validate();
  run.validate();
  const std::size_t pop =
      population.value_or(sel.family == ProblemFamily::engineering ? 20 : 30);
  const bool continuous =
      sel.family == ProblemFamily::benchmark || sel.family == ProblemFamily::engineering;
  if (continuous && algorithm != Algorithm::fa && genetic.tournament_size > pop)
    throw ConfigError("tournament_size exceeds the population size");
}

namespace {

struct TrialOutcome {
  double best = kUnset;
  std::uint64_t evaluations = 0;
  double seconds = 0.0;
  Trace trace;
  RealVector position;
};

knapsack::MkpInstance load_mkp(const ProblemSelector& sel) {
  std::ifstream in(sel.name, std::ios::binary);
  if (!in) throw ConfigError("cannot open MKP file '" + sel.name + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<knapsack::MkpInstance> all;
  try {
    all = knapsack::parse_orlib_mkp(buf.str(), true);
  } catch (const knapsack::ParseError& e) {
    throw ConfigError(sel.name + ": " + e.what());
  }
  if (sel.index > all.size())
    throw ConfigError(sel.name + " holds " + std::to_string(all.size()) + " instances, asked for #" +
                      std::to_string(sel.index));
  auto inst = all[sel.index - 1];
  inst.id = sel.label();
  return inst;
}

/// Runs fn(t) for t in [0, trials) on `jobs` threads; the first failure by
/// trial index is rethrown with the index attached.
template <typename F>
std::vector<TrialOutcome> run_trials(std::size_t trials, std::size_t jobs, F fn) {
  std::vector<TrialOutcome> out(trials);
  std::vector<std::exception_ptr> errors(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        out[t] = fn(t);
        out[t].seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(jobs, trials);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t t = 0; t < trials; ++t) {
    if (!errors[t]) continue;
    const std::string where = "trial " + std::to_string(t) + ": ";
    try {
      std::rethrow_exception(errors[t]);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(where + e.what());
    }
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const auto sel = ProblemSelector::parse(plan.problem);
  RunConfig run = plan.run;
  run.population_size = plan.population.value_or(sel.family == ProblemFamily::engineering ? 20 : 30);

  ExperimentResult result;
  result.problem = sel.label();
  result.algorithm = std::string(algorithm_name(plan.algorithm));
  result.trials = plan.trials;

  std::vector<TrialOutcome> outcomes;
  if (sel.family == ProblemFamily::skp || sel.family == ProblemFamily::mkp) {
    const knapsack::MkpInstance inst = sel.family == ProblemFamily::skp
                                           ? knapsack::as_mkp(knapsack::builtin_skp(sel.name))
                                           : load_mkp(sel);
    inst.validate();
    knapsack::BinaryParams bp;
    bp.firefly = plan.firefly;
    bp.scale_gamma = plan.scale_gamma;
    bp.genetic = plan.genetic;
    bp.run = run;
    bp.theta = plan.theta;
    bp.p_mut = plan.p_mut;
    bp.greedy_seed = plan.greedy_seed;
    bp.firefly_stage = plan.algorithm != Algorithm::ga;
    bp.genetic_stage = plan.algorithm != Algorithm::fa;
    bp.validate();
    result.sense = Sense::maximize;
    result.known_optimum = inst.known_optimum;
    result.dimension = inst.items();
    outcomes = run_trials(plan.trials, plan.jobs, [&](std::size_t t) {
      RngStream rng(plan.seed + t);
      auto r = knapsack::binary_faga_solve(inst, bp, rng);
      return TrialOutcome{r.value, r.evaluations, 0.0, std::move(r.trace),
                          RealVector(r.bits.begin(), r.bits.end())};
    });
  } else {
    const ProblemSpec spec = continuous_problem(sel, plan.dimension);
    spec.validate();
    const PenaltyConfig penalty{plan.theta.value_or(1e6)};
    result.sense = spec.sense;
    result.known_optimum = spec.known_optimum;
    result.dimension = spec.dimension();
    outcomes = run_trials(plan.trials, plan.jobs, [&](std::size_t t) {
      RngStream rng(plan.seed + t);
      RunResult r;
      switch (plan.algorithm) {
        case Algorithm::fa: r = fa_run(spec, plan.firefly, run, penalty, rng); break;
        case Algorithm::ga: r = ga_run(spec, plan.genetic, run, penalty, rng); break;
        case Algorithm::faga:
          r = faga_run(spec, plan.firefly, plan.genetic, run, penalty, rng);
          break;
      }
      return TrialOutcome{r.best.penalized_fitness, r.evaluations, 0.0, std::move(r.trace),
                          std::move(r.best.position)};
    });
  }

  std::vector<double> bests, times;
  std::vector<std::uint64_t> evals;
  std::vector<Trace> traces;
  for (auto& o : outcomes) {
    bests.push_back(o.best);
    evals.push_back(o.evaluations);
    times.push_back(plan.record_time ? o.seconds : 0.0);
    traces.push_back(std::move(o.trace));
  }
  result.stats = aggregate_trials(bests, evals, times, std::move(traces), result.sense);
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    if (bests[t] == result.stats.best) {
      result.best_position = outcomes[t].position;
      break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// configuration echo

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

json plan_to_json(const ExperimentPlan& plan) {
  return json{
      {"problem", plan.problem},
      {"dim", plan.dimension},
      {"algo", std::string(algorithm_name(plan.algorithm))},
      {"trials", plan.trials},
      {"seed", plan.seed},
      {"jobs", plan.jobs},
      {"record-time", plan.record_time},
      {"alpha", plan.firefly.alpha},
      {"beta0", plan.firefly.beta0},
      {"gamma", plan.firefly.gamma},
      {"scale-gamma", plan.scale_gamma},
      {"crossover-rate", plan.genetic.crossover_rate},
      {"mixing-alpha", optional_json(plan.genetic.mixing_alpha)},
      {"mutation-rate", plan.genetic.mutation_rate},
      {"sigma", optional_json(plan.genetic.sigma)},
      {"sigma-scale", plan.genetic.sigma_scale},
      {"tournament-size", plan.genetic.tournament_size},
      {"mutation-scope",
       plan.genetic.mutation_scope == MutationScope::survivors ? "survivors" : "all"},
      {"population", optional_json(plan.population)},
      {"iters", plan.run.max_iterations},
      {"stagnation", optional_json(plan.run.stagnation_window)},
      {"max-evals", optional_json(plan.run.max_evaluations)},
      {"elitism", plan.run.elitism},
      {"theta", optional_json(plan.theta)},
      {"p-mut", plan.p_mut},
      {"greedy-seed", plan.greedy_seed},
  };
}

ExperimentPlan plan_from_json(const json& config, ExperimentPlan p) {
  if (!config.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, v] : config.items()) {
    try {
      if (key == "problem") p.problem = v.get<std::string>();
      else if (key == "dim") p.dimension = v.get<std::size_t>();
      else if (key == "algo") {
        auto a = parse_algorithm(v.get<std::string>());
        if (!a) throw ConfigError("unknown algorithm '" + v.get<std::string>() + "'");
        p.algorithm = *a;
      }
      else if (key == "trials") p.trials = v.get<std::size_t>();
      else if (key == "seed") p.seed = v.get<std::uint64_t>();
      else if (key == "jobs") p.jobs = v.get<std::size_t>();
      else if (key == "record-time") p.record_time = v.get<bool>();
      else if (key == "alpha") p.firefly.alpha = v.get<double>();
      else if (key == "beta0") p.firefly.beta0 = v.get<double>();
      else if (key == "gamma") p.firefly.gamma = v.get<double>();
      else if (key == "scale-gamma") p.scale_gamma = v.get<bool>();
      else if (key == "crossover-rate") p.genetic.crossover_rate = v.get<double>();
      else if (key == "mixing-alpha") p.genetic.mixing_alpha = optional_from<double>(v);
      else if (key == "mutation-rate") p.genetic.mutation_rate = v.get<double>();
      else if (key == "sigma") p.genetic.sigma = optional_from<double>(v);
      else if (key == "sigma-scale") p.genetic.sigma_scale = v.get<double>();
      else if (key == "tournament-size") p.genetic.tournament_size = v.get<std::size_t>();
      else if (key == "mutation-scope") {
        const auto s = v.get<std::string>();
        if (s == "survivors") p.genetic.mutation_scope = MutationScope::survivors;
        else if (s == "all") p.genetic.mutation_scope = MutationScope::all_children;
        else throw ConfigError("mutation-scope must be 'survivors' or 'all'");
      }
      else if (key == "population") p.population = optional_from<std::size_t>(v);
      else if (key == "iters") p.run.max_iterations = v.get<std::size_t>();
      else if (key == "stagnation") p.run.stagnation_window = optional_from<std::size_t>(v);
      else if (key == "max-evals") p.run.max_evaluations = optional_from<std::uint64_t>(v);
      else if (key == "elitism") p.run.elitism = v.get<bool>();
      else if (key == "theta") p.theta = optional_from<double>(v);
      else if (key == "p-mut") p.p_mut = v.get<double>();
      else if (key == "greedy-seed") p.greedy_seed = v.get<bool>();
      else throw ConfigError("unknown configuration key '" + key + "'");
    } catch (const json::exception& e) {
      throw ConfigError("configuration key '" + key + "': " + e.what());
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// emission

namespace {

constexpr const char* kCsvHeader =
    "problem,algorithm,trials,best,mean,worst,std_dev,avg_fun_eval,avg_time_s,total_time_s";

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_num(const std::string& s) {
  if (s == "nan") return kUnset;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

json num_json(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
double json_num(const json& j) { return j.is_null() ? kUnset : j.get<double>(); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw OutputError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string results_csv(const ExperimentResult& r) {
  const auto& s = r.stats;
  std::ostringstream os;
  os << kCsvHeader << '\n'
     << csv_field(r.problem) << ',' << csv_field(r.algorithm) << ',' << r.trials << ','
     << num(s.best) << ',' << num(s.mean) << ',' << num(s.worst) << ',' << num(s.std_dev) << ','
     << num(s.avg_function_evals) << ',' << num(s.avg_time_s) << ',' << num(s.total_time_s)
     << '\n';
  return os.str();
}

std::string results_json(const ExperimentResult& r, const ExperimentPlan& plan) {
  const auto& s = r.stats;
  json trial_bests = json::array();
  for (double b : s.trial_bests) trial_bests.push_back(num_json(b));
  json j{
      {"problem", r.problem},
      {"algorithm", r.algorithm},
      {"trials", r.trials},
      {"best", num_json(s.best)},
      {"mean", num_json(s.mean)},
      {"worst", num_json(s.worst)},
      {"std_dev", num_json(s.std_dev)},
      {"avg_fun_eval", s.avg_function_evals},
      {"avg_time_s", s.avg_time_s},
      {"total_time_s", s.total_time_s},
      {"sense", r.sense == Sense::minimize ? "minimize" : "maximize"},
      {"dimension", r.dimension},
      {"known_optimum", r.known_optimum ? json(*r.known_optimum) : json(nullptr)},
      {"best_position", r.best_position},
      {"trial_bests", trial_bests},
      {"config", plan_to_json(plan)},
  };
  return j.dump(2) + "\n";
}

std::string trace_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "trial,iteration,best_fitness\n";
  for (std::size_t t = 0; t < r.stats.traces.size(); ++t)
    for (const auto& p : r.stats.traces[t]) os << t << ',' << p.iteration << ',' << num(p.best) << '\n';
  return os.str();
}

std::filesystem::path trace_path_for(const std::filesystem::path& destination) {
  auto out = destination;
  out.replace_filename(destination.stem().string() + "_trace.csv");
  return out;
}

void emit_results(const ExperimentResult& result, const ExperimentPlan& plan, Format format,
                  const std::filesystem::path& destination) {
  write_file(destination,
             format == Format::csv ? results_csv(result) : results_json(result, plan));
  write_file(trace_path_for(destination), trace_csv(result));
}

ExperimentResult parse_results_json(std::string_view text) {
  ExperimentResult r;
  try {
    const json j = json::parse(text);
    r.problem = j.at("problem").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.trials = j.at("trials").get<std::size_t>();
    r.stats.best = json_num(j.at("best"));
    r.stats.mean = json_num(j.at("mean"));
    r.stats.worst = json_num(j.at("worst"));
    r.stats.std_dev = json_num(j.at("std_dev"));
    r.stats.avg_function_evals = j.at("avg_fun_eval").get<double>();
    r.stats.avg_time_s = j.at("avg_time_s").get<double>();
    r.stats.total_time_s = j.at("total_time_s").get<double>();
    r.sense = j.value("sense", "minimize") == "maximize" ? Sense::maximize : Sense::minimize;
    r.dimension = j.value("dimension", std::size_t{0});
    if (j.contains("known_optimum") && !j["known_optimum"].is_null())
      r.known_optimum = j["known_optimum"].get<double>();
    if (j.contains("best_position")) r.best_position = j["best_position"].get<RealVector>();
    if (j.contains("trial_bests"))
      for (const auto& b : j["trial_bests"]) r.stats.trial_bests.push_back(json_num(b));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("results json: ") + e.what());
  }
  return r;
}

ExperimentResult parse_results_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.size() != 2 || lines[0] != kCsvHeader)
    throw std::invalid_argument("results csv: expected the header and one row");
  const auto f = split_csv_line(lines[1]);
  if (f.size() != 10) throw std::invalid_argument("results csv: expected 10 fields");
  ExperimentResult r;
  r.problem = f[0];
  r.algorithm = f[1];
  r.trials = static_cast<std::size_t>(parse_num(f[2]));
  r.stats.best = parse_num(f[3]);
  r.stats.mean = parse_num(f[4]);
  r.stats.worst = parse_num(f[5]);
  r.stats.std_dev = parse_num(f[6]);
  r.stats.avg_function_evals = parse_num(f[7]);
  r.stats.avg_time_s = parse_num(f[8]);
  r.stats.total_time_s = parse_num(f[9]);
  return r;
}

}  // namespace faga::harness
