#include "faga/knapsack.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "knapsack_data.hpp"

namespace faga::knapsack {

void KnapsackInstance::validate() const {
  if (profits.size() != weights.size())
    throw ConfigError(id + ": profits and weights differ in length");
  if (!(capacity > 0.0)) throw ConfigError(id + ": capacity must be positive");
  for (double w : weights)
    if (!(w > 0.0)) throw ConfigError(id + ": weights must be positive");
  for (double p : profits)
    if (!(p >= 0.0)) throw ConfigError(id + ": profits must be non-negative");
}

void MkpInstance::validate() const {
  if (weights.size() != capacities.size())
    throw ConfigError(id + ": weight matrix has " + std::to_string(weights.size()) +
                      " rows for " + std::to_string(capacities.size()) + " capacities");
  for (const auto& row : weights)
    if (row.size() != profits.size()) throw ConfigError(id + ": weight row length mismatch");
  for (double c : capacities)
    if (!(c > 0.0)) throw ConfigError(id + ": capacities must be positive");
}

MkpInstance as_mkp(const KnapsackInstance& instance) {
  MkpInstance out;
  out.id = instance.id;
  out.profits = instance.profits;
  out.weights = {instance.weights};
  out.capacities = {instance.capacity};
  out.known_optimum = instance.known_optimum;
  return out;
}

KnapsackInstance as_skp(const MkpInstance& instance) {
  if (instance.constraints() != 1)
    throw ConfigError(instance.id + ": not a single-constraint instance");
  KnapsackInstance out;
  out.id = instance.id;
  out.profits = instance.profits;
  out.weights = instance.weights.front();
  out.capacity = instance.capacities.front();
  out.known_optimum = instance.known_optimum;
  out.declared_items = instance.items();
  return out;
}

double default_theta(std::span<const double> profits) {
  if (profits.empty()) return 0.0;
  return 10.0 * *std::max_element(profits.begin(), profits.end());
}

SkpScore skp_fitness(const KnapsackInstance& instance, std::span<const std::uint8_t> bits,
                     double theta) {
  if (bits.size() != instance.items())
    throw std::invalid_argument("skp_fitness: expected " + std::to_string(instance.items()) +
                                " bits, got " + std::to_string(bits.size()));
  SkpScore s{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    s.value += instance.profits[i];
    s.weight += instance.weights[i];
  }
  const double over = std::max(0.0, s.weight - instance.capacity);
  s.fitness = over > 0.0 ? s.value - theta * over : s.value;
  return s;
}

MkpScore mkp_fitness(const MkpInstance& instance, std::span<const std::uint8_t> bits,
                     double theta) {
  if (bits.size() != instance.items())
    throw std::invalid_argument("mkp_fitness: expected " + std::to_string(instance.items()) +
                                " bits, got " + std::to_string(bits.size()));
  MkpScore s{0.0, 0.0, std::vector<double>(instance.constraints(), 0.0)};
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) s.value += instance.profits[j];
  double total = 0.0;
  for (std::size_t i = 0; i < instance.constraints(); ++i) {
    double load = 0.0;
    for (std::size_t j = 0; j < bits.size(); ++j)
      if (bits[j]) load += instance.weights[i][j];
    s.violations[i] = std::max(0.0, load - instance.capacities[i]);
    total += s.violations[i];
  }
  s.fitness = total > 0.0 ? s.value - theta * total : s.value;
  return s;
}

bool is_feasible(const MkpInstance& instance, std::span<const std::uint8_t> bits) {
  const auto s = mkp_fitness(instance, bits, 0.0);
  return std::all_of(s.violations.begin(), s.violations.end(), [](double v) { return v == 0.0; });
}

// ---------------------------------------------------------------------------
// exact solvers

namespace {

bool integral(double x) { return std::isfinite(x) && std::floor(x) == x; }

constexpr std::size_t kMaxDpCells = std::size_t{1} << 28;

ExactSolution dp_table(const KnapsackInstance& inst) {
  const std::size_t n = inst.items();
  const auto cap = static_cast<std::size_t>(inst.capacity);
  std::vector<double> best(cap + 1, 0.0);
  std::vector<std::uint8_t> take(n * (cap + 1), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<std::size_t>(inst.weights[i]);
    if (w > cap) continue;
    for (std::size_t c = cap; c >= w; --c) {
      const double with = best[c - w] + inst.profits[i];
      if (with > best[c]) {
        best[c] = with;
        take[i * (cap + 1) + c] = 1;
      }
      if (c == w) break;
    }
  }
  ExactSolution out;
  out.value = best[cap];
  out.bits.assign(n, 0);
  std::size_t c = cap;
  for (std::size_t i = n; i-- > 0;) {
    if (take[i * (cap + 1) + c]) {
      out.bits[i] = 1;
      c -= static_cast<std::size_t>(inst.weights[i]);
    }
  }
  return out;
}

}  // namespace

ExactSolution dp_solve(const KnapsackInstance& instance) {
  ExactSolution empty{0.0, BitVector(instance.items(), 0)};
  if (!(instance.capacity > 0.0)) return empty;
  const bool integer_data =
      integral(instance.capacity) &&
      std::all_of(instance.weights.begin(), instance.weights.end(), integral);
  if (integer_data &&
      (instance.items() + 1) * (static_cast<std::size_t>(instance.capacity) + 1) <= kMaxDpCells)
    return dp_table(instance);
  return branch_and_bound_solve(instance);
}

ExactSolution branch_and_bound_solve(const KnapsackInstance& instance) {
  const std::size_t n = instance.items();
  ExactSolution best{0.0, BitVector(n, 0)};
  if (!(instance.capacity > 0.0) || n == 0) return best;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.profits[a] * instance.weights[b] > instance.profits[b] * instance.weights[a];
  });

  auto bound = [&](std::size_t depth, double value, double room) {
    for (std::size_t k = depth; k < n; ++k) {
      const std::size_t i = order[k];
      if (instance.weights[i] <= room) {
        room -= instance.weights[i];
        value += instance.profits[i];
      } else {
        return value + instance.profits[i] * room / instance.weights[i];
      }
    }
    return value;
  };

  BitVector current(n, 0);
  // explicit recursion over the ratio order, "take" branch first
  auto search = [&](auto&& self, std::size_t depth, double value, double room) -> void {
    if (value > best.value) {
      best.value = value;
      best.bits = current;
    }
    if (depth == n) return;
    if (bound(depth, value, room) <= best.value) return;
    const std::size_t i = order[depth];
    if (instance.weights[i] <= room) {
      current[i] = 1;
      self(self, depth + 1, value + instance.profits[i], room - instance.weights[i]);
      current[i] = 0;
    }
    self(self, depth + 1, value, room);
  };
  search(search, 0, 0.0, instance.capacity);
  return best;
}

ExactSolution exhaustive_solve(const KnapsackInstance& instance) {
  const std::size_t n = instance.items();
  if (n > 30) throw std::invalid_argument("exhaustive_solve: too many items");
  ExactSolution best{0.0, BitVector(n, 0)};
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    double value = 0.0, weight = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        value += instance.profits[i];
        weight += instance.weights[i];
      }
    }
    if (weight <= instance.capacity && value > best.value) {
      best.value = value;
      best_mask = mask;
    }
  }
  for (std::size_t i = 0; i < n; ++i) best.bits[i] = (best_mask >> i) & 1U;
  return best;
}

// ---------------------------------------------------------------------------
// binary operators

std::vector<double> normalize_fitness(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.5);
  if (values.empty()) return out;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi == *lo) return out;
  const double range = *hi - *lo;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  return out;
}

BitVector binarize(std::span<const double> position) {
  BitVector bits(position.size());
  for (std::size_t k = 0; k < position.size(); ++k) bits[k] = position[k] >= 0.5 ? 1 : 0;
  return bits;
}

BitVector one_point_crossover(std::span<const std::uint8_t> p1, std::span<const std::uint8_t> p2,
                              std::size_t cut) {
  if (p1.size() != p2.size()) throw std::invalid_argument("one_point_crossover: length mismatch");
  if (p1.size() < 2) throw std::invalid_argument("one_point_crossover: need at least 2 bits");
  if (cut < 1 || cut >= p1.size()) throw std::invalid_argument("one_point_crossover: bad cut");
  BitVector child(p1.begin(), p1.begin() + static_cast<std::ptrdiff_t>(cut));
  child.insert(child.end(), p2.begin() + static_cast<std::ptrdiff_t>(cut), p2.end());
  return child;
}

BitVector one_point_crossover(std::span<const std::uint8_t> p1, std::span<const std::uint8_t> p2,
                              RngStream& rng) {
  if (p1.size() < 2) throw std::invalid_argument("one_point_crossover: need at least 2 bits");
  return one_point_crossover(p1, p2, 1 + rng.index(p1.size() - 1));
}

BitVector bit_flip_mutation(std::span<const std::uint8_t> bits, double p_mut, RngStream& rng) {
  BitVector out(bits.begin(), bits.end());
  for (auto& b : out)
    if (rng.chance(p_mut)) b = b ? 0 : 1;
  return out;
}

// ---------------------------------------------------------------------------
// binary FAGA

void BinaryParams::validate() const {
  firefly.validate();
  genetic.validate();
  run.validate();
  if (theta && !(*theta >= 0.0)) throw ConfigError("theta must be non-negative");
  if (!(p_mut >= 0.0 && p_mut <= 1.0)) throw ConfigError("p_mut must lie in [0, 1]");
}

namespace {

struct Scored {
  double fitness;
  double value;
  bool feasible;
};

struct Member {
  RealVector position;
  BitVector bits;
  Scored score;
};

RealVector latent_from(const BitVector& bits) { return RealVector(bits.begin(), bits.end()); }

/// Adds items in decreasing order of `ratio` while every constraint still holds.
BitVector greedy_fill(const MkpInstance& inst, std::span<const double> ratio) {
  const std::size_t n = inst.items();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratio[a] > ratio[b]; });
  std::vector<double> load(inst.constraints(), 0.0);
  BitVector bits(n, 0);
  for (std::size_t j : order) {
    bool fits = true;
    for (std::size_t i = 0; i < inst.constraints() && fits; ++i)
      fits = load[i] + inst.weights[i][j] <= inst.capacities[i];
    if (!fits) continue;
    bits[j] = 1;
    for (std::size_t i = 0; i < inst.constraints(); ++i) load[i] += inst.weights[i][j];
  }
  return bits;
}

BitVector greedy_solution(const MkpInstance& inst) {
  std::vector<double> ratio(inst.items(), 0.0);
  for (std::size_t j = 0; j < inst.items(); ++j) {
    double scaled = 0.0;
    for (std::size_t i = 0; i < inst.constraints(); ++i)
      scaled += inst.weights[i][j] / inst.capacities[i];
    ratio[j] = scaled > 0.0 ? inst.profits[j] / scaled : inst.profits[j] * 1e300;
  }
  return greedy_fill(inst, ratio);
}

class BinarySearch {
 public:
  BinarySearch(const MkpInstance& inst, const BinaryParams& params, RngStream& rng)
      : inst_(inst),
        params_(params),
        rng_(rng),
        theta_(params.theta.value_or(default_theta(inst.profits))),
        fparams_(params.firefly) {
    if (params.scale_gamma && inst.items() > 0)
      fparams_.gamma = params.firefly.gamma / static_cast<double>(inst.items());
  }

  BinaryResult run() {
    const std::size_t n = inst_.items();
    const std::size_t size = params_.run.population_size;
    auto start = init_population(Bounds::uniform(n, 0.0, 1.0), size, rng_);
    pop_.reserve(size);
    for (auto& ind : start) pop_.push_back(make_member(std::move(ind.position)));
    // the empty selection is always feasible, so a feasible best always exists
    pop_.back() = make_member(RealVector(n, 0.0));
    if (params_.greedy_seed && size >= 2) pop_.front() = make_member(latent_from(greedy_solution(inst_)));
    elite_ = pop_[best_index()];

    BinaryResult result;
    std::size_t stagnant = 0;
    const auto& run = params_.run;
    for (std::size_t it = 1; it <= run.max_iterations; ++it) {
      if (run.max_evaluations && evaluations_ >= *run.max_evaluations) break;
      if (run.stagnation_window && stagnant >= *run.stagnation_window) break;
      const double before = best_value_;
      if (params_.firefly_stage) firefly_pass();
      if (params_.genetic_stage) genetic_stage();
      if (run.elitism) {
        const std::size_t b = best_index();
        if (elite_.score.fitness > pop_[b].score.fitness) pop_[worst_index()] = elite_;
      }
      stagnant = best_value_ > before ? 0 : stagnant + 1;
      result.trace.push_back({it, best_value_});
      result.iterations = it;
    }
    result.bits = best_bits_;
    result.value = best_value_;
    result.evaluations = evaluations_;
    return result;
  }

 private:
  Scored score(const BitVector& bits) {
    ++evaluations_;
    const auto s = mkp_fitness(inst_, bits, theta_);
    const bool feasible = std::all_of(s.violations.begin(), s.violations.end(),
                                      [](double v) { return v == 0.0; });
    if (feasible && (best_bits_.empty() || s.value > best_value_)) {
      best_value_ = s.value;
      best_bits_ = bits;
    }
    return {s.fitness, s.value, feasible};
  }

  Member make_member(RealVector position) {
    Member m;
    m.position = std::move(position);
    m.bits = binarize(m.position);
    m.score = score(m.bits);
    track_elite(m);
    return m;
  }

  void track_elite(const Member& m) {
    if (!has_elite_ || m.score.fitness > elite_.score.fitness) {
      elite_ = m;
      has_elite_ = true;
    }
  }

  void relocate(Member& m, RealVector position) {
    for (auto& v : position) v = std::clamp(v, 0.0, 1.0);
    m.position = std::move(position);
    m.bits = binarize(m.position);
    m.score = score(m.bits);
    track_elite(m);
  }

  void firefly_pass() {
    for (std::size_t i = 0; i < pop_.size(); ++i) {
      bool moved = false;
      for (std::size_t j = 0; j < pop_.size(); ++j) {
        if (!(pop_[j].score.fitness > pop_[i].score.fitness)) continue;
        relocate(pop_[i], firefly_move(pop_[i].position, pop_[j].position, fparams_, rng_));
        moved = true;
      }
      if (!moved) relocate(pop_[i], firefly_random_walk(pop_[i].position, fparams_, rng_));
    }
  }

  void genetic_stage() {
    const std::size_t size = pop_.size();
    if (size < 2 || inst_.items() < 2) return;
    for (std::size_t k = 0; k < size / 2; ++k) {
      if (!rng_.chance(params_.genetic.crossover_rate)) continue;
      const std::size_t a = rng_.index(size);
      std::size_t b = rng_.index(size - 1);
      if (b >= a) ++b;
      Member child;
      child.bits = one_point_crossover(pop_[a].bits, pop_[b].bits, rng_);
      child.position = latent_from(child.bits);
      child.score = score(child.bits);
      track_elite(child);

      const double fa = pop_[a].score.fitness, fb = pop_[b].score.fitness;
      const Member* kept;
      if (child.score.fitness > fa && child.score.fitness > fb) {
        const std::size_t worse = fa < fb ? a : b;
        pop_[worse] = std::move(child);
        kept = &pop_[worse];
      } else {
        kept = fa >= fb ? &pop_[a] : &pop_[b];
      }

      BitVector mutated = bit_flip_mutation(kept->bits, params_.p_mut, rng_);
      if (mutated == kept->bits) continue;
      Member mutant;
      mutant.position = latent_from(mutated);
      mutant.bits = std::move(mutated);
      mutant.score = score(mutant.bits);
      track_elite(mutant);
      pop_[worst_index()] = std::move(mutant);
    }
  }

  std::size_t best_index() const {
    std::size_t b = 0;
    for (std::size_t i = 1; i < pop_.size(); ++i)
      if (pop_[i].score.fitness > pop_[b].score.fitness) b = i;
    return b;
  }

  std::size_t worst_index() const {
    std::size_t w = 0;
    for (std::size_t i = 1; i < pop_.size(); ++i)
      if (pop_[i].score.fitness < pop_[w].score.fitness) w = i;
    return w;
  }

  const MkpInstance& inst_;
  const BinaryParams& params_;
  RngStream& rng_;
  double theta_;
  FireflyParams fparams_;
  std::vector<Member> pop_;
  Member elite_;
  bool has_elite_ = false;
  BitVector best_bits_;
  double best_value_ = 0.0;
  std::uint64_t evaluations_ = 0;
};

}  // namespace

BinaryResult binary_faga_solve(const MkpInstance& instance, const BinaryParams& params,
                               RngStream& rng) {
  instance.validate();
  params.validate();
  return BinarySearch(instance, params, rng).run();
}

BinaryResult binary_faga_solve(const KnapsackInstance& instance, const BinaryParams& params,
                               RngStream& rng) {
  instance.validate();
  return binary_faga_solve(as_mkp(instance), params, rng);
}

// ---------------------------------------------------------------------------
// built-in instances

const std::vector<std::string>& builtin_skp_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& r : detail::skp_records()) out.emplace_back(r.id);
    return out;
  }();
  return ids;
}

KnapsackInstance builtin_skp(std::string_view id) {
  for (const auto& r : detail::skp_records()) {
    if (id != r.id) continue;
    KnapsackInstance inst;
    inst.id = r.id;
    inst.profits = r.profits;
    inst.weights = r.weights;
    inst.capacity = r.capacity;
    inst.known_optimum = r.optimum;
    inst.declared_items = r.declared_items;
    inst.data_incomplete = r.incomplete;
    if (id == "f15") inst.alternate_optimum = 2444.0;
    return inst;
  }
  throw ConfigError("unknown knapsack instance '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// OR-Library text format

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  double number(const char* what) {
    skip_space();
    if (pos_ >= text_.size())
      throw ParseError(pos_, std::string("unexpected end of input, expected ") + what);
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    const std::string_view token = text_.substr(begin, pos_ - begin);
    double value = 0.0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value))
      throw ParseError(begin, "non-numeric token '" + std::string(token) + "', expected " + what);
    return value;
  }

  std::size_t count(const char* what) {
    skip_space();
    const std::size_t begin = pos_;
    const double v = number(what);
    if (!(v >= 0.0) || std::floor(v) != v || v > 1e9)
      throw ParseError(begin, std::string("expected a non-negative integer for ") + what);
    return static_cast<std::size_t>(v);
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  }
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<MkpInstance> parse_orlib_mkp(std::string_view text, bool strict) {
  Tokenizer tok(text);
  std::vector<MkpInstance> out;
  if (tok.at_end()) {
    if (strict) throw ParseError(0, "empty input, expected an instance header");
    return out;
  }
  while (!tok.at_end()) {
    MkpInstance inst;
    inst.id = "mkp" + std::to_string(out.size() + 1);
    const std::size_t n = tok.count("item count");
    const std::size_t m = tok.count("constraint count");
    const double optimum = tok.number("optimum");
    if (optimum != 0.0) inst.known_optimum = optimum;
    inst.profits.resize(n);
    for (auto& p : inst.profits) p = tok.number("profit");
    inst.weights.assign(m, std::vector<double>(n));
    for (auto& row : inst.weights)
      for (auto& w : row) w = tok.number("constraint coefficient");
    inst.capacities.resize(m);
    for (auto& c : inst.capacities) c = tok.number("capacity");
    out.push_back(std::move(inst));
  }
  return out;
}

std::string serialize_orlib_mkp(std::span<const MkpInstance> instances) {
  std::ostringstream os;
  auto line = [&](const std::vector<double>& values) {
    for (std::size_t k = 0; k < values.size(); ++k) os << (k ? " " : "") << format_number(values[k]);
    os << '\n';
  };
  for (const auto& inst : instances) {
    os << inst.items() << ' ' << inst.constraints() << ' '
       << format_number(inst.known_optimum.value_or(0.0)) << '\n';
    line(inst.profits);
    for (const auto& row : inst.weights) line(row);
    line(inst.capacities);
  }
  return os.str();
}

}  // namespace faga::knapsack
