#include "synchrolab/randmodel.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

#include "synchrolab/error.hpp"

namespace synchrolab {

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw InvalidInput("probability vector is empty");
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidInput("probability vector has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvalidInput("probability vector sums to " + std::to_string(sum));
  }
}

ProbVector ProbVector::uniform(std::size_t n) {
  if (n == 0) throw InvalidInput("probability vector is empty");
  return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbVector ProbVector::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("probability vector is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidInput("probability vector must be a JSON array");
  std::vector<double> p;
  for (const auto& v : doc) {
    if (!v.is_number()) throw InvalidInput("probability vector entries must be numbers");
    p.push_back(v.get<double>());
  }
  return ProbVector(std::move(p));
}

bool ProbVector::is_uniform() const {
  return std::all_of(p_.begin(), p_.end(), [&](double v) { return v == p_.front(); });
}

ProbVector sample_simplex_point(std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidInput("simplex needs at least one vertex");
  // Normalized i.i.d. exponentials are uniform on the simplex.
  std::vector<double> w(n);
  for (auto& v : w) v = -std::log(rng.uniform_open_closed());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  // Push rounding residue onto the largest entry so the sum check is tight.
  const double residue = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
  *std::max_element(w.begin(), w.end()) += residue;
  return ProbVector(std::move(w));
}

FunctionalGraph::FunctionalGraph(std::vector<State> succ) : succ_(std::move(succ)) {
  if (succ_.empty()) throw InvalidInput("functional graph needs at least one vertex");
  for (State s : succ_) {
    if (s >= succ_.size()) throw InvalidInput("successor out of range");
  }
}

FunctionalGraph FunctionalGraph::from_letter(const Automaton& aut, Letter c) {
  if (c >= aut.num_letters()) throw InvalidInput("letter out of range");
  const auto map = aut.letter_map(c);
  return FunctionalGraph(std::vector<State>(map.begin(), map.end()));
}

Automaton FunctionalGraph::as_automaton() const {
  return Automaton::from_letter_maps({succ_});
}

namespace {

std::vector<State> uniform_successors(std::size_t n, Rng& rng) {
  std::vector<State> succ(n);
  for (auto& s : succ) s = static_cast<State>(rng.below(n));
  return succ;
}

}  // namespace

Automaton sample_uniform_automaton(std::size_t n, std::size_t k, Seed seed) {
  Rng rng(seed);
  return sample_uniform_automaton(n, k, rng);
}

Automaton sample_uniform_automaton(std::size_t n, std::size_t k, Rng& rng) {
  if (n == 0) throw InvalidInput("automaton needs n >= 1");
  if (k == 0) throw InvalidInput("automaton needs k >= 1");
  std::vector<std::vector<State>> maps;
  maps.reserve(k);
  for (std::size_t c = 0; c < k; ++c) maps.push_back(uniform_successors(n, rng));
  return Automaton::from_letter_maps(std::move(maps));
}

FunctionalGraph sample_one_out_digraph(const ProbVector& p, Seed seed) {
  Rng rng(seed);
  return sample_one_out_digraph(p, rng);
}

FunctionalGraph sample_one_out_digraph(const ProbVector& p, Rng& rng) {
  const std::size_t n = p.size();
  if (p.is_uniform()) return FunctionalGraph(uniform_successors(n, rng));
  std::vector<double> cumulative(n);
  std::partial_sum(p.values().begin(), p.values().end(), cumulative.begin());
  std::size_t last_positive = n - 1;
  while (p[last_positive] == 0.0) --last_positive;
  std::vector<State> succ(n);
  for (auto& s : succ) {
    const double u = rng.uniform() * cumulative.back();
    // Zero-weight vertices are never the first entry above u.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t v = static_cast<std::size_t>(it - cumulative.begin());
    if (v == n) v = last_positive;  // u rounded up to the total
    s = static_cast<State>(v);
  }
  return FunctionalGraph(std::move(succ));
}

StateSet cyclic_states(const FunctionalGraph& g) {
  const std::size_t n = g.size();
  constexpr std::uint32_t kUnseen = 0;
  // walk_id[v] = 1 + index of the walk that first reached v.
  std::vector<std::uint32_t> walk_id(n, kUnseen);
  StateSet cyclic(n);
  for (std::size_t start = 0; start < n; ++start) {
    if (walk_id[start] != kUnseen) continue;
    const auto id = static_cast<std::uint32_t>(start + 1);
    State v = static_cast<State>(start);
    while (walk_id[v] == kUnseen) {
      walk_id[v] = id;
      v = g.succ(v);
    }
    if (walk_id[v] == id) {
      // Closed a new cycle through v.
      State u = v;
      do {
        cyclic.insert(u);
        u = g.succ(u);
      } while (u != v);
    }
  }
  return cyclic;
}

double survival_probability(std::size_t n, std::size_t t) {
  if (t > n) return 0.0;
  double p = 1.0;
  const double nn = static_cast<double>(n);
  for (std::size_t i = 1; i < t; ++i) p *= 1.0 - static_cast<double>(i) / nn;
  return p;
}

namespace {

// Sum over subsets of p[from..) of (|C| + chosen)! * prod, with the chosen
// prefix already folded into `prod`.
double subset_sum(const std::vector<double>& p, std::size_t from, std::size_t chosen,
                  double prod, const std::vector<double>& factorial) {
  if (from == p.size()) return chosen == 0 ? 0.0 : factorial[chosen] * prod;
  return subset_sum(p, from + 1, chosen, prod, factorial) +
         subset_sum(p, from + 1, chosen + 1, prod * p[from], factorial);
}

}  // namespace

double expected_cyclic_exact(const ProbVector& p) {
  const std::size_t n = p.size();
  if (n > kMaxExactCyclicVertices) {
    throw CapacityError("exact cyclic expectation enumerates 2^" + std::to_string(n) +
                        " subsets; limit is " + std::to_string(kMaxExactCyclicVertices) +
                        " vertices");
  }
  std::vector<double> factorial(n + 1, 1.0);
  for (std::size_t j = 1; j <= n; ++j) factorial[j] = factorial[j - 1] * static_cast<double>(j);
  return subset_sum(p.values(), 0, 0, 1.0, factorial);
}

double expected_cyclic_symmetric(const ProbVector& p) {
  const std::size_t n = p.size();
  // e[j] = j! * (elementary symmetric polynomial of degree j), built one
  // vertex at a time: e_j <- e_j + j * p_v * e_{j-1}.
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = v + 1; j >= 1; --j) {
      e[j] += static_cast<double>(j) * p[v] * e[j - 1];
    }
  }
  return std::accumulate(e.begin() + 1, e.end(), 0.0);
}

std::vector<double> qk_sequence(std::size_t max_k) {
  std::vector<double> q(max_k + 1);
  q[0] = 0.0;
  for (std::size_t k = 0; k < max_k; ++k) q[k + 1] = std::exp(-(1.0 - q[k]));
  return q;
}

bool check_bernoulli_inequality(std::uint64_t a, std::uint64_t b, double x) {
  if (a > b) throw InvalidInput("inequality needs a <= b");
  if (!(x > 0.0 && x <= 1.0)) throw InvalidInput("inequality needs x in (0, 1]");
  if (a == b) return true;  // left side is an empty power, right side <= 1
  const double ratio = static_cast<double>(a) * x / static_cast<double>(b);
  const double lhs_log = static_cast<double>(b - a) * std::log1p(-ratio);
  const double rhs_log = -static_cast<double>(a) * x;
  return lhs_log >= rhs_log;
}

std::vector<std::optional<std::uint32_t>> distance_to_set(const FunctionalGraph& g,
                                                          const StateSet& targets) {
  const std::size_t n = g.size();
  if (targets.empty()) throw InvalidInput("distance target set is empty");
  if (targets.universe() != n) throw InvalidInput("target set universe mismatch");

  // Reverse adjacency in CSR form.
  std::vector<std::uint32_t> offset(n + 1, 0);
  for (State v = 0; v < n; ++v) ++offset[g.succ(v) + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<State> preds(n);
  std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
  for (State v = 0; v < n; ++v) preds[fill[g.succ(v)]++] = v;

  std::vector<std::optional<std::uint32_t>> dist(n);
  std::vector<State> queue;
  queue.reserve(n);
  for (State s : targets.members()) {
    dist[s] = 0;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const State u = queue[head];
    for (std::uint32_t i = offset[u]; i < offset[u + 1]; ++i) {
      const State w = preds[i];
      if (!dist[w]) {
        dist[w] = *dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

StateSet sample_subset(std::size_t n, std::size_t size, Rng& rng) {
  if (size > n) throw InvalidInput("subset larger than its universe");
  // Floyd's algorithm: `size` draws, no O(n) scratch.
  StateSet chosen(n);
  for (std::size_t j = n - size; j < n; ++j) {
    const auto t = static_cast<State>(rng.below(j + 1));
    if (!chosen.insert(t)) chosen.insert(static_cast<State>(j));
  }
  return chosen;
}

}  // namespace synchrolab
