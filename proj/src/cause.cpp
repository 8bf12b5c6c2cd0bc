#include "causeway/cause.hpp"

#include <algorithm>
#include <cstdlib>

#include "causeway/error.hpp"

namespace causeway {

namespace {

// ---------------------------------------------------------------------------
// search engine
//
// Interventions are pinned state entries instead of rebuilt models: pinning
// an endogenous variable to v and replacing its mechanism by the constant v
// solve to the same unique valuation in an acyclic model.
// ---------------------------------------------------------------------------

class WeakCauseSearch {
 public:
  explicit WeakCauseSearch(const CausalSituation& sit)
      : sit_(sit),
        model_(sit.model()),
        elems_(model_.domain().elements()),
        state_(static_cast<std::size_t>(model_.num_vars())),
        pinned_(static_cast<std::size_t>(model_.num_vars()), 0) {}

  // Candidate X (variable indices, ascending) at its actual values; effect
  // index y_var with actual value y. Returns the first witness (W, w', x').
  struct Witness {
    std::vector<int> contingency;
    std::vector<Value> contingency_values;
    std::vector<Value> counterfactual_values;
  };

  std::optional<Witness> search(const std::vector<int>& xs, int y_var) {
    const std::vector<Value>& sigma = sit_.sigma_state();
    const Value y = sigma[static_cast<std::size_t>(y_var)];

    std::vector<int> eligible;  // endogenous, outside X, not the effect
    for (int v = model_.num_exogenous(); v < model_.num_vars(); ++v)
      if (v != y_var && !std::binary_search(xs.begin(), xs.end(), v)) eligible.push_back(v);

    std::vector<int> w(eligible.size());
    for (std::size_t wsize = 0; wsize <= eligible.size(); ++wsize) {
      // first combination of this size
      std::vector<std::size_t> comb(wsize);
      for (std::size_t i = 0; i < wsize; ++i) comb[i] = i;
      while (true) {
        for (std::size_t i = 0; i < wsize; ++i) w[i] = eligible[comb[i]];
        if (auto found = try_contingency(xs, y_var, y, std::vector<int>(w.begin(), w.begin() + static_cast<long>(wsize))))
          return found;
        // next combination, lexicographic
        std::size_t i = wsize;
        while (i > 0) {
          --i;
          if (comb[i] + 1 <= eligible.size() - (wsize - i)) {
            ++comb[i];
            for (std::size_t j = i + 1; j < wsize; ++j) comb[j] = comb[j - 1] + 1;
            break;
          }
          if (i == 0) goto next_size;
        }
        if (wsize == 0) break;  // single empty combination
      }
    next_size:;
    }
    return std::nullopt;
  }

 private:
  std::optional<Witness> try_contingency(const std::vector<int>& xs, int y_var, Value y,
                                         const std::vector<int>& w) {
    std::vector<int> remaining;  // Z candidates: endogenous minus X, W, effect
    for (int v = model_.num_exogenous(); v < model_.num_vars(); ++v)
      if (v != y_var && !std::binary_search(xs.begin(), xs.end(), v) &&
          std::find(w.begin(), w.end(), v) == w.end())
        remaining.push_back(v);
    if (remaining.size() > 63) throw Error("too many variables for exhaustive subset search");

    std::vector<Value> xv(xs.size()), wv(w.size());
    std::vector<std::size_t> xodo(xs.size(), 0);
    while (true) {  // x' tuples
      for (std::size_t i = 0; i < xs.size(); ++i) xv[i] = elems_[xodo[i]];

      std::vector<std::size_t> wodo(w.size(), 0);
      while (true) {  // w' tuples
        for (std::size_t i = 0; i < w.size(); ++i) wv[i] = elems_[wodo[i]];

        if (passes_both(xs, xv, w, wv, y_var, y, remaining)) {
          Witness wit;
          wit.contingency = w;
          wit.contingency_values = wv;
          wit.counterfactual_values = xv;
          return wit;
        }

        std::size_t i = w.size();
        while (i > 0) {
          --i;
          if (++wodo[i] < elems_.size()) break;
          wodo[i] = 0;
          if (i == 0) goto w_done;
        }
        if (w.empty()) break;
      }
    w_done:;

      std::size_t i = xs.size();
      while (i > 0) {
        --i;
        if (++xodo[i] < elems_.size()) break;
        xodo[i] = 0;
        if (i == 0) return std::nullopt;
      }
      if (xs.empty()) return std::nullopt;
    }
  }

  bool passes_both(const std::vector<int>& xs, const std::vector<Value>& xv,
                   const std::vector<int>& w, const std::vector<Value>& wv, int y_var, Value y,
                   const std::vector<int>& remaining) {
    const std::vector<Value>& sigma = sit_.sigma_state();

    // (a) Y differs from y once X is moved to x' under the contingency.
    reset_pins();
    for (std::size_t i = 0; i < xs.size(); ++i) pin(xs[i], xv[i]);
    for (std::size_t i = 0; i < w.size(); ++i) pin(w[i], wv[i]);
    run();
    if (state_[static_cast<std::size_t>(y_var)] == y) return false;

    // (b) Y stays at y with X at its actual values, W held at w', and any
    // subset of the remaining variables frozen at their actual values. When
    // w' equals the actual contingency values every pin is actual, the
    // unique solution is sigma itself, and the whole quantifier is immediate.
    bool all_actual = true;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (wv[i] != sigma[static_cast<std::size_t>(w[i])]) {
        all_actual = false;
        break;
      }
    if (all_actual) return true;

    const unsigned long long subsets = 1ULL << remaining.size();
    for (unsigned long long mask = 0; mask < subsets; ++mask) {
      reset_pins();
      for (std::size_t i = 0; i < xs.size(); ++i) pin(xs[i], sigma[static_cast<std::size_t>(xs[i])]);
      for (std::size_t i = 0; i < w.size(); ++i) pin(w[i], wv[i]);
      for (std::size_t i = 0; i < remaining.size(); ++i)
        if (mask & (1ULL << i)) pin(remaining[i], sigma[static_cast<std::size_t>(remaining[i])]);
      run();
      if (state_[static_cast<std::size_t>(y_var)] != y) return false;
    }
    return true;
  }

  void reset_pins() {
    std::fill(pinned_.begin(), pinned_.end(), 0);
    std::copy(sit_.sigma_state().begin(), sit_.sigma_state().end(), state_.begin());
  }
  void pin(int var, Value v) {
    pinned_[static_cast<std::size_t>(var)] = 1;
    state_[static_cast<std::size_t>(var)] = v;
  }
  void run() { model_.eval_state(state_, pinned_); }

  const CausalSituation& sit_;
  const CausalModel& model_;
  const std::vector<Value>& elems_;
  std::vector<Value> state_;
  std::vector<char> pinned_;
};

void validate_effect(const CausalSituation& sit, const std::string& effect, Value value) {
  if (!sit.model().is_endogenous(effect))
    throw Error("effect '" + effect + "' is not an endogenous variable");
  if (!sit.model().domain().contains(value))
    throw Error("effect value " + value.str() + " not in domain " + sit.model().domain().str());
}

std::vector<int> query_indices(const CausalSituation& sit, const CauseQuery& q) {
  if (q.cause.empty()) throw Error("cause candidate set must not be empty");
  validate_effect(sit, q.effect, q.effect_value);
  std::vector<int> xs;
  std::set<std::string> seen;
  for (const auto& [name, v] : q.cause) {
    if (!sit.model().is_endogenous(name))
      throw Error("cause variable '" + name + "' is not an endogenous variable");
    if (!seen.insert(name).second) throw Error("duplicate cause variable '" + name + "'");
    if (name == q.effect) throw Error("effect cannot appear among the cause variables");
    if (!sit.model().domain().contains(v))
      throw Error("cause value " + v.str() + " not in domain " + sit.model().domain().str());
    xs.push_back(sit.model().index_of(name));
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

CauseQuery sorted_query(const CausalSituation& sit, const std::vector<int>& xs,
                        const std::string& effect, Value effect_value) {
  CauseQuery q;
  for (int v : xs)
    q.cause.emplace_back(sit.model().var_at(v), sit.sigma_state()[static_cast<std::size_t>(v)]);
  q.effect = effect;
  q.effect_value = effect_value;
  return q;
}

WitnessedCause make_witness(const CausalSituation& sit, const CauseQuery& query,
                            const WeakCauseSearch::Witness& found, WitnessedCause::Kind kind) {
  WitnessedCause out;
  out.query = query;
  for (int v : found.contingency) out.contingency.push_back(sit.model().var_at(v));
  out.contingency_values = found.contingency_values;
  out.counterfactual_values = found.counterfactual_values;
  out.kind = kind;
  return out;
}

}  // namespace

int default_max_cause_size() {
  if (const char* s = std::getenv("CAUSEWAY_MAX_CAUSE_SIZE")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return 3;
}

std::string WitnessedCause::str() const {
  std::string s;
  for (std::size_t i = 0; i < query.cause.size(); ++i) {
    if (i) s += ", ";
    s += query.cause[i].first + "=" + query.cause[i].second.str();
  }
  s += " causes " + query.effect + "=" + query.effect_value.str();
  s += " [W={";
  for (std::size_t i = 0; i < contingency.size(); ++i) {
    if (i) s += ", ";
    s += contingency[i] + "=" + contingency_values[i].str();
  }
  s += "}, x'=(";
  for (std::size_t i = 0; i < counterfactual_values.size(); ++i) {
    if (i) s += ", ";
    s += counterfactual_values[i].str();
  }
  s += ")]";
  return s;
}

std::optional<WitnessedCause> is_weak_cause(const CausalSituation& sit, const CauseQuery& query) {
  std::vector<int> xs = query_indices(sit, query);

  // Condition 1: the query must describe what actually happened.
  for (const auto& [name, v] : query.cause)
    if (sit.actual(name) != v) return std::nullopt;
  if (sit.actual(query.effect) != query.effect_value) return std::nullopt;

  WeakCauseSearch engine(sit);
  auto found = engine.search(xs, sit.model().index_of(query.effect));
  if (!found) return std::nullopt;
  return make_witness(sit, sorted_query(sit, xs, query.effect, query.effect_value), *found,
                      WitnessedCause::Kind::Weak);
}

std::vector<WitnessedCause> actual_causes(const CausalSituation& sit, const std::string& effect,
                                          Value effect_value, int max_size) {
  validate_effect(sit, effect, effect_value);
  if (max_size < 1) throw Error("max cause size must be at least 1");
  std::vector<WitnessedCause> out;
  if (sit.actual(effect) != effect_value) return out;

  const CausalModel& m = sit.model();
  const int y_var = m.index_of(effect);
  std::vector<int> candidates;
  for (int v = m.num_exogenous(); v < m.num_vars(); ++v)
    if (v != y_var) candidates.push_back(v);

  WeakCauseSearch engine(sit);
  // Weak-cause verdicts per candidate set; by the time a set is tested all of
  // its proper subsets are already present, so minimality is a lookup. The
  // empty set is never a weak cause (its two conditions evaluate the same
  // intervened model and contradict each other), so singletons are minimal.
  std::map<std::vector<int>, bool> weak;
  std::map<std::vector<int>, WeakCauseSearch::Witness> witnesses;

  const int limit = std::min<int>(max_size, static_cast<int>(candidates.size()));
  for (int size = 1; size <= limit; ++size) {
    std::vector<std::size_t> comb(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) comb[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    while (true) {
      std::vector<int> xs;
      for (std::size_t c : comb) xs.push_back(candidates[c]);

      auto found = engine.search(xs, y_var);
      weak[xs] = found.has_value();
      if (found) {
        bool minimal = true;
        const unsigned subsets = 1u << xs.size();
        for (unsigned mask = 1; minimal && mask + 1 < subsets; ++mask) {
          std::vector<int> sub;
          for (std::size_t i = 0; i < xs.size(); ++i)
            if (mask & (1u << i)) sub.push_back(xs[i]);
          auto it = weak.find(sub);
          if (it != weak.end() && it->second) minimal = false;
        }
        if (minimal)
          out.push_back(make_witness(sit, sorted_query(sit, xs, effect, effect_value), *found,
                                     WitnessedCause::Kind::Actual));
      }

      std::size_t i = comb.size();
      bool advanced = false;
      while (i > 0) {
        --i;
        if (comb[i] + 1 <= candidates.size() - (comb.size() - i)) {
          ++comb[i];
          for (std::size_t j = i + 1; j < comb.size(); ++j) comb[j] = comb[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return out;
}

bool is_part_of_cause(const CausalSituation& sit, const std::string& var, Value value,
                      const std::string& effect, Value effect_value, int max_size) {
  if (var == effect) return false;
  if (!sit.model().is_endogenous(var)) return false;
  if (sit.actual(var) != value) return false;
  for (const WitnessedCause& c : actual_causes(sit, effect, effect_value, max_size))
    for (const auto& [name, v] : c.query.cause)
      if (name == var && v == value) return true;
  return false;
}

bool replay_witness(const CausalSituation& sit, const WitnessedCause& witness) {
  const CausalModel& m = sit.model();
  const CauseQuery& q = witness.query;

  for (const auto& [name, v] : q.cause)
    if (sit.actual(name) != v) return false;
  if (sit.actual(q.effect) != q.effect_value) return false;

  const Valuation exo = sit.sigma().restricted_to(m.exogenous());

  std::vector<std::pair<std::string, Value>> counterfactual;
  for (std::size_t i = 0; i < q.cause.size(); ++i)
    counterfactual.emplace_back(q.cause[i].first, witness.counterfactual_values[i]);
  for (std::size_t i = 0; i < witness.contingency.size(); ++i)
    counterfactual.emplace_back(witness.contingency[i], witness.contingency_values[i]);
  if (m.intervene(counterfactual).evaluate(exo).at(q.effect) == q.effect_value) return false;

  std::vector<std::string> rest;
  for (const std::string& v : m.endogenous()) {
    if (v == q.effect) continue;
    bool used = false;
    for (const auto& [name, _] : q.cause) used = used || name == v;
    for (const std::string& name : witness.contingency) used = used || name == v;
    if (!used) rest.push_back(v);
  }
  if (rest.size() > 30) throw Error("too many variables to replay a witness exhaustively");

  for (unsigned long long mask = 0; mask < (1ULL << rest.size()); ++mask) {
    std::vector<std::pair<std::string, Value>> factual;
    for (const auto& [name, v] : q.cause) factual.emplace_back(name, v);
    for (std::size_t i = 0; i < witness.contingency.size(); ++i)
      factual.emplace_back(witness.contingency[i], witness.contingency_values[i]);
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (mask & (1ULL << i)) factual.emplace_back(rest[i], sit.actual(rest[i]));
    if (m.intervene(factual).evaluate(exo).at(q.effect) != q.effect_value) return false;
  }
  return true;
}

PartOfCauseIndex::PartOfCauseIndex(const CausalSituation& sit, int max_size) {
  for (const std::string& effect : sit.model().endogenous()) {
    std::set<std::string> members;
    for (const WitnessedCause& c : actual_causes(sit, effect, sit.actual(effect), max_size))
      for (const auto& [name, _] : c.query.cause) members.insert(name);
    members_[effect] = std::move(members);
  }
}

bool PartOfCauseIndex::part_of(const std::string& var, const std::string& effect) const {
  if (var == effect) return false;
  auto it = members_.find(effect);
  return it != members_.end() && it->second.count(var) != 0;
}

const std::set<std::string>& PartOfCauseIndex::cause_members(const std::string& effect) const {
  static const std::set<std::string> empty;
  auto it = members_.find(effect);
  return it == members_.end() ? empty : it->second;
}

}  // namespace causeway
