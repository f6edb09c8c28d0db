#pragma once

// Ground truth at desk scale: bounded language enumeration, exhaustive
// enumeration of small complete accessible DFAs up to isomorphism, an
// independent naive state classifier (kept deliberately separate from the
// production implementations so results can be cross-checked), deterministic
// sampling utilities, and the semi-observability minimality experiment.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "observa/automata.hpp"
#include "observa/observability.hpp"

namespace observa {

inline constexpr std::size_t kMaxEnumerationLength = 16;

/// All accepted words of length <= max_len, in length order and within a
/// length in alphabet order. Deterministic.
inline std::vector<Word> enumerate_language(const Dfa& d, std::size_t max_len) {
  if (max_len > kMaxEnumerationLength)
    throw std::invalid_argument("enumeration length capped at " +
                                std::to_string(kMaxEnumerationLength));
  validate_dfa(d);

  std::vector<Word> out;
  Word prefix;
  const std::function<void(StateId, std::size_t, std::size_t)> walk =
      [&](StateId q, std::size_t depth, std::size_t len) {
        if (depth == len) {
          if (d.finals[q]) out.push_back(prefix);
          return;
        }
        for (std::size_t c = 0; c < d.symbol_count(); ++c) {
          prefix.push_back(d.alphabet.at(c));
          walk(d.at(q, static_cast<std::size_t>(c)), depth + 1, len);
          prefix.pop_back();
        }
      };
  for (std::size_t len = 0; len <= max_len; ++len) walk(d.initial, 0, len);
  return out;
}

/// Equality of the two languages up to the given word length, by direct
/// enumeration. An independent check on equivalent(), never its definition.
inline bool bounded_equivalent(const Dfa& a, const Dfa& b, std::size_t max_len) {
  return enumerate_language(a, max_len) == enumerate_language(b, max_len);
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of complete accessible DFAs up to isomorphism.
//
// A transition structure is canonical when its states are numbered in BFS
// discovery order from state 0 (symbols explored in alphabet order). Reading
// the table row-major, every target must be an already-seen state or the
// next fresh one, every row must belong to an already-seen state, and all
// states must appear. Each isomorphism class of accessible structures has
// exactly one canonical member, and because a pointed deterministic
// accessible structure has no nontrivial automorphism, attaching final-state
// masks keeps the classes distinct.
// ---------------------------------------------------------------------------

namespace detail {

/// Emits every canonical transition structure with exactly n states over k
/// symbols, as a row-major digit vector, in ascending numeric order.
/// The callback returns false to stop; returns true if the walk completed.
inline bool for_each_structure(std::size_t n, std::size_t k,
                               const std::function<bool(const std::vector<StateId>&)>& fn) {
  std::vector<StateId> digits(n * k, 0);
  const std::function<bool(std::size_t, StateId)> grow = [&](std::size_t t,
                                                             StateId max_seen) -> bool {
    if (t == digits.size()) return max_seen + 1 == n ? fn(digits) : true;
    const std::size_t row = t / k;
    if (row > max_seen) return true;  // row of an undiscovered state: dead branch
    // Each remaining slot can discover at most one new state.
    const std::size_t remaining = digits.size() - t;
    if (n - 1 - max_seen > remaining) return true;
    const StateId top = std::min<StateId>(max_seen + 1, static_cast<StateId>(n - 1));
    for (StateId v = 0; v <= top; ++v) {
      digits[t] = v;
      if (!grow(t + 1, std::max(max_seen, v))) return false;
    }
    return true;
  };
  return grow(0, 0);
}

inline Dfa dfa_from_parts(const Alphabet& alphabet, const std::vector<StateId>& digits,
                          std::size_t n, std::uint32_t finals_mask) {
  Dfa d;
  d.alphabet = alphabet;
  d.names = canonical_names(n);
  d.initial = 0;
  d.delta = digits;
  d.finals.resize(n);
  for (std::size_t q = 0; q < n; ++q) d.finals[q] = (finals_mask >> q) & 1u;
  return d;
}

inline void check_enumeration_bounds(std::size_t max_states, const Alphabet& alphabet) {
  if (max_states == 0) throw std::invalid_argument("max_states must be positive");
  if (alphabet.size() > 3) throw std::invalid_argument("enumeration limited to 3 symbols");
  if (max_states > 6 || (alphabet.size() == 3 && max_states > 4))
    throw std::invalid_argument("enumeration bounds too large");
}

}  // namespace detail

/// Streams every complete accessible DFA with at most max_states states over
/// the alphabet, one representative per isomorphism class, in a fixed
/// canonical order: state count ascending, transition structure ascending
/// (row-major digits), final-state mask ascending (bit q = state q).
/// The callback returns false to stop early; returns true if exhausted.
inline bool for_each_dfa(std::size_t max_states, const Alphabet& alphabet,
                         const std::function<bool(const Dfa&)>& fn) {
  detail::check_enumeration_bounds(max_states, alphabet);
  const std::size_t k = alphabet.size();
  for (std::size_t n = 1; n <= max_states; ++n) {
    const bool done = detail::for_each_structure(n, k, [&](const std::vector<StateId>& digits) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        if (!fn(detail::dfa_from_parts(alphabet, digits, n, mask))) return false;
      return true;
    });
    if (!done) return false;
  }
  return true;
}

/// Materialized form of for_each_dfa for small bounds.
inline std::vector<Dfa> enumerate_dfas(std::size_t max_states, const Alphabet& alphabet) {
  if (max_states > 4)
    throw std::invalid_argument("materialized enumeration limited to 4 states");
  std::vector<Dfa> out;
  for_each_dfa(max_states, alphabet, [&](const Dfa& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

/// Semi-observable count straight off a structure and finals mask, without
/// building a Dfa. This is the witness search prefilter; its agreement with
/// so_count() is property-tested.
inline std::size_t so_count_raw(const std::vector<StateId>& digits, std::size_t n,
                                std::size_t k, std::uint32_t finals_mask) {
  std::uint32_t obs = finals_mask;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if ((obs >> q) & 1u) continue;
      for (std::size_t c = 0; c < k; ++c)
        if ((obs >> digits[q * k + c]) & 1u) {
          obs |= 1u << q;
          changed = true;
          break;
        }
    }
  }
  std::size_t so = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (!((obs >> q) & 1u)) continue;
    for (std::size_t c = 0; c < k; ++c)
      if (!((obs >> digits[q * k + c]) & 1u)) {
        ++so;
        break;
      }
  }
  return so;
}

// ---------------------------------------------------------------------------
// Naive classifier, written separately from the production one so witness
// verification does not trust the code path under test. Observability is a
// plain iterate-until-stable loop; minimization is pairwise distinguishability
// marking instead of partition refinement.
// ---------------------------------------------------------------------------

namespace naive {

inline std::vector<bool> observable_mask(const Dfa& d) {
  std::vector<bool> obs(d.state_count());
  for (StateId q = 0; q < d.state_count(); ++q) obs[q] = d.finals[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId q = 0; q < d.state_count(); ++q) {
      if (obs[q]) continue;
      for (std::size_t c = 0; c < d.symbol_count(); ++c)
        if (obs[d.at(q, c)]) {
          obs[q] = true;
          changed = true;
          break;
        }
    }
  }
  return obs;
}

inline std::vector<StateClass> classify(const Dfa& d) {
  const auto obs = observable_mask(d);
  std::vector<StateClass> out(d.state_count(), StateClass::NonObservable);
  for (StateId q = 0; q < d.state_count(); ++q) {
    if (!obs[q]) continue;
    out[q] = StateClass::Observable;
    for (std::size_t c = 0; c < d.symbol_count(); ++c)
      if (!obs[d.at(q, c)]) out[q] = StateClass::SemiObservable;
  }
  return out;
}

inline std::size_t so_count(const Dfa& d) {
  std::size_t so = 0;
  for (StateClass c : classify(d))
    if (c == StateClass::SemiObservable) ++so;
  return so;
}

/// Minimal DFA by pairwise distinguishability marking and state merging.
inline Dfa minimize(const Dfa& d) {
  const std::size_t n = d.state_count();
  std::vector<bool> marked(n * n, false);
  for (StateId p = 0; p < n; ++p)
    for (StateId q = 0; q < n; ++q)
      if (d.finals[p] != d.finals[q]) marked[p * n + q] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId p = 0; p < n; ++p)
      for (StateId q = 0; q < n; ++q) {
        if (marked[p * n + q]) continue;
        for (std::size_t c = 0; c < d.symbol_count(); ++c)
          if (marked[d.at(p, c) * n + d.at(q, c)]) {
            marked[p * n + q] = true;
            changed = true;
            break;
          }
      }
  }

  // Representative of each state: the lowest equivalent state.
  std::vector<StateId> rep(n);
  for (StateId q = 0; q < n; ++q) {
    StateId r = q;
    for (StateId p = 0; p < q; ++p)
      if (!marked[p * n + q]) {
        r = p;
        break;
      }
    rep[q] = r;
  }
  std::vector<StateId> reps;
  std::vector<StateId> index(n, kNoState);
  for (StateId q = 0; q < n; ++q)
    if (rep[q] == q) {
      index[q] = static_cast<StateId>(reps.size());
      reps.push_back(q);
    }

  Dfa out;
  out.alphabet = d.alphabet;
  out.names = canonical_names(reps.size());
  out.initial = index[rep[d.initial]];
  out.finals.resize(reps.size());
  out.delta.resize(reps.size() * d.symbol_count());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    out.finals[i] = d.finals[reps[i]];
    for (std::size_t c = 0; c < d.symbol_count(); ++c)
      out.delta[i * d.symbol_count() + c] = index[rep[d.at(reps[i], c)]];
  }
  return checked(trim_accessible(out));
}

inline std::size_t so_index(const Dfa& d) { return so_count(minimize(d)); }

inline std::string minimal_alphabet(const Dfa& d) {
  const auto obs = observable_mask(d);
  std::string out;
  for (std::size_t c = 0; c < d.symbol_count(); ++c)
    for (StateId q = 0; q < d.state_count(); ++q)
      if (obs[d.at(q, c)]) {
        out += d.alphabet.at(c);
        break;
      }
  return out;
}

inline std::size_t language_so_index(const Dfa& d) {
  const std::string ma = minimal_alphabet(d);
  if (ma.empty()) return d.finals[d.initial] ? 1 : 0;
  return so_index(restrict_alphabet(d, Alphabet::of(ma)));
}

inline std::size_t language_dead_state_count(const Dfa& d) {
  const std::string ma = minimal_alphabet(d);
  if (ma.empty()) return 1;
  const Dfa m = minimize(restrict_alphabet(d, Alphabet::of(ma)));
  const auto obs = observable_mask(m);
  std::size_t dead = 0;
  for (StateId q = 0; q < m.state_count(); ++q)
    if (!obs[q]) ++dead;
  return dead;
}

}  // namespace naive

// ---------------------------------------------------------------------------
// Deterministic sampling. mt19937 output is pinned by the standard, and the
// samplers below avoid std::uniform_int_distribution (whose mapping is
// implementation-defined), so sweeps print identically across platforms.
// ---------------------------------------------------------------------------

struct Rng {
  std::mt19937 engine;

  explicit Rng(std::uint32_t seed) : engine(seed) {}

  std::uint32_t below(std::uint32_t n) { return engine() % n; }
  bool chance(std::uint32_t num, std::uint32_t den) { return below(den) < num; }
};

/// Uniform random complete accessible DFA with 1..max_states states.
/// Accessibility by rejection; the state count is re-drawn on each attempt
/// so the draw stays well-defined for any bound.
inline Dfa random_dfa(Rng& rng, std::size_t max_states, const Alphabet& alphabet) {
  for (;;) {
    const std::size_t n = 1 + rng.below(static_cast<std::uint32_t>(max_states));
    Dfa d;
    d.alphabet = alphabet;
    d.names = canonical_names(n);
    d.initial = 0;
    d.delta.resize(n * alphabet.size());
    d.finals.resize(n);
    for (auto& t : d.delta) t = rng.below(static_cast<std::uint32_t>(n));
    for (std::size_t q = 0; q < n; ++q) d.finals[q] = rng.chance(1, 2);
    if (is_accessible(d)) return d;
  }
}

/// Random lambda-free NFA; initial and final sets are nonempty-biased but
/// may be empty, edges are sparse.
inline Nfa random_nfa(Rng& rng, std::size_t max_states, const Alphabet& alphabet,
                      bool with_lambda) {
  const std::size_t n = 1 + rng.below(static_cast<std::uint32_t>(max_states));
  Nfa nfa = Nfa::empty(alphabet, n);
  for (StateId q = 0; q < n; ++q) {
    for (std::size_t c = 0; c < alphabet.size(); ++c)
      for (StateId t = 0; t < n; ++t)
        if (rng.chance(1, 3)) nfa.add_edge(q, c, t);
    if (with_lambda)
      for (StateId t = 0; t < n; ++t)
        if (rng.chance(1, 6)) nfa.add_lambda(q, t);
    nfa.finals[q] = rng.chance(1, 3);
  }
  for (StateId q = 0; q < n; ++q)
    if (rng.chance(1, 3)) nfa.initials.push_back(q);
  if (nfa.initials.empty()) nfa.initials.push_back(rng.below(static_cast<std::uint32_t>(n)));
  return nfa;
}

/// Random homomorphism between the given alphabets with image lengths in
/// [min_len, max_len].
inline Homomorphism random_homomorphism(Rng& rng, const Alphabet& source,
                                        const Alphabet& target, std::size_t min_len,
                                        std::size_t max_len) {
  std::vector<Word> images;
  for (std::size_t c = 0; c < source.size(); ++c) {
    const std::size_t len =
        min_len + rng.below(static_cast<std::uint32_t>(max_len - min_len + 1));
    Word w;
    for (std::size_t i = 0; i < len; ++i)
      w += target.at(rng.below(static_cast<std::uint32_t>(target.size())));
    images.push_back(std::move(w));
  }
  return Homomorphism::of(source, target, std::move(images));
}

// ---------------------------------------------------------------------------
// Semi-observability minimality experiment: group all enumerated DFAs by
// language and compare the best so() seen in each group against so() of the
// group's minimal DFA. The claim that the minimal DFA attains the minimum is
// reported, not assumed: any language where some other automaton does better
// is flagged as a discrepancy.
// ---------------------------------------------------------------------------

struct SoMinimalityReport {
  struct Record {
    std::string canonical_minimal_dfa;  // serialized key of the language
    std::size_t minimal_states = 0;
    std::size_t minimal_so = 0;   // so() of the minimal DFA
    std::size_t best_so = 0;      // min so() over every enumerated acceptor
    std::size_t group_size = 0;   // number of enumerated acceptors
  };

  std::size_t max_states = 0;
  std::string alphabet;
  std::size_t total_dfas = 0;
  std::vector<Record> records;        // one per language, sorted by key
  std::size_t discrepancy_count = 0;  // records with best_so < minimal_so
};

inline SoMinimalityReport validate_so_minimality(std::size_t max_states,
                                                 const Alphabet& alphabet) {
  if (max_states > 4)
    throw std::invalid_argument("minimality experiment limited to 4 states");

  struct Group {
    std::size_t minimal_states;
    std::size_t minimal_so;
    std::size_t best_so;
    std::size_t count;
  };
  std::map<std::string, Group> groups;

  SoMinimalityReport report;
  report.max_states = max_states;
  report.alphabet = alphabet.to_csv();

  for_each_dfa(max_states, alphabet, [&](const Dfa& d) {
    ++report.total_dfas;
    const Dfa m = minimize(d);
    std::string key = "n=" + std::to_string(m.state_count()) + ";";
    for (StateId t : m.delta) key += std::to_string(t) + ",";
    key += ";";
    for (bool f : m.finals) key += f ? '1' : '0';
    const std::size_t so = so_count(d);
    const auto it = groups.find(key);
    if (it == groups.end()) {
      groups.emplace(std::move(key),
                     Group{m.state_count(), so_count(m), so, 1});
    } else {
      it->second.best_so = std::min(it->second.best_so, so);
      ++it->second.count;
    }
    return true;
  });

  for (const auto& [key, g] : groups) {
    SoMinimalityReport::Record rec;
    rec.canonical_minimal_dfa = key;
    rec.minimal_states = g.minimal_states;
    rec.minimal_so = g.minimal_so;
    rec.best_so = g.best_so;
    rec.group_size = g.count;
    if (rec.best_so < rec.minimal_so) ++report.discrepancy_count;
    report.records.push_back(std::move(rec));
  }
  return report;
}

inline std::string render_so_minimality_summary(const SoMinimalityReport& r) {
  std::string out;
  out += "max_states: " + std::to_string(r.max_states) + "\n";
  out += "alphabet: " + r.alphabet + "\n";
  out += "dfas_enumerated: " + std::to_string(r.total_dfas) + "\n";
  out += "languages: " + std::to_string(r.records.size()) + "\n";
  out += "discrepancies: " + std::to_string(r.discrepancy_count) + "\n";
  for (const auto& rec : r.records)
    if (rec.best_so < rec.minimal_so)
      out += "flagged: minimal_so=" + std::to_string(rec.minimal_so) +
             " best_so=" + std::to_string(rec.best_so) + " key=" + rec.canonical_minimal_dfa +
             "\n";
  return out;
}

}  // namespace observa
