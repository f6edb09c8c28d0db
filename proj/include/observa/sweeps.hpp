#pragma once

// The property sweeps behind the closure and characterization checks:
// exhaustive over small machine populations, sampled for larger ones. Each
// sweep reports how many subjects it checked and how many violated the
// property; the callers decide what a violation means. All sampling is
// seeded, so sweep outcomes are reproducible byte for byte.

#include <cstdint>
#include <string>

#include "observa/automata.hpp"
#include "observa/language_ops.hpp"
#include "observa/observability.hpp"
#include "observa/oracle.hpp"
#include "observa/regex.hpp"

namespace observa {

inline constexpr std::uint32_t kSeedPlusClosure = 0xB10C5001;
inline constexpr std::uint32_t kSeedObservablePairs = 0xB10C5002;
inline constexpr std::uint32_t kSeedFiniteComplement = 0xB10C5003;

struct SweepOutcome {
  std::size_t population = 0;  // subjects that passed the family filter
  std::size_t violations = 0;
  std::string first_violation;  // serialized subject, for diagnostics

  bool clean() const { return violations == 0; }
};

namespace detail {
inline void record_violation(SweepOutcome& out, const Dfa& subject) {
  ++out.violations;
  if (out.first_violation.empty()) {
    std::string key = "n=" + std::to_string(subject.state_count()) + ";";
    for (StateId t : subject.delta) key += std::to_string(t) + ",";
    key += ";";
    for (bool f : subject.finals) key += f ? '1' : '0';
    out.first_violation = key;
  }
}
}  // namespace detail

/// Closure of the at-most-one-semi-observable family under iterated
/// concatenation, exhaustive: every complete accessible DFA over {a,b} with
/// at most max_states states and so_index <= 1 keeps so_index <= 1 after
/// kleene_plus.
inline SweepOutcome sweep_plus_closure_exhaustive(std::size_t max_states = 4) {
  SweepOutcome out;
  for_each_dfa(max_states, Alphabet::of("ab"), [&](const Dfa& d) {
    if (so_index(d) > 1) return true;
    ++out.population;
    if (so_index(kleene_plus(d)) > 1) detail::record_violation(out, d);
    return true;
  });
  return out;
}

/// Same property on random DFAs with up to 6 states over 1..3 symbols,
/// drawn until `samples` machines pass the so_index <= 1 filter.
inline SweepOutcome sweep_plus_closure_random(std::size_t samples = 1000,
                                              std::uint32_t seed = kSeedPlusClosure) {
  SweepOutcome out;
  Rng rng(seed);
  const Alphabet alphabets[3] = {Alphabet::of("a"), Alphabet::of("ab"), Alphabet::of("abc")};
  while (out.population < samples) {
    const Dfa d = random_dfa(rng, 6, alphabets[rng.below(3)]);
    if (so_index(d) > 1) continue;
    ++out.population;
    if (so_index(kleene_plus(d)) > 1) detail::record_violation(out, d);
  }
  return out;
}

/// Observability is preserved by kleene_plus, exhaustive over {a,b}.
inline SweepOutcome sweep_plus_observable_exhaustive(std::size_t max_states = 4) {
  SweepOutcome out;
  for_each_dfa(max_states, Alphabet::of("ab"), [&](const Dfa& d) {
    if (!is_observable_language(d)) return true;
    ++out.population;
    if (!is_observable_language(kleene_plus(d))) detail::record_violation(out, d);
    return true;
  });
  return out;
}

/// Same property on the random population of sweep_plus_closure_random.
inline SweepOutcome sweep_plus_observable_random(std::size_t samples = 1000,
                                                 std::uint32_t seed = kSeedPlusClosure) {
  SweepOutcome out;
  Rng rng(seed);
  const Alphabet alphabets[3] = {Alphabet::of("a"), Alphabet::of("ab"), Alphabet::of("abc")};
  while (out.population < samples) {
    const Dfa d = random_dfa(rng, 6, alphabets[rng.below(3)]);
    if (!is_observable_language(d)) continue;
    ++out.population;
    if (!is_observable_language(kleene_plus(d))) detail::record_violation(out, d);
  }
  return out;
}

/// The prefix-set characterization: over machines whose declared alphabet
/// {a,b} is exactly their minimal alphabet (nonempty language follows), the
/// language is observable iff Init(L) is all of Sigma*.
inline SweepOutcome sweep_init_characterization(std::size_t max_states = 3) {
  SweepOutcome out;
  const Alphabet sigma = Alphabet::of("ab");
  const Dfa all_words = sigma_star_dfa(sigma);
  for_each_dfa(max_states, sigma, [&](const Dfa& d) {
    if (minimal_alphabet(d) != sigma.symbols()) return true;
    ++out.population;
    const bool obs = is_observable_language(d);
    const bool init_full = equivalent(init_language(d), all_words);
    if (obs != init_full) detail::record_violation(out, d);
    return true;
  });
  return out;
}

/// Union, concatenation and left quotient of observable languages sharing
/// the minimal alphabet {a,b} stay observable. `pairs` sampled pairs.
inline SweepOutcome sweep_observable_closures(std::size_t pairs = 300,
                                              std::uint32_t seed = kSeedObservablePairs) {
  SweepOutcome out;
  Rng rng(seed);
  const Alphabet sigma = Alphabet::of("ab");
  const auto draw = [&] {
    for (;;) {
      const Dfa d = random_dfa(rng, 5, sigma);
      if (is_observable_language(d) && minimal_alphabet(d) == sigma.symbols()) return d;
    }
  };
  while (out.population < pairs) {
    const Dfa a = draw();
    const Dfa b = draw();
    ++out.population;
    if (!is_observable_language(union_lang(a, b)) ||
        !is_observable_language(concatenate(a, b)) ||
        !is_observable_language(left_quotient(a, b)))
      detail::record_violation(out, a);
  }
  return out;
}

/// Minimization leaves at most one non-observable state, exhaustive.
inline SweepOutcome sweep_dead_state_bound(std::size_t max_states = 4) {
  SweepOutcome out;
  for_each_dfa(max_states, Alphabet::of("ab"), [&](const Dfa& d) {
    ++out.population;
    const Dfa m = minimize(d);
    const auto obs = observable_mask(m);
    std::size_t dead = 0;
    for (StateId q = 0; q < m.state_count(); ++q)
      if (!obs[q]) ++dead;
    if (dead > 1) detail::record_violation(out, d);
    return true;
  });
  return out;
}

/// The complement of a finite language over {a,b} is observable. `samples`
/// random finite word sets with words of length <= 4.
inline SweepOutcome sweep_finite_complement_observable(
    std::size_t samples = 100, std::uint32_t seed = kSeedFiniteComplement) {
  SweepOutcome out;
  Rng rng(seed);
  const Alphabet sigma = Alphabet::of("ab");
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t words = rng.below(8);
    std::string pattern;
    for (std::size_t w = 0; w < words; ++w) {
      if (w) pattern += '|';
      const std::size_t len = rng.below(5);
      if (len == 0) {
        pattern += '_';
        continue;
      }
      for (std::size_t i = 0; i < len; ++i) pattern += sigma.at(rng.below(2));
    }
    if (pattern.empty()) pattern = "~";
    const Dfa finite = compile(pattern, sigma);
    ++out.population;
    if (!is_observable_language(complement(finite))) detail::record_violation(out, finite);
  }
  return out;
}

}  // namespace observa
