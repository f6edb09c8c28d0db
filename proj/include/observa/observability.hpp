#pragma once

// State observability analysis for complete accessible DFAs.
//
// A state is observable when some word leads from it to a final state,
// non-observable (dead) otherwise, and semi-observable when it is observable
// but a single symbol can drop it into a non-observable state. so(A) counts
// the semi-observable states of A; the semi-observability index of a regular
// language is the least k such that some complete accessible DFA with at
// most k semi-observable states accepts it, and is read off the minimal DFA.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "observa/automata.hpp"

namespace observa {

enum class StateClass { NonObservable, Observable, SemiObservable };

inline std::string_view to_string(StateClass c) {
  switch (c) {
    case StateClass::NonObservable: return "non-observable";
    case StateClass::Observable: return "observable";
    case StateClass::SemiObservable: return "semi-observable";
  }
  return "?";
}

/// Observability mask: backward reachability from the final states along
/// reversed transitions.
inline std::vector<bool> observable_mask(const Dfa& d) {
  const std::size_t n = d.state_count();
  std::vector<std::vector<StateId>> rev(n);
  for (StateId q = 0; q < n; ++q)
    for (std::size_t c = 0; c < d.symbol_count(); ++c) rev[d.at(q, c)].push_back(q);

  std::vector<bool> obs(n, false);
  std::vector<StateId> queue;
  for (StateId q = 0; q < n; ++q)
    if (d.finals[q]) {
      obs[q] = true;
      queue.push_back(q);
    }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (StateId p : rev[queue[head]])
      if (!obs[p]) {
        obs[p] = true;
        queue.push_back(p);
      }
  return obs;
}

/// Three-way classification; the partition is total and exclusive.
inline std::vector<StateClass> classify_states(const Dfa& d) {
  validate_dfa(d);
  const auto obs = observable_mask(d);
  std::vector<StateClass> out(d.state_count(), StateClass::NonObservable);
  for (StateId q = 0; q < d.state_count(); ++q) {
    if (!obs[q]) continue;
    out[q] = StateClass::Observable;
    for (std::size_t c = 0; c < d.symbol_count(); ++c)
      if (!obs[d.at(q, c)]) {
        out[q] = StateClass::SemiObservable;
        break;
      }
  }
  return out;
}

/// so(A): the number of semi-observable states of the automaton as given.
inline std::size_t so_count(const Dfa& d) {
  const auto classes = classify_states(d);
  std::size_t count = 0;
  for (StateClass c : classes)
    if (c == StateClass::SemiObservable) ++count;
  return count;
}

/// so of the minimal DFA: the least k with L(d) in T_k among automata over
/// d's declared alphabet.
inline std::size_t so_index(const Dfa& d) { return so_count(minimize(d)); }

inline bool tk_membership(const Dfa& d, std::size_t k) { return so_index(d) <= k; }

/// The symbols that occur in at least one accepted word: a symbol counts
/// exactly when some transition on it lands in an observable state (the
/// source is reachable by accessibility, the target extends to a final).
/// Returned in alphabet order; empty for languages without words.
inline std::string minimal_alphabet(const Dfa& d) {
  validate_dfa(d);
  const auto obs = observable_mask(d);
  std::string out;
  for (std::size_t c = 0; c < d.symbol_count(); ++c) {
    for (StateId q = 0; q < d.state_count(); ++q)
      if (obs[d.at(q, c)]) {
        out += d.alphabet.at(c);
        break;
      }
  }
  return out;
}

/// Restriction to a sub-alphabet that must cover every accepted word
/// (callers pass the minimal alphabet). Drops the other symbol columns and
/// the states that become unreachable; the language is unchanged.
inline Dfa restrict_alphabet(const Dfa& d, const Alphabet& sub) {
  std::vector<std::size_t> cols;
  cols.reserve(sub.size());
  for (std::size_t c = 0; c < sub.size(); ++c) {
    const auto idx = d.alphabet.index_of(sub.at(c));
    if (!idx)
      throw std::invalid_argument(std::string("symbol not in alphabet: '") + sub.at(c) + "'");
    cols.push_back(*idx);
  }
  Dfa out;
  out.alphabet = sub;
  out.names = d.names;
  out.initial = d.initial;
  out.finals = d.finals;
  out.delta.reserve(d.state_count() * sub.size());
  for (StateId q = 0; q < d.state_count(); ++q)
    for (std::size_t c : cols) out.delta.push_back(d.at(q, c));
  return checked(trim_accessible(out));
}

/// The least k with L(d) in T_k when the accepting automaton may pick its
/// own alphabet: evaluated on the minimal DFA over the minimal alphabet.
/// Languages without symbols are special: the empty language needs no
/// semi-observable states, while {lambda} needs one over every (nonempty)
/// alphabet.
inline std::size_t language_so_index(const Dfa& d) {
  const std::string ma = minimal_alphabet(d);
  if (ma.empty()) return d.finals[d.initial] ? 1 : 0;
  return so_index(restrict_alphabet(d, Alphabet::of(ma)));
}

/// Number of non-observable states in the minimal DFA over the minimal
/// alphabet; 0 exactly for observable languages, and 1 for every other
/// language including the empty one.
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

/// A language is observable when some complete accessible DFA for it has
/// only observable states; equivalently, when the minimal DFA over its
/// minimal alphabet has no dead state. The empty language and {lambda} are
/// not observable (every observable language is infinite).
inline bool is_observable_language(const Dfa& d) {
  return language_dead_state_count(d) == 0;
}

/// DFA for Init(L), the set of prefixes of words of L: same structure with
/// every observable state made final, then minimized.
inline Dfa init_language(const Dfa& d) {
  validate_dfa(d);
  const auto obs = observable_mask(d);
  Dfa out = d;
  out.finals.assign(obs.begin(), obs.end());
  return minimize(out);
}

/// Produces a DFA whose language has semi-observability index exactly k.
/// k=0 is Sigma+ over {a,b}; k=1 is the three-state acceptor of (a|b)a*;
/// k>=2 uses k run symbols c1..ck and the language Sigma.(c1*|...|ck*),
/// whose minimal DFA keeps one semi-observable run state per symbol.
/// The index of the result is re-computed and checked before returning.
inline Dfa hierarchy_witness(std::size_t k) {
  Dfa d;
  if (k == 0) {
    d = sigma_plus_dfa(Alphabet::of("ab"));
  } else if (k == 1) {
    d.alphabet = Alphabet::of("ab");
    d.names = {"s", "f", "r"};
    d.initial = 0;
    d.finals = {false, true, false};
    //        a  b
    d.delta = {1, 1,   // s
               1, 2,   // f
               2, 2};  // r
    d = checked(std::move(d));
  } else {
    if (k > 20) throw std::invalid_argument("hierarchy witness limited to k <= 20");
    std::string syms;
    for (std::size_t i = 0; i < k; ++i) syms += static_cast<char>('a' + i);
    d.alphabet = Alphabet::of(syms);
    const StateId start = 0, first = 1;
    const StateId sink = static_cast<StateId>(k + 2);
    d.names = canonical_names(k + 3);
    d.initial = start;
    d.finals.assign(k + 3, false);
    d.finals[first] = true;
    d.delta.assign((k + 3) * k, sink);
    for (std::size_t c = 0; c < k; ++c) {
      const StateId run = static_cast<StateId>(2 + c);
      d.finals[run] = true;
      d.at(start, c) = first;
      d.at(first, c) = run;
      d.at(run, c) = run;
    }
    d = checked(std::move(d));
  }
  if (so_index(d) != k)
    throw std::logic_error("hierarchy witness failed self-verification for k=" +
                           std::to_string(k));
  return d;
}

/// Everything the analyze command reports for one automaton.
///
/// so_count and the per-state classes describe the automaton as given;
/// so_index and dead-state data describe the language (minimal DFA, minimal
/// alphabet), so the two numbers can legitimately differ.
struct ObservabilityReport {
  std::vector<std::pair<std::string, StateClass>> per_state;  // in state order
  std::size_t so_count = 0;
  std::size_t so_index = 0;
  bool observable_language = false;
  std::string minimal_alphabet;
  std::size_t non_observable_count = 0;  // in the minimal DFA over the declared alphabet
};

inline ObservabilityReport analyze(const Dfa& d) {
  ObservabilityReport r;
  const auto classes = classify_states(d);
  r.per_state.reserve(d.state_count());
  for (StateId q = 0; q < d.state_count(); ++q) {
    r.per_state.emplace_back(d.names[q], classes[q]);
    if (classes[q] == StateClass::SemiObservable) ++r.so_count;
  }
  r.so_index = language_so_index(d);
  r.minimal_alphabet = minimal_alphabet(d);
  r.observable_language = is_observable_language(d);
  const Dfa m = minimize(d);
  const auto obs = observable_mask(m);
  for (StateId q = 0; q < m.state_count(); ++q)
    if (!obs[q]) ++r.non_observable_count;
  return r;
}

}  // namespace observa
