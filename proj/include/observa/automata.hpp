#pragma once

// Core automata values (alphabets, words, DFAs, NFAs) and the constructions
// everything else builds on: completion, trimming, lambda removal, subset
// construction, minimization, isomorphism/equivalence checks, products.
//
// All types are immutable values after construction and all operations are
// pure functions of their inputs; every constructed Dfa is complete and
// accessible unless the function documents otherwise.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace observa {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

// Input symbols are single printable ASCII characters, excluding whitespace,
// the text format's structural characters (# : , - > |) and the characters
// the regex surface reserves (_ ~ ( ) * +).
inline bool is_symbol_char(char c) {
  constexpr std::string_view reserved = "#:,->|_~()*+";
  const auto u = static_cast<unsigned char>(c);
  if (u <= ' ' || u >= 127) return false;
  return reserved.find(c) == std::string_view::npos;
}

// A word over an alphabet; the empty string is the empty word.
using Word = std::string;

/// Ordered set of symbols. The order is first-appearance order in the
/// source that declared the alphabet and is significant: canonical state
/// numbering explores transitions in alphabet order.
class Alphabet {
 public:
  Alphabet() = default;

  static Alphabet of(std::string_view symbols) {
    Alphabet a;
    for (char c : symbols) a.push(c);
    if (a.size() == 0) throw std::invalid_argument("alphabet must be nonempty");
    return a;
  }

  /// Parses the comma-separated surface form, e.g. "a,b".
  static Alphabet parse(std::string_view csv) {
    Alphabet a;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
      const std::size_t next = std::min(csv.find(',', pos), csv.size());
      std::string_view item = csv.substr(pos, next - pos);
      if (item.size() != 1)
        throw std::invalid_argument("alphabet symbol must be a single character: '" +
                                    std::string(item) + "'");
      a.push(item[0]);
      pos = next + 1;
      if (next == csv.size()) break;
    }
    if (a.size() == 0) throw std::invalid_argument("alphabet must be nonempty");
    return a;
  }

  std::size_t size() const { return syms_.size(); }
  char at(std::size_t i) const { return syms_.at(i); }

  std::optional<std::size_t> index_of(char c) const {
    const auto pos = syms_.find(c);
    if (pos == std::string::npos) return std::nullopt;
    return pos;
  }

  bool contains(char c) const { return syms_.find(c) != std::string::npos; }

  /// Comma-separated form, the inverse of parse().
  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < syms_.size(); ++i) {
      if (i) out += ',';
      out += syms_[i];
    }
    return out;
  }

  const std::string& symbols() const { return syms_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  void push(char c) {
    if (!is_symbol_char(c))
      throw std::invalid_argument(std::string("invalid symbol character: '") + c + "'");
    if (contains(c))
      throw std::invalid_argument(std::string("duplicate symbol: '") + c + "'");
    syms_ += c;
  }

  std::string syms_;
};

/// Complete deterministic finite automaton. States are indices 0..n-1 with
/// display names carried alongside; delta is stored row-major (state-major,
/// symbol-minor). kNoState entries mark missing transitions; such partial
/// tables only appear between the loader and complete().
struct Dfa {
  Alphabet alphabet;
  std::vector<std::string> names;
  std::vector<StateId> delta;
  StateId initial = 0;
  std::vector<bool> finals;

  std::size_t state_count() const { return names.size(); }
  std::size_t symbol_count() const { return alphabet.size(); }

  StateId at(StateId q, std::size_t c) const { return delta[q * alphabet.size() + c]; }
  StateId& at(StateId q, std::size_t c) { return delta[q * alphabet.size() + c]; }

  bool is_complete() const {
    return std::none_of(delta.begin(), delta.end(),
                        [](StateId t) { return t == kNoState; });
  }

  StateId run(std::string_view word) const {
    StateId q = initial;
    for (char c : word) {
      const auto idx = alphabet.index_of(c);
      if (!idx) throw std::invalid_argument(std::string("symbol not in alphabet: '") + c + "'");
      q = at(q, *idx);
    }
    return q;
  }

  bool accepts(std::string_view word) const { return finals[run(word)]; }
};

inline std::vector<std::string> canonical_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "q" + std::to_string(i);
  return names;
}

/// States reachable from the initial state, in BFS discovery order exploring
/// symbols in alphabet order. Tolerates partial tables.
inline std::vector<StateId> reachable_states(const Dfa& d) {
  std::vector<bool> seen(d.state_count(), false);
  std::vector<StateId> order;
  order.reserve(d.state_count());
  seen[d.initial] = true;
  order.push_back(d.initial);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const StateId q = order[head];
    for (std::size_t c = 0; c < d.symbol_count(); ++c) {
      const StateId t = d.at(q, c);
      if (t == kNoState || seen[t]) continue;
      seen[t] = true;
      order.push_back(t);
    }
  }
  return order;
}

inline bool is_accessible(const Dfa& d) {
  return reachable_states(d).size() == d.state_count();
}

/// Throws if d violates the Dfa invariants (shape, completeness,
/// accessibility, in-range targets). Every construction in the library
/// funnels its result through checked().
inline void validate_dfa(const Dfa& d) {
  const std::size_t n = d.state_count();
  if (n == 0) throw std::invalid_argument("dfa must have at least one state");
  if (d.alphabet.size() == 0) throw std::invalid_argument("dfa alphabet must be nonempty");
  if (d.delta.size() != n * d.alphabet.size())
    throw std::invalid_argument("dfa delta has wrong shape");
  if (d.finals.size() != n) throw std::invalid_argument("dfa finals has wrong shape");
  if (d.initial >= n) throw std::invalid_argument("dfa initial state out of range");
  for (StateId t : d.delta) {
    if (t == kNoState) throw std::invalid_argument("dfa transition table is partial");
    if (t >= n) throw std::invalid_argument("dfa transition target out of range");
  }
  if (!is_accessible(d)) throw std::invalid_argument("dfa has non-accessible states");
}

inline Dfa checked(Dfa d) {
  validate_dfa(d);
  return d;
}

/// Restricts the automaton to the states reachable from the initial state.
/// Keeps the surviving states in their original relative order and keeps
/// their names. The language is unchanged.
inline Dfa trim_accessible(const Dfa& d) {
  const auto reach = reachable_states(d);
  if (reach.size() == d.state_count()) return d;

  std::vector<StateId> remap(d.state_count(), kNoState);
  std::vector<StateId> keep(reach.begin(), reach.end());
  std::sort(keep.begin(), keep.end());
  for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<StateId>(i);

  Dfa out;
  out.alphabet = d.alphabet;
  out.initial = remap[d.initial];
  out.names.reserve(keep.size());
  out.finals.reserve(keep.size());
  out.delta.reserve(keep.size() * d.symbol_count());
  for (StateId q : keep) {
    out.names.push_back(d.names[q]);
    out.finals.push_back(d.finals[q]);
    for (std::size_t c = 0; c < d.symbol_count(); ++c) {
      const StateId t = d.at(q, c);
      out.delta.push_back(t == kNoState ? kNoState : remap[t]);
    }
  }
  return out;
}

/// Renumbers states into BFS order from the initial state (symbols explored
/// in alphabet order), dropping unreachable states. Two complete accessible
/// DFAs are isomorphic exactly when their canonical forms have equal delta
/// and finals, which is what makes serialized output byte-deterministic.
inline Dfa canonicalize(const Dfa& d) {
  const auto order = reachable_states(d);
  std::vector<StateId> remap(d.state_count(), kNoState);
  for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<StateId>(i);

  Dfa out;
  out.alphabet = d.alphabet;
  out.initial = 0;
  out.names.reserve(order.size());
  out.finals.reserve(order.size());
  out.delta.reserve(order.size() * d.symbol_count());
  for (StateId q : order) {
    out.names.push_back(d.names[q]);
    out.finals.push_back(d.finals[q]);
    for (std::size_t c = 0; c < d.symbol_count(); ++c) {
      const StateId t = d.at(q, c);
      out.delta.push_back(t == kNoState ? kNoState : remap[t]);
    }
  }
  return out;
}

namespace detail {
inline std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
  std::string name = std::move(base);
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += '\'';
  return name;
}
}  // namespace detail

/// Completes a (possibly partial) transition table over the given alphabet,
/// which must contain every symbol the input uses. Missing transitions are
/// routed to a fresh non-final sink state that loops to itself; the sink is
/// added only when at least one transition is missing. The language is
/// unchanged. Accessibility is the caller's concern: completion never makes
/// an unreachable state reachable.
inline Dfa complete(const Dfa& d, const Alphabet& alphabet) {
  std::vector<std::size_t> col(d.symbol_count());
  for (std::size_t c = 0; c < d.symbol_count(); ++c) {
    const auto idx = alphabet.index_of(d.alphabet.at(c));
    if (!idx)
      throw std::invalid_argument(std::string("symbol outside target alphabet: '") +
                                  d.alphabet.at(c) + "'");
    col[c] = *idx;
  }

  const std::size_t n = d.state_count();
  const std::size_t k = alphabet.size();
  std::vector<StateId> delta(n * k, kNoState);
  for (StateId q = 0; q < n; ++q)
    for (std::size_t c = 0; c < d.symbol_count(); ++c) delta[q * k + col[c]] = d.at(q, c);

  const bool holes =
      std::any_of(delta.begin(), delta.end(), [](StateId t) { return t == kNoState; });
  if (!holes && alphabet == d.alphabet) return d;

  Dfa out;
  out.alphabet = alphabet;
  out.names = d.names;
  out.initial = d.initial;
  out.finals = d.finals;
  out.delta = std::move(delta);
  if (holes) {
    const StateId sink = static_cast<StateId>(n);
    out.names.push_back(detail::fresh_name(out.names, "sink"));
    out.finals.push_back(false);
    for (std::size_t c = 0; c < k; ++c) out.delta.push_back(sink);
    for (StateId& t : out.delta)
      if (t == kNoState) t = sink;
  }
  return out;
}

/// Moore partition refinement. Returns the unique (up to isomorphism)
/// minimal complete accessible DFA for the same language, with states
/// renumbered canonically (BFS order) and renamed q0,q1,...
inline Dfa minimize(const Dfa& d) {
  validate_dfa(d);
  const std::size_t n = d.state_count();
  const std::size_t k = d.symbol_count();

  std::vector<std::uint32_t> label(n);
  for (std::size_t q = 0; q < n; ++q) label[q] = d.finals[q] ? 1 : 0;
  std::size_t classes = 0;
  for (;;) {
    // Signature of a state: its label plus the labels of its successors.
    std::map<std::vector<std::uint32_t>, std::uint32_t> index;
    std::vector<std::uint32_t> next(n);
    std::vector<std::uint32_t> sig(k + 1);
    for (std::size_t q = 0; q < n; ++q) {
      sig[0] = label[q];
      for (std::size_t c = 0; c < k; ++c) sig[c + 1] = label[d.at(static_cast<StateId>(q), c)];
      const auto [it, _] = index.try_emplace(sig, static_cast<std::uint32_t>(index.size()));
      next[q] = it->second;
    }
    const std::size_t count = index.size();
    label.swap(next);
    if (count == classes) break;
    classes = count;
  }

  Dfa quotient;
  quotient.alphabet = d.alphabet;
  quotient.names = canonical_names(classes);
  quotient.initial = label[d.initial];
  quotient.finals.assign(classes, false);
  quotient.delta.assign(classes * k, kNoState);
  for (std::size_t q = 0; q < n; ++q) {
    const StateId cls = label[q];
    quotient.finals[cls] = quotient.finals[cls] || d.finals[q];
    for (std::size_t c = 0; c < k; ++c) quotient.at(cls, c) = label[d.at(static_cast<StateId>(q), c)];
  }

  Dfa out = canonicalize(quotient);
  out.names = canonical_names(out.state_count());
  return checked(std::move(out));
}

/// True iff some state bijection maps a onto b preserving initial state,
/// transitions and finality. For complete accessible DFAs the bijection, if
/// any, is forced by following words from the initial state, so comparing
/// canonical forms decides the question.
inline bool is_isomorphic(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet) return false;
  if (a.state_count() != b.state_count()) return false;
  const Dfa ca = canonicalize(a);
  const Dfa cb = canonicalize(b);
  return ca.delta == cb.delta && ca.finals == cb.finals &&
         ca.state_count() == cb.state_count();
}

/// Language equality via minimization: minimal DFAs are unique up to
/// isomorphism. The alphabets must match exactly; embed into a common
/// alphabet first if they do not.
inline bool equivalent(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet)
    throw std::invalid_argument("alphabet mismatch: " + a.alphabet.to_csv() + " vs " +
                                b.alphabet.to_csv());
  return is_isomorphic(minimize(a), minimize(b));
}

/// Reachable product automaton; a pair state is final iff
/// accept(a-final?, b-final?) holds. Union and intersection instantiate
/// this with OR and AND.
inline Dfa product(const Dfa& a, const Dfa& b,
                   const std::function<bool(bool, bool)>& accept) {
  if (a.alphabet != b.alphabet)
    throw std::invalid_argument("alphabet mismatch: " + a.alphabet.to_csv() + " vs " +
                                b.alphabet.to_csv());
  validate_dfa(a);
  validate_dfa(b);

  const std::size_t k = a.symbol_count();
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> order;
  const auto intern = [&](StateId pa, StateId pb) {
    const auto [it, fresh] = ids.try_emplace({pa, pb}, static_cast<StateId>(order.size()));
    if (fresh) order.emplace_back(pa, pb);
    return it->second;
  };

  Dfa out;
  out.alphabet = a.alphabet;
  out.initial = intern(a.initial, b.initial);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto [pa, pb] = order[head];
    out.names.push_back("(" + a.names[pa] + "," + b.names[pb] + ")");
    out.finals.push_back(accept(a.finals[pa], b.finals[pb]));
    for (std::size_t c = 0; c < k; ++c) out.delta.push_back(intern(a.at(pa, c), b.at(pb, c)));
  }
  return checked(std::move(out));
}

inline constexpr auto kFinalOr = [](bool x, bool y) { return x || y; };
inline constexpr auto kFinalAnd = [](bool x, bool y) { return x && y; };

/// Nondeterministic automaton with optional lambda transitions, the
/// intermediate form of the glue constructions. Target lists are kept
/// sorted and duplicate-free.
struct Nfa {
  Alphabet alphabet;
  std::vector<std::string> names;
  std::vector<std::vector<StateId>> trans;   // state-major, symbol-minor
  std::vector<std::vector<StateId>> lambda;  // one list per state
  std::vector<StateId> initials;
  std::vector<bool> finals;

  std::size_t state_count() const { return names.size(); }
  std::size_t symbol_count() const { return alphabet.size(); }

  const std::vector<StateId>& moves(StateId q, std::size_t c) const {
    return trans[q * alphabet.size() + c];
  }

  static Nfa empty(Alphabet alphabet, std::size_t n) {
    Nfa nfa;
    nfa.alphabet = std::move(alphabet);
    nfa.names = canonical_names(n);
    nfa.trans.assign(n * nfa.alphabet.size(), {});
    nfa.lambda.assign(n, {});
    nfa.finals.assign(n, false);
    return nfa;
  }

  StateId add_state(std::string name) {
    const StateId q = static_cast<StateId>(names.size());
    names.push_back(std::move(name));
    trans.insert(trans.end(), alphabet.size(), {});
    lambda.emplace_back();
    finals.push_back(false);
    return q;
  }

  void add_edge(StateId from, std::size_t c, StateId to) {
    insert_sorted(trans[from * alphabet.size() + c], to);
  }

  void add_lambda(StateId from, StateId to) { insert_sorted(lambda[from], to); }

  bool has_lambda() const {
    return std::any_of(lambda.begin(), lambda.end(),
                       [](const auto& v) { return !v.empty(); });
  }

  static void insert_sorted(std::vector<StateId>& v, StateId x) {
    const auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  }
};

inline Nfa to_nfa(const Dfa& d) {
  Nfa nfa = Nfa::empty(d.alphabet, d.state_count());
  nfa.names = d.names;
  nfa.finals = d.finals;
  nfa.initials = {d.initial};
  for (StateId q = 0; q < d.state_count(); ++q)
    for (std::size_t c = 0; c < d.symbol_count(); ++c) nfa.add_edge(q, c, d.at(q, c));
  return nfa;
}

namespace detail {
inline std::vector<StateId> lambda_closure(const Nfa& nfa, StateId start) {
  std::vector<bool> seen(nfa.state_count(), false);
  std::vector<StateId> stack{start};
  seen[start] = true;
  for (std::size_t head = 0; head < stack.size(); ++head)
    for (StateId t : nfa.lambda[stack[head]])
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
  std::sort(stack.begin(), stack.end());
  return stack;
}
}  // namespace detail

/// Folds lambda transitions away: each state's moves become the moves of its
/// lambda closure, and a state is final iff its closure touches a final
/// state. The language is unchanged.
inline Nfa remove_lambda(const Nfa& nfa) {
  if (!nfa.has_lambda()) return nfa;

  Nfa out = Nfa::empty(nfa.alphabet, nfa.state_count());
  out.names = nfa.names;
  out.initials = nfa.initials;
  for (StateId q = 0; q < nfa.state_count(); ++q) {
    const auto closure = detail::lambda_closure(nfa, q);
    bool fin = false;
    for (StateId p : closure) {
      fin = fin || nfa.finals[p];
      for (std::size_t c = 0; c < nfa.symbol_count(); ++c)
        for (StateId t : nfa.moves(p, c)) out.add_edge(q, c, t);
    }
    out.finals[q] = fin;
  }
  return out;
}

/// Subset construction. The input must be lambda-free. The result is
/// complete (the empty subset serves as sink when some move is empty) and
/// accessible by construction; subset membership is retained in the state
/// names ("{s,f}") for diagnostics.
inline Dfa determinize(const Nfa& nfa) {
  if (nfa.has_lambda())
    throw std::invalid_argument("determinize requires a lambda-free nfa");

  const std::size_t k = nfa.symbol_count();
  std::map<std::vector<StateId>, StateId> ids;
  std::vector<std::vector<StateId>> order;
  const auto intern = [&](std::vector<StateId> subset) {
    const auto [it, fresh] = ids.try_emplace(subset, static_cast<StateId>(order.size()));
    if (fresh) order.push_back(std::move(subset));
    return it->second;
  };

  std::vector<StateId> start = nfa.initials;
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());

  Dfa out;
  out.alphabet = nfa.alphabet;
  out.initial = intern(std::move(start));
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::vector<StateId> subset = order[head];  // copy: order may grow
    std::string name = "{";
    bool fin = false;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (i) name += ',';
      name += nfa.names[subset[i]];
      fin = fin || nfa.finals[subset[i]];
    }
    name += '}';
    out.names.push_back(std::move(name));
    out.finals.push_back(fin);
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<StateId> next;
      for (StateId q : subset)
        for (StateId t : nfa.moves(q, c)) Nfa::insert_sorted(next, t);
      out.delta.push_back(intern(std::move(next)));
    }
  }
  return checked(std::move(out));
}

// Small stock automata used throughout.

inline Dfa sigma_star_dfa(const Alphabet& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  d.names = {"q0"};
  d.initial = 0;
  d.finals = {true};
  d.delta.assign(alphabet.size(), 0);
  return checked(std::move(d));
}

inline Dfa sigma_plus_dfa(const Alphabet& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  d.names = {"q0", "q1"};
  d.initial = 0;
  d.finals = {false, true};
  d.delta.assign(2 * alphabet.size(), 1);
  return checked(std::move(d));
}

inline Dfa empty_language_dfa(const Alphabet& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  d.names = {"q0"};
  d.initial = 0;
  d.finals = {false};
  d.delta.assign(alphabet.size(), 0);
  return checked(std::move(d));
}

inline Dfa lambda_only_dfa(const Alphabet& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  d.names = {"q0", "q1"};
  d.initial = 0;
  d.finals = {true, false};
  d.delta.assign(2 * alphabet.size(), 1);
  return checked(std::move(d));
}

}  // namespace observa
