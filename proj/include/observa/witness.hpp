#pragma once

// Counterexample (witness) search for non-closure claims.
//
// A claim states that applying an operation to language(s) drawn from a
// family can leave the family: for the T claims the family is "certified by
// an automaton with so(A) <= k" and the witness condition is a result whose
// language-level semi-observability index exceeds k; for the O claims the
// family is the observable languages and the condition is a result whose
// minimal DFA (over its minimal alphabet) has a dead state.
//
// The search enumerates candidates in a fixed canonical order and returns
// the first witness in that order, independent of worker count:
//   - machines in enumeration order (state count, structure, finals mask),
//   - machine pairs by (max(i,j), i, j) over the candidate list, which keeps
//     the order of existing pairs stable when bounds are raised,
//   - (machine, homomorphism) pairs lexicographically, homomorphism images
//     listed in length-then-alphabet order.
// Every returned witness is re-verified with the naive classifier, which is
// implemented separately from the production one.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "observa/automata.hpp"
#include "observa/format.hpp"
#include "observa/language_ops.hpp"
#include "observa/observability.hpp"
#include "observa/oracle.hpp"

namespace observa {

enum class ClaimId {
  T1Union,
  T1Concat,
  T1Hom,
  T1InvHom,
  T2Plus,
  T3Plus,
  ONonUnion,
  ONonIntersect,
  ONonComplement,
  ONonConcat,
  ONonHom,
  ONonInvHom,
  ONonMirror,
  ONonLquot,
  ONonRquot,
};

struct ClaimInfo {
  ClaimId id;
  const char* name;
  const char* op;          // CLI operation token
  int arity;               // automaton inputs
  bool uses_hom;
  std::size_t bound;       // k for T claims, 0 for O claims
  bool observable_family;  // O claims
  std::size_t default_max_states;
};

inline const std::vector<ClaimInfo>& claim_registry() {
  static const std::vector<ClaimInfo> table = {
      {ClaimId::T1Union, "T1-union", "union", 2, false, 1, false, 3},
      {ClaimId::T1Concat, "T1-concat", "concat", 2, false, 1, false, 4},
      {ClaimId::T1Hom, "T1-hom", "hom", 1, true, 1, false, 4},
      {ClaimId::T1InvHom, "T1-invhom", "invhom", 1, true, 1, false, 4},
      {ClaimId::T2Plus, "T2-plus", "plus", 1, false, 2, false, 6},
      {ClaimId::T3Plus, "T3-plus", "plus", 1, false, 3, false, 6},
      {ClaimId::ONonUnion, "O-nonclosure-union", "union", 2, false, 0, true, 4},
      {ClaimId::ONonIntersect, "O-nonclosure-intersect", "intersect", 2, false, 0, true, 4},
      {ClaimId::ONonComplement, "O-nonclosure-complement", "complement", 1, false, 0, true, 4},
      {ClaimId::ONonConcat, "O-nonclosure-concat", "concat", 2, false, 0, true, 4},
      {ClaimId::ONonHom, "O-nonclosure-hom", "hom", 1, true, 0, true, 4},
      {ClaimId::ONonInvHom, "O-nonclosure-invhom", "invhom", 1, true, 0, true, 4},
      {ClaimId::ONonMirror, "O-nonclosure-mirror", "mirror", 1, false, 0, true, 4},
      {ClaimId::ONonLquot, "O-nonclosure-lquot", "lquot", 2, false, 0, true, 4},
      {ClaimId::ONonRquot, "O-nonclosure-rquot", "rquot", 2, false, 0, true, 4},
  };
  return table;
}

inline const ClaimInfo& claim_info(ClaimId id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return c;
  throw std::logic_error("unregistered claim");
}

inline const ClaimInfo& parse_claim(std::string_view name) {
  for (const auto& c : claim_registry())
    if (name == c.name) return c;
  throw std::invalid_argument("unknown claim: '" + std::string(name) + "'");
}

struct WitnessBounds {
  std::size_t max_states = 4;
  Alphabet sigma = Alphabet::of("ab");
  std::size_t max_image_len = 3;
};

inline WitnessBounds default_bounds(ClaimId id) {
  WitnessBounds b;
  b.max_states = claim_info(id).default_max_states;
  return b;
}

struct WitnessTask {
  ClaimId claim;
  WitnessBounds bounds;

  explicit WitnessTask(ClaimId id) : claim(id), bounds(default_bounds(id)) {}
  WitnessTask(ClaimId id, WitnessBounds b) : claim(id), bounds(std::move(b)) {}
};

struct Witness {
  std::string claim;
  std::string operation;
  std::size_t bound = 0;
  std::vector<Dfa> inputs;
  std::optional<Homomorphism> hom;
  Dfa result;
  std::vector<std::size_t> before_indices;  // language-level family measure
  std::size_t after_index = 0;
  bool sigma_variant = false;  // all minimal alphabets equal the search alphabet
  std::vector<std::string> subset_diagnostics;  // plus claims: semi-observable subsets
  std::uint64_t search_index = 0;
};

struct BoundsExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Candidate machines are stored as packed canonical structures plus a finals
// mask; 3 bits per transition digit covers up to 6 states.
struct PackedMachine {
  std::uint64_t code = 0;
  std::uint8_t n = 0;
  std::uint8_t finals = 0;
};

inline std::uint64_t pack_digits(const std::vector<StateId>& digits) {
  std::uint64_t code = 0;
  for (std::size_t t = 0; t < digits.size(); ++t)
    code |= static_cast<std::uint64_t>(digits[t]) << (3 * t);
  return code;
}

inline void unpack_digits(std::uint64_t code, std::size_t n, std::size_t k,
                          std::vector<StateId>& digits) {
  digits.resize(n * k);
  for (std::size_t t = 0; t < digits.size(); ++t)
    digits[t] = static_cast<StateId>((code >> (3 * t)) & 7u);
}

inline Dfa unpack_machine(const PackedMachine& m, const Alphabet& alphabet) {
  std::vector<StateId> digits;
  unpack_digits(m.code, m.n, alphabet.size(), digits);
  return dfa_from_parts(alphabet, digits, m.n, m.finals);
}

/// All packed canonical transition structures with 1..max_states states.
inline std::vector<PackedMachine> all_structures(std::size_t max_states, std::size_t k) {
  std::vector<PackedMachine> out;
  for (std::size_t n = 1; n <= max_states; ++n)
    for_each_structure(n, k, [&](const std::vector<StateId>& digits) {
      out.push_back({pack_digits(digits), static_cast<std::uint8_t>(n), 0});
      return true;
    });
  return out;
}

/// Nonempty words over the alphabet with length <= max_len, in
/// length-then-alphabet order: the homomorphism image pool.
inline std::vector<Word> image_pool(const Alphabet& alphabet, std::size_t max_len) {
  std::vector<Word> out;
  std::vector<Word> layer{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    next.reserve(layer.size() * alphabet.size());
    for (const Word& w : layer)
      for (std::size_t c = 0; c < alphabet.size(); ++c) next.push_back(w + alphabet.at(c));
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Pair index -> (i, j), ordered by (max(i,j), i, j). Raising the candidate
/// count appends pairs without reordering the existing ones.
inline std::pair<std::uint64_t, std::uint64_t> diagonal_pair(std::uint64_t m) {
  std::uint64_t d = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
  while (d * d > m) --d;
  while ((d + 1) * (d + 1) <= m) ++d;
  const std::uint64_t r = m - d * d;
  return r < d ? std::make_pair(r, d) : std::make_pair(d, r - d);
}

inline void atomic_min(std::atomic<std::uint64_t>& target, std::uint64_t value) {
  std::uint64_t cur = target.load();
  while (value < cur && !target.compare_exchange_weak(cur, value)) {
  }
}

/// Runs fn(index) for every index in [0, space) across the workers, keeping
/// the smallest index for which fn returned true. Blocks whose indices all
/// exceed the current best are skipped; the result does not depend on the
/// worker count.
inline std::uint64_t parallel_first_hit(std::uint64_t space, unsigned jobs,
                                        std::uint64_t block,
                                        const std::function<bool(std::uint64_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::uint64_t> best{UINT64_MAX};
  std::atomic<std::uint64_t> next_block{0};

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t start = next_block.fetch_add(1) * block;
      if (start >= space || start > best.load()) return;
      const std::uint64_t end = std::min(space, start + block);
      for (std::uint64_t idx = start; idx < end; ++idx) {
        if (idx > best.load(std::memory_order_relaxed)) break;
        if (fn(idx)) atomic_min(best, idx);
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return best.load();
}

/// One evaluation context per claim: candidate tables, the index space, and
/// the operation wiring.
struct ClaimSearch {
  const ClaimInfo& info;
  WitnessBounds bounds;
  std::vector<PackedMachine> structures;  // plus claims: structures only
  std::vector<PackedMachine> candidates;  // other claims: family-filtered machines
  std::vector<Word> images;               // hom claims
  std::uint64_t space = 0;

  explicit ClaimSearch(const WitnessTask& task)
      : info(claim_info(task.claim)), bounds(task.bounds) {
    check_enumeration_bounds(bounds.max_states, bounds.sigma);
    const std::size_t k = bounds.sigma.size();

    if (info.op == std::string_view("plus")) {
      structures = all_structures(bounds.max_states, k);
      space = static_cast<std::uint64_t>(structures.size()) << 6;  // 64 finals slots
      return;
    }

    // Family-filtered candidate machines in enumeration order.
    std::vector<StateId> digits;
    for (const PackedMachine& s : all_structures(bounds.max_states, k)) {
      unpack_digits(s.code, s.n, k, digits);
      for (std::uint32_t mask = 0; mask < (1u << s.n); ++mask) {
        if (info.observable_family) {
          const Dfa d = dfa_from_parts(bounds.sigma, digits, s.n, mask);
          if (language_dead_state_count(d) != 0) continue;
        } else {
          if (so_count_raw(digits, s.n, k, mask) > info.bound) continue;
        }
        candidates.push_back({s.code, s.n, static_cast<std::uint8_t>(mask)});
      }
    }

    if (info.uses_hom) {
      if (bounds.max_image_len < 1 || bounds.max_image_len > 4)
        throw std::invalid_argument("max image length must be in 1..4");
      images = image_pool(bounds.sigma, bounds.max_image_len);
      std::uint64_t homs = 1;
      for (std::size_t c = 0; c < k; ++c) homs *= images.size();
      space = static_cast<std::uint64_t>(candidates.size()) * homs;
    } else if (info.arity == 2) {
      space = static_cast<std::uint64_t>(candidates.size()) * candidates.size();
    } else {
      space = candidates.size();
    }
  }

  std::size_t measure(const Dfa& d) const {
    return info.observable_family ? language_dead_state_count(d) : language_so_index(d);
  }

  Homomorphism hom_at(std::uint64_t j) const {
    const std::size_t k = bounds.sigma.size();
    std::vector<Word> imgs(k);
    for (std::size_t c = k; c-- > 0;) {
      imgs[c] = images[j % images.size()];
      j /= images.size();
    }
    return Homomorphism::of(bounds.sigma, bounds.sigma, std::move(imgs));
  }

  Dfa apply(const std::vector<Dfa>& in, const std::optional<Homomorphism>& h) const {
    const std::string_view op = info.op;
    if (op == "union") return union_lang(in[0], in[1]);
    if (op == "intersect") return intersection(in[0], in[1]);
    if (op == "concat") return concatenate(in[0], in[1]);
    if (op == "lquot") return left_quotient(in[0], in[1]);
    if (op == "rquot") return right_quotient(in[0], in[1]);
    if (op == "complement") return complement(in[0]);
    if (op == "mirror") return mirror(in[0]);
    if (op == "plus") return kleene_plus(in[0]);
    if (op == "hom") return hom_image(in[0], *h);
    if (op == "invhom") return hom_inverse(in[0], *h);
    throw std::logic_error("unwired claim operation");
  }

  /// Decodes an index into inputs; returns false when the index is a hole
  /// (plus claims: finals mask not valid for the structure's state count)
  /// or the inputs fail the family filter (plus claims only; other claims
  /// are prefiltered).
  bool decode(std::uint64_t idx, std::vector<Dfa>& in, std::optional<Homomorphism>& h,
              std::vector<StateId>& scratch) const {
    in.clear();
    h.reset();
    const std::size_t k = bounds.sigma.size();
    if (info.op == std::string_view("plus")) {
      const PackedMachine& s = structures[idx >> 6];
      const std::uint32_t mask = idx & 63u;
      if (mask >= (1u << s.n)) return false;
      unpack_digits(s.code, s.n, k, scratch);
      const std::size_t so = so_count_raw(scratch, s.n, k, mask);
      // so <= 1 candidates cannot witness: their iterated concatenation
      // keeps so_index <= 1 (the plus-closure sweep checks this property).
      if (so <= 1 || so > info.bound) return false;
      in.push_back(dfa_from_parts(bounds.sigma, scratch, s.n, mask));
      return true;
    }
    if (info.uses_hom) {
      std::uint64_t homs = 1;
      for (std::size_t c = 0; c < k; ++c) homs *= images.size();
      in.push_back(unpack_machine(candidates[idx / homs], bounds.sigma));
      h = hom_at(idx % homs);
      return true;
    }
    if (info.arity == 2) {
      const auto [i, j] = diagonal_pair(idx);
      in.push_back(unpack_machine(candidates[i], bounds.sigma));
      in.push_back(unpack_machine(candidates[j], bounds.sigma));
      return true;
    }
    in.push_back(unpack_machine(candidates[idx], bounds.sigma));
    return true;
  }
};

}  // namespace detail

/// Searches the claim's candidate space and returns the canonically first
/// witness. Throws BoundsExhausted when the space holds none; that outcome
/// signals the bounds must be raised, not a defect. jobs=0 uses one worker
/// per hardware thread; the returned witness is the same for every count.
inline Witness find_witness(const WitnessTask& task, unsigned jobs = 0) {
  const detail::ClaimSearch search(task);

  thread_local std::vector<Dfa> t_in;
  thread_local std::optional<Homomorphism> t_hom;
  thread_local std::vector<StateId> t_scratch;

  const auto hits = [&search](std::uint64_t idx) {
    if (!search.decode(idx, t_in, t_hom, t_scratch)) return false;
    const Dfa result = search.apply(t_in, t_hom);
    return search.measure(result) > search.info.bound;
  };

  const std::uint64_t found =
      detail::parallel_first_hit(search.space, jobs, 1024, hits);
  if (found == UINT64_MAX)
    throw BoundsExhausted(std::string(search.info.name) +
                          ": no witness within max_states=" +
                          std::to_string(task.bounds.max_states) + " over " +
                          task.bounds.sigma.to_csv());

  // Rebuild and verify the winning candidate.
  std::vector<Dfa> in;
  std::optional<Homomorphism> hom;
  std::vector<StateId> scratch;
  if (!search.decode(found, in, hom, scratch))
    throw std::logic_error("witness index failed to decode");
  const Dfa result = search.apply(in, hom);

  Witness w;
  w.claim = search.info.name;
  w.operation = search.info.op;
  w.bound = search.info.bound;
  w.inputs = in;
  w.hom = hom;
  w.result = result;
  w.after_index = search.measure(result);
  w.search_index = found;
  w.sigma_variant = minimal_alphabet(result) == task.bounds.sigma.symbols();
  for (const Dfa& d : in) {
    w.before_indices.push_back(search.measure(d));
    w.sigma_variant =
        w.sigma_variant && minimal_alphabet(d) == task.bounds.sigma.symbols();
  }

  // Witness invariant, checked with the production measures...
  if (w.after_index <= w.bound)
    throw std::logic_error("witness assembly: result within bound");
  for (std::size_t b : w.before_indices)
    if (b > w.bound) throw std::logic_error("witness assembly: input outside family");

  // ...and re-checked with the naive classifier.
  const auto naive_measure = [&](const Dfa& d) {
    return search.info.observable_family ? naive::language_dead_state_count(d)
                                         : naive::language_so_index(d);
  };
  if (naive_measure(result) != w.after_index)
    throw std::logic_error("witness re-check: naive classifier disagrees on result");
  for (std::size_t i = 0; i < in.size(); ++i)
    if (naive_measure(in[i]) != w.before_indices[i])
      throw std::logic_error("witness re-check: naive classifier disagrees on input");

  // Subset diagnostics for the plus claims: which subset states of the
  // unminimized construction turned semi-observable.
  if (search.info.op == std::string_view("plus")) {
    const Dfa subset = raw::kleene_plus(in[0]);
    const auto classes = classify_states(subset);
    for (StateId q = 0; q < subset.state_count(); ++q)
      if (classes[q] == StateClass::SemiObservable)
        w.subset_diagnostics.push_back(subset.names[q]);
  }
  return w;
}

inline Witness find_witness(ClaimId id, unsigned jobs = 0) {
  return find_witness(WitnessTask(id), jobs);
}

inline std::string render_witness(const Witness& w, const WitnessBounds& bounds) {
  std::string out;
  out += "claim: " + w.claim + "\n";
  out += "operation: " + w.operation + "\n";
  out += "bound: " + std::to_string(w.bound) + "\n";
  out += "max_states: " + std::to_string(bounds.max_states) + "\n";
  out += "sigma: " + bounds.sigma.to_csv() + "\n";
  if (w.hom) out += "max_image_len: " + std::to_string(bounds.max_image_len) + "\n";
  out += "search_index: " + std::to_string(w.search_index) + "\n";
  out += "before_indices:";
  for (std::size_t i = 0; i < w.before_indices.size(); ++i)
    out += (i ? "," : " ") + std::to_string(w.before_indices[i]);
  out += "\nafter_index: " + std::to_string(w.after_index) + "\n";
  out += std::string("sigma_variant: ") + (w.sigma_variant ? "true" : "false") + "\n";
  if (!w.subset_diagnostics.empty()) {
    out += "semi_observable_subsets:";
    for (std::size_t i = 0; i < w.subset_diagnostics.size(); ++i)
      out += (i ? "," : " ") + w.subset_diagnostics[i];
    out += "\n";
  }
  if (w.hom) {
    out += "homomorphism:\n";
    out += format_homomorphism(*w.hom);
  }
  for (std::size_t i = 0; i < w.inputs.size(); ++i) {
    out += "input " + std::to_string(i + 1) + ":\n";
    out += format_dfa(w.inputs[i]);
  }
  out += "result:\n";
  out += format_dfa(w.result);
  return out;
}

}  // namespace observa
