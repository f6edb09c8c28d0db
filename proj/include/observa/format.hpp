#pragma once

// Line-oriented text formats: the DFA interchange format, the homomorphism
// format, and the rendering of observability reports as text and JSON.
//
// DFA format ('#' starts a comment, blank lines are ignored):
//
//   alphabet: a,b
//   states: s,r,f
//   initial: s
//   final: f
//   s a f          one line per transition: source, symbol, target
//
// The serializer always emits canonical state numbering q0,q1,... in BFS
// order, so identical automata print byte-identically.

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "observa/automata.hpp"
#include "observa/language_ops.hpp"
#include "observa/observability.hpp"

namespace observa {

struct FormatError : std::runtime_error {
  std::size_t line;
  FormatError(std::string msg, std::size_t line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + std::move(msg)),
        line(line_no) {}
};

namespace detail {

inline std::vector<std::string> split_csv(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(',', pos), text.size());
    out.emplace_back(text.substr(pos, next - pos));
    if (next == text.size()) break;
    pos = next + 1;
  }
  return out;
}

inline std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool valid_state_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= ' ' || u >= 127 || c == ',' || c == ':' || c == '#') return false;
  }
  return true;
}

/// Iterates the content lines of a source: comments stripped, blank lines
/// skipped, 1-based line numbers kept.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view line = text.substr(pos, next - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::string body = strip(line);
    if (!body.empty()) out.emplace_back(line_no, std::move(body));
    if (next == text.size()) break;
    pos = next + 1;
  }
  return out;
}

inline std::string expect_header(const std::pair<std::size_t, std::string>& line,
                                 std::string_view key) {
  const std::string& body = line.second;
  if (body.rfind(key, 0) != 0 || body.size() < key.size() || body[key.size()] != ':')
    throw FormatError("expected '" + std::string(key) + ":' header", line.first);
  return strip(std::string_view(body).substr(key.size() + 1));
}

}  // namespace detail

struct DfaParseOptions {
  bool complete_partial = false;  // route missing transitions to a fresh sink
};

/// Parses the DFA text format. Rejects duplicate transitions, unknown states
/// and symbols, non-accessible states, and (unless completion is requested)
/// partial transition tables.
inline Dfa parse_dfa(std::string_view text, const DfaParseOptions& opts = {}) {
  const auto lines = detail::content_lines(text);
  if (lines.size() < 4) throw FormatError("truncated input: expected 4 header lines", 1);

  Alphabet alphabet;
  try {
    alphabet = Alphabet::parse(detail::expect_header(lines[0], "alphabet"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what(), lines[0].first);
  }

  const auto state_items = detail::split_csv(detail::expect_header(lines[1], "states"));
  std::vector<std::string> names;
  std::map<std::string, StateId> state_of;
  for (const auto& raw_name : state_items) {
    const std::string name = detail::strip(raw_name);
    if (!detail::valid_state_name(name))
      throw FormatError("invalid state identifier: '" + name + "'", lines[1].first);
    if (!state_of.try_emplace(name, static_cast<StateId>(names.size())).second)
      throw FormatError("duplicate state: '" + name + "'", lines[1].first);
    names.push_back(name);
  }
  if (names.empty()) throw FormatError("state list is empty", lines[1].first);

  const auto lookup = [&](const std::string& name, std::size_t line_no) {
    const auto it = state_of.find(name);
    if (it == state_of.end()) throw FormatError("unknown state: '" + name + "'", line_no);
    return it->second;
  };

  const std::string initial_name = detail::expect_header(lines[2], "initial");
  const StateId initial = lookup(initial_name, lines[2].first);

  std::vector<bool> finals(names.size(), false);
  const std::string final_csv = detail::expect_header(lines[3], "final");
  if (!final_csv.empty()) {
    for (const auto& item : detail::split_csv(final_csv)) {
      const std::string name = detail::strip(item);
      const StateId q = lookup(name, lines[3].first);
      if (finals[q]) throw FormatError("duplicate final state: '" + name + "'", lines[3].first);
      finals[q] = true;
    }
  }

  Dfa d;
  d.alphabet = alphabet;
  d.names = std::move(names);
  d.initial = initial;
  d.finals = std::move(finals);
  d.delta.assign(d.state_count() * alphabet.size(), kNoState);

  for (std::size_t i = 4; i < lines.size(); ++i) {
    const auto& [line_no, body] = lines[i];
    const auto parts = detail::tokens(body);
    if (parts.size() != 3)
      throw FormatError("expected 'source symbol target', got '" + body + "'", line_no);
    const StateId src = lookup(parts[0], line_no);
    if (parts[1].size() != 1 || !alphabet.contains(parts[1][0]))
      throw FormatError("unknown symbol: '" + parts[1] + "'", line_no);
    const StateId dst = lookup(parts[2], line_no);
    const std::size_t c = *alphabet.index_of(parts[1][0]);
    if (d.at(src, c) != kNoState)
      throw FormatError("duplicate transition: " + parts[0] + " " + parts[1], line_no);
    d.at(src, c) = dst;
  }

  if (!d.is_complete()) {
    if (!opts.complete_partial) {
      for (StateId q = 0; q < d.state_count(); ++q)
        for (std::size_t c = 0; c < alphabet.size(); ++c)
          if (d.at(q, c) == kNoState)
            throw FormatError("partial transition table: no transition from '" + d.names[q] +
                                  "' on '" + std::string(1, alphabet.at(c)) +
                                  "' (pass --complete to add a sink)",
                              1);
    }
    d = complete(d, alphabet);
  }

  if (!is_accessible(d)) {
    std::string unreachable;
    std::vector<bool> seen(d.state_count(), false);
    for (StateId q : reachable_states(d)) seen[q] = true;
    for (StateId q = 0; q < d.state_count(); ++q)
      if (!seen[q]) {
        if (!unreachable.empty()) unreachable += ",";
        unreachable += d.names[q];
      }
    throw FormatError("non-accessible states: " + unreachable, 1);
  }
  return checked(std::move(d));
}

/// Serializes in canonical form: states renumbered q0,q1,... in BFS order,
/// transitions listed state-major then symbol-minor. Byte-deterministic.
inline std::string format_dfa(const Dfa& d) {
  Dfa c = canonicalize(d);
  c.names = canonical_names(c.state_count());

  std::string out;
  out += "alphabet: " + c.alphabet.to_csv() + "\n";
  out += "states: ";
  for (std::size_t q = 0; q < c.state_count(); ++q) {
    if (q) out += ',';
    out += c.names[q];
  }
  out += "\ninitial: " + c.names[c.initial] + "\nfinal:";
  bool first = true;
  for (StateId q = 0; q < c.state_count(); ++q)
    if (c.finals[q]) {
      out += first ? " " : ",";
      out += c.names[q];
      first = false;
    }
  out += '\n';
  for (StateId q = 0; q < c.state_count(); ++q)
    for (std::size_t i = 0; i < c.symbol_count(); ++i)
      out += c.names[q] + " " + c.alphabet.at(i) + " " + c.names[c.at(q, i)] + "\n";
  return out;
}

/// Homomorphism format: one 'symbol -> image' line per source symbol, with
/// '_' denoting the empty image. The target alphabet is inferred from the
/// images in first-appearance order.
inline Homomorphism parse_homomorphism(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw FormatError("empty homomorphism", 1);

  std::string source_syms;
  std::string target_syms;
  std::vector<Word> images;
  for (const auto& [line_no, body] : lines) {
    const auto parts = detail::tokens(body);
    if (parts.size() != 3 || parts[1] != "->")
      throw FormatError("expected 'symbol -> image', got '" + body + "'", line_no);
    if (parts[0].size() != 1 || !is_symbol_char(parts[0][0]))
      throw FormatError("invalid source symbol: '" + parts[0] + "'", line_no);
    const char sym = parts[0][0];
    if (source_syms.find(sym) != std::string::npos)
      throw FormatError(std::string("duplicate symbol: '") + sym + "'", line_no);
    source_syms += sym;

    Word image;
    if (parts[2] != "_") {
      for (char c : parts[2]) {
        if (!is_symbol_char(c))
          throw FormatError(std::string("invalid image symbol: '") + c + "'", line_no);
        image += c;
        if (target_syms.find(c) == std::string::npos) target_syms += c;
      }
    }
    images.push_back(std::move(image));
  }
  if (target_syms.empty())
    throw FormatError("all images are empty; target alphabet would be empty", lines[0].first);
  return Homomorphism::of(Alphabet::of(source_syms), Alphabet::of(target_syms),
                          std::move(images));
}

inline std::string format_homomorphism(const Homomorphism& h) {
  std::string out;
  for (std::size_t c = 0; c < h.source.size(); ++c) {
    out += h.source.at(c);
    out += " -> ";
    out += h.images[c].empty() ? "_" : h.images[c];
    out += '\n';
  }
  return out;
}

inline std::string render_report(const ObservabilityReport& r) {
  std::string out;
  out += "so_count: " + std::to_string(r.so_count) + "\n";
  out += "so_index: " + std::to_string(r.so_index) + "\n";
  out += std::string("observable_language: ") + (r.observable_language ? "true" : "false") + "\n";
  out += "minimal_alphabet: ";
  for (std::size_t i = 0; i < r.minimal_alphabet.size(); ++i) {
    if (i) out += ',';
    out += r.minimal_alphabet[i];
  }
  out += "\nnon_observable_count: " + std::to_string(r.non_observable_count) + "\n";
  for (const auto& [name, cls] : r.per_state)
    out += "state " + name + ": " + std::string(to_string(cls)) + "\n";
  return out;
}

inline std::string render_report_json(const ObservabilityReport& r) {
  nlohmann::ordered_json j;
  j["so_count"] = r.so_count;
  j["so_index"] = r.so_index;
  j["observable_language"] = r.observable_language;
  nlohmann::ordered_json alpha = nlohmann::ordered_json::array();
  for (char c : r.minimal_alphabet) alpha.push_back(std::string(1, c));
  j["minimal_alphabet"] = std::move(alpha);
  j["non_observable_count"] = r.non_observable_count;
  nlohmann::ordered_json states = nlohmann::ordered_json::object();
  for (const auto& [name, cls] : r.per_state) states[name] = std::string(to_string(cls));
  j["states"] = std::move(states);
  return j.dump(2) + "\n";
}

}  // namespace observa
