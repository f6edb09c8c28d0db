#pragma once

// Regular expression surface syntax and compilation to a minimal DFA.
//
// Grammar, lowest precedence first: union '|', concatenation by
// juxtaposition, postfix '*' and '+', grouping '()'. '_' denotes the empty
// word and '~' the empty language. Texts that write union as infix '+'
// translate to '|' here; '+' is taken by the postfix iteration operator.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "observa/automata.hpp"

namespace observa {

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

struct Regex {
  enum class Kind { EmptySet, Lambda, Sym, Concat, Union, Star, Plus };

  Kind kind;
  char sym = 0;            // Sym only
  RegexPtr left, right;    // children; unary nodes use left

  static RegexPtr empty_set() { return node(Kind::EmptySet); }
  static RegexPtr lambda() { return node(Kind::Lambda); }
  static RegexPtr symbol(char c) {
    auto p = std::make_shared<Regex>();
    p->kind = Kind::Sym;
    p->sym = c;
    return p;
  }
  static RegexPtr concat(RegexPtr a, RegexPtr b) { return node(Kind::Concat, a, b); }
  static RegexPtr alt(RegexPtr a, RegexPtr b) { return node(Kind::Union, a, b); }
  static RegexPtr star(RegexPtr a) { return node(Kind::Star, a); }
  static RegexPtr plus(RegexPtr a) { return node(Kind::Plus, a); }

 private:
  static RegexPtr node(Kind k, RegexPtr l = nullptr, RegexPtr r = nullptr) {
    auto p = std::make_shared<Regex>();
    p->kind = k;
    p->left = std::move(l);
    p->right = std::move(r);
    return p;
  }
};

struct RegexError : std::runtime_error {
  std::size_t offset;
  RegexError(std::string msg, std::size_t at)
      : std::runtime_error(std::move(msg) + " at offset " + std::to_string(at)),
        offset(at) {}
};

namespace detail {

class RegexParser {
 public:
  RegexParser(std::string_view text, const Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  RegexPtr parse() {
    if (text_.empty()) throw RegexError("empty regex", 0);
    RegexPtr r = parse_union();
    if (pos_ != text_.size())
      throw RegexError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return r;
  }

 private:
  RegexPtr parse_union() {
    RegexPtr r = parse_concat();
    while (peek() == '|') {
      ++pos_;
      r = Regex::alt(r, parse_concat());
    }
    return r;
  }

  RegexPtr parse_concat() {
    RegexPtr r = parse_postfix();
    while (starts_atom(peek())) r = Regex::concat(r, parse_postfix());
    return r;
  }

  RegexPtr parse_postfix() {
    RegexPtr r = parse_atom();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        r = Regex::star(r);
      } else if (c == '+') {
        ++pos_;
        r = Regex::plus(r);
      } else {
        return r;
      }
    }
  }

  RegexPtr parse_atom() {
    const char c = peek();
    if (c == '\0') throw RegexError("unexpected end of regex", pos_);
    if (c == '(') {
      const std::size_t open = pos_++;
      RegexPtr r = parse_union();
      if (peek() != ')') throw RegexError("unclosed '('", open);
      ++pos_;
      return r;
    }
    if (c == '_') {
      ++pos_;
      return Regex::lambda();
    }
    if (c == '~') {
      ++pos_;
      return Regex::empty_set();
    }
    if (!is_symbol_char(c))
      throw RegexError(std::string("unexpected '") + c + "'", pos_);
    if (!alphabet_.contains(c))
      throw RegexError(std::string("symbol '") + c + "' not in alphabet " +
                           alphabet_.to_csv(),
                       pos_);
    ++pos_;
    return Regex::symbol(c);
  }

  static bool starts_atom(char c) {
    return c == '(' || c == '_' || c == '~' || is_symbol_char(c);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

struct Fragment {
  StateId start;
  StateId accept;
};

inline Fragment thompson(const RegexPtr& r, Nfa& nfa) {
  const auto fresh = [&nfa] { return nfa.add_state("t" + std::to_string(nfa.state_count())); };
  switch (r->kind) {
    case Regex::Kind::EmptySet: {
      return {fresh(), fresh()};
    }
    case Regex::Kind::Lambda: {
      Fragment f{fresh(), fresh()};
      nfa.add_lambda(f.start, f.accept);
      return f;
    }
    case Regex::Kind::Sym: {
      Fragment f{fresh(), fresh()};
      nfa.add_edge(f.start, *nfa.alphabet.index_of(r->sym), f.accept);
      return f;
    }
    case Regex::Kind::Concat: {
      const Fragment a = thompson(r->left, nfa);
      const Fragment b = thompson(r->right, nfa);
      nfa.add_lambda(a.accept, b.start);
      return {a.start, b.accept};
    }
    case Regex::Kind::Union: {
      const Fragment a = thompson(r->left, nfa);
      const Fragment b = thompson(r->right, nfa);
      Fragment f{fresh(), fresh()};
      nfa.add_lambda(f.start, a.start);
      nfa.add_lambda(f.start, b.start);
      nfa.add_lambda(a.accept, f.accept);
      nfa.add_lambda(b.accept, f.accept);
      return f;
    }
    case Regex::Kind::Star:
    case Regex::Kind::Plus: {
      const Fragment a = thompson(r->left, nfa);
      Fragment f{fresh(), fresh()};
      nfa.add_lambda(f.start, a.start);
      nfa.add_lambda(a.accept, f.accept);
      nfa.add_lambda(a.accept, a.start);
      if (r->kind == Regex::Kind::Star) nfa.add_lambda(f.start, f.accept);
      return f;
    }
  }
  throw std::logic_error("unreachable regex kind");
}

}  // namespace detail

/// Parses the surface syntax; errors carry the byte offset of the problem.
inline RegexPtr parse_regex(std::string_view text, const Alphabet& alphabet) {
  return detail::RegexParser(text, alphabet).parse();
}

/// Thompson construction into a lambda-NFA over the declared alphabet.
inline Nfa regex_to_nfa(const RegexPtr& r, const Alphabet& alphabet) {
  Nfa nfa = Nfa::empty(alphabet, 0);
  const detail::Fragment f = detail::thompson(r, nfa);
  nfa.initials = {f.start};
  nfa.finals[f.accept] = true;
  return nfa;
}

/// Minimal complete accessible DFA over the declared alphabet (which may
/// strictly contain the symbols the expression uses; the unused symbols end
/// up routed to a sink).
inline Dfa compile(const RegexPtr& r, const Alphabet& alphabet) {
  return minimize(determinize(remove_lambda(regex_to_nfa(r, alphabet))));
}

inline Dfa compile(std::string_view text, const Alphabet& alphabet) {
  return compile(parse_regex(text, alphabet), alphabet);
}

}  // namespace observa
