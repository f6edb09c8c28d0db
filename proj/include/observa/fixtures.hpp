#pragma once

// The embedded counterexample automata used by the verification suite and
// the tests: the two three-state acceptors of (a|b)a* and (a|b)b*, the
// five-state minimal DFA of their union, and the unary block languages.

#include "observa/automata.hpp"

namespace observa::fixtures {

/// Three-state acceptor of (a|b)a*: one semi-observable state (f drops into
/// the dead state r on b).
inline Dfa m1() {
  Dfa d;
  d.alphabet = Alphabet::of("ab");
  d.names = {"s", "r", "f"};
  d.initial = 0;
  d.finals = {false, false, true};
  //         a  b
  d.delta = {2, 2,   // s
             1, 1,   // r
             2, 1};  // f
  return checked(std::move(d));
}

/// Three-state acceptor of (a|b)b*, the mirror-role twin of m1.
inline Dfa m2() {
  Dfa d;
  d.alphabet = Alphabet::of("ab");
  d.names = {"s", "r", "f"};
  d.initial = 0;
  d.finals = {false, false, true};
  //         a  b
  d.delta = {2, 2,   // s
             1, 1,   // r
             1, 2};  // f
  return checked(std::move(d));
}

/// The five-state minimal DFA of (a|b)a* | (a|b)b*, finals {2,3,4}; states
/// 3 and 4 are semi-observable and 5 is the dead state.
inline Dfa m1_union_m2() {
  Dfa d;
  d.alphabet = Alphabet::of("ab");
  d.names = {"1", "2", "3", "4", "5"};
  d.initial = 0;
  d.finals = {false, true, true, true, false};
  //         a  b
  d.delta = {1, 1,   // 1
             2, 3,   // 2
             2, 4,   // 3
             4, 3,   // 4
             4, 4};  // 5
  return checked(std::move(d));
}

/// a+ over the unary alphabet {a}: no semi-observable states.
inline Dfa a_plus() {
  Dfa d;
  d.alphabet = Alphabet::of("a");
  d.names = {"q0", "q1"};
  d.initial = 0;
  d.finals = {false, true};
  d.delta = {1, 1};
  return checked(std::move(d));
}

/// b+ over {b}.
inline Dfa b_plus() {
  Dfa d;
  d.alphabet = Alphabet::of("b");
  d.names = {"q0", "q1"};
  d.initial = 0;
  d.finals = {false, true};
  d.delta = {1, 1};
  return checked(std::move(d));
}

}  // namespace observa::fixtures
