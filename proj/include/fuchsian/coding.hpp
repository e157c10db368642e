#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "fuchsian/scheme.hpp"

namespace fuchsian {

enum class Kind { A0, AL, AR, ALR, ARL, B, C, D, EL, ER };

const char* kind_name(Kind k);
bool is_a_type(Kind k);

// A-types use e1 and the two indices; B/D use (e1,e2) = (eL,eR); C adds k;
// E-types use (e1,e2,e3) = (eL,eM,eR).
struct State {
  Kind kind = Kind::A0;
  int i_minus = 0;
  int i_plus = 0;
  int k = 0;
  Label e1 = -1;
  Label e2 = -1;
  Label e3 = -1;

  auto key() const { return std::tuple(static_cast<int>(kind), e1, e2, e3, i_minus, i_plus, k); }
  bool operator==(const State& o) const { return key() == o.key(); }
  bool operator<(const State& o) const { return key() < o.key(); }
};

State make_a(Kind kind, int i_minus, int i_plus, Label e);
State make_pair(Kind kind, Label eL, Label eR);
State make_c(int k, Label eL, Label eR);
State make_e(Kind kind, Label eL, Label eM, Label eR);

std::string state_string(const Scheme& s, const State& st);

// corrected: the table with the repairs needed for reversibility and the
// sphere bijection; literal: the unrepaired table and involution, kept for audits.
enum class Variant { corrected, literal };

struct Coding {
  const Scheme* scheme = nullptr;
  std::vector<State> states;
  std::map<State, int> index;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
  std::vector<std::uint8_t> dense;  // row-major 0/1
  std::vector<bool> start;
  std::vector<bool> final;
  std::vector<int> reversal;  // -1 where the image is not a state
  Variant variant = Variant::corrected;

  int size() const { return static_cast<int>(states.size()); }
  bool edge(int j, int k) const { return dense[static_cast<std::size_t>(j) * states.size() + k] != 0; }
  int find(const State& st) const;
  int n_of(const State& st) const;
  void set_edge(int j, int k, bool on);
};

std::vector<State> build_states(const Scheme& s);
// successor states of st under the table; targets that are not states are dropped
std::vector<State> successors(const Scheme& s, const std::vector<State>& states, const State& st,
                              Variant v = Variant::corrected);
Coding build_transitions(const Scheme& s, const std::vector<State>& states, Variant v = Variant::corrected);
Coding build_coding(const Scheme& s, Variant v = Variant::corrected);
// the coding keeps a pointer to its scheme
Coding build_coding(Scheme&&, Variant = Variant::corrected) = delete;
Coding build_transitions(Scheme&&, const std::vector<State>&, Variant = Variant::corrected) = delete;

State involution(const Scheme& s, const State& st, Variant v = Variant::corrected);
bool in_start(const Scheme& s, const State& st);
bool in_final(const Scheme& s, const State& st);

bool check_reversibility(const Coding& c);
bool strongly_connected(const Coding& c);
int period(const Coding& c);
bool aperiodic(const Coding& c);
int positivity_index(const Coding& c, int cap = 256);

// number of admissible paths of n states from a start state to a final state, n = 1..n_max
std::vector<std::uint64_t> path_counts(const Coding& c, int n_max);
// admissible paths of n states from start to final states
void for_each_path(const Coding& c, int n, const std::function<void(const std::vector<int>&)>& visit);

std::map<std::string, int> count_by_kind(const Coding& c);
std::string coding_to_json(const Coding& c);

}  // namespace fuchsian
