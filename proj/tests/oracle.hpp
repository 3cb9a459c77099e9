#pragma once

// Brute-force reference model, written against plain vectors and sharing no
// code with the library. Slow, only meant for n <= 6.

#include <algorithm>
#include <map>
#include <numeric>
#include <cmath>
#include <tuple>
#include <vector>

namespace oracle {

struct Hands {
  std::vector<int> left, right;
  bool operator<(const Hands& o) const { return std::tie(left, right) < std::tie(o.left, o.right); }
  bool operator==(const Hands& o) const = default;
  bool final() const { return left.empty() || right.empty(); }
};

enum class Filter { Both, Own, Rival, SeatLeft, SeatRight };

inline bool beats(int a, int b, bool cyclic, int n) {
  if (cyclic && ((a == 1 && b == n) || (a == n && b == 1))) return a == 1;
  return a > b;
}

// own_first: the winner's card is appended before the loser's.
inline Hands step(Hands h, bool own_first, bool cyclic, int n) {
  const int a = h.left.front(), b = h.right.front();
  h.left.erase(h.left.begin());
  h.right.erase(h.right.begin());
  const bool left_wins = beats(a, b, cyclic, n);
  auto& w = left_wins ? h.left : h.right;
  const int mine = left_wins ? a : b, theirs = left_wins ? b : a;
  if (own_first) {
    w.push_back(mine);
    w.push_back(theirs);
  } else {
    w.push_back(theirs);
    w.push_back(mine);
  }
  return h;
}

inline bool left_wins_trick(const Hands& h, bool cyclic, int n) {
  return beats(h.left.front(), h.right.front(), cyclic, n);
}

inline std::vector<Hands> moves(const Hands& h, Filter f, bool cyclic, int n) {
  if (h.final()) return {};
  const bool lw = left_wins_trick(h, cyclic, n);
  switch (f) {
    case Filter::Both: return {step(h, true, cyclic, n), step(h, false, cyclic, n)};
    case Filter::Own: return {step(h, true, cyclic, n)};
    case Filter::Rival: return {step(h, false, cyclic, n)};
    case Filter::SeatLeft: return {step(h, lw, cyclic, n)};
    case Filter::SeatRight: return {step(h, !lw, cyclic, n)};
  }
  return {};
}

inline std::vector<Hands> all_states(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Hands> out;
  do {
    for (int k = 0; k <= n; ++k) out.push_back({{perm.begin(), perm.begin() + k}, {perm.begin() + k, perm.end()}});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Fixed-point iteration: a state attains once one of its moves reaches an
// attaining state.
inline std::size_t wandering_count(int n, Filter f, bool cyclic) {
  const auto states = all_states(n);
  std::map<Hands, bool> attains;
  for (const auto& s : states) attains[s] = s.final();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& s : states) {
      if (attains[s]) continue;
      for (const auto& t : moves(s, f, cyclic, n)) {
        if (attains[t]) {
          attains[s] = true;
          changed = true;
          break;
        }
      }
    }
  }
  std::size_t wandering = 0;
  for (const auto& [s, a] : attains) wandering += !a;
  return wandering;
}

// Expected absorption time at p = 1/2 by dense Gaussian elimination.
inline std::map<Hands, double> expected_lengths(int n, bool cyclic) {
  std::vector<Hands> transient;
  for (auto& s : all_states(n))
    if (!s.final()) transient.push_back(s);
  std::map<Hands, std::size_t> idx;
  for (std::size_t i = 0; i < transient.size(); ++i) idx[transient[i]] = i;
  const std::size_t m = transient.size();
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    a[i][i] += 1.0;
    a[i][m] = 1.0;
    for (const auto& t : moves(transient[i], Filter::Both, cyclic, n))
      if (!t.final()) a[i][idx[t]] -= 0.5;
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::map<Hands, double> out;
  for (std::size_t i = 0; i < m; ++i) out[transient[i]] = a[i][m] / a[i][i];
  return out;
}

}  // namespace oracle
