#pragma once

#include <set>
#include <vector>

#include "symframes/permutation.hpp"

namespace fixtures {

using symframes::GroupPtr;
using symframes::Permutation;

inline Permutation cyc(std::size_t n, std::vector<std::vector<int>> c) {
  return Permutation::from_cycles(n, c);
}

inline GroupPtr c2() { return symframes::group_from_generators(2, {cyc(2, {{1, 2}})}); }
inline GroupPtr c5() { return symframes::group_from_generators(5, {cyc(5, {{1, 2, 3, 4, 5}})}); }
inline GroupPtr s3() {
  return symframes::group_from_generators(3, {cyc(3, {{1, 2}}), cyc(3, {{1, 2, 3}})});
}
inline GroupPtr a5() {
  return symframes::group_from_generators(5, {cyc(5, {{1, 2, 3, 4, 5}}), cyc(5, {{3, 4, 5}})});
}
inline GroupPtr s5() {
  return symframes::group_from_generators(5, {cyc(5, {{1, 2, 3, 4, 5}}), cyc(5, {{1, 2}})});
}
inline GroupPtr m12() {
  return symframes::group_from_generators(
      12, {cyc(12, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}), cyc(12, {{3, 7, 11, 8}, {4, 10, 5, 6}}),
           cyc(12, {{1, 12}, {2, 11}, {3, 6}, {4, 8}, {5, 9}, {7, 10}})});
}

// Independent closure oracle on plain image vectors.
inline std::set<std::vector<int>> brute_closure(std::size_t n, const std::vector<Permutation>& gens) {
  std::vector<int> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = g.images()[x[i]];
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return seen;
}

}  // namespace fixtures
