#include "braess.hpp"

#include <array>

#include "error.hpp"

namespace anarchy {

namespace {

constexpr int kEdges = 5;  // sa, sb, ab, at, bt
constexpr std::array<std::array<int, 3>, 3> kPathEdges{{
    {{0, 2, 4}},   // s -> a -> b -> t
    {{0, 3, -1}},  // s -> a -> t
    {{1, 4, -1}},  // s -> b -> t
}};

}  // namespace

BraessReport braess_negative_test(long k) {
  if (k < 1) throw InputError("k must be at least 1");

  Rat k2 = Rat(k) * Rat(k);
  // cost[e][load] for load 1 and 2.
  std::array<std::array<Rat, 2>, kEdges> cost{{
      {Rat(1), k2},      // (s,a)
      {Rat(k), Rat(k)},  // (s,b)
      {Rat(1), Rat(1)},  // (a,b)
      {Rat(k), Rat(k)},  // (a,t)
      {Rat(1), k2},      // (b,t)
  }};

  auto outcome_cost = [&](std::vector<int> paths) {
    std::array<int, kEdges> load{};
    for (int p : paths)
      for (int e : kPathEdges[static_cast<std::size_t>(p)])
        if (e >= 0) ++load[static_cast<std::size_t>(e)];
    Rat total = 0;
    for (int e = 0; e < kEdges; ++e)
      if (load[static_cast<std::size_t>(e)] > 0)
        total += cost[static_cast<std::size_t>(e)][static_cast<std::size_t>(
            load[static_cast<std::size_t>(e)] - 1)];
    return total;
  };

  BraessReport rep;
  rep.k = k;
  rep.optimum_one = outcome_cost({0});
  rep.optimum_two = outcome_cost({0, 0});
  for (int p = 0; p < 3; ++p) {
    Rat one = outcome_cost({p});
    if (one < rep.optimum_one) rep.optimum_one = one;
    for (int q = p; q < 3; ++q) {
      Rat two = outcome_cost({p, q});
      if (two < rep.optimum_two) rep.optimum_two = two;
    }
  }

  for (int first = 0; first < 3; ++first)
    for (int second = 0; second < 3; ++second) {
      BraessStrategy st;
      st.first_path = first;
      st.second_path = second;
      st.cost_one = outcome_cost({first});
      st.cost_two = outcome_cost({first, second});
      st.ratio_one = st.cost_one / rep.optimum_one;
      st.ratio_two = st.cost_two / rep.optimum_two;
      st.worst_ratio = std::max(st.ratio_one, st.ratio_two);
      rep.strategies.push_back(std::move(st));
    }

  for (std::size_t i = 0; i < rep.strategies.size(); ++i)
    if (rep.strategies[i].worst_ratio < rep.strategies[rep.best_index].worst_ratio)
      rep.best_index = i;
  rep.best_ratio = rep.strategies[rep.best_index].worst_ratio;
  rep.four_competitive_possible = rep.best_ratio <= 4;
  return rep;
}

}  // namespace anarchy
