#pragma once

// Shared fixtures and brute-force helpers for the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pcover/facility.hpp"
#include "pcover/generators.hpp"
#include "pcover/instance.hpp"

namespace pcover::testing {

// X={0,1,2}, S0={0,1}, S1={1,2}, S2={2}, C0=X.
inline Instance three_element(int k) {
  return Instance(3, {{1.0, {0, 1}}, {1.0, {1, 2}}, {1.0, {2}}}, {{{0, 1, 2}, k}});
}

// Ring of N = span+1 unit sets where hub j lies in sets j..j+span-1 (mod N),
// plus one extra set of weight `hub_weight` holding every hub. The hub color
// needs all N hubs; every ring set also carries `priv` private light
// elements of a second color with requirement `light_k`. For span in
// [36, 49] the LP spreads ~1/N on every ring set, below the 1/36 threshold,
// and the hub-only set lands in the heavy cover, leaving the light color
// with a positive residual.
inline Instance ring_fixture(int span, int priv, int light_k, double hub_weight = 1.02) {
  const int N = span + 1;
  std::vector<WeightedSet> sets(N + 1);
  std::vector<ColorClass> colors(2);
  for (int i = 0; i < N; ++i) {
    for (int a = 0; a < priv; ++a) {
      const int e = N + i * priv + a;
      sets[i].elements.push_back(e);
      colors[1].elements.push_back(e);
    }
  }
  for (int j = 0; j < N; ++j) {
    colors[0].elements.push_back(j);
    for (int d = 0; d < span; ++d) sets[(j + d) % N].elements.push_back(j);
    sets[N].elements.push_back(j);
  }
  sets[N].weight = hub_weight;
  colors[0].requirement = N;
  colors[1].requirement = light_k;
  return Instance(N + N * priv, std::move(sets), std::move(colors));
}

// Every feasible cover as a bitmask (m <= 20).
inline std::vector<std::uint32_t> feasible_masks(const Instance& inst) {
  std::vector<std::uint32_t> out;
  const int m = inst.num_sets();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<SetId> ids;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1u) ids.push_back(i);
    }
    if (verify_cover(inst, Cover(ids)).feasible) out.push_back(mask);
  }
  return out;
}

// Random subset of set ids, each kept with probability 1/3.
inline std::vector<SetId> random_base(int m, std::mt19937_64& rng) {
  std::vector<SetId> base;
  for (int i = 0; i < m; ++i) {
    if (rng() % 3 == 0) base.push_back(i);
  }
  return base;
}

// Small parameters for random sweeps.
inline RandomParams small_params(std::uint64_t seed, int max_n, int max_m, int max_r) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  RandomParams p;
  p.r = 1 + static_cast<int>(rng() % max_r);
  p.n = std::max(p.r, 3 + static_cast<int>(rng() % (max_n - 2)));
  p.m = 2 + static_cast<int>(rng() % (max_m - 1));
  p.density = 0.15 + 0.35 * static_cast<double>(rng() % 1000) / 1000.0;
  p.seed = seed;
  return p;
}

// Calls `visit` on every feasible integral FL solution: a nonempty open
// subset with each client unserved or assigned to one open facility. The
// same FLFractional is reused between calls.
template <class Visit>
void for_each_integral_fl(const FLInstance& fl, Visit&& visit) {
  const int F = fl.num_facilities();
  const int C = fl.num_clients;
  FLFractional frac;
  frac.x.assign(F, 0.0);
  frac.y.assign(F, std::vector<double>(C, 0.0));
  frac.z.assign(C, 0.0);
  std::vector<int> choice(C, -1);
  for (std::uint32_t open = 1; open < (1u << F); ++open) {
    std::vector<int> opened;
    for (int i = 0; i < F; ++i) {
      frac.x[i] = (open >> i & 1u) ? 1.0 : 0.0;
      if (open >> i & 1u) opened.push_back(i);
    }
    const int radix = static_cast<int>(opened.size()) + 1;
    long long combos = 1;
    for (int j = 0; j < C; ++j) combos *= radix;
    for (long long code = 0; code < combos; ++code) {
      long long rest = code;
      for (int j = 0; j < C; ++j) {
        const int d = static_cast<int>(rest % radix);
        rest /= radix;
        choice[j] = d == 0 ? -1 : opened[d - 1];
      }
      bool ok = true;
      for (const auto& c : fl.colors) {
        int served = 0;
        for (int j : c.elements) served += choice[j] >= 0;
        if (served < c.requirement) ok = false;
      }
      if (!ok) continue;
      for (int j = 0; j < C; ++j) {
        for (int i = 0; i < F; ++i) frac.y[i][j] = choice[j] == i ? 1.0 : 0.0;
        frac.z[j] = choice[j] >= 0 ? 1.0 : 0.0;
      }
      visit(static_cast<const FLFractional&>(frac));
    }
  }
}

}  // namespace pcover::testing
