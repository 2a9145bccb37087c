#include "pcover/facility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "pcover/error.hpp"
#include "pcover/log.hpp"
#include "pcover/rounders.hpp"

namespace pcover {
namespace {

constexpr double kPositive = 1e-12;

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void validate_space(const FLInstance& fl, bool partition) {
  const int nf = fl.num_facilities();
  const int nc = fl.num_clients;
  if (nf < 1) throw InputError("facilities: at least one facility is required");
  if (nc < 1) throw InputError("clients: at least one client is required");
  for (int i = 0; i < nf; ++i) {
    if (!finite_nonneg(fl.facility_cost[i])) {
      throw InputError("facilities[" + std::to_string(i) +
                       "].cost: must be a finite nonnegative number");
    }
  }
  if (static_cast<int>(fl.distance.size()) != nf) {
    throw InputError("distances.facility_client: expected " + std::to_string(nf) +
                     " rows, got " + std::to_string(fl.distance.size()));
  }
  for (int i = 0; i < nf; ++i) {
    const std::string field = "distances.facility_client[" + std::to_string(i) + "]";
    if (static_cast<int>(fl.distance[i].size()) != nc) {
      throw InputError(field + ": expected " + std::to_string(nc) + " entries");
    }
    for (int j = 0; j < nc; ++j) {
      if (!finite_nonneg(fl.distance[i][j])) {
        throw InputError(field + "[" + std::to_string(j) +
                         "]: must be a finite nonnegative number");
      }
    }
  }
  const auto& d = fl.distance;
  // Without facility-facility distances the bipartite part can still witness
  // a violation: d(i,j) <= d(i,j') + d(j',i') + d(i',j).
  for (int i = 0; i < nf; ++i) {
    for (int i2 = 0; i2 < nf; ++i2) {
      if (i2 == i) continue;
      for (int j = 0; j < nc; ++j) {
        for (int j2 = 0; j2 < nc; ++j2) {
          if (d[i][j] > d[i][j2] + d[i2][j2] + d[i2][j] + kMetricTol) {
            throw InputError("distances.facility_client: triangle inequality fails "
                             "on facilities " + std::to_string(i) + "," +
                             std::to_string(i2) + " and clients " +
                             std::to_string(j) + "," + std::to_string(j2));
          }
        }
      }
    }
  }
  if (!fl.client_distance.empty()) {
    const auto& cc = fl.client_distance;
    if (static_cast<int>(cc.size()) != nc) {
      throw InputError("distances.client_client: expected " + std::to_string(nc) + " rows");
    }
    for (int j = 0; j < nc; ++j) {
      const std::string field = "distances.client_client[" + std::to_string(j) + "]";
      if (static_cast<int>(cc[j].size()) != nc) {
        throw InputError(field + ": expected " + std::to_string(nc) + " entries");
      }
      if (std::abs(cc[j][j]) > kMetricTol) throw InputError(field + ": diagonal must be 0");
      for (int j2 = 0; j2 < nc; ++j2) {
        if (!finite_nonneg(cc[j][j2])) {
          throw InputError(field + "[" + std::to_string(j2) +
                           "]: must be a finite nonnegative number");
        }
        if (std::abs(cc[j][j2] - cc[j2][j]) > kMetricTol) {
          throw InputError(field + "[" + std::to_string(j2) + "]: matrix is not symmetric");
        }
      }
    }
    for (int j = 0; j < nc; ++j) {
      for (int j2 = 0; j2 < nc; ++j2) {
        for (int j3 = 0; j3 < nc; ++j3) {
          if (cc[j][j3] > cc[j][j2] + cc[j2][j3] + kMetricTol) {
            throw InputError("distances.client_client: triangle inequality fails on "
                             "clients " + std::to_string(j) + "," +
                             std::to_string(j2) + "," + std::to_string(j3));
          }
        }
        for (int i = 0; i < nf; ++i) {
          if (d[i][j] > d[i][j2] + cc[j2][j] + kMetricTol ||
              cc[j][j2] > d[i][j] + d[i][j2] + kMetricTol) {
            throw InputError("distances: triangle inequality fails on facility " +
                             std::to_string(i) + " and clients " +
                             std::to_string(j) + "," + std::to_string(j2));
          }
        }
      }
    }
  }

  if (fl.colors.empty()) throw InputError("colors: at least one color is required");
  std::vector<int> membership(nc, 0);
  for (int t = 0; t < fl.num_colors(); ++t) {
    const std::string field = "colors[" + std::to_string(t) + "]";
    auto elements = fl.colors[t].elements;
    if (elements.empty()) throw InputError(field + ".elements: color class must be non-empty");
    std::sort(elements.begin(), elements.end());
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
      throw InputError(field + ".elements: duplicate client id");
    }
    for (ClientId j : elements) {
      if (j < 0 || j >= nc) {
        throw InputError(field + ".elements: client id " + std::to_string(j) +
                         " out of range [0, " + std::to_string(nc) + ")");
      }
      ++membership[j];
    }
    const int k = fl.colors[t].requirement;
    if (k < 1 || k > static_cast<int>(elements.size())) {
      throw InputError(field + ".requirement: " + std::to_string(k) +
                       " outside [1, " + std::to_string(elements.size()) + "]");
    }
  }
  for (int j = 0; j < nc; ++j) {
    if (membership[j] == 0) {
      throw InputError("colors: client " + std::to_string(j) + " belongs to no color class");
    }
    if (partition && membership[j] > 1) {
      throw InputError("colors: client " + std::to_string(j) +
                       " belongs to several color classes; facility location "
                       "needs a partition");
    }
  }
}

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : gen_(seed) {}
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  int between(int lo, int hi) {
    return lo + static_cast<int>(gen_() % (static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 gen_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

FLInstance euclidean(int facilities, int clients, int r, double min_cost,
                     double max_cost, std::uint64_t seed) {
  if (facilities < 1 || clients < 1) throw InputError("need at least one facility and client");
  if (r < 1 || r > clients) throw InputError("r must lie in [1, clients]");
  Draws draws(seed);
  std::vector<Point> fp(facilities), cp(clients);
  FLInstance fl;
  for (auto& p : fp) {
    p = {draws.unit(), draws.unit()};
    fl.facility_cost.push_back(min_cost + (max_cost - min_cost) * draws.unit());
  }
  for (auto& p : cp) p = {draws.unit(), draws.unit()};
  fl.num_clients = clients;
  fl.distance.assign(facilities, std::vector<double>(clients));
  for (int i = 0; i < facilities; ++i) {
    for (int j = 0; j < clients; ++j) fl.distance[i][j] = dist(fp[i], cp[j]);
  }
  fl.client_distance.assign(clients, std::vector<double>(clients));
  for (int j = 0; j < clients; ++j) {
    for (int j2 = 0; j2 < clients; ++j2) fl.client_distance[j][j2] = dist(cp[j], cp[j2]);
  }
  fl.colors.resize(r);
  for (int t = 0; t < r; ++t) {
    const int lo = t * clients / r;
    const int hi = (t + 1) * clients / r;
    for (int j = lo; j < hi; ++j) fl.colors[t].elements.push_back(j);
    fl.colors[t].requirement = draws.between(1, hi - lo);
  }
  return fl;
}

double total_fl_cost(const FLInstance& fl) {
  double total = 0.0;
  for (double f : fl.facility_cost) total += f;
  for (const auto& row : fl.distance) {
    for (double v : row) total += v;
  }
  return total;
}

double min_positive_fl_cost(const FLInstance& fl) {
  double best = std::numeric_limits<double>::infinity();
  for (double f : fl.facility_cost) {
    if (f > 0.0) best = std::min(best, f);
  }
  for (const auto& row : fl.distance) {
    for (double v : row) {
      if (v > 0.0) best = std::min(best, v);
    }
  }
  return std::isfinite(best) ? best : 0.0;
}

}  // namespace

void validate(const FLInstance& fl) { validate_space(fl, true); }

void validate(const MCCInstance& mcc) {
  validate_space(mcc.space, false);
  if (!std::isfinite(mcc.gamma) || mcc.gamma < 1.0) {
    throw InputError("gamma: must be a finite number >= 1");
  }
}

FLSolution evaluate_fl(const FLInstance& fl, std::vector<FacilityId> open) {
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  if (open.empty()) throw InputError("at least one facility must be open");
  for (FacilityId i : open) {
    if (i < 0 || i >= fl.num_facilities()) {
      throw InputError("facility id " + std::to_string(i) + " out of range");
    }
  }
  std::vector<FacilityId> nearest(fl.num_clients, open.front());
  for (ClientId j = 0; j < fl.num_clients; ++j) {
    for (FacilityId i : open) {
      if (fl.distance[i][j] < fl.distance[nearest[j]][j]) nearest[j] = i;
    }
  }
  std::vector<ClientId> served;
  for (const auto& color : fl.colors) {
    std::vector<ClientId> members = color.elements;
    std::stable_sort(members.begin(), members.end(), [&](ClientId a, ClientId b) {
      const double da = fl.distance[nearest[a]][a];
      const double db = fl.distance[nearest[b]][b];
      return da < db || (da == db && a < b);
    });
    members.resize(color.requirement);
    served.insert(served.end(), members.begin(), members.end());
  }
  std::sort(served.begin(), served.end());
  served.erase(std::unique(served.begin(), served.end()), served.end());

  FLSolution solution;
  solution.open = std::move(open);
  for (FacilityId i : solution.open) solution.cost += fl.facility_cost[i];
  for (ClientId j : served) {
    solution.assigned.push_back(nearest[j]);
    solution.cost += fl.distance[nearest[j]][j];
  }
  solution.served = std::move(served);
  return solution;
}

bool fl_feasible(const FLInstance& fl, const FLSolution& solution) {
  if (solution.open.empty()) return false;
  if (solution.assigned.size() != solution.served.size()) return false;
  for (FacilityId i : solution.assigned) {
    if (!std::binary_search(solution.open.begin(), solution.open.end(), i)) return false;
  }
  for (const auto& color : fl.colors) {
    int count = 0;
    for (ClientId j : color.elements) {
      count += std::binary_search(solution.served.begin(), solution.served.end(), j) ? 1 : 0;
    }
    if (count < color.requirement) return false;
  }
  return true;
}

FLSolution exact_fl(const FLInstance& fl) {
  const int nf = fl.num_facilities();
  if (nf > 16) throw InputError("exact facility location supports at most 16 facilities");
  FLSolution best;
  bool found = false;
  for (std::uint32_t mask = 1; mask < (1U << nf); ++mask) {
    std::vector<FacilityId> open;
    for (int i = 0; i < nf; ++i) {
      if ((mask >> i) & 1U) open.push_back(i);
    }
    FLSolution candidate = evaluate_fl(fl, std::move(open));
    if (!found || candidate.cost < best.cost - 1e-12) {
      best = std::move(candidate);
      found = true;
    }
  }
  return best;
}

FLLayout layout_of(const FLInstance& fl) {
  return FLLayout{fl.num_facilities(), fl.num_clients};
}

LinearProgram build_fl_lp(const FLInstance& fl) {
  const FLLayout at = layout_of(fl);
  LinearProgram lp;
  for (FacilityId i = 0; i < at.facilities; ++i) {
    lp.add_variable(0.0, 1.0, fl.facility_cost[i], "x" + std::to_string(i));
  }
  for (FacilityId i = 0; i < at.facilities; ++i) {
    for (ClientId j = 0; j < at.clients; ++j) {
      lp.add_variable(0.0, 1.0, fl.distance[i][j],
                      "y" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  for (ClientId j = 0; j < at.clients; ++j) {
    lp.add_variable(0.0, 1.0, 0.0, "z" + std::to_string(j));
  }
  for (ClientId j = 0; j < at.clients; ++j) {
    LpRow row;
    for (FacilityId i = 0; i < at.facilities; ++i) row.terms.push_back({at.y(i, j), 1.0});
    row.terms.push_back({at.z(j), -1.0});
    row.sense = RowSense::kGreaterEqual;
    row.label = "connect[j=" + std::to_string(j) + "]";
    lp.add_row(std::move(row));
  }
  for (ColorId t = 0; t < fl.num_colors(); ++t) {
    LpRow row;
    for (ClientId j : fl.colors[t].elements) row.terms.push_back({at.z(j), 1.0});
    row.sense = RowSense::kGreaterEqual;
    row.rhs = fl.colors[t].requirement;
    row.label = "color[t=" + std::to_string(t) + "]";
    lp.add_row(std::move(row));
  }
  for (FacilityId i = 0; i < at.facilities; ++i) {
    for (ClientId j = 0; j < at.clients; ++j) {
      LpRow row;
      row.terms = {{at.y(i, j), 1.0}, {at.x(i), -1.0}};
      row.sense = RowSense::kLessEqual;
      row.label = "open[i=" + std::to_string(i) + ",j=" + std::to_string(j) + "]";
      lp.add_row(std::move(row));
    }
  }
  return lp;
}

FLFractional to_fl_fractional(const FLInstance& fl, std::span<const double> values) {
  const FLLayout at = layout_of(fl);
  FLFractional frac;
  frac.x.resize(at.facilities);
  frac.y.assign(at.facilities, std::vector<double>(at.clients));
  frac.z.resize(at.clients);
  for (FacilityId i = 0; i < at.facilities; ++i) {
    frac.x[i] = values[at.x(i)];
    for (ClientId j = 0; j < at.clients; ++j) frac.y[i][j] = values[at.y(i, j)];
  }
  for (ClientId j = 0; j < at.clients; ++j) frac.z[j] = values[at.z(j)];
  return frac;
}

std::vector<ClientId> heavy_clients(const FLInstance& fl, const FLFractional& frac,
                                    double alpha) {
  const double threshold = heavy_threshold(alpha) - kFeasibilityTol;
  std::vector<ClientId> heavy;
  for (ClientId j = 0; j < fl.num_clients; ++j) {
    double total = 0.0;
    for (FacilityId i = 0; i < fl.num_facilities(); ++i) total += frac.y[i][j];
    if (total >= threshold) heavy.push_back(j);
  }
  return heavy;
}

int residual_requirement(const FLInstance& fl, std::span<const ClientId> heavy,
                         ColorId t) {
  int in_heavy = 0;
  for (ClientId j : fl.colors[t].elements) {
    in_heavy += std::binary_search(heavy.begin(), heavy.end(), j) ? 1 : 0;
  }
  return fl.colors[t].requirement - in_heavy;
}

namespace {

std::vector<ClientId> light_members(const FLInstance& fl,
                                    std::span<const ClientId> heavy, ColorId t) {
  std::vector<ClientId> light;
  for (ClientId j : fl.colors[t].elements) {
    if (!std::binary_search(heavy.begin(), heavy.end(), j)) light.push_back(j);
  }
  return light;
}

}  // namespace

int add_fl_kc_row(LinearProgram& lp, const FLInstance& fl,
                  std::span<const ClientId> heavy, ColorId t) {
  const int k = residual_requirement(fl, heavy, t);
  if (k <= 0) {
    throw ContractError("add_fl_kc_row: color " + std::to_string(t) +
                        " has no residual requirement");
  }
  const FLLayout at = layout_of(fl);
  const auto light = light_members(fl, heavy, t);
  const std::string tag = "[t=" + std::to_string(t) + ",|H|=" +
                          std::to_string(heavy.size()) + "]";
  LpRow sum;
  for (FacilityId i = 0; i < at.facilities; ++i) {
    const int u = lp.add_variable(0.0, k, 0.0, "u" + tag + std::to_string(i));
    LpRow by_open;
    by_open.terms = {{u, 1.0}, {at.x(i), -static_cast<double>(k)}};
    by_open.sense = RowSense::kLessEqual;
    by_open.label = "kc_open" + tag;
    lp.add_row(std::move(by_open));
    LpRow by_flow;
    by_flow.terms.push_back({u, 1.0});
    for (ClientId j : light) by_flow.terms.push_back({at.y(i, j), -1.0});
    by_flow.sense = RowSense::kLessEqual;
    by_flow.label = "kc_flow" + tag;
    lp.add_row(std::move(by_flow));
    sum.terms.push_back({u, 1.0});
  }
  sum.sense = RowSense::kGreaterEqual;
  sum.rhs = k;
  sum.label = "kc" + tag;
  return lp.add_row(std::move(sum));
}

double fl_kc_lhs(const FLInstance& fl, const FLFractional& frac,
                 std::span<const ClientId> heavy, ColorId t) {
  const int k = residual_requirement(fl, heavy, t);
  const auto light = light_members(fl, heavy, t);
  double lhs = 0.0;
  for (FacilityId i = 0; i < fl.num_facilities(); ++i) {
    double flow = 0.0;
    for (ClientId j : light) flow += frac.y[i][j];
    lhs += std::min(k * frac.x[i], flow);
  }
  return lhs;
}

std::vector<SplitFacility> split_facilities(const FLInstance& fl,
                                            const FLFractional& frac,
                                            std::span<const ClientId> heavy,
                                            double alpha) {
  const double threshold = heavy_threshold(alpha);
  std::vector<std::uint8_t> is_heavy(fl.num_clients, 0);
  for (ClientId j : heavy) is_heavy[j] = 1;

  std::vector<SplitFacility> copies;
  for (FacilityId i = 0; i < fl.num_facilities(); ++i) {
    const double xi = frac.x[i];
    if (xi <= kPositive) continue;
    std::vector<double> flow(fl.num_clients, 0.0);
    std::vector<double> values{xi};
    for (ClientId j = 0; j < fl.num_clients; ++j) {
      if (is_heavy[j]) continue;
      flow[j] = std::min(frac.y[i][j], xi);
      if (flow[j] > kPositive) values.push_back(flow[j]);
    }
    std::sort(values.begin(), values.end());
    // Breakpoints closer than kPositive collapse into one group [lo, hi].
    std::vector<std::pair<double, double>> groups;
    for (double v : values) {
      if (!groups.empty() && v - groups.back().first <= kPositive) {
        groups.back().second = v;
      } else {
        groups.emplace_back(v, v);
      }
    }
    double prev = 0.0;
    for (const auto& [lo, hi] : groups) {
      const double size = hi - prev;
      prev = hi;
      if (size <= 0.0) continue;
      std::vector<ClientId> served;
      for (ClientId j = 0; j < fl.num_clients; ++j) {
        if (!is_heavy[j] && flow[j] > kPositive && flow[j] >= lo) served.push_back(j);
      }
      int pieces = 1;
      if (size >= threshold) {
        pieces = static_cast<int>(std::floor(size * 6.0 * alpha)) + 1;
        while (size / pieces >= threshold) ++pieces;
      }
      for (int p = 0; p < pieces; ++p) {
        copies.push_back(SplitFacility{i, size / pieces, served});
      }
    }
  }
  return copies;
}

std::optional<FLReduction> fl_reduce(const FLInstance& fl,
                                     std::span<const SplitFacility> copies,
                                     std::span<const ClientId> heavy) {
  std::vector<int> element_of(fl.num_clients, -1);
  std::vector<ClientId> client_of_element;
  std::vector<ColorId> active;
  for (ColorId t = 0; t < fl.num_colors(); ++t) {
    if (residual_requirement(fl, heavy, t) > 0) active.push_back(t);
  }
  if (active.empty()) return std::nullopt;
  std::vector<std::uint8_t> wanted(fl.num_clients, 0);
  for (ColorId t : active) {
    for (ClientId j : light_members(fl, heavy, t)) wanted[j] = 1;
  }
  for (ClientId j = 0; j < fl.num_clients; ++j) {
    if (wanted[j]) {
      element_of[j] = static_cast<int>(client_of_element.size());
      client_of_element.push_back(j);
    }
  }

  std::vector<WeightedSet> sets;
  std::vector<double> x;
  for (const auto& copy : copies) {
    WeightedSet s;
    s.weight = fl.facility_cost[copy.facility];
    for (ClientId j : copy.clients) {
      if (element_of[j] < 0) continue;
      s.elements.push_back(element_of[j]);
      s.weight += fl.distance[copy.facility][j];
    }
    sets.push_back(std::move(s));
    x.push_back(copy.x);
  }
  std::vector<ColorClass> colors;
  for (ColorId t : active) {
    ColorClass c;
    for (ClientId j : light_members(fl, heavy, t)) c.elements.push_back(element_of[j]);
    c.requirement = residual_requirement(fl, heavy, t);
    colors.push_back(std::move(c));
  }
  const int n = static_cast<int>(client_of_element.size());
  return FLReduction{Instance(n, std::move(sets), std::move(colors)), std::move(x),
                     std::move(client_of_element), std::move(active)};
}

std::vector<FacilityId> round_heavy_clients(const FLInstance& fl,
                                            const FLFractional& frac,
                                            std::span<const ClientId> heavy,
                                            double alpha) {
  const int nf = fl.num_facilities();
  const auto scaled = scale_solution(frac.x, alpha);
  std::vector<std::uint8_t> opened(nf, 0);
  for (FacilityId i = 0; i < nf; ++i) opened[i] = scaled[i] >= 0.5 ? 1 : 0;

  std::vector<std::uint8_t> used(nf, 0);
  std::vector<ClientId> unserved;
  for (ClientId j : heavy) {
    FacilityId best = -1;
    for (FacilityId i = 0; i < nf; ++i) {
      if (!opened[i] || frac.y[i][j] <= kPositive) continue;
      if (best < 0 || fl.distance[i][j] < fl.distance[best][j]) best = i;
    }
    if (best >= 0) {
      used[best] = 1;
    } else {
      unserved.push_back(j);
    }
  }

  // Greedy stars: facility plus its nearest unserved clients, cheapest per client.
  while (!unserved.empty()) {
    FacilityId best = -1;
    std::size_t best_count = 0;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (FacilityId i = 0; i < nf; ++i) {
      std::vector<double> ds;
      for (ClientId j : unserved) ds.push_back(fl.distance[i][j]);
      std::sort(ds.begin(), ds.end());
      double cost = used[i] ? 0.0 : fl.facility_cost[i];
      for (std::size_t k = 0; k < ds.size(); ++k) {
        cost += ds[k];
        const double ratio = cost / static_cast<double>(k + 1);
        if (ratio < best_ratio) {
          best_ratio = ratio;
          best = i;
          best_count = k + 1;
        }
      }
    }
    used[best] = 1;
    std::stable_sort(unserved.begin(), unserved.end(), [&](ClientId a, ClientId b) {
      return fl.distance[best][a] < fl.distance[best][b];
    });
    unserved.erase(unserved.begin(), unserved.begin() + static_cast<long>(best_count));
  }

  std::vector<FacilityId> open;
  for (FacilityId i = 0; i < nf; ++i) {
    if (used[i]) open.push_back(i);
  }
  return open;
}

FLSearchResult find_fl_solution(const FLInstance& fl, double alpha,
                                double min_delta, int max_cuts) {
  if (!(alpha > 1.0)) throw InputError("alpha must exceed 1");
  const FLLayout at = layout_of(fl);
  FLSearchResult result;
  LinearProgram lp = build_fl_lp(fl);
  for (ColorId t = 0; t < fl.num_colors(); ++t) {
    add_fl_kc_row(lp, fl, {}, t);
    ++result.root_cuts;
  }
  const auto root = solve_lp(lp);
  if (!root.optimal()) throw SolverError("facility LP infeasible; instance violates its invariants");
  result.root_value = root.objective;

  LpRow budget;
  for (FacilityId i = 0; i < at.facilities; ++i) {
    budget.terms.push_back({at.x(i), fl.facility_cost[i]});
    for (ClientId j = 0; j < at.clients; ++j) {
      budget.terms.push_back({at.y(i, j), fl.distance[i][j]});
    }
  }
  budget.sense = RowSense::kLessEqual;
  budget.label = "budget";
  const int budget_row = lp.add_row(std::move(budget));

  const double total = total_fl_cost(fl);
  const double floor_step = min_positive_fl_cost(fl);
  if (max_cuts <= 0) {
    const double ratio = floor_step > 0.0 ? total / floor_step : 0.0;
    const int logs = static_cast<int>(std::ceil(std::log2(ratio + 2.0)));
    max_cuts = 50 * fl.num_colors() * std::max(1, logs);
  }
  double delta = std::min(total, std::max(root.objective, min_delta));

  std::set<std::pair<std::vector<ClientId>, ColorId>> seen;
  while (true) {
    lp.set_rhs(budget_row, delta);
    while (true) {
      const auto outcome = solve_lp(lp);
      if (!outcome.optimal()) break;
      FLFractional frac = to_fl_fractional(fl, outcome.values);
      auto heavy = heavy_clients(fl, frac, alpha);
      std::optional<ColorId> violated;
      for (ColorId t = 0; t < fl.num_colors() && !violated; ++t) {
        const int k = residual_requirement(fl, heavy, t);
        if (k > 0 && fl_kc_lhs(fl, frac, heavy, t) < k - kFeasibilityTol) violated = t;
      }
      if (!violated) {
        result.frac = std::move(frac);
        result.heavy = std::move(heavy);
        result.delta = delta;
        result.lp_value = outcome.objective;
        result.lp = std::move(lp);
        return result;
      }
      if (result.separated_cuts >= max_cuts) {
        throw SolverError("find_fl_solution: cut limit reached after " +
                          std::to_string(result.separated_cuts) + " cuts");
      }
      if (!seen.emplace(heavy, *violated).second) {
        throw SolverError("find_fl_solution: repeated cut for color " +
                          std::to_string(*violated) + " after " +
                          std::to_string(result.separated_cuts) + " cuts");
      }
      add_fl_kc_row(lp, fl, heavy, *violated);
      ++result.separated_cuts;
    }
    if (delta >= total) {
      throw SolverError("find_fl_solution: LP infeasible at the total cost");
    }
    delta = std::min(total, std::max(2.0 * delta, floor_step));
  }
}

FLSolveResult solve_fl(const FLInstance& fl, const RoundingConfig& config) {
  validate(fl);
  validate(config);
  double min_delta = 0.0;
  RoundingTrace trace;
  for (int attempt = 0; attempt < 2; ++attempt) {
    FLSolveResult result;
    result.search = find_fl_solution(fl, config.alpha, min_delta);
    trace.deltas.push_back(result.search.delta);
    const auto& frac = result.search.frac;
    const auto& heavy = result.search.heavy;
    result.heavy_open = round_heavy_clients(fl, frac, heavy, config.alpha);
    result.copies = split_facilities(fl, frac, heavy, config.alpha);
    std::vector<FacilityId> open = result.heavy_open;

    bool rounded = true;
    if (auto reduced = fl_reduce(fl, result.copies, heavy)) {
      // Copies serving none of the remaining clients are never worth sampling.
      std::vector<double> x = reduced->x;
      for (SetId s = 0; s < reduced->instance.num_sets(); ++s) {
        if (reduced->instance.set(s).elements.empty()) x[s] = 0.0;
      }
      Cover cover;
      rounded = round_solution(reduced->instance, x, {}, {}, result.search.delta,
                               config, attempt * config.max_restarts, trace, cover);
      if (rounded) {
        result.light_sets = cover.chosen;
        for (SetId s : cover.chosen) open.push_back(result.copies[s].facility);
      }
    }
    if (rounded) {
      if (open.empty()) {
        // Nothing was needed; open the single facility that serves cheapest.
        FLSolution best;
        for (FacilityId i = 0; i < fl.num_facilities(); ++i) {
          FLSolution candidate = evaluate_fl(fl, {i});
          if (i == 0 || candidate.cost < best.cost) best = std::move(candidate);
        }
        open = best.open;
      }
      result.solution = evaluate_fl(fl, std::move(open));
      if (!fl_feasible(fl, result.solution)) {
        throw SolverError("solve_fl: produced an infeasible solution");
      }
      result.trace = std::move(trace);
      return result;
    }
    log::info("facility rounding rejected every restart at delta=" +
              std::to_string(result.search.delta));
    min_delta = 2.0 * result.search.delta;
  }
  throw RoundingFailure("solve_fl: every restart was rejected", std::move(trace));
}

std::vector<double> relevant_radii(const MCCInstance& mcc, FacilityId i) {
  std::vector<double> radii = mcc.space.distance.at(i);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

MCCReduction mcc_reduce(const MCCInstance& mcc) {
  const FLInstance& s = mcc.space;
  std::vector<WeightedSet> sets;
  std::vector<Ball> balls;
  for (FacilityId i = 0; i < s.num_facilities(); ++i) {
    for (double radius : relevant_radii(mcc, i)) {
      WeightedSet ball;
      ball.weight = s.facility_cost[i] + std::pow(radius, mcc.gamma);
      for (ClientId j = 0; j < s.num_clients; ++j) {
        if (s.distance[i][j] <= radius) ball.elements.push_back(j);
      }
      sets.push_back(std::move(ball));
      balls.push_back({i, radius});
    }
  }
  return MCCReduction{Instance(s.num_clients, std::move(sets), s.colors),
                      std::move(balls)};
}

std::vector<SetId> prune_concentric(const MCCReduction& reduction,
                                    std::span<const SetId> chosen) {
  std::vector<SetId> keep;
  for (SetId id : chosen) {
    const Ball& ball = reduction.balls.at(id);
    auto same = std::find_if(keep.begin(), keep.end(), [&](SetId k) {
      return reduction.balls[k].facility == ball.facility;
    });
    if (same == keep.end()) {
      keep.push_back(id);
    } else if (reduction.balls[*same].radius < ball.radius) {
      *same = id;
    }
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

MCCSolution evaluate_mcc(const MCCInstance& mcc, std::vector<Ball> balls) {
  const FLInstance& s = mcc.space;
  MCCSolution solution;
  std::vector<std::uint8_t> covered(s.num_clients, 0);
  for (const Ball& b : balls) {
    if (b.facility < 0 || b.facility >= s.num_facilities()) {
      throw InputError("ball facility id " + std::to_string(b.facility) + " out of range");
    }
    solution.cost += s.facility_cost[b.facility] + std::pow(b.radius, mcc.gamma);
    for (ClientId j = 0; j < s.num_clients; ++j) {
      if (s.distance[b.facility][j] <= b.radius) covered[j] = 1;
    }
  }
  solution.feasible = true;
  for (const auto& color : s.colors) {
    int count = 0;
    for (ClientId j : color.elements) count += covered[j];
    solution.covered_per_color.push_back(count);
    if (count < color.requirement) solution.feasible = false;
  }
  solution.balls = std::move(balls);
  return solution;
}

MCCSolution exact_mcc(const MCCInstance& mcc) {
  const int nf = mcc.space.num_facilities();
  std::vector<std::vector<double>> radii(nf);
  double combos = 1.0;
  for (FacilityId i = 0; i < nf; ++i) {
    radii[i] = relevant_radii(mcc, i);
    combos *= static_cast<double>(radii[i].size() + 1);
  }
  if (combos > 4e6) throw InputError("exact covering: search space too large");

  // choice[i] = -1 leaves facility i unused, otherwise indexes radii[i].
  std::vector<int> choice(nf, -1);
  MCCSolution best;
  bool found = false;
  while (true) {
    std::vector<Ball> balls;
    for (FacilityId i = 0; i < nf; ++i) {
      if (choice[i] >= 0) balls.push_back({i, radii[i][choice[i]]});
    }
    MCCSolution candidate = evaluate_mcc(mcc, std::move(balls));
    if (candidate.feasible && (!found || candidate.cost < best.cost - 1e-12)) {
      best = std::move(candidate);
      found = true;
    }
    int i = 0;
    while (i < nf && ++choice[i] == static_cast<int>(radii[i].size())) {
      choice[i] = -1;
      ++i;
    }
    if (i == nf) break;
  }
  if (!found) throw SolverError("exact covering: no feasible ball selection");
  return best;
}

MCCSolveResult solve_mcc(const MCCInstance& mcc, const RoundingConfig& config) {
  validate(mcc);
  const MCCReduction reduction = mcc_reduce(mcc);
  MCCSolveResult result;
  result.partition = solve(reduction.instance, config);
  result.pruned = prune_concentric(reduction, result.partition.cover.chosen);
  std::vector<Ball> balls;
  for (SetId id : result.pruned) balls.push_back(reduction.balls[id]);
  result.solution = evaluate_mcc(mcc, std::move(balls));
  if (!result.solution.feasible) {
    throw SolverError("solve_mcc: pruned selection is infeasible");
  }
  return result;
}

FLInstance random_fl(int facilities, int clients, int r, std::uint64_t seed) {
  return euclidean(facilities, clients, r, 0.2, 1.2, seed);
}

MCCInstance random_mcc(int facilities, int clients, int r, double gamma,
                       std::uint64_t seed) {
  return MCCInstance{euclidean(facilities, clients, r, 0.0, 0.5, seed), gamma};
}

FLInstance fl_gap_instance(int s) {
  if (s < 1) throw InputError("fl gap instance needs s >= 1");
  FLInstance fl;
  fl.num_clients = s * s;
  fl.facility_cost.assign(s, 1.0);
  auto position = [s](int group) { return static_cast<double>(group) * s; };
  fl.distance.assign(s, std::vector<double>(fl.num_clients));
  fl.client_distance.assign(fl.num_clients, std::vector<double>(fl.num_clients));
  for (int i = 0; i < s; ++i) {
    for (ClientId j = 0; j < fl.num_clients; ++j) {
      fl.distance[i][j] = std::abs(position(i) - position(j / s));
    }
  }
  for (ClientId j = 0; j < fl.num_clients; ++j) {
    for (ClientId j2 = 0; j2 < fl.num_clients; ++j2) {
      fl.client_distance[j][j2] = std::abs(position(j / s) - position(j2 / s));
    }
  }
  fl.colors.resize(s);
  for (int g = 0; g < s; ++g) {
    for (int k = 0; k < s; ++k) fl.colors[g].elements.push_back(g * s + k);
    fl.colors[g].requirement = 1;
  }
  return fl;
}

}  // namespace pcover
