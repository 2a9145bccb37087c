#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcover/instance.hpp"
#include "pcover/lp.hpp"
#include "pcover/rounding.hpp"

namespace pcover {

using FacilityId = int;
using ClientId = int;

// Facilities and clients in a metric space. `distance[i][j]` is d(i, j) for
// facility i and client j; `client_distance` is optional (empty when absent).
struct FLInstance {
  std::vector<double> facility_cost;
  int num_clients = 0;
  std::vector<std::vector<double>> distance;
  std::vector<std::vector<double>> client_distance;
  std::vector<ColorClass> colors;  // over client ids

  int num_facilities() const { return static_cast<int>(facility_cost.size()); }
  int num_colors() const { return static_cast<int>(colors.size()); }
};

struct MCCInstance {
  FLInstance space;
  double gamma = 1.0;
};

inline constexpr double kMetricTol = 1e-9;

// Checks shapes, nonnegativity, the metric conditions that the given
// distances can witness, and color requirements. Facility location needs
// colors partitioning the clients; covering only needs them to cover the
// clients. Throws InputError naming the offending field.
void validate(const FLInstance& fl);
void validate(const MCCInstance& mcc);

struct FLSolution {
  std::vector<FacilityId> open;
  std::vector<ClientId> served;          // ascending
  std::vector<FacilityId> assigned;      // parallel to `served`
  double cost = 0.0;
};

// Opens `open` and serves, per color, the k_t clients closest to an open
// facility (ties by client id). Throws InputError if `open` is empty.
FLSolution evaluate_fl(const FLInstance& fl, std::vector<FacilityId> open);

// Feasible means at least one open facility and k_t served clients per color.
bool fl_feasible(const FLInstance& fl, const FLSolution& solution);

// Exhaustive search over nonempty facility subsets (at most 16 facilities).
FLSolution exact_fl(const FLInstance& fl);

// Variable layout of the facility LP: x_i, then y_ij row-major, then z_j.
struct FLLayout {
  int facilities = 0;
  int clients = 0;
  int x(FacilityId i) const { return i; }
  int y(FacilityId i, ClientId j) const { return facilities + i * clients + j; }
  int z(ClientId j) const { return facilities + facilities * clients + j; }
  int size() const { return facilities + facilities * clients + clients; }
};

FLLayout layout_of(const FLInstance& fl);

// x in [0,1], y_ij <= x_i, sum_i y_ij >= z_j, sum_{j in C_t} z_j >= k_t;
// minimize sum f_i x_i + sum d(i,j) y_ij.
LinearProgram build_fl_lp(const FLInstance& fl);

struct FLFractional {
  std::vector<double> x;                // per facility
  std::vector<std::vector<double>> y;   // [facility][client]
  std::vector<double> z;                // per client
};

FLFractional to_fl_fractional(const FLInstance& fl, std::span<const double> values);

// Clients with sum_i y_ij >= 1/(6 alpha) (with kFeasibilityTol slack).
std::vector<ClientId> heavy_clients(const FLInstance& fl, const FLFractional& frac,
                                    double alpha);

// k_t(H) = k_t - |C_t ∩ H|, possibly nonpositive.
int residual_requirement(const FLInstance& fl, std::span<const ClientId> heavy,
                         ColorId t);

// Appends the knapsack-cover constraint of color t relative to the heavy
// clients: one auxiliary u_i per facility with u_i <= k x_i,
// u_i <= sum_{j in C_t \ H} y_ij, and sum_i u_i >= k, where k = k_t(H).
// Throws ContractError when k <= 0. Returns the index of the sum row.
int add_fl_kc_row(LinearProgram& lp, const FLInstance& fl,
                  std::span<const ClientId> heavy, ColorId t);

// sum_i min(k x_i, sum_{j in C_t \ H} y_ij).
double fl_kc_lhs(const FLInstance& fl, const FLFractional& frac,
                 std::span<const ClientId> heavy, ColorId t);

struct SplitFacility {
  FacilityId facility = 0;
  double x = 0.0;
  std::vector<ClientId> clients;  // clients connected to this copy
};

// Splits each facility into co-located copies: breakpoints at the distinct
// positive y_ij over light clients plus x_i; client j is connected to the
// copies below y_ij. Copies with x >= 1/(6 alpha) are cut into equal pieces
// below the threshold.
std::vector<SplitFacility> split_facilities(const FLInstance& fl,
                                            const FLFractional& frac,
                                            std::span<const ClientId> heavy,
                                            double alpha);

struct FLReduction {
  Instance instance;
  std::vector<double> x;                  // per reduced set (copy)
  std::vector<ClientId> client_of_element;
  std::vector<ColorId> color_of_class;    // reduced color -> original color
};

// One set per copy holding its connected light clients of the colors with
// k_t(H) > 0, weighted f_i + sum of their distances; colors C_t \ H with
// requirement k_t(H). nullopt when the heavy clients already meet every color.
std::optional<FLReduction> fl_reduce(const FLInstance& fl,
                                     std::span<const SplitFacility> copies,
                                     std::span<const ClientId> heavy);

// Heavy-client rounding: open facilities with scaled x >= 1/2, send every
// heavy client to its nearest opened facility with positive y, and cover any
// remaining heavy client with greedy stars.
std::vector<FacilityId> round_heavy_clients(const FLInstance& fl,
                                            const FLFractional& frac,
                                            std::span<const ClientId> heavy,
                                            double alpha);

struct FLSearchResult {
  FLFractional frac;
  std::vector<ClientId> heavy;
  double delta = 0.0;
  double lp_value = 0.0;
  double root_value = 0.0;
  int root_cuts = 0;
  int separated_cuts = 0;
  LinearProgram lp;
};

// Guess-and-cut search on the facility LP, separating the knapsack-cover
// rows of the heavy-client set derived from each candidate solution.
FLSearchResult find_fl_solution(const FLInstance& fl, double alpha,
                                double min_delta = 0.0, int max_cuts = 0);

struct FLSolveResult {
  FLSolution solution;
  FLSearchResult search;
  std::vector<FacilityId> heavy_open;
  std::vector<SplitFacility> copies;
  std::vector<SetId> light_sets;   // chosen reduced sets
  RoundingTrace trace;
};

FLSolveResult solve_fl(const FLInstance& fl, const RoundingConfig& config);

// Distinct client distances from facility i, ascending.
std::vector<double> relevant_radii(const MCCInstance& mcc, FacilityId i);

struct Ball {
  FacilityId facility = 0;
  double radius = 0.0;
};

struct MCCReduction {
  Instance instance;
  std::vector<Ball> balls;  // per set
};

// One set per (facility, relevant radius) holding the clients within the
// radius, weighted f_i + radius^gamma; colors carried over.
MCCReduction mcc_reduce(const MCCInstance& mcc);

// Keeps only the largest selected ball of each facility.
std::vector<SetId> prune_concentric(const MCCReduction& reduction,
                                    std::span<const SetId> chosen);

struct MCCSolution {
  std::vector<Ball> balls;
  double cost = 0.0;
  std::vector<int> covered_per_color;
  bool feasible = false;
};

MCCSolution evaluate_mcc(const MCCInstance& mcc, std::vector<Ball> balls);

// Exhaustive search over one relevant radius (or none) per facility.
MCCSolution exact_mcc(const MCCInstance& mcc);

struct MCCSolveResult {
  MCCSolution solution;
  SolveResult partition;
  std::vector<SetId> pruned;
};

MCCSolveResult solve_mcc(const MCCInstance& mcc, const RoundingConfig& config);

// Generators. Points uniform in the unit square with Euclidean distances;
// colors are contiguous client blocks with requirements uniform in [1, |C_t|].
FLInstance random_fl(int facilities, int clients, int r, std::uint64_t seed);
MCCInstance random_mcc(int facilities, int clients, int r, double gamma,
                       std::uint64_t seed);

// s facilities of cost 1, each co-located with a private group of s clients
// forming one color with requirement 1; groups lie s apart on a line.
FLInstance fl_gap_instance(int s);

}  // namespace pcover
