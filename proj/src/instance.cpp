#include "pcover/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pcover/error.hpp"

namespace pcover {
namespace {

void normalize(std::vector<int>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

void check_elements(const std::vector<ElementId>& elements, int n,
                    const std::string& field) {
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const ElementId e = elements[k];
    if (e < 0 || e >= n) {
      throw InputError(field + ".elements[" + std::to_string(k) +
                       "]: element id " + std::to_string(e) +
                       " out of range [0, " + std::to_string(n) + ")");
    }
  }
}

}  // namespace

Instance::Instance(int num_elements, std::vector<WeightedSet> sets,
                   std::vector<ColorClass> colors)
    : num_elements_(num_elements),
      sets_(std::move(sets)),
      colors_(std::move(colors)) {
  if (num_elements_ < 0) {
    throw InputError("n: element count must be nonnegative, got " +
                     std::to_string(num_elements_));
  }
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    const std::string field = "sets[" + std::to_string(i) + "]";
    check_elements(sets_[i].elements, num_elements_, field);
    if (!(sets_[i].weight >= 0.0) || !std::isfinite(sets_[i].weight)) {
      throw InputError(field + ".weight: must be a finite nonnegative number");
    }
    normalize(sets_[i].elements);
  }
  for (std::size_t t = 0; t < colors_.size(); ++t) {
    const std::string field = "colors[" + std::to_string(t) + "]";
    check_elements(colors_[t].elements, num_elements_, field);
    normalize(colors_[t].elements);
    if (colors_[t].elements.empty()) {
      throw InputError(field + ".elements: color class must be non-empty");
    }
    const int size = static_cast<int>(colors_[t].elements.size());
    if (colors_[t].requirement < 1 || colors_[t].requirement > size) {
      throw InputError(field + ".requirement: " +
                       std::to_string(colors_[t].requirement) +
                       " outside [1, " + std::to_string(size) + "]");
    }
  }

  sets_of_element_.assign(num_elements_, {});
  colors_of_element_.assign(num_elements_, {});
  for (SetId i = 0; i < num_sets(); ++i) {
    for (ElementId e : sets_[i].elements) sets_of_element_[e].push_back(i);
  }
  for (ColorId t = 0; t < num_colors(); ++t) {
    for (ElementId e : colors_[t].elements) colors_of_element_[e].push_back(t);
  }
  for (ElementId e = 0; e < num_elements_; ++e) {
    if (colors_of_element_[e].empty()) {
      throw InputError("colors: element " + std::to_string(e) +
                       " belongs to no color class");
    }
  }
}

double Instance::total_weight() const {
  double total = 0.0;
  for (const auto& s : sets_) total += s.weight;
  return total;
}

double Instance::min_positive_weight() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : sets_) {
    if (s.weight > 0.0) best = std::min(best, s.weight);
  }
  return std::isinf(best) ? 0.0 : best;
}

int Instance::max_frequency() const {
  std::size_t f = 0;
  for (const auto& owners : sets_of_element_) f = std::max(f, owners.size());
  return static_cast<int>(f);
}

Cover::Cover(std::vector<SetId> ids) : chosen(std::move(ids)) {
  normalize(chosen);
}

bool Cover::contains(SetId i) const {
  return std::binary_search(chosen.begin(), chosen.end(), i);
}

namespace {

void check_set_ids(const Instance& instance, std::span<const SetId> ids) {
  for (SetId i : ids) {
    if (i < 0 || i >= instance.num_sets()) {
      throw InputError("cover: set index " + std::to_string(i) +
                       " out of range [0, " +
                       std::to_string(instance.num_sets()) + ")");
    }
  }
}

std::vector<std::uint8_t> union_indicator(const Instance& instance,
                                          std::span<const SetId> ids) {
  std::vector<std::uint8_t> covered(instance.num_elements(), 0);
  for (SetId i : ids) {
    for (ElementId e : instance.set(i).elements) covered[e] = 1;
  }
  return covered;
}

}  // namespace

double cover_weight(const Instance& instance, std::span<const SetId> ids) {
  check_set_ids(instance, ids);
  double w = 0.0;
  for (SetId i : ids) w += instance.weight(i);
  return w;
}

CoverageReport verify_cover(const Instance& instance, const Cover& cover) {
  check_set_ids(instance, cover.chosen);
  const auto covered = union_indicator(instance, cover.chosen);

  CoverageReport report;
  report.feasible = true;
  report.total_weight = cover_weight(instance, cover.chosen);
  for (const auto& color : instance.colors()) {
    int count = 0;
    for (ElementId e : color.elements) count += covered[e];
    report.covered_per_color.push_back(count);
    report.deficit_per_color.push_back(std::max(0, color.requirement - count));
    if (count < color.requirement) report.feasible = false;
  }
  return report;
}

bool ResidualState::in_base(SetId i) const {
  return std::binary_search(base.begin(), base.end(), i);
}

bool ResidualState::all_satisfied() const {
  return std::all_of(residual_per_color.begin(), residual_per_color.end(),
                     [](int k) { return k == 0; });
}

ResidualState residual(const Instance& instance, std::span<const SetId> base) {
  check_set_ids(instance, base);
  ResidualState state;
  state.base.assign(base.begin(), base.end());
  normalize(state.base);
  state.covered = union_indicator(instance, state.base);
  for (const auto& color : instance.colors()) {
    std::vector<ElementId> hit;
    for (ElementId e : color.elements) {
      if (state.covered[e]) hit.push_back(e);
    }
    state.residual_per_color.push_back(
        std::max(0, color.requirement - static_cast<int>(hit.size())));
    state.covered_per_color.push_back(std::move(hit));
  }
  return state;
}

int degree(const Instance& instance, const ResidualState& state, SetId i,
           ColorId t) {
  if (state.in_base(i)) {
    throw ContractError("degree: set " + std::to_string(i) +
                        " is part of the base collection");
  }
  const auto& set_elems = instance.set(i).elements;
  const auto& color_elems = instance.color(t).elements;
  int count = 0;
  auto a = set_elems.begin();
  auto b = color_elems.begin();
  while (a != set_elems.end() && b != color_elems.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      if (!state.covered[*a]) ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

SetSystem project(const Instance& instance, std::span<const ElementId> subset) {
  std::vector<ElementId> ys(subset.begin(), subset.end());
  normalize(ys);
  for (ElementId e : ys) {
    if (e < 0 || e >= instance.num_elements()) {
      throw InputError("project: element id " + std::to_string(e) +
                       " out of range");
    }
  }
  std::vector<int> local(instance.num_elements(), -1);
  for (std::size_t k = 0; k < ys.size(); ++k) local[ys[k]] = static_cast<int>(k);

  SetSystem system;
  system.num_elements = static_cast<int>(ys.size());
  system.original_element = std::move(ys);
  system.sets.reserve(instance.num_sets());
  for (const auto& s : instance.sets()) {
    WeightedSet projected{s.weight, {}};
    for (ElementId e : s.elements) {
      if (local[e] >= 0) projected.elements.push_back(local[e]);
    }
    system.sets.push_back(std::move(projected));
  }
  return system;
}

SetSystem as_set_system(const Instance& instance) {
  SetSystem system;
  system.num_elements = instance.num_elements();
  system.sets = instance.sets();
  system.original_element.resize(instance.num_elements());
  for (ElementId e = 0; e < instance.num_elements(); ++e) {
    system.original_element[e] = e;
  }
  return system;
}

}  // namespace pcover
