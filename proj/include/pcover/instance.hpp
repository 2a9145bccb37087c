#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pcover {

using ElementId = int;
using SetId = int;
using ColorId = int;

struct WeightedSet {
  double weight = 1.0;
  std::vector<ElementId> elements;
};

struct ColorClass {
  std::vector<ElementId> elements;
  int requirement = 1;
};

// A Partition Set Cover instance: a weighted set system over elements 0..n-1
// plus color classes, each demanding a minimum number of covered elements.
// Color classes may overlap but must jointly cover every element.
//
// Element lists are normalized (sorted, deduplicated) on construction and all
// invariants are checked; violations throw InputError naming the field.
class Instance {
 public:
  Instance(int num_elements, std::vector<WeightedSet> sets,
           std::vector<ColorClass> colors);

  int num_elements() const { return num_elements_; }
  int num_sets() const { return static_cast<int>(sets_.size()); }
  int num_colors() const { return static_cast<int>(colors_.size()); }

  const std::vector<WeightedSet>& sets() const { return sets_; }
  const std::vector<ColorClass>& colors() const { return colors_; }
  const WeightedSet& set(SetId i) const { return sets_[i]; }
  const ColorClass& color(ColorId t) const { return colors_[t]; }
  double weight(SetId i) const { return sets_[i].weight; }

  // Sets containing element e, ascending.
  std::span<const SetId> sets_containing(ElementId e) const {
    return sets_of_element_[e];
  }
  // Colors containing element e, ascending.
  std::span<const ColorId> colors_containing(ElementId e) const {
    return colors_of_element_[e];
  }

  double total_weight() const;
  // Smallest strictly positive set weight, or 0 if there is none.
  double min_positive_weight() const;
  // Largest number of sets sharing one element.
  int max_frequency() const;

 private:
  int num_elements_;
  std::vector<WeightedSet> sets_;
  std::vector<ColorClass> colors_;
  std::vector<std::vector<SetId>> sets_of_element_;
  std::vector<std::vector<ColorId>> colors_of_element_;
};

// A chosen sub-collection; indices are kept sorted and unique.
struct Cover {
  std::vector<SetId> chosen;

  Cover() = default;
  explicit Cover(std::vector<SetId> ids);

  bool contains(SetId i) const;
  std::size_t size() const { return chosen.size(); }
};

struct CoverageReport {
  std::vector<int> covered_per_color;
  std::vector<int> deficit_per_color;
  bool feasible = false;
  double total_weight = 0.0;
};

CoverageReport verify_cover(const Instance& instance, const Cover& cover);

// Coverage left over after committing to a base collection A.
struct ResidualState {
  std::vector<SetId> base;
  std::vector<std::vector<ElementId>> covered_per_color;
  std::vector<int> residual_per_color;
  // Indicator of (union A) over all elements.
  std::vector<std::uint8_t> covered;

  bool in_base(SetId i) const;
  bool satisfied(ColorId t) const { return residual_per_color[t] == 0; }
  bool all_satisfied() const;
};

ResidualState residual(const Instance& instance, std::span<const SetId> base);

// Number of still-uncovered elements of color t that set i would add.
// Throws ContractError when i already belongs to the base.
int degree(const Instance& instance, const ResidualState& state, SetId i,
           ColorId t);

// The projection of the set system onto a subset Y of elements. Elements are
// renumbered 0..|Y|-1 in ascending original order; all m sets are kept so
// local and original set ids coincide.
struct SetSystem {
  int num_elements = 0;
  std::vector<WeightedSet> sets;
  std::vector<ElementId> original_element;
};

SetSystem project(const Instance& instance, std::span<const ElementId> subset);

// The whole instance viewed as a plain set system.
SetSystem as_set_system(const Instance& instance);

double cover_weight(const Instance& instance, std::span<const SetId> ids);

}  // namespace pcover
