#include "pcover/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

#include "pcover/error.hpp"

namespace pcover::io {
namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + "." + key + ": missing field");
  return *it;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) throw InputError(path + ": integer out of range");
  return static_cast<int>(v);
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path + ": expected a number");
  return j.get<double>();
}

std::vector<int> int_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array");
  std::vector<int> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(as_int(j[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::vector<std::vector<double>> matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) throw InputError(row_path + ": expected an array");
    std::vector<double> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      row.push_back(as_number(j[r][c], row_path + "[" + std::to_string(c) + "]"));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ColorClass> colors_from(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array");
  std::vector<ColorClass> colors;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string p = path + "[" + std::to_string(t) + "]";
    ColorClass c;
    c.elements = int_list(field(j[t], "elements", p), p + ".elements");
    c.requirement = as_int(field(j[t], "requirement", p), p + ".requirement");
    colors.push_back(std::move(c));
  }
  return colors;
}

Json colors_to(const std::vector<ColorClass>& colors) {
  Json out = Json::array();
  for (const auto& c : colors) {
    out.push_back({{"elements", c.elements}, {"requirement", c.requirement}});
  }
  return out;
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const Instance& instance) {
  Json sets = Json::array();
  for (const auto& s : instance.sets()) {
    sets.push_back({{"weight", s.weight}, {"elements", s.elements}});
  }
  return {{"n", instance.num_elements()},
          {"sets", sets},
          {"colors", colors_to(instance.colors())}};
}

Json to_json(const GeometricInstance& instance) {
  Json j = to_json(instance.instance);
  Json intervals = Json::array();
  for (const auto& iv : instance.geometry.set_intervals) {
    intervals.push_back({iv.lo, iv.hi});
  }
  j["geometry"] = {{"intervals", intervals},
                   {"points", instance.geometry.points},
                   {"point_colors", instance.geometry.point_colors}};
  return j;
}

Instance instance_from_json(const Json& j) {
  const int n = as_int(field(j, "n", "instance"), "n");
  const Json& raw_sets = field(j, "sets", "instance");
  if (!raw_sets.is_array()) throw InputError("sets: expected an array");
  std::vector<WeightedSet> sets;
  for (std::size_t i = 0; i < raw_sets.size(); ++i) {
    const std::string p = "sets[" + std::to_string(i) + "]";
    WeightedSet s;
    s.weight = as_number(field(raw_sets[i], "weight", p), p + ".weight");
    s.elements = int_list(field(raw_sets[i], "elements", p), p + ".elements");
    sets.push_back(std::move(s));
  }
  auto colors = colors_from(field(j, "colors", "instance"), "colors");
  return Instance(n, std::move(sets), std::move(colors));
}

std::optional<Geometry> geometry_from_json(const Json& j) {
  auto it = j.find("geometry");
  if (it == j.end()) return std::nullopt;
  Geometry g;
  for (const auto& row : matrix(field(*it, "intervals", "geometry"), "geometry.intervals")) {
    if (row.size() != 2) throw InputError("geometry.intervals: expected [lo, hi] pairs");
    g.set_intervals.push_back({row[0], row[1]});
  }
  const Json& points = field(*it, "points", "geometry");
  for (std::size_t k = 0; k < points.size(); ++k) {
    g.points.push_back(as_number(points[k], "geometry.points[" + std::to_string(k) + "]"));
  }
  g.point_colors = int_list(field(*it, "point_colors", "geometry"), "geometry.point_colors");
  return g;
}

Json to_json(const Cover& cover) { return {{"chosen", cover.chosen}}; }

Cover cover_from_json(const Json& j) {
  if (j.is_array()) return Cover(int_list(j, "cover"));
  return Cover(int_list(field(j, "chosen", "cover"), "cover.chosen"));
}

Json to_json(const CoverageReport& report) {
  return {{"covered_per_color", report.covered_per_color},
          {"deficit_per_color", report.deficit_per_color},
          {"feasible", report.feasible},
          {"total_weight", report.total_weight}};
}

Json to_json(const RoundingTrace& trace) {
  Json restarts = Json::array();
  for (const auto& rt : trace.restarts) {
    restarts.push_back({{"restart", rt.restart},
                        {"iterations", rt.iterations},
                        {"sampled", rt.sampled},
                        {"heavy_weight", rt.heavy_weight},
                        {"sampled_weight", rt.sampled_weight},
                        {"feasible", rt.feasible},
                        {"within_budget", rt.within_budget}});
  }
  return {{"iterations_per_restart", trace.iterations_per_restart},
          {"budget", trace.budget},
          {"deltas", trace.deltas},
          {"restarts", restarts}};
}

Json to_json(const OracleResult& result) {
  return {{"cover", to_json(result.cover)},
          {"weight", result.weight},
          {"nodes", result.nodes}};
}

Json to_json(const FLInstance& fl) {
  Json facilities = Json::array();
  for (double f : fl.facility_cost) facilities.push_back({{"cost", f}});
  Json distances = {{"facility_client", fl.distance}};
  if (!fl.client_distance.empty()) distances["client_client"] = fl.client_distance;
  return {{"facilities", facilities},
          {"clients", fl.num_clients},
          {"distances", distances},
          {"colors", colors_to(fl.colors)}};
}

FLInstance fl_from_json(const Json& j) {
  FLInstance fl;
  const Json& facilities = field(j, "facilities", "instance");
  if (!facilities.is_array()) throw InputError("facilities: expected an array");
  for (std::size_t i = 0; i < facilities.size(); ++i) {
    const std::string p = "facilities[" + std::to_string(i) + "]";
    fl.facility_cost.push_back(as_number(field(facilities[i], "cost", p), p + ".cost"));
  }
  fl.num_clients = as_int(field(j, "clients", "instance"), "clients");
  const Json& distances = field(j, "distances", "instance");
  fl.distance = matrix(field(distances, "facility_client", "distances"),
                       "distances.facility_client");
  if (distances.contains("client_client")) {
    fl.client_distance = matrix(distances["client_client"], "distances.client_client");
  }
  fl.colors = colors_from(field(j, "colors", "instance"), "colors");
  for (auto& c : fl.colors) std::sort(c.elements.begin(), c.elements.end());
  validate(fl);
  return fl;
}

Json to_json(const MCCInstance& mcc) {
  Json j = to_json(mcc.space);
  j["gamma"] = mcc.gamma;
  return j;
}

MCCInstance mcc_from_json(const Json& j) {
  MCCInstance mcc;
  const Json& facilities = field(j, "facilities", "instance");
  if (!facilities.is_array()) throw InputError("facilities: expected an array");
  for (std::size_t i = 0; i < facilities.size(); ++i) {
    const std::string p = "facilities[" + std::to_string(i) + "]";
    mcc.space.facility_cost.push_back(as_number(field(facilities[i], "cost", p), p + ".cost"));
  }
  mcc.space.num_clients = as_int(field(j, "clients", "instance"), "clients");
  const Json& distances = field(j, "distances", "instance");
  mcc.space.distance = matrix(field(distances, "facility_client", "distances"),
                              "distances.facility_client");
  if (distances.contains("client_client")) {
    mcc.space.client_distance = matrix(distances["client_client"], "distances.client_client");
  }
  mcc.space.colors = colors_from(field(j, "colors", "instance"), "colors");
  for (auto& c : mcc.space.colors) std::sort(c.elements.begin(), c.elements.end());
  mcc.gamma = as_number(field(j, "gamma", "instance"), "gamma");
  validate(mcc);
  return mcc;
}

Json to_json(const FLSolution& solution) {
  Json assignment = Json::array();
  for (std::size_t k = 0; k < solution.served.size(); ++k) {
    assignment.push_back({{"client", solution.served[k]},
                          {"facility", solution.assigned[k]}});
  }
  return {{"open", solution.open}, {"assignment", assignment}, {"cost", solution.cost}};
}

Json to_json(const MCCSolution& solution) {
  Json balls = Json::array();
  for (const auto& b : solution.balls) {
    balls.push_back({{"facility", b.facility}, {"radius", b.radius}});
  }
  return {{"balls", balls},
          {"cost", solution.cost},
          {"covered_per_color", solution.covered_per_color},
          {"feasible", solution.feasible}};
}

std::string digest(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pcover::io
