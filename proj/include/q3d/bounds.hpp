#pragma once

// Lower/upper sandwich for gamma(Q^3_n):
//   ceil(n^3 / (13n-12))  <=  gamma  <=  n * gamma(Q^2_n)
// plus gamma(Q^3_n) >= gamma(Q^2_n) via projection onto the xy-plane.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "q3d/board.hpp"
#include "q3d/solver.hpp"

namespace q3d::bounds {

inline std::int64_t volume_lower_bound(std::int64_t n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const std::int64_t cells = n * n * n;
  const std::int64_t reach = 13 * n - 12;
  return (cells + reach - 1) / reach;
}

// Solved gamma(Q^2_n) values, persisted as
// {"format":"q2d-cache-v1","values":{"<n>":gamma}}. Not synchronised.
class Gamma2Cache {
 public:
  static constexpr const char* kFormat = "q2d-cache-v1";

  std::optional<int> get(int n) const {
    auto it = values_.find(n);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void put(int n, int gamma) { values_[n] = gamma; }

  const std::map<int, int>& values() const noexcept { return values_; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["format"] = kFormat;
    auto& vals = j["values"] = nlohmann::ordered_json::object();
    for (const auto& [n, g] : values()) vals[std::to_string(n)] = g;
    return j;
  }

  static Gamma2Cache from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != kFormat) throw ParseError("$.format", "expected q2d-cache-v1");
    if (!j.contains("values") || !j["values"].is_object()) throw ParseError("$.values", "expected an object");
    Gamma2Cache c;
    for (const auto& [key, val] : j["values"].items()) {
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("$.values." + key, "key is not an integer");
      }
      if (n < 1 || !val.is_number_integer() || val.get<int>() < 1)
        throw ParseError("$.values." + key, "expected a positive integer");
      c.put(n, val.get<int>());
    }
    return c;
  }

  static Gamma2Cache load(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) return {};
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(p.string(), e.what());
    }
  }

  void save(const std::filesystem::path& p) const {
    std::ofstream out(p, std::ios::binary);
    out << to_json().dump(2) << '\n';
  }

 private:
  std::map<int, int> values_;
};

// Exact gamma(Q^2_n) from the 2D solver. Throws ResourceLimit with the best
// known 2D interval when the limits cut the search short.
inline int gamma2(int n, const solver::Limits& limits = {}, Gamma2Cache* cache = nullptr) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (cache)
    if (auto hit = cache->get(n)) return *hit;
  const auto res = solver::solve_exact(BoardSpec::square(n), limits, {.use_symmetry = false});
  if (res.status != solver::SolveStatus::Optimal)
    throw ResourceLimit("gamma(Q^2_" + std::to_string(n) + ") not resolved within limits", res.lower_bound, res.value);
  if (cache) cache->put(n, res.value);
  return res.value;
}

// Drops the z coordinate.
inline Placement project(const BoardSpec& spec, const Placement& s) {
  if (spec.dim() != 3) throw InvalidArgument("projection starts from a 3D board");
  s.require_on(spec);
  std::vector<Cell> cells;
  for (const auto& c : s) cells.push_back({c.x, c.y, 0});
  return Placement(std::move(cells));
}

// The same 2D placement in every layer z = 0..n-1.
inline Placement lift(int n, const Placement& layer) {
  layer.require_on(BoardSpec::square(n));
  std::vector<Cell> cells;
  for (int z = 0; z < n; ++z)
    for (const auto& c : layer) cells.push_back({c.x, c.y, z});
  return Placement(std::move(cells));
}

enum class Gamma2Source { Solved, Supplied, Unresolved };

inline std::string to_string(Gamma2Source s) {
  switch (s) {
    case Gamma2Source::Solved: return "solved";
    case Gamma2Source::Supplied: return "supplied";
    case Gamma2Source::Unresolved: return "unresolved";
  }
  return "?";
}

struct BoundsReport {
  int n = 0;
  std::int64_t volume_lb = 0;
  std::int64_t projection_lb = 0;  // gamma(Q^2_n), or its proved lower bound when unresolved
  std::int64_t lifting_ub = 0;     // n * gamma(Q^2_n), or n * best 2D placement when unresolved
  std::int64_t best_lb = 0;
  std::int64_t best_ub = 0;
  Gamma2Source gamma2_source = Gamma2Source::Solved;
};

// If the 2D solve hits its limits the report falls back to the volume bound
// below and n * (best 2D placement) above.
inline BoundsReport bounds_report(int n, const solver::Limits& limits = {}, Gamma2Cache* cache = nullptr) {
  BoundsReport r;
  r.n = n;
  r.volume_lb = volume_lower_bound(n);
  const bool cached = cache && cache->get(n).has_value();
  try {
    const int g2 = gamma2(n, limits, cache);
    r.projection_lb = g2;
    r.lifting_ub = static_cast<std::int64_t>(n) * g2;
    r.gamma2_source = cached ? Gamma2Source::Supplied : Gamma2Source::Solved;
  } catch (const ResourceLimit& e) {
    r.projection_lb = std::max<std::int64_t>(e.lower(), 1);
    r.lifting_ub = static_cast<std::int64_t>(n) * e.upper();
    r.gamma2_source = Gamma2Source::Unresolved;
  }
  r.best_lb = std::max(r.volume_lb, r.projection_lb);
  r.best_ub = r.lifting_ub;
  return r;
}

}  // namespace q3d::bounds
