#pragma once

// JSON file formats:
//   q3d-solution-v1     {"format", "dim", "n", "queens": [[x,y,z],...], "claims"?}
//   q3d-certificate-v1  {"format", ["dim" for 2D], "n", "k", "witness", "budget",
//                        "symmetry_used", "subproblems": [{"first_queen", "status", "nodes"}]}
// Writers use a fixed key order so files are byte-stable.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "q3d/board.hpp"
#include "q3d/certificate.hpp"

namespace q3d::io {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

inline constexpr const char* kSolutionFormat = "q3d-solution-v1";
inline constexpr const char* kCertificateFormat = "q3d-certificate-v1";

struct SolutionClaims {
  std::optional<int> size;
  std::optional<bool> dominating;
  std::optional<std::string> status;  // e.g. "optimal"
};

struct SolutionFile {
  int dim = 3;
  int n = 0;
  Placement queens;
  SolutionClaims claims;

  BoardSpec spec() const { return BoardSpec(dim, n); }
};

inline ordered_json cell_json(const Cell& c, int dim) {
  ordered_json a = ordered_json::array({c.x, c.y});
  if (dim == 3) a.push_back(c.z);
  return a;
}

inline ordered_json placement_json(const Placement& p, int dim) {
  ordered_json a = ordered_json::array();
  for (const auto& c : p) a.push_back(cell_json(c, dim));
  return a;
}

inline std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "." + key, "missing field");
  return *it;
}

inline int int_field(const json& j, const std::string& path, const char* key) {
  const auto& v = field(j, path, key);
  if (!v.is_number_integer()) throw ParseError(path + "." + key, "expected an integer");
  return v.get<int>();
}

inline Cell cell_from(const json& j, const std::string& path, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ParseError(path, "expected an array of " + std::to_string(dim) + " integers");
  Cell c;
  for (int k = 0; k < dim; ++k) {
    if (!j[static_cast<std::size_t>(k)].is_number_integer()) throw ParseError(path + "[" + std::to_string(k) + "]", "expected an integer");
    const int v = j[static_cast<std::size_t>(k)].get<int>();
    (k == 0 ? c.x : k == 1 ? c.y : c.z) = v;
  }
  return c;
}

inline Placement placement_from(const json& j, const std::string& path, const BoardSpec& spec) {
  if (!j.is_array()) throw ParseError(path, "expected an array of cells");
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const Cell c = cell_from(j[i], p, spec.dim());
    if (!spec.contains(c)) throw ParseError(p, "cell is off the " + std::to_string(spec.n()) + "-board");
    cells.push_back(c);
  }
  return Placement(std::move(cells));
}

inline BoardSpec spec_from(int dim, int n) {
  if (dim != 2 && dim != 3) throw ParseError("$.dim", "must be 2 or 3");
  if (n < 1) throw ParseError("$.n", "must be >= 1");
  return BoardSpec(dim, n);
}

inline void require_format(const json& j, const char* expected) {
  const auto& f = field(j, "$", "format");
  if (!f.is_string() || f.get<std::string>() != expected)
    throw ParseError("$.format", std::string("expected \"") + expected + "\"");
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
}

}  // namespace detail

inline ordered_json to_json(const SolutionFile& s) {
  ordered_json j;
  j["format"] = kSolutionFormat;
  j["dim"] = s.dim;
  j["n"] = s.n;
  j["queens"] = placement_json(s.queens, s.dim);
  ordered_json claims = ordered_json::object();
  if (s.claims.size) claims["size"] = *s.claims.size;
  if (s.claims.dominating) claims["dominating"] = *s.claims.dominating;
  if (s.claims.status) claims["status"] = *s.claims.status;
  if (!claims.empty()) j["claims"] = claims;
  return j;
}

inline SolutionFile solution_from_json(const json& j) {
  detail::require_format(j, kSolutionFormat);
  SolutionFile s;
  s.dim = j.contains("dim") ? detail::int_field(j, "$", "dim") : 3;
  s.n = detail::int_field(j, "$", "n");
  const auto spec = detail::spec_from(s.dim, s.n);
  s.queens = detail::placement_from(detail::field(j, "$", "queens"), "$.queens", spec);
  if (auto it = j.find("claims"); it != j.end()) {
    if (!it->is_object()) throw ParseError("$.claims", "expected an object");
    if (it->contains("size")) s.claims.size = detail::int_field(*it, "$.claims", "size");
    if (auto d = it->find("dominating"); d != it->end()) {
      if (!d->is_boolean()) throw ParseError("$.claims.dominating", "expected a boolean");
      s.claims.dominating = d->get<bool>();
    }
    if (auto st = it->find("status"); st != it->end()) {
      if (!st->is_string()) throw ParseError("$.claims.status", "expected a string");
      s.claims.status = st->get<std::string>();
    }
  }
  return s;
}

inline SolutionFile parse_solution(const std::string& text) { return solution_from_json(detail::parse_text(text)); }

inline ordered_json to_json(const OptimalityCertificate& c) {
  ordered_json j;
  j["format"] = kCertificateFormat;
  if (c.dim != 3) j["dim"] = c.dim;
  j["n"] = c.n;
  j["k"] = c.k;
  j["witness"] = placement_json(c.witness, c.dim);
  j["budget"] = c.budget;
  j["symmetry_used"] = c.symmetry_used;
  auto& subs = j["subproblems"] = ordered_json::array();
  for (const auto& sp : c.subproblems) {
    ordered_json s;
    s["first_queen"] = cell_json(sp.first_queen, c.dim);
    s["status"] = to_string(sp.status);
    s["nodes"] = sp.nodes;
    subs.push_back(std::move(s));
  }
  return j;
}

inline SubproblemStatus status_from(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  const auto s = j.get<std::string>();
  for (auto st : {SubproblemStatus::Infeasible, SubproblemStatus::Feasible, SubproblemStatus::Limit,
                  SubproblemStatus::Skipped})
    if (s == to_string(st)) return st;
  throw ParseError(path, "unknown status '" + s + "'");
}

inline OptimalityCertificate certificate_from_json(const json& j) {
  detail::require_format(j, kCertificateFormat);
  OptimalityCertificate c;
  c.dim = j.contains("dim") ? detail::int_field(j, "$", "dim") : 3;
  c.n = detail::int_field(j, "$", "n");
  const auto spec = detail::spec_from(c.dim, c.n);
  c.k = detail::int_field(j, "$", "k");
  c.witness = detail::placement_from(detail::field(j, "$", "witness"), "$.witness", spec);
  c.budget = detail::int_field(j, "$", "budget");
  const auto& su = detail::field(j, "$", "symmetry_used");
  if (!su.is_boolean()) throw ParseError("$.symmetry_used", "expected a boolean");
  c.symmetry_used = su.get<bool>();
  const auto& subs = detail::field(j, "$", "subproblems");
  if (!subs.is_array()) throw ParseError("$.subproblems", "expected an array");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string p = "$.subproblems[" + std::to_string(i) + "]";
    Subproblem sp;
    sp.first_queen = detail::cell_from(detail::field(subs[i], p, "first_queen"), p + ".first_queen", c.dim);
    sp.status = status_from(detail::field(subs[i], p, "status"), p + ".status");
    const auto& nodes = detail::field(subs[i], p, "nodes");
    if (!nodes.is_number_unsigned() && !(nodes.is_number_integer() && nodes.get<std::int64_t>() >= 0))
      throw ParseError(p + ".nodes", "expected a non-negative integer");
    sp.nodes = nodes.get<std::uint64_t>();
    c.subproblems.push_back(sp);
  }
  return c;
}

inline OptimalityCertificate parse_certificate(const std::string& text) {
  return certificate_from_json(detail::parse_text(text));
}

// "format" of a JSON document, or empty when absent / not JSON.
inline std::string sniff_format(const std::string& text) {
  auto j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return {};
  auto it = j.find("format");
  return it != j.end() && it->is_string() ? it->get<std::string>() : std::string{};
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError(p.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ParseError(p.string(), "cannot write file");
  out << text;
}

}  // namespace q3d::io
