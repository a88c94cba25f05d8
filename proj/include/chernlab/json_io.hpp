#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "chernlab/chain_maps.hpp"
#include "chernlab/chains.hpp"
#include "chernlab/chern.hpp"
#include "chernlab/complex.hpp"
#include "chernlab/group.hpp"
#include "chernlab/homology.hpp"
#include "chernlab/kernel.hpp"

namespace chernlab {

using nlohmann::json;

// --------------------------------------------------------------------------
// groups

inline json group_to_json(const FiniteGroup& g) {
  json j;
  j["order"] = g.order();
  j["mult_table"] = g.mult_table();
  j["identity"] = g.identity();
  std::vector<std::string> labels;
  for (int i = 0; i < g.order(); ++i) labels.push_back(g.label(i));
  j["labels"] = labels;
  return j;
}

inline FiniteGroup group_from_json(const json& j) {
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return FiniteGroup(j.at("order").get<int>(),
                     j.at("mult_table").get<std::vector<std::vector<int>>>(),
                     j.at("identity").get<int>(), std::move(labels));
}

/// "cyclic:N", "sym:N", or "product:[spec,spec]".
inline FiniteGroup parse_group_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  if (head == "cyclic" || head == "sym") {
    if (colon == std::string::npos) throw std::invalid_argument("missing order in '" + spec + "'");
    int n = std::stoi(spec.substr(colon + 1));
    return head == "cyclic" ? FiniteGroup::cyclic(n) : FiniteGroup::symmetric(n);
  }
  if (head == "product") {
    std::string body = spec.substr(colon + 1);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw std::invalid_argument("product spec needs [a,b]: '" + spec + "'");
    body = body.substr(1, body.size() - 2);
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : body) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
    if (parts.size() < 2) throw std::invalid_argument("product needs at least two factors");
    FiniteGroup acc = parse_group_spec(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i)
      acc = FiniteGroup::product(acc, parse_group_spec(parts[i]));
    return acc;
  }
  throw std::invalid_argument("unknown group spec '" + spec + "'");
}

/// Accepts a spec string or an inline group object.
inline std::shared_ptr<const FiniteGroup> load_group(const json& j) {
  if (j.is_string())
    return std::make_shared<const FiniteGroup>(parse_group_spec(j.get<std::string>()));
  return std::make_shared<const FiniteGroup>(group_from_json(j));
}

// --------------------------------------------------------------------------
// complexes

inline json complex_to_json(const SimplicialComplex& cx) {
  json j;
  j["vertices"] = cx.vertex_count();
  json simplices = json::object();
  for (int k = 0; k <= cx.dim(); ++k) {
    if (k == 0) {
      std::vector<int> verts;
      for (const auto& s : cx.simplices(0)) verts.push_back(s[0]);
      simplices["0"] = verts;
    } else {
      simplices[std::to_string(k)] = cx.simplices(k);
    }
  }
  j["simplices"] = simplices;
  if (cx.has_metric()) {
    json metric = json::array();
    for (int v = 0; v < cx.vertex_count(); ++v) {
      json row = json::array();
      for (int w = 0; w < cx.vertex_count(); ++w) row.push_back(to_string(cx.metric(v, w)));
      metric.push_back(row);
    }
    j["metric"] = metric;
  }
  if (cx.has_action()) {
    j["action"] = {{"group", group_to_json(cx.group())}, {"perms", cx.vertex_perms()}};
  }
  return j;
}

inline SimplicialComplex complex_from_json(const json& j) {
  int vertices = j.at("vertices").get<int>();
  std::vector<std::vector<std::vector<int>>> by_dim;
  const json& simplices = j.at("simplices");
  for (const auto& [key, value] : simplices.items()) {
    int k = std::stoi(key);
    if (static_cast<int>(by_dim.size()) <= k) by_dim.resize(k + 1);
    for (const auto& entry : value) {
      if (entry.is_number()) {
        by_dim[k].push_back({entry.get<int>()});
      } else {
        by_dim[k].push_back(entry.get<std::vector<int>>());
      }
    }
  }
  SimplicialComplex cx(vertices, std::move(by_dim));
  if (j.contains("metric")) {
    std::vector<std::vector<Rational>> metric;
    for (const auto& row : j.at("metric")) {
      std::vector<Rational> r;
      for (const auto& v : row)
        r.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                  : Rational(v.get<long long>()));
      metric.push_back(std::move(r));
    }
    cx.attach_metric(std::move(metric));
  }
  if (j.contains("action")) {
    cx.attach_action(load_group(j.at("action").at("group")),
                     j.at("action").at("perms").get<std::vector<std::vector<int>>>());
  }
  return cx;
}

// --------------------------------------------------------------------------
// chains and homology results

inline json chain_to_json(const Chain& c) {
  json j;
  j["theory"] = c.theory.name();
  j["degree"] = c.degree;
  json terms = json::array();
  for (const auto& [key, coeff] : c.terms) {
    json t;
    if (key.g >= 0) t["g"] = key.g;
    t["simplex"] = key.verts;
    t["coeff"] = to_string(coeff);
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

inline Chain chain_from_json(const json& j) {
  Chain c{theory_from_name(j.at("theory").get<std::string>()), j.at("degree").get<int>(), {}};
  for (const auto& t : j.at("terms")) {
    ChainKey key;
    key.g = t.contains("g") ? t.at("g").get<int>() : -1;
    key.verts = t.at("simplex").get<std::vector<int>>();
    c.add(key, parse_qi(t.at("coeff").get<std::string>()));
  }
  return c;
}

inline json homology_to_json(const HomologyResult& h) {
  json j;
  j["theory"] = h.theory.name();
  j["degree"] = h.degree;
  j["betti"] = h.betti;
  json cycles = json::array();
  for (const Chain& z : h.cycle_basis) cycles.push_back(chain_to_json(z));
  j["cycles"] = cycles;
  return j;
}

// --------------------------------------------------------------------------
// kernels and Chern classes

inline json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    rows.push_back(r);
  }
  return rows;
}

inline Mat matrix_from_json(const json& j) {
  Mat m;
  for (const auto& row : j) {
    std::vector<QI> r;
    for (const auto& v : row)
      r.push_back(v.is_string() ? parse_qi(v.get<std::string>()) : QI(v.get<int>()));
    m.push_back(std::move(r));
  }
  return m;
}

inline json kernel_to_json(const MatrixKernel& k) {
  json j;
  j["group"] = group_to_json(k.group());
  j["m"] = k.m();
  json terms = json::array();
  for (const auto& [g, v] : k.terms()) terms.push_back({{"g", g}, {"matrix", matrix_to_json(v)}});
  j["terms"] = terms;
  return j;
}

inline MatrixKernel kernel_from_json(const json& j,
                                     std::shared_ptr<const FiniteGroup> group = nullptr) {
  if (!group) group = load_group(j.at("group"));
  MatrixKernel k(group, j.at("m").get<int>());
  for (const auto& t : j.at("terms")) k.set(t.at("g").get<int>(), matrix_from_json(t.at("matrix")));
  return k;
}

/// Kernel file with an optional constant idempotent part: fields of the kernel
/// schema plus "q0" (defaults to the zero matrix).
inline IdempotentPair idempotent_from_json(const json& j,
                                           std::shared_ptr<const FiniteGroup> group = nullptr) {
  MatrixKernel q = kernel_from_json(j, std::move(group));
  Mat q0 = j.contains("q0") ? matrix_from_json(j.at("q0")) : zero_matrix(q.m());
  return IdempotentPair{std::move(q), std::move(q0)};
}

inline json idempotent_to_json(const IdempotentPair& p) {
  json j = kernel_to_json(p.q);
  j["q0"] = matrix_to_json(p.q0);
  return j;
}

inline json chern_to_json(const ChernClass& c) {
  json j;
  j["variant"] = c.variant == ChernVariant::torsion_free ? "torsion_free" : "twisted";
  j["n"] = c.n;
  j["d"] = to_string(c.d);
  if (c.variant == ChernVariant::twisted) j["r"] = to_string(c.r);
  json comps = json::object();
  for (const auto& [k, chain] : c.components) comps[std::to_string(k)] = chain_to_json(chain);
  j["components"] = comps;
  return j;
}

// --------------------------------------------------------------------------
// reports

inline json chain_map_report_to_json(const ChainMapReport& r) {
  json j;
  j["map"] = r.map_name;
  j["all_pass"] = r.all_pass;
  json degrees = json::array();
  for (const auto& check : r.degrees) {
    json d;
    d["degree"] = check.degree;
    d["pass"] = check.pass;
    if (check.witness) {
      json w;
      if (check.witness->g >= 0) w["g"] = check.witness->g;
      w["simplex"] = check.witness->verts;
      d["witness"] = w;
    }
    degrees.push_back(d);
  }
  j["degrees"] = degrees;
  return j;
}

}  // namespace chernlab
