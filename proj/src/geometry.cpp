// Copyright 2026 The mipt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mipt/geometry.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mipt/common.hpp"

namespace mipt {

using json = nlohmann::json;

std::string to_string(EdgeColor c) {
  switch (c) {
    case EdgeColor::Orange: return "orange";
    case EdgeColor::Blue: return "blue";
    case EdgeColor::Green: return "green";
    case EdgeColor::Red: return "red";
  }
  return "?";
}

EdgeColor color_from_string(const std::string& s) {
  if (s == "orange") return EdgeColor::Orange;
  if (s == "blue") return EdgeColor::Blue;
  if (s == "green") return EdgeColor::Green;
  if (s == "red") return EdgeColor::Red;
  throw InvalidArgument("unknown edge color: " + s);
}

int Geometry::index_of(int x, int y) const {
  for (int i = 0; i < size(); ++i)
    if (qubits[i].first == x && qubits[i].second == y) return i;
  return -1;
}

std::vector<const Edge*> Geometry::edges_of(EdgeColor c) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges)
    if (e.color == c) out.push_back(&e);
  return out;
}

std::vector<std::vector<int>> Geometry::adjacency() const {
  std::vector<std::vector<int>> adj(size());
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return adj;
}

void Geometry::validate() const {
  const int n = size();
  if (n == 0) throw InvalidArgument("geometry has no qubits");
  std::map<std::pair<int, int>, int> seen;
  for (int i = 0; i < n; ++i)
    if (!seen.emplace(qubits[i], i).second) throw InvalidArgument("duplicate qubit coordinate");
  std::map<EdgeColor, std::vector<bool>> busy;
  for (const auto& e : edges) {
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n || e.a == e.b) throw InvalidArgument("edge endpoint out of range");
    const int dx = std::abs(qubits[e.a].first - qubits[e.b].first);
    const int dy = std::abs(qubits[e.a].second - qubits[e.b].second);
    if (dx + dy != 1) throw InvalidArgument("edge joins non-neighbouring qubits");
    auto& used = busy[e.color];
    used.resize(n, false);
    if (used[e.a] || used[e.b]) throw InvalidArgument("color " + to_string(e.color) + " is not a matching");
    used[e.a] = used[e.b] = true;
  }
  if (probe < 0 || probe >= n) throw InvalidArgument("probe out of range");
  if (!patches.empty()) {
    if (!patches.front().empty()) throw InvalidArgument("D_0 must be empty");
    for (size_t r = 1; r < patches.size(); ++r) {
      if (patches[r].size() <= patches[r - 1].size()) throw InvalidArgument("patches must nest strictly");
      for (int q : patches[r - 1])
        if (std::find(patches[r].begin(), patches[r].end(), q) == patches[r].end())
          throw InvalidArgument("patches must nest");
    }
    std::vector<int> last = patches.back();
    std::sort(last.begin(), last.end());
    if (static_cast<int>(last.size()) != n - 1 || std::binary_search(last.begin(), last.end(), probe))
      throw InvalidArgument("last patch must hold every qubit except the probe");
  }
}

std::vector<std::vector<int>> distance_patches(const Geometry& g) {
  const auto adj = g.adjacency();
  std::vector<int> dist(g.size(), -1);
  std::deque<int> queue{g.probe};
  dist[g.probe] = 0;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int w : adj[q])
      if (dist[w] < 0) {
        dist[w] = dist[q] + 1;
        queue.push_back(w);
      }
  }
  if (std::count(dist.begin(), dist.end(), -1) > 0) throw InvalidArgument("geometry is disconnected");
  const int dmax = *std::max_element(dist.begin(), dist.end());
  std::vector<std::vector<int>> patches{{}};
  for (int r = 1; r <= dmax; ++r) {
    std::vector<int> p;
    for (int q = 0; q < g.size(); ++q)
      if (q != g.probe && dist[q] <= r) p.push_back(q);
    patches.push_back(std::move(p));
  }
  return patches;
}

Geometry make_grid_geometry(const std::string& name, const std::vector<std::pair<int, int>>& sites,
                            std::pair<int, int> probe_site, std::vector<EdgeColor> cycle_colors) {
  Geometry g;
  g.name = name;
  g.qubits = sites;
  std::sort(g.qubits.begin(), g.qubits.end(), [](const auto& p, const auto& q) {
    return std::tie(p.second, p.first) < std::tie(q.second, q.first);
  });
  for (int i = 0; i < g.size(); ++i) {
    const auto [x, y] = g.qubits[i];
    const bool even = ((x + y) % 2) == 0;
    const int right = g.index_of(x + 1, y), up = g.index_of(x, y + 1);
    if (right >= 0) g.edges.push_back({i, right, even ? EdgeColor::Orange : EdgeColor::Green});
    if (up >= 0) g.edges.push_back({i, up, even ? EdgeColor::Blue : EdgeColor::Red});
  }
  g.cycle_colors = std::move(cycle_colors);
  g.probe = g.index_of(probe_site.first, probe_site.second);
  if (g.probe < 0) throw InvalidArgument("probe site not in geometry");
  g.patches = distance_patches(g);
  g.validate();
  return g;
}

std::vector<std::string> builtin_geometry_names() { return {"grid19", "n12", "n24", "n40", "n58", "n70"}; }

Geometry builtin_geometry(const std::string& name) {
  using C = EdgeColor;
  // The first five cycles give the orange, blue, green, red, orange sequence
  // of the depth-5 experiments; deeper circuits keep repeating the pattern.
  std::vector<C> eight;
  for (int k = 0; k < 8; ++k) eight.push_back(static_cast<C>(k % 4));
  auto rect = [](int nx, int ny) {
    std::vector<std::pair<int, int>> s;
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) s.emplace_back(x, y);
    return s;
  };
  if (name == "grid19") {
    std::vector<std::pair<int, int>> s;
    for (int x = 0; x < 7; ++x) s.emplace_back(x, 0);
    for (int x = 0; x < 7; ++x) s.emplace_back(x, 1);
    for (int x = 1; x < 6; ++x) s.emplace_back(x, 2);
    return make_grid_geometry(name, s, {3, 0}, eight);
  }
  if (name == "n12") return make_grid_geometry(name, rect(3, 4), {1, 0}, eight);
  if (name == "n24") return make_grid_geometry(name, rect(4, 6), {2, 0}, eight);
  if (name == "n40") return make_grid_geometry(name, rect(5, 8), {2, 0}, eight);
  if (name == "n58") {
    auto s = rect(6, 10);
    std::erase(s, std::pair<int, int>{0, 9});
    std::erase(s, std::pair<int, int>{5, 9});
    return make_grid_geometry(name, s, {2, 0}, eight);
  }
  if (name == "n70") return make_grid_geometry(name, rect(7, 10), {3, 0}, eight);
  throw InvalidArgument("unknown builtin geometry: " + name);
}

std::string geometry_to_json(const Geometry& g) {
  json j;
  j["name"] = g.name;
  j["qubits"] = json::array();
  for (const auto& [x, y] : g.qubits) j["qubits"].push_back({x, y});
  j["edges"] = json::array();
  for (const auto& e : g.edges) j["edges"].push_back({e.a, e.b, to_string(e.color)});
  j["cycle_colors"] = json::array();
  for (auto c : g.cycle_colors) j["cycle_colors"].push_back(to_string(c));
  j["probe"] = g.probe;
  j["patches"] = g.patches;
  return j.dump(1);
}

Geometry geometry_from_json(const std::string& text) {
  Geometry g;
  try {
    const json j = json::parse(text);
    g.name = j.at("name").get<std::string>();
    for (const auto& q : j.at("qubits")) g.qubits.emplace_back(q.at(0).get<int>(), q.at(1).get<int>());
    for (const auto& e : j.at("edges"))
      g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), color_from_string(e.at(2).get<std::string>())});
    for (const auto& c : j.at("cycle_colors")) g.cycle_colors.push_back(color_from_string(c.get<std::string>()));
    g.probe = j.at("probe").get<int>();
    g.patches = j.at("patches").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed geometry JSON: ") + e.what());
  }
  g.validate();
  return g;
}

Geometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open geometry file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return geometry_from_json(ss.str());
}

Geometry find_geometry(const std::string& name_or_path) {
  const auto names = builtin_geometry_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    const std::string path = std::string(MIPT_DATA_DIR) + "/geometries/" + name_or_path + ".json";
    std::ifstream probe(path);
    return probe ? load_geometry(path) : builtin_geometry(name_or_path);
  }
  return load_geometry(name_or_path);
}

void save_geometry(const Geometry& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << geometry_to_json(g) << "\n";
}

}  // namespace mipt
