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

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mipt {

enum class EdgeColor { Orange, Blue, Green, Red };

std::string to_string(EdgeColor c);
EdgeColor color_from_string(const std::string& s);

struct Edge {
  int a = 0, b = 0;
  EdgeColor color = EdgeColor::Orange;
};

// Qubits on integer lattice sites with nearest-neighbour couplers. Each color
// class is a matching, so one color is one layer of simultaneous gates.
struct Geometry {
  std::string name;
  std::vector<std::pair<int, int>> qubits;
  std::vector<Edge> edges;
  std::vector<EdgeColor> cycle_colors;  // color applied in cycle t (0-based)
  int probe = 0;
  // Patches D_0 subset D_1 subset ... ; D_0 empty, last = all but probe.
  std::vector<std::vector<int>> patches;

  int size() const { return static_cast<int>(qubits.size()); }
  int index_of(int x, int y) const;  // -1 if absent
  std::vector<const Edge*> edges_of(EdgeColor c) const;
  std::vector<std::vector<int>> adjacency() const;
  int r_max() const { return static_cast<int>(patches.size()) - 1; }

  void validate() const;
};

// Rectangular patch of nx*ny sites minus `removed`. Edge color depends on
// direction and on the parity of x+y at the lower endpoint: horizontal even
// orange, vertical even blue, horizontal odd green, vertical odd red.
// Patches are cumulative graph-distance shells around the probe.
Geometry make_grid_geometry(const std::string& name, const std::vector<std::pair<int, int>>& sites,
                            std::pair<int, int> probe_site, std::vector<EdgeColor> cycle_colors);

// Cumulative distance shells: D_r = non-probe qubits within graph distance r.
std::vector<std::vector<int>> distance_patches(const Geometry& g);

// Shipped geometries: grid19, n12, n24, n40, n58, n70.
std::vector<std::string> builtin_geometry_names();
Geometry builtin_geometry(const std::string& name);

Geometry load_geometry(const std::string& path);
// Resolves a builtin name against the data directory, otherwise a path.
Geometry find_geometry(const std::string& name_or_path);
void save_geometry(const Geometry& g, const std::string& path);
std::string geometry_to_json(const Geometry& g);
Geometry geometry_from_json(const std::string& text);

}  // namespace mipt
