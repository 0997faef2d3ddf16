#pragma once

// Generated by tests/oracles/gen_fixtures.py; do not edit.

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

struct GraphCase {
  std::string name;
  int n;
  std::vector<std::pair<int, int>> edges;
  int s;
  int t;
  double hk_path;
  double hk_circuit;
  double subtour_path;
  double opt_path;
  double opt_circuit;
};

inline const std::vector<GraphCase>& graph_cases() {
  static const std::vector<GraphCase> cases = {
      {"random0", 9, {{0, 1}, {0, 2}, {0, 5}, {0, 6}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 7}, {1, 8}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {3, 6}, {4, 5}, {5, 6}, {5, 7}}, 6, 0, 9, 10, 9, 9, 10},
      {"random1", 7, {{0, 1}, {0, 4}, {0, 6}, {1, 3}, {2, 3}, {2, 5}, {2, 6}, {3, 5}, {4, 5}, {4, 6}}, 2, 4, 6, 7, 6, 6, 7},
      {"random2", 8, {{0, 2}, {0, 4}, {0, 5}, {1, 2}, {1, 4}, {1, 6}, {1, 7}, {2, 6}, {2, 7}, {3, 4}, {4, 5}}, 7, 6, 8, 10, 8, 8, 10},
      {"random3", 7, {{0, 1}, {0, 2}, {0, 3}, {0, 5}, {1, 3}, {1, 6}, {2, 3}, {4, 5}}, 5, 1, 8, 10, 8, 8, 10},
      {"random4", 9, {{0, 4}, {0, 5}, {0, 7}, {1, 5}, {1, 6}, {2, 5}, {3, 4}, {3, 6}, {3, 8}}, 4, 8, 10, 12, 10, 10, 12},
      {"random5", 5, {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {3, 4}}, 0, 3, 6, 6, 6, 6, 6},
      {"random6", 7, {{0, 4}, {1, 3}, {1, 5}, {1, 6}, {2, 4}, {2, 6}, {3, 4}, {3, 6}}, 4, 3, 8, 9, 8, 8, 9},
      {"random7", 5, {{0, 4}, {1, 2}, {1, 3}, {2, 3}, {2, 4}}, 3, 2, 6, 7, 6, 6, 7},
      {"random8", 9, {{0, 2}, {0, 5}, {0, 6}, {0, 8}, {1, 2}, {1, 5}, {1, 7}, {2, 5}, {2, 6}, {3, 8}, {4, 7}, {5, 7}, {7, 8}}, 8, 6, 10, 11, 10, 10, 11},
      {"random9", 5, {{0, 1}, {0, 3}, {1, 3}, {1, 4}, {2, 3}, {3, 4}}, 0, 1, 5, 6, 5, 5, 6},
      {"ladder1", 3, {{0, 1}, {1, 2}, {0, 2}}, 0, 1, 2, 3, 2, 2, 3},
      {"ladder2", 6, {{0, 1}, {2, 3}, {4, 5}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {0, 4}, {1, 5}}, 0, 2, 5, 6, 5, 5, 6},
      {"ladder3", 9, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {0, 3}, {2, 5}, {3, 6}, {5, 8}, {0, 6}, {2, 8}}, 0, 3, 8.5, 9, 8.5, 9, 10},
      {"ladder4", 12, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}, {8, 9}, {9, 10}, {10, 11}, {0, 4}, {3, 7}, {4, 8}, {7, 11}, {0, 8}, {3, 11}}, 0, 4, 11.5, 12, 11.5, 13, 14},
      {"cycle1", 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 0, 2, 4, 4, 4, 4, 4},
      {"cycle2", 6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, 0, 3, 6, 6, 6, 7, 6},
      {"cycle3", 8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}}, 0, 4, 8, 8, 8, 10, 8},
      {"cycle4", 10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 0}}, 0, 5, 10, 10, 10, 13, 10},
  };
  return cases;
}

}  // namespace fixtures
