"""Independent reference values for the C++ tests.

Solves both Held-Karp relaxations in subtour form with every cut listed
explicitly (scipy HiGHS) and the exact optima by a plain dynamic program,
then prints tests/fixtures.hpp. Requires numpy, scipy, networkx.
"""
import itertools
import random
import sys

import networkx as nx
import numpy as np
from scipy.optimize import linprog


def metric(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    d = dict(nx.all_pairs_shortest_path_length(g))
    return [[d[i][j] for j in range(n)] for i in range(n)]


def held_karp(c, s, t, path):
    n = len(c)
    E = [(i, j) for i in range(n) for j in range(i + 1, n)]
    cost = [c[i][j] for i, j in E]
    a_eq, b_eq = [], []
    for v in range(n):
        a_eq.append([1 if v in e else 0 for e in E])
        b_eq.append((1 if v in (s, t) else 2) if path else 2)
    a_ub, b_ub = [], []
    for mask in range(1, 2 ** (n - 1)):
        side = {i for i in range(n) if mask >> i & 1}
        if len(side) == 1:
            continue
        req = 1 if path and ((s in side) != (t in side)) else 2
        a_ub.append([-1 if ((i in side) != (j in side)) else 0 for i, j in E])
        b_ub.append(-req)
    r = linprog(cost, A_ub=a_ub or None, b_ub=b_ub or None, A_eq=a_eq, b_eq=b_eq,
                bounds=(0, None), method="highs")
    assert r.status == 0
    return r.fun


def subtour_form(c, s, t):
    # x(E(S)) <= |S| - 1 for S missing s or t, <= |S| - 2 for S containing both.
    n = len(c)
    E = [(i, j) for i in range(n) for j in range(i + 1, n)]
    cost = [c[i][j] for i, j in E]
    a_eq = [[1] * len(E)]
    b_eq = [n - 1]
    for v in range(n):
        if v not in (s, t):
            a_eq.append([1 if v in e else 0 for e in E])
            b_eq.append(2)
    for v in (s, t):
        a_eq.append([1 if v in e else 0 for e in E])
        b_eq.append(1)
    a_ub, b_ub = [], []
    for size in range(2, n):
        for side in itertools.combinations(range(n), size):
            side = set(side)
            a_ub.append([1 if i in side and j in side else 0 for i, j in E])
            b_ub.append(len(side) - (2 if (s in side and t in side) else 1))
    r = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    assert r.status == 0
    return r.fun


def exact(c, s, t, path):
    n = len(c)
    inf = float("inf")
    start = s
    dp = [[inf] * n for _ in range(1 << n)]
    dp[1 << start][start] = 0
    for m in range(1 << n):
        for v in range(n):
            if dp[m][v] == inf:
                continue
            for w in range(n):
                if m >> w & 1:
                    continue
                nm = m | 1 << w
                dp[nm][w] = min(dp[nm][w], dp[m][v] + c[v][w])
    full = (1 << n) - 1
    if path:
        return dp[full][t]
    return min(dp[full][v] + c[v][start] for v in range(n) if v != start)


def random_graph(rng, n, p):
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        if nx.is_connected(g):
            return edges


def ladder(k):
    edges = [(r * k + i, r * k + i + 1) for r in range(3) for i in range(k - 1)]
    for a, b in ((0, 1), (1, 2), (0, 2)):
        edges.append((a * k, b * k))
        if k > 1:
            edges.append((a * k + k - 1, b * k + k - 1))
    return 3 * k, edges, 0, k


def cycle(k):
    n = 2 * (k + 1)
    return n, [(i, (i + 1) % n) for i in range(n)], 0, k + 1


def main():
    rng = random.Random(20240611)
    cases = []
    for idx in range(10):
        n = rng.randint(5, 9)
        edges = random_graph(rng, n, rng.choice([0.3, 0.45]))
        s, t = rng.sample(range(n), 2)
        cases.append((f"random{idx}", n, edges, s, t))
    for k in range(1, 5):
        cases.append((f"ladder{k}", *ladder(k)))
    for k in range(1, 5):
        cases.append((f"cycle{k}", *cycle(k)))

    out = sys.stdout
    out.write("#pragma once\n\n// Generated by tests/oracles/gen_fixtures.py; do not edit.\n\n")
    out.write("#include <string>\n#include <utility>\n#include <vector>\n\nnamespace fixtures {\n\n")
    out.write("struct GraphCase {\n  std::string name;\n  int n;\n  std::vector<std::pair<int, int>> edges;\n"
              "  int s;\n  int t;\n  double hk_path;\n  double hk_circuit;\n  double subtour_path;\n"
              "  double opt_path;\n  double opt_circuit;\n};\n\n")
    out.write("inline const std::vector<GraphCase>& graph_cases() {\n  static const std::vector<GraphCase> cases = {\n")
    for name, n, edges, s, t in cases:
        c = metric(n, edges)
        hp = held_karp(c, s, t, True)
        hc = held_karp(c, s, t, False)
        sf = subtour_form(c, s, t) if n <= 10 else hp
        op = exact(c, s, t, True)
        oc = exact(c, s, t, False)
        es = ", ".join(f"{{{u}, {v}}}" for u, v in edges)
        out.write(f'      {{"{name}", {n}, {{{es}}}, {s}, {t}, {hp:.12g}, {hc:.12g}, {sf:.12g}, {op:.12g}, {oc:.12g}}},\n')
    out.write("  };\n  return cases;\n}\n\n}  // namespace fixtures\n")


if __name__ == "__main__":
    main()
