#include "reflector_ot/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "reflector_ot/errors.hpp"

namespace reflector_ot {

namespace {

/// Exact value a + b*BIG with BIG treated symbolically (b stays a small
/// integer); ordering is lexicographic in (b, a).
struct Composite {
  double a = 0.0;
  double b = 0.0;

  Composite operator+(Composite o) const { return {a + o.a, b + o.b}; }
  Composite operator-(Composite o) const { return {a - o.a, b - o.b}; }
};

struct Arc {
  int u, v;               // endpoint node ids
  std::int8_t cu, cv;     // incidence coefficients at u, v (+1 / -1)
  Composite gain;
};

constexpr int kStallLimit = 600;

}  // namespace

TransportResult solve_transport(int n_rows, int n_cols, std::span<const double> row_mass,
                                std::span<const double> col_mass,
                                std::span<const TransportArc> arcs, int anchor_row,
                                double anchor_value, double opt_tol, double feas_tol) {
  const int M = n_rows, N = n_cols;
  const int root = M + N;
  const int n_nodes = M + N + 1;
  const int n_real = static_cast<int>(arcs.size());
  const int n_arcs = n_real + M + N;

  double mass_scale = 0.0, gain_scale = 1.0;
  for (double w : row_mass) mass_scale = std::max(mass_scale, std::abs(w));
  for (const TransportArc& a : arcs) gain_scale = std::max(gain_scale, std::abs(a.gain));

  std::vector<Arc> arc(n_arcs);
  for (int a = 0; a < n_real; ++a) {
    arc[a] = {arcs[a].row, M + arcs[a].col, +1, +1, {arcs[a].gain, 0.0}};
  }
  // artificial arcs keep the root attached: rows pay +1 into the root
  // balance, columns -1, so the all-artificial plan is feasible
  for (int i = 0; i < M; ++i) arc[n_real + i] = {i, root, +1, +1, {0.0, -1.0}};
  for (int j = 0; j < N; ++j) arc[n_real + M + j] = {M + j, root, +1, -1, {0.0, -1.0}};

  std::vector<double> flow(n_arcs, 0.0);
  std::vector<std::uint8_t> in_tree(n_arcs, 0);
  std::vector<std::vector<int>> tree_adj(n_nodes);
  for (int i = 0; i < M; ++i) flow[n_real + i] = row_mass[i];
  for (int j = 0; j < N; ++j) flow[n_real + M + j] = col_mass[j];
  for (int a = n_real; a < n_arcs; ++a) {
    in_tree[a] = 1;
    tree_adj[arc[a].u].push_back(a);
    tree_adj[arc[a].v].push_back(a);
  }

  std::vector<Composite> pot(n_nodes);
  std::vector<int> parent(n_nodes, -1), parent_arc(n_nodes, -1), depth(n_nodes, 0);
  std::vector<int> bfs_queue(n_nodes);

  auto rebuild_potentials = [&]() {
    parent.assign(n_nodes, -2);
    parent[anchor_row] = -1;
    parent_arc[anchor_row] = -1;
    depth[anchor_row] = 0;
    pot[anchor_row] = {anchor_value, 0.0};
    int head = 0, tail = 0;
    bfs_queue[tail++] = anchor_row;
    while (head < tail) {
      const int n = bfs_queue[head++];
      for (int a : tree_adj[n]) {
        const int other = arc[a].u == n ? arc[a].v : arc[a].u;
        if (parent[other] != -2) continue;
        const std::int8_t cn = arc[a].u == n ? arc[a].cu : arc[a].cv;
        const std::int8_t co = arc[a].u == n ? arc[a].cv : arc[a].cu;
        // basic arc: cu*pot[u] + cv*pot[v] = gain
        Composite rest = arc[a].gain;
        if (cn > 0)
          rest = rest - pot[n];
        else
          rest = rest + pot[n];
        pot[other] = co > 0 ? rest : Composite{-rest.a, -rest.b};
        parent[other] = n;
        parent_arc[other] = a;
        depth[other] = depth[n] + 1;
        bfs_queue[tail++] = other;
      }
    }
    if (tail != n_nodes) throw NumericalFailureError("network simplex: basis tree disconnected");
  };
  rebuild_potentials();

  auto reduced_cost = [&](int a) -> Composite {
    const Arc& e = arc[a];
    Composite rc = e.gain;
    if (e.cu > 0)
      rc = rc - pot[e.u];
    else
      rc = rc + pot[e.u];
    if (e.cv > 0)
      rc = rc - pot[e.v];
    else
      rc = rc + pot[e.v];
    return rc;
  };
  auto improving = [&](Composite rc) {
    if (rc.b > 0.5) return true;
    if (rc.b < -0.5) return false;
    return rc.a > opt_tol * gain_scale;
  };
  auto rc_less = [](Composite x, Composite y) {
    if (x.b != y.b) return x.b < y.b;
    return x.a < y.a;
  };

  // cycle buffers: arcs and their orientation deltas on the path node->LCA
  std::vector<int> path_u, path_v;
  std::vector<double> delta_u, delta_v;

  const int block = std::max(64, static_cast<int>(std::sqrt(static_cast<double>(std::max(1, n_real)))));
  int scan_pos = 0;
  int stall = 0;
  bool bland = false;
  long pivots = 0;

  while (true) {
    // ---- pricing ----
    int entering = -1;
    if (!bland) {
      Composite best{0.0, 0.0};
      int scanned = 0;
      while (scanned < n_real) {
        const int chunk = std::min(block, n_real - scanned);
        for (int t = 0; t < chunk; ++t) {
          const int a = (scan_pos + t) % n_real;
          if (in_tree[a]) continue;
          const Composite rc = reduced_cost(a);
          if (improving(rc) && (entering < 0 || rc_less(best, rc))) {
            best = rc;
            entering = a;
          }
        }
        scanned += chunk;
        scan_pos = (scan_pos + chunk) % n_real;
        if (entering >= 0) break;
      }
    } else {
      for (int a = 0; a < n_real; ++a) {
        if (in_tree[a]) continue;
        if (improving(reduced_cost(a))) {
          entering = a;
          break;
        }
      }
    }
    if (entering < 0) break;  // optimal

    // ---- cycle: walk both endpoints up to their LCA ----
    // pushing theta > 0 on the entering arc changes each path arc by
    // delta * theta, alternating via the incidence coefficients
    path_u.clear();
    path_v.clear();
    delta_u.clear();
    delta_v.clear();
    int nu = arc[entering].u, nv = arc[entering].v;
    double du = -static_cast<double>(arc[entering].cu);  // balance at nu
    double dv = -static_cast<double>(arc[entering].cv);
    while (nu != nv) {
      if (depth[nu] >= depth[nv]) {
        const int a = parent_arc[nu];
        const std::int8_t c_here = arc[a].u == nu ? arc[a].cu : arc[a].cv;
        const std::int8_t c_up = arc[a].u == nu ? arc[a].cv : arc[a].cu;
        const double d = du / static_cast<double>(c_here);
        path_u.push_back(a);
        delta_u.push_back(d);
        du = -d * static_cast<double>(c_up);
        nu = parent[nu];
      } else {
        const int a = parent_arc[nv];
        const std::int8_t c_here = arc[a].u == nv ? arc[a].cu : arc[a].cv;
        const std::int8_t c_up = arc[a].u == nv ? arc[a].cv : arc[a].cu;
        const double d = dv / static_cast<double>(c_here);
        path_v.push_back(a);
        delta_v.push_back(d);
        dv = -d * static_cast<double>(c_up);
        nv = parent[nv];
      }
    }
    if (du + dv != 0.0)
      throw NumericalFailureError("network simplex: cycle residual at the join node");

    // ---- ratio test ----
    double theta = std::numeric_limits<double>::infinity();
    int leaving = -1;
    auto consider = [&](int a, double d) {
      if (d >= 0.0) return;
      const double bound = flow[a] / (-d);
      if (bound < theta - 1e-30 || (bland && bound <= theta && (leaving < 0 || a < leaving))) {
        theta = bound;
        leaving = a;
      }
    };
    for (std::size_t t = 0; t < path_u.size(); ++t) consider(path_u[t], delta_u[t]);
    for (std::size_t t = 0; t < path_v.size(); ++t) consider(path_v[t], delta_v[t]);
    if (leaving < 0)
      throw NumericalFailureError("network simplex: unbounded cycle (corrupt basis)");

    // ---- pivot ----
    flow[entering] += theta;
    for (std::size_t t = 0; t < path_u.size(); ++t) flow[path_u[t]] += delta_u[t] * theta;
    for (std::size_t t = 0; t < path_v.size(); ++t) flow[path_v[t]] += delta_v[t] * theta;
    flow[leaving] = 0.0;

    in_tree[leaving] = 0;
    in_tree[entering] = 1;
    auto detach = [&](int node, int a) {
      auto& adj = tree_adj[node];
      adj.erase(std::find(adj.begin(), adj.end(), a));
    };
    detach(arc[leaving].u, leaving);
    detach(arc[leaving].v, leaving);
    tree_adj[arc[entering].u].push_back(entering);
    tree_adj[arc[entering].v].push_back(entering);
    rebuild_potentials();

    ++pivots;
    if (theta <= 0.0) {
      if (++stall > kStallLimit) bland = true;
    } else {
      stall = 0;
      bland = false;
    }
  }

  // ---- extract ----
  TransportResult res;
  res.pivots = pivots;
  res.flow.assign(flow.begin(), flow.begin() + n_real);

  const double flow_tol = feas_tol * std::max(1.0, mass_scale) * 1e3;
  for (int i = 0; i < M; ++i)
    if (flow[n_real + i] > flow_tol) res.deficient_rows.push_back(i);
  for (int j = 0; j < N; ++j)
    if (flow[n_real + M + j] > flow_tol) res.deficient_cols.push_back(j);

  if (!res.deficient_rows.empty() || !res.deficient_cols.empty()) {
    res.status = TransportResult::Status::Infeasible;
    res.ray_r.resize(M);
    res.ray_z.resize(N);
    for (int i = 0; i < M; ++i) res.ray_r[i] = pot[i].b;
    for (int j = 0; j < N; ++j) res.ray_z[j] = pot[M + j].b;
    return res;
  }

  // canonicalize components stranded behind zero-flow artificial arcs: drop
  // the big-M part and lift the component onto its tightest cross constraint
  std::vector<std::uint8_t> stranded(n_nodes, 0);
  bool any_stranded = false;
  for (int n = 0; n < M + N; ++n)
    if (std::abs(pot[n].b) > 0.5) {
      stranded[n] = 1;
      any_stranded = true;
    }
  if (any_stranded) {
    std::vector<int> comp(n_nodes, -1);
    int n_comp = 0;
    for (int seed = 0; seed < M + N; ++seed) {
      if (!stranded[seed] || comp[seed] >= 0) continue;
      const int c = n_comp++;
      std::vector<int> stack{seed};
      comp[seed] = c;
      while (!stack.empty()) {
        const int n = stack.back();
        stack.pop_back();
        for (int a : tree_adj[n]) {
          if (a >= n_real) continue;  // real basic arcs only
          const int other = arc[a].u == n ? arc[a].v : arc[a].u;
          if (comp[other] < 0) {
            comp[other] = c;
            stack.push_back(other);
          }
        }
      }
    }
    std::vector<double> lift(n_comp, 0.0);
    for (int a = 0; a < n_real; ++a) {
      const int ci = comp[arc[a].u], cj = comp[arc[a].v];
      if (ci >= 0 && ci != cj) {
        const double viol = arc[a].gain.a - pot[arc[a].u].a - pot[arc[a].v].a;
        lift[ci] = std::max(lift[ci], viol);
      }
    }
    for (int n = 0; n < M + N; ++n) {
      if (comp[n] < 0) continue;
      pot[n].b = 0.0;
      pot[n].a += (n < M ? +1.0 : -1.0) * lift[comp[n]];
    }
  }

  res.status = TransportResult::Status::Optimal;
  res.r.resize(M);
  res.z.resize(N);
  for (int i = 0; i < M; ++i) res.r[i] = pot[i].a;
  for (int j = 0; j < N; ++j) res.z[j] = pot[M + j].a;

  double primal = 0.0;
  for (int a = 0; a < n_real; ++a) primal += arc[a].gain.a * flow[a];
  double dual = 0.0;
  for (int i = 0; i < M; ++i) dual += row_mass[i] * res.r[i];
  for (int j = 0; j < N; ++j) dual += col_mass[j] * res.z[j];
  res.primal_objective = primal;
  res.dual_objective = dual;

  // final certificates: primal mass balance, dual feasibility, closed gap
  {
    std::vector<double> row_sum(M, 0.0), col_sum(N, 0.0);
    for (int a = 0; a < n_real; ++a) {
      if (flow[a] < -flow_tol)
        throw NumericalFailureError("network simplex: negative flow after solve");
      row_sum[arc[a].u] += flow[a];
      col_sum[arc[a].v - M] += flow[a];
    }
    const double sum_tol = 1e3 * feas_tol * std::max(1.0, mass_scale) + 1e-10 * mass_scale;
    for (int i = 0; i < M; ++i)
      if (std::abs(row_sum[i] - row_mass[i]) > sum_tol)
        throw NumericalFailureError("network simplex: row mass drifted");
    for (int j = 0; j < N; ++j)
      if (std::abs(col_sum[j] - col_mass[j]) > sum_tol)
        throw NumericalFailureError("network simplex: column mass drifted");
  }
  const double slack_tol = feas_tol * std::max(1.0, gain_scale) * 1e3;
  for (int a = 0; a < n_real; ++a) {
    const double slack = res.r[arc[a].u] + res.z[arc[a].v - M] - arc[a].gain.a;
    if (slack < -slack_tol)
      throw NumericalFailureError("network simplex: dual infeasible after solve");
  }
  const double obj_scale = std::max({1.0, std::abs(primal), std::abs(dual)});
  if (std::abs(primal - dual) > 1e3 * opt_tol * obj_scale + 1e-9 * obj_scale)
    throw NumericalFailureError("network simplex: duality gap not closed");
  return res;
}

}  // namespace reflector_ot
