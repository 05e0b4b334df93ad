#include "graphtsp/multigraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace graphtsp {

Multigraph::Multigraph(int n, std::vector<std::pair<int, int>> edge_list)
    : n_(n), edges_(std::move(edge_list)), inc_(std::max(n, 0)) {
  require(n >= 0, errc::invalid_input, "vertex count must be nonnegative");
  for (int e = 0; e < edge_count(); ++e) {
    auto [u, v] = edges_[e];
    require(u >= 0 && u < n_ && v >= 0 && v < n_, errc::invalid_input,
            "edge endpoint out of range");
    require(u != v, errc::invalid_input, "loop edges are not allowed");
    inc_[u].push_back({e, v});
    inc_[v].push_back({e, u});
  }
}

bool Multigraph::has_edge_between(int u, int v) const {
  for (const auto& in : inc_[u])
    if (in.to == v) return true;
  return false;
}

int EulerianSubgraph::weighted_degree(int v) const {
  int d = 0;
  for (const auto& in : base->incident(v)) d += mult[in.edge];
  return d;
}

std::int64_t EulerianSubgraph::edge_total() const {
  std::int64_t t = 0;
  for (int m : mult) t += m;
  return t;
}

std::vector<std::string> EulerianSubgraph::violations() const {
  std::vector<std::string> out;
  if (base == nullptr) return {"no host graph"};
  if (static_cast<int>(mult.size()) != base->edge_count())
    return {"multiplicity vector size mismatch"};
  for (int m : mult)
    if (m < 0 || m > 2) {
      out.push_back("multiplicity outside {0,1,2}");
      break;
    }
  bool odd = false, zero = false;
  for (int v = 0; v < base->vertex_count(); ++v) {
    int d = weighted_degree(v);
    if (d == 0) zero = true;
    if (d % 2 != 0) odd = true;
  }
  if (odd) out.push_back("odd-degree vertex");
  if (zero) out.push_back("vertex with zero degree (not spanning)");
  if (!zero && base->vertex_count() > 0) {
    // Connectivity over the support.
    std::vector<char> seen(base->vertex_count(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& in : base->incident(v))
        if (mult[in.edge] > 0 && !seen[in.to]) {
          seen[in.to] = 1;
          ++cnt;
          stack.push_back(in.to);
        }
    }
    if (cnt != base->vertex_count()) out.push_back("support is disconnected");
  }
  return out;
}

bool is_connected(const Multigraph& g) {
  int n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& in : g.incident(v))
      if (!seen[in.to]) {
        seen[in.to] = 1;
        ++cnt;
        stack.push_back(in.to);
      }
  }
  return cnt == n;
}

std::vector<int> find_bridges(const Multigraph& g) {
  require(is_connected(g), errc::disconnected,
          "find_bridges requires a connected graph");
  int n = g.vertex_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> bridges;
  if (n == 0) return bridges;

  struct Frame {
    int v;
    int entry_edge;
    std::size_t i;
  };
  std::vector<Frame> st;
  int timer = 0;
  disc[0] = low[0] = timer++;
  st.push_back({0, -1, 0});
  while (!st.empty()) {
    Frame& f = st.back();
    if (f.i < g.incident(f.v).size()) {
      auto [e, w] = g.incident(f.v)[f.i++];
      if (e == f.entry_edge) continue;  // only the entry copy; parallels recur
      if (disc[w] == -1) {
        disc[w] = low[w] = timer++;
        st.push_back({w, e, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
    } else {
      Frame done = f;
      st.pop_back();
      if (!st.empty()) {
        Frame& pf = st.back();
        low[pf.v] = std::min(low[pf.v], low[done.v]);
        if (low[done.v] > disc[pf.v]) bridges.push_back(done.entry_edge);
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

std::vector<int> euler_walk(const Multigraph& g, const std::vector<int>& mult,
                            int start) {
  int m = g.edge_count();
  std::vector<int> off(m + 1, 0);
  for (int e = 0; e < m; ++e) off[e + 1] = off[e] + mult[e];
  std::vector<char> used(off[m], 0);

  int n = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> slots(n);  // (edge, copy)
  for (int v = 0; v < n; ++v)
    for (const auto& in : g.incident(v))
      for (int c = 0; c < mult[in.edge]; ++c) slots[v].push_back({in.edge, c});

  std::vector<std::size_t> ptr(n, 0);
  std::vector<std::pair<int, int>> stack;  // (vertex, edge arrived by)
  std::vector<int> circuit;
  stack.push_back({start, -1});
  while (!stack.empty()) {
    auto [v, arrived] = stack.back();
    auto& sl = slots[v];
    std::size_t& p = ptr[v];
    while (p < sl.size() && used[off[sl[p].first] + sl[p].second]) ++p;
    if (p == sl.size()) {
      stack.pop_back();
      if (arrived >= 0) circuit.push_back(arrived);
    } else {
      auto [e, c] = sl[p];
      used[off[e] + c] = 1;
      stack.push_back({g.other_end(e, v), e});
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

std::vector<int> eulerian_circuit(const EulerianSubgraph& h) {
  auto bad = h.violations();
  if (!bad.empty()) {
    for (const auto& msg : bad) {
      if (msg == "odd-degree vertex")
        fail(errc::invalid_input, "eulerian_circuit: odd-degree vertex");
      if (msg == "support is disconnected" ||
          msg == "vertex with zero degree (not spanning)")
        fail(errc::disconnected, "eulerian_circuit: " + msg);
    }
    fail(errc::invalid_input, "eulerian_circuit: " + bad.front());
  }
  auto circuit = euler_walk(*h.base, h.mult, 0);
  require(static_cast<std::int64_t>(circuit.size()) == h.edge_total(),
          errc::bad_certificate, "eulerian_circuit: walk missed edges");
  return circuit;
}

Tour shortcut_tour(const Multigraph& g, const std::vector<int>& circuit) {
  int n = g.vertex_count();
  require(!circuit.empty() || n <= 1, errc::invalid_input,
          "shortcut_tour: empty circuit");
  if (n <= 1) return Tour{{0}, 0};

  // Orient the walk: the start vertex is shared by the first and last edges.
  int e0 = circuit.front(), el = circuit.back();
  auto [a, b] = g.edge(e0);
  int start;
  if (g.edge_has(el, a) && g.edge_has(el, b))
    start = std::min(a, b);
  else if (g.edge_has(el, a))
    start = a;
  else if (g.edge_has(el, b))
    start = b;
  else
    fail(errc::invalid_input, "shortcut_tour: walk is not closed");

  std::vector<int> order;
  std::vector<char> seen(n, 0);
  int v = start;
  seen[v] = 1;
  order.push_back(v);
  for (int e : circuit) {
    require(g.edge_has(e, v), errc::invalid_input,
            "shortcut_tour: consecutive edges do not share a vertex");
    v = g.other_end(e, v);
    if (!seen[v]) {
      seen[v] = 1;
      order.push_back(v);
    }
  }
  require(v == start, errc::invalid_input, "shortcut_tour: walk is not closed");
  require(static_cast<int>(order.size()) == n, errc::invalid_input,
          "shortcut_tour: circuit does not span all vertices");
  return Tour{order, tour_length(g, order)};
}

namespace {

std::vector<int> bfs_row(const Multigraph& g, int src) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<int> queue{src};
  dist[src] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (const auto& in : g.incident(v))
      if (dist[in.to] == -1) {
        dist[in.to] = dist[v] + 1;
        queue.push_back(in.to);
      }
  }
  return dist;
}

}  // namespace

DistanceOracle::DistanceOracle(const Multigraph& g)
    : g_(&g), rows_(g.vertex_count()) {}

const std::vector<int>& DistanceOracle::row(int u) {
  if (rows_[u].empty()) rows_[u] = bfs_row(*g_, u);
  return rows_[u];
}

int DistanceOracle::distance(int u, int v) {
  int d = row(u)[v];
  require(d >= 0, errc::disconnected, "vertices are not connected");
  return d;
}

int metric_distance(const Multigraph& g, int u, int v) {
  require(u >= 0 && u < g.vertex_count() && v >= 0 && v < g.vertex_count(),
          errc::invalid_input, "vertex out of range");
  int d = bfs_row(g, u)[v];
  require(d >= 0, errc::disconnected, "vertices are not connected");
  return d;
}

std::int64_t tour_length(const Multigraph& g, const std::vector<int>& order) {
  int n = g.vertex_count();
  require(static_cast<int>(order.size()) == n, errc::invalid_input,
          "tour must visit every vertex exactly once");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    require(v >= 0 && v < n && !seen[v], errc::invalid_input,
            "tour is not a permutation");
    seen[v] = 1;
  }
  if (n <= 1) return 0;
  DistanceOracle oracle(g);
  std::int64_t len = 0;
  for (int i = 0; i < n; ++i) len += oracle.distance(order[i], order[(i + 1) % n]);
  return len;
}

Multigraph read_graph(std::istream& in) {
  std::string line;
  std::vector<std::string> data_lines;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    data_lines.push_back(line);
  }
  require(!data_lines.empty(), errc::invalid_input, "empty graph file");
  std::istringstream head(data_lines[0]);
  long long n = -1, m = -1;
  head >> n >> m;
  require(head && n >= 0 && m >= 0, errc::invalid_input,
          "bad graph header, expected 'n m'");
  require(static_cast<long long>(data_lines.size()) == m + 1,
          errc::invalid_input, "edge line count does not match header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (long long i = 1; i <= m; ++i) {
    std::istringstream es(data_lines[i]);
    long long u = -1, v = -1;
    es >> u >> v;
    require(es && u >= 0 && v >= 0, errc::invalid_input, "bad edge line");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  return Multigraph(static_cast<int>(n), std::move(edges));
}

Multigraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::invalid_input, "cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Multigraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_graph_file(const std::string& path, const Multigraph& g) {
  std::ofstream out(path);
  require(out.good(), errc::invalid_input, "cannot open file for writing: " + path);
  write_graph(out, g);
  out.flush();
  require(out.good(), errc::invalid_input, "write failed: " + path);
}

}  // namespace graphtsp
