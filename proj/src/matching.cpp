#include "graphtsp/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace graphtsp {

namespace {

// Dense primal-dual blossom solver for maximum weight matching, cubic time.
// Node ids are 1-based; ids above n denote contracted blossoms. Edge weights
// must be positive; zero marks "no edge".
class BlossomSolver {
 public:
  explicit BlossomSolver(int n)
      : n_(n),
        cap_(n + n / 2 + 2),
        w_(static_cast<std::size_t>(cap_) * cap_, 0),
        eu_(static_cast<std::size_t>(cap_) * cap_, 0),
        ev_(static_cast<std::size_t>(cap_) * cap_, 0),
        lab_(cap_, 0),
        match_(cap_, 0),
        slack_(cap_, 0),
        st_(cap_, 0),
        pa_(cap_, 0),
        s_(cap_, -1),
        vis_(cap_, 0),
        flower_(cap_),
        flower_from_(static_cast<std::size_t>(cap_) * (n + 1), 0) {
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        eu(u, v) = u;
        ev(u, v) = v;
      }
  }

  void set_weight(int u, int v, std::int64_t weight) {
    w(u, v) = w(v, u) = std::max(w(u, v), weight);
  }

  // Runs the solver; match(u) afterwards gives u's partner or 0.
  void solve() {
    n_x_ = n_;
    for (int u = 1; u <= n_; ++u) flower_from(u, u) = u;
    std::int64_t w_max = 0;
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) w_max = std::max(w_max, w(u, v));
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    for (int u = 1; u <= n_; ++u) st_[u] = u;
    while (grow_phase()) {
    }
  }

  int match(int u) const { return match_[u]; }

 private:
  std::int64_t& w(int u, int v) { return w_[idx(u, v)]; }
  int& eu(int u, int v) { return eu_[idx(u, v)]; }
  int& ev(int u, int v) { return ev_[idx(u, v)]; }
  int& flower_from(int b, int x) {
    return flower_from_[static_cast<std::size_t>(b) * (n_ + 1) + x];
  }
  std::size_t idx(int u, int v) const {
    return static_cast<std::size_t>(u) * cap_ + v;
  }

  std::int64_t e_delta(int u, int v) {
    return lab_[eu(u, v)] + lab_[ev(u, v)] - 2 * w(u, v);
  }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(u, x) < e_delta(slack_[x], x)) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (w(u, x) > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_) {
      queue_.push_back(x);
    } else {
      for (int child : flower_[x]) q_push(child);
    }
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int child : flower_[x]) set_st(child, b);
  }

  int get_pr(int b, int xr) {
    auto it = std::find(flower_[b].begin(), flower_[b].end(), xr);
    int pr = static_cast<int>(it - flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = ev(u, v);
    if (u <= n_) return;
    int xr = flower_from(u, eu(u, v));
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
  }

  void augment(int u, int v) {
    for (;;) {
      int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++lca_stamp_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == lca_stamp_) return u;
      vis_[u] = lca_stamp_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  // True when the candidate edge improves the merged blossom row.
  bool better_edge(int cu, int cv, int bu, int bv) {
    if (w(cu, cv) == 0) return false;
    if (w(bu, bv) == 0) return true;
    return e_delta(cu, cv) < e_delta(bu, bv);
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    require(b < cap_, errc::invalid_input, "blossom capacity exceeded");
    lab_[b] = 0;
    s_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) w(b, x) = w(x, b) = 0;
    for (int x = 1; x <= n_; ++x) flower_from(b, x) = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x)
        if (better_edge(xs, x, b, x)) {
          w(b, x) = w(xs, x);
          eu(b, x) = eu(xs, x);
          ev(b, x) = ev(xs, x);
          w(x, b) = w(x, xs);
          eu(x, b) = eu(x, xs);
          ev(x, b) = ev(x, xs);
        }
      for (int x = 1; x <= n_; ++x)
        if (flower_from(xs, x)) flower_from(b, x) = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int child : flower_[b]) set_st(child, child);
    int xr = flower_from(b, eu(b, pa_[b]));
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower_[b][i];
      int xns = flower_[b][i + 1];
      pa_[xs] = eu(xns, xs);
      s_[xs] = 1;
      s_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (std::size_t i = pr + 1; i < flower_[b].size(); ++i) {
      int xs = flower_[b][static_cast<int>(i)];
      s_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(int edge_u, int edge_v) {
    int u = st_[edge_u], v = st_[edge_v];
    if (s_[v] == -1) {
      pa_[v] = edge_u;
      s_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = slack_[nu] = 0;
      s_[nu] = 0;
      q_push(nu);
    } else if (s_[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool grow_phase() {
    std::fill(s_.begin() + 1, s_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
    queue_.clear();
    for (int x = 1; x <= n_x_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        s_[x] = 0;
        q_push(x);
      }
    if (queue_.empty()) return false;

    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    for (;;) {
      while (!queue_.empty()) {
        int u = queue_.front();
        queue_.pop_front();
        if (s_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (w(u, v) > 0 && st_[u] != st_[v]) {
            if (e_delta(u, v) == 0) {
              if (on_found_edge(u, v)) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }
      std::int64_t d = kInf;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (s_[x] == -1)
            d = std::min(d, e_delta(slack_[x], x));
          else if (s_[x] == 0)
            d = std::min(d, e_delta(slack_[x], x) / 2);
        }
      for (int u = 1; u <= n_; ++u) {
        if (s_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;  // dual hit zero: maximum reached
          lab_[u] -= d;
        } else if (s_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b) {
          if (s_[b] == 0)
            lab_[b] += d * 2;
          else if (s_[b] == 1)
            lab_[b] -= d * 2;
        }
      queue_.clear();
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
            e_delta(slack_[x], x) == 0)
          if (on_found_edge(slack_[x], x)) return true;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }

  int n_;
  int cap_;
  int n_x_ = 0;
  int lca_stamp_ = 0;
  std::vector<std::int64_t> w_;
  std::vector<int> eu_, ev_;
  std::vector<std::int64_t> lab_;
  std::vector<int> match_, slack_, st_, pa_, s_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<int> flower_from_;
  std::deque<int> queue_;
};

}  // namespace

std::int64_t matching_weight(const WeightVector& w, const PerfectMatching& m) {
  std::int64_t total = 0;
  for (int e : m.edge_ids) total += w.w[e];
  return total;
}

bool is_perfect_matching(const Multigraph& g, const PerfectMatching& m) {
  std::vector<char> covered(g.vertex_count(), 0);
  for (int e : m.edge_ids) {
    if (e < 0 || e >= g.edge_count()) return false;
    auto [u, v] = g.edge(e);
    if (covered[u] || covered[v]) return false;
    covered[u] = covered[v] = 1;
  }
  for (char c : covered)
    if (!c) return false;
  return true;
}

PerfectMatching min_weight_perfect_matching(const Multigraph& g,
                                            const WeightVector& w) {
  int n = g.vertex_count();
  require(static_cast<int>(w.w.size()) == g.edge_count(), errc::invalid_input,
          "weight vector size mismatch");
  require(n % 2 == 0, errc::no_perfect_matching,
          "odd vertex count admits no perfect matching");
  if (n == 0) return {};

  // A perfect matching never uses two parallel copies and never prefers a
  // heavier one, so keep the cheapest edge per vertex pair.
  std::map<std::pair<int, int>, int> best;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge(e);
    auto key = std::minmax(u, v);
    auto [it, fresh] = best.insert({{key.first, key.second}, e});
    if (!fresh && w.w[e] < w.w[it->second]) it->second = e;
  }
  require(!best.empty(), errc::no_perfect_matching, "graph has no edges");

  std::int64_t w_min = std::numeric_limits<std::int64_t>::max();
  std::int64_t w_max = std::numeric_limits<std::int64_t>::min();
  for (const auto& [pair, e] : best) {
    w_min = std::min(w_min, w.w[e]);
    w_max = std::max(w_max, w.w[e]);
  }
  require(w_max <= (std::int64_t)1e12 && w_min >= -(std::int64_t)1e12,
          errc::invalid_input, "edge weights out of supported range");

  // Transform so that larger is better and perfect matchings dominate all
  // smaller matchings: solved = max weight matching of (w_max - w) + K.
  std::int64_t spread = w_max - w_min;
  std::int64_t bonus = spread * (n / 2) + 1;

  BlossomSolver solver(n);
  for (const auto& [pair, e] : best)
    solver.set_weight(pair.first + 1, pair.second + 1,
                      (w_max - w.w[e]) + bonus);
  solver.solve();

  PerfectMatching result;
  for (int u = 0; u < n; ++u) {
    int mu = solver.match(u + 1);
    require(mu != 0, errc::no_perfect_matching,
            "graph admits no perfect matching");
    int v = mu - 1;
    if (u < v) {
      auto it = best.find({u, v});
      require(it != best.end(), errc::bad_certificate,
              "matched pair without an edge");
      result.edge_ids.push_back(it->second);
    }
  }
  std::sort(result.edge_ids.begin(), result.edge_ids.end());
  require(is_perfect_matching(g, result), errc::bad_certificate,
          "solver returned an invalid matching");
  return result;
}

namespace {

void enumerate_rec(const Multigraph& g, std::vector<char>& covered,
                   std::vector<int>& chosen,
                   std::vector<PerfectMatching>& out) {
  int v = -1;
  for (int i = 0; i < g.vertex_count(); ++i)
    if (!covered[i]) {
      v = i;
      break;
    }
  if (v == -1) {
    out.push_back({chosen});
    return;
  }
  for (const auto& in : g.incident(v)) {
    if (covered[in.to]) continue;
    covered[v] = covered[in.to] = 1;
    chosen.push_back(in.edge);
    enumerate_rec(g, covered, chosen, out);
    chosen.pop_back();
    covered[v] = covered[in.to] = 0;
  }
}

}  // namespace

std::vector<PerfectMatching> enumerate_perfect_matchings(const Multigraph& g,
                                                         int budget) {
  require(g.vertex_count() <= budget, errc::budget_exceeded,
          "enumeration budget exceeded");
  if (g.vertex_count() % 2 != 0) return {};
  std::vector<char> covered(g.vertex_count(), 0);
  std::vector<int> chosen;
  std::vector<PerfectMatching> out;
  enumerate_rec(g, covered, chosen, out);
  for (auto& m : out) std::sort(m.edge_ids.begin(), m.edge_ids.end());
  return out;
}

namespace {

// Connectivity of g with up to three edge ids masked out.
bool connected_without(const Multigraph& g, int e1, int e2, int e3) {
  int n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& in : g.incident(v)) {
      if (in.edge == e1 || in.edge == e2 || in.edge == e3) continue;
      if (!seen[in.to]) {
        seen[in.to] = 1;
        ++cnt;
        stack.push_back(in.to);
      }
    }
  }
  return cnt == n;
}

}  // namespace

bool is_three_cut_matching(const Multigraph& g, const PerfectMatching& m,
                           int budget) {
  int n = g.vertex_count();
  require(n <= budget, errc::budget_exceeded, "3-cut scan budget exceeded");
  for (int v = 0; v < n; ++v)
    require(g.degree(v) == 3, errc::degree_violation,
            "3-cut check requires a cubic graph");
  require(find_bridges(g).empty(), errc::bridge_found,
          "3-cut check requires a bridgeless graph");

  std::vector<char> in_m(g.edge_count(), 0);
  for (int e : m.edge_ids) in_m[e] = 1;

  int me = g.edge_count();
  for (int e1 = 0; e1 < me; ++e1)
    for (int e2 = e1 + 1; e2 < me; ++e2) {
      if (connected_without(g, e1, e2, -1)) {
        for (int e3 = e2 + 1; e3 < me; ++e3) {
          if (connected_without(g, e1, e2, e3)) continue;
          // {e1,e2,e3} disconnects; minimal iff no 2-subset is a cut.
          if (!connected_without(g, e1, e3, -1)) continue;
          if (!connected_without(g, e2, e3, -1)) continue;
          if (in_m[e1] + in_m[e2] + in_m[e3] != 1) return false;
        }
      }
      // If {e1,e2} already disconnects, no triple containing it is minimal.
    }
  return true;
}

}  // namespace graphtsp
