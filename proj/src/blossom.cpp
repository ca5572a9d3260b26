#include "tsdec/blossom.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "tsdec/errors.hpp"

namespace tsdec {

namespace {

// Maximum-weight general matching, primal-dual with blossoms. Internals are
// 1-indexed; ids above n_ denote contracted blossoms. Labels are stored at
// twice the dual scale so all slack arithmetic stays integral.
class MaxWeightMatcher {
 public:
  explicit MaxWeightMatcher(const std::vector<std::vector<std::int64_t>>& w) {
    n_ = static_cast<int>(w.size());
    sz_ = 2 * n_ + 1;
    g_.assign(static_cast<std::size_t>(sz_) * sz_, Edge{});
    for (int u = 1; u <= n_; ++u) {
      for (int v = 1; v <= n_; ++v) {
        at(u, v) = Edge{u, v, u == v ? 0 : w[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(v - 1)]};
      }
    }
    lab_.assign(sz_, 0);
    match_.assign(sz_, 0);
    slack_.assign(sz_, 0);
    st_.assign(sz_, 0);
    pa_.assign(sz_, 0);
    s_.assign(sz_, -1);
    vis_.assign(sz_, 0);
    flower_.assign(sz_, {});
    flower_from_.assign(static_cast<std::size_t>(sz_) * (n_ + 1), 0);
  }

  // Returns mate[] (1-indexed, 0 = unmatched).
  std::vector<int> solve() {
    n_x_ = n_;
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flower_[u].clear();
    }
    for (int u = 1; u <= n_; ++u) {
      for (int v = 1; v <= n_; ++v) {
        from(u, v) = (u == v ? u : 0);
      }
    }
    // Per-vertex dual start: half the heaviest incident weight (times two on
    // the doubled scale). Feasible, and makes mutually-heaviest edges tight.
    for (int u = 1; u <= n_; ++u) {
      std::int64_t best = 0;
      for (int v = 1; v <= n_; ++v) {
        if (v != u) best = std::max(best, at(u, v).w);
      }
      lab_[u] = best;
    }
    greedy_init();
    while (matching()) {
    }
    return match_;
  }

 private:
  struct Edge {
    int u = 0;
    int v = 0;
    std::int64_t w = 0;
  };

  Edge& at(int u, int v) { return g_[static_cast<std::size_t>(u) * sz_ + v]; }
  int& from(int b, int x) { return flower_from_[static_cast<std::size_t>(b) * (n_ + 1) + x]; }

  std::int64_t e_delta(const Edge& e) const {
    return lab_[e.u] + lab_[e.v] - g_[static_cast<std::size_t>(e.u) * sz_ + e.v].w * 2;
  }

  void greedy_init() {
    for (int u = 1; u <= n_; ++u) {
      if (match_[u]) continue;
      int best = 0;
      for (int v = 1; v <= n_; ++v) {
        if (v == u || match_[v]) continue;
        if (best == 0 || at(u, v).w > at(u, best).w) best = v;
      }
      if (best != 0 && e_delta(at(u, best)) == 0) {
        match_[u] = best;
        match_[best] = u;
      }
    }
  }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(at(u, x)) < e_delta(at(slack_[x], x))) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u) {
      if (at(u, x).w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
    }
  }

  void q_push(int x) {
    if (x <= n_) {
      q_.push_back(x);
    } else {
      for (int i : flower_[x]) q_push(i);
    }
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_) {
      for (int i : flower_[x]) set_st(i, b);
    }
  }

  int get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) - flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = at(u, v).v;
    if (u <= n_) return;
    Edge e = at(u, v);
    int xr = from(u, e.u);
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][static_cast<std::size_t>(i)], flower_[u][static_cast<std::size_t>(i ^ 1)]);
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
    for (++vis_stamp_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == vis_stamp_) return u;
      vis_[u] = vis_stamp_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
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
    for (int x = 1; x <= n_x_; ++x) {
      at(b, x).w = 0;
      at(x, b).w = 0;
    }
    for (int x = 1; x <= n_; ++x) from(b, x) = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x) {
        if (at(b, x).w == 0 || e_delta(at(xs, x)) < e_delta(at(b, x))) {
          at(b, x) = at(xs, x);
          at(x, b) = at(x, xs);
        }
      }
      for (int x = 1; x <= n_; ++x) {
        if (from(xs, x)) from(b, x) = xs;
      }
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int piece : flower_[b]) set_st(piece, piece);
    int xr = from(b, at(b, pa_[b]).u);
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower_[b][static_cast<std::size_t>(i)];
      int xns = flower_[b][static_cast<std::size_t>(i) + 1];
      pa_[xs] = at(xns, xs).u;
      s_[xs] = 1;
      s_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < flower_[b].size(); ++i) {
      int xs = flower_[b][i];
      s_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Edge& e) {
    int u = st_[e.u];
    int v = st_[e.v];
    if (s_[v] == -1) {
      pa_[v] = e.u;
      s_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = 0;
      slack_[nu] = 0;
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

  bool matching() {
    std::fill(s_.begin(), s_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
    q_.clear();
    for (int x = 1; x <= n_x_; ++x) {
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        s_[x] = 0;
        q_push(x);
      }
    }
    if (q_.empty()) return false;
    for (;;) {
      while (!q_.empty()) {
        int u = q_.front();
        q_.pop_front();
        if (s_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v) {
          if (at(u, v).w > 0 && st_[u] != st_[v]) {
            if (e_delta(at(u, v)) == 0) {
              if (on_found_edge(at(u, v))) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
        }
      }
      std::int64_t d = std::numeric_limits<std::int64_t>::max();
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
      }
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[x] == x && slack_[x]) {
          if (s_[x] == -1) {
            d = std::min(d, e_delta(at(slack_[x], x)));
          } else if (s_[x] == 0) {
            d = std::min(d, e_delta(at(slack_[x], x)) / 2);
          }
        }
      }
      for (int u = 1; u <= n_; ++u) {
        if (s_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;  // a free dual would go nonpositive
          lab_[u] -= d;
        } else if (s_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b) {
          if (s_[b] == 0) {
            lab_[b] += d * 2;
          } else if (s_[b] == 1) {
            lab_[b] -= d * 2;
          }
        }
      }
      q_.clear();
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && e_delta(at(slack_[x], x)) == 0) {
          if (on_found_edge(at(slack_[x], x))) return true;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
      }
    }
  }

  int n_ = 0;
  int n_x_ = 0;
  int sz_ = 0;
  std::vector<Edge> g_;
  std::vector<std::int64_t> lab_;
  std::vector<int> match_, slack_, st_, pa_, s_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<int> flower_from_;
  std::deque<int> q_;
  int vis_stamp_ = 0;
};

}  // namespace

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<std::int64_t>>& dist) {
  const int n = static_cast<int>(dist.size());
  if (n == 0) return {};
  if (n % 2 != 0) throw InvariantViolation("perfect matching needs an even vertex count");

  std::int64_t max_w = 0;
  for (const auto& row : dist) {
    for (std::int64_t w : row) max_w = std::max(max_w, w);
  }
  // Maximize BIG - w: any perfect matching then outweighs any non-perfect
  // one, so the maximum-weight matching is a minimum-cost perfect matching.
  const std::int64_t big = max_w * (n / 2) + 1;
  std::vector<std::vector<std::int64_t>> w(static_cast<std::size_t>(n),
                                           std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = big - dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    }
  }

  MaxWeightMatcher matcher(w);
  std::vector<int> mate1 = matcher.solve();
  std::vector<int> mate(static_cast<std::size_t>(n), -1);
  for (int u = 1; u <= n; ++u) {
    if (mate1[static_cast<std::size_t>(u)] == 0) {
      throw InvariantViolation("matching is not perfect");
    }
    mate[static_cast<std::size_t>(u - 1)] = mate1[static_cast<std::size_t>(u)] - 1;
  }
  for (int u = 0; u < n; ++u) {
    if (mate[static_cast<std::size_t>(u)] == u || mate[static_cast<std::size_t>(mate[static_cast<std::size_t>(u)])] != u) {
      throw InvariantViolation("matching structure corrupt");
    }
  }
  return mate;
}

}  // namespace tsdec
