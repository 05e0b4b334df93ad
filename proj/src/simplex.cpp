#include "graphtsp/simplex.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace graphtsp {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Tableau simplex with Bland-style index tie-breaking on equal ratios.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& a,
          const std::vector<double>& b, const std::vector<double>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        nonbasic_(n_ + 1),
        basic_(m_),
        d_(m_ + 2, std::vector<double>(n_ + 2)) {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) d_[i][j] = a[i][j];
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      d_[i][n_] = -1;
      d_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1;
  }

  double solve(std::vector<double>& x) {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (d_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!simplex(2) || d_[m_ + 1][n_ + 1] < -kEps) return -kInf;
      for (int i = 0; i < m_; ++i)
        if (basic_[i] == -1) {
          int s = 0;
          for (int j = 1; j <= n_; ++j)
            if (s == -1 || std::make_pair(d_[i][j], nonbasic_[j]) <
                               std::make_pair(d_[i][s], nonbasic_[s]))
              s = j;
          pivot(i, s);
        }
    }
    bool ok = simplex(1);
    x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basic_[i] < n_) x[basic_[i]] = d_[i][n_ + 1];
    return ok ? d_[m_][n_ + 1] : kInf;
  }

 private:
  void pivot(int r, int s) {
    double* a = d_[r].data();
    double inv = 1.0 / a[s];
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r && std::fabs(d_[i][s]) > kEps) {
        double* b = d_[i].data();
        double inv2 = b[s] * inv;
        for (int j = 0; j < n_ + 2; ++j) b[j] -= a[j] * inv2;
        b[s] = a[s] * inv2;
      }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) d_[r][j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) d_[i][s] *= -inv;
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool simplex(int phase) {
    int x = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j < n_ + 1; ++j)
        if (nonbasic_[j] != -phase)
          if (s == -1 || std::make_pair(d_[x][j], nonbasic_[j]) <
                             std::make_pair(d_[x][s], nonbasic_[s]))
            s = j;
      if (d_[x][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_[i][s] <= kEps) continue;
        if (r == -1 || std::make_pair(d_[i][n_ + 1] / d_[i][s], basic_[i]) <
                           std::make_pair(d_[r][n_ + 1] / d_[r][s], basic_[r]))
          r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> nonbasic_, basic_;
  std::vector<std::vector<double>> d_;
};

}  // namespace

LpResult lp_maximize(const std::vector<std::vector<double>>& a,
                     const std::vector<double>& b,
                     const std::vector<double>& c) {
  LpResult res;
  Tableau tab(a, b, c);
  double v = tab.solve(res.x);
  if (v == -kInf) {
    res.status = LpResult::Status::infeasible;
  } else if (v == kInf) {
    res.status = LpResult::Status::unbounded;
  } else {
    res.status = LpResult::Status::optimal;
    res.value = v;
  }
  return res;
}

}  // namespace graphtsp
