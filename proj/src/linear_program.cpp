#include "remez/linear_program.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace remez::lp {
namespace {

constexpr double kEps = 1e-11;

class Tableau {
 public:
  Tableau(const std::vector<double>& c, const std::vector<std::vector<double>>& M,
          const std::vector<double>& h)
      : rows_(h.size()), cols_(c.size()), basic_(rows_), nonbasic_(cols_ + 1),
        D_(rows_ + 2, std::vector<double>(cols_ + 2, 0.0)) {
    for (int i = 0; i < rows_; ++i) {
      if (static_cast<int>(M[i].size()) != cols_) throw std::invalid_argument("lp: ragged constraint matrix");
      for (int j = 0; j < cols_; ++j) D_[i][j] = M[i][j];
      basic_[i] = cols_ + i;
      D_[i][cols_] = -1.0;
      D_[i][cols_ + 1] = h[i];
    }
    for (int j = 0; j < cols_; ++j) {
      nonbasic_[j] = j;
      D_[rows_][j] = -c[j];
    }
    nonbasic_[cols_] = -1;
    D_[rows_ + 1][cols_] = 1.0;
  }

  Solution solve() {
    Solution out;
    int r = 0;
    for (int i = 1; i < rows_; ++i)
      if (D_[i][cols_ + 1] < D_[r][cols_ + 1]) r = i;
    if (rows_ > 0 && D_[r][cols_ + 1] < -kEps) {
      pivot(r, cols_);
      if (!simplex(1) || D_[rows_ + 1][cols_ + 1] < -kEps) {
        out.status = Status::infeasible;
        return out;
      }
      for (int i = 0; i < rows_; ++i) {
        if (basic_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j <= cols_; ++j)
          if (s == -1 || D_[i][j] < D_[i][s] || (D_[i][j] == D_[i][s] && nonbasic_[j] < nonbasic_[s])) s = j;
        pivot(i, s);
      }
    }
    if (!simplex(2)) {
      out.status = Status::unbounded;
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
    out.status = Status::optimal;
    out.y.assign(cols_, 0.0);
    for (int i = 0; i < rows_; ++i)
      if (basic_[i] >= 0 && basic_[i] < cols_) out.y[basic_[i]] = D_[i][cols_ + 1];
    out.value = D_[rows_][cols_ + 1];
    return out;
  }

 private:
  void pivot(int r, int s) {
    const double inv = 1.0 / D_[r][s];
    for (int i = 0; i < rows_ + 2; ++i) {
      if (i == r) continue;
      for (int j = 0; j < cols_ + 2; ++j)
        if (j != s) D_[i][j] -= D_[r][j] * D_[i][s] * inv;
    }
    for (int j = 0; j < cols_ + 2; ++j)
      if (j != s) D_[r][j] *= inv;
    for (int i = 0; i < rows_ + 2; ++i)
      if (i != r) D_[i][s] *= -inv;
    D_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool simplex(int phase) {
    const int x = phase == 1 ? rows_ + 1 : rows_;
    for (int guard = 0; guard < 100000; ++guard) {
      int s = -1;
      for (int j = 0; j <= cols_; ++j) {
        if (phase == 2 && nonbasic_[j] == -1) continue;
        if (s == -1 || D_[x][j] < D_[x][s] || (D_[x][j] == D_[x][s] && nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (D_[x][s] > -kEps) return true;
      int r = -1;
      for (int i = 0; i < rows_; ++i) {
        if (D_[i][s] < kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = D_[i][cols_ + 1] / D_[i][s];
        const double rhs = D_[r][cols_ + 1] / D_[r][s];
        if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
    throw std::runtime_error("lp: pivot budget exhausted");
  }

  int rows_, cols_;
  std::vector<int> basic_, nonbasic_;
  std::vector<std::vector<double>> D_;
};

}  // namespace

Solution maximize(const std::vector<double>& c, const std::vector<std::vector<double>>& M,
                  const std::vector<double>& h) {
  if (M.size() != h.size()) throw std::invalid_argument("lp: row count mismatch");
  return Tableau(c, M, h).solve();
}

}  // namespace remez::lp
