#include "singconv/numeric.hpp"

#include <sstream>
#include <stdexcept>

namespace singconv {

int row_reduce(QMat& m, int cols) {
  int rows = static_cast<int>(m.size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    Rat inv = m[rank][col];
    for (auto& x : m[rank]) x /= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

int rank_of(QMat m, int cols) { return row_reduce(m, cols); }

std::optional<QVec> solve_square(QMat a, QVec b) {
  int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
  int rank = row_reduce(a, n);
  if (rank < n) return std::nullopt;
  QVec x(n);
  // after full reduction the system is the identity with the solution appended
  for (int i = 0; i < n; ++i) {
    int lead = -1;
    for (int c = 0; c < n; ++c)
      if (a[i][c] != 0) { lead = c; break; }
    if (lead < 0) return std::nullopt;
    x[lead] = a[i][n];
  }
  return x;
}

std::vector<QVec> nullspace(QMat m, int cols) {
  int rank = row_reduce(m, cols);
  std::vector<int> lead_col(rank, -1);
  std::vector<bool> is_lead(cols, false);
  for (int r = 0; r < rank; ++r) {
    for (int c = 0; c < cols; ++c)
      if (m[r][c] != 0) { lead_col[r] = c; is_lead[c] = true; break; }
  }
  std::vector<QVec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_lead[free]) continue;
    QVec v(cols, Rat(0));
    v[free] = 1;
    for (int r = 0; r < rank; ++r)
      if (lead_col[r] >= 0) v[lead_col[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank_z(const std::vector<ZVec>& vs) {
  if (vs.empty()) return 0;
  QMat m;
  m.reserve(vs.size());
  for (const auto& v : vs) m.push_back(to_qvec(v));
  return rank_of(std::move(m), static_cast<int>(vs[0].size()));
}

std::string rat_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

}  // namespace singconv
