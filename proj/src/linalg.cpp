#include "shadowlab/linalg.hpp"

namespace shadowlab {

Rat dot(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "dot: lengths differ");
  Rat sum = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) sum += a(i) * b(i);
  return sum;
}

namespace {

// Forward elimination on an n x w augmented matrix; returns false when the
// leading n x n block is singular.
bool eliminate(RMat& aug, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row) {
      if (aug(row, col) != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) return false;
    if (pivot != col) aug.row(pivot).swap(aug.row(col));
    const Rat inv = Rat(1) / aug(col, col);
    aug.row(col) *= inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || aug(row, col) == 0) continue;
      aug.row(row) -= aug(row, col) * aug.row(col);
    }
  }
  return true;
}

}  // namespace

std::optional<RVec> solve_linear(const RMat& m, const RVec& rhs) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) fail(Errc::dimension_mismatch, "solve_linear: matrix not square");
  if (rhs.size() != n) fail(Errc::dimension_mismatch, "solve_linear: rhs length mismatch");
  RMat aug(n, n + 1);
  aug.leftCols(n) = m;
  aug.col(n) = rhs;
  if (!eliminate(aug, n)) return std::nullopt;
  return RVec(aug.col(n));
}

std::optional<RMat> invert(const RMat& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) fail(Errc::dimension_mismatch, "invert: matrix not square");
  RMat aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity(n);
  if (!eliminate(aug, n)) return std::nullopt;
  return RMat(aug.rightCols(n));
}

int rank(const RMat& m) {
  RMat work = m;
  const int rows = static_cast<int>(work.rows());
  const int cols = static_cast<int>(work.cols());
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int pivot = -1;
    for (int row = r; row < rows; ++row) {
      if (work(row, col) != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) work.row(pivot).swap(work.row(r));
    const Rat inv = Rat(1) / work(r, col);
    work.row(r) *= inv;
    for (int row = 0; row < rows; ++row) {
      if (row == r || work(row, col) == 0) continue;
      work.row(row) -= work(row, col) * work.row(r);
    }
    ++r;
  }
  return r;
}

RMat identity(int n) {
  RMat out = RMat::Zero(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RVec unit_vector(int n, int i) {
  RVec out = RVec::Zero(n);
  out(i) = 1;
  return out;
}

RVec zero_vector(int n) { return RVec::Zero(n); }

Rat linf_norm(const RVec& v) {
  Rat best = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Rat a = v(i) < 0 ? Rat(-v(i)) : v(i);
    if (a > best) best = a;
  }
  return best;
}

Rat l1_norm(const RVec& v) {
  Rat sum = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += (v(i) < 0 ? Rat(-v(i)) : v(i));
  return sum;
}

bool positive_multiple(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) return false;
  std::optional<Rat> t;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) == 0) {
      if (b(i) != 0) return false;
      continue;
    }
    const Rat ratio = b(i) / a(i);
    if (ratio <= 0) return false;
    if (t && *t != ratio) return false;
    t = ratio;
  }
  return t.has_value();
}

}  // namespace shadowlab
