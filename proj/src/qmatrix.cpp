#include "clusterflow/qmatrix.hpp"

#include <sstream>

namespace clusterflow {

QMatrix to_qmatrix(const ExchangeMatrix& b) {
  QMatrix m(b.size(), b.size());
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) m(i, j) = Rat(b(b.lo() + i, b.lo() + j));
  return m;
}

QMatrix diagonal(const std::vector<int>& d) {
  const int n = static_cast<int>(d.size());
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Rat(d[static_cast<std::size_t>(i)]);
  return m;
}

std::string format(const QMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[[" : " [");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << (i + 1 == m.rows() ? "]]" : "]\n");
  }
  return os.str();
}

}  // namespace clusterflow
