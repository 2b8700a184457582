#ifndef PERFECTCHAIN_TESTS_SUPPORT_HPP
#define PERFECTCHAIN_TESTS_SUPPORT_HPP

#include "perfectchain/jacobi.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

inline std::string golden_dir() {
  if (const char* env = std::getenv("PERFECTCHAIN_GOLDEN_DIR")) return env;
  return PERFECTCHAIN_DEFAULT_GOLDEN_DIR;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Eigen::MatrixXd dense(const perfectchain::JacobiMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.order());
  const auto d = m.dense();
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = d[static_cast<std::size_t>(i * n + j)];
  return a;
}

// Independent dense eigenvalue oracle.
inline std::vector<double> dense_eigenvalues(const perfectchain::JacobiMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(m), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace testsupport

#endif
