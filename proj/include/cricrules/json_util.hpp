#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace cricrules {

/// Rounds to 12 significant digits so exported numbers are stable across
/// platforms whose last-ulp results differ.
inline double round12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no "-0"
}

inline nlohmann::json json_vector(const Eigen::VectorXd& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(round12(v(i)));
  return out;
}

inline nlohmann::json json_matrix(const Eigen::MatrixXd& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(round12(m(i, k)));
    out.push_back(row);
  }
  return out;
}

}  // namespace cricrules
