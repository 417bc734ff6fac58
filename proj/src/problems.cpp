#include "mopsoca/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mopsoca {

namespace {

constexpr double kPi = std::numbers::pi;

// x is 0-based here; the CEC 2009 index j is 1-based (j = i + 1).

VectorXd uf1(const VectorXd& x) {
  const auto n = static_cast<double>(x.size());
  double sum1 = 0.0, sum2 = 0.0;
  int count1 = 0, count2 = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    const double j = static_cast<double>(i + 1);
    const double y = x(i) - std::sin(6.0 * kPi * x(0) + j * kPi / n);
    if ((i + 1) % 2 == 1) { sum1 += y * y; ++count1; }
    else { sum2 += y * y; ++count2; }
  }
  VectorXd f(2);
  f << x(0) + 2.0 * sum1 / count1, 1.0 - std::sqrt(x(0)) + 2.0 * sum2 / count2;
  return f;
}

VectorXd uf2(const VectorXd& x) {
  const auto n = static_cast<double>(x.size());
  double sum1 = 0.0, sum2 = 0.0;
  int count1 = 0, count2 = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    const double j = static_cast<double>(i + 1);
    const double amplitude =
        0.3 * x(0) * x(0) * std::cos(24.0 * kPi * x(0) + 4.0 * j * kPi / n) + 0.6 * x(0);
    const double phase = 6.0 * kPi * x(0) + j * kPi / n;
    if ((i + 1) % 2 == 1) {
      const double y = x(i) - amplitude * std::cos(phase);
      sum1 += y * y;
      ++count1;
    } else {
      const double y = x(i) - amplitude * std::sin(phase);
      sum2 += y * y;
      ++count2;
    }
  }
  VectorXd f(2);
  f << x(0) + 2.0 * sum1 / count1, 1.0 - std::sqrt(x(0)) + 2.0 * sum2 / count2;
  return f;
}

VectorXd uf3(const VectorXd& x) {
  const auto n = static_cast<double>(x.size());
  double sum1 = 0.0, sum2 = 0.0, prod1 = 1.0, prod2 = 1.0;
  int count1 = 0, count2 = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    const double j = static_cast<double>(i + 1);
    const double y = x(i) - std::pow(x(0), 0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0)));
    const double c = std::cos(20.0 * y * kPi / std::sqrt(j));
    if ((i + 1) % 2 == 1) { sum1 += y * y; prod1 *= c; ++count1; }
    else { sum2 += y * y; prod2 *= c; ++count2; }
  }
  VectorXd f(2);
  f << x(0) + 2.0 / count1 * (4.0 * sum1 - 2.0 * prod1 + 2.0),
      1.0 - std::sqrt(x(0)) + 2.0 / count2 * (4.0 * sum2 - 2.0 * prod2 + 2.0);
  return f;
}

VectorXd uf10(const VectorXd& x) {
  const auto n = static_cast<double>(x.size());
  double sums[3] = {0.0, 0.0, 0.0};
  int counts[3] = {0, 0, 0};
  for (Eigen::Index i = 2; i < x.size(); ++i) {
    const auto j = i + 1;
    const double y = x(i) - 2.0 * x(1) * std::sin(2.0 * kPi * x(0) + static_cast<double>(j) * kPi / n);
    const double term = 4.0 * y * y - std::cos(8.0 * kPi * y) + 1.0;
    // J1: j-1 multiple of 3, J2: j-2 multiple of 3, J3: j multiple of 3.
    const int group = (j - 1) % 3 == 0 ? 0 : ((j - 2) % 3 == 0 ? 1 : 2);
    sums[group] += term;
    ++counts[group];
  }
  const double a = 0.5 * kPi * x(0);
  const double b = 0.5 * kPi * x(1);
  VectorXd f(3);
  f << std::cos(a) * std::cos(b) + 2.0 * sums[0] / counts[0],
      std::cos(a) * std::sin(b) + 2.0 * sums[1] / counts[1],
      std::sin(a) + 2.0 * sums[2] / counts[2];
  return f;
}

// DTLZ5/DTLZ6 share the angle mapping; only g differs.
VectorXd dtlz_degenerate(const VectorXd& x, std::size_t objectives, double g) {
  const auto m = static_cast<Eigen::Index>(objectives);
  VectorXd theta(m - 1);
  theta(0) = 0.5 * kPi * x(0);
  const double t = kPi / (4.0 * (1.0 + g));
  for (Eigen::Index i = 1; i < m - 1; ++i) theta(i) = t * (1.0 + 2.0 * g * x(i));

  VectorXd f(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double value = 1.0 + g;
    for (Eigen::Index j = 0; j < m - 1 - i; ++j) value *= std::cos(theta(j));
    if (i > 0) value *= std::sin(theta(m - 1 - i));
    f(i) = value;
  }
  return f;
}

VectorXd dtlz5(const VectorXd& x, std::size_t objectives) {
  double g = 0.0;
  for (Eigen::Index i = static_cast<Eigen::Index>(objectives) - 1; i < x.size(); ++i)
    g += (x(i) - 0.5) * (x(i) - 0.5);
  return dtlz_degenerate(x, objectives, g);
}

VectorXd dtlz6(const VectorXd& x, std::size_t objectives) {
  double g = 0.0;
  for (Eigen::Index i = static_cast<Eigen::Index>(objectives) - 1; i < x.size(); ++i)
    g += std::pow(x(i), 0.1);
  return dtlz_degenerate(x, objectives, g);
}

}  // namespace

std::string_view to_string(ProblemId id) {
  switch (id) {
    case ProblemId::UF1: return "UF1";
    case ProblemId::UF2: return "UF2";
    case ProblemId::UF3: return "UF3";
    case ProblemId::UF10: return "UF10";
    case ProblemId::DTLZ5: return "DTLZ5";
    case ProblemId::DTLZ6: return "DTLZ6";
  }
  return "?";
}

ProblemId parse_problem_id(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (ProblemId id : kAllProblems)
    if (upper == to_string(id)) return id;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

Problem::Problem(ProblemId id, std::size_t dimension) : id_(id) {
  const bool uf = id == ProblemId::UF1 || id == ProblemId::UF2 || id == ProblemId::UF3 ||
                  id == ProblemId::UF10;
  objectives_ = (id == ProblemId::UF1 || id == ProblemId::UF2 || id == ProblemId::UF3) ? 2 : 3;
  const std::size_t n = dimension != 0 ? dimension : (uf ? 30 : objectives_ + 9);
  require(n >= objectives_ + 1, "Problem: decision dimension too small");
  const auto dim = static_cast<Eigen::Index>(n);

  bounds_.lower = VectorXd::Zero(dim);
  bounds_.upper = VectorXd::Ones(dim);
  switch (id) {
    case ProblemId::UF1:
    case ProblemId::UF2:
      bounds_.lower.tail(dim - 1).setConstant(-1.0);
      break;
    case ProblemId::UF10:
      bounds_.lower.tail(dim - 2).setConstant(-2.0);
      bounds_.upper.tail(dim - 2).setConstant(2.0);
      break;
    default:
      break;
  }
}

VectorXd Problem::evaluate(const VectorXd& x) const {
  require(x.size() == bounds_.size(), "evaluate: decision vector has wrong length");
  require(bounds_.contains(x), "evaluate: decision vector outside bounds");
  switch (id_) {
    case ProblemId::UF1: return uf1(x);
    case ProblemId::UF2: return uf2(x);
    case ProblemId::UF3: return uf3(x);
    case ProblemId::UF10: return uf10(x);
    case ProblemId::DTLZ5: return dtlz5(x, objectives_);
    case ProblemId::DTLZ6: return dtlz6(x, objectives_);
  }
  throw std::logic_error("unreachable");
}

std::vector<VectorXd> Problem::true_front_sample(std::size_t m) const {
  require(m >= 2, "true_front_sample: need at least two points");
  std::vector<VectorXd> points;
  const double last = static_cast<double>(m - 1);
  switch (id_) {
    case ProblemId::UF1:
    case ProblemId::UF2:
    case ProblemId::UF3:
      // Even steps in sqrt(f1) keep the steep end near f1 = 0 from being undersampled.
      for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) / last;
        points.emplace_back(VectorXd{{t * t, 1.0 - t}});
      }
      break;
    case ProblemId::DTLZ5:
    case ProblemId::DTLZ6:
      for (std::size_t i = 0; i < m; ++i) {
        const double t = 0.5 * kPi * static_cast<double>(i) / last;
        const double c = std::cos(t) / std::numbers::sqrt2;
        points.emplace_back(VectorXd{{c, c, std::sin(t)}});
      }
      break;
    case ProblemId::UF10: {
      std::size_t h = 1;
      while ((h + 2) * (h + 3) / 2 <= m) ++h;
      for (std::size_t i = 0; i <= h; ++i) {
        for (std::size_t j = 0; i + j <= h; ++j) {
          VectorXd w{{static_cast<double>(i), static_cast<double>(j),
                      static_cast<double>(h - i - j)}};
          points.push_back(w.normalized());
        }
      }
      if (points.size() > m) points.resize(m);
      break;
    }
  }
  return points;
}

double distance_to_dtlz5_curve(const VectorXd& f) {
  require(f.size() == 3, "distance_to_dtlz5_curve: expects three objectives");
  // The curve is a quarter unit circle in the plane spanned by u = (1,1,0)/sqrt2 and e3.
  const double a = (f(0) + f(1)) / std::numbers::sqrt2;
  const double b = f(2);
  const double t = std::clamp(std::atan2(b, a), 0.0, 0.5 * kPi);
  const VectorXd nearest{{std::cos(t) / std::numbers::sqrt2, std::cos(t) / std::numbers::sqrt2,
                          std::sin(t)}};
  return (f - nearest).norm();
}

}  // namespace mopsoca
