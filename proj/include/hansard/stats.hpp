#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hansard/errors.hpp"
#include "hansard/tsv.hpp"
#include "hansard/wordfish.hpp"  // format_real

// Validation statistics: simple OLS of an outcome on estimated positions,
// Pearson correlation with a two-sided p-value, and label joins against
// external series. The t-distribution tail is computed from the
// regularized incomplete beta function so there is no stats dependency
// and the numbers are stable to the last digit.

namespace hansard {

struct PairedSeries {
  std::vector<std::string> labels;
  std::vector<double> x;
  std::vector<double> y;

  void validate() const {
    if (labels.size() != x.size() || x.size() != y.size())
      throw InvariantViolation("paired series: unequal lengths");
    for (double v : x)
      if (!std::isfinite(v)) throw InvariantViolation("paired series: non-finite x");
    for (double v : y)
      if (!std::isfinite(v)) throw InvariantViolation("paired series: non-finite y");
  }
};

struct RegressionFit {
  double beta0 = 0.0;  // intercept
  double beta1 = 0.0;  // slope
  double r = 0.0;      // Pearson correlation
  double p_value = 1.0;  // two-sided
  std::size_t n = 0;
  std::vector<double> residuals;
};

namespace stats_detail {

// Continued fraction for the incomplete beta (Lentz's method).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace stats_detail

// Regularized incomplete beta I_x(a, b). The continued fraction is
// evaluated on whichever tail converges fast; target accuracy 1e-10.
inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * stats_detail::betacf(a, b, x) / a;
  }
  return 1.0 - front * stats_detail::betacf(b, a, 1.0 - x) / b;
}

// P(T <= t) for Student's t with nu degrees of freedom.
inline double student_t_cdf(double t, double nu) {
  const double x = nu / (nu + t * t);
  const double tail = 0.5 * incomplete_beta(nu / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

// Two-sided p for the correlation test: t = r sqrt(n-2) / sqrt(1-r^2)
// against t_{n-2}. Exactly collinear data gets the smallest positive
// double rather than 0 so the p-value stays in (0, 1].
inline double pearson_p_value(double r, std::size_t n) {
  if (n < 3) throw TooFewPoints("p-value needs n >= 3");
  const double one_minus_r2 = (1.0 - r) * (1.0 + r);
  if (one_minus_r2 < 1e-15) return std::numeric_limits<double>::min();
  const double t = std::abs(r) * std::sqrt(static_cast<double>(n - 2)) /
                   std::sqrt(one_minus_r2);
  const double nu = static_cast<double>(n - 2);
  const double p = incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
  return std::max(p, std::numeric_limits<double>::min());
}

inline RegressionFit ols(const PairedSeries& s) {
  s.validate();
  const std::size_t n = s.x.size();
  if (n < 3) throw TooFewPoints("ols needs n >= 3, got " + std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += s.x[i];
    my += s.y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (s.x[i] - mx) * (s.x[i] - mx);
    syy += (s.y[i] - my) * (s.y[i] - my);
    sxy += (s.x[i] - mx) * (s.y[i] - my);
  }
  if (sxx <= 0.0)
    throw ZeroVariance("ols: regressor has zero variance");

  RegressionFit fit;
  fit.n = n;
  fit.beta1 = sxy / sxx;
  fit.beta0 = my - fit.beta1 * mx;
  if (syy <= 0.0) {
    // Constant outcome: the fitted line is flat and exact.
    fit.r = 0.0;
    fit.p_value = 1.0;
  } else {
    fit.r = sxy / std::sqrt(sxx * syy);
    fit.r = std::max(-1.0, std::min(1.0, fit.r));
    fit.p_value = pearson_p_value(fit.r, n);
  }
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    fit.residuals[i] = s.y[i] - fit.beta0 - fit.beta1 * s.x[i];
  return fit;
}

struct JoinedRegression {
  RegressionFit fit;
  PairedSeries joined;                     // in positions order
  std::vector<std::string> unjoined_positions;
  std::vector<std::string> unjoined_series;
};

// Inner-join positions to an outcome series by label, then regress the
// outcome on the position. join maps position labels to series labels;
// labels missing from the map join onto themselves.
inline JoinedRegression correlate_with_series(
    const std::vector<std::pair<std::string, double>>& positions,
    const std::vector<std::pair<std::string, double>>& series,
    const std::map<std::string, std::string>& join = {}) {
  std::map<std::string, double> series_by_label;
  std::set<std::string> series_used;
  for (const auto& [label, value] : series) series_by_label[label] = value;

  JoinedRegression out;
  for (const auto& [label, x] : positions) {
    auto mapped = join.count(label) ? join.at(label) : label;
    auto it = series_by_label.find(mapped);
    if (it == series_by_label.end()) {
      out.unjoined_positions.push_back(label);
      continue;
    }
    series_used.insert(mapped);
    out.joined.labels.push_back(label);
    out.joined.x.push_back(x);
    out.joined.y.push_back(it->second);
  }
  for (const auto& [label, _] : series) {
    if (!series_used.count(label)) out.unjoined_series.push_back(label);
  }
  if (out.joined.labels.size() < 3)
    throw InsufficientOverlap("join produced " +
                              std::to_string(out.joined.labels.size()) +
                              " pairs; need at least 3");
  out.fit = ols(out.joined);
  return out;
}

// Keeps only the labels in `keep`, preserving order. Labels not present
// in the series violate the contract and are reported.
inline PairedSeries subset_filter(const PairedSeries& s,
                                  const std::set<std::string>& keep) {
  s.validate();
  std::set<std::string> have(s.labels.begin(), s.labels.end());
  for (const auto& k : keep) {
    if (!have.count(k))
      throw InvariantViolation("subset_filter: label '" + k +
                               "' not in series");
  }
  PairedSeries out;
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    if (!keep.count(s.labels[i])) continue;
    out.labels.push_back(s.labels[i]);
    out.x.push_back(s.x[i]);
    out.y.push_back(s.y[i]);
  }
  if (out.labels.empty()) throw EmptyResult("subset_filter kept nothing");
  return out;
}

// ---- interchange --------------------------------------------------------

// Series files are TSV (label, value).
inline std::vector<std::pair<std::string, double>> load_series(
    const std::string& path) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& row : tsv::read_table(path, {"label", "value"})) {
    out.emplace_back(row[0], std::stod(row[1]));
  }
  return out;
}

inline std::string regression_report_tsv(const RegressionFit& fit) {
  std::string out = tsv::join_row({"statistic", "value"});
  out += tsv::join_row({"n", std::to_string(fit.n)});
  out += tsv::join_row({"beta0", format_real(fit.beta0)});
  out += tsv::join_row({"beta1", format_real(fit.beta1)});
  out += tsv::join_row({"r", format_real(fit.r)});
  out += tsv::join_row({"p_value", format_real(fit.p_value)});
  return out;
}

inline std::string regression_summary_text(const std::string& title,
                                           const RegressionFit& fit) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s: n=%zu  fit y = %.4f + %.4f x  r=%.4f  p=%.4g\n",
                title.c_str(), fit.n, fit.beta0, fit.beta1, fit.r,
                fit.p_value);
  return buf;
}

// Scatter data (x, y, fitted) for external plotting.
inline std::string scatter_tsv(const PairedSeries& s, const RegressionFit& fit) {
  std::string out = tsv::join_row({"label", "x", "y", "fitted"});
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    out += tsv::join_row({s.labels[i], format_real(s.x[i]), format_real(s.y[i]),
                          format_real(fit.beta0 + fit.beta1 * s.x[i])});
  }
  return out;
}

}  // namespace hansard
