#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hansard/dtm.hpp"
#include "hansard/errors.hpp"
#include "hansard/parallel.hpp"
#include "hansard/random.hpp"
#include "hansard/tsv.hpp"

// Poisson scaling of documents onto one latent dimension. Counts are
// modelled as y_ij ~ Poisson(exp(alpha_i + psi_j + beta_j * omega_i)):
// a document length effect, a word frequency effect, a word weight and
// the document position. Estimation alternates exact per-document and
// per-term Newton maximizations; after every sweep the scale is pinned
// by centering/scaling omega, zeroing the anchor document's alpha and
// orienting the sign with a left/right document pair.

namespace hansard {

struct WordfishOptions {
  std::string left_anchor;   // document label forced to the lower side
  std::string right_anchor;  // document label forced to the upper side
  double tol = 1e-6;         // relative log-likelihood change
  int max_iter = 500;        // full sweeps
  std::uint64_t seed = 42;   // seeds the start vector of the omega init
  unsigned threads = 0;      // 0 = max_threads()
};

struct WordfishFit {
  std::vector<std::string> docs;
  std::vector<std::string> terms;
  std::vector<double> alpha;  // per document, anchor document pinned to 0
  std::vector<double> omega;  // per document, mean 0 and sd 1
  std::vector<double> psi;    // per term
  std::vector<double> beta;   // per term
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> loglik_trace;  // one entry per sweep, post-identification
};

struct WordfishGradient {
  std::vector<double> alpha;
  std::vector<double> omega;
  std::vector<double> psi;
  std::vector<double> beta;
};

namespace wf_detail {

inline void check_dims(const CountMatrix& m, std::size_t alpha, std::size_t psi,
                       std::size_t beta, std::size_t omega) {
  if (alpha != m.n_docs() || omega != m.n_docs() || psi != m.n_terms() ||
      beta != m.n_terms()) {
    throw DimensionMismatch(
        "parameter lengths do not match the matrix: " +
        std::to_string(m.n_docs()) + " docs x " + std::to_string(m.n_terms()) +
        " terms vs alpha " + std::to_string(alpha) + ", psi " +
        std::to_string(psi) + ", beta " + std::to_string(beta) + ", omega " +
        std::to_string(omega));
  }
}

inline double population_sd(const std::vector<double>& v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size()));
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace wf_detail

// Poisson log-likelihood Sum_ij [ y_ij * log(lambda_ij) - lambda_ij ].
// The log(y!) term is a data constant and is omitted throughout.
inline double wordfish_loglik(const CountMatrix& m,
                              const std::vector<double>& alpha,
                              const std::vector<double>& psi,
                              const std::vector<double>& beta,
                              const std::vector<double>& omega) {
  wf_detail::check_dims(m, alpha.size(), psi.size(), beta.size(), omega.size());
  double ll = 0.0;
  for (std::size_t i = 0; i < m.n_docs(); ++i) {
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
      const double eta = alpha[i] + psi[j] + beta[j] * omega[i];
      ll += static_cast<double>(m.at(i, j)) * eta - std::exp(eta);
    }
  }
  return ll;
}

inline WordfishGradient wordfish_gradient(const CountMatrix& m,
                                          const std::vector<double>& alpha,
                                          const std::vector<double>& psi,
                                          const std::vector<double>& beta,
                                          const std::vector<double>& omega) {
  wf_detail::check_dims(m, alpha.size(), psi.size(), beta.size(), omega.size());
  WordfishGradient g;
  g.alpha.assign(m.n_docs(), 0.0);
  g.omega.assign(m.n_docs(), 0.0);
  g.psi.assign(m.n_terms(), 0.0);
  g.beta.assign(m.n_terms(), 0.0);
  for (std::size_t i = 0; i < m.n_docs(); ++i) {
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
      const double lambda = std::exp(alpha[i] + psi[j] + beta[j] * omega[i]);
      const double resid = static_cast<double>(m.at(i, j)) - lambda;
      g.alpha[i] += resid;
      g.omega[i] += beta[j] * resid;
      g.psi[j] += resid;
      g.beta[j] += omega[i] * resid;
    }
  }
  return g;
}

namespace wf_detail {

// One concave 2-parameter block: maximize sum_k [ y_k * eta_k - exp(eta_k) ]
// with eta_k = base_k + x1 + x2 * slope_k. Newton with step halving; the
// closed-form x1 update covers the singular case (all slopes zero).
struct BlockProblem {
  const std::vector<double>& base;
  const std::vector<double>& slope;
  const std::vector<double>& y;

  double ll(double x1, double x2) const {
    double v = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double eta = base[k] + x1 + x2 * slope[k];
      if (eta > 500.0) return -std::numeric_limits<double>::infinity();
      v += y[k] * eta - std::exp(eta);
    }
    return v;
  }

  void maximize(double& x1, double& x2) const {
    double cur = ll(x1, x2);
    for (int it = 0; it < 50; ++it) {
      double g1 = 0.0, g2 = 0.0, h11 = 0.0, h12 = 0.0, h22 = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) {
        const double lambda = std::exp(base[k] + x1 + x2 * slope[k]);
        const double resid = y[k] - lambda;
        g1 += resid;
        g2 += slope[k] * resid;
        h11 -= lambda;
        h12 -= slope[k] * lambda;
        h22 -= slope[k] * slope[k] * lambda;
      }
      const double det = h11 * h22 - h12 * h12;
      double d1, d2;
      if (std::abs(det) < 1e-300 || h22 == 0.0) {
        // Flat in x2: exact closed-form step in x1 alone.
        double ysum = 0.0, esum = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) {
          ysum += y[k];
          esum += std::exp(base[k] + x2 * slope[k]);
        }
        if (ysum <= 0.0 || esum <= 0.0) return;
        const double x1_new = std::log(ysum / esum);
        if (ll(x1_new, x2) >= cur) x1 = x1_new;
        return;
      }
      d1 = -(h22 * g1 - h12 * g2) / det;
      d2 = -(-h12 * g1 + h11 * g2) / det;

      double step = 1.0;
      bool moved = false;
      for (int half = 0; half < 40; ++half) {
        const double cand = ll(x1 + step * d1, x2 + step * d2);
        if (cand >= cur - 1e-13 * (1.0 + std::abs(cur)) && cand > -1e300) {
          if (cand >= cur) {
            x1 += step * d1;
            x2 += step * d2;
            moved = cand > cur + 1e-12 * (1.0 + std::abs(cur));
            cur = cand;
          }
          break;
        }
        step *= 0.5;
      }
      if (!moved) return;
    }
  }
};

// First left singular vector of the doubly centered log(1 + y) matrix,
// by power iteration with a seeded random start.
inline std::vector<double> omega_start(const CountMatrix& m, std::uint64_t seed) {
  const std::size_t D = m.n_docs(), T = m.n_terms();
  std::vector<double> L(D * T);
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < T; ++j)
      L[i * T + j] = std::log1p(static_cast<double>(m.at(i, j)));
  std::vector<double> row_mean(D, 0.0), col_mean(T, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < T; ++j) {
      row_mean[i] += L[i * T + j];
      col_mean[j] += L[i * T + j];
      grand += L[i * T + j];
    }
  for (auto& v : row_mean) v /= static_cast<double>(T);
  for (auto& v : col_mean) v /= static_cast<double>(D);
  grand /= static_cast<double>(D * T);

  double frob = 0.0;
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < T; ++j) {
      L[i * T + j] -= row_mean[i] + col_mean[j] - grand;
      frob += L[i * T + j] * L[i * T + j];
    }
  if (frob < 1e-16)
    throw NotIdentifiable(
        "documents have identical relative word frequencies; the position "
        "dimension is flat");

  DetRng rng(seed);
  std::vector<double> v(D), w(T);
  for (auto& x : v) x = rng.normal();
  for (int iter = 0; iter < 500; ++iter) {
    // w = L^T v ; v_next = L w
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < T; ++j) w[j] += L[i * T + j] * v[i];
    std::vector<double> next(D, 0.0);
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < T; ++j) next[i] += L[i * T + j] * w[j];
    double norm = 0.0;
    for (double x : next) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-15)
      throw NotIdentifiable("power iteration collapsed; matrix has no "
                            "dominant direction");
    for (auto& x : next) x /= norm;
    double delta = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < D; ++i) dot += next[i] * v[i];
    const double sign = dot < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < D; ++i)
      delta = std::max(delta, std::abs(next[i] - sign * v[i]));
    v = std::move(next);
    if (delta < 1e-13) break;
  }
  const double mean = mean_of(v);
  const double sd = population_sd(v, mean);
  if (sd < 1e-12)
    throw NotIdentifiable("degenerate position start vector");
  for (auto& x : v) x = (x - mean) / sd;
  return v;
}

}  // namespace wf_detail

inline WordfishFit wordfish_fit(const CountMatrix& m,
                                const WordfishOptions& opt) {
  const std::size_t D = m.n_docs(), T = m.n_terms();
  if (D < 2 || T < 2)
    throw NotIdentifiable("need at least 2 documents and 2 terms, got " +
                          std::to_string(D) + "x" + std::to_string(T));
  for (std::size_t i = 0; i < D; ++i) {
    if (m.row_sum(i) == 0)
      throw NotIdentifiable("document '" + m.docs[i] + "' has no tokens");
  }
  for (std::size_t j = 0; j < T; ++j) {
    std::uint64_t col = 0;
    for (std::size_t i = 0; i < D; ++i) col += m.at(i, j);
    if (col == 0)
      throw NotIdentifiable("term '" + m.terms[j] + "' never occurs");
  }
  const std::size_t left = m.doc_index(opt.left_anchor);
  const std::size_t right = m.doc_index(opt.right_anchor);
  if (left == right)
    throw InvariantViolation("left and right anchors must differ");

  WordfishFit fit;
  fit.docs = m.docs;
  fit.terms = m.terms;

  // Starting values: standard, reproducible, fast.
  fit.omega = wf_detail::omega_start(m, opt.seed);
  fit.psi.resize(T);
  for (std::size_t j = 0; j < T; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < D; ++i) mean += static_cast<double>(m.at(i, j));
    fit.psi[j] = std::log(mean / static_cast<double>(D) + 0.001);
  }
  fit.alpha.resize(D);
  const double anchor_rowsum = static_cast<double>(m.row_sum(0));
  for (std::size_t i = 0; i < D; ++i)
    fit.alpha[i] = std::log(static_cast<double>(m.row_sum(i)) / anchor_rowsum);
  fit.beta.assign(T, 0.0);

  // Dense copies of the counts for fast block access.
  std::vector<double> y_row(D * T), y_col(T * D);
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < T; ++j) {
      y_row[i * T + j] = static_cast<double>(m.at(i, j));
      y_col[j * D + i] = static_cast<double>(m.at(i, j));
    }

  auto identify = [&] {
    const double mean = wf_detail::mean_of(fit.omega);
    const double sd = wf_detail::population_sd(fit.omega, mean);
    if (sd < 1e-12)
      throw NotIdentifiable("positions collapsed to a point during fitting");
    for (auto& x : fit.omega) x = (x - mean) / sd;
    for (std::size_t j = 0; j < T; ++j) {
      fit.psi[j] += fit.beta[j] * mean;
      fit.beta[j] *= sd;
    }
    const double a0 = fit.alpha[0];
    for (auto& a : fit.alpha) a -= a0;
    for (auto& p : fit.psi) p += a0;
    if (fit.omega[left] > fit.omega[right]) {
      for (auto& x : fit.omega) x = -x;
      for (auto& b : fit.beta) b = -b;
    }
  };

  double prev_ll = wordfish_loglik(m, fit.alpha, fit.psi, fit.beta, fit.omega);
  fit.converged = false;
  int sweep = 0;
  for (; sweep < opt.max_iter; ++sweep) {
    // (a) per-document blocks: alpha_i, omega_i given psi, beta.
    parallel_for(
        D,
        [&](std::size_t i) {
          std::vector<double> base(T), y(T);
          for (std::size_t j = 0; j < T; ++j) {
            base[j] = fit.psi[j];
            y[j] = y_row[i * T + j];
          }
          wf_detail::BlockProblem problem{base, fit.beta, y};
          problem.maximize(fit.alpha[i], fit.omega[i]);
        },
        opt.threads);

    // (b) per-term blocks: psi_j, beta_j given alpha, omega.
    parallel_for(
        T,
        [&](std::size_t j) {
          std::vector<double> base(D), y(D);
          for (std::size_t i = 0; i < D; ++i) {
            base[i] = fit.alpha[i];
            y[i] = y_col[j * D + i];
          }
          wf_detail::BlockProblem problem{base, fit.omega, y};
          problem.maximize(fit.psi[j], fit.beta[j]);
        },
        opt.threads);

    identify();

    const double ll = wordfish_loglik(m, fit.alpha, fit.psi, fit.beta, fit.omega);
    fit.loglik_trace.push_back(ll);
    const double rel = std::abs(ll - prev_ll) / (std::abs(prev_ll) + 1e-12);
    prev_ll = ll;
    if (rel < opt.tol) {
      fit.converged = true;
      ++sweep;
      break;
    }
  }
  fit.iterations = sweep;
  fit.log_likelihood = prev_ll;

  double max_beta = 0.0;
  for (double b : fit.beta) max_beta = std::max(max_beta, std::abs(b));
  if (max_beta < 1e-10)
    throw NotIdentifiable("all word weights are numerically zero");
  return fit;
}

// ---- fit output ---------------------------------------------------------

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string wordfish_docs_tsv(const WordfishFit& fit) {
  std::string out = tsv::join_row({"doc", "omega", "alpha"});
  for (std::size_t i = 0; i < fit.docs.size(); ++i) {
    out += tsv::join_row(
        {fit.docs[i], format_real(fit.omega[i]), format_real(fit.alpha[i])});
  }
  return out;
}

inline std::string wordfish_terms_tsv(const WordfishFit& fit) {
  std::string out = tsv::join_row({"term", "psi", "beta"});
  for (std::size_t j = 0; j < fit.terms.size(); ++j) {
    out += tsv::join_row(
        {fit.terms[j], format_real(fit.psi[j]), format_real(fit.beta[j])});
  }
  return out;
}

}  // namespace hansard
