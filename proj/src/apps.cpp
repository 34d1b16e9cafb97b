#include "netnorm/apps.hpp"

#include <chrono>
#include <cmath>

#include "netnorm/errors.hpp"

namespace netnorm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_matrix(const CMatrix& a, const char* who) {
  if (a.size() == 0) throw ParameterError(std::string(who) + ": empty matrix");
  if (!a.allFinite()) throw ValidationError(std::string(who) + ": matrix has non-finite entries");
  if (a.cwiseAbs().maxCoeff() == 0.0) throw ParameterError(std::string(who) + ": matrix is zero");
}

// ||A||_{2->2}^2.
double spectral_sq(const CMatrix& a) {
  const double s = singular_values(a)(0);
  return s * s;
}

// ||A||_{2->inf}^2: largest squared row norm.
double row_sq(const CMatrix& a) { return a.rowwise().squaredNorm().maxCoeff(); }

// ||A x||_q for the top eigenvector x of a density witness.
double pure_value(const CMatrix& a, const CMatrix& alpha, double q) {
  const CVector x = top_eigenpair(alpha).vector;
  const CVector y = a * x;
  return ell_norm(RVector(y.cwiseAbs()), q);
}

void scale_report(EstimateReport& rep, double scale) {
  rep.value *= scale;
  rep.delta_attained *= scale;
  rep.net_radius *= scale;
  rep.diagnostics.emplace_back("scale", scale);
}

}  // namespace

EstimateReport eb_channel_max_output_norm(const EBChannel& ch, double alpha, double delta,
                                          const EstimateOptions& opts, const S1Options& extra) {
  const auto start = Clock::now();
  require_valid(ch);
  if (!(alpha > 1.0)) throw ParameterError("eb_channel_max_output_norm: alpha must exceed 1");
  const BanachDescriptor desc = banach_constants(Family::schatten, alpha, ch.d2);
  GeneralDecomposition g{ch.d1, desc, {}, {}};
  for (const auto& t : ch.terms) {
    g.X.push_back(t.X);
    g.Y.push_back(t.Y);
  }
  EstimateReport rep = s1_to_banach(g, delta, opts, extra);
  rep.algorithm = "eb_channel_max_output_norm";
  rep.diagnostics.emplace_back("alpha", alpha);
  rep.diagnostics.emplace_back("output_norm_floor", std::pow(static_cast<double>(ch.d2), -1.0 + 1.0 / alpha));
  rep.wall_seconds = seconds_since(start);
  return rep;
}

EstimateReport two_to_q_norm(const CMatrix& a, double q, double delta, const EstimateOptions& opts) {
  const auto start = Clock::now();
  require_matrix(a, "two_to_q_norm");
  if (!(q >= 2.0)) throw ParameterError("two_to_q_norm: q must be at least 2");
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("two_to_q_norm: delta must lie in (0, 1]");
  const double s2 = spectral_sq(a);
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());

  if (q == 2.0) {
    EstimateReport rep;
    rep.algorithm = "two_to_q_norm";
    rep.delta_requested = delta;
    rep.seed = opts.seed;
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinV);
    const CVector v = svd.matrixV().col(0);
    rep.witnesses = {projector(v)};
    rep.value = (a * v).squaredNorm();
    rep.diagnostics.emplace_back("scale", s2);
    rep.diagnostics.emplace_back("pure_value", rep.value);
    rep.notes.push_back("q = 2: closed form, the squared top singular value");
    rep.wall_seconds = seconds_since(start);
    return rep;
  }

  const BanachDescriptor desc = banach_constants(Family::ell, q / 2.0, rows);
  GeneralDecomposition g{cols, desc, {}, {}};
  for (int i = 0; i < rows; ++i) {
    const CVector v = a.row(i).adjoint();
    if (v.squaredNorm() == 0.0) continue;
    g.X.push_back(hermitize(CMatrix(v * v.adjoint() / s2)));
    CMatrix e = CMatrix::Zero(rows, 1);
    e(i) = 1;
    g.Y.push_back(e);
  }
  EstimateReport rep = s1_to_banach(g, delta, opts);
  rep.algorithm = "two_to_q_norm";
  scale_report(rep, s2);
  const double pv = pure_value(a, rep.witnesses[0], q);
  rep.diagnostics.emplace_back("pure_value", pv * pv);
  rep.diagnostics.emplace_back("q", q);
  rep.wall_seconds = seconds_since(start);
  return rep;
}

EstimateReport two_to_q_even(const CMatrix& a, double q, double delta, const EstimateOptions& opts) {
  const auto start = Clock::now();
  require_matrix(a, "two_to_q_even");
  if (!(q >= 2.0)) throw ParameterError("two_to_q_even: q must be at least 2");
  if (q < 4.0 || std::fmod(q, 2.0) != 0.0) {
    EstimateReport rep = two_to_q_norm(a, q, delta, opts);
    rep.notes.push_back("q is not an even integer >= 4: routed to the single-party reduction");
    return rep;
  }
  const int parties = static_cast<int>(q / 2.0);
  const int cols = static_cast<int>(a.cols());
  const double s2 = spectral_sq(a);
  const double r2 = row_sq(a);

  MultipartiteLOCC t;
  t.dims.assign(parties, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const CVector v = a.row(i).adjoint();
    if (v.squaredNorm() == 0.0) continue;
    const CMatrix outer = hermitize(CMatrix(v * v.adjoint()));
    TreeNode node{outer / s2, {}};
    TreeNode* tail = &node;
    for (int m = 1; m < parties; ++m) {
      tail->children.push_back({outer / r2, {}});
      tail = &tail->children.back();
    }
    t.roots.push_back(std::move(node));
  }
  EstimateReport rep = hsep_multipartite(t, delta, opts);
  rep.algorithm = "two_to_q_even";
  scale_report(rep, s2 * std::pow(r2, (q - 2.0) / 2.0));
  rep.diagnostics.emplace_back("pure_value", std::pow(pure_value(a, rep.witnesses[0], q), q));
  rep.diagnostics.emplace_back("q", q);
  rep.wall_seconds = seconds_since(start);
  return rep;
}

}  // namespace netnorm
