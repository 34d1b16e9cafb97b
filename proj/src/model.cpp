#include "netnorm/model.hpp"

#include <cmath>
#include <sstream>

namespace netnorm {

namespace {

constexpr double kSumTol = 1e-8;
constexpr double kZeroNorm = 1e-12;

// Weights w(sigma) of the dual element for a vector of magnitudes.
RVector dual_weights(const RVector& mag, double alpha) {
  RVector w = RVector::Zero(mag.size());
  if (mag.size() == 0) return w;
  const double top = mag.maxCoeff();
  if (top == 0.0) return w;
  if (std::isinf(alpha)) {
    Eigen::Index arg = 0;
    mag.maxCoeff(&arg);
    w(arg) = 1.0;
    return w;
  }
  if (alpha == 1.0) {
    for (Eigen::Index i = 0; i < mag.size(); ++i) w(i) = mag(i) > 0.0 ? 1.0 : 0.0;
    return w;
  }
  const double norm = power_norm(mag, alpha);
  for (Eigen::Index i = 0; i < mag.size(); ++i) w(i) = std::pow(mag(i) / norm, alpha - 1.0);
  return w;
}

CMatrix schatten_dual(const CMatrix& y, double alpha) {
  if (y.rows() == y.cols() && is_hermitian(y, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(y));
    const RVector& lam = es.eigenvalues();
    RVector mag = lam.cwiseAbs();
    if (std::isinf(alpha)) {
      // ties resolve toward the positive end, matching top_abs_eigenpair
      Eigen::Index arg = lam.size() - 1;
      if (-lam(0) > lam(arg)) arg = 0;
      RVector w = RVector::Zero(lam.size());
      if (mag(arg) > 0.0) w(arg) = lam(arg) < 0.0 ? -1.0 : 1.0;
      return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    }
    RVector w = dual_weights(mag, alpha);
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (lam(i) < 0.0) w(i) = -w(i);
    return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  }
  Eigen::JacobiSVD<CMatrix> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector w = dual_weights(svd.singularValues(), alpha);
  return svd.matrixU() * w.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
}

CMatrix ell_dual(const CMatrix& y, double q) {
  const RVector mag = y.cwiseAbs().reshaped();
  const RVector w = dual_weights(mag, q);
  CMatrix g = CMatrix::Zero(y.rows(), y.cols());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (w(i) == 0.0) continue;
    g.reshaped()(i) = w(i) * y.reshaped()(i) / mag(i);
  }
  return g;
}

double largest_violation_psd(const CMatrix& x) { return -lambda_min(x); }

void check_square(std::vector<Violation>& out, const CMatrix& x, int dim, const std::string& what, int index) {
  if (x.rows() != dim || x.cols() != dim) {
    out.push_back({what + " has wrong dimension", index, static_cast<double>(x.rows())});
    return;
  }
  if (!x.allFinite()) {
    out.push_back({what + " has non-finite entries", index, 0.0});
    return;
  }
  const double asym = (x - x.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-6) out.push_back({what + " Hermitian", index, asym});
}

void check_x_side(std::vector<Violation>& out, const std::vector<CMatrix>& xs, int d1) {
  CMatrix total = CMatrix::Zero(d1, d1);
  bool shapes_ok = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto before = out.size();
    check_square(out, xs[i], d1, "X", static_cast<int>(i));
    if (out.size() != before && xs[i].rows() != d1) {
      shapes_ok = false;
      continue;
    }
    const CMatrix h = hermitize(xs[i]);
    const double neg = largest_violation_psd(h);
    if (neg > -kPsdFloor) out.push_back({"X >= 0", static_cast<int>(i), neg});
    total += h;
  }
  if (!shapes_ok || xs.empty()) return;
  const double excess = lambda_max(total) - 1.0;
  if (excess > kSumTol) out.push_back({"sum X <= I", -1, excess});
}

CMatrix node_operator(const TreeNode& node, const std::vector<int>& dims, int depth) {
  if (depth == static_cast<int>(dims.size())) return node.X;
  return kron(node.X, forest_operator(node.children, dims, depth + 1));
}

void validate_forest(std::vector<Violation>& out, const std::vector<TreeNode>& forest, const std::vector<int>& dims,
                     int depth, int& counter) {
  const int d = dims[depth - 1];
  std::vector<CMatrix> xs;
  const int first = counter;
  for (const auto& node : forest) xs.push_back(node.X);
  std::vector<Violation> local;
  check_x_side(local, xs, d);
  for (auto& v : local) {
    v.constraint = "depth " + std::to_string(depth) + ": " + v.constraint;
    if (v.index >= 0) v.index += first;
    out.push_back(v);
  }
  counter += static_cast<int>(forest.size());
  if (depth == static_cast<int>(dims.size())) {
    for (std::size_t i = 0; i < forest.size(); ++i) {
      if (forest[i].X.rows() != d) continue;
      if (!forest[i].children.empty())
        out.push_back({"leaf has children", first + static_cast<int>(i), 0.0});
    }
    return;
  }
  for (const auto& node : forest) validate_forest(out, node.children, dims, depth + 1, counter);
}

}  // namespace

BanachDescriptor banach_constants(Family family, double alpha, int dim) {
  if (dim < 1) throw ParameterError("banach_constants: dim must be positive");
  if (!(alpha > 1.0))
    throw ParameterError(
        "banach_constants: exponent must exceed 1; the covering-net size diverges as the exponent "
        "approaches 1");
  BanachDescriptor d;
  d.family = family;
  d.exponent = alpha;
  d.dim = dim;
  if (std::isinf(alpha)) {
    const double ln = std::log(static_cast<double>(dim));
    d.gamma = 2.0;
    d.type_constant = std::max(1.0, std::sqrt(2.0 * ln));
    d.smoothness = std::max(0.5, ln);
  } else if (alpha >= 2.0) {
    d.gamma = 2.0;
    d.type_constant = std::sqrt(alpha - 1.0);
    d.smoothness = (alpha - 1.0) / 2.0;
  } else {
    d.gamma = alpha;
    d.type_constant = 1.0;
    d.smoothness = 0.5;
  }
  return d;
}

double banach_norm(const BanachDescriptor& desc, const CMatrix& y) {
  if (desc.family == Family::schatten) return schatten_norm(y, desc.exponent);
  return ell_norm(y, desc.exponent);
}

CMatrix norming_functional(const BanachDescriptor& desc, const CMatrix& y) {
  if (desc.family == Family::schatten) return schatten_dual(y, desc.exponent);
  return ell_dual(y, desc.exponent);
}

std::string describe(const BanachDescriptor& desc) {
  std::ostringstream os;
  os << (desc.family == Family::schatten ? "S_" : "l_");
  if (std::isinf(desc.exponent))
    os << "inf";
  else
    os << desc.exponent;
  os << "(dim " << desc.dim << ")";
  return os.str();
}

CMatrix OneWayLOCC::assemble() const {
  CMatrix m = CMatrix::Zero(d1 * d2, d1 * d2);
  for (const auto& t : terms) m += kron(t.X, t.Y);
  return m;
}

std::vector<CMatrix> OneWayLOCC::xs() const {
  std::vector<CMatrix> out;
  for (const auto& t : terms) out.push_back(t.X);
  return out;
}

std::vector<CMatrix> OneWayLOCC::ys() const {
  std::vector<CMatrix> out;
  for (const auto& t : terms) out.push_back(t.Y);
  return out;
}

CMatrix EBChannel::apply(const CMatrix& rho) const {
  CMatrix out = CMatrix::Zero(d2, d2);
  for (const auto& t : terms) out += hs_inner(t.X, rho) * t.Y;
  return out;
}

CMatrix forest_operator(const std::vector<TreeNode>& forest, const std::vector<int>& dims, int depth) {
  int rest = 1;
  for (std::size_t m = depth - 1; m < dims.size(); ++m) rest *= dims[m];
  CMatrix out = CMatrix::Zero(rest, rest);
  for (const auto& node : forest) out += node_operator(node, dims, depth);
  return out;
}

CMatrix MultipartiteLOCC::assemble() const { return forest_operator(roots, dims, 1); }

std::vector<Violation> validate(const OneWayLOCC& m) {
  std::vector<Violation> out;
  if (m.d1 < 1 || m.d2 < 1) {
    out.push_back({"dimensions positive", -1, 0.0});
    return out;
  }
  check_x_side(out, m.xs(), m.d1);
  for (std::size_t i = 0; i < m.terms.size(); ++i) {
    const auto before = out.size();
    check_square(out, m.terms[i].Y, m.d2, "Y", static_cast<int>(i));
    if (out.size() != before && m.terms[i].Y.rows() != m.d2) continue;
    const RVector lam = hermitian_eigenvalues(m.terms[i].Y);
    if (-lam(0) > -kPsdFloor) out.push_back({"Y >= 0", static_cast<int>(i), -lam(0)});
    const double excess = lam(lam.size() - 1) - 1.0;
    if (excess > kSumTol) out.push_back({"Y <= I", static_cast<int>(i), excess});
  }
  return out;
}

std::vector<Violation> validate(const BanachDescriptor& desc) {
  std::vector<Violation> out;
  if (!(desc.gamma > 1.0 && desc.gamma <= 2.0)) out.push_back({"gamma in (1,2]", -1, desc.gamma});
  if (!(desc.type_constant >= 1.0)) out.push_back({"type constant >= 1", -1, desc.type_constant});
  if (!(desc.smoothness > 0.0)) out.push_back({"smoothness > 0", -1, desc.smoothness});
  if (!(desc.exponent >= 1.0)) out.push_back({"exponent >= 1", -1, desc.exponent});
  if (desc.dim < 1) out.push_back({"dimension positive", -1, static_cast<double>(desc.dim)});
  return out;
}

std::vector<Violation> validate(const GeneralDecomposition& g) {
  std::vector<Violation> out = validate(g.space);
  if (g.X.size() != g.Y.size()) out.push_back({"|X| == |Y|", -1, 0.0});
  check_x_side(out, g.X, g.d1);
  for (std::size_t i = 0; i < g.Y.size(); ++i) {
    if (!g.Y[i].allFinite()) {
      out.push_back({"Y finite", static_cast<int>(i), 0.0});
      continue;
    }
    if (g.space.family == Family::schatten && (g.Y[i].rows() != g.space.dim || g.Y[i].cols() != g.space.dim))
      out.push_back({"Y has space dimension", static_cast<int>(i), static_cast<double>(g.Y[i].rows())});
    if (g.space.family == Family::ell && g.Y[i].size() != g.space.dim)
      out.push_back({"Y has space dimension", static_cast<int>(i), static_cast<double>(g.Y[i].size())});
  }
  return out;
}

std::vector<Violation> validate(const EBChannel& ch) {
  std::vector<Violation> out;
  std::vector<CMatrix> xs;
  for (const auto& t : ch.terms) xs.push_back(t.X);
  check_x_side(out, xs, ch.d1);
  if (!xs.empty() && out.empty()) {
    CMatrix total = CMatrix::Zero(ch.d1, ch.d1);
    for (const auto& x : xs) total += hermitize(x);
    const double deficit = 1.0 - lambda_min(total);
    if (deficit > kSumTol) out.push_back({"sum X = I", -1, deficit});
  }
  for (std::size_t i = 0; i < ch.terms.size(); ++i) {
    const auto before = out.size();
    check_square(out, ch.terms[i].Y, ch.d2, "Y", static_cast<int>(i));
    if (out.size() != before && ch.terms[i].Y.rows() != ch.d2) continue;
    const double neg = largest_violation_psd(hermitize(ch.terms[i].Y));
    if (neg > -kPsdFloor) out.push_back({"Y >= 0", static_cast<int>(i), neg});
    const double tr = trace_re(ch.terms[i].Y);
    if (std::abs(tr - 1.0) > kTraceTol) out.push_back({"tr Y = 1", static_cast<int>(i), std::abs(tr - 1.0)});
  }
  return out;
}

std::vector<Violation> validate(const MultipartiteLOCC& t) {
  std::vector<Violation> out;
  if (t.dims.empty()) {
    out.push_back({"at least one party", -1, 0.0});
    return out;
  }
  for (int d : t.dims)
    if (d < 1) out.push_back({"dimensions positive", -1, static_cast<double>(d)});
  if (!out.empty()) return out;
  int counter = 0;
  validate_forest(out, t.roots, t.dims, 1, counter);
  return out;
}

OneWayLOCC normalize_locc(const OneWayLOCC& m) {
  OneWayLOCC out{m.d1, m.d2, {}};
  for (const auto& t : m.terms) {
    const double norm = operator_norm(t.Y);
    if (norm < kZeroNorm) continue;
    out.terms.push_back({norm * t.X, t.Y / norm});
  }
  return out;
}

GeneralDecomposition normalize_general(const GeneralDecomposition& g) {
  GeneralDecomposition out{g.d1, g.space, {}, {}};
  for (std::size_t i = 0; i < g.X.size(); ++i) {
    const double norm = banach_norm(g.space, g.Y[i]);
    if (norm < kZeroNorm) continue;
    out.X.push_back(norm * g.X[i]);
    out.Y.push_back(g.Y[i] / norm);
  }
  return out;
}

std::optional<CMatrix> povm_deficit(const std::vector<CMatrix>& xs) {
  if (xs.empty()) return std::nullopt;
  const auto d = xs.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& x : xs) total += x;
  CMatrix deficit = hermitize(CMatrix(CMatrix::Identity(d, d) - total));
  if (deficit.cwiseAbs().maxCoeff() <= kSumTol) return std::nullopt;
  // clip the tolerance-level negative part so the completion stays PSD
  Eigen::SelfAdjointEigenSolver<CMatrix> es(deficit);
  const RVector lam = es.eigenvalues().cwiseMax(0.0);
  return CMatrix(es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint());
}

}  // namespace netnorm
