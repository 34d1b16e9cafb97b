#include "netnorm/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace netnorm::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError("malformed input at " + where + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

int int_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1 << 20) {
    fail(where + "." + key, "expected a positive integer");
  }
  return v.get<int>();
}

const Json& array_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_array()) fail(where + "." + key, "expected an array");
  return v;
}

double exponent_from_json(const Json& v, const std::string& where) {
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) return kInf;
  if (!v.is_number()) fail(where, "expected a number or \"inf\"");
  return v.get<double>();
}

Json exponent_to_json(double e) { return std::isinf(e) ? Json("inf") : Json(e); }

Json term_pair(const CMatrix& a, const CMatrix& b, const char* ka, const char* kb) {
  Json t = Json::object();
  t[ka] = matrix_to_json(a);
  t[kb] = matrix_to_json(b);
  return t;
}

Json tree_to_json(const std::vector<TreeNode>& forest) {
  Json out = Json::array();
  for (const auto& node : forest) {
    Json n = Json::object();
    n["X"] = matrix_to_json(node.X);
    if (!node.children.empty()) n["children"] = tree_to_json(node.children);
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<TreeNode> tree_from_json(const Json& j, const std::string& where, int depth) {
  if (!j.is_array()) fail(where, "expected an array of nodes");
  if (depth > 64) fail(where, "tree deeper than 64 levels");
  std::vector<TreeNode> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    TreeNode node;
    node.X = matrix_from_json(field(j[i], "X", w), w + ".X");
    if (j[i].contains("children")) node.children = tree_from_json(j[i]["children"], w + ".children", depth + 1);
    out.push_back(std::move(node));
  }
  return out;
}

bool same_forest(const std::vector<TreeNode>& a, const std::vector<TreeNode>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].X.rows() != b[i].X.rows() || a[i].X.cols() != b[i].X.cols() || a[i].X != b[i].X) return false;
    if (!same_forest(a[i].children, b[i].children)) return false;
  }
  return true;
}

bool same_matrix(const CMatrix& a, const CMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same_list(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_matrix(a[i], b[i])) return false;
  }
  return true;
}

bool same_terms(const std::vector<LoccTerm>& a, const std::vector<LoccTerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_matrix(a[i].X, b[i].X) || !same_matrix(a[i].Y, b[i].Y)) return false;
  }
  return true;
}

bool same_descriptor(const BanachDescriptor& a, const BanachDescriptor& b) {
  return a.family == b.family && a.exponent == b.exponent && a.dim == b.dim;
}

Json vector_to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::vector<LoccTerm> terms_from_json(const Json& j, const std::string& where) {
  const Json& arr = array_field(j, "terms", where);
  std::vector<LoccTerm> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = where + ".terms[" + std::to_string(i) + "]";
    out.push_back({matrix_from_json(field(arr[i], "X", w), w + ".X"), matrix_from_json(field(arr[i], "Y", w), w + ".Y")});
  }
  return out;
}

Json terms_to_json(const std::vector<LoccTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) out.push_back(term_pair(t.X, t.Y, "X", "Y"));
  return out;
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json j = Json::object();
  if (m.rows() == m.cols()) {
    j["dim"] = m.rows();
  } else {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  }
  j["entries"] = std::move(entries);
  return j;
}

CMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a matrix object");
  int rows = 0;
  int cols = 0;
  if (j.contains("dim")) {
    rows = cols = int_field(j, "dim", where);
  } else {
    rows = int_field(j, "rows", where);
    cols = int_field(j, "cols", where);
  }
  const Json& entries = array_field(j, "entries", where);
  if (static_cast<long long>(entries.size()) != static_cast<long long>(rows) * cols) {
    fail(where + ".entries", "expected " + std::to_string(static_cast<long long>(rows) * cols) + " entries, found " +
                                 std::to_string(entries.size()));
  }
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t k = static_cast<std::size_t>(r) * cols + c;
      const Json& e = entries[k];
      const std::string w = where + ".entries[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        fail(w, "expected a [re, im] pair of numbers");
      }
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) fail(w, "entry is not finite");
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

Json descriptor_to_json(const BanachDescriptor& desc) {
  Json j = Json::object();
  j["family"] = desc.family == Family::schatten ? "schatten" : "ell";
  j["exponent"] = exponent_to_json(desc.exponent);
  j["dim"] = desc.dim;
  return j;
}

BanachDescriptor descriptor_from_json(const Json& j, const std::string& where) {
  const Json& fam = field(j, "family", where);
  if (!fam.is_string()) fail(where + ".family", "expected \"schatten\" or \"ell\"");
  Family family;
  if (fam.get<std::string>() == "schatten") {
    family = Family::schatten;
  } else if (fam.get<std::string>() == "ell") {
    family = Family::ell;
  } else {
    fail(where + ".family", "expected \"schatten\" or \"ell\"");
  }
  const double e = exponent_from_json(field(j, "exponent", where), where + ".exponent");
  const int dim = int_field(j, "dim", where);
  try {
    return banach_constants(family, e, dim);
  } catch (const ParameterError& err) {
    fail(where, err.what());
  }
}

std::string domain_name(InputBall ball) {
  switch (ball) {
    case InputBall::density: return "density";
    case InputBall::trace_ball: return "S1";
    case InputBall::l1: return "l1";
    case InputBall::l2: return "l2";
  }
  return "?";
}

InputBall domain_from_name(const std::string& name, const std::string& where) {
  if (name == "S1") return InputBall::trace_ball;
  if (name == "l1") return InputBall::l1;
  if (name == "l2") return InputBall::l2;
  if (name == "density") return InputBall::density;
  fail(where, "unknown domain \"" + name + "\" (expected S1, l1 or l2)");
}

Instance instance_from_json(const Json& j) {
  const std::string root = "$";
  const Json& kind_j = field(j, "kind", root);
  if (!kind_j.is_string()) fail("$.kind", "expected a string");
  Instance inst;
  inst.kind = kind_j.get<std::string>();
  if (inst.kind == "locc") {
    OneWayLOCC m{int_field(j, "d1", root), int_field(j, "d2", root), terms_from_json(j, root)};
    inst.value = std::move(m);
  } else if (inst.kind == "channel") {
    EBChannel ch{int_field(j, "d1", root), int_field(j, "d2", root), terms_from_json(j, root)};
    inst.value = std::move(ch);
  } else if (inst.kind == "multiparty") {
    MultipartiteLOCC t;
    const Json& dims = array_field(j, "dims", root);
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (!dims[i].is_number_integer() || dims[i].get<long long>() < 1) {
        fail("$.dims[" + std::to_string(i) + "]", "expected a positive integer");
      }
      t.dims.push_back(dims[i].get<int>());
    }
    t.roots = tree_from_json(field(j, "tree", root), "$.tree", 1);
    inst.value = std::move(t);
  } else if (inst.kind == "matrix") {
    inst.value = matrix_from_json(field(j, "matrix", root), "$.matrix");
  } else if (inst.kind == "general") {
    GeneralDecomposition g;
    g.d1 = int_field(j, "d1", root);
    g.space = descriptor_from_json(field(j, "space", root), "$.space");
    for (const auto& t : terms_from_json(j, root)) {
      g.X.push_back(t.X);
      g.Y.push_back(t.Y);
    }
    inst.value = std::move(g);
  } else if (inst.kind == "injective") {
    InjectiveProblem p;
    const Json& dom = field(j, "domain", root);
    if (!dom.is_string()) fail("$.domain", "expected a string");
    p.domain = domain_from_name(dom.get<std::string>(), "$.domain");
    p.dim = int_field(j, "dim", root);
    p.space = descriptor_from_json(field(j, "space", root), "$.space");
    const Json& arr = array_field(j, "terms", root);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = "$.terms[" + std::to_string(i) + "]";
      p.functionals.push_back(matrix_from_json(field(arr[i], "x", w), w + ".x"));
      p.ys.push_back(matrix_from_json(field(arr[i], "y", w), w + ".y"));
    }
    inst.value = std::move(p);
  } else {
    fail("$.kind", "unknown kind \"" + inst.kind + "\" (expected locc, multiparty, channel, matrix, general or injective)");
  }
  return inst;
}

Json instance_to_json(const Instance& inst) {
  Json j = Json::object();
  j["kind"] = inst.kind;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, OneWayLOCC> || std::is_same_v<T, EBChannel>) {
          j["d1"] = v.d1;
          j["d2"] = v.d2;
          j["terms"] = terms_to_json(v.terms);
        } else if constexpr (std::is_same_v<T, MultipartiteLOCC>) {
          j["dims"] = v.dims;
          j["tree"] = tree_to_json(v.roots);
        } else if constexpr (std::is_same_v<T, CMatrix>) {
          j["matrix"] = matrix_to_json(v);
        } else if constexpr (std::is_same_v<T, GeneralDecomposition>) {
          j["d1"] = v.d1;
          j["space"] = descriptor_to_json(v.space);
          Json terms = Json::array();
          for (std::size_t i = 0; i < v.X.size(); ++i) terms.push_back(term_pair(v.X[i], v.Y[i], "X", "Y"));
          j["terms"] = std::move(terms);
        } else {
          j["domain"] = domain_name(v.domain);
          j["dim"] = v.dim;
          j["space"] = descriptor_to_json(v.space);
          Json terms = Json::array();
          for (std::size_t i = 0; i < v.functionals.size(); ++i) {
            terms.push_back(term_pair(v.functionals[i], v.ys[i], "x", "y"));
          }
          j["terms"] = std::move(terms);
        }
      },
      inst.value);
  return j;
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw InputError("malformed JSON at line " + std::to_string(line) + ": " + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

bool same_instance(const Instance& a, const Instance& b) {
  if (a.kind != b.kind || a.value.index() != b.value.index()) return false;
  return std::visit(
      [&](const auto& va) {
        using T = std::decay_t<decltype(va)>;
        const T& vb = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, OneWayLOCC> || std::is_same_v<T, EBChannel>) {
          return va.d1 == vb.d1 && va.d2 == vb.d2 && same_terms(va.terms, vb.terms);
        } else if constexpr (std::is_same_v<T, MultipartiteLOCC>) {
          return va.dims == vb.dims && same_forest(va.roots, vb.roots);
        } else if constexpr (std::is_same_v<T, CMatrix>) {
          return same_matrix(va, vb);
        } else if constexpr (std::is_same_v<T, GeneralDecomposition>) {
          return va.d1 == vb.d1 && same_descriptor(va.space, vb.space) && same_list(va.X, vb.X) &&
                 same_list(va.Y, vb.Y);
        } else {
          return va.domain == vb.domain && va.dim == vb.dim && same_descriptor(va.space, vb.space) &&
                 same_list(va.functionals, vb.functionals) && same_list(va.ys, vb.ys);
        }
      },
      a.value);
}

Json report_to_json(const EstimateReport& rep) {
  Json j = Json::object();
  j["algorithm"] = rep.algorithm;
  j["value"] = rep.value;
  j["delta_requested"] = rep.delta_requested;
  j["delta_attained"] = rep.delta_attained;
  j["net_radius"] = rep.net_radius;
  j["eps"] = rep.eps;
  Json net = Json::object();
  net["k"] = rep.net.k;
  net["k_requested"] = rep.net.k_requested;
  net["capped"] = rep.net.capped;
  net["scanned"] = rep.net.scanned;
  net["feasible"] = rep.net.feasible;
  net["infeasible"] = rep.net.infeasible;
  net["indeterminate"] = rep.net.indeterminate;
  j["net"] = std::move(net);
  j["best_rank"] = rep.best_rank;
  j["fallback"] = rep.fallback;
  j["p"] = vector_to_json(rep.p);
  j["q"] = vector_to_json(rep.q);
  Json w = Json::array();
  for (const auto& m : rep.witnesses) w.push_back(matrix_to_json(m));
  j["witnesses"] = std::move(w);
  Json diag = Json::object();
  for (const auto& [name, v] : rep.diagnostics) diag[name] = std::isfinite(v) ? Json(v) : Json(nullptr);
  j["diagnostics"] = std::move(diag);
  j["notes"] = rep.notes;
  j["seed"] = rep.seed;
  j["wall_seconds"] = rep.wall_seconds;
  return j;
}

}  // namespace netnorm::io
