#include "netnorm/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "netnorm/apps.hpp"
#include "netnorm/io.hpp"
#include "netnorm/oracle.hpp"

namespace netnorm::cli {

namespace {

using io::Json;

struct Flags {
  std::string file;
  std::optional<double> delta;
  std::optional<double> alpha;
  std::optional<double> q;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  std::optional<int> solver_iters;
  std::optional<int> restarts;
  std::optional<double> solver_tol;
  std::optional<int> k;
  std::optional<double> rank_bound;
  bool even = false;
  int threads = 0;
  std::string out;
  std::string format = "json";
};

Json header(const std::string& command) {
  Json j = Json::object();
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  return j;
}

Json instance_ref(const Flags& f, const io::Instance& inst) {
  Json j = Json::object();
  j["path"] = f.file;
  j["kind"] = inst.kind;
  return j;
}

EstimateOptions options_from(const Flags& f) {
  EstimateOptions o;
  o.budget = f.budget;
  o.seed = f.seed;
  o.threads = f.threads;
  o.k_override = f.k;
  if (f.solver_iters) o.solver.max_iters = *f.solver_iters;
  if (f.restarts) o.solver.restarts = *f.restarts;
  if (f.solver_tol) o.solver.tol = *f.solver_tol;
  return o;
}

// Everything needed to reproduce the run. The worker count is left out:
// results do not depend on it.
Json config_json(const Flags& f, const EstimateOptions& o) {
  Json c = Json::object();
  if (f.delta) c["delta"] = *f.delta;
  if (f.alpha) c["alpha"] = *f.alpha;
  if (f.q) c["q"] = *f.q;
  if (f.rank_bound) c["rank_bound"] = *f.rank_bound;
  if (f.even) c["even"] = true;
  c["budget"] = o.budget;
  c["seed"] = o.seed;
  c["k_override"] = o.k_override ? Json(*o.k_override) : Json(nullptr);
  Json s = Json::object();
  s["max_iters"] = o.solver.max_iters;
  s["tol"] = o.solver.tol;
  s["step_scale"] = o.solver.step_scale;
  s["restarts"] = o.solver.restarts;
  s["polish_iters"] = o.solver.polish_iters;
  c["solver"] = std::move(s);
  return c;
}

double require_delta(const Flags& f) {
  if (!f.delta) throw ParameterError("--delta is required for this command");
  return *f.delta;
}

template <typename T>
const T& expect_kind(const io::Instance& inst, const char* kind, const std::string& command) {
  if (inst.kind != kind) {
    throw io::InputError(command + " expects a \"" + kind + "\" instance, got \"" + inst.kind + "\"");
  }
  return std::get<T>(inst.value);
}

Json violations_json(const std::vector<Violation>& vs) {
  Json arr = Json::array();
  for (const auto& v : vs) {
    Json e = Json::object();
    e["constraint"] = v.constraint;
    e["index"] = v.index;
    e["magnitude"] = v.magnitude;
    arr.push_back(std::move(e));
  }
  return arr;
}

std::vector<Violation> injective_violations(const InjectiveProblem& p) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < p.ys.size(); ++i) {
    const double n = banach_norm(p.space, p.ys[i]);
    if (n > 1.0 + 1e-9) out.push_back({"||y_i||_B <= 1", static_cast<int>(i), n - 1.0});
  }
  const double bound = factorization_bound(p).first;
  if (bound > 1.0 + 1e-9) out.push_back({"sup sum |x_i(a)| <= 1", -1, bound - 1.0});
  return out;
}

Json cmd_validate(const Flags& f, const io::Instance& inst) {
  std::vector<Violation> vs;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CMatrix>) {
          // finiteness is checked while parsing
        } else if constexpr (std::is_same_v<T, InjectiveProblem>) {
          vs = injective_violations(v);
        } else {
          vs = validate(v);
        }
      },
      inst.value);
  Json j = header("validate");
  j["instance"] = instance_ref(f, inst);
  j["valid"] = vs.empty();
  j["violations"] = violations_json(vs);
  return j;
}

Json estimator_document(const std::string& command, const Flags& f, const io::Instance& inst,
                        const EstimateOptions& o, const EstimateReport& rep) {
  Json j = header(command);
  j["instance"] = instance_ref(f, inst);
  j["config"] = config_json(f, o);
  j["report"] = io::report_to_json(rep);
  return j;
}

Json cmd_estimate(const std::string& command, const Flags& f, const io::Instance& inst) {
  const EstimateOptions o = options_from(f);
  const double delta = require_delta(f);
  EstimateReport rep;
  if (command == "hsep") {
    const auto& m = expect_kind<OneWayLOCC>(inst, "locc", command);
    rep = f.rank_bound ? hsep_lowrank(m, *f.rank_bound, delta, o) : hsep_basic(m, delta, o);
  } else if (command == "hsep-sparse") {
    rep = hsep_sparse(expect_kind<OneWayLOCC>(inst, "locc", command), delta, o);
  } else if (command == "hsep-multi") {
    rep = hsep_multipartite(expect_kind<MultipartiteLOCC>(inst, "multiparty", command), delta, o);
  } else if (command == "channel-norm") {
    if (inst.kind == "general") {
      if (f.alpha) throw ParameterError("--alpha does not apply to a general instance (its space is in the file)");
      rep = s1_to_banach(std::get<GeneralDecomposition>(inst.value), delta, o);
    } else {
      if (!f.alpha) throw ParameterError("--alpha is required for a channel instance");
      rep = eb_channel_max_output_norm(expect_kind<EBChannel>(inst, "channel", command), *f.alpha, delta, o);
    }
  } else if (command == "two-to-q") {
    if (!f.q) throw ParameterError("--q is required");
    const auto& a = expect_kind<CMatrix>(inst, "matrix", command);
    rep = f.even ? two_to_q_even(a, *f.q, delta, o) : two_to_q_norm(a, *f.q, delta, o);
  } else if (command == "injective") {
    rep = injective_norm(expect_kind<InjectiveProblem>(inst, "injective", command), delta, o);
  }
  return estimator_document(command, f, inst, o, rep);
}

Json cmd_oracle(const Flags& f, const io::Instance& inst) {
  Json c = Json::object();
  c["seed"] = f.seed;
  Json res = Json::object();
  Json witnesses = Json::array();
  auto states_to_json = [&](const std::vector<CVector>& states) {
    for (const auto& s : states) witnesses.push_back(io::matrix_to_json(projector(s)));
  };
  if (inst.kind == "locc") {
    const int r = f.restarts.value_or(50);
    const auto& m = std::get<OneWayLOCC>(inst.value);
    const ProductOptimum opt = hsep_alternating(m.assemble(), m.d1, m.d2, r, 200, f.seed);
    res["method"] = "alternating product ascent";
    res["value"] = opt.value;
    c["restarts"] = r;
    states_to_json(opt.states);
  } else if (inst.kind == "multiparty") {
    const int r = f.restarts.value_or(50);
    const auto& t = std::get<MultipartiteLOCC>(inst.value);
    require_valid(t);
    const ProductOptimum opt = product_alternating(t.assemble(), t.dims, r, 200, f.seed);
    res["method"] = "alternating product ascent";
    res["value"] = opt.value;
    c["restarts"] = r;
    states_to_json(opt.states);
  } else if (inst.kind == "matrix") {
    if (!f.q) throw ParameterError("--q is required for a matrix instance");
    const int r = f.restarts.value_or(500);
    const double v = two_to_q_gradient(std::get<CMatrix>(inst.value), *f.q, r, 300, f.seed);
    res["method"] = "nonlinear power iteration";
    res["value"] = v;
    c["q"] = *f.q;
    c["restarts"] = r;
  } else {
    const int r = f.restarts.value_or(50);
    std::vector<CMatrix> xs;
    std::vector<CMatrix> ys;
    BanachDescriptor desc;
    InputSpace space{InputBall::density, 1};
    if (inst.kind == "channel") {
      if (!f.alpha) throw ParameterError("--alpha is required for a channel instance");
      const auto& ch = std::get<EBChannel>(inst.value);
      require_valid(ch);
      for (const auto& t : ch.terms) {
        xs.push_back(t.X);
        ys.push_back(t.Y);
      }
      desc = banach_constants(Family::schatten, *f.alpha, ch.d2);
      space.dim = ch.d1;
      c["alpha"] = *f.alpha;
    } else if (inst.kind == "general") {
      const auto& g = std::get<GeneralDecomposition>(inst.value);
      require_valid(g);
      xs = g.X;
      ys = g.Y;
      desc = g.space;
      space.dim = g.d1;
    } else {
      const auto& p = std::get<InjectiveProblem>(inst.value);
      if (p.domain == InputBall::density) throw ParameterError("injective domain must be S1, l1 or l2");
      xs = p.functionals;
      ys = p.ys;
      desc = p.space;
      space = InputSpace{p.domain, p.dim};
    }
    const LinearAscentResult opt = linear_ascent(xs, ys, desc, space, r, 100, f.seed);
    res["method"] = "linear ascent over extreme points";
    res["value"] = opt.value;
    c["restarts"] = r;
    witnesses.push_back(io::matrix_to_json(opt.point));
  }
  res["witnesses"] = std::move(witnesses);
  Json j = header("oracle");
  j["instance"] = instance_ref(f, inst);
  j["config"] = std::move(c);
  j["oracle"] = std::move(res);
  return j;
}

Json cmd_lemmas(const Flags& f, bool& all_pass) {
  Json j = header("lemma-check");
  Json c = Json::object();
  c["seed"] = f.seed;
  j["config"] = std::move(c);
  Json arr = Json::array();
  all_pass = true;
  for (const auto& r : run_lemma_suites(f.seed)) {
    Json e = Json::object();
    e["name"] = r.name;
    e["pass"] = r.pass;
    e["detail"] = r.detail;
    arr.push_back(std::move(e));
    all_pass = all_pass && r.pass;
  }
  j["lemmas"] = std::move(arr);
  j["all_pass"] = all_pass;
  return j;
}

void emit(const Json& doc, const Flags& f, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw ParameterError("cannot write --out file " + f.out);
  file << text;
}

void add_common(CLI::App* sub, Flags& f, bool estimator) {
  sub->add_option("file", f.file, "Instance file (JSON)")->required();
  if (estimator) {
    sub->add_option("--delta", f.delta, "Requested accuracy in (0, 1]");
    sub->add_option("--budget", f.budget, "Maximum number of net points")->capture_default_str();
    sub->add_option("--solver-iters", f.solver_iters, "Feasibility solver iterations per restart");
    sub->add_option("--solver-tol", f.solver_tol, "Feasibility solver tolerance");
    sub->add_option("--k", f.k, "Scan this k instead of the accuracy formula's");
    sub->add_option("--threads", f.threads, "Worker threads (0: logical cores)");
  }
  sub->add_option("--seed", f.seed, "Seed for every random choice")->capture_default_str();
  sub->add_option("--restarts", f.restarts, "Solver restarts (oracle: ascent restarts)");
  sub->add_option("--out", f.out, "Write the report here instead of standard output");
  sub->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json"}))->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Operator norm estimation on covering nets", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file against its constraints");
  add_common(validate_cmd, f, false);
  auto* hsep = app.add_subcommand("hsep", "h_Sep of a one-way LOCC measurement");
  add_common(hsep, f, true);
  hsep->add_option("--rank-bound", f.rank_bound, "Scan an S_2 net; needs ||Y_i||_2 <= this bound");
  auto* sparse = app.add_subcommand("hsep-sparse", "h_Sep after term sparsification");
  add_common(sparse, f, true);
  auto* multi = app.add_subcommand("hsep-multi", "h_Sep of a fully one-way multiparty measurement");
  add_common(multi, f, true);
  auto* channel = app.add_subcommand("channel-norm", "Maximum output Schatten norm of an EB channel");
  add_common(channel, f, true);
  channel->add_option("--alpha", f.alpha, "Schatten exponent (> 1)");
  auto* twoq = app.add_subcommand("two-to-q", "2 -> q norm of a matrix");
  add_common(twoq, f, true);
  twoq->add_option("--q", f.q, "Target exponent (>= 2)");
  twoq->add_flag("--even", f.even, "Use the multiparty chain for even q (value is ||A||^q)");
  auto* inj = app.add_subcommand("injective", "A -> B norm through an l1 factorization");
  add_common(inj, f, true);
  auto* orc = app.add_subcommand("oracle", "Local-search reference value");
  add_common(orc, f, false);
  orc->add_option("--q", f.q, "Target exponent for matrix instances");
  orc->add_option("--alpha", f.alpha, "Schatten exponent for channel instances");
  auto* lemmas = app.add_subcommand("lemma-check", "Empirical checks of the concentration and net lemmas");
  lemmas->add_option("--seed", f.seed, "Seed")->capture_default_str();
  lemmas->add_option("--out", f.out, "Write the report here instead of standard output");
  lemmas->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json"}))->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadParameter;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    if (command == "lemma-check") {
      bool all_pass = false;
      const Json doc = cmd_lemmas(f, all_pass);
      emit(doc, f, out);
      return all_pass ? kOk : kFailure;
    }
    const io::Instance inst = io::load_instance(f.file);
    if (command == "validate") {
      const Json doc = cmd_validate(f, inst);
      emit(doc, f, out);
      if (!doc["valid"].get<bool>()) {
        for (const auto& v : doc["violations"]) {
          err << "violation: " << v["constraint"].get<std::string>() << " (term " << v["index"].get<int>()
              << ", magnitude " << v["magnitude"].get<double>() << ")\n";
        }
        return kInvalidInput;
      }
      return kOk;
    }
    const Json doc = command == "oracle" ? cmd_oracle(f, inst) : cmd_estimate(command, f, inst);
    emit(doc, f, out);
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameter;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameter;
  } catch (const SparsificationFailed& e) {
    err << "error: " << e.what() << "\n";
    return kEstimatorFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, out, err);
}

}  // namespace netnorm::cli
