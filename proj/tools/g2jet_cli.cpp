// g2jet command-line front end: verification suites, the jet Poisson solve and
// form utilities. Exit codes: 0 all claims pass, 1 a claim failed, 2 usage or
// input error (including unmet preconditions), 3 solver stagnation or
// exhausted truncation order.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "g2jet/io/form_file.hpp"
#include "g2jet/io/report.hpp"
#include "g2jet/verify/suites.hpp"

namespace fs = std::filesystem;
using namespace g2jet;

namespace {

enum Exit { kPass = 0, kClaimFail = 1, kUsage = 2, kStagnation = 3 };

struct Common {
  std::string format = "text";
  std::string backend = "rational";
  bool timings = false;
};

void emit(const Report& r, const Common& c) {
  if (c.format == "structured")
    std::cout << dump_json(r.to_json(c.timings));
  else
    std::cout << r.to_text(c.timings);
}

int finish(Report& r, const Common& c, const std::string& report_path = {}) {
  r.exit_code = r.error.empty() ? (r.all_pass() ? kPass : kClaimFail) : r.exit_code;
  if (!report_path.empty()) write_file_atomic(report_path, dump_json(r.to_json(c.timings)));
  emit(r, c);
  return r.exit_code;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::optional<int> order;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, const Common& c) {
  if (parse_backend(c.backend).kind != BackendSpec::Kind::rational)
    throw PreconditionFailed("the verification suites run over exact rationals; use --backend rational");
  SuiteOptions opt;
  opt.seed = a.seed;
  if (a.order) {
    if (*a.order < 4) throw PreconditionFailed("--order must be at least 4");
    opt.pointsolve_order = *a.order;
    opt.h3_order = std::max(*a.order, 5);
    opt.identity_order = *a.order;
  }
  Report r;
  r.command = "verify " + a.suite;
  r.backend = c.backend;
  r.inputs = "verify " + a.suite + " order=" + (a.order ? std::to_string(*a.order) : "default") +
             " seed=" + std::to_string(a.seed) + " backend=" + c.backend;
  r.sections = run_suite(a.suite, opt);
  return finish(r, c, a.out);
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string eta;
  std::optional<int> order;
  int sign = 1;
  std::string out;
  bool best_effort = false;
};

template <Field S>
Form<S> read_form(const std::string& path) {
  return form_from_json<S>(parse_json(read_file(path), path));
}

template <Field S>
Form<S> at_order(const Form<S>& a, std::optional<int> order) {
  if (!order || *order == a.order()) return a;
  if (*order < a.order()) return a.with_order(*order);
  if (!a.is_exact()) throw PreconditionFailed("cannot raise the order of a form that is not an exact polynomial");
  return a.with_order(*order);
}

template <Field S>
int solve_with(const SolveArgs& a, const Common& c, Report& r) {
  const std::string text = read_file(a.eta);
  r.inputs = "solve sign=" + std::to_string(a.sign) + " order=" + (a.order ? std::to_string(*a.order) : "file") +
             " backend=" + c.backend + "\n" + text;
  PoissonProblem<S> p;
  p.eta = at_order(form_from_json<S>(parse_json(text, a.eta)), a.order);
  p.sign = a.sign;
  p.normalization = detect_normalization(p.eta, a.sign);
  if (!p.normalization && a.best_effort)
    throw PreconditionFailed(
        "eta(0) is not a multiple of sign * sigma_can(0); the best-effort normalizer is not available for this "
        "input");
  const JetSolution<S> sol = jet_poisson_solve(p);
  Section s;
  s.name = "solve";
  s.claims = sol.claims;
  s.findings = sol.findings;
  r.sections.push_back(s);
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    write_file_atomic(fs::path(a.out) / "sigma.json", dump_form_file(form_to_json(sol.sigma)));
    write_file_atomic(fs::path(a.out) / "gauge.json", dump_form_file(field_to_json(sol.gauge)));
    write_file_atomic(fs::path(a.out) / "residual.json", dump_form_file(form_to_json(sol.residual)));
  }
  return 0;
}

int cmd_solve(const SolveArgs& a, const Common& c) {
  if (a.sign != 1 && a.sign != -1) throw CLI::ValidationError("--sign", "must be +1 or -1");
  Report r;
  r.command = "solve";
  r.backend = c.backend;
  const BackendSpec b = parse_backend(c.backend);
  try {
    switch (b.kind) {
      case BackendSpec::Kind::rational: solve_with<Rational>(a, c, r); break;
      case BackendSpec::Kind::radical: {
        RadicalField::Scope scope(RadicalField(b.degree, b.radicand));
        solve_with<Radical>(a, c, r);
        break;
      }
      case BackendSpec::Kind::bigfloat:
        throw PreconditionFailed("the certified solve needs an exact backend (rational or radical:d:r)");
    }
  } catch (const Stagnation& e) {
    r.error = std::string("stagnation: ") + e.what();
    r.exit_code = kStagnation;
  } catch (const InsufficientOrder& e) {
    r.error = std::string("insufficient order: ") + e.what();
    r.exit_code = kStagnation;
  } catch (const Error& e) {
    r.error = std::string("precondition: ") + e.what();
    r.exit_code = kUsage;
  }
  const std::string report = r.error.empty() && !a.out.empty() ? (fs::path(a.out) / "report.json").string() : "";
  return finish(r, c, report);
}

// ---- util -----------------------------------------------------------------

struct UtilArgs {
  std::string op;
  std::string input;
  std::string out;
  bool euclid = false;
  std::string structure;
  std::string s = "1";
};

template <Field S>
nlohmann::json metric_to_json(const MetricJet<S>& m) {
  nlohmann::json j = {{"format", "g2jet-form"}, {"version", kFormFileVersion}, {"kind", "metric"},
                      {"order", m.g[0][0].order()}, {"backend", active_backend<S>()}};
  int eff = m.g[0][0].order();
  bool exact = true;
  nlohmann::json terms = nlohmann::json::array();
  for (int i = 0; i < kDim; ++i)
    for (int k = i; k < kDim; ++k) {
      detail::append_terms(terms, m.g[i][k], {i + 1, k + 1});
      eff = std::min(eff, m.g[i][k].effective_order());
      exact = exact && m.g[i][k].is_exact();
    }
  if (!exact) j["effective_order"] = eff;
  j["terms"] = std::move(terms);
  return j;
}

template <Field S>
int util_with(const UtilArgs& a) {
  const Form<S> in = read_form<S>(a.input);
  std::string text;
  if (a.op == "metric") {
    text = dump_form_file(metric_to_json(G2Structure<S>(in).metric()));
  } else if (a.op == "star") {
    if (a.euclid) {
      text = dump_form_file(form_to_json(hodge_star_euclid(in)));
    } else {
      if (a.structure.empty()) throw CLI::ValidationError("star", "give --euclid or --structure FILE");
      const G2Structure<S> st(read_form<S>(a.structure));
      text = dump_form_file(form_to_json(hodge_star(st.metric(), in)));
    }
  } else if (a.op == "laplacian") {
    if (a.euclid) {
      text = dump_form_file(form_to_json(laplacian_euclid(in)));
    } else if (!a.structure.empty()) {
      const G2Structure<S> st(read_form<S>(a.structure));
      text = dump_form_file(form_to_json(hodge_laplacian(st.metric(), in)));
    } else {
      text = dump_form_file(form_to_json(G2Structure<S>(in).self_laplacian()));
    }
  } else if (a.op == "dilate") {
    const S s = scalar_traits<S>::parse(a.s);
    if (scalar_traits<S>::is_zero(s)) throw PreconditionFailed("dilation factor must be nonzero");
    text = dump_form_file(form_to_json(dilate(in, s)));
  }
  if (a.out.empty())
    std::cout << text;
  else
    write_file_atomic(a.out, text);
  return kPass;
}

int cmd_util(const UtilArgs& a, const Common& c) {
  const BackendSpec b = parse_backend(c.backend);
  switch (b.kind) {
    case BackendSpec::Kind::radical: {
      RadicalField::Scope scope(RadicalField(b.degree, b.radicand));
      return util_with<Radical>(a);
    }
    case BackendSpec::Kind::bigfloat: {
      BigFloatScope scope(b.bits);
      return util_with<BigFloat>(a);
    }
    default: return util_with<Rational>(a);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"g2jet: exact jet computations for closed G2-structures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--backend", common.backend, "rational | radical:d:r | bigfloat:bits");
    sub->add_flag("--timings", common.timings, "Include timings in reports");
  };

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", va.suite, "pointsolve | h3 | identities | all")
      ->required()
      ->check(CLI::IsMember({"pointsolve", "h3", "identities", "all"}));
  verify->add_option("--order", va.order, "Truncation order");
  verify->add_option("--seed", va.seed, "Seed of the randomized suites");
  verify->add_option("--out", va.out, "Also write the structured report to this file");
  add_common(verify);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve Delta_sigma sigma = eta to a given jet order");
  solve->add_option("eta", sa.eta, "Form file with the closed 3-form eta")->required()->check(CLI::ExistingFile);
  solve->add_option("--order", sa.order, "Truncation order (default: that of the file)");
  solve->add_option("--sign", sa.sign, "+1 for positive eta, -1 for negative");
  solve->add_option("--out", sa.out, "Directory for sigma.json, gauge.json, residual.json and report.json");
  solve->add_option("--seed", va.seed, "Unused by the solve; accepted for uniformity");
  solve->add_flag("--normalize-besteffort", sa.best_effort, "Try a numerical normalization of eta(0)");
  add_common(solve);

  UtilArgs ua;
  auto* util = app.add_subcommand("util", "Apply a single operation to a form file");
  util->add_option("op", ua.op, "star | metric | laplacian | dilate")
      ->required()
      ->check(CLI::IsMember({"star", "metric", "laplacian", "dilate"}));
  util->add_option("input", ua.input, "Form file")->required()->check(CLI::ExistingFile);
  util->add_option("--out", ua.out, "Output file (default: stdout)");
  util->add_flag("--euclid", ua.euclid, "Use the Euclidean metric (star, laplacian)");
  util->add_option("--structure", ua.structure, "3-form whose metric is used (star, laplacian)");
  util->add_option("--s", ua.s, "Dilation factor: x -> x / s");
  add_common(util);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) return cmd_verify(va, common);
    if (*solve) return cmd_solve(sa, common);
    if (*util) return cmd_util(ua, common);
  } catch (const CLI::Error& e) {
    std::cerr << "g2jet: " << e.what() << "\n";
    return kUsage;
  } catch (const Stagnation& e) {
    std::cerr << "g2jet: " << e.what() << "\n";
    return kStagnation;
  } catch (const Error& e) {
    std::cerr << "g2jet: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "g2jet: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
