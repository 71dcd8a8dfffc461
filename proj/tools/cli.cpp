// Copyright 2026 The qspa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qspa/acceptance.hpp"
#include "qspa/channels.hpp"
#include "qspa/designs.hpp"
#include "qspa/errors.hpp"
#include "qspa/estimator.hpp"
#include "qspa/io.hpp"
#include "qspa/optics.hpp"
#include "qspa/sic_measurement.hpp"
#include "qspa/witness.hpp"

namespace qspa::cli {

namespace {

using io::Json;

struct Common {
  std::uint64_t seed = 20260101;
  double tolerance = 1e-10;
  std::string json_path;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--tolerance", c.tolerance, "pass threshold for residuals")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--json", c.json_path, "write a JSON report to this path");
}

void emit(const Common& c, const Json& j) {
  if (!c.json_path.empty()) io::write_json(c.json_path, j);
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

std::string fixed(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(10) << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// verify-design

struct VerifyDesignArgs {
  std::size_t dim = 2;
  std::string kind;
  std::string fiducial;
  std::size_t max_iters = 2000;
};

int verify_design(const VerifyDesignArgs& a, const Common& c, std::ostream& out) {
  Design g;
  if (a.kind == "mub") {
    if (!a.fiducial.empty()) throw DomainError("--fiducial only applies to --kind sic");
    g = mub_prime(a.dim);
  } else if (!a.fiducial.empty()) {
    const Fiducial f(io::vectors_from_json(io::parse_json(io::read_text(a.fiducial))).at(0));
    if (f.dim() != a.dim) throw DomainError("fiducial dimension does not match --dim");
    g = sic_from_fiducial(f);
  } else if (a.dim == 2 || a.dim == 3) {
    g = sic_from_fiducial(builtin_fiducial(a.dim));
  } else {
    g = sic_from_fiducial(fiducial_search(a.dim, c.seed, a.max_iters).fiducial);
  }
  const bool ok = g.two_design_residual < c.tolerance && g.coherence_residual < c.tolerance;
  out << "design      " << to_string(g.kind) << ", d = " << g.d << ", " << g.size()
      << " vectors\n"
      << "two-design  " << sci(g.two_design_residual) << '\n'
      << "coherent    " << sci(g.coherence_residual) << '\n'
      << "tolerance   " << sci(c.tolerance) << '\n'
      << (ok ? "verified\n" : "FAILED\n");
  Json j;
  j["kind"] = std::string(to_string(g.kind));
  j["dim"] = g.d;
  j["vectors"] = g.size();
  j["two_design_residual"] = g.two_design_residual;
  j["coherence_residual"] = g.coherence_residual;
  j["tolerance"] = c.tolerance;
  j["verified"] = ok;
  emit(c, j);
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------
// search-fiducial

struct SearchArgs {
  std::size_t dim = 4;
  std::size_t max_iters = 2000;
  std::string out_path;
};

int search_fiducial(const SearchArgs& a, const Common& c, std::ostream& out) {
  FiducialSearchResult r = [&] {
    try {
      return fiducial_search(a.dim, c.seed, a.max_iters);
    } catch (const SearchFailed& e) {
      out << "search failed, best frame-potential residual " << sci(e.best_residual) << '\n';
      throw;
    }
  }();
  const Json file = io::vectors_to_json(a.dim, {r.fiducial.ket()});
  if (!a.out_path.empty()) io::write_json(a.out_path, file);
  else out << file.dump(2) << '\n';
  out << "frame-potential residual  " << sci(r.frame_potential_residual) << '\n'
      << "max overlap deviation     " << sci(r.max_overlap_deviation) << '\n'
      << "iterations                " << r.iterations << '\n'
      << "restarts                  " << r.restarts << '\n';
  Json j;
  j["dim"] = a.dim;
  j["seed"] = c.seed;
  j["frame_potential_residual"] = r.frame_potential_residual;
  j["max_overlap_deviation"] = r.max_overlap_deviation;
  j["iterations"] = r.iterations;
  j["restarts"] = r.restarts;
  j["fiducial"] = file;
  emit(c, j);
  return kOk;
}

// ---------------------------------------------------------------------------
// apply-approx-transpose

struct ApplyArgs {
  std::string state;
  std::string via = "formula";
  std::string out_path;
};

// Every realization available in dimension d, in a fixed order.
std::vector<std::pair<std::string, Channel>> realizations(std::size_t d) {
  std::vector<std::pair<std::string, Channel>> out;
  out.emplace_back("formula", approx_transpose(d));
  if (d == 2 || d == 3)
    out.emplace_back("design", measure_prepare_from_design(sic_from_fiducial(builtin_fiducial(d))).channel);
  else if (is_prime(d))
    out.emplace_back("design", measure_prepare_from_design(mub_prime(d)).channel);
  if (d == 2 || d == 3) out.emplace_back("two-step", circuit_channel(builtin_fiducial(d)));
  if (d == 2)
    out.emplace_back("optics", optics::output_channel(optics::build_fig2_pipeline(builtin_fiducial(2))));
  return out;
}

int apply_approx_transpose(const ApplyArgs& a, const Common& c, std::ostream& out) {
  const DensityMatrix rho = io::parse_state_file(a.state);
  const std::size_t d = rho.dim();
  if (d < 2) throw DomainError("state dimension must be at least 2");
  const auto methods = realizations(d);
  const auto chosen = std::find_if(methods.begin(), methods.end(),
                                   [&](const auto& m) { return m.first == a.via; });
  if (chosen == methods.end())
    throw DomainError("--via " + a.via + " is not available in dimension " + std::to_string(d));

  const DensityMatrix result(chosen->second.apply(rho.op().with_dims({d})));
  const Json state = io::state_to_json(result);
  if (!a.out_path.empty()) io::write_json(a.out_path, state);
  else out << state.dump(2) << '\n';

  bool ok = true;
  Json pairs = Json::array();
  out << "CJ cross-check (d = " << d << ", via " << a.via << ")\n";
  for (std::size_t i = 0; i < methods.size(); ++i)
    for (std::size_t k = i + 1; k < methods.size(); ++k) {
      const double dist = cj_distance(methods[i].second, methods[k].second);
      ok = ok && dist < c.tolerance;
      out << "  " << std::left << std::setw(9) << methods[i].first << " vs " << std::setw(9)
          << methods[k].first << ' ' << sci(dist) << '\n';
      Json p;
      p["a"] = methods[i].first;
      p["b"] = methods[k].first;
      p["cj_distance"] = dist;
      pairs.push_back(std::move(p));
    }
  out << (ok ? "agree\n" : "DISAGREE\n");
  Json j;
  j["via"] = a.via;
  j["output"] = state;
  j["cross_check"] = std::move(pairs);
  j["tolerance"] = c.tolerance;
  j["agree"] = ok;
  emit(c, j);
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------
// detect / tripartite-demo

void print_report(const DetectionReport& rep, std::ostream& out) {
  out << std::left << std::setw(8) << "cut" << std::setw(16) << "value" << std::setw(16)
      << "threshold" << std::setw(14) << "verdict"
      << "ppt\n";
  for (const auto& e : rep.cuts)
    out << std::setw(8) << e.cut << std::setw(16) << fixed(e.value) << std::setw(16)
        << fixed(e.threshold) << std::setw(14) << to_string(e.verdict)
        << (e.ppt ? to_string(e.ppt->verdict) : "-") << '\n';
  for (const auto& cav : rep.caveats) out << "caveat: " << cav << '\n';
}

struct DetectArgs {
  std::string state;
  std::vector<std::string> cuts;
  std::uint64_t shots = 0;
  double confidence = 0.95;
};

int detect_cmd(const DetectArgs& a, const Common& c, std::ostream& out) {
  const DensityMatrix rho = io::parse_state_file(a.state);
  const std::size_t parties = rho.dims().size();
  std::vector<CutSpec> specs;
  for (const auto& s : a.cuts) specs.push_back(parse_cut(s, parties));
  const DetectionReport rep = detect_across_cuts(rho, specs);
  print_report(rep, out);

  std::map<std::string, ConfidenceResult> est;
  if (a.shots > 0) {
    out << "estimator (" << a.shots << " shots, level " << a.confidence << ")\n";
    for (const auto& s : specs) {
      const auto w = multipartite_aew(parties, rho.dims().front(), s.left.front());
      const ConfidenceResult r = detect_with_confidence(rho, w.aew, a.shots, c.seed, a.confidence);
      out << "  " << std::left << std::setw(8) << s.label << "estimate " << fixed(r.shots.estimate)
          << "  bounds [" << fixed(r.lower_bound) << ", " << fixed(r.upper_bound) << "]  "
          << to_string(r.verdict) << '\n';
      est.emplace(s.label, r);
    }
  }
  emit(c, io::report_to_json(rep, est));
  return kOk;
}

int tripartite_demo(const Common& c, std::ostream& out) {
  const TripartiteEvaluation ev = evaluate_tripartite_example();
  print_report(ev.report, out);
  out << "A|BC oracle value " << fixed(ev.abc_value) << ", printed " << fixed(ev.printed_abc_value)
      << ", closed form " << fixed(ev.abc_closed_form_value) << " / conjugated "
      << fixed(ev.abc_closed_form_conjugate_value) << '\n';
  const auto& cuts = ev.report.cuts;
  const bool ok = cuts.size() == 3 && cuts[0].verdict == Verdict::Detected &&
                  cuts[1].verdict == Verdict::Boundary && cuts[2].verdict == Verdict::Boundary;
  Json j = io::report_to_json(ev.report);
  j["abc_value"] = ev.abc_value;
  j["printed_abc_value"] = ev.printed_abc_value;
  j["abc_closed_form_value"] = ev.abc_closed_form_value;
  j["abc_closed_form_conjugate_value"] = ev.abc_closed_form_conjugate_value;
  emit(c, j);
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------
// verify-all

int verify_all(std::size_t max_dim, const Common& c, std::ostream& out) {
  const auto results = acceptance::run_all({max_dim, c.seed});
  Json arr = Json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    out << acceptance::format(r) << '\n';
    passed += r.passed;
    Json e;
    e["id"] = r.id;
    e["title"] = r.title;
    e["passed"] = r.passed;
    e["detail"] = r.detail;
    arr.push_back(std::move(e));
  }
  out << passed << '/' << results.size() << " criteria passed\n";
  Json j;
  j["max_dim"] = max_dim;
  j["seed"] = c.seed;
  j["criteria"] = std::move(arr);
  emit(c, j);
  return passed == results.size() ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate transpose, SIC measurements and approximate entanglement witnesses",
               "qspa"};
  app.require_subcommand(1);

  Common common;

  VerifyDesignArgs vd;
  auto* vd_cmd = app.add_subcommand("verify-design", "check the two-design and coherence residuals");
  vd_cmd->add_option("--dim", vd.dim, "dimension")->required()->check(CLI::Range(2, 64));
  vd_cmd->add_option("--kind", vd.kind, "sic or mub")
      ->required()
      ->check(CLI::IsMember({"sic", "mub"}));
  vd_cmd->add_option("--fiducial", vd.fiducial, "fiducial file (sic only)");
  vd_cmd->add_option("--max-iters", vd.max_iters, "search iterations when no fiducial is known");
  add_common(vd_cmd, common);

  SearchArgs sa;
  auto* sa_cmd = app.add_subcommand("search-fiducial", "numerically search for a SIC fiducial");
  sa_cmd->add_option("--dim", sa.dim, "dimension")->required()->check(CLI::Range(2, 16));
  sa_cmd->add_option("--max-iters", sa.max_iters, "L-BFGS iterations per restart")
      ->capture_default_str();
  sa_cmd->add_option("--out", sa.out_path, "fiducial file to write (stdout if absent)");
  add_common(sa_cmd, common);

  ApplyArgs aa;
  auto* aa_cmd = app.add_subcommand("apply-approx-transpose",
                                    "apply the approximate transpose to a state file");
  aa_cmd->add_option("--state", aa.state, "input state file")->required();
  aa_cmd->add_option("--via", aa.via, "realization")
      ->capture_default_str()
      ->check(CLI::IsMember({"design", "formula", "two-step", "optics"}));
  aa_cmd->add_option("--out", aa.out_path, "output state file (stdout if absent)");
  add_common(aa_cmd, common);

  DetectArgs da;
  auto* da_cmd = app.add_subcommand("detect", "evaluate approximate witnesses across cuts");
  da_cmd->add_option("--state", da.state, "input state file")->required();
  da_cmd->add_option("--cut", da.cuts, "cut such as A|BC (repeatable)")->required();
  auto* shots = da_cmd->add_option("--shots", da.shots, "swap-test shots per cut")
                    ->check(CLI::PositiveNumber);
  da_cmd->add_option("--confidence", da.confidence, "confidence level in (0, 1)")
      ->needs(shots)
      ->check(CLI::Range(0.0, 1.0));
  add_common(da_cmd, common);

  auto* td_cmd = app.add_subcommand("tripartite-demo", "the three-qubit worked example");
  add_common(td_cmd, common);

  std::size_t max_dim = 5;
  auto* va_cmd = app.add_subcommand("verify-all", "run the full acceptance suite");
  va_cmd->add_option("--max-dim", max_dim, "largest swept dimension")
      ->capture_default_str()
      ->check(CLI::Range(2, 8));
  add_common(va_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qspa: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*vd_cmd) return verify_design(vd, common, out);
    if (*sa_cmd) return search_fiducial(sa, common, out);
    if (*aa_cmd) return apply_approx_transpose(aa, common, out);
    if (*da_cmd) return detect_cmd(da, common, out);
    if (*td_cmd) return tripartite_demo(common, out);
    if (*va_cmd) return verify_all(max_dim, common, out);
  } catch (const ParseError& e) {
    err << "qspa: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "qspa: invalid state: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {  // includes NotPrimeError
    err << "qspa: " << e.what() << '\n';
    return kUsage;
  } catch (const IndexError& e) {
    err << "qspa: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "qspa: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace qspa::cli
