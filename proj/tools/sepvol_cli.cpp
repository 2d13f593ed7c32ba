// Copyright 2026 The sepvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end. Every subcommand prints one JSON object on
// stdout; exit status is 0 on pass, 2 on a violated bound, 1 on bad usage.

#include "sepvol/report_io.hpp"
#include "sepvol/sepvol.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace sepvol;

struct Common {
  std::uint64_t seed = 1;
  std::int64_t samples = 10000;
  unsigned workers = 0;
  std::string csv;
};

int emit(const std::string& command, const TheoremReport& r, const Common& c, bool timing) {
  nlohmann::json j = to_json(r, timing);
  if (r.theorem == 0) {
    j.erase("theorem");
    j["command"] = command;
  }
  std::cout << j.dump(2) << '\n';
  if (!c.csv.empty()) write_csv(r, c.csv);
  return r.pass() ? 0 : 2;
}

TheoremReport cmd_vol_exact(int d) {
  ReportBuilder rb(0, 0);
  rb.input("d", d);
  const StateVolume v = vol_D_exact(d);
  const double scaled = v.vrad * std::sqrt(static_cast<double>(d));
  rb.bound("n", static_cast<double>(v.n));
  rb.bound("log_vol", v.log_vol);
  rb.bound("vol", std::exp(v.log_vol));
  rb.bound("log_vol_ball", v.log_vol_ball);
  rb.bound("vrad", v.vrad);
  rb.bound("vrad_sqrt_d", scaled);
  rb.bound("vrad_sqrt_d_e_quarter", scaled * std::exp(0.25));
  rb.require_le("vrad_sqrt_d_ge_half", 0.5, scaled);
  rb.require_le("vrad_sqrt_d_le_two", scaled, 2.0);
  return rb.finish();
}

TheoremReport cmd_alpha(int D) {
  ReportBuilder rb(0, 0);
  rb.input("D", D);
  rb.bound("alpha_D", alpha_D(D));
  rb.bound("log_det_phi", log_det_phi(D));
  for (int N = 1; N <= 3; ++N) {
    const auto [l, r] = alpha_identity_logs(D, N);
    rb.require_close("identity_N" + std::to_string(N), l, r, 1e-12);
  }
  return rb.finish();
}

TheoremReport cmd_width(const std::string& body, int D, int N, const Common& c,
                        const ExperimentOptions& opt) {
  const FactorShape shape(D, N);
  ReportBuilder rb(0, c.seed);
  rb.input("D", D);
  rb.input("N", N);
  rb.input("samples", c.samples);
  rb.note("body " + body);
  std::optional<BodyOracle> K;
  if (body == "D") {
    K = oracle_D_centered(shape);
  } else if (body == "Delta") {
    K = oracle_Delta(shape);
  } else if (body == "Sigma") {
    K = oracle_Sigma(shape, opt.n_starts, opt.n_sweeps, c.seed);
  } else {
    K = oracle_Gamma_ball(shape, opt.n_starts, opt.n_sweeps, c.seed);
  }
  const WidthEstimate wg = gaussian_width_mc(*K, c.samples, SeededStream(c.seed), opt.workers);
  const WidthEstimate w = wg.spherical();
  rb.bound("ambient_dim", static_cast<double>(wg.dim));
  rb.bound("gamma_n", gamma_n(wg.dim));
  rb.bound("trivial_upper", 1.0);
  if (wg.exactness == Exactness::exact) {
    const ExactEstimate e(wg), es(w);
    rb.estimate("gaussian_width", e);
    rb.estimate("width", es);
    rb.bound("urysohn_vrad_upper", urysohn_vrad_bound(wg));
    rb.require_le("width_le_trivial", es, 1.0);
  } else {
    const LowerEstimate e(wg), es(w);
    rb.estimate("gaussian_width", e);
    rb.estimate("width", es);
    rb.require_le("width_le_trivial", es, 1.0);
    if (body == "Sigma") {
      const SigmaWidthBound F = sigma_width_upper(shape, 0.5);
      rb.bound("width_net_upper", F.value_inf);
      rb.require_le("width_le_net_upper", es, F.value_inf);
    }
  }
  return rb.finish();
}

TheoremReport cmd_ppt(int D, const Common& c, const ExperimentOptions& opt) {
  ReportBuilder rb(0, c.seed);
  rb.input("D", D);
  rb.input("samples", c.samples);
  const PptFraction f = ppt_fraction_mc(D, c.samples, SeededStream(c.seed), opt.workers, 3.0);
  rb.estimate("ppt_fraction",
              ExactEstimate(f.fraction, std::sqrt(f.fraction * (1 - f.fraction) / f.samples),
                            f.samples));
  rb.bound("hits", static_cast<double>(f.hits));
  rb.bound("ci_lower", f.ci.lower);
  rb.bound("ci_upper", f.ci.upper);
  rb.bound("root", f.root);
  rb.bound("root_ci_lower", f.root_lower);
  rb.bound("root_ci_upper", f.root_upper);
  rb.bound("c0", 0.125);
  rb.require_le("c0_le_root", 0.125, f.root_lower);
  return rb.finish();
}

TheoremReport cmd_net(int dim, double delta, bool projective, const std::string& out,
                      const Common& c) {
  ReportBuilder rb(0, c.seed);
  rb.input("dim", dim);
  rb.input("projective", projective ? 1 : 0);
  rb.bound("delta", delta);
  const SphereNet net = build_net(dim, delta, SeededStream(c.seed), projective);
  write_net(net, out);
  const SphereNet back = read_net(out);
  rb.note("written to " + out);
  rb.bound("size", static_cast<double>(net.size()));
  rb.bound("cardinality_bound", cardinality_bound(dim, delta));
  rb.bound("covering_radius", net.covering_radius);
  rb.bound("validation_passes", net.validation_passes);
  rb.require_le("size_le_cardinality_bound", static_cast<double>(net.size()),
                cardinality_bound(dim, delta));
  rb.require_le("covering_radius_le_delta", net.covering_radius, delta);
  rb.require_true("round_trip", back.size() == net.size() && back.points == net.points);
  return rb.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume ratio and mean width experiments for separable quantum states"};
  app.require_subcommand(1);
  Common c;
  ExperimentOptions opt;
  bool timing = false;

  auto add_common = [&](CLI::App* s, bool with_samples) {
    s->add_option("--seed", c.seed, "64-bit seed");
    if (with_samples) s->add_option("--samples", c.samples, "Monte Carlo samples");
    s->add_option("--workers", opt.workers, "Worker threads (0 = hardware)");
    s->add_option("--csv", c.csv, "Also write a flat CSV table");
  };

  int vol_d = 0;
  auto* vol = app.add_subcommand("vol-exact", "Exact volume and vrad of the state set");
  vol->add_option("--d", vol_d, "Hilbert space dimension")->required()->check(CLI::Range(2, 64));
  vol->add_option("--csv", c.csv, "Also write a flat CSV table");

  std::string body;
  int D = 2, N = 2;
  auto* width = app.add_subcommand("width", "Monte Carlo mean width of a body");
  width->add_option("--body", body, "Body")
      ->required()
      ->check(CLI::IsMember({"D", "Delta", "Sigma", "Gamma"}));
  width->add_option("--D", D, "Local dimension")->check(CLI::Range(2, 16));
  width->add_option("--N", N, "Number of factors")->check(CLI::Range(1, 8));
  width->add_option("--starts", opt.n_starts, "Alternating restarts");
  width->add_option("--sweeps", opt.n_sweeps, "Alternating sweeps");
  add_common(width, true);

  int net_dim = 0;
  double net_delta = 0.5;
  std::string net_out;
  bool projective = false;
  auto* net = app.add_subcommand("net-build", "Greedy delta-net of a sphere");
  net->add_option("--dim", net_dim, "Real dimension of the sphere's ambient space")
      ->required()
      ->check(CLI::Range(1, 32));
  net->add_option("--delta", net_delta, "Covering radius")->required();
  net->add_option("--out", net_out, "Output file")->required();
  net->add_flag("--projective", projective, "Identify points up to a complex phase");
  add_common(net, false);

  int ppt_D = 2;
  auto* ppt = app.add_subcommand("ppt-fraction", "Fraction of PPT states");
  ppt->add_option("--D", ppt_D, "Local dimension")->check(CLI::Range(2, 4));
  add_common(ppt, true);

  int which = 1;
  auto* thm = app.add_subcommand("theorem", "Run one theorem harness");
  thm->add_option("which", which, "Theorem 1-4")->required()->check(CLI::Range(1, 4));
  thm->add_option("--D", D, "Local dimension");
  thm->add_option("--N", N, "Number of factors");
  thm->add_option("--starts", opt.n_starts, "Alternating restarts");
  thm->add_option("--sweeps", opt.n_sweeps, "Alternating sweeps");
  thm->add_flag("--timing", timing, "Include wall time in the output");
  add_common(thm, true);

  int alpha_d = 2;
  auto* alpha = app.add_subcommand("alpha", "Exponent alpha_D and its identity");
  alpha->add_option("--D", alpha_d, "Local dimension")->required()->check(CLI::Range(2, 1000));
  alpha->add_option("--csv", c.csv, "Also write a flat CSV table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*vol) return emit("vol-exact", cmd_vol_exact(vol_d), c, false);
    if (*alpha) return emit("alpha", cmd_alpha(alpha_d), c, false);
    if (*width) return emit("width", cmd_width(body, D, N, c, opt), c, false);
    if (*ppt) return emit("ppt-fraction", cmd_ppt(ppt_D, c, opt), c, false);
    if (*net) return emit("net-build", cmd_net(net_dim, net_delta, projective, net_out, c), c, false);
    if (*thm) {
      TheoremReport r;
      switch (which) {
        case 1: r = run_theorem1(D, N, c.samples, c.seed, opt); break;
        case 2: r = run_theorem2(D, N, c.samples, c.seed, opt); break;
        case 3: r = run_theorem3(N, c.samples, c.seed, opt); break;
        default: r = run_theorem4(D, c.samples, c.seed, opt); break;
      }
      return emit("theorem", r, c, timing);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
