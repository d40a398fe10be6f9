// SPDX-License-Identifier: Apache-2.0
//
// scalarspec: verification CLI for curvature invariants, stability spectra,
// and conformal balancing on constant-scalar-curvature hypersurfaces of the
// unit sphere.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>

#include "scalarspec/balancing.hpp"
#include "scalarspec/models.hpp"
#include "scalarspec/report.hpp"
#include "scalarspec/suites.hpp"
#include "scalarspec/zonal.hpp"

#include <iostream>
#include <optional>

namespace {

using namespace scalarspec;

struct CommonFlags {
  std::optional<std::string> config_path;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> c;
  std::optional<double> r;
  std::optional<int> resolution;
  std::vector<int> grid;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::optional<std::string> out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON sweep config; flags override its values");
  cmd->add_option("--n", flags.n, "restrict the sweep to one hypersurface dimension");
  cmd->add_option("--m", flags.m, "restrict product models to one factor split");
  cmd->add_option("--c", flags.c, "product radius (defaults to the balanced radius)");
  cmd->add_option("--r", flags.r, "normalized scalar curvature for umbilical models");
  cmd->add_option("--resolution", flags.resolution, "sampling resolution (even, >= 8)");
  cmd->add_option("--grid", flags.grid, "grid sizes for the discrete suite");
  cmd->add_option("--tol", flags.tol, "override the suite's headline tolerance");
  cmd->add_option("--seed", flags.seed, "seed for randomized checks");
  cmd->add_option("--format", flags.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags.out, "write the report to this path instead of stdout");
}

const char* headline_tolerance(Suite suite) {
  switch (suite) {
    case Suite::Identities: return "identities";
    case Suite::Bounds: return "bounds";
    case Suite::Lemmas: return "integral";
    case Suite::Discrete: return "discrete_lambda2";
    case Suite::Center: return "centering";
    case Suite::All: return "identities";
  }
  return "identities";
}

SweepConfig build_config(const CommonFlags& flags, Suite suite) {
  SweepConfig config;
  if (flags.config_path) {
    // An unreadable or malformed config is a usage problem, not an I/O one.
    std::string text;
    try {
      text = read_text_file(*flags.config_path);
    } catch (const IoError& err) {
      throw ParameterError(err.what());
    }
    config = config_from_json(text);
  }
  if (flags.n) config.n_min = config.n_max = *flags.n;
  if (flags.m) config.m_list = {*flags.m};
  if (flags.r) config.r_list = {*flags.r};
  if (flags.resolution) config.resolution = *flags.resolution;
  if (!flags.grid.empty()) config.grid_sizes = flags.grid;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.tol) {
    config.tolerances[headline_tolerance(suite)] = *flags.tol;
    if (suite == Suite::All) config.tolerances["bounds"] = *flags.tol;
  }
  config.validate();
  return config;
}

int emit(const RunReport& report, const CommonFlags& flags) {
  const std::string text =
      (flags.format == "json") ? report_to_json(report) : report_to_csv(report);
  if (flags.out)
    write_text_file(*flags.out, text);
  else
    std::cout << text;
  return report.overall_pass ? 0 : 1;
}

int run_suite_command(const CommonFlags& flags, Suite suite) {
  const SweepConfig config = build_config(flags, suite);
  const RunReport report = run_suite(config, suite);
  return emit(report, flags);
}

int run_spectra(const CommonFlags& flags, const std::string& family, int cutoff) {
  RunReport report;
  report.suite = "spectra";
  report.tool_version = kToolVersion;

  HypersurfaceModel model =
      (family == "umbilical")
          ? make_umbilical(flags.n.value_or(5), flags.r.value_or(2.0))
          : make_clifford(flags.n.value_or(5), flags.m.value_or(1),
                          flags.c ? *flags.c
                                  : critical_radius(flags.n.value_or(5), flags.m.value_or(1)));

  const std::string case_name =
      (family == "umbilical")
          ? "umbilical_n" + std::to_string(model_dimension(model))
          : "clifford_n" + std::to_string(model_dimension(model)) + "_m" +
                std::to_string(std::get<CliffordProduct>(model).m);

  auto push_spectrum = [&](const Spectrum& spec) {
    const std::string op = to_string(spec.operator_tag);
    int index = 1;
    for (const auto& entry : spec.entries) {
      ReportRow row;
      row.suite = "spectra";
      row.case_name = case_name;
      row.n = model_dimension(model);
      if (const auto* cp = std::get_if<CliffordProduct>(&model)) {
        row.m = cp->m;
        row.c_or_r = cp->c;
      } else {
        row.c_or_r = std::get<UmbilicalSphere>(model).r;
      }
      row.quantity = op + "_lambda" + std::to_string(index++);
      row.value = entry.eigenvalue;
      row.bound_or_target = static_cast<double>(entry.multiplicity);
      row.pass = true;
      report.add(std::move(row));
    }
  };
  if (const auto* cp = std::get_if<CliffordProduct>(&model)) push_spectrum(box_spectrum(*cp, cutoff));
  push_spectrum(js_spectrum(model, cutoff));
  return emit(report, flags);
}

int run_center(const CommonFlags& flags, const std::string& samples_in,
               const std::string& samples_out) {
  if (!samples_in.empty()) {
    // Center an externally supplied sample with uniform weights.
    const auto sample = samples_from_json(read_text_file(samples_in));
    const double tol = flags.tol.value_or(1e-8);
    const auto res = centering_solve(sample, VecX::Ones(sample.count()), tol);
    RunReport report;
    report.suite = "center";
    report.tool_version = kToolVersion;
    ReportRow row;
    row.suite = "center";
    row.case_name = "imported";
    row.n = sample.dim();
    row.quantity = "residual_over_mass";
    row.value = res.residual / res.mass;
    row.bound_or_target = 0.0;
    row.slack = tol - row.value;
    row.tolerance = tol;
    row.pass = row.value <= tol;
    report.add(std::move(row));
    return emit(report, flags);
  }
  if (!samples_out.empty()) {
    const SweepConfig config = build_config(flags, Suite::Center);
    const int n = flags.n.value_or(5);
    const HypersurfaceModel model =
        flags.r ? make_umbilical(n, *flags.r)
                : make_clifford(n, flags.m.value_or(1),
                                flags.c ? *flags.c : critical_radius(n, flags.m.value_or(1)));
    write_text_file(samples_out, samples_to_json(sample_model(model, config.resolution)));
    return 0;
  }
  return run_suite_command(flags, Suite::Center);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scalarspec: spectral verification of constant-scalar-curvature hypersurfaces"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* spectra_cmd = app.add_subcommand("spectra", "closed-form model spectra");
  std::string family = "clifford";
  int cutoff = 3;
  spectra_cmd->add_option("--family", family, "umbilical or clifford")
      ->check(CLI::IsMember({"umbilical", "clifford"}));
  spectra_cmd->add_option("--cutoff", cutoff, "factor-degree enumeration cutoff");
  add_common_flags(spectra_cmd, flags);

  auto* verify_cmd = app.add_subcommand("verify", "identity/bound/lemma suites");
  std::string suite_name = "all";
  verify_cmd->add_option("--suite", suite_name, "identities, bounds, lemmas, discrete, center, all")
      ->check(CLI::IsMember({"identities", "bounds", "lemmas", "discrete", "center", "all"}));
  add_common_flags(verify_cmd, flags);

  auto* discrete_cmd = app.add_subcommand("discrete", "finite-difference confirmation suite");
  add_common_flags(discrete_cmd, flags);

  auto* center_cmd = app.add_subcommand("center", "conformal centering runs");
  std::string samples_in, samples_out;
  center_cmd->add_option("--samples-in", samples_in, "center a sample loaded from JSON");
  center_cmd->add_option("--samples-out", samples_out, "write the sampled model as JSON");
  add_common_flags(center_cmd, flags);

  auto* sweep_cmd = app.add_subcommand("sweep", "run every suite across the sweep");
  add_common_flags(sweep_cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean; anything else is usage
  }

  try {
    if (spectra_cmd->parsed()) return run_spectra(flags, family, cutoff);
    if (verify_cmd->parsed()) return run_suite_command(flags, suite_from_string(suite_name));
    if (discrete_cmd->parsed()) return run_suite_command(flags, Suite::Discrete);
    if (center_cmd->parsed()) return run_center(flags, samples_in, samples_out);
    if (sweep_cmd->parsed()) return run_suite_command(flags, Suite::All);
  } catch (const IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return 3;
  } catch (const ParameterError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return 2;
  } catch (const Error& err) {
    std::cerr << "check failure: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
