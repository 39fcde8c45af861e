#include "cavity_swap/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cavity_swap/analysis.hpp"
#include "cavity_swap/dynamics.hpp"
#include "cavity_swap/protocol.hpp"
#include "cavity_swap/report.hpp"
#include "cavity_swap/verify.hpp"

namespace cavity_swap::cli {

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ProtocolParams params;
  std::string variant = "atom";
  std::string encoding = "same";
  std::string format = "csv";
  std::string out;
  std::string plot;
  std::string b_range;
  std::string k_range;
  std::string gt_range;
  std::optional<double> tolerance;
  bool verbose = false;

  double g = 2.0 * std::numbers::pi * 25e3;
  double radiative_time = 3e-2;
  double cavity_decay_time = 1e-3;
  std::size_t interactions = kDefaultBudgetFactor;
};

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoFailure("cannot open '" + path + "' for writing");
  file << contents;
  file.close();
  if (!file) throw IoFailure("failed writing '" + path + "'");
}

/// "start:stop:step", or a single value.
std::vector<double> parse_range(const std::string& text, const char* flag) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParams, std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3)
    throw Error(ErrorKind::InvalidParams, std::string(flag) + " expects start:stop:step");
  return linear_range(parts[0], parts[1], parts[2]);
}

void resolve_enums(RunConfig& cfg) {
  auto variant = parse_variant(cfg.variant);
  if (!variant) throw Error(ErrorKind::InvalidParams, "unknown variant '" + cfg.variant + "'");
  auto encoding = parse_encoding(cfg.encoding);
  if (!encoding) throw Error(ErrorKind::InvalidParams, "unknown encoding '" + cfg.encoding + "'");
  cfg.params.variant = *variant;
  cfg.params.encoding = *encoding;
}

std::ostream& six(std::ostream& os) { return os << std::setprecision(6); }

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  const ProtocolResult result = run_swap(cfg.params);
  const auto& p = result.params;

  out << six;
  out << "variant              " << to_string(p.variant) << '\n'
      << "encoding             " << to_string(p.encoding) << '\n'
      << "b                    " << p.b << '\n'
      << "k                    " << p.k << '\n'
      << "gt                   " << p.gt_clare << '\n'
      << "outcome_probability  " << result.outcome_probability << '\n'
      << "fidelity             " << result.fidelity << '\n'
      << "useful_probability   " << result.useful_probability << '\n'
      << "target_weight        " << result.target_weight << '\n';
  if (result.bob_fidelity) out << "bob_fidelity         " << *result.bob_fidelity << '\n';

  const StateVector evolved = jc_propagate(prepare_initial(p), {labels::kClareAtom, labels::kClareCavity, p.gt_clare});
  const MeasurementSpec detector = clare_detector(p, evolved.layout());
  const std::string_view kept = heralded_outcome(p.variant);
  out << "branches given " << detector.target_label << '=' << kept << " (weight, target overlap):\n";
  for (const auto& br : exact_branch_decomposition(evolved, detector, kept, result.target_state))
    out << "  " << std::left << std::setw(24) << br.label << std::right << ' ' << br.weight << ' '
        << br.overlap << '\n';

  if (cfg.verbose) {
    out << "post-selected state:\n";
    const auto& layout = result.post_state.layout();
    for (std::size_t i = 0; i < result.post_state.dimension(); ++i) {
      const Complex z = result.post_state[i];
      if (std::norm(z) < kVanishingProbability) continue;
      out << "  |";
      const auto idx = layout.multi_index(i);
      for (std::size_t s = 0; s < idx.size(); ++s) {
        if (layout.subsystems()[s].kind == SubsystemKind::Atom)
          out << (idx[s] == kExcited ? 'e' : 'g');
        else
          out << idx[s];
      }
      out << ">  " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i\n";
    }
  }

  if (!cfg.out.empty()) write_file(cfg.out, result_json(result).dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  SweepSpec spec = figure1_preset();
  spec.variant = cfg.params.variant;
  spec.encoding = cfg.params.encoding;
  spec.cavity_truncation = cfg.params.cavity_truncation;
  spec.k_values = {cfg.params.k};
  spec.gt_values = {cfg.params.gt_clare};
  if (!cfg.b_range.empty()) spec.b_values = parse_range(cfg.b_range, "--b-range");
  if (!cfg.k_range.empty()) spec.k_values = parse_range(cfg.k_range, "--k-range");
  if (!cfg.gt_range.empty()) spec.gt_values = parse_range(cfg.gt_range, "--gt-range");

  const auto records = sweep(spec);

  std::ostringstream body;
  if (cfg.format == "json")
    body << sweep_json(records).dump(2) << '\n';
  else
    write_sweep_csv(body, records);

  if (cfg.out.empty())
    out << body.str();
  else
    write_file(cfg.out, body.str());

  if (!cfg.plot.empty()) {
    std::ostringstream svg;
    write_fidelity_svg(svg, records);
    write_file(cfg.plot, svg.str());
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions options;
  options.tolerance = cfg.tolerance;
  const auto checks = run_verification(options);
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  deviation=" << std::setprecision(3)
        << c.deviation << " tolerance=" << c.tolerance << '\n';
  }
  out << (all ? "all checks passed\n" : "some checks failed\n");
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_timing(const RunConfig& cfg, std::ostream& out) {
  const TimingBudget t = timing_budget(cfg.g, cfg.radiative_time, cfg.cavity_decay_time, cfg.interactions);
  out << six;
  out << "g                    " << t.g << " rad/s\n"
      << "interaction_time     " << t.interaction_time_s << " s\n"
      << "total_time           " << t.total_time_s << " s\n"
      << "radiative_time       " << t.radiative_time_s << " s\n"
      << "cavity_decay_time    " << t.cavity_decay_time_s << " s\n"
      << "feasible             " << (t.feasible ? "true" : "false") << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Cavity-QED entanglement swapping simulator", "cavity_swap"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value file mirroring the long flags");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--b", cfg.params.b, "Coefficient b of the initial pairs, 0 < b < 1")->capture_default_str();
  app.add_option("--k", cfg.params.k, "Relative error of the cavity-pair coefficient")->capture_default_str();
  app.add_option("--gt", cfg.params.gt_clare, "Clare's interaction phase g*t")->capture_default_str();
  app.add_option("--variant", cfg.variant, "atom | cavity-vacuum")->capture_default_str();
  app.add_option("--encoding", cfg.encoding, "same | single")->capture_default_str();
  app.add_option("--truncation", cfg.params.cavity_truncation, "Fock levels kept per cavity")->capture_default_str();
  app.add_flag("--bob-readout", cfg.params.bob_readout, "Also run Bob's atom through cavity 4");
  app.add_option("--gt-bob", cfg.params.gt_bob, "Bob's interaction phase")->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (run: JSON result; sweep: CSV/JSON)");
  app.add_option("--format", cfg.format, "Sweep output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--plot", cfg.plot, "Sweep: write an SVG plot of fidelity vs b");
  app.add_option("--b-range", cfg.b_range, "Sweep b grid start:stop:step (default 0.05:0.95:0.01)");
  app.add_option("--k-range", cfg.k_range, "Sweep k grid start:stop:step");
  app.add_option("--gt-range", cfg.gt_range, "Sweep gt grid start:stop:step");
  app.add_option("--tolerance", cfg.tolerance, "Verify: override every check tolerance");
  app.add_flag("--verbose,-v", cfg.verbose, "Print the post-selected state");
  app.add_option("--g", cfg.g, "Timing: coupling constant in rad/s")->capture_default_str();
  app.add_option("--radiative-time", cfg.radiative_time, "Timing: atomic radiative time in s")->capture_default_str();
  app.add_option("--cavity-decay-time", cfg.cavity_decay_time, "Timing: cavity decay time in s")->capture_default_str();
  app.add_option("--interactions", cfg.interactions, "Timing: interaction times in the total budget")->capture_default_str();

  auto* run = app.add_subcommand("run", "Run one swap and print probabilities and fidelity")->fallthrough();
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep b (and optionally k, gt) and write CSV/JSON")->fallthrough();
  auto* verify = app.add_subcommand("verify", "Oracle and published-number checks")->fallthrough();
  auto* timing = app.add_subcommand("timing", "Interaction and total time budget")->fallthrough();

  std::vector<const char*> argv{"cavity_swap"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoFailure;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    resolve_enums(cfg);
    if (*run) return cmd_run(cfg, out);
    if (*sweep_cmd) return cmd_sweep(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*timing) return cmd_timing(cfg, out);
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace cavity_swap::cli
