#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qcat/builtin.hpp"
#include "qcat/catalysis.hpp"
#include "qcat/decompositions.hpp"
#include "qcat/format.hpp"
#include "qcat/locc.hpp"
#include "qcat/measures.hpp"
#include "qcat/protocols.hpp"
#include "qcat/state_io.hpp"

namespace {

using namespace qcat;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

LoadedState load_state_arg(const std::string& arg) {
  if (auto named = builtin_state(arg)) return *named;
  return load_state_file(arg);
}

const PureState& require_pure(const LoadedState& state, const std::string& what) {
  if (const auto* pure = std::get_if<PureState>(&state)) return *pure;
  throw std::invalid_argument(what + " must be a pure state");
}

DensityOperator as_density(const LoadedState& state) {
  if (const auto* pure = std::get_if<PureState>(&state)) return to_density(*pure);
  return std::get<DensityOperator>(state);
}

std::vector<std::string> party_cut(const SystemLayout& layout, Party party) {
  auto labels = layout.labels_of(party);
  if (labels.empty() || labels.size() == layout.size()) return {};
  return labels;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write output file '" + path + "'");
  out << text;
}

std::string layout_line(const SystemLayout& layout) {
  std::ostringstream os;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto& s = layout.at(i);
    if (i) os << " ";
    os << s.label << "(dim " << s.dim << ", " << party_name(s.party) << ")";
  }
  return os.str();
}

std::string spectrum_line(std::span<const double> values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << " ";
    os << format_real(values[i]);
  }
  return os.str();
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse real number '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("expected at least one value in '" + text + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse integer '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("expected at least one value in '" + text + "'");
  return out;
}

int run_analyze(const std::string& input, const std::string& out_path) {
  const LoadedState state = load_state_arg(input);
  std::ostringstream report;

  if (const auto* pure = std::get_if<PureState>(&state)) {
    report << "kind: pure\n";
    report << "layout: " << layout_line(pure->layout()) << "\n";
    report << "dimension: " << pure->dimension() << "\n";
    report << "purity: " << format_real(1.0) << "\n";
    for (Party party : {Party::Alice, Party::Bob, Party::Referee, Party::Charlie,
                        Party::Catalyst, Party::Register}) {
      const auto cut = party_cut(pure->layout(), party);
      if (cut.empty()) continue;
      const SchmidtDecomposition sd = schmidt(*pure, cut);
      std::vector<double> coeffs(sd.coefficients.data(),
                                 sd.coefficients.data() + sd.coefficients.size());
      std::vector<double> probs;
      for (double c : coeffs) probs.push_back(c * c);
      report << "cut " << party_name(party) << "|rest:\n";
      report << "  entanglement entropy: " << format_real(entanglement_entropy(*pure, cut))
             << " bits\n";
      report << "  schmidt coefficients: " << spectrum_line(coeffs) << "\n";
      report << "  schmidt spectrum: " << spectrum_line(probs) << "\n";
    }
  } else {
    const auto& rho = std::get<DensityOperator>(state);
    report << "kind: density\n";
    report << "layout: " << layout_line(rho.layout()) << "\n";
    report << "dimension: " << rho.dimension() << "\n";
    report << "purity: " << format_real(rho.purity()) << "\n";
    report << "entropy: " << format_real(von_neumann_entropy(rho)) << " bits\n";
    const Eigen::VectorXd eigs = eigenvalues_descending(rho);
    report << "eigenvalues: "
           << spectrum_line(std::span<const double>(eigs.data(), eigs.size())) << "\n";
    for (Party party : {Party::Alice, Party::Bob, Party::Referee, Party::Charlie,
                        Party::Catalyst, Party::Register}) {
      const auto cut = party_cut(rho.layout(), party);
      if (cut.empty()) continue;
      const auto discard = rho.layout().labels_excluding(cut);
      report << "cut " << party_name(party) << "|rest:\n";
      report << "  marginal entropy: " << format_real(von_neumann_entropy(partial_trace(rho, discard)))
             << " bits\n";
    }
  }

  std::cout << report.str();
  if (!out_path.empty()) write_text(out_path, report.str());
  return kExitPass;
}

int run_convert(const std::string& psi_arg, const std::string& phi_arg) {
  const LoadedState psi_state = load_state_arg(psi_arg);
  const LoadedState phi_state = load_state_arg(phi_arg);
  const PureState& psi = require_pure(psi_state, "psi");
  const PureState& phi = require_pure(phi_state, "phi");

  const auto cut = party_cut(psi.layout(), Party::Alice);
  if (cut.empty()) throw std::invalid_argument("psi needs an Alice|rest bipartition");

  const ProbabilityVector p = schmidt_spectrum(psi, cut);
  const ProbabilityVector q = schmidt_spectrum(phi, party_cut(phi.layout(), Party::Alice));
  const ConvertibilityReport report = nielsen_convertible(psi, phi, cut);

  std::cout << "psi spectrum: " << spectrum_line(p.sorted_descending()) << "\n";
  std::cout << "phi spectrum: " << spectrum_line(q.sorted_descending()) << "\n";
  std::cout << "direct convertible: " << (report.direct ? "yes" : "no") << "\n";
  if (report.violated_index)
    std::cout << "violated partial sum index: " << *report.violated_index << "\n";
  return report.direct ? kExitPass : kExitFail;
}

int run_find_catalyst(const std::string& psi_arg, const std::string& phi_arg,
                      std::size_t catalyst_dim, std::size_t grid_steps) {
  const LoadedState psi_state = load_state_arg(psi_arg);
  const LoadedState phi_state = load_state_arg(phi_arg);
  const PureState& psi = require_pure(psi_state, "psi");
  const PureState& phi = require_pure(phi_state, "phi");

  const auto psi_cut = party_cut(psi.layout(), Party::Alice);
  const auto phi_cut = party_cut(phi.layout(), Party::Alice);
  if (psi_cut.empty() || phi_cut.empty())
    throw std::invalid_argument("both states need an Alice|rest bipartition");

  const ProbabilityVector p = schmidt_spectrum(psi, psi_cut);
  const ProbabilityVector q = schmidt_spectrum(phi, phi_cut);
  const auto found = catalyst_search(p, q, catalyst_dim, grid_steps);
  if (!found) {
    std::cout << "no catalyst found (dim " << catalyst_dim << ", grid " << grid_steps << ")\n";
    return kExitFail;
  }
  std::cout << "catalyst spectrum: " << spectrum_line(found->entries()) << "\n";
  return kExitPass;
}

int run_simulate(const std::string& rho_arg, const std::string& phi_arg, int n, double epsilon,
                 std::size_t dim_cap, const std::string& out_path) {
  const DensityOperator rho = as_density(load_state_arg(rho_arg));
  const LoadedState phi_state = load_state_arg(phi_arg);
  const PureState& phi = require_pure(phi_state, "the target state");

  ResourceLimits limits;
  limits.dim_cap = dim_cap;
  SyntheticRunSetup setup = prepare_synthetic_run(rho, phi, n, epsilon, limits);
  const ProtocolRunReport report = run_protocol(setup.construction, setup.channel);
  const bool pass = certify_decoupling(report);

  std::cout << "n: " << n << "\n";
  std::cout << "epsilon: " << format_real(epsilon) << "\n";
  std::cout << "output_error: " << format_real(report.output_error) << "\n";
  std::cout << "catalyst_deviation: " << format_real(report.catalyst_deviation) << "\n";
  std::cout << "decoupling_error: " << format_real(report.decoupling_error) << "\n";
  std::cout << "decoupling_bound: " << format_real(report.decoupling_bound) << "\n";
  std::cout << "certificate: " << (pass ? "PASS" : "FAIL") << "\n";

  if (!out_path.empty()) save_state_file(out_path, LoadedState(report.final_joint));
  return pass ? kExitPass : kExitFail;
}

int run_sweep(const std::string& rho_arg, const std::string& phi_arg, const std::string& n_list,
              const std::string& epsilon_list, std::size_t dim_cap,
              const std::string& out_path) {
  const DensityOperator rho = as_density(load_state_arg(rho_arg));
  const LoadedState phi_state = load_state_arg(phi_arg);
  const PureState& phi = require_pure(phi_state, "the target state");

  std::vector<SweepPoint> points;
  for (int n : parse_int_list(n_list))
    for (double eps : parse_real_list(epsilon_list)) points.push_back(SweepPoint{n, eps});

  ResourceLimits limits;
  limits.dim_cap = dim_cap;
  const std::vector<SweepRow> rows = sweep(rho, phi, points, limits);

  std::ostringstream table;
  write_sweep_table(table, rows);
  std::cout << table.str();
  if (!out_path.empty()) write_text(out_path, table.str());

  for (const SweepRow& row : rows)
    if (!row.pass) return kExitFail;
  return kExitPass;
}

void print_ledger(const ResourceLedger& ledger) {
  std::cout << "conditional_entropy: " << format_real(ledger.conditional_entropy) << "\n";
  std::cout << "case: " << ledger_case_name(ledger.ledger_case) << "\n";
  std::cout << "resource_entropy: " << format_real(ledger.resource_entropy) << "\n";
  std::cout << "resource_spectrum: " << spectrum_line(ledger.resource_spectrum.entries()) << "\n";
  if (ledger.direction)
    std::cout << "direction: " << merge_direction_name(*ledger.direction) << "\n";
}

int run_merge_ledger(const std::string& input, const std::string& out_path) {
  const LoadedState state = load_state_arg(input);
  const ResourceLedger ledger = merging_ledger(require_pure(state, "the input state"));
  print_ledger(ledger);
  if (!out_path.empty()) write_text(out_path, ledger_to_json(ledger) + "\n");
  return kExitPass;
}

int run_distill_ledger(const std::string& input, const std::string& out_path) {
  const LoadedState state = load_state_arg(input);
  const ResourceLedger ledger = distillation_ledger(require_pure(state, "the input state"));
  print_ledger(ledger);
  if (!out_path.empty()) write_text(out_path, ledger_to_json(ledger) + "\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Catalytic entanglement laboratory: state analysis, majorization certificates, "
               "catalyst construction, and entropy resource ledgers"};
  app.require_subcommand(1);

  long long seed = 0;
  app.add_option("--seed", seed,
                 "Seed for randomized helpers (current subcommands are deterministic)");

  std::string in_a, in_b, out_path;
  int n = 2;
  double epsilon = 0.0;
  std::size_t catalyst_dim = 2, grid_steps = 100, dim_cap = 4096;
  std::string n_list = "2", epsilon_list = "0";

  auto* analyze = app.add_subcommand("analyze", "Entropies, Schmidt data, and purity of a state");
  analyze->add_option("state", in_a, "State file or built-in name")->required();
  analyze->add_option("--out", out_path, "Also write the report to this file");

  auto* convert = app.add_subcommand(
      "convert", "Single-copy LOCC convertibility of psi into phi across the Alice|rest cut");
  convert->add_option("psi", in_a, "Source state (file or built-in)")->required();
  convert->add_option("phi", in_b, "Target state (file or built-in)")->required();

  auto* find_catalyst =
      app.add_subcommand("find-catalyst", "Grid search for a catalyst spectrum enabling psi -> phi");
  find_catalyst->add_option("psi", in_a, "Source state (file or built-in)")->required();
  find_catalyst->add_option("phi", in_b, "Target state (file or built-in)")->required();
  find_catalyst->add_option("--catalyst-dim", catalyst_dim, "Catalyst dimension (default 2)");
  find_catalyst->add_option("--grid-steps", grid_steps, "Simplex grid resolution (default 100)");

  auto* simulate = app.add_subcommand(
      "simulate", "Run the three-step catalytic protocol and certify its bounds");
  simulate->add_option("rho", in_a, "Input state (file or built-in)")->required();
  simulate->add_option("phi", in_b, "Pure target state (file or built-in)")->required();
  simulate->add_option("--n", n, "Number of system copies")->required();
  simulate->add_option("--epsilon", epsilon, "Accuracy of the synthetic n-copy state")->required();
  simulate->add_option("--dim-cap", dim_cap, "Joint dimension guard (default 4096)");
  simulate->add_option("--out", out_path, "Write the final joint state to this file");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Protocol runs over lists of n and epsilon, as a table");
  sweep_cmd->add_option("rho", in_a, "Input state (file or built-in)")->required();
  sweep_cmd->add_option("phi", in_b, "Pure target state (file or built-in)")->required();
  sweep_cmd->add_option("--n", n_list, "Comma-separated copy counts")->required();
  sweep_cmd->add_option("--epsilon", epsilon_list, "Comma-separated accuracies")->required();
  sweep_cmd->add_option("--dim-cap", dim_cap, "Joint dimension guard (default 4096)");
  sweep_cmd->add_option("--out", out_path, "Also write the table to this file");

  auto* merge =
      app.add_subcommand("merge-ledger", "Entropy ledger for catalytic state merging");
  merge->add_option("state", in_a, "Pure tripartite state (file or built-in)")->required();
  merge->add_option("--out", out_path, "Write the ledger document to this file");

  auto* distill =
      app.add_subcommand("distill-ledger", "Entropy ledger for catalytic assisted distillation");
  distill->add_option("state", in_a, "Pure tripartite state (file or built-in)")->required();
  distill->add_option("--out", out_path, "Write the ledger document to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(in_a, out_path);
    if (*convert) return run_convert(in_a, in_b);
    if (*find_catalyst) return run_find_catalyst(in_a, in_b, catalyst_dim, grid_steps);
    if (*simulate) return run_simulate(in_a, in_b, n, epsilon, dim_cap, out_path);
    if (*sweep_cmd) return run_sweep(in_a, in_b, n_list, epsilon_list, dim_cap, out_path);
    if (*merge) return run_merge_ledger(in_a, out_path);
    if (*distill) return run_distill_ledger(in_a, out_path);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
