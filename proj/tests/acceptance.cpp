// Acceptance suite: one certified run per criterion, one PASS/FAIL line each.
// Exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcat/builtin.hpp"
#include "qcat/catalysis.hpp"
#include "qcat/decompositions.hpp"
#include "qcat/format.hpp"
#include "qcat/locc.hpp"
#include "qcat/measures.hpp"
#include "qcat/protocols.hpp"
#include "qcat/random.hpp"

using namespace qcat;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CriterionResult {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

struct GridRun {
  int n;
  double epsilon;
  ProtocolRunReport report;
  DensityOperator gamma;
  double run_seconds;
};

PureState grid_target() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = std::sqrt(0.8);
  amps(3) = std::sqrt(0.2);
  return PureState(SystemLayout({Subsystem{"A", 2, Party::Alice}, Subsystem{"B", 2, Party::Bob}}),
                   std::move(amps));
}

// Shared protocol grid for criteria 1-3: two-qubit system, n in {2, 3},
// epsilon in {0, 1e-2, 1e-4}.
std::vector<GridRun> run_grid() {
  const DensityOperator rho = to_density(bell_state());
  const PureState target = grid_target();
  std::vector<GridRun> runs;
  for (int n : {2, 3}) {
    for (double epsilon : {0.0, 1e-2, 1e-4}) {
      const auto start = Clock::now();
      SyntheticRunSetup setup = prepare_synthetic_run(rho, target, n, epsilon);
      ProtocolRunReport report = run_protocol(setup.construction, setup.channel);
      const double elapsed = seconds_since(start);
      runs.push_back(GridRun{n, epsilon, std::move(report),
                             std::move(setup.construction.gamma), elapsed});
    }
  }
  return runs;
}

// Average single-copy marginal of gamma, evaluated independently of the
// protocol path.
DensityOperator average_marginal(const DensityOperator& gamma, int n, const SystemLayout& base) {
  std::vector<std::pair<double, DensityOperator>> terms;
  for (int k = 1; k <= n; ++k) {
    std::vector<std::string> discard;
    for (int j = 1; j <= n; ++j) {
      if (j == k) continue;
      for (const auto& label : copy_labels(base, j)) discard.push_back(label);
    }
    DensityOperator marginal = partial_trace(gamma, discard);
    std::vector<std::pair<std::string, std::string>> renames;
    for (const auto& s : base.subsystems())
      renames.emplace_back(copy_label(s.label, k), copy_label(s.label, 1));
    terms.emplace_back(1.0 / n, relabel(marginal, renames));
  }
  return mix(terms);
}

CriterionResult criterion_1_catalyst_invariance(const std::vector<GridRun>& runs) {
  CriterionResult result;
  double worst = 0.0;
  double slowest = 0.0;
  for (const GridRun& run : runs) {
    worst = std::max(worst, run.report.catalyst_deviation);
    slowest = std::max(slowest, run.run_seconds);
    result.require(run.report.catalyst_deviation <= 1e-9,
                   "deviation " + format_real(run.report.catalyst_deviation) + " at n=" +
                       std::to_string(run.n) + " eps=" + format_real(run.epsilon));
    result.require(run.run_seconds < 10.0, "run took " + std::to_string(run.run_seconds) + " s");
  }
  if (result.pass) {
    result.detail << "max deviation " << worst << ", slowest run " << slowest << " s";
  }
  return result;
}

CriterionResult criterion_2_output_bound(const std::vector<GridRun>& runs,
                                         const SystemLayout& base) {
  CriterionResult result;
  for (const GridRun& run : runs) {
    const std::string where =
        " at n=" + std::to_string(run.n) + " eps=" + format_real(run.epsilon);
    if (run.epsilon > 0.0) {
      result.require(run.report.output_error < run.epsilon,
                     "output error " + format_real(run.report.output_error) + where);
    } else {
      result.require(run.report.output_error <= 1e-9,
                     "nonzero output error " + format_real(run.report.output_error) + where);
    }
    const DensityOperator average = average_marginal(run.gamma, run.n, base);
    const double independent = trace_distance(average, to_density(run.report.target));
    result.require(std::abs(run.report.output_error - independent) <= 1e-10,
                   "marginal mismatch " +
                       std::to_string(std::abs(run.report.output_error - independent)) + where);
  }
  return result;
}

CriterionResult criterion_3_decoupling_bound(const std::vector<GridRun>& runs) {
  CriterionResult result;
  for (const GridRun& run : runs) {
    const std::string where =
        " at n=" + std::to_string(run.n) + " eps=" + format_real(run.epsilon);
    const double bound = run.epsilon + 3.0 * std::sqrt(run.epsilon);
    result.require(run.report.decoupling_bound == bound, "bound mismatch" + where);
    result.require(run.report.decoupling_error < bound + 1e-9,
                   "decoupling error " + format_real(run.report.decoupling_error) + where);
    if (run.epsilon == 1e-4) {
      result.require(format_real(run.report.decoupling_bound) == "0.030100000000",
                     "printed bound '" + format_real(run.report.decoupling_bound) + "'" + where);
      result.require(certify_decoupling(run.report), "certificate failed" + where);
    }
  }
  return result;
}

CriterionResult criterion_4_blocked_pair() {
  CriterionResult result;
  const auto start = Clock::now();

  const ConvertibilityReport direct =
      nielsen_convertible(jp_psi_state(), jp_phi_state(), std::vector<std::string>{"A"});
  result.require(!direct.direct, "pair unexpectedly convertible");
  result.require(direct.violated_index.has_value() && *direct.violated_index == 2,
                 "violated index is not 2");

  const ProbabilityVector psi({0.4, 0.4, 0.1, 0.1});
  const ProbabilityVector phi({0.5, 0.25, 0.25});
  result.require(check_catalyzed(psi, phi, ProbabilityVector({0.6, 0.4})),
                 "(0.6, 0.4) catalyst rejected");

  const auto found = catalyst_search(psi, phi, 2, 100);
  result.require(found.has_value(), "no catalyst found");
  if (found) {
    const double dist = std::max(std::abs((*found)[0] - 0.6), std::abs((*found)[1] - 0.4));
    result.require(dist <= 0.01,
                   "found spectrum is " + std::to_string(dist) + " from (0.6, 0.4)");
    if (result.pass)
      result.detail << "catalyst (" << format_real((*found)[0]) << ", "
                    << format_real((*found)[1]) << ")";
  }

  const double elapsed = seconds_since(start);
  result.require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  return result;
}

CriterionResult criterion_5_entropy_condition() {
  CriterionResult result;
  std::mt19937_64 rng(20250808);
  std::uniform_int_distribution<std::size_t> rank(2, 4);
  int catalyzed_pairs = 0;
  for (int trial = 0; trial < 500; ++trial) {
    // Random pure-state pair of Schmidt rank <= 4, scrambled by local
    // unitaries so the spectra pass through the Schmidt machinery.
    const ProbabilityVector p_raw = random_probability_vector(rank(rng), rng);
    const ProbabilityVector q_raw = random_probability_vector(rank(rng), rng);
    PureState psi = pure_from_spectrum(p_raw);
    PureState phi = pure_from_spectrum(q_raw);
    psi = apply_local_unitary(psi, random_unitary(psi.layout().dim_of("A"), rng),
                              std::vector<std::string>{"A"});
    psi = apply_local_unitary(psi, random_unitary(psi.layout().dim_of("B"), rng),
                              std::vector<std::string>{"B"});
    phi = apply_local_unitary(phi, random_unitary(phi.layout().dim_of("A"), rng),
                              std::vector<std::string>{"A"});

    const ProbabilityVector p = schmidt_spectrum(psi, std::vector<std::string>{"A"});
    const ProbabilityVector q = schmidt_spectrum(phi, std::vector<std::string>{"A"});

    bool found = catalyst_search(p, q, 2, 40).has_value();
    if (!found) found = catalyst_search(p, q, 3, 15).has_value();
    if (!found) continue;
    ++catalyzed_pairs;
    if (p.entropy_bits() < q.entropy_bits() - 1e-9) {
      result.require(false, "entropy condition violated at trial " + std::to_string(trial));
    }
  }
  result.require(catalyzed_pairs > 0, "search never succeeded");
  if (result.pass) result.detail << catalyzed_pairs << "/500 pairs catalyzed, zero violations";
  return result;
}

CriterionResult criterion_6_merging_ledger() {
  CriterionResult result;

  const ResourceLedger flat = merging_ledger(ghz_state());
  result.require(
      flat.ledger_case == LedgerCase::Zero && std::abs(flat.conditional_entropy) <= 1e-9,
      "GHZ is not the zero case");

  const PureState bell_ra =
      pure_from_spectrum(ProbabilityVector({0.5, 0.5}), "R", Party::Referee, "A", Party::Alice);
  const ResourceLedger needs = merging_ledger(bell_ra);
  result.require(needs.ledger_case == LedgerCase::PositiveNeedsResource &&
                     std::abs(needs.conditional_entropy - 1.0) <= 1e-9 &&
                     std::abs(needs.resource_entropy - 1.0) <= 1e-9,
                 "Bell(R, A) ledger is wrong");

  const ResourceLedger yields = merging_ledger(bell_state());
  result.require(yields.ledger_case == LedgerCase::NegativeYieldsResource &&
                     std::abs(yields.conditional_entropy + 1.0) <= 1e-9 &&
                     std::abs(yields.resource_entropy - 1.0) <= 1e-9,
                 "Bell(A, B) ledger is wrong");

  result.require(merging_optimality_audit(ghz_state(), flat), "honest GHZ ledger rejected");
  result.require(merging_optimality_audit(bell_ra, needs), "honest Bell(R, A) ledger rejected");
  result.require(merging_optimality_audit(bell_state(), yields),
                 "honest Bell(A, B) ledger rejected");

  std::mt19937_64 rng(20250809);
  SystemLayout layout({Subsystem{"R", 2, Party::Referee}, Subsystem{"A", 2, Party::Alice},
                       Subsystem{"B", 2, Party::Bob}});
  int rejected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const PureState psi = random_pure_state(layout, rng);
    const double h = merging_ledger(psi).conditional_entropy;
    ResourceLedger cheat;
    cheat.ledger_case = LedgerCase::NegativeYieldsResource;
    cheat.resource_entropy = std::max(0.0, -h) + 2e-6;
    cheat.conditional_entropy = -cheat.resource_entropy;
    cheat.resource_spectrum = entropy_to_spectrum(cheat.resource_entropy);
    if (!merging_optimality_audit(psi, cheat)) ++rejected;
  }
  result.require(rejected == 200,
                 "only " + std::to_string(rejected) + "/200 inflated ledgers rejected");
  return result;
}

CriterionResult criterion_7_distillation() {
  CriterionResult result;

  const ResourceLedger ghz = distillation_ledger(ghz_state());
  result.require(std::abs(ghz.resource_entropy - 1.0) <= 1e-9,
                 "GHZ yield " + format_real(ghz.resource_entropy));

  const ResourceLedger w = distillation_ledger(w_state());
  result.require(std::abs(w.resource_entropy - 0.918296) <= 1e-5,
                 "W yield " + format_real(w.resource_entropy));

  std::mt19937_64 rng(20250810);
  SystemLayout layout({Subsystem{"C", 2, Party::Charlie}, Subsystem{"A", 2, Party::Alice},
                       Subsystem{"B", 2, Party::Bob}});
  int rejected = 0;
  int accepted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const PureState psi = random_pure_state(layout, rng);
    const double bound = distillation_ledger(psi).resource_entropy;
    if (distillation_converse_audit(psi, bound)) ++accepted;
    if (!distillation_converse_audit(psi, bound + 2e-6)) ++rejected;
  }
  result.require(accepted == 200, "honest claims rejected");
  result.require(rejected == 200,
                 "only " + std::to_string(rejected) + "/200 inflated claims rejected");
  return result;
}

CriterionResult criterion_8_measure_properties() {
  CriterionResult result;
  const auto start = Clock::now();
  std::mt19937_64 rng(20250811);

  SystemLayout pair({Subsystem{"A", 2, Party::Alice}, Subsystem{"B", 3, Party::Bob}});
  std::uniform_int_distribution<std::size_t> rank(1, 6);

  int fvdg_violations = 0;
  int triangle_violations = 0;
  int monotone_violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityOperator rho = random_density_operator(pair, rng, rank(rng));
    const DensityOperator sigma = random_density_operator(pair, rng, rank(rng));
    const DensityOperator middle = random_density_operator(pair, rng, rank(rng));

    if (fuchs_van_de_graaf_gap(rho, sigma) < -1e-9) ++fvdg_violations;
    if (trace_distance(rho, sigma) >
        trace_distance(rho, middle) + trace_distance(middle, sigma) + 1e-9)
      ++triangle_violations;

    const DensityOperator rho_a = partial_trace(rho, std::vector<std::string>{"B"});
    const DensityOperator sigma_a = partial_trace(sigma, std::vector<std::string>{"B"});
    if (trace_distance(rho_a, sigma_a) > trace_distance(rho, sigma) + 1e-9)
      ++monotone_violations;
    if (fidelity(rho_a, sigma_a) < fidelity(rho, sigma) - 1e-9) ++monotone_violations;
  }
  result.require(fvdg_violations == 0,
                 std::to_string(fvdg_violations) + " Fuchs-van de Graaf violations");
  result.require(triangle_violations == 0,
                 std::to_string(triangle_violations) + " triangle violations");
  result.require(monotone_violations == 0,
                 std::to_string(monotone_violations) + " monotonicity violations");

  std::uniform_real_distribution<double> mix_weight(0.0, 1.0);
  int schur_violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ProbabilityVector q = random_probability_vector(5, rng);
    const double t = mix_weight(rng);
    std::vector<double> entries(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
      entries[i] = (1.0 - t) * q[i] + t / static_cast<double>(q.size());
    const ProbabilityVector p(std::move(entries));
    if (!majorizes(p, q) || p.entropy_bits() < q.entropy_bits() - 1e-9) ++schur_violations;
  }
  result.require(schur_violations == 0,
                 std::to_string(schur_violations) + " Schur concavity violations");

  const double elapsed = seconds_since(start);
  result.require(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  if (result.pass) {
    result.detail << "4000 distance instances + 1000 majorization instances in " << elapsed
                  << " s";
  }
  return result;
}

void report(int number, const std::string& name, const CriterionResult& result, int& failures) {
  if (!result.pass) ++failures;
  std::cout << (result.pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name;
  const std::string detail = result.detail.str();
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  std::cout.flush();
}

}  // namespace

int main() {
  int failures = 0;

  const SystemLayout base({Subsystem{"A", 2, Party::Alice}, Subsystem{"B", 2, Party::Bob}});
  const std::vector<GridRun> runs = run_grid();

  report(1, "catalyst invariance", criterion_1_catalyst_invariance(runs), failures);
  report(2, "output bound", criterion_2_output_bound(runs, base), failures);
  report(3, "decoupling bound", criterion_3_decoupling_bound(runs), failures);
  report(4, "catalyzed conversion of the blocked pair", criterion_4_blocked_pair(), failures);
  report(5, "entropy condition over random pairs", criterion_5_entropy_condition(), failures);
  report(6, "merging ledger and optimality audit", criterion_6_merging_ledger(), failures);
  report(7, "assisted distillation ledger", criterion_7_distillation(), failures);
  report(8, "measure property suite", criterion_8_measure_properties(), failures);

  if (failures == 0)
    std::cout << "all acceptance criteria passed\n";
  else
    std::cout << failures << " acceptance criteria failed\n";
  return failures;
}
