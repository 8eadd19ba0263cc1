#include "hoeffding/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "hoeffding/decomposition.hpp"
#include "hoeffding/errors.hpp"
#include "hoeffding/indices.hpp"
#include "hoeffding/io.hpp"

namespace hoeffding {

namespace {

constexpr const char* kSchemaTag = "ho-report/1";

struct AssumptionState {
  bool checked = false;
  bool admissible = false;
  std::optional<Assumption1Report> a1;
  std::optional<NestingReport> nesting;
  std::optional<FeshchenkoMatrix> delta;
  std::optional<Assumption2Report> a2;
};

OrderedJson pair_json(const PairViolation& v) {
  OrderedJson arr = OrderedJson::array();
  arr.push_back(subset_json(v.a));
  arr.push_back(subset_json(v.b));
  return arr;
}

AssumptionState run_checks(const SupportAtoms& support,
                           const RunConfig& config) {
  AssumptionState state;
  if (config.skip_checks) return state;
  state.checked = true;
  state.a1 = check_assumption1(support, config.exhaustive);
  state.nesting = check_strict_nesting(support);
  if (state.a1->pass && state.nesting->pass) {
    state.delta = feshchenko_matrix(support, config.tol,
                                    /*assume_assumption1=*/true);
    state.a2 = check_assumption2(*state.delta, config.eps_pd);
    state.admissible = state.a2->pass;
  }
  return state;
}

OrderedJson assumptions_json(const AssumptionState& state) {
  OrderedJson out;
  out["checked"] = state.checked;
  out["unverified"] = !state.checked;
  if (!state.checked) return out;

  OrderedJson a1;
  a1["pass"] = state.a1->pass;
  a1["exhaustive"] = state.a1->exhaustive;
  a1["pairs_checked"] = state.a1->pairs_checked;
  OrderedJson v1 = OrderedJson::array();
  for (const auto& v : state.a1->violations) v1.push_back(pair_json(v));
  a1["violations"] = v1;
  out["assumption1"] = a1;

  OrderedJson nest;
  nest["pass"] = state.nesting->pass;
  OrderedJson v2 = OrderedJson::array();
  for (const auto& v : state.nesting->violations) v2.push_back(pair_json(v));
  nest["violations"] = v2;
  out["strict_nesting"] = nest;

  OrderedJson a2;
  a2["evaluated"] = state.a2.has_value();
  if (state.a2) {
    a2["pass"] = state.a2->pass;
    a2["min_eigenvalue"] = state.a2->min_eigenvalue;
    a2["eps"] = state.a2->eps;
  }
  out["assumption2"] = a2;
  out["admissible"] = state.admissible;
  return out;
}

void emit(const RunConfig& config, const std::string& content) {
  if (config.output_path.empty())
    std::cout << content;
  else
    write_file(config.output_path, content);
}

[[noreturn]] void fail_inadmissible(const AssumptionState& state) {
  std::string what = "the law fails the admissibility checks: ";
  if (state.a1 && !state.a1->pass)
    what += "non-perfect functional dependence is violated at pair (" +
            subset_label(state.a1->violations.front().a) + ", " +
            subset_label(state.a1->violations.front().b) + "); ";
  if (state.nesting && !state.nesting->pass)
    what += "strict nesting of generated spaces fails; ";
  if (state.a2 && !state.a2->pass)
    what += "the Feshchenko matrix is not positive definite "
            "(min eigenvalue " +
            std::to_string(state.a2->min_eigenvalue) + "); ";
  what += "re-run with --skip-checks to compute anyway (unverified)";
  fail(errc::assumption_failed, what);
}

// Angle computations only need non-perfect functional dependence; the
// full pipeline needs positive definiteness as well.
void require_assumption1(const AssumptionState& state) {
  if (!state.checked) return;  // skip flag: run unverified
  if (!state.a1->pass || !state.nesting->pass) fail_inadmissible(state);
}

void require_admissible(const AssumptionState& state) {
  if (!state.checked) return;
  if (!state.admissible) fail_inadmissible(state);
}

OrderedJson header_json(const RunConfig& config, const char* command,
                        const ProblemInput& in, const SupportAtoms& support) {
  OrderedJson out;
  out["schema"] = kSchemaTag;
  out["command"] = command;
  out["tol"] = config.tol;
  OrderedJson input;
  input["d"] = support.d();
  input["grid"] = static_cast<std::int64_t>(in.pmf.grid_size());
  input["atoms"] = support.n();
  OrderedJson names = OrderedJson::array();
  for (const auto& spec : in.pmf.inputs) names.push_back(spec.name);
  input["inputs"] = names;
  out["input"] = input;
  return out;
}

int run_check(const RunConfig& config) {
  const ProblemInput in = load_input(config.input_path);
  const SupportAtoms support = validate_pmf(in.pmf);
  RunConfig forced = config;
  forced.skip_checks = false;  // check always checks
  const AssumptionState state = run_checks(support, forced);

  OrderedJson report = header_json(config, "check", in, support);
  report["eps_pd"] = config.eps_pd;
  const OrderedJson assumptions = assumptions_json(state);
  for (const char* key :
       {"assumption1", "strict_nesting", "assumption2", "admissible"})
    if (assumptions.contains(key)) report[key] = assumptions.at(key);
  emit(config, dump_json(report));
  return state.admissible ? 0 : 3;
}

int run_angles(const RunConfig& config) {
  const ProblemInput in = load_input(config.input_path);
  const SupportAtoms support = validate_pmf(in.pmf);
  const AssumptionState state = run_checks(support, config);
  require_assumption1(state);

  const FeshchenkoMatrix delta =
      state.delta ? *state.delta
                  : feshchenko_matrix(support, config.tol,
                                      /*assume_assumption1=*/true);
  if (config.format == "csv") {
    emit(config, feshchenko_csv(delta));
    return 0;
  }
  OrderedJson report = header_json(config, "angles", in, support);
  report["assumptions"] = assumptions_json(state);
  OrderedJson subsets = OrderedJson::array();
  for (SubsetMask a : delta.order) subsets.push_back(subset_json(a));
  report["subsets"] = subsets;
  OrderedJson rows = OrderedJson::array();
  for (Index i = 0; i < delta.entries.rows(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (Index j = 0; j < delta.entries.cols(); ++j)
      row.push_back(delta.entries(i, j));
    rows.push_back(row);
  }
  report["matrix"] = rows;
  report["min_eigenvalue"] = delta.min_eigenvalue;
  emit(config, dump_json(report));
  return 0;
}

struct Pipeline {
  ProblemInput in;
  SupportAtoms support;
  AssumptionState state;
  Vector g;
  ComponentBasisSet bases;
  Decomposition dec;
};

Pipeline run_pipeline(const RunConfig& config) {
  Pipeline p{load_input(config.input_path), {}, {}, {}, {}, {}};
  p.support = validate_pmf(p.in.pmf);
  p.state = run_checks(p.support, config);
  require_admissible(p.state);
  p.g.resize(p.support.n());
  for (int atom = 0; atom < p.support.n(); ++atom)
    p.g[atom] = p.in.model[p.support.cells[atom]];
  p.bases = build_component_subspaces(p.support, config.tol);
  p.dec = decompose(p.support, p.bases, p.g, config.tol);
  return p;
}

int run_decompose(const RunConfig& config) {
  const Pipeline p = run_pipeline(config);
  OrderedJson report = header_json(config, "decompose", p.in, p.support);
  report["assumptions"] = assumptions_json(p.state);

  OrderedJson dec;
  dec["total_variance"] = p.dec.total_variance;
  dec["condition_number"] = p.dec.condition_number;
  dec["reconstruction_residual"] = p.dec.reconstruction_residual;
  OrderedJson comps = OrderedJson::array();
  for (SubsetMask a : p.dec.order) {
    OrderedJson c;
    c["subset"] = subset_json(a);
    c["dim"] = static_cast<std::int64_t>(p.bases.dim(a));
    c["coefficient_norm"] = p.dec.coefficients.at(a).norm();
    c["values"] = vector_json(p.dec.component(a));
    comps.push_back(c);
  }
  dec["components"] = comps;
  report["decomposition"] = dec;
  emit(config, dump_json(report));
  return 0;
}

std::set<std::string> parse_which(const std::string& which) {
  const std::set<std::string> all = {"structural", "correlative", "pure",
                                     "dependence"};
  if (which.empty()) return all;
  std::set<std::string> out;
  std::stringstream ss(which);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!all.count(token))
      fail(errc::bad_input,
           "unknown index family '" + token +
               "'; expected structural, correlative, pure or dependence");
    out.insert(token);
  }
  return out;
}

std::string indices_csv(const SensitivityReport& report,
                        const std::set<std::string>& which) {
  std::string out = "subset";
  if (which.count("structural")) out += ",structural";
  if (which.count("correlative")) out += ",correlative";
  if (which.count("pure"))
    out += ",pure_interaction,pure_interaction_normalized";
  if (which.count("dependence")) out += ",dependence";
  out += '\n';
  for (SubsetMask a : report.order) {
    const SubsetIndices& ix = report.per_subset.at(a);
    out += '"' + subset_label(a) + '"';
    if (which.count("structural")) out += ',' + format_double(ix.structural);
    if (which.count("correlative"))
      out += ',' + format_double(ix.correlative);
    if (which.count("pure"))
      out += ',' + format_double(ix.pure_interaction) + ',' +
             format_double(ix.pure_normalized);
    if (which.count("dependence")) out += ',' + format_double(ix.dependence);
    out += '\n';
  }
  return out;
}

std::string indices_table(const SensitivityReport& report,
                          const std::set<std::string>& which) {
  // column header -> family that enables it
  const std::vector<std::pair<const char*, const char*>> columns = {
      {"structural", "structural"},
      {"correlative", "correlative"},
      {"pure", "pure"},
      {"pure_norm", "pure"},
      {"dependence", "dependence"}};
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s", "subset");
  out << line;
  for (const auto& [header, family] : columns) {
    if (!which.count(family)) continue;
    std::snprintf(line, sizeof(line), " %14s", header);
    out << line;
  }
  out << '\n';
  for (SubsetMask a : report.order) {
    const SubsetIndices& ix = report.per_subset.at(a);
    std::snprintf(line, sizeof(line), "%-10s", subset_label(a).c_str());
    out << line;
    auto cell = [&](double v) {
      std::snprintf(line, sizeof(line), " %14.6g", v);
      out << line;
    };
    if (which.count("structural")) cell(ix.structural);
    if (which.count("correlative")) cell(ix.correlative);
    if (which.count("pure")) {
      cell(ix.pure_interaction);
      cell(ix.pure_normalized);
    }
    if (which.count("dependence")) cell(ix.dependence);
    out << '\n';
  }
  std::snprintf(line, sizeof(line),
                "model_variance %.10g  sum_structural %.10g  "
                "sum_correlative %.10g\n",
                report.model_variance, report.sum_structural,
                report.sum_correlative);
  out << line;
  return out.str();
}

OrderedJson indices_json(const SensitivityReport& report,
                         const std::set<std::string>& which) {
  OrderedJson rows = OrderedJson::array();
  for (SubsetMask a : report.order) {
    const SubsetIndices& ix = report.per_subset.at(a);
    OrderedJson row;
    row["subset"] = subset_json(a);
    if (which.count("structural")) row["structural"] = ix.structural;
    if (which.count("correlative")) row["correlative"] = ix.correlative;
    if (which.count("pure")) {
      row["pure_interaction"] = ix.pure_interaction;
      row["pure_interaction_normalized"] = ix.pure_normalized;
    }
    if (which.count("dependence")) row["dependence"] = ix.dependence;
    rows.push_back(row);
  }
  return rows;
}

int run_indices(const RunConfig& config) {
  const Pipeline p = run_pipeline(config);
  const SensitivityReport report =
      variance_report(p.in.pmf, p.in.model, config.tol);
  const auto which = parse_which(config.which);

  if (config.format == "csv") {
    emit(config, indices_csv(report, which));
    return 0;
  }
  if (config.format == "table") {
    emit(config, indices_table(report, which));
    return 0;
  }
  OrderedJson out = header_json(config, "indices", p.in, p.support);
  out["assumptions"] = assumptions_json(p.state);
  out["indices"] = indices_json(report, which);
  OrderedJson totals;
  totals["model_variance"] = report.model_variance;
  totals["sum_structural"] = report.sum_structural;
  totals["sum_correlative"] = report.sum_correlative;
  out["totals"] = totals;
  OrderedJson checks;
  checks["correlative_formula_gap"] = report.crosscheck_correlative;
  checks["structural_formula_gap"] = report.crosscheck_structural;
  checks["dependence_centered"] = report.dependence_centered;
  checks["max_dependence_center_gap"] = report.max_dependence_center_gap;
  out["crosschecks"] = checks;
  emit(config, dump_json(out));
  return 0;
}

int run_explain(const RunConfig& config) {
  if (config.cell.empty())
    fail(errc::bad_input, "explain requires --cell i,j,... (0-based)");
  const Pipeline p = run_pipeline(config);
  const auto attribution =
      evaluation_explanation(p.dec, p.support, config.cell);

  const int atom = p.support.atom_of_cell(config.cell);
  double sum = 0.0;
  for (const auto& [mask, value] : attribution) sum += value;

  if (config.format == "table") {
    std::ostringstream out;
    char line[128];
    for (SubsetMask a : p.dec.order) {
      std::snprintf(line, sizeof(line), "%-10s %18.10g\n",
                    subset_label(a).c_str(), attribution.at(a));
      out << line;
    }
    std::snprintf(line, sizeof(line), "%-10s %18.10g\n", "total", sum);
    out << line;
    emit(config, out.str());
    return 0;
  }

  OrderedJson out = header_json(config, "explain", p.in, p.support);
  out["assumptions"] = assumptions_json(p.state);
  OrderedJson cell = OrderedJson::array();
  for (int c : config.cell) cell.push_back(c);
  out["cell"] = cell;
  OrderedJson levels = OrderedJson::array();
  for (int i = 0; i < p.support.d(); ++i)
    levels.push_back(p.in.pmf.inputs[i].levels[config.cell[i]]);
  out["levels"] = levels;
  out["value"] = p.g[atom];
  OrderedJson rows = OrderedJson::array();
  for (SubsetMask a : p.dec.order) {
    OrderedJson row;
    row["subset"] = subset_json(a);
    row["value"] = attribution.at(a);
    rows.push_back(row);
  }
  out["attributions"] = rows;
  out["sum"] = sum;
  emit(config, dump_json(out));
  return 0;
}

int run_bernoulli(const RunConfig& config) {
  if (config.bernoulli_g.size() != 4)
    fail(errc::bad_input, "--g expects four values G00,G01,G10,G11");
  Eigen::Vector4d g(config.bernoulli_g.data());
  const BernoulliDecomposition closed =
      closed_form_decomposition(config.pair, g);
  const JointPmf pmf = bernoulli_pmf(config.pair);
  const SensitivityReport indices = variance_report(pmf, g, config.tol);

  OrderedJson out;
  out["schema"] = kSchemaTag;
  out["command"] = "bernoulli";
  out["q1"] = config.pair.q1;
  out["q2"] = config.pair.q2;
  out["rho"] = config.pair.rho;
  out["weights"] = vector_json(pmf.weights);
  OrderedJson vectors;
  vectors["v_empty"] = vector_json(closed.v_empty);
  vectors["v1"] = vector_json(closed.v1);
  vectors["v2"] = vector_json(closed.v2);
  vectors["v12"] = vector_json(closed.v12);
  out["vectors"] = vectors;
  OrderedJson coeffs;
  coeffs["e"] = closed.e;
  coeffs["alpha"] = closed.alpha;
  coeffs["beta"] = closed.beta;
  coeffs["delta"] = closed.delta;
  out["coefficients"] = coeffs;
  OrderedJson comps;
  comps["[]"] = vector_json(closed.comp_empty);
  comps["[1]"] = vector_json(closed.comp1);
  comps["[2]"] = vector_json(closed.comp2);
  comps["[1,2]"] = vector_json(closed.comp12);
  out["components"] = comps;
  out["indices"] = indices_json(indices, parse_which(""));
  OrderedJson totals;
  totals["model_variance"] = indices.model_variance;
  totals["sum_structural"] = indices.sum_structural;
  totals["sum_correlative"] = indices.sum_correlative;
  out["totals"] = totals;
  emit(config, dump_json(out));
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    switch (config.command) {
      case Command::check: return run_check(config);
      case Command::angles: return run_angles(config);
      case Command::decompose: return run_decompose(config);
      case Command::indices: return run_indices(config);
      case Command::explain: return run_explain(config);
      case Command::bernoulli: return run_bernoulli(config);
    }
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hoeffding
