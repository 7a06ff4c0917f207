#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fisherkit/beck_fiala.hpp"
#include "fisherkit/elimination.hpp"
#include "fisherkit/errors.hpp"
#include "fisherkit/graham_pollak.hpp"
#include "fisherkit/io.hpp"
#include "fisherkit/kernel.hpp"
#include "fisherkit/prover.hpp"
#include "fisherkit/set_family.hpp"
#include "fisherkit/types.hpp"

namespace {

using nlohmann::json;
using namespace fisher;

constexpr int kSchemaVersion = 1;

// Exit-code contract: 0 confirmed or artifact produced, 1 property refuted,
// 2 input error, 3 budget exceeded, 4 internal invariant violation.
constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kBudget = 3;
constexpr int kInternal = 4;

struct Global {
  std::uint64_t seed = 0;
  std::string strategy = "box";
  std::optional<Int> max_coeff;
  std::optional<std::uint64_t> budget;
  bool deterministic = false;
  std::string format = "text";
  std::string output;

  bool structured() const { return format == "structured"; }
};

void emit(const Global& g, const std::string& text) {
  if (g.output.empty())
    std::cout << text;
  else
    write_file(g.output, text);
}

void emit_json(const Global& g, const json& doc) { emit(g, doc.dump(2) + "\n"); }

std::string rat_str(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string join_ints(const IntVector& v) {
  std::ostringstream out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << v[i];
  }
  return out.str();
}

std::string join_set(const std::vector<int>& s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ' ';
    out << s[i];
  }
  out << '}';
  return out.str();
}

json int_vector_json(const IntVector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json sets_json(const SetFamily& family) {
  json arr = json::array();
  for (const auto& s : family.sets()) arr.push_back(s);
  return arr;
}

json family_summary_json(const SetFamily& family) {
  return json{{"digest", family_digest(family)},
              {"m", family.size()},
              {"n", family.n()}};
}

std::string family_summary_text(const SetFamily& family) {
  std::ostringstream out;
  out << "family: digest=" << family_digest(family) << " m=" << family.size()
      << " n=" << family.n();
  return out.str();
}

KernelSearchOptions make_search_options(const Global& g) {
  KernelSearchOptions opts;
  opts.strategy = g.strategy == "dfs" ? KernelStrategy::DfsPruned : KernelStrategy::BoxCollision;
  opts.max_coeff = g.max_coeff;
  opts.node_budget = g.budget;
  opts.deterministic = g.deterministic;
  return opts;
}

std::string strategy_name(KernelStrategy s) {
  return s == KernelStrategy::DfsPruned ? "dfs" : "box";
}

std::string status_name(KernelSearchResult::Status s) {
  switch (s) {
    case KernelSearchResult::Status::Found:
      return "found";
    case KernelSearchResult::Status::NotFound:
      return "not_found";
    case KernelSearchResult::Status::BudgetTruncated:
      return "budget_truncated";
  }
  return "unknown";
}

int status_exit(KernelSearchResult::Status s) {
  switch (s) {
    case KernelSearchResult::Status::Found:
      return kOk;
    case KernelSearchResult::Status::NotFound:
      return kRefuted;
    case KernelSearchResult::Status::BudgetTruncated:
      return kBudget;
  }
  return kInternal;
}

json search_json(const KernelSearchResult& r) {
  json doc{{"box", r.box},
           {"deterministic", r.deterministic},
           {"exhausted_up_to", r.exhausted_up_to},
           {"nodes", r.nodes},
           {"status", status_name(r.status)},
           {"strategy", strategy_name(r.strategy)}};
  if (r.tau) doc["tau"] = int_vector_json(*r.tau);
  return doc;
}

void search_text(std::ostringstream& out, const KernelSearchResult& r) {
  out << "strategy: " << strategy_name(r.strategy) << '\n';
  out << "deterministic: " << (r.deterministic ? "yes" : "no") << '\n';
  out << "box: " << r.box << '\n';
  out << "status: " << status_name(r.status) << '\n';
  if (r.tau) out << "tau: " << join_ints(*r.tau) << '\n';
  if (r.status == KernelSearchResult::Status::NotFound)
    out << "certificate: no nonzero integer vector with max|entry| <= " << r.box
        << " lies in the left kernel\n";
  out << "exhausted_up_to: " << r.exhausted_up_to << '\n';
  out << "nodes: " << r.nodes << '\n';
}

// ---------------------------------------------------------------------------

int cmd_verify(const Global& g, const std::string& path) {
  const SetFamily family = parse_family(read_file(path));
  const IntersectionReport report = check_k_intersecting(family);

  if (g.structured()) {
    json doc{{"command", "verify"},
             {"family", family_summary_json(family)},
             {"is_k_intersecting", report.is_k_intersecting},
             {"k_defined", report.k_defined},
             {"schema_version", kSchemaVersion}};
    if (report.k_defined) doc["k"] = report.k;
    if (report.violation)
      doc["violation"] = json{{"expected", report.violation->expected},
                              {"found", report.violation->found},
                              {"i", report.violation->i},
                              {"j", report.violation->j}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: verify\n" << family_summary_text(family) << '\n';
    if (report.is_k_intersecting && report.k_defined)
      out << "result: k-intersecting with k=" << report.k << '\n';
    else if (report.is_k_intersecting)
      out << "result: k-intersecting (fewer than two members leave k unpinned)\n";
    else {
      out << "violation: members " << report.violation->i << " and " << report.violation->j
          << " meet in " << report.violation->found << " elements, expected "
          << report.violation->expected << '\n';
      out << "result: not k-intersecting\n";
    }
    emit(g, out.str());
  }
  return report.is_k_intersecting ? kOk : kRefuted;
}

int cmd_reduce(const Global& g, const std::string& path, int k) {
  const SetFamily family = parse_family(read_file(path));
  const ReductionReport report = reduce_small_set(family, k);
  const bool confirmed = report.containment_ok && report.disjoint_ok && report.bound_ok;

  if (g.structured()) {
    json residues = json::array();
    for (const auto& r : report.residues) residues.push_back(r);
    json doc{{"bound_ok", report.bound_ok},
             {"command", "reduce"},
             {"containment_ok", report.containment_ok},
             {"derived_bound", report.derived_bound},
             {"disjoint_ok", report.disjoint_ok},
             {"family", family_summary_json(family)},
             {"k", k},
             {"residues", residues},
             {"result", confirmed ? "confirmed" : "fault"},
             {"schema_version", kSchemaVersion},
             {"small_set_index", report.small_set_index}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: reduce\n" << family_summary_text(family) << '\n';
    out << "k: " << k << '\n';
    out << "small member: index " << report.small_set_index << ", size " << k << '\n';
    out << "residues:";
    for (const auto& r : report.residues) out << ' ' << join_set(r);
    out << '\n';
    out << "small member contained in every other: " << (report.containment_ok ? "ok" : "FAILED")
        << '\n';
    out << "residues pairwise disjoint and nonempty: " << (report.disjoint_ok ? "ok" : "FAILED")
        << '\n';
    out << "member count bound: m=" << family.size() << " <= n-k+1=" << report.derived_bound
        << ": " << (report.bound_ok ? "ok" : "FAILED") << '\n';
    out << "result: " << (confirmed ? "reduction confirmed" : "reduction failed") << '\n';
    emit(g, out.str());
  }
  // Once the gates in reduce_small_set pass, all three flags are forced; a
  // failure here is a library fault, not a property of the input.
  return confirmed ? kOk : kInternal;
}

int cmd_kernel(const Global& g, const std::string& path) {
  const std::string content = read_file(path);
  IntMatrix X;
  std::string kind;
  std::optional<SetFamily> family;
  if (looks_like_matrix(content)) {
    X = parse_matrix(content);
    kind = "matrix";
  } else {
    family = parse_family(content);
    X = build_incidence(*family);
    kind = "family";
  }

  const KernelSearchResult result = find_left_kernel_vector(X, make_search_options(g));
  if (result.tau && !verify_kernel(X, *result.tau))
    throw std::logic_error("search returned a vector that fails verification");

  if (g.structured()) {
    json doc = search_json(result);
    doc["command"] = "kernel";
    doc["input"] = json{{"digest", family ? family_digest(*family) : matrix_digest(X)},
                        {"kind", kind},
                        {"m", X.rows()},
                        {"n", X.cols()}};
    doc["schema_version"] = kSchemaVersion;
    if (result.tau) doc["verified"] = true;
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: kernel\n";
    out << "input: " << kind
        << " digest=" << (family ? family_digest(*family) : matrix_digest(X))
        << " m=" << X.rows() << " n=" << X.cols() << '\n';
    search_text(out, result);
    if (result.tau) out << "verified: yes\n";
    emit(g, out.str());
  }
  return status_exit(result.status);
}

int cmd_siegel(const Global& g, Index n, Index m, Int B) {
  const SiegelBound bound = siegel_bound(n, m, B);

  // Both sides of the defining inequality at H and at H-1 witness minimality.
  auto box_count = [&](Int h) {
    BigInt v = 1;
    for (Index i = 0; i < m; ++i) v *= BigInt(h) + 1;
    return v;
  };
  auto profile_count = [&](Int h) {
    BigInt v = 1;
    for (Index j = 0; j < n; ++j) v *= BigInt(m) * B * h + 1;
    return v;
  };
  const BigInt at_lhs = box_count(bound.H);
  const BigInt at_rhs = profile_count(bound.H);
  const BigInt below_lhs = box_count(bound.H - 1);
  const BigInt below_rhs = profile_count(bound.H - 1);

  if (g.structured()) {
    json doc{{"B", B},
             {"H", bound.H},
             {"at_H", json{{"box_count", at_lhs.str()}, {"profile_count", at_rhs.str()}}},
             {"below_H",
              json{{"box_count", below_lhs.str()}, {"profile_count", below_rhs.str()}}},
             {"command", "siegel"},
             {"m", m},
             {"n", n},
             {"schema_version", kSchemaVersion}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: siegel\n";
    out << "n: " << n << '\n' << "m: " << m << '\n' << "B: " << B << '\n';
    out << "H: " << bound.H << '\n';
    out << "at H: (" << bound.H << "+1)^" << m << " = " << at_lhs.str() << " > " << at_rhs.str()
        << " = (" << m << "*" << B << "*" << bound.H << "+1)^" << n << '\n';
    out << "below H: (" << bound.H - 1 << "+1)^" << m << " = " << below_lhs.str()
        << " <= " << below_rhs.str() << " = (" << m << "*" << B << "*" << bound.H - 1 << "+1)^"
        << n << '\n';
    emit(g, out.str());
  }
  return kOk;
}

IntVector parse_tau(const std::string& text, Index m) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  std::istringstream in(cleaned);
  std::vector<Int> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stoll(token, &pos));
      if (pos != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InputError("tau entries must be integers, got '" + token + "'");
    }
  }
  if (static_cast<Index>(values.size()) != m)
    throw InputError("tau has " + std::to_string(values.size()) + " entries, family has " +
                     std::to_string(m) + " members");
  IntVector tau(m);
  for (Index i = 0; i < m; ++i) tau[i] = values[static_cast<std::size_t>(i)];
  return tau;
}

json chain_json(const RefutationCertificate& cert) {
  return json{{"chain_valid", cert.chain_valid},
              {"coefficient_sum", cert.coefficient_sum},
              {"set_equation_residues", int_vector_json(cert.set_equation_residues)},
              {"size_gap_terms", int_vector_json(cert.size_gap_terms)},
              {"size_weighted_sum", cert.size_weighted_sum}};
}

void chain_text(std::ostringstream& out, const RefutationCertificate& cert) {
  out << "chain: weighted member sizes: sum_i tau(i)*|A_i| = " << cert.size_weighted_sum << '\n';
  out << "chain: per-member equations: tau(i)*|A_i| + k*sum_{j!=i} tau(j) = "
      << join_ints(cert.set_equation_residues) << '\n';
  out << "chain: coefficient sum: sum_i tau(i) = " << cert.coefficient_sum << '\n';
  out << "chain: size gaps: tau(i)*(|A_i|-k) = " << join_ints(cert.size_gap_terms) << '\n';
  out << "chain: valid = " << (cert.chain_valid ? "yes" : "no") << '\n';
}

int emit_prove_refutation(const Global& g, const SetFamily& family, int k,
                          const std::optional<IntVector>& tau, const std::string& reason,
                          const std::vector<std::string>& passed_gates,
                          const std::string& failed_gate) {
  if (g.structured()) {
    json doc{{"command", "prove"},
             {"family", family_summary_json(family)},
             {"k", k},
             {"reason", reason},
             {"result", "refuted"},
             {"schema_version", kSchemaVersion}};
    if (tau) doc["tau"] = int_vector_json(*tau);
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: prove\n" << family_summary_text(family) << '\n';
    out << "k: " << k << '\n';
    if (tau) out << "tau: " << join_ints(*tau) << '\n';
    for (const auto& gate : passed_gates) out << "gate: " << gate << ": ok\n";
    if (!failed_gate.empty()) out << "gate: " << failed_gate << ": FAILED\n";
    out << "result: refuted (" << reason << ")\n";
    emit(g, out.str());
  }
  return kRefuted;
}

int prove_with_tau(const Global& g, const SetFamily& family, int k, const IntVector& tau) {
  const std::string g_hypothesis = "k >= 1 and the family is k-intersecting";
  const std::string g_sizes = "every member size exceeds k";
  const std::string g_kernel = "tau is a nonzero left kernel vector";
  try {
    derive_contradiction(family, k, tau);
    throw std::logic_error("refutation chain returned instead of throwing");
  } catch (const HypothesisViolated& e) {
    return emit_prove_refutation(g, family, k, tau, e.what(), {}, g_hypothesis);
  } catch (const SmallSetPresent& e) {
    return emit_prove_refutation(g, family, k, tau, e.what(), {g_hypothesis}, g_sizes);
  } catch (const NotInKernel& e) {
    return emit_prove_refutation(g, family, k, tau, e.what(), {g_hypothesis, g_sizes}, g_kernel);
  } catch (const TheoremViolation&) {
    // Every gate passed and the chain completed. Emit the full transcript as
    // evidence, then let the fault surface as exit 4.
    const RefutationCertificate cert = evaluate_chain(family, k, tau);
    if (g.structured()) {
      json doc{{"certificate", chain_json(cert)},
               {"command", "prove"},
               {"family", family_summary_json(family)},
               {"k", k},
               {"mode", "chain"},
               {"result", "fault"},
               {"schema_version", kSchemaVersion},
               {"tau", int_vector_json(tau)}};
      emit_json(g, doc);
    } else {
      std::ostringstream out;
      out << "command: prove\n" << family_summary_text(family) << '\n';
      out << "k: " << k << '\n';
      out << "tau: " << join_ints(tau) << '\n';
      for (const auto& gate : {g_hypothesis, g_sizes, g_kernel}) out << "gate: " << gate << ": ok\n";
      chain_text(out, cert);
      out << "result: fault (chain completed on a nonzero kernel vector)\n";
      emit(g, out.str());
    }
    throw;
  }
}

int prove_by_search(const Global& g, const SetFamily& family, int k) {
  const IncidenceMatrix X = build_incidence(family);
  KernelSearchOptions opts = make_search_options(g);
  // Within the bound m <= n there is no existence guarantee, so the search
  // needs an explicit radius; 3 covers every dependency a handful of 0/1
  // rows can hide (their minors stay that small at desk scale).
  if (X.rows() <= X.cols() && !opts.max_coeff) opts.max_coeff = 3;
  const KernelSearchResult result = find_left_kernel_vector(X, opts);

  if (result.status == KernelSearchResult::Status::Found) {
    // A nonzero kernel vector for a family that passed every gate would
    // complete the chain; hand it over so the transcript and the exit-4
    // fault surface together. Unreachable on real inputs.
    return prove_with_tau(g, family, k, *result.tau);
  }

  const bool confirmed = result.status == KernelSearchResult::Status::NotFound;
  if (g.structured()) {
    json doc{{"command", "prove"},
             {"family", family_summary_json(family)},
             {"k", k},
             {"mode", "search"},
             {"result", confirmed ? "confirmed" : "budget_truncated"},
             {"schema_version", kSchemaVersion},
             {"search", search_json(result)}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: prove\n" << family_summary_text(family) << '\n';
    out << "k: " << k << '\n';
    out << "mode: kernel search on the incidence rows\n";
    search_text(out, result);
    if (confirmed)
      out << "conclusion: no bounded dependency among the rows; member count "
          << "m=" << family.size() << " respects n=" << family.n() << '\n';
    emit(g, out.str());
  }
  return confirmed ? kOk : kBudget;
}

int prove_by_reduction(const Global& g, const SetFamily& family, int k) {
  const ReductionReport report = reduce_small_set(family, k);
  const bool confirmed = report.containment_ok && report.disjoint_ok && report.bound_ok;
  if (g.structured()) {
    json residues = json::array();
    for (const auto& r : report.residues) residues.push_back(r);
    json doc{{"command", "prove"},
             {"family", family_summary_json(family)},
             {"k", k},
             {"mode", "reduction"},
             {"reduction", json{{"bound_ok", report.bound_ok},
                                {"containment_ok", report.containment_ok},
                                {"derived_bound", report.derived_bound},
                                {"disjoint_ok", report.disjoint_ok},
                                {"residues", residues},
                                {"small_set_index", report.small_set_index}}},
             {"result", confirmed ? "confirmed" : "fault"},
             {"schema_version", kSchemaVersion}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: prove\n" << family_summary_text(family) << '\n';
    out << "k: " << k << '\n';
    out << "mode: containment reduction (member " << report.small_set_index << " has size k)\n";
    out << "small member contained in every other: " << (report.containment_ok ? "ok" : "FAILED")
        << '\n';
    out << "residues pairwise disjoint and nonempty: " << (report.disjoint_ok ? "ok" : "FAILED")
        << '\n';
    out << "member count bound: m=" << family.size() << " <= n-k+1=" << report.derived_bound
        << ": " << (report.bound_ok ? "ok" : "FAILED") << '\n';
    if (confirmed)
      out << "conclusion: m <= n-k+1 <= n confirmed (m=" << family.size()
          << ", n=" << family.n() << ")\n";
    out << "result: " << (confirmed ? "confirmed" : "fault") << '\n';
    emit(g, out.str());
  }
  return confirmed ? kOk : kInternal;
}

int cmd_prove(const Global& g, const std::string& path, std::optional<int> k_flag,
              const std::string& tau_text) {
  const SetFamily family = parse_family(read_file(path));
  const IntersectionReport check = check_k_intersecting(family);

  if (!check.is_k_intersecting) {
    std::ostringstream reason;
    reason << "members " << check.violation->i << " and " << check.violation->j << " meet in "
           << check.violation->found << " elements, expected " << check.violation->expected;
    return emit_prove_refutation(g, family, k_flag.value_or(0), std::nullopt, reason.str(), {},
                                 "the family is k-intersecting");
  }
  if (k_flag && check.k_defined && *k_flag != check.k) {
    std::ostringstream reason;
    reason << "family is " << check.k << "-intersecting, not " << *k_flag << "-intersecting";
    return emit_prove_refutation(g, family, *k_flag, std::nullopt, reason.str(), {},
                                 "the family is k-intersecting");
  }

  if (!check.k_defined) {
    // Fewer than two members: nothing pins k, and the bound is immediate.
    if (!tau_text.empty())
      throw InputError("a chain transcript needs at least two members; k is unpinned");
    const int k = k_flag.value_or(1);
    if (g.structured()) {
      json doc{{"command", "prove"},
               {"family", family_summary_json(family)},
               {"k", k},
               {"mode", "trivial"},
               {"result", "confirmed"},
               {"schema_version", kSchemaVersion}};
      emit_json(g, doc);
    } else {
      std::ostringstream out;
      out << "command: prove\n" << family_summary_text(family) << '\n';
      out << "mode: trivial (fewer than two members)\n";
      out << "conclusion: m=" << family.size() << " respects n=" << family.n() << '\n';
      emit(g, out.str());
    }
    return kOk;
  }

  const int k = k_flag.value_or(check.k);
  if (!tau_text.empty())
    return prove_with_tau(g, family, k, parse_tau(tau_text, family.size()));

  if (k < 1)
    return emit_prove_refutation(g, family, k, std::nullopt,
                                 "intersection size k must be positive", {},
                                 "k >= 1 and the family is k-intersecting");

  for (Index i = 0; i < family.size(); ++i)
    if (static_cast<int>(family.set(i).size()) == k) return prove_by_reduction(g, family, k);
  return prove_by_search(g, family, k);
}

int cmd_enumerate(const Global& g, int n, int k) {
  const ExtremalReport report =
      enumerate_max_family(n, k, g.budget.value_or(UINT64_C(1) << 62));

  if (g.structured()) {
    json doc{{"bound_respected", report.bound_respected},
             {"command", "enumerate"},
             {"complete", report.complete},
             {"k", report.k},
             {"max_m", report.max_m},
             {"n", report.n},
             {"nodes_explored", report.nodes_explored},
             {"schema_version", kSchemaVersion}};
    if (report.witness)
      doc["witness"] = json{{"digest", family_digest(*report.witness)},
                            {"sets", sets_json(*report.witness)}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: enumerate\n";
    out << "n: " << report.n << '\n' << "k: " << report.k << '\n';
    out << "max_m: " << report.max_m << '\n';
    out << "bound m <= n: " << (report.bound_respected ? "respected" : "VIOLATED") << '\n';
    out << "complete: " << (report.complete ? "yes" : "no (budget truncated)") << '\n';
    out << "nodes_explored: " << report.nodes_explored << '\n';
    if (report.witness) {
      out << "witness:\n";
      for (const auto& s : report.witness->sets()) out << "  " << join_set(s) << '\n';
    }
    emit(g, out.str());
  }
  if (!report.bound_respected) return kInternal;
  if (!report.complete) return kBudget;
  return kOk;
}

int cmd_beck_fiala(const Global& g, const std::string& path) {
  const SetFamily family = parse_family(read_file(path));
  BeckFialaOptions opts;
  if (g.budget) opts.kernel_node_budget = *g.budget;
  const BeckFialaResult result = beck_fiala_color(family, opts);

  const Int disc = discrepancy_of(family, result.coloring);
  if (disc > result.bound)
    throw std::logic_error("coloring exceeds the guaranteed discrepancy bound");

  IntVector set_sums(family.size());
  for (Index i = 0; i < family.size(); ++i) {
    Int sum = 0;
    for (int e : family.set(i)) sum += result.coloring.signs[e - 1];
    set_sums[i] = sum;
  }

  if (g.structured()) {
    json rounds = json::array();
    for (const auto& r : result.rounds) {
      json dangerous = json::array();
      for (Index s : r.dangerous) dangerous.push_back(s + 1);
      json froze = json::array();
      for (Index e : r.froze) froze.push_back(e + 1);
      json direction = json::array();
      for (Index j = 0; j < r.direction.size(); ++j) direction.push_back(r.direction[j].str());
      rounds.push_back(json{{"active_vars", r.active_vars},
                            {"dangerous", dangerous},
                            {"direction", direction},
                            {"froze", froze},
                            {"round", r.round},
                            {"step", rat_str(r.step)},
                            {"used_elimination", r.used_elimination}});
    }
    json dropouts = json::array();
    for (const auto& d : result.dropouts)
      dropouts.push_back(json{{"round", d.round},
                              {"set", d.set + 1},
                              {"sum", rat_str(d.sum)},
                              {"unfrozen", d.unfrozen}});
    json roundings = json::array();
    for (Index e : result.final_roundings) roundings.push_back(e + 1);
    json doc{{"bound", result.bound},
             {"coloring", int_vector_json(result.coloring.signs)},
             {"command", "beck-fiala"},
             {"discrepancy", disc},
             {"dropouts", dropouts},
             {"family", family_summary_json(family)},
             {"final_roundings", roundings},
             {"rounds", rounds},
             {"schema_version", kSchemaVersion},
             {"set_sums", int_vector_json(set_sums)},
             {"t", result.t}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: beck-fiala\n" << family_summary_text(family) << '\n';
    out << "t: " << result.t << '\n';
    out << "bound: " << result.bound << '\n';
    for (const auto& r : result.rounds) {
      out << "round " << r.round << ": dangerous=[";
      for (std::size_t i = 0; i < r.dangerous.size(); ++i)
        out << (i ? " " : "") << r.dangerous[i] + 1;
      out << "] active_vars=" << r.active_vars << " step=" << rat_str(r.step) << " froze=[";
      for (std::size_t i = 0; i < r.froze.size(); ++i) out << (i ? " " : "") << r.froze[i] + 1;
      out << "] elimination=" << (r.used_elimination ? "yes" : "no") << '\n';
    }
    for (const auto& d : result.dropouts)
      out << "dropout: set " << d.set + 1 << " at round " << d.round
          << " sum=" << rat_str(d.sum) << " unfrozen=" << d.unfrozen << '\n';
    if (!result.final_roundings.empty()) {
      out << "final roundings:";
      for (Index e : result.final_roundings) out << ' ' << e + 1;
      out << '\n';
    }
    out << "coloring: " << join_ints(result.coloring.signs) << '\n';
    out << "set sums: " << join_ints(set_sums) << '\n';
    out << "discrepancy: " << disc << " (bound " << result.bound << ")\n";
    emit(g, out.str());
  }
  return kOk;
}

int cmd_gp_verify(const Global& g, const std::string& path) {
  const BicliquePartition p = parse_partition(read_file(path));
  const PartitionCheck check = verify_biclique_partition(p);

  if (g.structured()) {
    json doc{{"command", "graham-pollak verify"},
             {"n", p.n},
             {"ok", check.ok},
             {"parts", p.parts.size()},
             {"schema_version", kSchemaVersion}};
    if (check.violation)
      doc["violation"] =
          json{{"kind", check.violation->kind == PartitionCheck::Kind::Uncovered
                            ? "uncovered"
                            : "covered_twice"},
               {"u", check.violation->u},
               {"v", check.violation->v}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: graham-pollak verify\n";
    out << "partition: n=" << p.n << " parts=" << p.parts.size() << '\n';
    if (check.ok)
      out << "result: every vertex pair covered exactly once\n";
    else
      out << "violation: pair {" << check.violation->u << " " << check.violation->v << "} "
          << (check.violation->kind == PartitionCheck::Kind::Uncovered ? "uncovered"
                                                                       : "covered more than once")
          << '\n'
          << "result: not an edge partition\n";
    emit(g, out.str());
  }
  return check.ok ? kOk : kRefuted;
}

int cmd_gp_stars(const Global& g, int n) {
  const BicliquePartition p = star_partition(n);
  if (!verify_biclique_partition(p).ok)
    throw std::logic_error("star partition failed its own verification");
  emit(g, g.structured() ? serialize_partition_json(p) : serialize_partition(p));
  return kOk;
}

int cmd_gp_min(const Global& g, int n) {
  const int parts = min_partition_bruteforce(n);
  if (parts != n - 1)
    throw std::logic_error("exhaustive minimum disagrees with the n-1 bound");
  if (g.structured()) {
    json doc{{"command", "graham-pollak min"},
             {"minimum_parts", parts},
             {"n", n},
             {"schema_version", kSchemaVersion}};
    emit_json(g, doc);
  } else {
    std::ostringstream out;
    out << "command: graham-pollak min\n";
    out << "n: " << n << '\n';
    out << "minimum parts: " << parts << '\n';
    emit(g, out.str());
  }
  return kOk;
}

int emit_family(const Global& g, const SetFamily& family) {
  emit(g, g.structured() ? serialize_family_json(family) : serialize_family(family));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counting toolkit for constant-intersection set families"};
  app.require_subcommand(1);

  Global g;
  app.add_option("--seed", g.seed, "seed for generated randomness")->capture_default_str();
  app.add_option("--strategy", g.strategy, "kernel search strategy")
      ->check(CLI::IsMember({"box", "dfs"}))
      ->capture_default_str();
  app.add_option("--max-coeff", g.max_coeff, "box radius for kernel searches");
  app.add_option("--budget", g.budget, "node budget for searches");
  app.add_flag("--deterministic", g.deterministic,
               "return the canonical minimal kernel vector, independent of strategy");
  app.add_option("--format", g.format, "report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("--output", g.output, "write the report to a file instead of stdout");

  std::string path;
  std::string tau_text;
  std::optional<int> k_flag;
  int n_arg = 0;
  Index siegel_n = 0, siegel_m = 0;
  Int siegel_B = 1;
  int gen_n = 0, gen_k = 1, gen_m = 0, gen_q = 2;
  bool include_core = false;

  auto* verify = app.add_subcommand("verify", "check a family for constant pairwise intersection");
  verify->add_option("file", path, "family file")->required();

  auto* reduce = app.add_subcommand("reduce", "containment reduction at a size-k member");
  reduce->add_option("file", path, "family file")->required();
  int reduce_k = 0;
  reduce->add_option("--k", reduce_k, "intersection size")->required();

  auto* kernel =
      app.add_subcommand("kernel", "search for a small nonzero left kernel vector");
  kernel->add_option("file", path, "matrix or family file")->required();

  auto* siegel = app.add_subcommand("siegel", "smallest box radius that forces a kernel vector");
  siegel->add_option("--n", siegel_n, "column count")->required();
  siegel->add_option("--m", siegel_m, "row count")->required();
  siegel->add_option("--B", siegel_B, "entry bound")->capture_default_str();

  auto* prove = app.add_subcommand("prove", "replay the member-count bound on a family");
  prove->add_option("file", path, "family file")->required();
  prove->add_option("--k", k_flag, "intersection size (default: measured)");
  prove->add_option("--tau", tau_text, "candidate kernel vector, comma separated");

  auto* enumerate = app.add_subcommand("enumerate", "maximum k-intersecting family over {1..n}");
  int enum_n = 0, enum_k = 0;
  enumerate->add_option("--n", enum_n, "ground set size")->required();
  enumerate->add_option("--k", enum_k, "intersection size")->required();

  auto* beck_fiala = app.add_subcommand("beck-fiala", "low-discrepancy coloring by rounding");
  beck_fiala->add_option("file", path, "family file")->required();

  auto* gp = app.add_subcommand("graham-pollak", "biclique partitions of complete graphs");
  gp->require_subcommand(1);
  auto* gp_verify = gp->add_subcommand("verify", "check an edge partition");
  gp_verify->add_option("file", path, "partition file")->required();
  auto* gp_stars = gp->add_subcommand("stars", "emit the n-1 part star partition");
  gp_stars->add_option("n", n_arg, "vertex count")->required();
  auto* gp_min = gp->add_subcommand("min", "exhaustive minimum part count");
  gp_min->add_option("n", n_arg, "vertex count")->required();

  auto* generate = app.add_subcommand("generate", "write family files");
  generate->require_subcommand(1);
  auto* gen_pencil = generate->add_subcommand("near-pencil", "{1,i} for i=2..n plus {2..n}");
  gen_pencil->add_option("--n", gen_n, "ground set size")->required();
  auto* gen_plane = generate->add_subcommand("plane", "projective plane of prime order");
  gen_plane->add_option("--q", gen_q, "prime order")->required();
  auto* gen_sun = generate->add_subcommand("sunflower", "common core plus disjoint petals");
  gen_sun->add_option("--n", gen_n, "ground set size")->required();
  gen_sun->add_option("--k", gen_k, "core size")->required();
  gen_sun->add_option("--m", gen_m, "member count")->required();
  gen_sun->add_flag("--include-core", include_core, "emit the core as the first member");
  auto* gen_rand = generate->add_subcommand("random", "distinct nonempty subsets, seeded");
  gen_rand->add_option("--n", gen_n, "ground set size")->required();
  gen_rand->add_option("--m", gen_m, "member count")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : gp->get_subcommands({})) sub->fallthrough();
  for (auto* sub : generate->get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(g, path);
    if (reduce->parsed()) return cmd_reduce(g, path, reduce_k);
    if (kernel->parsed()) return cmd_kernel(g, path);
    if (siegel->parsed()) return cmd_siegel(g, siegel_n, siegel_m, siegel_B);
    if (prove->parsed()) return cmd_prove(g, path, k_flag, tau_text);
    if (enumerate->parsed()) return cmd_enumerate(g, enum_n, enum_k);
    if (beck_fiala->parsed()) return cmd_beck_fiala(g, path);
    if (gp->parsed()) {
      if (gp_verify->parsed()) return cmd_gp_verify(g, path);
      if (gp_stars->parsed()) return cmd_gp_stars(g, n_arg);
      if (gp_min->parsed()) return cmd_gp_min(g, n_arg);
    }
    if (generate->parsed()) {
      if (gen_pencil->parsed()) return emit_family(g, gen_near_pencil(gen_n));
      if (gen_plane->parsed()) return emit_family(g, gen_projective_plane(gen_q));
      if (gen_sun->parsed())
        return emit_family(g, gen_sunflower(gen_n, gen_k, gen_m, include_core));
      if (gen_rand->parsed()) return emit_family(g, gen_random_family(gen_n, gen_m, g.seed));
    }
    std::cerr << "error: no command dispatched\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const TheoremViolation& e) {
    std::cerr << "internal invariant violation: " << e.what() << '\n';
    return kInternal;
  } catch (const HypothesisViolated& e) {
    std::cerr << "refuted: " << e.what() << '\n';
    return kRefuted;
  } catch (const NoSmallSet& e) {
    std::cerr << "refuted: " << e.what() << '\n';
    return kRefuted;
  } catch (const SmallSetPresent& e) {
    std::cerr << "refuted: " << e.what() << '\n';
    return kRefuted;
  } catch (const NotInKernel& e) {
    std::cerr << "refuted: " << e.what() << '\n';
    return kRefuted;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRefuted;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
