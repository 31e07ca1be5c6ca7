// Refutation search, proof checking and evidence detection.

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hotab/rules.hpp"
#include "hotab/semantics.hpp"

namespace hotab {

/// One rule application and a subtree per alternative.
struct ProofNode {
  RuleInstance instance;
  std::vector<ProofNode> children;
};

struct Proof {
  Branch root;
  ProofNode tree;
  Calculus calculus = Calculus::STT;
  bool eager_close = false;

  std::size_t node_count() const;
  /// How often each rule is used.
  std::map<RuleId, std::size_t> rule_counts() const;
};

struct SearchConfig {
  Calculus calculus = Calculus::STT;
  /// Instantiation fuel per iterative-deepening level (STT only).
  std::vector<std::size_t> fuel_schedule{1, 2, 3};
  /// Budgets; nullopt disables.
  std::optional<std::size_t> max_nodes = 100000;
  std::optional<std::chrono::milliseconds> timeout = std::chrono::seconds(10);
  bool eager_close = false;
  std::uint64_t max_domain = Frame::kDefaultCeiling;
  /// Called before each rule application.
  std::function<void(const Branch&, const RuleInstance&)> on_instance;
};

enum class VerdictKind { Refuted, Satisfiable, Unknown };
const char* to_string(VerdictKind k);

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t fuel = 0;
  std::chrono::microseconds elapsed{0};
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<Proof> proof;
  std::optional<Model> model;
  /// The open branch a model was extracted from.
  std::optional<Branch> saturated;
  /// For Unknown: "nodes", "timeout", "fuel" or "extraction".
  std::string reason;
  SearchStats stats;
};

/// Throws FragmentViolation for the EFO calculus on non-quasi-EFO input.
Verdict refute(const Branch& a, const SearchConfig& cfg = {});

struct Saturation {
  /// Set when every branch closed.
  std::optional<Proof> proof;
  /// Otherwise the leftmost open branch with no applicable instance.
  std::optional<Branch> saturated;
};

/// EFO saturation without budgets.
Saturation saturate_efo(const Branch& a, const std::function<void(const Branch&, const RuleInstance&)>& on_instance = {});

/// Empty string if every node is a legal instance on its branch and every
/// leaf has no alternatives; else the first problem found.
std::string explain_proof(const Proof& p);
bool check_proof(const Proof& p);

enum class EvidenceScope { EFO, STTBounded };

enum class EvidenceCondition { DN, BQ, BE, FQ, FE, Mat, Dec, Con, Imp, ImpN, All, AllD, AllN };
const char* to_string(EvidenceCondition c);

struct EvidenceViolation {
  EvidenceCondition condition;
  std::vector<Term> formulas;
  std::string detail;
};

struct EvidenceReport {
  bool evident = true;
  /// Some condition could only be checked up to the fuel.
  bool bounded = false;
  std::vector<EvidenceViolation> violations;
};

/// Checks the evidence conditions.  STTBounded checks EFQ (and EAll) only
/// for the instantiation terms within `fuel`.
EvidenceReport is_evident(const Branch& e, EvidenceScope scope, std::size_t fuel = 2);

}  // namespace hotab
