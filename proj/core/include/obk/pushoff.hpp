#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obk/error.hpp"
#include "obk/legendrian.hpp"

namespace obk {

/// Planar (1) or positive genus (2); (a) no parallel copies, (b)(i) parallel
/// copies all oriented alike, (b)(ii) some parallel class mixes orientations.
enum class Case { c1a, c1bi, c1bii, c2a, c2bi, c2bii };

std::string_view to_string(Case c);
std::optional<Case> parse_case(std::string_view text);

enum class StepKind { aux_boundary_parallel, pushoff };

std::string_view to_string(StepKind k);
std::optional<StepKind> parse_step_kind(std::string_view text);

/// One stabilization of the schedule. Indices are 0-based positions in the
/// certificate's step list.
struct ScheduleStep {
  StepKind kind = StepKind::pushoff;
  /// pushoff: the component whose push-off becomes `new_binding`
  std::optional<std::string> target;
  /// aux: the component pushed over the new handle (negatively stabilized)
  std::optional<std::string> pushed;
  /// binding carrying both feet of the handle
  std::string feet;
  /// set when `feet` was created by an earlier step
  std::optional<std::size_t> feet_step;
  std::string new_binding;
  CurveRef twist_curve;
  std::vector<std::size_t> depends_on;
  std::vector<std::size_t> disjoint_from;

  friend bool operator==(const ScheduleStep&, const ScheduleStep&) = default;
};

struct LedgerEntry {
  int genus = 0;
  int boundary_count = 0;
  int euler_char = 0;
  std::size_t word_length = 0;
  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

struct Certificate {
  std::string input_digest;
  Case case_tag = Case::c1a;
  std::vector<ScheduleStep> steps;
  /// one entry per applied step; empty until apply_schedule
  std::vector<LedgerEntry> ledger;
  /// component id -> binding label, in component order
  std::vector<std::pair<std::string, std::string>> sub_binding_map;
  bool order_free = true;
  std::vector<std::string> tags;
  /// self-linking data of the resulting sub-binding
  TransverseLinkRecord transverse;

  std::size_t aux_count() const;
  std::size_t pushoff_count() const;
  bool has_tag(std::string_view tag) const;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline constexpr std::string_view kTagRemarkExtension = "remark-extension";
inline constexpr std::string_view kTagBoundsOwnBinding = "bounds-own-binding";

/// Raised by build_schedule on a placement that fails validate_placement.
class InvalidPlacement : public DomainError {
 public:
  explicit InvalidPlacement(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

Case classify(const LinkPlacement& p);

struct CrucialStep {
  OpenBook open_book;
  std::string new_binding;
  CurveRef twist_curve;
  /// sl of the new binding, tb - rot of K (absent when K has no invariants)
  std::optional<int> sl;
  IntMatrix embedding;
};

/// One positive stabilization with both feet on `gamma_target` along the
/// curve α that runs out along γ, around K and back: α pairs with every old
/// page class exactly as K does and runs once over the new handle. The new
/// binding component is the transverse push-off of K.
CrucialStep lemma_crucial_step(const OpenBook& ob, const LinkComponent& k, std::string_view gamma_target,
                               std::string curve_id = {});

/// Unapplied certificate (ledger empty).
Certificate build_schedule(const LinkPlacement& p);

struct AppliedSchedule {
  OpenBook open_book;
  Certificate certificate;
  /// components after the schedule: redirected bindings, stabilized invariants
  std::vector<LinkComponent> components;
};

/// Replays every step with positive stabilizations and fills the ledger. A
/// certificate that already carries a ledger must reproduce it exactly.
AppliedSchedule apply_schedule(const LinkPlacement& p, const Certificate& cert);

struct PermutationReport {
  bool applied = false;
  bool equivalent = false;
  std::vector<std::string> violations;
  bool ok() const { return applied && equivalent; }
};

/// Replays the steps in `perm` order (perm[q] = step run at position q).
/// Order-sensitive certificates reject perms that break depends_on.
PermutationReport permute_and_check(const LinkPlacement& p, const Certificate& cert,
                                    std::span<const std::size_t> perm);

}  // namespace obk
