#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rvkit/decompose.hpp"

namespace rvkit {

struct TermOutcome {
  enum class Tag { UndefinedOnBall, ConstantOnBall, MonomialOnBall };
  Tag tag = Tag::UndefinedOnBall;
  Puiseux value;   // ConstantOnBall
  Puiseux center;  // MonomialOnBall: sn(σ(a')) = b·sn(rv(a' - center))^l
  Puiseux b;
  int l = 0;
  std::string to_string() const;
};

// p : VF → Γ, constant on every open(a, p(a)). Root regions share the
// uniform separating radius beta; the generic rule is
// p(a) = max(v(a), v(a - root) over all roots).
class VolumetricPartition {
 public:
  FieldPtr field;
  Rational beta;
  std::vector<Puiseux> roots;  // truncated representatives are fine

  Rational eval(const Puiseux& a) const;
  bool in_special_region(const Puiseux& a) const;
};

struct VolpartResult {
  VolumetricPartition partition;
  // outcome on each special ball open(root, beta), aligned with
  // partition.roots
  std::vector<TermOutcome> special_outcomes;
  // outcome on the generic ball open(a, p(a)) of a point
  std::function<TermOutcome(const Puiseux&)> generic_outcome;
};

// Volumetric partition for a complexity-1 sn-term in one VF variable.
// The term must have the lemma shape: a sum of products rv(F_i)·r_i, with
// one extra product level allowed under the full RV section.
VolpartResult volpart_term(const RvPtr& sigma, const std::string& var, SectionKind kind,
                           const FieldPtr& f, const Budgets& budgets = {});

struct VolumetricCheck {
  bool ok = true;
  Puiseux witness_a;
  Puiseux witness_a2;
  Rational p_a, p_a2;
};

// p maps into Γ ∪ {∞}; nullopt encodes ∞, where the condition is vacuous
using PartitionFn = std::function<std::optional<Rational>(const Puiseux&)>;

VolumetricCheck is_volumetric(const PartitionFn& p, const SwissCheese& domain, int samples,
                              uint64_t seed);

// --- the fiberwise reduction -----------------------------------------------

struct ReduceStage {
  std::vector<RvPtr> sn_args;          // the σ_i of this stage
  std::vector<std::string> vf_params;  // fresh VF parameters replacing sn(σ_i)
  FPtr reduced;                        // the formula with sn(σ_i) replaced
};

class Reduction {
 public:
  FPtr original;
  std::string var;
  SectionKind kind = SectionKind::KSection;
  FieldPtr field;
  Budgets budgets;
  std::vector<ReduceStage> stages;

  // fiber index of a point: concatenated σ-values per stage (∞-padded when a
  // stage is undefined at the point)
  std::vector<Rv0> pi(const Puiseux& a) const;
  // the L_RV fiber formula through the point, parameters substituted
  FPtr fiber_formula(const Puiseux& a) const;
  // p(a) = pointwise max of the stage partitions along the point's fibers
  Rational p(const Puiseux& a) const;
};

Reduction reduce_with_sections(const FPtr& formula, const std::string& var, SectionKind kind,
                               const FieldPtr& f, const Budgets& budgets = {});

struct LocalSample {
  Puiseux a;
  Rational p;
  bool member;
  SwissCheese local;  // open(a, p(a)) ∩ A, a boolean combination of balls
};

struct LocalCMin {
  Reduction reduction;
  std::vector<LocalSample> samples;
};

// local C-minimality witness under the constant section of K
LocalCMin local_cmin_decompose(const FPtr& formula, const std::string& var, const FieldPtr& f,
                               int samples = 12, uint64_t seed = 23,
                               const Budgets& budgets = {});

// Evidence report for the failure of local C-minimality under the full RV
// section: the distinguishing set contains no ball around any member.
struct ContrastReport {
  bool dag_members_verified = false;   // sampled 1 + sn(t) all satisfy the formula
  bool dag_balls_all_punctured = false;  // every probed ball holds a non-member
  int member_samples = 0;
  int ball_probes = 0;
  std::vector<std::string> evidence;
  // the control run: the same formula under the K section
  bool ddag_singleton_verified = false;
  std::optional<Puiseux> ddag_point;
};

ContrastReport dag_local_cmin_counterexample(const FieldPtr& f, int member_samples = 50,
                                             int radius_probes = 5,
                                             const Budgets& budgets = {});

// the distinguishing formula, in the reading sn(rv(X-1)) = X-1 & rv(X) = 1
FPtr distinguishing_formula(const FieldPtr& f);

}  // namespace rvkit
