#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rvkit/decompose.hpp"
#include "rvkit/swiss_cheese.hpp"

namespace rvkit {

// A family of rv-classes cut out by value constraints: every t with vrv(t)
// in the range, minus finitely many excluded classes, plus optionally the
// class of 0 (t = ∞). Families keep fibered sets finite after canonical
// bijections split a set into its rv-classes.
struct RvClassFamily {
  std::optional<std::pair<Rational, bool>> lower;  // (bound, strict)
  std::optional<std::pair<Rational, bool>> upper;
  std::vector<RvElem> excluded;
  bool include_infinity = false;

  bool contains(const RvElem& t) const;
  // deterministic sample members (for certificates and preimage checks)
  std::vector<RvElem> sample(const FieldPtr& f, int count, uint64_t seed) const;
  std::string to_string() const;
};

// fiber at a concrete RV tuple; `shift` accumulates the centripetal
// translations applied along this branch (identity = 0)
struct ConcreteFiber {
  std::vector<RvElem> prefix;  // most recent coordinate first
  SwissCheese fiber;
  Puiseux shift;
};

// one symbolic coordinate worth of fibers: for each t in the family, the
// polydisc rv^{-1}(t) × {(t, prefix)}
struct FamilyFiber {
  std::vector<RvElem> prefix;
  RvClassFamily family;
  Puiseux shift;
};

class FiberedSet {
 public:
  explicit FiberedSet(FieldPtr f) : field_(std::move(f)) {}
  static FiberedSet of_set(const SwissCheese& s);  // arity 0

  const FieldPtr& field() const { return field_; }
  std::vector<ConcreteFiber> concrete;
  std::vector<FamilyFiber> families;
  std::vector<VfPoly> provenance;  // optional root provenance for centers

 private:
  FieldPtr field_;
};

struct CanonicalStep {};

struct CentripetalStep {
  // locus: the rv-polydiscs of these tuples; focus: tuple -> VF point in the
  // tuple's class
  std::vector<std::vector<RvElem>> locus;
  std::vector<Puiseux> focus;
  std::vector<bool> used_root_average;  // per tuple: lemma path vs stored center
};

struct SpecialStep {
  bool canonical;
  CentripetalStep centripetal;  // when !canonical
};

struct SpecialBijection {
  std::vector<SpecialStep> steps;
  int length() const {
    int n = 0;
    for (const auto& s : steps) n += s.canonical ? 0 : 1;
    return n;
  }
};

struct RvPolydisc {
  std::vector<RvElem> tuple;       // concrete tuple (class first)
  std::optional<RvClassFamily> family;  // symbolic member when present
  Ball ball;                       // the VF part (rv-ball or the point 0)
  Puiseux total_shift;             // branch translation, for preimages
};

struct RvPullbackCert {
  std::vector<RvPolydisc> polydiscs;
  bool verified = false;
  std::string witness;  // failing fiber when !verified
};

// canonical bijection: insert rv of the VF coordinate, splitting each fiber
// into full rv-classes (families), the zero point, and proper parts
FiberedSet canonical_bijection(const FiberedSet& a);

// centripetal transformation; λ values must lie in their tuple's class
FiberedSet centripetal(const FiberedSet& a, const CentripetalStep& step);

// fibers replaced by the union of rv-balls meeting them
FiberedSet rv_hull(const FiberedSet& a);

RvPullbackCert verify_pullback(const FiberedSet& a);

struct PullbackResult {
  SpecialBijection bijection;
  FiberedSet image;
  RvPullbackCert cert;
};

// the deformed-RV-pullback construction; recursion on positive closures of
// components (and of holes in the punctured case) with averaged centers
PullbackResult to_rv_pullback(const FiberedSet& a, const Budgets& budgets = {});

struct PreimagePiece {
  std::vector<RvElem> tuple;
  bool is_point;
  Puiseux point;  // when is_point
  Ball ball;      // open ball otherwise
};

// pulls each certified polydisc back through the recorded steps and checks
// the point-or-open-polydisc dichotomy
std::vector<PreimagePiece> classify_preimages(const SpecialBijection& t,
                                              const PullbackResult& result,
                                              int family_samples = 3,
                                              uint64_t seed = 17);

// --- b-minimality witnesses -------------------------------------------------

struct B1Witness {
  PullbackResult pullback;
  std::vector<PreimagePiece> fibers;  // each a point or an open ball
};

B1Witness b1_witness(const DefinableSet1& a, const Budgets& budgets = {});

struct B3Piece {
  enum class Kind { Point, BallPiece, ClassFamily } kind;
  Puiseux point;         // Point
  Ball ball;             // BallPiece
  Puiseux center;        // ClassFamily: classes of rv(x - center)
  RvClassFamily family;  // ClassFamily
  bool injective = false;  // otherwise constant
};

struct B3Witness {
  std::vector<B3Piece> pieces;
  std::string map_description;
};

// piecewise injective/constant refinement for a polynomial map
B3Witness b3_witness_poly(const VfPoly& f, const DefinableSet1& a,
                          const Budgets& budgets = {});

}  // namespace rvkit
