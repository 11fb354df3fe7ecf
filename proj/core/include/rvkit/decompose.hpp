#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rvkit/formula.hpp"
#include "rvkit/newton.hpp"
#include "rvkit/swiss_cheese.hpp"

namespace rvkit {

struct Budgets {
  int newton_steps = 64;
  int case_split = 64;
  int recursion_depth = 32;
};

// --- evaluation -------------------------------------------------------------

// Value of an RV-sort term under an assignment; nullopt encodes an undefined
// K-term (or an undefined product with the K zero).
std::optional<Rv0> eval_rv_term(const RvPtr& t, const Assignment& a, SectionKind kind);
// Value of a VF-sort term; nullopt when a subterm's section argument is
// undefined.
std::optional<Puiseux> eval_vf_term(const VfPtr& t, const Assignment& a, SectionKind kind);

// Truth of a closed formula. Negations are pushed to literal polarity first;
// a literal that meets an undefined K-term is false under either polarity.
bool eval_qf(const FPtr& f, SectionKind kind = SectionKind::None);
bool eval_qf(const FPtr& f, const Assignment& a, SectionKind kind = SectionKind::None);

// --- one-variable decomposition ----------------------------------------------

struct DefinableSet1 {
  FPtr formula;                 // one free VF variable
  std::string var;
  SwissCheese cheese;
  // rv-applied polynomials from the defining literals (root provenance), and
  // per-ball literal provenance
  std::vector<VfPoly> provenance_polys;
  std::map<std::string, std::vector<std::string>> ball_provenance;  // ball -> literals
};

// exact solution set of a single literal in the variable `var`
SwissCheese solve_literal1(const Literal& lit, const std::string& var,
                           const FieldPtr& f, const Budgets& budgets = {});

// a VF term in one variable as a polynomial; section terms must have been
// substituted or folded away first
VfPoly vf_term_to_poly(const VfPtr& t, const std::string& var, const FieldPtr& f);

DefinableSet1 decompose1(const FPtr& formula, const std::string& var,
                         const FieldPtr& f, const Budgets& budgets = {});

bool decide_exists(const FPtr& formula, const std::string& var, const FieldPtr& f,
                   const Budgets& budgets = {});

// --- centers and approximation -------------------------------------------------

// Root-average centers of a finite union of disjoint closed balls; each ball
// must contain a root of some provenance polynomial.
std::vector<std::pair<Ball, Puiseux>> centers_closed(const DefinableSet1& set,
                                                     const Budgets& budgets = {});

// Definable point of the rv-ball t from a nonempty proper definable subset.
Puiseux rv_ball_center(const RvElem& t, const DefinableSet1& a, const Budgets& budgets = {});

// Point of rv^{-1}(t) outside gb on which every G_i keeps its rv (closed gb)
// or at least its valuation (open gb).
Puiseux approximate_outside(const Ball& gb, const std::vector<VfPoly>& polys,
                            const Budgets& budgets = {});

// --- finite-set coding -----------------------------------------------------------

struct RvCodeNode {
  Puiseux center;                      // average subtracted at this stage
  std::vector<std::pair<RvElem, RvCodeNode>> classes;  // split by rv
  bool leaf = false;
};

struct RvCode {
  // tuple of RV values per input element, all distinct; width m
  std::vector<std::vector<RvElem>> codes;
  int width = 0;
  RvCodeNode tree;
};

RvCode finite_set_rv_code(const std::vector<std::vector<Puiseux>>& tuples);

// --- probing (oracle support) ------------------------------------------------------

// Deterministic structured probe points for a cheese: component centers,
// boundary witnesses on/inside/outside each radius, hole witnesses, far
// points. Seeded by the formula hash for reproducibility.
std::vector<Puiseux> probe_points(const SwissCheese& sc, const FieldPtr& f,
                                  size_t at_least, uint64_t seed);

uint64_t fnv_hash(const std::string& s);

}  // namespace rvkit
