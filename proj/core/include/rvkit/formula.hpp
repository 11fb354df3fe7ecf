#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rvkit/puiseux.hpp"
#include "rvkit/rv_value.hpp"

namespace rvkit {

// Quantifier-free formulas of the leading-term language, with the optional
// section symbol sn. Terms are immutable shared trees.

struct VfTerm;
struct RvTerm;
using VfPtr = std::shared_ptr<const VfTerm>;
using RvPtr = std::shared_ptr<const RvTerm>;

// VF-sort term: polynomial expression in VF variables over Puiseux constants
// and sn-applications.
struct VfTerm {
  enum class Kind { Const, Var, Sn, Add, Sub, Mul, Neg, Pow };
  Kind kind;
  Puiseux cval;       // Const
  std::string var;    // Var
  RvPtr rv_arg;       // Sn
  VfPtr a, b;         // Add/Sub/Mul (a,b), Neg/Pow (a)
  int exponent = 0;   // Pow

  static VfPtr constant(Puiseux c);
  static VfPtr variable(std::string name);
  static VfPtr sn(RvPtr arg);
  static VfPtr add(VfPtr x, VfPtr y);
  static VfPtr sub(VfPtr x, VfPtr y);
  static VfPtr mul(VfPtr x, VfPtr y);
  static VfPtr neg(VfPtr x);
  static VfPtr pow(VfPtr x, int e);
};

// RV-sort term: constants, variables with integer powers, rv-applications,
// products, and K-term sums of products.
struct RvTerm {
  enum class Kind { Const, Var, RvApply, Mul, Pow, KSum };
  Kind kind;
  Rv0 cval;                    // Const ([q;c], INF, or the K zero)
  std::string var;             // Var
  VfPtr vf_arg;                // RvApply
  RvPtr a, b;                  // Mul (a,b), Pow (a)
  int exponent = 0;            // Pow (any integer)
  std::vector<RvPtr> summands; // KSum, size >= 2

  static RvPtr constant(Rv0 c);
  static RvPtr variable(std::string name);
  static RvPtr rv(VfPtr arg);
  static RvPtr mul(RvPtr x, RvPtr y);
  static RvPtr pow(RvPtr x, int e);
  static RvPtr ksum(std::vector<RvPtr> summands);
};

struct Literal {
  enum class Rel { VfEq, VfNe, RvEq, RvNe, RvLe, RvGt };
  Rel rel;
  VfPtr vf;          // VfEq/VfNe: vf = 0 or vf != 0
  RvPtr lhs, rhs;    // RV relations
  Literal flip() const;  // polarity flip: =/!=, <=/>
  std::string to_string() const;
};

struct QfFormula;
using FPtr = std::shared_ptr<const QfFormula>;

struct QfFormula {
  enum class Kind { Lit, And, Or, Not };
  Kind kind;
  Literal lit;
  std::vector<FPtr> kids;

  static FPtr literal(Literal l);
  static FPtr conj(std::vector<FPtr> kids);
  static FPtr disj(std::vector<FPtr> kids);
  static FPtr negate(FPtr f);
};

// --- parsing and printing ------------------------------------------------

// Parses a formula in the artifact grammar (SyntaxError/TypeError carry the
// position). The field interprets K-element literals.
FPtr parse_formula(const FieldPtr& f, std::string_view text);
VfPtr parse_vf_term(const FieldPtr& f, std::string_view text);
Puiseux parse_puiseux(const FieldPtr& f, std::string_view text);

std::string print_formula(const FPtr& f);
std::string print_vf_term(const VfPtr& t);
std::string print_rv_term(const RvPtr& t);

// --- structure -----------------------------------------------------------

struct VarInventory {
  std::set<std::string> vf_vars;
  std::set<std::string> rv_vars;
};
VarInventory variables(const FPtr& f);

// disjunctive normal form; negations become literal polarity flips
FPtr to_dnf(const FPtr& f);
// clauses of a DNF formula as literal lists
std::vector<std::vector<Literal>> dnf_clauses(const FPtr& dnf);

// section-term complexity
int complexity(const VfPtr& t);
int complexity(const RvPtr& t);
int complexity(const FPtr& f);

// Complexity-lowering rewrite: replaces each rv(σ) with |σ| <= 1 by a fresh
// RV variable Z_i and conjoins rv(σ) = Z_i. NothingToLower when already 0.
struct Lowered {
  FPtr formula;
  std::vector<std::string> new_vars;
  std::vector<std::pair<std::string, RvPtr>> definitions;  // Z_i = rv(σ_i)
};
Lowered lower_complexity(const FPtr& f);

// capture-free parameter substitution
struct Assignment {
  std::map<std::string, Puiseux> vf;
  std::map<std::string, Rv0> rv;
};
FPtr substitute(const FPtr& f, const Assignment& a);
VfPtr substitute(const VfPtr& t, const Assignment& a);
RvPtr substitute(const RvPtr& t, const Assignment& a);

}  // namespace rvkit
