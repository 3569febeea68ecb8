// STL formula tree: boolean connectives plus bounded temporal operators.
#pragma once

#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "fstl/predicate.hpp"

namespace fstl {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Op { True, Atom, Not, And, Until, Eventually, Always };

  Op op() const { return op_; }
  int predicate() const { return predicate_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  const FormulaPtr& lhs() const { return lhs_; }
  const FormulaPtr& rhs() const { return rhs_; }

  static FormulaPtr truth() { return make(Op::True); }

  static FormulaPtr atom(int predicate) {
    if (predicate < 0) throw std::invalid_argument("atom: negative predicate index");
    auto f = make(Op::Atom);
    f->predicate_ = predicate;
    return f;
  }

  static FormulaPtr negation(FormulaPtr f) {
    auto n = make(Op::Not);
    n->lhs_ = require(std::move(f));
    return n;
  }

  static FormulaPtr conjunction(FormulaPtr l, FormulaPtr r) {
    auto n = make(Op::And);
    n->lhs_ = require(std::move(l));
    n->rhs_ = require(std::move(r));
    return n;
  }

  static FormulaPtr until(double a, double b, FormulaPtr l, FormulaPtr r) {
    auto n = make(Op::Until);
    n->set_bounds(a, b);
    n->lhs_ = require(std::move(l));
    n->rhs_ = require(std::move(r));
    return n;
  }

  static FormulaPtr eventually(double a, double b, FormulaPtr f) {
    auto n = make(Op::Eventually);
    n->set_bounds(a, b);
    n->lhs_ = require(std::move(f));
    return n;
  }

  static FormulaPtr always(double a, double b, FormulaPtr f) {
    auto n = make(Op::Always);
    n->set_bounds(a, b);
    n->lhs_ = require(std::move(f));
    return n;
  }

  /// Derived disjunction, lowered to !(!l & !r); no dedicated node.
  static FormulaPtr disjunction(FormulaPtr l, FormulaPtr r) {
    return negation(conjunction(negation(std::move(l)), negation(std::move(r))));
  }

  bool is_temporal_op() const {
    return op_ == Op::Until || op_ == Op::Eventually || op_ == Op::Always;
  }

 private:
  static std::shared_ptr<Formula> make(Op op) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->op_ = op;
    return f;
  }

  static FormulaPtr require(FormulaPtr f) {
    if (!f) throw std::invalid_argument("null subformula");
    return f;
  }

  void set_bounds(double a, double b) {
    if (!(a >= 0.0) || !(b >= a) || !std::isfinite(b))
      throw std::invalid_argument("temporal bounds must satisfy 0 <= a <= b < inf");
    a_ = a;
    b_ = b;
  }

  Formula() = default;

  Op op_ = Op::True;
  int predicate_ = -1;
  double a_ = 0.0, b_ = 0.0;
  FormulaPtr lhs_, rhs_;
};

/// Sum of nested upper time bounds: how far beyond t a trace must extend.
double horizon(const Formula& f);

bool contains_temporal(const Formula& f);

/// Deep structural comparison (bounds compared exactly).
bool structurally_equal(const Formula& a, const Formula& b);

/// Canonical text form; re-parsing it yields a structurally equal tree.
std::string to_string(const Formula& f, const PredicateTable& table);

}  // namespace fstl
