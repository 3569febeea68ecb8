#include "fstl/formula.hpp"

#include <algorithm>
#include <cstdio>

namespace fstl {

double horizon(const Formula& f) {
  switch (f.op()) {
    case Formula::Op::True:
    case Formula::Op::Atom:
      return 0.0;
    case Formula::Op::Not:
      return horizon(*f.lhs());
    case Formula::Op::And:
      return std::max(horizon(*f.lhs()), horizon(*f.rhs()));
    case Formula::Op::Until:
      return f.upper() + std::max(horizon(*f.lhs()), horizon(*f.rhs()));
    case Formula::Op::Eventually:
    case Formula::Op::Always:
      return f.upper() + horizon(*f.lhs());
  }
  return 0.0;
}

bool contains_temporal(const Formula& f) {
  if (f.is_temporal_op()) return true;
  if (f.lhs() && contains_temporal(*f.lhs())) return true;
  if (f.rhs() && contains_temporal(*f.rhs())) return true;
  return false;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Formula::Op::True:
      return true;
    case Formula::Op::Atom:
      return a.predicate() == b.predicate();
    case Formula::Op::Not:
      return structurally_equal(*a.lhs(), *b.lhs());
    case Formula::Op::And:
      return structurally_equal(*a.lhs(), *b.lhs()) && structurally_equal(*a.rhs(), *b.rhs());
    case Formula::Op::Until:
    case Formula::Op::Eventually:
    case Formula::Op::Always: {
      if (a.lower() != b.lower() || a.upper() != b.upper()) return false;
      if (!structurally_equal(*a.lhs(), *b.lhs())) return false;
      return a.op() != Formula::Op::Until || structurally_equal(*a.rhs(), *b.rhs());
    }
  }
  return false;
}

namespace {

std::string fmt_bound(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string bounds_of(const Formula& f) {
  return "[" + fmt_bound(f.lower()) + "," + fmt_bound(f.upper()) + "]";
}

}  // namespace

std::string to_string(const Formula& f, const PredicateTable& table) {
  switch (f.op()) {
    case Formula::Op::True:
      return "true";
    case Formula::Op::Atom:
      return table.at(f.predicate()).name;
    case Formula::Op::Not:
      return "!" + to_string(*f.lhs(), table);
    case Formula::Op::And:
      return "(" + to_string(*f.lhs(), table) + " & " + to_string(*f.rhs(), table) + ")";
    case Formula::Op::Eventually:
      return "F" + bounds_of(f) + " " + to_string(*f.lhs(), table);
    case Formula::Op::Always:
      return "G" + bounds_of(f) + " " + to_string(*f.lhs(), table);
    case Formula::Op::Until: {
      // The grammar allows only an atom on the left of U; parsed trees always
      // satisfy this, programmatic ones are printed parenthesized regardless.
      const Formula& l = *f.lhs();
      std::string left = l.op() == Formula::Op::Atom || l.op() == Formula::Op::True
                             ? to_string(l, table)
                             : "(" + to_string(l, table) + ")";
      return left + " U" + bounds_of(f) + " (" + to_string(*f.rhs(), table) + ")";
    }
  }
  return "";
}

}  // namespace fstl
