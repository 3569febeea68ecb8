#include "fstl/robustness.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace fstl {

namespace {

constexpr double kGridEps = 1e-9;

struct Entry {
  double value;
  int predicate;
  int sample;
  int leaf_preorder;
  int sign;
};

// Deterministic tie-breaks: earlier sample, then lower preorder leaf index.
bool prefer_for_min(const Entry& a, const Entry& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.sample != b.sample) return a.sample < b.sample;
  return a.leaf_preorder < b.leaf_preorder;
}

bool prefer_for_max(const Entry& a, const Entry& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.sample != b.sample) return a.sample < b.sample;
  return a.leaf_preorder < b.leaf_preorder;
}

void assign_preorder(const Formula& f, std::map<const Formula*, int>& out, int& counter) {
  const int mine = counter++;
  if (f.op() == Formula::Op::Atom || f.op() == Formula::Op::True) {
    out.emplace(&f, mine);
    return;
  }
  if (f.lhs()) assign_preorder(*f.lhs(), out, counter);
  if (f.rhs()) assign_preorder(*f.rhs(), out, counter);
}

// Robustness of every node at every grid index where its full horizon fits.
// `valid` is the exclusive end of the usable index range.
struct NodeValues {
  std::vector<Entry> at;
  int valid = 0;
};

class Evaluator {
 public:
  Evaluator(const PredicateTable& table, const PositionTrace& trace,
            const std::map<const Formula*, int>& preorder)
      : table_(table), trace_(trace), preorder_(preorder) {}

  NodeValues eval(const Formula& f) {
    const int n = trace_.size();
    NodeValues r;
    switch (f.op()) {
      case Formula::Op::True: {
        r.valid = n;
        r.at.resize(n, Entry{std::numeric_limits<double>::infinity(), -1, -1,
                             preorder_.at(&f), 1});
        for (int k = 0; k < n; ++k) r.at[k].sample = k;
        return r;
      }
      case Formula::Op::Atom: {
        const Predicate& p = table_.at(f.predicate());
        r.valid = n;
        r.at.reserve(n);
        for (int k = 0; k < n; ++k)
          r.at.push_back(Entry{p.value(trace_.points[k]), f.predicate(), k, preorder_.at(&f), 1});
        return r;
      }
      case Formula::Op::Not: {
        r = eval(*f.lhs());
        for (int k = 0; k < r.valid; ++k) {
          r.at[k].value = -r.at[k].value;
          r.at[k].sign = -r.at[k].sign;
        }
        return r;
      }
      case Formula::Op::And: {
        NodeValues l = eval(*f.lhs());
        NodeValues rr = eval(*f.rhs());
        r.valid = std::min(l.valid, rr.valid);
        r.at.reserve(r.valid);
        for (int k = 0; k < r.valid; ++k)
          r.at.push_back(prefer_for_min(l.at[k], rr.at[k]) ? l.at[k] : rr.at[k]);
        return r;
      }
      case Formula::Op::Eventually:
      case Formula::Op::Always: {
        NodeValues c = eval(*f.lhs());
        const WindowOffsets w = window(f);
        r.valid = c.valid - w.hi;
        if (r.valid < 0) r.valid = 0;
        r.at.reserve(std::max(r.valid, 0));
        const bool is_max = f.op() == Formula::Op::Eventually;
        for (int k = 0; k < r.valid; ++k) {
          Entry best = c.at[k + w.lo];
          for (int j = k + w.lo + 1; j <= k + w.hi; ++j) {
            const Entry& cand = c.at[j];
            const bool better = is_max ? prefer_for_max(cand, best) : prefer_for_min(cand, best);
            if (better) best = cand;
          }
          r.at.push_back(best);
        }
        return r;
      }
      case Formula::Op::Until: {
        NodeValues l = eval(*f.lhs());
        NodeValues rr = eval(*f.rhs());
        const WindowOffsets w = window(f);
        r.valid = std::min(l.valid, rr.valid) - w.hi;
        if (r.valid < 0) r.valid = 0;
        r.at.reserve(std::max(r.valid, 0));
        for (int k = 0; k < r.valid; ++k) {
          // max over t1 in [k+lo, k+hi] of min(rhs(t1), min over [k, t1] of lhs)
          Entry prefix = l.at[k];
          for (int j = k + 1; j < k + w.lo; ++j)
            if (prefer_for_min(l.at[j], prefix)) prefix = l.at[j];
          bool have = false;
          Entry best{};
          for (int j = k + w.lo; j <= k + w.hi; ++j) {
            if (j > k && prefer_for_min(l.at[j], prefix)) prefix = l.at[j];
            Entry cand = prefer_for_min(rr.at[j], prefix) ? rr.at[j] : prefix;
            if (!have || prefer_for_max(cand, best)) {
              best = cand;
              have = true;
            }
          }
          r.at.push_back(best);
        }
        return r;
      }
    }
    return r;
  }

 private:
  WindowOffsets window(const Formula& f) const {
    const WindowOffsets w = window_offsets(f.lower(), f.upper(), trace_.dt);
    if (w.lo > w.hi)
      throw std::invalid_argument("temporal window [" + std::to_string(f.lower()) + "," +
                                  std::to_string(f.upper()) + "] contains no grid sample");
    return w;
  }

  const PredicateTable& table_;
  const PositionTrace& trace_;
  const std::map<const Formula*, int>& preorder_;
};

}  // namespace

WindowOffsets window_offsets(double a, double b, double dt) {
  const int lo = static_cast<int>(std::ceil(a / dt - kGridEps));
  const int hi = static_cast<int>(std::floor(b / dt + kGridEps));
  return {lo < 0 ? 0 : lo, hi};
}

double eval_predicate(const Predicate& p, const Eigen::Vector2d& state_proj) {
  return p.value(state_proj);
}

RobustnessValue eval_robustness(const Formula& f, const PredicateTable& table,
                                const PositionTrace& trace, double t) {
  if (trace.size() == 0) throw HorizonError("empty trace");
  if (!(trace.dt > 0.0) && trace.size() > 1)
    throw std::invalid_argument("trace grid spacing must be positive");
  const double dt = trace.size() > 1 ? trace.dt : 1.0;
  const double kf = (t - trace.t0) / dt;
  const int k0 = static_cast<int>(std::llround(kf));
  if (std::abs(kf - k0) > 1e-6 || k0 < 0 || k0 >= trace.size())
    throw std::invalid_argument("evaluation time does not lie on the trace grid");

  std::map<const Formula*, int> preorder;
  int counter = 0;
  assign_preorder(f, preorder, counter);

  PositionTrace local = trace;
  local.dt = dt;
  Evaluator ev(table, local, preorder);
  NodeValues values = ev.eval(f);
  if (k0 >= values.valid)
    throw HorizonError("trace horizon insufficient: need " + std::to_string(horizon(f)) +
                       "s beyond t, have " + std::to_string((trace.size() - 1 - k0) * dt) + "s");
  const Entry& e = values.at[k0];
  return RobustnessValue{e.value, e.predicate, e.sample, e.leaf_preorder, e.sign};
}

namespace {

struct LocalEntry {
  double value;
  const Predicate* pred;
  int predicate;
  int leaf_preorder;
  int sign;
};

LocalEntry eval_local(const Formula& f, const PredicateTable& table, const Eigen::Vector2d& p,
                      int& counter) {
  const int mine = counter++;
  switch (f.op()) {
    case Formula::Op::True:
      return LocalEntry{std::numeric_limits<double>::infinity(), nullptr, -1, mine, 1};
    case Formula::Op::Atom: {
      const Predicate& pr = table.at(f.predicate());
      return LocalEntry{pr.value(p), &pr, f.predicate(), mine, 1};
    }
    case Formula::Op::Not: {
      LocalEntry e = eval_local(*f.lhs(), table, p, counter);
      e.value = -e.value;
      e.sign = -e.sign;
      return e;
    }
    case Formula::Op::And: {
      LocalEntry l = eval_local(*f.lhs(), table, p, counter);
      LocalEntry r = eval_local(*f.rhs(), table, p, counter);
      if (l.value != r.value) return l.value < r.value ? l : r;
      return l.leaf_preorder <= r.leaf_preorder ? l : r;
    }
    default:
      throw std::invalid_argument("formula contains a temporal operator");
  }
}

}  // namespace

double eval_nontemporal(const Formula& psi, const PredicateTable& table, const Eigen::Vector2d& p) {
  int counter = 0;
  return eval_local(psi, table, p, counter).value;
}

std::optional<PsiLocal> psi_local(const Formula& psi, const PredicateTable& table,
                                  const Eigen::Vector2d& p) {
  int counter = 0;
  const LocalEntry e = eval_local(psi, table, p, counter);
  PsiLocal out;
  out.rho = e.value;
  out.predicate = e.predicate;
  out.leaf_preorder = e.leaf_preorder;
  out.sign = e.sign;
  if (e.pred != nullptr) {
    if (!e.pred->gradient_defined(p)) return std::nullopt;
    out.grad = static_cast<double>(e.sign) * e.pred->gradient(p);
    out.hess = static_cast<double>(e.sign) * e.pred->hessian(p);
  }
  return out;
}

Eigen::VectorXd robustness_gradient(const Formula& psi, const PredicateTable& table,
                                    const Eigen::VectorXd& state) {
  if (state.size() < 2) throw std::invalid_argument("state must have at least 2 coordinates");
  const auto local = psi_local(psi, table, state.head<2>());
  if (!local)
    throw std::domain_error("robustness gradient undefined (predicate evaluated at its center)");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(state.size());
  grad.head<2>() = local->grad;
  return grad;
}

}  // namespace fstl
