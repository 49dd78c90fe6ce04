#include <algorithm>
#include <functional>

#include "stt/tope/tope.hpp"

namespace stt::tope {

namespace {

constexpr std::size_t kMaxAtoms = 16;

void check_bound(const CubeContext& ctx, std::size_t bound) {
  if (ctx.vars.size() > bound)
    throw BoundExceeded("model enumeration over " + std::to_string(ctx.vars.size()) + " variables exceeds bound " +
                        std::to_string(bound));
  if (ctx.atoms.size() > kMaxAtoms) throw BoundExceeded("too many opaque topes for model enumeration");
}

// Calls f for each weak ordering of n elements (block index per element).
void weak_orderings(int n, const std::function<void(const std::vector<int>&, int)>& f) {
  std::vector<int> block(static_cast<std::size_t>(n), -1);
  // Assign elements to blocks 0..k-1 as a set partition, then permute blocks.
  std::function<void(int, int)> partition = [&](int i, int k) {
    if (i == n) {
      std::vector<int> perm(static_cast<std::size_t>(k));
      for (int b = 0; b < k; ++b) perm[b] = b;
      do {
        std::vector<int> ordered(block.size());
        for (std::size_t v = 0; v < block.size(); ++v) ordered[v] = perm[static_cast<std::size_t>(block[v])];
        f(ordered, k);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int b = 0; b <= k; ++b) {
      block[static_cast<std::size_t>(i)] = b;
      partition(i + 1, b == k ? k + 1 : k);
    }
  };
  partition(0, 0);
}

// Position of a point on a line where blocks sit strictly between the
// endpoints unless flagged.
int rank(const IntervalModel& m, const Point& p) {
  int k = static_cast<int>(m.flags.size());
  switch (p.kind) {
    case Point::Zero: return 0;
    case Point::One: return k + 1;
    case Point::Var: {
      int b = m.block[static_cast<std::size_t>(p.var)];
      switch (m.flags[static_cast<std::size_t>(b)]) {
        case BlockFlag::AtZero: return 0;
        case BlockFlag::AtOne: return k + 1;
        case BlockFlag::Interior: return b + 1;
      }
    }
  }
  return 0;
}

}  // namespace

std::vector<IntervalModel> enumerate_models(const CubeContext& ctx, std::size_t bound) {
  check_bound(ctx, bound);
  std::vector<IntervalModel> orders;
  int n = static_cast<int>(ctx.vars.size());
  weak_orderings(n, [&](const std::vector<int>& block, int k) {
    // First block may sit at 0, last block may sit at 1.
    for (int lo = 0; lo < 2; ++lo) {
      for (int hi = 0; hi < 2; ++hi) {
        if (k == 0 && (lo || hi)) continue;
        if (k == 1 && lo && hi) continue;
        IntervalModel m;
        m.block = block;
        m.flags.assign(static_cast<std::size_t>(k), BlockFlag::Interior);
        if (lo) m.flags.front() = BlockFlag::AtZero;
        if (hi) m.flags.back() = BlockFlag::AtOne;
        orders.push_back(std::move(m));
      }
    }
  });
  std::vector<IntervalModel> out;
  std::size_t atom_models = std::size_t{1} << ctx.atoms.size();
  out.reserve(orders.size() * atom_models);
  for (const auto& m : orders) {
    for (std::size_t bits = 0; bits < atom_models; ++bits) {
      IntervalModel mm = m;
      mm.atoms.resize(ctx.atoms.size());
      for (std::size_t i = 0; i < ctx.atoms.size(); ++i) mm.atoms[i] = (bits >> i) & 1U;
      out.push_back(std::move(mm));
    }
  }
  return out;
}

bool eval_tope(const IntervalModel& m, const TopePtr& t) {
  switch (t->kind) {
    case Tope::Top: return true;
    case Tope::Bot: return false;
    case Tope::And: return eval_tope(m, t->lhs) && eval_tope(m, t->rhs);
    case Tope::Or: return eval_tope(m, t->lhs) || eval_tope(m, t->rhs);
    case Tope::Eq: return rank(m, t->p) == rank(m, t->q);
    case Tope::Leq: return rank(m, t->p) <= rank(m, t->q);
    case Tope::Atom: return m.atoms.at(static_cast<std::size_t>(t->atom));
  }
  return false;
}

std::optional<IntervalModel> find_countermodel(const CubeContext& ctx, const std::vector<TopePtr>& hyps,
                                               const TopePtr& goal, std::size_t bound) {
  for (auto& m : enumerate_models(ctx, bound)) {
    bool sat = true;
    for (const auto& h : hyps) {
      if (!eval_tope(m, h)) {
        sat = false;
        break;
      }
    }
    if (sat && !eval_tope(m, goal)) return std::move(m);
  }
  return std::nullopt;
}

bool oracle_entails(const CubeContext& ctx, const std::vector<TopePtr>& hyps, const TopePtr& goal,
                    std::size_t bound) {
  return !find_countermodel(ctx, hyps, goal, bound).has_value();
}

std::string format_model(const IntervalModel& m, const CubeContext& ctx) {
  std::size_t k = m.flags.size();
  std::vector<std::vector<std::string>> blocks(k);
  for (std::size_t v = 0; v < m.block.size(); ++v) blocks[static_cast<std::size_t>(m.block[v])].push_back(ctx.vars[v]);
  auto set = [](const std::vector<std::string>& names) {
    std::string s = "{";
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
    return s + "}";
  };
  std::string out = "0 = ";
  std::size_t b = 0;
  if (k > 0 && m.flags[0] == BlockFlag::AtZero) {
    out += set(blocks[0]);
    b = 1;
  } else {
    out += "∅";
  }
  std::size_t end = k;
  bool one_block = k > 0 && m.flags[k - 1] == BlockFlag::AtOne && (k - 1 >= b);
  if (one_block) end = k - 1;
  for (; b < end; ++b) out += " < " + set(blocks[b]);
  out += " < 1";
  if (one_block) out += " = " + set(blocks[k - 1]);
  if (!ctx.atoms.empty()) {
    out += " ;";
    for (std::size_t i = 0; i < ctx.atoms.size(); ++i)
      out += " " + ctx.atoms[i] + (m.atoms[i] ? " holds" : " fails");
  }
  return out;
}

}  // namespace stt::tope
