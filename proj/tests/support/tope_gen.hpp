#pragma once

#include <random>
#include <vector>

#include "stt/tope/tope.hpp"

namespace stt::testing {

// Random topes over the given number of variables plus 0₂ and 1₂.
class TopeGen {
 public:
  explicit TopeGen(unsigned seed) : rng_(seed) {}

  tope::Point point(int vars) {
    std::uniform_int_distribution<int> d(0, vars + 1);
    int k = d(rng_);
    if (k == vars) return tope::Point::zero();
    if (k == vars + 1) return tope::Point::one();
    return tope::Point::variable(k);
  }

  tope::TopePtr gen(int vars, int depth) {
    std::uniform_int_distribution<int> d(0, depth > 0 ? 7 : 3);
    switch (d(rng_)) {
      case 0: {
        std::uniform_int_distribution<int> c(0, 5);
        int x = c(rng_);
        if (x == 0) return tope::top();
        if (x == 1) return tope::bot();
        return tope::eq(point(vars), point(vars));
      }
      case 1:
      case 2: return tope::leq(point(vars), point(vars));
      case 3: return tope::eq(point(vars), point(vars));
      case 4:
      case 5: return raw(tope::Tope::And, gen(vars, depth - 1), gen(vars, depth - 1));
      default: return raw(tope::Tope::Or, gen(vars, depth - 1), gen(vars, depth - 1));
    }
  }

  std::mt19937& rng() { return rng_; }

  // Builds a connective without the simplifications done by conj/disj.
  static tope::TopePtr raw(tope::Tope::Kind k, tope::TopePtr a, tope::TopePtr b) {
    tope::Tope t{k};
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return std::make_shared<const tope::Tope>(t);
  }

 private:
  std::mt19937 rng_;
};

inline tope::CubeContext ctx_of(int vars) {
  static const char* names[] = {"t", "s", "u", "v", "w", "x", "y", "z"};
  tope::CubeContext c;
  for (int i = 0; i < vars; ++i) c.vars.emplace_back(names[i]);
  return c;
}

}  // namespace stt::testing
