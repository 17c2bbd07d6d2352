#pragma once

#include <cstdint>
#include <random>

#include "stonework/cartan.hpp"
#include "stonework/convolution.hpp"
#include "stonework/twist.hpp"

namespace stonework {

// Deterministic RNG: raw mt19937_64 draws with modulo reduction, so identical
// seeds give identical instances on every platform.
struct DetRng {
  std::mt19937_64 eng;
  explicit DetRng(uint64_t seed) : eng(seed) {}
  uint64_t next() { return eng(); }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % n); }
  bool coin() { return next() & 1; }
};

struct GenOpts {
  int max_units = 5;
  int max_arrows = 30;
  size_t bis_bound = 700;     // resample when |Bis| would exceed this
  bool force_isotropy = false;
  bool allow_isotropy = true;
};

// A finite groupoid is a disjoint union of (pair groupoid on an orbit) x
// (isotropy group); sampling picks components from a small group catalog and
// scrambles all labels.
Gpd random_groupoid(DetRng& rng, const GenOpts& opts = {});

struct RandomTwisted {
  Gpd g;
  Cocycle sigma;
};
// Cocycle = pullback of a group 2-cocycle on each component plus a random
// coboundary, built before scrambling.
RandomTwisted random_twisted_groupoid(DetRng& rng, int m, const GenOpts& opts = {});

Measure random_measure(DetRng& rng, const Gpd& g);
Bisection random_bisection(DetRng& rng, const Gpd& g);
TBis random_tbis(DetRng& rng, const Gpd& g, int m);
AlgElem random_algelem(DetRng& rng, const ConvCtx& ctx);

struct RandomCartan {
  StarAlg alg;
  DiagMasa masa;
  Measure state;
};
RandomCartan random_cartan(DetRng& rng, int max_blocks = 3, int max_block_size = 3);

}  // namespace stonework
