#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "specphi/common.hpp"

namespace specphi {

// splitmix64: tiny, seedable, identical on every platform. The library
// never uses std distributions so seeded runs reproduce bit-for-bit.
class Rng {
  public:
    explicit Rng(uint64_t seed) : s_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // uniform integer in [0, m)
    uint64_t below(uint64_t m) { return next_u64() % m; }

    // child generator with decorrelated stream, for per-task seeding
    Rng fork(uint64_t tag) {
        Rng r(next_u64() ^ (tag * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL));
        return r;
    }

  private:
    uint64_t s_;
};

// Samplers used by the verification suites. All return matrices at the
// stated scale; callers re-draw if a structural precondition fails.
Eigen::MatrixXd random_positive(Rng& rng, int n, double lo = 0.05, double hi = 1.0);
// nonnegative with random sparsity, guaranteed irreducible
Eigen::MatrixXd random_irreducible(Rng& rng, int n, double density = 0.6);
// convex combination of random permutations (exactly doubly stochastic
// up to float addition), irreducible
Eigen::MatrixXd random_doubly_stochastic(Rng& rng, int n, int terms = 6);
// doubly stochastic, symmetric
Eigen::MatrixXd random_symmetric_doubly_stochastic(Rng& rng, int n, int terms = 6);
// balance(normalize_pf(random irreducible)): identical left/right PF vector
Eigen::MatrixXd random_balanced(Rng& rng, int n, bool lazy);

}  // namespace specphi
