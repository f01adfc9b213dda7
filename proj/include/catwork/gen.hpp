#ifndef CATWORK_GEN_HPP
#define CATWORK_GEN_HPP

#include "catwork/fincat.hpp"

namespace catwork {

struct GenBounds {
  int max_objects = 3;
  int max_extra_arrows = 2;
  json to_json() const { return {{"max_objects", max_objects}, {"max_extra_arrows", max_extra_arrows}}; }
};

// Randomly generated categories are posets with a bounded number of adjoined
// parallel arrows. Extra arrows compose by collapsing to the underlying poset
// arrow (or, for loops, to a Z/2-style involution), which keeps every table
// associative by construction; validity is still checked before returning.
CatPtr gen_random_category(const GenBounds& b, std::uint64_t seed);

// A random poset category (no parallel arrows).
CatPtr gen_random_poset(int max_objects, std::uint64_t seed);

Functor gen_random_functor(const CatPtr& c, const CatPtr& d, std::uint64_t seed);

// A strict Cat-valued diagram on the given poset-shaped index. Actions are
// rank-factored so that all squares commute strictly.
CatValuedDiagram gen_random_diagram(const CatPtr& index, const GenBounds& fiber_bounds,
                                    std::uint64_t seed);

// A presheaf of finite sets on C (contravariant), as a Cat-valued diagram on
// op(C) with discrete values. Used to build discrete fibrations.
CatValuedDiagram gen_random_presheaf(const CatPtr& c, int max_fiber, std::uint64_t seed);

}  // namespace catwork

#endif
