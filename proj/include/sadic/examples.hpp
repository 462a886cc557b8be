#pragma once

#include "sadic/word.hpp"

#include <string>
#include <vector>

namespace sadic {

// ρ(0)=001, ρ(1)=00001 iterated from the identity seed.
SadicSystem example_1_2();
// ρ(0)=00000011, ρ(1)=0000000011 iterated from the identity seed.
SadicSystem example_1_3();
// π(0)=a, π(1)=ab with the divisibility-driven choice between
// ω1 = τ_{3,5,0} and ω2 = τ_{5,7,0}.
SadicSystem example_1_4();
// Identity seed with a single repeated τ.
SadicSystem repeated_tau(long m, long n, long r);

SadicSystem builtin_example(const std::string& id);
std::vector<std::string> builtin_ids();

}  // namespace sadic
