#include "sadic/examples.hpp"

namespace sadic {

SadicSystem repeated_tau(long m, long n, long r) {
  return SadicSystem::repeated("0", "1", TauParams{Int(m), Int(n), Int(r)});
}

SadicSystem example_1_2() { return repeated_tau(3, 5, 0); }

SadicSystem example_1_3() { return repeated_tau(7, 9, 1); }

SadicSystem example_1_4() {
  SadicSystem s;
  s.v0 = "a";
  s.u0 = "ab";
  s.rule = DivisibilityRule{2, 2, TauParams{3, 5, 0}, TauParams{5, 7, 0}};
  s.validate();
  return s;
}

SadicSystem builtin_example(const std::string& id) {
  if (id == "1.2") return example_1_2();
  if (id == "1.3") return example_1_3();
  if (id == "1.4") return example_1_4();
  throw Error(Errc::parse_error, "unknown example '" + id + "'");
}

std::vector<std::string> builtin_ids() { return {"1.2", "1.3", "1.4"}; }

}  // namespace sadic
