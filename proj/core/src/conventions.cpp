#include "fda/conventions.hpp"

#include <cstdint>
#include <cstdio>

#ifndef FDA_VERSION
#define FDA_VERSION "0.0.0"
#endif

namespace fda {

std::string_view convention_ledger() {
  static constexpr std::string_view text = R"(fda conventions v1
metric: eta = diag(-1, +1, ..., +1); index 0 is timelike; e_a = eta_aa e^a
grading: (N, Z/2) bidegree; swap sign (-1)^(deg g deg h + par g par h); e^a (1,even), psi^alpha (1,odd), omega_ab (1,even)
seeds: s1 = [[0,1],[1,0]], s3 = [[1,0],[0,-1]], eps = [[0,1],[-1,0]]; tensor products left factor most significant
gamma d=3: Gamma^0 = eps, Gamma^1 = s1, Gamma^2 = s3
gamma d=11: first lexicographic set (alphabet 1 < s1 < s3 < eps, five factors) of one string with an odd number of eps followed by ten increasing strings with an even number, all mutually anticommuting
pairing: C = Gamma^0; (C Gamma^(p)) symmetric for p in {1,2,5}, antisymmetric for p in {0,3,4} in d=11
gamma products: Gamma^{a1...ap} = ordered product for distinct indices
differential: d e^a = (C Gamma^a)_{alpha beta} psi^alpha psi^beta, d psi = 0
brane cocycle: mu_{p+2} = sum over ordered tuples (a1..ap) of (C Gamma^{a1..ap})_{alpha beta} psi^alpha psi^beta e_{a1}...e_{ap}, no 1/p! weight
m2brane: d h3 = -mu4; resolution: d g4 = 0, d h3 = g4 - mu4
m5 relation: d mu7 = c mu4 mu4 with measured c = 15
lorentz: generators omega_ab for a < b; d psi = 1/4 omega_ab Gamma^ab psi; d e^a = omega^a_b e^b + psibar Gamma^a psi; d omega_ab = omega_ac eta^cc omega_cb
trace: tr(omega^k) = sum over index walks of omega^{a1}_{a2} ... omega^{ak}_{a1}
coboundary solves: weight grading e -> 2, psi -> 1, omega -> 0
)";
  return text;
}

std::string ledger_hash() {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : convention_ledger()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string_view engine_version() { return FDA_VERSION; }

} // namespace fda
