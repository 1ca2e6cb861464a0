#pragma once

#include <array>
#include <map>
#include <utility>

#include "spider/qpoly.hpp"
#include "spider/report.hpp"

namespace spider::sp4 {

// a_{i,j} for 0 <= i < j <= n
struct CoeffTable {
  int n = 0;
  std::map<std::pair<int, int>, RatFunc> a;
  const RatFunc& at(int i, int j) const;
};

CoeffTable b2_coeffs_n0(int n);
CoeffTable b2_coeffs_0n(int n);

Report verify_b2_recurrences_n0(int n);
Report verify_b2_recurrences_0n(int n);

enum class Shape { n0, zero_n };
std::array<RatFunc, 3> b2_double_coeffs(Shape s, int n);

// closed-web scalars of the sp(4) calculus
struct LoopScalars {
  RatFunc single_loop;  // -[6][2]/[3]
  RatFunc double_loop;  // [6][5]/([3][2])
  RatFunc bigon;        // single-strand bigon on a double strand: -[2]^2
  RatFunc curl;         // single strand curling through a tetravalent vertex: [6][2]/[3]
  RatFunc theta;        // single, single, double theta: bigon * double_loop
};
LoopScalars loop_scalars();

}  // namespace spider::sp4
