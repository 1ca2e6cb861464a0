#include "spider/sp4_clasp.hpp"

#include <functional>
#include <sstream>

namespace spider::sp4 {

const RatFunc& CoeffTable::at(int i, int j) const {
  auto it = a.find({i, j});
  if (it == a.end())
    throw DomainError("coefficient index out of range: (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return it->second;
}

namespace {

RatFunc two_pow(int e) { return qr(2).pow(e); }

}  // namespace

CoeffTable b2_coeffs_n0(int n) {
  if (n < 1) throw DomainError("sp4 clasp size must be positive");
  CoeffTable t;
  t.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= n; ++j)
      t.a[{i, j}] = two_pow(i - j + 1) * qr(n + 1) * qr(n - j + 1) * qr(2 * n - 2 * i + 2) /
                    (qr(n) * qr(2 * n + 2) * qr(n - i + 1));
  return t;
}

CoeffTable b2_coeffs_0n(int n) {
  if (n < 1) throw DomainError("sp4 clasp size must be positive");
  CoeffTable t;
  t.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= n; ++j)
      t.a[{i, j}] = two_pow(2 * (1 + i - j)) * qr(2 * n + 1 - 2 * i) * qr(2 * n - 2 * j + 2) / (qr(2 * n) * qr(2 * n + 1));
  return t;
}

namespace {

std::string label(const char* family, std::initializer_list<int> idx) {
  std::ostringstream os;
  os << family << "(";
  bool first = true;
  for (int k : idx) {
    os << (first ? "" : ",") << k;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

Report verify_b2_recurrences_n0(int n) {
  if (n < 2) throw DomainError("recurrences need n >= 2");
  CoeffTable t = b2_coeffs_n0(n);
  auto a = [&](int i, int j) { return t.at(i, j); };
  const RatFunc K = qr(2) * qr(6) / qr(3);
  const RatFunc t4 = qr(2) * qr(4);
  const RatFunc s2 = qr(2).pow(2);
  Report r;
  r.expect(a(0, 1).is_one(), "normalization a(0,1) = 1");
  r.expect((a(n - 2, n - 1) + K * a(n - 2, n) - K * a(n - 1, n)).is_zero(), label("special1", {n}));
  // second special equation: the i = 0 member of the Type I shape with b_k = a_{0,k}
  auto type1 = [&](int i) {
    return a(i, i + 1) + K * a(i, i + 2) - t4 * a(i, i + 3) - K * a(i + 1, i + 2) + K * a(i + 1, i + 3) + a(i + 2, i + 3);
  };
  if (n >= 3) r.expect(type1(0).is_zero(), label("special2", {n}));
  for (int i = 1; i <= n - 3; ++i) r.expect(type1(i).is_zero(), label("typeI", {n, i}));
  for (int i = 0; i <= n - 2; ++i) r.expect((a(i, n - 1) - s2 * a(i, n)).is_zero(), label("typeII", {n, i}));
  for (int i = 0; i <= n - 3; ++i)
    for (int k = 2; k <= n - i - 1; ++k)
      r.expect((a(i, n - k) - s2 * a(i, n - k + 1) + s2 * a(i, n - k + 2)).is_zero(), label("typeIII", {n, i, k}));
  for (int i = 3; i <= n; ++i)
    for (int k = n - i + 3; k <= n; ++k)
      r.expect((s2 * a(n - k, i) - s2 * a(n - k + 1, i) + a(n - k + 2, i)).is_zero(), label("typeIV", {n, i, k}));
  return r;
}

Report verify_b2_recurrences_0n(int n) {
  if (n < 2) throw DomainError("recurrences need n >= 2");
  CoeffTable t = b2_coeffs_0n(n);
  auto a = [&](int i, int j) { return t.at(i, j); };
  const RatFunc L = qr(6) * qr(5) / (qr(3) * qr(2));
  const RatFunc s2 = qr(2).pow(2), s4 = qr(2).pow(4);
  const RatFunc t42 = qr(4) * qr(2);
  Report r;
  r.expect(a(0, 1).is_one(), "normalization a(0,1) = 1");
  r.expect((a(n - 2, n - 1) - qr(5) * s2 * a(n - 2, n) + L * a(n - 1, n)).is_zero(), label("special1", {n}));
  r.expect((-qr(3) * s2 * a(n - 2, n) + qr(5) * a(n - 1, n)).is_zero(), label("special2", {n}));
  for (int i = 0; i <= n - 3; ++i)
    r.expect((a(i, i + 1) - qr(5) * s2 * a(i, i + 2) + qr(3) * s4 * a(i, i + 3) + L * a(i + 1, i + 2) -
              qr(5) * s2 * a(i + 1, i + 3) + a(i + 2, i + 3))
                 .is_zero(),
             label("typeI", {n, i}));
  for (int i = 0; i <= n - 2; ++i) r.expect((a(i, n - 1) - t42 * a(i, n)).is_zero(), label("typeII", {n, i}));
  for (int i = 0; i <= n - 3; ++i)
    for (int j = i + 1; j <= n - 2; ++j)
      r.expect((a(i, j) - t42 * a(i, j + 1) + s4 * a(i, j + 2)).is_zero(), label("typeIII", {n, i, j}));
  for (int i = 0; i <= n - 3; ++i)
    for (int j = i + 3; j <= n; ++j)
      r.expect((s4 * a(i, j) - t42 * a(i + 1, j) + a(i + 2, j)).is_zero(), label("typeIV", {n, i, j}));
  for (int i = 1; i <= n - 2; ++i)
    r.expect((-qr(3) * s2 * a(i - 1, i + 1) + s4 * a(i - 1, i + 2) + qr(5) * a(i, i + 1) - qr(3) * s2 * a(i, i + 2))
                 .is_zero(),
             label("typeV", {n, i}));
  return r;
}

std::array<RatFunc, 3> b2_double_coeffs(Shape s, int n) {
  if (n < 1) throw DomainError("sp4 clasp size must be positive");
  if (s == Shape::n0)
    return {RatFunc(1), qr(2 * n) * qr(n + 1) * qr(n - 1) / (qr(2 * n + 2) * qr(n) * qr(n)),
            qr(n - 1) / (qr(n) * qr(2))};
  return {RatFunc(1), qr(2 * n - 1) * qr(2 * n - 2) / (qr(2 * n + 1) * qr(2)),
          qr(2 * n - 2) / (qr(2 * n) * qr(2) * qr(2))};
}

LoopScalars loop_scalars() {
  LoopScalars s;
  s.single_loop = -(qr(6) * qr(2) / qr(3));
  s.double_loop = qr(6) * qr(5) / (qr(3) * qr(2));
  s.bigon = -qr(2).pow(2);
  s.curl = qr(6) * qr(2) / qr(3);
  s.theta = s.bigon * s.double_loop;
  return s;
}

}  // namespace spider::sp4
