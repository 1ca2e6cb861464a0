#include "spider/rep_oracle.hpp"

#include <mutex>
#include <stdexcept>

namespace spider::rep {

std::vector<Weight> fundamental_weights(Algebra g, Fund f) {
  if (g == Algebra::sl3) {
    if (f == Fund::l1) return {{1, 0}, {-1, 1}, {0, -1}};
    return {{0, 1}, {1, -1}, {-1, 0}};
  }
  if (f == Fund::l1) return {{1, 0}, {-1, 1}, {1, -1}, {-1, 0}};
  return {{0, 1}, {0, -1}, {2, -1}, {-2, 1}, {0, 0}};
}

std::pair<Weight, Weight> simple_roots(Algebra g) {
  if (g == Algebra::sl3) return {{2, -1}, {-1, 2}};
  return {{2, -1}, {-2, 2}};
}

long dim(Algebra g, Weight w) {
  long a = w.a, b = w.b;
  if (a < 0 || b < 0) throw std::domain_error("weight outside the dominant chamber");
  if (g == Algebra::sl3) return (a + 1) * (b + 1) * (a + b + 2) / 2;
  return (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) / 6;
}

Weight dual(Algebra g, Weight w) { return g == Algebra::sl3 ? Weight{w.b, w.a} : w; }

namespace {

// Move x = lambda + rho into the dominant chamber. Returns sign (0 on a wall).
int to_dominant(Algebra g, Weight& x) {
  auto [r1, r2] = simple_roots(g);
  int sign = 1;
  while (true) {
    if (x.a == 0 || x.b == 0) return 0;
    if (x.a < 0) {
      int c = x.a;
      x = {x.a - c * r1.a, x.b - c * r1.b};
    } else if (x.b < 0) {
      int c = x.b;
      x = {x.a - c * r2.a, x.b - c * r2.b};
    } else {
      return sign;
    }
    sign = -sign;
  }
}

void klimyk_add(Algebra g, WeightMultiset& out, Weight lambda, Weight mu, long mult) {
  Weight x{lambda.a + mu.a + 1, lambda.b + mu.b + 1};
  int s = to_dominant(g, x);
  if (s == 0) return;
  Weight r{x.a - 1, x.b - 1};
  long& m = out[r];
  m += s * mult;
  if (m == 0) out.erase(r);
}

void check_dominant(const WeightMultiset& m) {
  for (const auto& [w, k] : m)
    if (k < 0) throw std::logic_error("negative multiplicity in tensor decomposition");
}

}  // namespace

WeightMultiset tensor_fundamental(Algebra g, Weight v, Fund f) {
  WeightMultiset out;
  for (Weight mu : fundamental_weights(g, f)) klimyk_add(g, out, v, mu, 1);
  check_dominant(out);
  return out;
}

const std::map<Weight, long>& character(Algebra g, Weight w) {
  static std::mutex mu;
  static std::map<std::pair<int, Weight>, std::map<Weight, long>> memo;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find({static_cast<int>(g), w});
    if (it != memo.end()) return it->second;
  }
  std::map<Weight, long> ch;
  if (w.a == 0 && w.b == 0) {
    ch[{0, 0}] = 1;
  } else {
    Fund f = w.a > 0 ? Fund::l1 : Fund::l2;
    Weight prev = w.a > 0 ? Weight{w.a - 1, w.b} : Weight{w.a, w.b - 1};
    std::map<Weight, long> base = character(g, prev);
    for (const auto& [x, k] : base)
      for (Weight mu : fundamental_weights(g, f)) ch[{x.a + mu.a, x.b + mu.b}] += k;
    for (const auto& [u, k] : tensor_fundamental(g, prev, f)) {
      if (u == w) continue;
      for (const auto& [x, kk] : character(g, u)) ch[x] -= k * kk;
    }
    for (auto it = ch.begin(); it != ch.end();) it = it->second == 0 ? ch.erase(it) : std::next(it);
  }
  std::lock_guard<std::mutex> lk(mu);
  return memo.emplace(std::make_pair(static_cast<int>(g), w), std::move(ch)).first->second;
}

WeightMultiset tensor(Algebra g, const WeightMultiset& x, Weight w) {
  WeightMultiset out;
  const auto& ch = character(g, w);
  for (const auto& [lambda, m] : x)
    for (const auto& [mu, k] : ch) klimyk_add(g, out, lambda, mu, m * k);
  check_dominant(out);
  return out;
}

long inv_dim(Algebra g, const std::vector<Weight>& factors) {
  if (factors.empty()) throw std::domain_error("empty tensor product");
  WeightMultiset cur{{{0, 0}, 1}};
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    Weight w = factors[i];
    if (w == Weight{1, 0}) {
      WeightMultiset next;
      for (const auto& [u, m] : cur)
        for (const auto& [r, k] : tensor_fundamental(g, u, Fund::l1)) next[r] += m * k;
      cur = std::move(next);
    } else if (w == Weight{0, 1}) {
      WeightMultiset next;
      for (const auto& [u, m] : cur)
        for (const auto& [r, k] : tensor_fundamental(g, u, Fund::l2)) next[r] += m * k;
      cur = std::move(next);
    } else {
      cur = tensor(g, cur, w);
    }
  }
  auto it = cur.find(dual(g, factors.back()));
  return it == cur.end() ? 0 : it->second;
}

bool weight_preceq(Algebra g, Weight u, Weight w) {
  // w - u = n1*alpha1 + n2*alpha2 with n1, n2 nonnegative integers
  auto [r1, r2] = simple_roots(g);
  long dx = w.a - u.a, dy = w.b - u.b;
  long det = static_cast<long>(r1.a) * r2.b - static_cast<long>(r2.a) * r1.b;
  long n1 = dx * r2.b - dy * r2.a;
  long n2 = r1.a * dy - r1.b * dx;
  if (n1 % det != 0 || n2 % det != 0) return false;
  return n1 / det >= 0 && n2 / det >= 0;
}

}  // namespace spider::rep
