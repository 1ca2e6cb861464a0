#include "spider/sl3_webs.hpp"

#include <algorithm>

namespace spider::sl3 {

namespace {

char opposite(char s) { return s == '+' ? '-' : '+'; }

void check_sign(char s) {
  if (s != '+' && s != '-') throw WebError(std::string("bad sign '") + s + "'");
}

}  // namespace

Web y_merge(char s) {
  check_sign(s);
  WebBuilder b;
  int l0 = b.add_vertex(VKind::Boundary, 1), l1 = b.add_vertex(VKind::Boundary, 1), u0 = b.add_vertex(VKind::Boundary, 1);
  if (s == '+') {
    int v = b.add_vertex(VKind::Sink, 3);
    b.connect(l0, 0, v, 0);
    b.connect(l1, 0, v, 1);
    b.connect(u0, 0, v, 2);
  } else {
    int v = b.add_vertex(VKind::Source, 3);
    b.connect(v, 0, l0, 0);
    b.connect(v, 1, l1, 0);
    b.connect(v, 2, u0, 0);
  }
  b.set_boundary({l0, l1, u0}, 2);
  return b.finish();
}

Web y_split(char s) { return flip(y_merge(s)); }

Web cap(const std::string& sig) {
  if (sig != "+-" && sig != "-+") throw WebError("cap needs opposite signs, got " + sig);
  WebBuilder b;
  int l0 = b.add_vertex(VKind::Boundary, 1), l1 = b.add_vertex(VKind::Boundary, 1);
  if (sig == "+-")
    b.connect(l0, 0, l1, 0);
  else
    b.connect(l1, 0, l0, 0);
  b.set_boundary({l0, l1}, 2);
  return b.finish();
}

Web cup(const std::string& sig) { return flip(cap(sig)); }

Web h_web(char s) {
  check_sign(s);
  WebBuilder b;
  int l0 = b.add_vertex(VKind::Boundary, 1), l1 = b.add_vertex(VKind::Boundary, 1);
  int u1 = b.add_vertex(VKind::Boundary, 1), u0 = b.add_vertex(VKind::Boundary, 1);
  int lo = b.add_vertex(VKind::Sink, 3), hi = b.add_vertex(VKind::Source, 3);
  b.connect(l0, 0, lo, 0);
  b.connect(l1, 0, lo, 1);
  b.connect(hi, 0, lo, 2);
  b.connect(hi, 1, u1, 0);
  b.connect(hi, 2, u0, 0);
  b.set_boundary({l0, l1, u1, u0}, 2);
  Web w = b.finish();
  return s == '+' ? w : reverse_arrows(w);
}

Web h_mixed(const std::string& lower) {
  if (lower != "+-" && lower != "-+") throw WebError("mixed H needs opposite signs, got " + lower);
  WebBuilder b;
  int l0 = b.add_vertex(VKind::Boundary, 1), l1 = b.add_vertex(VKind::Boundary, 1);
  int u1 = b.add_vertex(VKind::Boundary, 1), u0 = b.add_vertex(VKind::Boundary, 1);
  int left = b.add_vertex(VKind::Sink, 3), right = b.add_vertex(VKind::Source, 3);
  b.connect(l0, 0, left, 0);
  b.connect(right, 0, left, 1);
  b.connect(u0, 0, left, 2);
  b.connect(right, 1, l1, 0);
  b.connect(right, 2, u1, 0);
  b.set_boundary({l0, l1, u1, u0}, 2);
  Web w = b.finish();
  return lower == "+-" ? w : reverse_arrows(w);
}

Web circle() {
  WebBuilder b;
  b.add_loops(1);
  return b.finish();
}

Web place(const Web& g, const std::string& left_sig, const std::string& right_sig) {
  Web w = g;
  if (!left_sig.empty()) w = tensor(identity_web(left_sig), w);
  if (!right_sig.empty()) w = tensor(w, identity_web(right_sig));
  return w;
}

std::string segregated(int a, int b) { return std::string(static_cast<std::size_t>(a), '+') + std::string(static_cast<std::size_t>(b), '-'); }

std::string dual(const std::string& sig) {
  std::string d(sig.rbegin(), sig.rend());
  for (char& c : d) c = opposite(c);
  return d;
}

}  // namespace spider::sl3
