#pragma once

#include <map>
#include <utility>
#include <vector>

namespace spider::rep {

enum class Algebra { sl3, sp4 };

struct Weight {
  int a = 0, b = 0;
  auto operator<=>(const Weight&) const = default;
};

using WeightMultiset = std::map<Weight, long>;

enum class Fund { l1, l2 };

// weights of the fundamental representation, with multiplicity one each
std::vector<Weight> fundamental_weights(Algebra g, Fund f);
// simple roots written in fundamental-weight coordinates (rows of the Cartan matrix)
std::pair<Weight, Weight> simple_roots(Algebra g);

// Weyl dimension formula
long dim(Algebra g, Weight w);
Weight dual(Algebra g, Weight w);

WeightMultiset tensor_fundamental(Algebra g, Weight v, Fund f);
// V(v) tensor V(w), general case (Klimyk with the character of V(w))
WeightMultiset tensor(Algebra g, const WeightMultiset& x, Weight w);
// full weight multiset of V(w)
const std::map<Weight, long>& character(Algebra g, Weight w);

long inv_dim(Algebra g, const std::vector<Weight>& factors);

bool weight_preceq(Algebra g, Weight u, Weight w);

}  // namespace spider::rep
