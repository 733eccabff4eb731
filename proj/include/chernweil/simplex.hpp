#pragma once

#include <string>
#include <vector>

#include "chernweil/poly.hpp"

namespace chernweil {

/// Order-preserving map [p] -> [q], stored as its p+1 values.
struct SimplexMap {
  int source = 0;
  int target = 0;
  std::vector<int> values;

  bool is_valid() const;
  bool is_injective() const;
  friend bool operator==(const SimplexMap& a, const SimplexMap& b) = default;
  std::string to_string() const;
};

/// Injection [p-1] -> [p] omitting i.
SimplexMap coface(int p, int i);
/// Surjection [p+1] -> [p] hitting i twice.
SimplexMap codegeneracy(int p, int i);
/// g after f.
SimplexMap compose(const SimplexMap& g, const SimplexMap& f);

/// Integral of t_0^a_0 ... t_p^a_p over the standard p-simplex with the
/// orientation dt_1 ^ ... ^ dt_p, namely prod(a_i!) / (p + sum a_i)!.
Rational simplex_monomial_integral(const std::vector<int>& exponents);

}  // namespace chernweil
