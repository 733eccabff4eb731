#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chernweil/poly.hpp"

namespace chernweil {

/// Dense matrix over the rationals (characteristic 0) or over F_p, where
/// entries are the residues 0..p-1.
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> entries;

  Grid() = default;
  Grid(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  static Grid identity(std::size_t n);
  /// Rows of whitespace-separated integers or fractions, rows split by ';'.
  /// An empty string is the 0x0 matrix. Throws ParseError.
  static Grid parse(const std::string& text);

  Rational& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  friend bool operator==(const Grid&, const Grid&) = default;
  std::string to_string() const;
};

/// A vector space F^n with an endomorphism, F = Q or F_p.
struct EndoPair {
  long characteristic = 0;
  Grid phi;
  std::size_t dim() const { return phi.rows; }
  friend bool operator==(const EndoPair&, const EndoPair&) = default;
};

/// Checks squareness and reduces entries into the field. Throws ValidationError.
EndoPair make_pair_over(long characteristic, const Grid& phi);

struct PairMorphism {
  EndoPair source;
  EndoPair target;
  Grid f;
};

/// f phi = psi f with matching fields and shapes. Throws ValidationError.
void validate_morphism(const PairMorphism& m);

Grid multiply(long characteristic, const Grid& a, const Grid& b);
std::size_t rank(long characteristic, const Grid& a);
/// Columns form a basis of the null space.
Grid kernel(long characteristic, const Grid& a);
Grid direct_sum(const Grid& a, const Grid& b);
EndoPair direct_sum(const EndoPair& a, const EndoPair& b);

/// (V / ker phi, phi): its dimension is rank(phi).
EndoPair apply_E(const EndoPair& x);
/// E(f) in the quotient bases used by apply_E.
Grid induced_on_quotients(const PairMorphism& m);
bool is_weak_equivalence(const PairMorphism& m);

/// Sub-spaces V1 <= ker phi and W1 <= ker psi, as column bases.
struct SubspaceWitness {
  Grid v1;
  Grid w1;
};

/// f(V1) <= W1 and the induced map V/V1 -> W/W1 is bijective.
bool is_admissibility_witness(const PairMorphism& m, const SubspaceWitness& w);

/// Exhausts the subspace pairs over F_p in a fixed order, smallest dimensions
/// first. Throws DimensionTooLarge above dimension 4 and ValidationError over Q.
std::optional<SubspaceWitness> admissibility_witness_search(const PairMorphism& m);

/// Invariant factors of the induced endomorphism of E(x), monic with each
/// dividing the next; the rational canonical form is the block sum of their
/// companion matrices.
struct ClassInvariant {
  long characteristic = 0;
  std::vector<std::vector<Rational>> factors;  // coefficients, constant term first
  friend bool operator==(const ClassInvariant&, const ClassInvariant&) = default;
  Grid canonical_form() const;
  std::string to_string() const;
};

ClassInvariant class_invariant(const EndoPair& x);
/// Invariant factors of an arbitrary square matrix over the field.
ClassInvariant invariant_factors(long characteristic, const Grid& a);

}  // namespace chernweil
