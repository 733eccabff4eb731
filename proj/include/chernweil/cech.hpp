#pragma once

#include <map>
#include <string>

#include "chernweil/forms.hpp"
#include "chernweil/nerve.hpp"

namespace chernweil {

/// Element of the Čech–de Rham total complex: a base form (simplicial degree
/// 0 in the Form sense) on the chart of every tuple, of form degree
/// `degree - p` on tuples of length p+1. Absent tuples are zero.
struct CechCochain {
  int degree = 0;
  std::map<Tuple, Form> components;

  Form at(const CoverNerve& nerve, const Tuple& t) const;
  bool is_zero() const;
  /// Drops zero components so equality is structural.
  CechCochain pruned() const;
  friend bool operator==(const CechCochain& a, const CechCochain& b);
  /// One line per nonzero component, in nerve order: `p=1 (1,2): -1/z dz`.
  std::string to_string(const CoverNerve& nerve) const;
};

/// Dupont fibre integration of a simplicial r-form family. Throws
/// GluingViolation when the family does not glue.
CechCochain fibre_integrate(const CoverNerve& nerve, const FormFamily& family, int r);

/// D = delta + (-1)^p d, with delta the full alternating Čech sum over faces.
CechCochain total_differential(const CoverNerve& nerve, const CechCochain& c);

bool is_cocycle(const CoverNerve& nerve, const CechCochain& c);

}  // namespace chernweil
