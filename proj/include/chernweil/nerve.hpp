#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chernweil/ratfunc.hpp"

namespace chernweil {

/// Indices of opens, with repetition: a simplex of the nerve.
using Tuple = std::vector<int>;
/// Sorted, duplicate-free set of open indices: an intersection.
using OpenSet = std::vector<int>;

OpenSet support(const Tuple& t);
Tuple omit(const Tuple& t, int i);

/// Combinatorial Čech nerve of a finite cover. Each declared intersection
/// carries a chart; tuples live on the chart of their support, so degenerate
/// tuples share the chart of the reduced one. Restrictions are declared chart
/// to chart and closed under composition by finalize().
class CoverNerve {
 public:
  int add_open(const std::string& name);
  void add_chart(ChartPtr chart);
  void assign_chart(const OpenSet& set, const std::string& chart_id);
  void declare_restriction(const std::string& from_chart, const std::string& to_chart, Substitution s);
  void add_tuple(const Tuple& t);
  /// All tuples up to length depth+1 whose support is a declared intersection;
  /// `increasing` keeps only strictly increasing ones.
  void generate(int depth, bool increasing);

  /// Derives composite restrictions, checks they agree along every chain of
  /// inclusions, and checks every face of every tuple is present.
  void finalize();

  const std::vector<std::string>& opens() const { return opens_; }
  int open_index(const std::string& name) const;
  const std::map<std::string, ChartPtr>& charts() const { return charts_; }
  ChartPtr find_chart(const std::string& id) const;
  const std::map<OpenSet, std::string>& set_charts() const { return set_charts_; }
  const std::map<std::pair<std::string, std::string>, Substitution>& declared_restrictions() const {
    return declared_;
  }

  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::vector<Tuple> tuples_at(int p) const;
  bool contains(const Tuple& t) const { return tuple_set_.count(t) > 0; }
  int depth() const;
  bool generated() const { return generated_.has_value(); }
  std::pair<int, bool> generation() const { return *generated_; }

  ChartPtr chart(const Tuple& t) const;
  ChartPtr chart_of_set(const OpenSet& s) const;
  /// Ring map from the chart of `from` into the chart of `to`; from must be a subset of to.
  Substitution set_restriction(const OpenSet& from, const OpenSet& to) const;
  Substitution restriction(const Tuple& from, const Tuple& to) const;

  /// Tuple with entry i omitted and the restriction from its chart into t's chart.
  std::pair<Tuple, Substitution> face(const Tuple& t, int i) const;

  std::string tuple_name(const Tuple& t) const;
  std::optional<Tuple> parse_tuple(const std::string& text) const;

 private:
  std::vector<std::string> opens_;
  std::map<std::string, ChartPtr> charts_;
  std::map<OpenSet, std::string> set_charts_;
  std::map<std::pair<std::string, std::string>, Substitution> declared_;
  std::map<std::pair<OpenSet, OpenSet>, Substitution> restrictions_;
  std::vector<Tuple> tuples_;
  std::set<Tuple> tuple_set_;
  std::optional<std::pair<int, bool>> generated_;
};

}  // namespace chernweil
