#include "chernweil/nerve.hpp"

#include <algorithm>

#include "chernweil/error.hpp"

namespace chernweil {

OpenSet support(const Tuple& t) {
  OpenSet s(t.begin(), t.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Tuple omit(const Tuple& t, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= t.size()) fail(ErrorCode::IndexOutOfRange, "face index " + std::to_string(i));
  Tuple r;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (static_cast<int>(k) != i) r.push_back(t[k]);
  }
  return r;
}

namespace {

bool tuple_less(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool is_subset(const OpenSet& a, const OpenSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

int CoverNerve::add_open(const std::string& name) {
  if (open_index(name) >= 0) fail(ErrorCode::ValidationError, "open " + name + " declared twice");
  opens_.push_back(name);
  return static_cast<int>(opens_.size()) - 1;
}

int CoverNerve::open_index(const std::string& name) const {
  auto it = std::find(opens_.begin(), opens_.end(), name);
  return it == opens_.end() ? -1 : static_cast<int>(it - opens_.begin());
}

void CoverNerve::add_chart(ChartPtr chart) {
  if (!charts_.emplace(chart->id(), chart).second) fail(ErrorCode::ValidationError, "chart " + chart->id() + " declared twice");
}

ChartPtr CoverNerve::find_chart(const std::string& id) const {
  auto it = charts_.find(id);
  if (it == charts_.end()) fail(ErrorCode::ValidationError, "unknown chart " + id);
  return it->second;
}

void CoverNerve::assign_chart(const OpenSet& set, const std::string& chart_id) {
  find_chart(chart_id);
  for (int k : set) {
    if (k < 0 || static_cast<std::size_t>(k) >= opens_.size()) fail(ErrorCode::IndexOutOfRange, "open index in intersection");
  }
  if (!set_charts_.emplace(support(set), chart_id).second) fail(ErrorCode::ValidationError, "intersection assigned twice");
}

void CoverNerve::declare_restriction(const std::string& from_chart, const std::string& to_chart, Substitution s) {
  if (!same_chart(s.source, find_chart(from_chart)) || !same_chart(s.target, find_chart(to_chart)) ||
      s.images.size() != s.source->nvars()) {
    fail(ErrorCode::ValidationError, "restriction " + from_chart + " -> " + to_chart + " is malformed");
  }
  if (!declared_.emplace(std::make_pair(from_chart, to_chart), std::move(s)).second) {
    fail(ErrorCode::ValidationError, "restriction " + from_chart + " -> " + to_chart + " declared twice");
  }
}

void CoverNerve::add_tuple(const Tuple& t) {
  if (t.empty()) fail(ErrorCode::ValidationError, "empty tuple");
  for (int k : t) {
    if (k < 0 || static_cast<std::size_t>(k) >= opens_.size()) fail(ErrorCode::IndexOutOfRange, "open index in tuple");
  }
  if (tuple_set_.insert(t).second) tuples_.push_back(t);
}

void CoverNerve::generate(int depth, bool increasing) {
  if (depth < 0) fail(ErrorCode::ValidationError, "negative nerve depth");
  generated_ = std::make_pair(depth, increasing);
  std::vector<Tuple> layer{{}};
  const int n = static_cast<int>(opens_.size());
  for (int len = 1; len <= depth + 1; ++len) {
    std::vector<Tuple> next;
    for (const auto& t : layer) {
      for (int k = increasing && !t.empty() ? t.back() + 1 : 0; k < n; ++k) {
        Tuple u = t;
        u.push_back(k);
        if (set_charts_.count(support(u))) next.push_back(u);
      }
    }
    for (const auto& t : next) add_tuple(t);
    layer = std::move(next);
  }
}

void CoverNerve::finalize() {
  for (const auto& [set, id] : set_charts_) find_chart(id);
  std::sort(tuples_.begin(), tuples_.end(), tuple_less);

  std::vector<OpenSet> sets;
  for (const auto& [set, id] : set_charts_) sets.push_back(set);
  restrictions_.clear();
  std::vector<std::pair<OpenSet, OpenSet>> pairs;
  for (const auto& s : sets) {
    for (const auto& t : sets) {
      if (is_subset(s, t)) pairs.emplace_back(s, t);
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return a.second.size() - a.first.size() < b.second.size() - b.first.size();
  });
  for (const auto& [s, t] : pairs) {
    const ChartPtr cs = chart_of_set(s);
    const ChartPtr ct = chart_of_set(t);
    std::vector<Substitution> candidates;
    if (same_chart(cs, ct)) candidates.push_back(Substitution::identity(cs));
    auto d = declared_.find({cs->id(), ct->id()});
    if (d != declared_.end()) candidates.push_back(d->second);
    for (const auto& r : sets) {
      if (r == s || r == t || !is_subset(s, r) || !is_subset(r, t)) continue;
      auto a = restrictions_.find({s, r});
      auto b = restrictions_.find({r, t});
      if (a != restrictions_.end() && b != restrictions_.end()) candidates.push_back(a->second.then(b->second));
    }
    if (candidates.empty()) continue;
    for (const auto& c : candidates) {
      if (!(c == candidates.front())) {
        fail(ErrorCode::ValidationError, "restrictions from chart " + cs->id() + " to " + ct->id() +
                                             " disagree along different inclusion chains");
      }
    }
    restrictions_.emplace(std::make_pair(s, t), candidates.front());
  }

  for (const auto& t : tuples_) {
    if (!set_charts_.count(support(t))) fail(ErrorCode::ValidationError, "tuple " + tuple_name(t) + " has no chart");
    if (t.size() < 2) continue;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Tuple f = omit(t, static_cast<int>(i));
      if (!contains(f)) fail(ErrorCode::ValidationError, "face " + tuple_name(f) + " of " + tuple_name(t) + " is not in the nerve");
      restriction(f, t);
    }
  }
}

std::vector<Tuple> CoverNerve::tuples_at(int p) const {
  std::vector<Tuple> out;
  for (const auto& t : tuples_) {
    if (static_cast<int>(t.size()) == p + 1) out.push_back(t);
  }
  return out;
}

int CoverNerve::depth() const {
  int d = -1;
  for (const auto& t : tuples_) d = std::max(d, static_cast<int>(t.size()) - 1);
  return d;
}

ChartPtr CoverNerve::chart_of_set(const OpenSet& s) const {
  auto it = set_charts_.find(s);
  if (it == set_charts_.end()) {
    std::string name = "{";
    for (std::size_t k = 0; k < s.size(); ++k) name += (k ? "," : "") + opens_[static_cast<std::size_t>(s[k])];
    fail(ErrorCode::TupleNotInNerve, "no chart for intersection " + name + "}");
  }
  return find_chart(it->second);
}

ChartPtr CoverNerve::chart(const Tuple& t) const { return chart_of_set(support(t)); }

Substitution CoverNerve::set_restriction(const OpenSet& from, const OpenSet& to) const {
  auto it = restrictions_.find({from, to});
  if (it == restrictions_.end()) {
    fail(ErrorCode::MissingRestriction,
         "no restriction from chart " + chart_of_set(from)->id() + " to " + chart_of_set(to)->id());
  }
  return it->second;
}

Substitution CoverNerve::restriction(const Tuple& from, const Tuple& to) const {
  return set_restriction(support(from), support(to));
}

std::pair<Tuple, Substitution> CoverNerve::face(const Tuple& t, int i) const {
  if (!contains(t)) fail(ErrorCode::TupleNotInNerve, tuple_name(t));
  Tuple f = omit(t, i);
  if (!contains(f)) fail(ErrorCode::TupleNotInNerve, tuple_name(f));
  return {f, restriction(f, t)};
}

std::string CoverNerve::tuple_name(const Tuple& t) const {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto idx = static_cast<std::size_t>(t[k]);
    s += (k ? "," : "") + (idx < opens_.size() ? opens_[idx] : "?");
  }
  return s + ")";
}

std::optional<Tuple> CoverNerve::parse_tuple(const std::string& text) const {
  std::string body = text;
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  Tuple t;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string::npos) next = body.size();
    std::string name = body.substr(pos, next - pos);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    const int k = open_index(name);
    if (k < 0) return std::nullopt;
    t.push_back(k);
    pos = next + 1;
  }
  return t;
}

}  // namespace chernweil
