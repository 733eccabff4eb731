#include "chernweil/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "chernweil/error.hpp"

namespace chernweil {

namespace {

// Position inside one line of input; columns are 1-based in messages.
struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 0;
  std::size_t col0 = 0;

  [[noreturn]] void error(const std::string& what) const {
    std::string where = "column " + std::to_string(col0 + pos + 1);
    if (line > 0) where = "line " + std::to_string(line) + ", " + where;
    fail(ErrorCode::ParseError, where + ": " + what);
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }
  bool at_end() { return peek() == '\0'; }
  std::string word() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '\'')) ++pos;
    return text.substr(start, pos - start);
  }
  long integer() {
    skip_ws();
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      error("expected an integer");
    }
    return std::stol(text.substr(start, pos - start));
  }
};

std::optional<RatFunc> as_scalar(const Form& f) {
  if (f.is_zero()) return RatFunc(f.chart());
  if (f.terms().size() != 1) return std::nullopt;
  const auto& [k, v] = *f.terms().begin();
  if (k.base || k.simplex) return std::nullopt;
  for (int e : k.t) {
    if (e) return std::nullopt;
  }
  return v;
}

class ExprParser {
 public:
  ExprParser(Cursor& c, ChartPtr chart, int p) : c_(c), chart_(std::move(chart)), p_(p) {}

  Form expr() {
    Form acc(chart_, p_);
    bool negate = false;
    if (c_.eat('-')) {
      negate = true;
    } else {
      c_.eat('+');
    }
    Form first = product();
    acc = negate ? -first : first;
    while (true) {
      if (c_.eat('+')) {
        acc += product();
      } else if (c_.eat('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

 private:
  static bool starts_atom(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '(' || ch == '_'; }

  Form product() {
    Form acc = power();
    while (true) {
      const char ch = c_.peek();
      if (ch == '*' || ch == '^') {
        ++c_.pos;
        acc = acc * power();
      } else if (ch == '/') {
        ++c_.pos;
        const std::size_t at = c_.pos;
        const Form den = power();
        const auto s = as_scalar(den);
        if (!s) {
          c_.pos = at;
          c_.error("division by a form that is not a function");
        }
        if (s->is_zero()) {
          c_.pos = at;
          c_.error("division by zero");
        }
        acc = acc.times(s->inverse());
      } else if (starts_atom(ch)) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Form power() {
    Form base = atom();
    const std::size_t save = c_.pos;
    if (c_.eat('^')) {
      c_.skip_ws();
      const std::size_t at = c_.pos;
      const bool numeric = at < c_.text.size() &&
                           (std::isdigit(static_cast<unsigned char>(c_.text[at])) ||
                            (c_.text[at] == '-' && at + 1 < c_.text.size() && std::isdigit(static_cast<unsigned char>(c_.text[at + 1]))));
      if (!numeric) {
        c_.pos = save;
        return base;
      }
      const long n = c_.integer();
      if (n < 0) {
        const auto s = as_scalar(base);
        if (!s) {
          c_.pos = at;
          c_.error("negative power of a form that is not a function");
        }
        return Form::scalar(pow(*s, static_cast<int>(n)), p_);
      }
      Form out = Form::constant(chart_, p_, 1);
      for (long k = 0; k < n; ++k) out = out * base;
      return out;
    }
    return base;
  }

  Form atom() {
    const char ch = c_.peek();
    if (ch == '(') {
      ++c_.pos;
      Form inner = expr();
      c_.expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = c_.pos;
      while (c_.pos < c_.text.size() && std::isdigit(static_cast<unsigned char>(c_.text[c_.pos]))) ++c_.pos;
      return Form::constant(chart_, p_, Rational(mpz_class(c_.text.substr(start, c_.pos - start))));
    }
    const std::size_t at = c_.pos;
    const std::string w = c_.word();
    if (w.empty()) c_.error(ch ? std::string("unexpected '") + ch + "'" : "unexpected end of expression");
    if (const int v = chart_->var_index(w); v >= 0) return Form::scalar(RatFunc::variable(chart_, static_cast<std::size_t>(v)), p_);
    if (w.size() > 1 && w[0] == 'd') {
      if (const int v = chart_->var_index(w.substr(1)); v >= 0) return Form::dx(chart_, p_, static_cast<std::size_t>(v));
    }
    auto simplex_index = [&](std::size_t skip) -> int {
      const std::string digits = w.substr(skip);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) return -1;
      const int i = std::stoi(digits);
      if (i > p_) {
        c_.pos = at;
        c_.error(w + " needs simplex degree " + std::to_string(i) + ", have " + std::to_string(p_));
      }
      return i;
    };
    if (w[0] == 't') {
      if (const int i = simplex_index(1); i >= 0) return Form::t(chart_, p_, i);
    }
    if (w.rfind("dt", 0) == 0) {
      if (const int i = simplex_index(2); i >= 0) return Form::dt(chart_, p_, i);
    }
    c_.pos = at;
    c_.error("unknown symbol '" + w + "' on chart " + chart_->id());
  }

  Cursor& c_;
  ChartPtr chart_;
  int p_;
};

Form parse_form_at(Cursor& c, const ChartPtr& chart, int p) {
  ExprParser ep(c, chart, p);
  return ep.expr();
}

RatFunc parse_scalar_at(Cursor& c, const ChartPtr& chart) {
  const std::size_t at = (c.skip_ws(), c.pos);
  const Form f = parse_form_at(c, chart, 0);
  const auto s = as_scalar(f);
  if (!s) {
    c.pos = at;
    c.error("expected a function, got a form");
  }
  return *s;
}

template <class T>
struct EntryKind;

template <>
struct EntryKind<RatFunc> {
  static RatFunc parse(Cursor& c, const ChartPtr& chart, int) { return parse_scalar_at(c, chart); }
  static Matrix<RatFunc> zero(const ChartPtr& chart, int, std::size_t r, std::size_t k) { return zero_matrix(chart, r, k); }
  static RatFunc one(const ChartPtr& chart, int) { return RatFunc(chart, 1); }
};

template <>
struct EntryKind<Form> {
  static Form parse(Cursor& c, const ChartPtr& chart, int p) { return parse_form_at(c, chart, p); }
  static Matrix<Form> zero(const ChartPtr& chart, int p, std::size_t r, std::size_t k) { return zero_forms(chart, p, r, k); }
  static Form one(const ChartPtr& chart, int p) { return Form::constant(chart, p, 1); }
};

template <class T>
Matrix<T> parse_matrix_at(Cursor& c, const ChartPtr& chart, int p) {
  using K = EntryKind<T>;
  const char ch = c.peek();
  if (ch == '[') {
    ++c.pos;
    std::vector<std::vector<T>> rows;
    if (!c.eat(']')) {
      do {
        c.expect('[');
        std::vector<T> row;
        do {
          row.push_back(K::parse(c, chart, p));
        } while (c.eat(','));
        c.expect(']');
        if (!rows.empty() && row.size() != rows.front().size()) c.error("matrix rows have different lengths");
        rows.push_back(std::move(row));
      } while (c.eat(','));
      c.expect(']');
    }
    Matrix<T> m = K::zero(chart, p, rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  const std::string w = c.word();
  if (w == "zero") {
    c.expect('(');
    const std::size_t at = c.pos;
    const std::size_t close = c.text.find(')', at);
    if (close == std::string::npos) c.error("expected ')'");
    const std::string dims = c.text.substr(at, close - at);
    std::size_t r = 0, k = 0;
    char x = 0;
    std::istringstream ds(dims);
    if (!(ds >> r >> x >> k) || x != 'x' || !(ds >> std::ws).eof() || dims.find('-') != std::string::npos) c.error("expected RxC");
    c.pos = close + 1;
    return K::zero(chart, p, r, k);
  }
  if (w == "id") {
    c.expect('(');
    const long n = c.integer();
    c.expect(')');
    if (n < 0) c.error("negative matrix size");
    Matrix<T> m = K::zero(chart, p, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = K::one(chart, p);
    return m;
  }
  c.error("expected a matrix");
}

template <class T>
std::vector<Matrix<T>> parse_matrix_list(Cursor& c, const ChartPtr& chart, int p) {
  std::vector<Matrix<T>> out;
  do {
    out.push_back(parse_matrix_at<T>(c, chart, p));
  } while (c.eat(';'));
  if (!c.at_end()) c.error("unexpected text after matrix");
  return out;
}

struct Line {
  int number = 0;
  std::vector<std::string> key;
  std::string value;
  std::size_t value_col = 0;
};

using Sections = std::map<std::string, std::vector<Line>>;

const std::vector<std::string> kSections = {"scenario", "cover", "complex", "green-structure", "connections", "twisting", "witnesses"};

Sections split_sections(const std::string& text) {
  Sections out;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  int number = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++number;
    std::string line = raw.substr(0, raw.find('#'));
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line[first] == '[') {
      const std::size_t close = line.find(']', first);
      if (close == std::string::npos || close + 1 != line.size()) {
        fail(ErrorCode::ParseError, "line " + std::to_string(number) + ", column " + std::to_string(first + 1) + ": malformed section header");
      }
      current = line.substr(first + 1, close - first - 1);
      if (std::find(kSections.begin(), kSections.end(), current) == kSections.end()) {
        fail(ErrorCode::ParseError, "line " + std::to_string(number) + ", column " + std::to_string(first + 2) + ": unknown section [" + current + "]");
      }
      out[current];
      any = true;
      continue;
    }
    if (current.empty()) {
      fail(ErrorCode::ParseError, "line " + std::to_string(number) + ", column " + std::to_string(first + 1) + ": entry outside any section");
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::ParseError, "line " + std::to_string(number) + ", column " + std::to_string(line.size() + 1) + ": expected 'key = value'");
    }
    Line l;
    l.number = number;
    std::istringstream ks(line.substr(0, eq));
    for (std::string w; ks >> w;) l.key.push_back(w);
    if (l.key.empty()) fail(ErrorCode::ParseError, "line " + std::to_string(number) + ", column " + std::to_string(first + 1) + ": missing key");
    l.value = line.substr(eq + 1);
    l.value_col = eq + 1;
    out[current].push_back(std::move(l));
    any = true;
  }
  if (!any) fail(ErrorCode::ParseError, "line 1, column 1: empty scenario");
  return out;
}

[[noreturn]] void line_error(const Line& l, ErrorCode code, const std::string& what) {
  fail(code, "line " + std::to_string(l.number) + ": " + what);
}

Cursor cursor(const Line& l) { return Cursor{l.value, 0, l.number, l.value_col}; }

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> comma_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

long to_int(const Line& l, const std::string& w) {
  try {
    std::size_t used = 0;
    const long v = std::stol(w, &used);
    if (used == w.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::ParseError, "line " + std::to_string(l.number) + ": expected an integer, got '" + w + "'");
}

void need_key(const Line& l, std::size_t n, const std::string& shape) {
  if (l.key.size() != n) fail(ErrorCode::ParseError, "line " + std::to_string(l.number) + ", column 1: expected '" + shape + " = ...'");
}

Tuple tuple_of(const CoverNerve& nerve, const Line& l, const std::string& text) {
  const auto t = nerve.parse_tuple(text);
  if (!t || t->empty()) line_error(l, ErrorCode::ParseError, "bad tuple " + text);
  if (!nerve.contains(*t)) line_error(l, ErrorCode::TupleNotInNerve, "tuple " + text + " is not in the nerve");
  return *t;
}

int open_of(const CoverNerve& nerve, const Line& l, const std::string& name) {
  const int k = nerve.open_index(name);
  if (k < 0) line_error(l, ErrorCode::ValidationError, "unknown open " + name);
  return k;
}

unsigned mask_of(const Line& l, const std::string& text, std::size_t len) {
  unsigned mask = 0;
  for (const auto& w : comma_list(text)) {
    const long k = to_int(l, w);
    if (k < 0 || static_cast<std::size_t>(k) >= len) line_error(l, ErrorCode::ValidationError, "position " + w + " out of range");
    mask |= 1U << k;
  }
  return mask;
}

std::string positions_of(unsigned mask) {
  std::string s;
  for (int k = 0; k < 32; ++k) {
    if (mask & (1U << k)) s += (s.empty() ? "" : ",") + std::to_string(k);
  }
  return s;
}

std::vector<std::size_t> size_list(const Line& l) {
  std::vector<std::size_t> out;
  for (const auto& w : words(l.value)) {
    const long v = to_int(l, w);
    if (v < 0) line_error(l, ErrorCode::ValidationError, "negative rank");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void load_scenario_section(Scenario& sc, const Sections& secs, int& depth, bool& increasing) {
  auto it = secs.find("scenario");
  if (it == secs.end()) return;
  for (const auto& l : it->second) {
    need_key(l, 1, "name");
    const auto v = words(l.value);
    if (v.size() != 1) line_error(l, ErrorCode::ParseError, "expected one word");
    if (l.key[0] == "name") {
      sc.name = v[0];
    } else if (l.key[0] == "depth") {
      depth = static_cast<int>(to_int(l, v[0]));
    } else if (l.key[0] == "nerve") {
      if (v[0] != "full" && v[0] != "increasing") line_error(l, ErrorCode::ParseError, "nerve is 'full' or 'increasing'");
      increasing = v[0] == "increasing";
    } else {
      line_error(l, ErrorCode::ParseError, "unknown key " + l.key[0]);
    }
  }
}

void load_cover(Scenario& sc, const Sections& secs, int depth, bool increasing) {
  auto it = secs.find("cover");
  if (it == secs.end()) fail(ErrorCode::ParseError, "missing [cover] section");
  const auto& lines = it->second;
  std::map<std::string, std::vector<std::string>> vars;
  std::vector<std::string> chart_order;
  std::map<std::string, const Line*> inv_lines;
  for (const auto& l : lines) {
    if (l.key[0] == "opens") {
      need_key(l, 1, "opens");
      for (const auto& w : words(l.value)) sc.nerve.add_open(w);
    } else if (l.key[0] == "chart") {
      need_key(l, 2, "chart <id>");
      if (vars.count(l.key[1])) line_error(l, ErrorCode::ValidationError, "chart " + l.key[1] + " declared twice");
      vars[l.key[1]] = words(l.value);
      chart_order.push_back(l.key[1]);
    } else if (l.key[0] == "invertible") {
      need_key(l, 2, "invertible <chart>");
      inv_lines[l.key[1]] = &l;
    } else if (l.key[0] != "intersection" && l.key[0] != "restrict" && l.key[0] != "tuples") {
      line_error(l, ErrorCode::ParseError, "unknown key " + l.key[0]);
    }
  }
  for (const auto& [id, l] : inv_lines) {
    if (!vars.count(id)) line_error(*l, ErrorCode::ValidationError, "unknown chart " + id);
  }
  for (const auto& id : chart_order) {
    std::vector<Poly> invs;
    if (auto li = inv_lines.find(id); li != inv_lines.end()) {
      const Line& l = *li->second;
      const ChartPtr bare = make_chart(id, vars[id]);
      Cursor c = cursor(l);
      do {
        const std::size_t at = (c.skip_ws(), c.pos);
        const RatFunc f = parse_scalar_at(c, bare);
        if (!f.is_polynomial() || f.is_constant()) {
          c.pos = at;
          c.error("invertible must be a non-constant polynomial");
        }
        invs.push_back(f.numerator());
      } while (c.eat(','));
      if (!c.at_end()) c.error("unexpected text");
    }
    sc.nerve.add_chart(make_chart(id, vars[id], invs));
  }
  bool explicit_tuples = false;
  for (const auto& l : lines) {
    if (l.key[0] == "intersection") {
      if (l.key.size() < 2) line_error(l, ErrorCode::ParseError, "intersection needs opens");
      OpenSet s;
      for (std::size_t k = 1; k < l.key.size(); ++k) s.push_back(open_of(sc.nerve, l, l.key[k]));
      const auto v = words(l.value);
      if (v.size() != 1) line_error(l, ErrorCode::ParseError, "expected a chart id");
      if (!vars.count(v[0])) line_error(l, ErrorCode::ValidationError, "unknown chart " + v[0]);
      sc.nerve.assign_chart(support(s), v[0]);
    }
  }
  for (const auto& l : lines) {
    if (l.key[0] == "restrict") {
      need_key(l, 3, "restrict <from> <to>");
      const ChartPtr from = sc.nerve.find_chart(l.key[1]);
      const ChartPtr to = sc.nerve.find_chart(l.key[2]);
      Substitution s{from, to, {}};
      Cursor c = cursor(l);
      do {
        s.images.push_back(parse_scalar_at(c, to));
      } while (c.eat(','));
      if (!c.at_end()) c.error("unexpected text");
      if (s.images.size() != from->nvars()) {
        line_error(l, ErrorCode::ValidationError, "restriction " + from->id() + " -> " + to->id() + " needs " + std::to_string(from->nvars()) + " images");
      }
      sc.nerve.declare_restriction(from->id(), to->id(), s);
    } else if (l.key[0] == "tuples") {
      explicit_tuples = true;
      for (const auto& w : words(l.value)) {
        const auto t = sc.nerve.parse_tuple(w);
        if (!t || t->empty()) line_error(l, ErrorCode::ParseError, "bad tuple " + w);
        sc.nerve.add_tuple(*t);
      }
    }
  }
  if (!explicit_tuples) sc.nerve.generate(depth, increasing);
  sc.nerve.finalize();
}

void load_complex(Scenario& sc, const Sections& secs) {
  auto it = secs.find("complex");
  if (it == secs.end()) return;
  const CoverNerve& nerve = sc.nerve;
  ComplexOnNerve cx;
  bool have_top = false;
  for (const auto& l : it->second) {
    if (l.key[0] == "top") {
      need_key(l, 1, "top");
      const auto v = words(l.value);
      if (v.size() != 1) line_error(l, ErrorCode::ParseError, "expected one integer");
      cx.top = static_cast<int>(to_int(l, v[0]));
      if (cx.top < 0) line_error(l, ErrorCode::ValidationError, "negative top degree");
      have_top = true;
    }
  }
  if (!have_top) fail(ErrorCode::ParseError, "[complex] needs 'top'");
  const auto len = static_cast<std::size_t>(cx.top + 1);
  for (const auto& l : it->second) {
    if (l.key[0] == "rank") {
      need_key(l, 2, "rank <tuple>");
      const Tuple t = tuple_of(nerve, l, l.key[1]);
      auto r = size_list(l);
      if (r.size() != len) line_error(l, ErrorCode::ValidationError, "rank of " + nerve.tuple_name(t) + " needs " + std::to_string(len) + " entries");
      if (!cx.ranks.emplace(t, r).second) line_error(l, ErrorCode::ValidationError, "rank of " + nerve.tuple_name(t) + " given twice");
    }
  }
  for (const auto& t : nerve.tuples()) {
    if (!cx.ranks.count(t)) fail(ErrorCode::ValidationError, "no rank for tuple " + nerve.tuple_name(t));
  }
  for (const auto& l : it->second) {
    if (l.key[0] == "top" || l.key[0] == "rank") continue;
    if (l.key[0] == "d") {
      need_key(l, 3, "d <tuple> <s>");
      const Tuple t = tuple_of(nerve, l, l.key[1]);
      const long s = to_int(l, l.key[2]);
      if (s < 1 || s > cx.top) line_error(l, ErrorCode::ValidationError, "d_" + l.key[2] + " outside 1.." + std::to_string(cx.top));
      Cursor c = cursor(l);
      auto ms = parse_matrix_list<RatFunc>(c, nerve.chart(t), 0);
      if (ms.size() != 1) line_error(l, ErrorCode::ParseError, "expected one matrix");
      auto& ds = cx.differentials[t];
      if (ds.empty()) {
        for (int k = 1; k <= cx.top; ++k) ds.push_back(zero_matrix(nerve.chart(t), cx.rank(t, k - 1), cx.rank(t, k)));
      }
      ds[static_cast<std::size_t>(s - 1)] = ms[0];
    } else if (l.key[0] == "coface") {
      need_key(l, 3, "coface <tuple> <i>");
      const Tuple t = tuple_of(nerve, l, l.key[1]);
      const long i = to_int(l, l.key[2]);
      if (t.size() < 2 || i < 0 || static_cast<std::size_t>(i) >= t.size()) line_error(l, ErrorCode::ValidationError, "no coface " + l.key[2] + " of " + nerve.tuple_name(t));
      Cursor c = cursor(l);
      auto ms = parse_matrix_list<RatFunc>(c, nerve.chart(t), 0);
      if (ms.size() != len) line_error(l, ErrorCode::ValidationError, "coface needs " + std::to_string(len) + " matrices");
      cx.cofaces[{t, static_cast<int>(i)}] = ms;
    } else {
      line_error(l, ErrorCode::ParseError, "unknown key " + l.key[0]);
    }
  }
  for (const auto& t : nerve.tuples()) {
    for (int i = 0; t.size() > 1 && i < static_cast<int>(t.size()); ++i) {
      if (cx.cofaces.count({t, i})) continue;
      const Tuple f = omit(t, i);
      std::vector<RMatrix> ms;
      for (int s = 0; s <= cx.top; ++s) {
        const std::size_t rt = cx.rank(t, s), rf = cx.rank(f, s);
        if (rt == rf && rt > 0) {
          ms.push_back(identity_matrix(nerve.chart(t), rt));
        } else if (rt == 0 || rf == 0) {
          ms.push_back(zero_matrix(nerve.chart(t), rt, rf));
        } else {
          fail(ErrorCode::ValidationError, "coface " + std::to_string(i) + " of " + nerve.tuple_name(t) + " needs a matrix in degree " + std::to_string(s));
        }
      }
      cx.cofaces[{t, i}] = ms;
    }
  }
  validate_complex(nerve, cx);
  sc.complex = std::move(cx);
}

void load_green(Scenario& sc, const Sections& secs) {
  auto it = secs.find("green-structure");
  if (it == secs.end()) return;
  if (!sc.complex) fail(ErrorCode::ValidationError, "[green-structure] needs a [complex] section");
  const CoverNerve& nerve = sc.nerve;
  const auto len = static_cast<std::size_t>(sc.complex->top + 1);
  for (const auto& l : it->second) {
    if (l.key[0] == "split") {
      need_key(l, 4, "split <tuple> keep <positions>");
      if (l.key[2] != "keep") line_error(l, ErrorCode::ParseError, "expected 'keep'");
      const Tuple t = tuple_of(nerve, l, l.key[1]);
      const unsigned mask = mask_of(l, l.key[3], t.size());
      if (mask == 0 || mask == full_mask(t)) line_error(l, ErrorCode::ValidationError, "split needs a proper nonempty sub-tuple");
      const std::size_t iso_at = l.value.find(" iso ");
      if (iso_at == std::string::npos) line_error(l, ErrorCode::ParseError, "expected 'L <summands> iso <matrices>'");
      const auto lw = words(l.value.substr(0, iso_at));
      if (lw.empty() || lw[0] != "L") line_error(l, ErrorCode::ParseError, "expected 'L'");
      Splitting sp;
      if (!(lw.size() == 2 && lw[1] == "none")) {
        std::string joined;
        for (std::size_t k = 1; k < lw.size(); ++k) joined += lw[k];
        for (const auto& item : comma_list(joined)) {
          const auto c1 = item.find(':');
          const auto c2 = item.find(':', c1 == std::string::npos ? c1 : c1 + 1);
          if (c1 == std::string::npos || c2 == std::string::npos) line_error(l, ErrorCode::ParseError, "summand is shift:rank:open, got " + item);
          ElementarySummand e;
          e.shift = static_cast<int>(to_int(l, item.substr(0, c1)));
          const long r = to_int(l, item.substr(c1 + 1, c2 - c1 - 1));
          if (r < 0) line_error(l, ErrorCode::ValidationError, "negative summand rank");
          e.rank = static_cast<std::size_t>(r);
          e.source = item.substr(c2 + 1);
          open_of(nerve, l, e.source);
          sp.summands.push_back(e);
        }
      }
      const std::string rest = l.value.substr(iso_at + 5);
      Cursor c{rest, 0, l.number, l.value_col + iso_at + 5};
      sp.iso = parse_matrix_list<RatFunc>(c, nerve.chart(t), 0);
      if (sp.iso.size() != len) line_error(l, ErrorCode::ValidationError, "splitting needs " + std::to_string(len) + " matrices");
      sc.green.splittings[{t, mask}] = sp;
    } else if (l.key[0] == "cocycle") {
      need_key(l, 6, "cocycle <tuple> b <positions> c <positions>");
      if (l.key[2] != "b" || l.key[4] != "c") line_error(l, ErrorCode::ParseError, "expected 'b' and 'c'");
      const Tuple t = tuple_of(nerve, l, l.key[1]);
      const unsigned b = mask_of(l, l.key[3], t.size());
      const unsigned cm = mask_of(l, l.key[5], t.size());
      Cursor c = cursor(l);
      auto ms = parse_matrix_list<RatFunc>(c, nerve.chart(t), 0);
      if (ms.size() != len) line_error(l, ErrorCode::ValidationError, "cocycle needs " + std::to_string(len) + " matrices");
      sc.green.cocycles[{t, b, cm}] = ms;
    } else {
      line_error(l, ErrorCode::ParseError, "unknown key " + l.key[0]);
    }
  }
}

void load_connections(Scenario& sc, const Sections& secs) {
  auto it = secs.find("connections");
  if (it == secs.end()) return;
  if (!sc.complex) fail(ErrorCode::ValidationError, "[connections] needs a [complex] section");
  for (const auto& l : it->second) {
    if (l.key[0] != "local") line_error(l, ErrorCode::ParseError, "unknown key " + l.key[0]);
    need_key(l, 3, "local <s> <open>");
    const long s = to_int(l, l.key[1]);
    if (s < 0 || s > sc.complex->top) line_error(l, ErrorCode::ValidationError, "degree " + l.key[1] + " outside the complex");
    const int a = open_of(sc.nerve, l, l.key[2]);
    Cursor c = cursor(l);
    auto ms = parse_matrix_list<Form>(c, sc.nerve.chart({a}), 0);
    if (ms.size() != 1) line_error(l, ErrorCode::ParseError, "expected one matrix");
    sc.locals[static_cast<int>(s)].emplace(a, ms[0]);
  }
  for (const auto& [s, locals] : sc.locals) validate_locals(sc.nerve, *sc.complex, s, locals);
}

void load_twisting(Scenario& sc, const Sections& secs) {
  auto it = secs.find("twisting");
  if (it == secs.end()) return;
  const CoverNerve& nerve = sc.nerve;
  LocalComplexFamily v;
  bool have = false;
  for (const auto& l : it->second) {
    if (l.key[0] == "degrees") {
      need_key(l, 1, "degrees");
      const auto w = words(l.value);
      if (w.size() != 2) line_error(l, ErrorCode::ParseError, "expected 'lo hi'");
      v.lo = static_cast<int>(to_int(l, w[0]));
      v.hi = static_cast<int>(to_int(l, w[1]));
      have = true;
    }
  }
  if (!have) fail(ErrorCode::ParseError, "[twisting] needs 'degrees'");
  if (v.hi < v.lo) fail(ErrorCode::ValidationError, "twisting degrees need lo <= hi");
  for (const auto& l : it->second) {
    if (l.key[0] == "rank") {
      need_key(l, 2, "rank <open>");
      v.ranks[open_of(nerve, l, l.key[1])] = size_list(l);
    }
  }
  for (const auto& l : it->second) {
    if (l.key[0] == "d") {
      need_key(l, 2, "d <open>");
      const int a = open_of(nerve, l, l.key[1]);
      Cursor c = cursor(l);
      v.differentials[a] = parse_matrix_list<RatFunc>(c, nerve.chart({a}), 0);
    }
  }
  validate_local_complexes(nerve, v);
  TwistingCochain tw;
  for (const auto& l : it->second) {
    if (l.key[0] == "degrees" || l.key[0] == "rank" || l.key[0] == "d") continue;
    if (l.key[0] != "component") line_error(l, ErrorCode::ParseError, "unknown key " + l.key[0]);
    need_key(l, 2, "component <tuple>");
    const Tuple t = tuple_of(nerve, l, l.key[1]);
    Cursor c = cursor(l);
    GradedMap m = parse_matrix_list<RatFunc>(c, nerve.chart(t), 0);
    try {
      check_graded_shape(nerve, v, t, 1 - static_cast<int>(t.size() - 1), m);
    } catch (const Error& e) {
      line_error(l, e.code(), e.what());
    }
    if (!tw.components.emplace(t, m).second) line_error(l, ErrorCode::ValidationError, "component on " + nerve.tuple_name(t) + " given twice");
  }
  for (const auto& t : nerve.tuples()) {
    if (tw.components.count(t)) continue;
    const int k = static_cast<int>(t.size()) - 1;
    if (k == 0) {
      tw.components.emplace(t, local_differential(nerve, v, t));
    } else if (k == 1 && t[0] == t[1]) {
      tw.components.emplace(t, identity_graded(nerve, v, t));
    } else {
      tw.components.emplace(t, zero_graded(nerve, v, t, 1 - k));
    }
  }
  sc.local_complexes = std::move(v);
  sc.twisting = std::move(tw);
}

void load_witnesses(Scenario& sc, const Sections& secs) {
  auto it = secs.find("witnesses");
  if (it == secs.end()) return;
  if (!sc.complex) fail(ErrorCode::ValidationError, "[witnesses] needs a [complex] section");
  const CoverNerve& nerve = sc.nerve;
  for (const auto& l : it->second) {
    if (l.key[0] != "witness") line_error(l, ErrorCode::ParseError, "unknown key " + l.key[0]);
    need_key(l, 4, "witness <s> <tuple> <i>");
    const long s = to_int(l, l.key[1]);
    if (s < 0 || s > sc.complex->top) line_error(l, ErrorCode::ValidationError, "degree " + l.key[1] + " outside the complex");
    const Tuple t = tuple_of(nerve, l, l.key[2]);
    const long i = to_int(l, l.key[3]);
    if (t.size() < 2 || i < 0 || static_cast<std::size_t>(i) >= t.size()) line_error(l, ErrorCode::ValidationError, "no coface " + l.key[3] + " of " + nerve.tuple_name(t));
    const std::size_t semi = l.value.find(';');
    if (semi == std::string::npos) line_error(l, ErrorCode::ParseError, "expected 'source ; target'");
    const std::string a = l.value.substr(0, semi), b = l.value.substr(semi + 1);
    Cursor ca{a, 0, l.number, l.value_col};
    Cursor cb{b, 0, l.number, l.value_col + semi + 1};
    const RMatrix src = parse_matrix_at<RatFunc>(ca, nerve.chart(omit(t, static_cast<int>(i))), 0);
    if (!ca.at_end()) ca.error("unexpected text");
    const RMatrix tgt = parse_matrix_at<RatFunc>(cb, nerve.chart(t), 0);
    if (!cb.at_end()) cb.error("unexpected text");
    const std::size_t rf = sc.complex->rank(omit(t, static_cast<int>(i)), static_cast<int>(s));
    const std::size_t rt = sc.complex->rank(t, static_cast<int>(s));
    if (src.rows() != rf || tgt.rows() != rt) {
      line_error(l, ErrorCode::WitnessShapeMismatch, "witness on " + nerve.tuple_name(t) + " has " + src.shape() + " and " + tgt.shape() + ", ranks are " + std::to_string(rf) + " and " + std::to_string(rt));
    }
    sc.witnesses[static_cast<int>(s)].insert_or_assign({t, static_cast<int>(i)}, AdmissibilityWitness{src, tgt});
  }
}

template <class T>
std::string render_matrix_impl(const Matrix<T>& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return "zero(" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

template <class T>
std::string render_list(const std::vector<Matrix<T>>& ms) {
  std::string s;
  for (std::size_t k = 0; k < ms.size(); ++k) s += (k ? " ; " : "") + render_matrix_impl(ms[k]);
  return s;
}

std::string tuple_text(const CoverNerve& n, const Tuple& t) { return n.tuple_name(t); }

bool same_chart_data(const ChartPtr& a, const ChartPtr& b) {
  return a->id() == b->id() && a->vars() == b->vars() && a->invertibles() == b->invertibles();
}

}  // namespace

Form parse_form(const std::string& text, const ChartPtr& chart, int p) {
  Cursor c{text, 0, 0, 0};
  Form f = parse_form_at(c, chart, p);
  if (!c.at_end()) c.error("unexpected text");
  return f;
}

RatFunc parse_ratfunc(const std::string& text, const ChartPtr& chart) {
  Cursor c{text, 0, 0, 0};
  RatFunc f = parse_scalar_at(c, chart);
  if (!c.at_end()) c.error("unexpected text");
  return f;
}

std::string render_matrix(const RMatrix& m) { return render_matrix_impl(m); }
std::string render_matrix(const FMatrix& m) { return render_matrix_impl(m); }

Scenario parse_scenario(const std::string& text) {
  const Sections secs = split_sections(text);
  Scenario sc;
  int depth = 1;
  bool increasing = false;
  load_scenario_section(sc, secs, depth, increasing);
  load_cover(sc, secs, depth, increasing);
  load_complex(sc, secs);
  load_green(sc, secs);
  load_connections(sc, secs);
  load_twisting(sc, secs);
  load_witnesses(sc, secs);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string render_scenario(const Scenario& s) {
  const CoverNerve& n = s.nerve;
  std::ostringstream out;
  out << "[scenario]\nname = " << s.name << "\n";
  if (n.generated()) {
    out << "depth = " << n.generation().first << "\nnerve = " << (n.generation().second ? "increasing" : "full") << "\n";
  }
  out << "\n[cover]\nopens =";
  for (const auto& o : n.opens()) out << " " << o;
  out << "\n";
  for (const auto& [id, c] : n.charts()) {
    out << "chart " << id << " =";
    for (const auto& v : c->vars()) out << " " << v;
    out << "\n";
    if (!c->invertibles().empty()) {
      out << "invertible " << id << " = ";
      for (std::size_t k = 0; k < c->invertibles().size(); ++k) out << (k ? ", " : "") << c->invertibles()[k].to_string(c->vars());
      out << "\n";
    }
  }
  for (const auto& [set, id] : n.set_charts()) {
    out << "intersection";
    for (int k : set) out << " " << n.opens()[static_cast<std::size_t>(k)];
    out << " = " << id << "\n";
  }
  for (const auto& [key, sub] : n.declared_restrictions()) {
    out << "restrict " << key.first << " " << key.second << " = ";
    for (std::size_t k = 0; k < sub.images.size(); ++k) out << (k ? ", " : "") << sub.images[k].to_string();
    out << "\n";
  }
  if (!n.generated()) {
    out << "tuples =";
    for (const auto& t : n.tuples()) out << " " << tuple_text(n, t);
    out << "\n";
  }
  if (s.complex) {
    const auto& cx = *s.complex;
    out << "\n[complex]\ntop = " << cx.top << "\n";
    for (const auto& t : n.tuples()) {
      out << "rank " << tuple_text(n, t) << " =";
      for (auto r : cx.ranks.at(t)) out << " " << r;
      out << "\n";
    }
    for (const auto& [t, ds] : cx.differentials) {
      for (std::size_t k = 0; k < ds.size(); ++k) out << "d " << tuple_text(n, t) << " " << k + 1 << " = " << render_matrix(ds[k]) << "\n";
    }
    for (const auto& t : n.tuples()) {
      for (int i = 0; t.size() > 1 && i < static_cast<int>(t.size()); ++i) {
        out << "coface " << tuple_text(n, t) << " " << i << " = " << render_list(cx.cofaces.at({t, i})) << "\n";
      }
    }
  }
  if (!s.green.splittings.empty() || !s.green.cocycles.empty()) {
    out << "\n[green-structure]\n";
    for (const auto& [key, sp] : s.green.splittings) {
      out << "split " << tuple_text(n, key.first) << " keep " << positions_of(key.second) << " = L ";
      if (sp.summands.empty()) out << "none";
      for (std::size_t k = 0; k < sp.summands.size(); ++k) {
        const auto& e = sp.summands[k];
        out << (k ? ", " : "") << e.shift << ":" << e.rank << ":" << e.source;
      }
      out << " iso " << render_list(sp.iso) << "\n";
    }
    for (const auto& [key, ms] : s.green.cocycles) {
      out << "cocycle " << tuple_text(n, std::get<0>(key)) << " b " << positions_of(std::get<1>(key)) << " c "
          << positions_of(std::get<2>(key)) << " = " << render_list(ms) << "\n";
    }
  }
  if (!s.locals.empty()) {
    out << "\n[connections]\n";
    for (const auto& [deg, locals] : s.locals) {
      for (const auto& [a, m] : locals) out << "local " << deg << " " << n.opens()[static_cast<std::size_t>(a)] << " = " << render_matrix(m) << "\n";
    }
  }
  if (s.twisting && s.local_complexes) {
    const auto& v = *s.local_complexes;
    out << "\n[twisting]\ndegrees = " << v.lo << " " << v.hi << "\n";
    for (const auto& [a, r] : v.ranks) {
      out << "rank " << n.opens()[static_cast<std::size_t>(a)] << " =";
      for (auto x : r) out << " " << x;
      out << "\n";
    }
    for (const auto& [a, ds] : v.differentials) out << "d " << n.opens()[static_cast<std::size_t>(a)] << " = " << render_list(ds) << "\n";
    for (const auto& t : n.tuples()) out << "component " << tuple_text(n, t) << " = " << render_list(s.twisting->components.at(t)) << "\n";
  }
  if (!s.witnesses.empty()) {
    out << "\n[witnesses]\n";
    for (const auto& [deg, fam] : s.witnesses) {
      for (const auto& [key, w] : fam) {
        out << "witness " << deg << " " << tuple_text(n, key.first) << " " << key.second << " = " << render_matrix(w.source) << " ; "
            << render_matrix(w.target) << "\n";
      }
    }
  }
  return out.str();
}

bool same_scenario(const Scenario& a, const Scenario& b) {
  const CoverNerve& na = a.nerve;
  const CoverNerve& nb = b.nerve;
  if (a.name != b.name || na.opens() != nb.opens() || na.set_charts() != nb.set_charts() || na.tuples() != nb.tuples()) return false;
  if (na.generated() != nb.generated() || (na.generated() && na.generation() != nb.generation())) return false;
  if (na.charts().size() != nb.charts().size()) return false;
  for (const auto& [id, c] : na.charts()) {
    auto it = nb.charts().find(id);
    if (it == nb.charts().end() || !same_chart_data(c, it->second)) return false;
  }
  if (na.declared_restrictions() != nb.declared_restrictions()) return false;
  if (a.complex.has_value() != b.complex.has_value()) return false;
  if (a.complex) {
    const auto& x = *a.complex;
    const auto& y = *b.complex;
    if (x.top != y.top || x.ranks != y.ranks || x.differentials != y.differentials || x.cofaces != y.cofaces) return false;
  }
  if (a.green.splittings != b.green.splittings || a.green.cocycles != b.green.cocycles) return false;
  if (a.locals != b.locals || a.witnesses != b.witnesses) return false;
  if (a.twisting != b.twisting || a.local_complexes.has_value() != b.local_complexes.has_value()) return false;
  if (a.local_complexes) {
    const auto& x = *a.local_complexes;
    const auto& y = *b.local_complexes;
    if (x.lo != y.lo || x.hi != y.hi || x.ranks != y.ranks || x.differentials != y.differentials) return false;
  }
  return true;
}

}  // namespace chernweil
